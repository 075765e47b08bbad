// Wick pairings of word-faces: enumeration, surface gluing, and exact
// Laurent-polynomial trace expectations. The weight of a pairing is
// N^(V - m/2) with V the number of merged index classes; the equivalent
// Euler-characteristic form is computed alongside and asserted equal.
#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tracewick/laurent.hpp"
#include "tracewick/word.hpp"

namespace tracewick {

// Positions are 1-based and cyclic within a face; faces index the word list
// from 0. An edge at position l spans index slots (l, l+1) of its face.
struct SlotId {
  int face = 0;
  int position = 1;
  auto operator<=>(const SlotId&) const = default;
};

struct EdgeId {
  int face = 0;
  int position = 1;
  auto operator<=>(const EdgeId&) const = default;
};

// A perfect matching of all edges plus one twist bit per pair. The twist is
// meaningful only for GOE-GOE pairs, which carry two covariance terms; it is
// false everywhere else. Pairs are listed with pair.first the smaller edge
// and sorted by pair.first.
struct DecoratedPairing {
  std::vector<std::pair<EdgeId, EdgeId>> pairs;
  std::vector<bool> twist;

  bool operator==(const DecoratedPairing&) const = default;
};

struct SurfaceComponent {
  std::vector<int> faces;  // ascending face indices
  int V = 0;
  int E = 0;
  int F = 0;
  int euler = 0;
  bool orientable = true;
  int genus = 0;  // orientable genus, or cross-cap count when non-orientable
};

struct GluedSurface {
  std::vector<SurfaceComponent> components;

  int total_V() const;
  int component_count() const { return static_cast<int>(components.size()); }
  bool single_sphere() const;
};

struct SphericalCounts {
  BigInt a;  // spherical pairings of the single face w
  BigInt p;  // projective-plane pairings of the single face w
  BigInt b;  // spherical pairings of (w, star(w))
  BigInt c;  // spherical pairings of (w, w)

  bool operator==(const SphericalCounts&) const = default;
};

struct InvalidPairingError : std::runtime_error {
  explicit InvalidPairingError(const std::string& what)
      : std::runtime_error("invalid pairing: " + what) {}
};

struct TooLargeError : std::runtime_error {
  explicit TooLargeError(const std::string& what)
      : std::runtime_error("resource cap exceeded: " + what) {}
};

struct NoPairingError : std::runtime_error {
  NoPairingError() : std::runtime_error("no admissible pairing exists") {}
};

struct UnsupportedConfigurationError : std::runtime_error {
  explicit UnsupportedConfigurationError(const std::string& what)
      : std::runtime_error("unsupported configuration: " + what) {}
};

struct EnumerationLimits {
  // Total edge count cap; pairing enumeration cost is bounded by the product
  // of per-bucket matching counts, which at m = 24 in a single bucket is 12!.
  int max_total_length = 24;
};

// Visits every admissible decorated pairing exactly once, in a deterministic
// order (edges taken lowest-first, partners ascending, GOE twist false before
// true). An empty visit sequence is a valid outcome (unbalanced words).
// Returns the number of pairings visited.
std::uint64_t for_each_pairing(
    const std::vector<Word>& words,
    const std::function<void(const DecoratedPairing&)>& sink,
    const EnumerationLimits& limits = {});

std::vector<DecoratedPairing> enumerate_pairings(
    const std::vector<Word>& words, const EnumerationLimits& limits = {});

// Deterministic partition of the enumeration by the first edge's
// (partner, twist) choice, for fanning sub-enumerations out to workers.
// Branch ids run from 0 to pairing_branch_count() - 1; the union of the
// branch streams, in branch order, equals the full stream.
int pairing_branch_count(const std::vector<Word>& words,
                         const EnumerationLimits& limits = {});
std::uint64_t for_each_pairing_in_branch(
    const std::vector<Word>& words, int branch,
    const std::function<void(const DecoratedPairing&)>& sink,
    const EnumerationLimits& limits = {});

// Glues the faces along the pairing and classifies every component:
// vertex classes by union-find over slots according to the pair merge rules,
// Euler characteristic V - E + F, orientability by two-coloring faces with
// the per-pair parity, genus from the classification of closed surfaces.
//
// Merge rules are the second-moment identities of the ensembles. Writing the
// letter at position l as the matrix entry M(x,y) with (x,y) = (slot l,
// slot l+1), swapped when transposed:
//   complex Ginibre (conjugation flags must differ): x1~x2, y1~y2;
//   real Ginibre: x1~x2, y1~y2;
//   GUE, equal conjugation flags: x1~y2, y1~x2 (E[H_ab H_cd] = d_ad d_bc /N);
//   GUE, differing flags: x1~x2, y1~y2 (E[H_ab conj(H_cd)] = d_ac d_bd /N);
//   GOE: both terms of E[S_ab S_cd] = (d_ac d_bd + d_ad d_bc)/N, selected by
//   the twist bit (false: x1~y2, y1~x2; true: x1~x2, y1~y2).
// Note the differing-flags GUE merge is the orientation-reversing gluing:
// pairing H with conj(H) behaves like the complex-Ginibre G with conj(G)
// pair, not like G with G*.
GluedSurface glue(const std::vector<Word>& words, const DecoratedPairing& phi);

// The merged index classes the pairing induces: one compact id per slot
// (face-major, position order, ids numbered by first appearance). Validates
// phi like glue.
std::vector<int> slot_classes(const std::vector<Word>& words,
                              const DecoratedPairing& phi);

// One full enumeration pass accumulating everything the expansion operations
// need; kept together so they share work and cross-check each other.
struct ExpansionSummary {
  LaurentPolynomial full;       // sum of N^(V - m/2) over all pairings
  LaurentPolynomial atom_free;  // same, excluding pairings with an atom (a
                                // single-face sphere or projective-plane
                                // component)
  BigInt bi_atomic = 0;         // pairings gluing to k/2 two-face spheres
  std::uint64_t pairings = 0;
  int v_max = 0;                // valid when pairings > 0
  BigInt v_max_count = 0;
};

ExpansionSummary expansion_summary(const std::vector<Word>& words,
                                   const EnumerationLimits& limits = {},
                                   int workers = 1);

// E[prod Tr] as an exact Laurent polynomial; zero when no pairing exists.
LaurentPolynomial genus_expansion(const std::vector<Word>& words,
                                  const EnumerationLimits& limits = {},
                                  int workers = 1);

// E[prod (Tr - a N - p)]: the direct atom-free sum. Asserts equality with
// the inclusion-exclusion combination of genus_expansion over subsets with
// the per-face centering polynomials a*N + p.
LaurentPolynomial atom_free_expansion(const std::vector<Word>& words,
                                      const EnumerationLimits& limits = {},
                                      int workers = 1);

// Pairings whose surface is k/2 disjoint two-face spheres; asserted equal to
// the constant term of the atom-free expansion.
BigInt bi_atomic_count(const std::vector<Word>& words,
                       const EnumerationLimits& limits = {});

struct NondegenerateCount {
  BigInt count;
  int v_max = 0;
};

// Maximal vertex count over all pairings and how many attain it.
// Throws NoPairingError when no admissible pairing exists.
NondegenerateCount nondegenerate_count(const std::vector<Word>& words,
                                       const EnumerationLimits& limits = {});

enum class ClosedSurfaceKind { Sphere, ProjectivePlane };

// Number of pairings gluing all faces into a single component of the given
// kind. Uses an exact vertex-budget prune: a sphere forces V = m/2 - k + 2
// and a projective plane V = m/2 - k + 1, so branches whose merge count can
// no longer land on the target are cut. Every surviving leaf is classified
// by the full glue route. For a single all-complex-Ginibre face and the
// sphere target at large m, candidates are generated non-crossing-first:
// a crossing pair already forces a handle or cross-caps, so only
// non-crossing candidates can close into a sphere, and each candidate is
// still glue-verified before being counted.
BigInt count_closed_pairings(const std::vector<Word>& words,
                             ClosedSurfaceKind kind,
                             const EnumerationLimits& limits = {});

// (a, p, b, c) by enumeration over P(w), P(w, w*), P(w, w). GOE twists
// count as separate decorated pairings.
SphericalCounts spherical_counts(const Word& w,
                                 const EnumerationLimits& limits = {});

// The planarity rules for one- and two-face complex-Ginibre configurations:
// no internal crossing, no external crossing, no bridge; extended with the
// orientation conditions the conjugated/transposed letters make necessary
// (internal pairs must be untwisted, external pairs must carry a uniform
// twist, and the external order test runs in the compatible orientation).
// Two-face configurations also need at least one external pair to be
// connected. True iff glue(words, phi) is a single sphere.
bool spherical_rule_check(const std::vector<Word>& words,
                          const DecoratedPairing& phi);

}  // namespace tracewick
