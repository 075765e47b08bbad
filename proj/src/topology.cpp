// Pairing enumeration engine, surface gluing and classification, and the
// exact expansion operations built on them.
#include "tracewick/topology.hpp"

#include <algorithm>
#include <atomic>
#include <climits>
#include <cstddef>
#include <exception>
#include <thread>

namespace tracewick {

int GluedSurface::total_V() const {
  int v = 0;
  for (const auto& c : components) v += c.V;
  return v;
}

bool GluedSurface::single_sphere() const {
  return components.size() == 1 && components[0].euler == 2 &&
         components[0].orientable;
}

namespace {

struct FlatEdge {
  Ensemble ens{};
  int index = 0;
  bool transposed = false;
  bool conjugated = false;
  int face = 0;
  int pos = 0;  // 1-based position within the face
  int x = 0;    // slot holding the entry's row index
  int y = 0;    // slot holding the entry's column index
};

struct Problem {
  int k = 0;
  int m = 0;
  std::vector<int> face_len;
  std::vector<int> slot_off;
  std::vector<FlatEdge> edges;  // in (face, position) order
};

Problem flatten(const std::vector<Word>& words, const EnumerationLimits* limits) {
  Problem pb;
  pb.k = static_cast<int>(words.size());
  pb.face_len.resize(pb.k);
  pb.slot_off.resize(pb.k);
  int off = 0;
  for (int f = 0; f < pb.k; ++f) {
    if (words[f].letters.empty()) throw EmptyWordError();
    pb.face_len[f] = static_cast<int>(words[f].size());
    pb.slot_off[f] = off;
    off += pb.face_len[f];
  }
  pb.m = off;
  if (limits != nullptr && pb.m > limits->max_total_length) {
    throw TooLargeError("total length " + std::to_string(pb.m) +
                        " exceeds enumeration cap " +
                        std::to_string(limits->max_total_length));
  }
  pb.edges.reserve(pb.m);
  for (int f = 0; f < pb.k; ++f) {
    const int len = pb.face_len[f];
    for (int p = 1; p <= len; ++p) {
      const Letter L = normalized(words[f].letters[p - 1]);
      FlatEdge e;
      e.ens = L.ensemble;
      e.index = L.index;
      e.transposed = L.transposed;
      e.conjugated = L.conjugated;
      e.face = f;
      e.pos = p;
      const int s0 = pb.slot_off[f] + (p - 1);
      const int s1 = pb.slot_off[f] + (p % len);
      e.x = L.transposed ? s1 : s0;
      e.y = L.transposed ? s0 : s1;
      pb.edges.push_back(e);
    }
  }
  return pb;
}

bool admissible(const FlatEdge& a, const FlatEdge& b) {
  if (a.ens != b.ens || a.index != b.index) return false;
  if (a.ens == Ensemble::GinibreComplex) return a.conjugated != b.conjugated;
  return true;
}

int variant_count(const FlatEdge& a) {
  return a.ens == Ensemble::GOE ? 2 : 1;
}

bool variant_twist(const FlatEdge& a, int v) {
  return a.ens == Ensemble::GOE && v == 1;
}

// Which of the two slot identifications the pair induces on matrix entries:
// "crossed" is row1~col2, col1~row2; "parallel" is row1~row2, col1~col2.
bool entry_crossed_for(const FlatEdge& a, const FlatEdge& b, bool twist) {
  switch (a.ens) {
    case Ensemble::GinibreComplex:
    case Ensemble::GinibreReal:
      return false;
    case Ensemble::GUE:
      return a.conjugated == b.conjugated;
    case Ensemble::GOE:
      return !twist;
  }
  return false;
}

struct ChosenPair {
  int e1 = 0;
  int e2 = 0;
  bool twist = false;
  bool entry_crossed = false;
  int parity = 0;  // 1 when the two faces need opposite orientations
};

// In slot terms the gluing is crossed (head-to-tail, orientation-compatible)
// or parallel (head-to-head, orientation-reversing); each transposition
// swaps one edge's slot/entry correspondence.
int merge_parity(const Problem& pb, int e1, int e2, bool entry_crossed) {
  const bool slot_crossed =
      entry_crossed ^ pb.edges[e1].transposed ^ pb.edges[e2].transposed;
  return slot_crossed ? 0 : 1;
}

// Union-find with union by size, no path compression, and an undo log so the
// enumeration can backtrack in O(1) per merge.
class RollbackDsu {
 public:
  explicit RollbackDsu(int n) : parent_(n), size_(n, 1) {
    for (int i = 0; i < n; ++i) parent_[i] = i;
  }

  int find(int x) const {
    while (parent_[x] != x) x = parent_[x];
    return x;
  }

  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    log_.push_back({b, a});
    return true;
  }

  std::size_t checkpoint() const { return log_.size(); }

  // Returns the number of merges undone.
  int rollback(std::size_t cp) {
    int undone = 0;
    while (log_.size() > cp) {
      const Record r = log_.back();
      log_.pop_back();
      parent_[r.child] = r.child;
      size_[r.root] -= size_[r.child];
      ++undone;
    }
    return undone;
  }

 private:
  struct Record {
    int child;
    int root;
  };
  std::vector<int> parent_;
  std::vector<int> size_;
  std::vector<Record> log_;
};

struct ClassifyScratch {
  std::vector<std::vector<std::pair<int, int>>> adj;  // face -> (face, parity)
  std::vector<int> flip;
  std::vector<int> comp_of_face;
  std::vector<int> queue;
  std::vector<std::uint64_t> root_mark;
  std::uint64_t epoch = 0;
};

// Components of the glued surface: faces two-colored by the per-pair parity
// for orientability, V from the slot classes, Euler characteristic V - E + F,
// genus by the classification of closed surfaces. Consistency between the
// parity coloring and the characteristic is enforced, not assumed.
GluedSurface classify(const Problem& pb, const std::vector<ChosenPair>& pairs,
                      const RollbackDsu& slots, ClassifyScratch& sc) {
  GluedSurface out;
  const int k = pb.k;
  sc.adj.resize(k);
  for (int f = 0; f < k; ++f) sc.adj[f].clear();
  for (const ChosenPair& cp : pairs) {
    const int f1 = pb.edges[cp.e1].face;
    const int f2 = pb.edges[cp.e2].face;
    sc.adj[f1].push_back({f2, cp.parity});
    if (f1 != f2) sc.adj[f2].push_back({f1, cp.parity});
  }
  sc.flip.assign(k, -1);
  sc.comp_of_face.assign(k, -1);
  for (int seed = 0; seed < k; ++seed) {
    if (sc.flip[seed] != -1) continue;
    const int comp_id = static_cast<int>(out.components.size());
    SurfaceComponent comp;
    bool orientable = true;
    sc.queue.clear();
    sc.queue.push_back(seed);
    sc.flip[seed] = 0;
    sc.comp_of_face[seed] = comp_id;
    for (std::size_t qi = 0; qi < sc.queue.size(); ++qi) {
      const int f = sc.queue[qi];
      comp.faces.push_back(f);
      for (const auto& [g, par] : sc.adj[f]) {
        if (sc.flip[g] == -1) {
          sc.flip[g] = sc.flip[f] ^ par;
          sc.comp_of_face[g] = comp_id;
          sc.queue.push_back(g);
        } else if (sc.flip[g] != (sc.flip[f] ^ par)) {
          orientable = false;
        }
      }
    }
    std::sort(comp.faces.begin(), comp.faces.end());
    comp.F = static_cast<int>(comp.faces.size());
    comp.orientable = orientable;
    out.components.push_back(std::move(comp));
  }
  for (const ChosenPair& cp : pairs) {
    ++out.components[sc.comp_of_face[pb.edges[cp.e1].face]].E;
  }
  if (sc.root_mark.size() < static_cast<std::size_t>(pb.m)) {
    sc.root_mark.assign(pb.m, 0);
    sc.epoch = 0;
  }
  ++sc.epoch;
  for (int f = 0; f < k; ++f) {
    SurfaceComponent& comp = out.components[sc.comp_of_face[f]];
    for (int s = pb.slot_off[f]; s < pb.slot_off[f] + pb.face_len[f]; ++s) {
      const int root = slots.find(s);
      if (sc.root_mark[root] != sc.epoch) {
        sc.root_mark[root] = sc.epoch;
        ++comp.V;
      }
    }
  }
  for (SurfaceComponent& comp : out.components) {
    comp.euler = comp.V - comp.E + comp.F;
    if (comp.orientable) {
      if (comp.euler > 2 || (2 - comp.euler) % 2 != 0) {
        throw std::logic_error(
            "surface classification inconsistency: orientable component with "
            "Euler characteristic " +
            std::to_string(comp.euler));
      }
      comp.genus = (2 - comp.euler) / 2;
    } else {
      if (comp.euler > 1) {
        throw std::logic_error(
            "surface classification inconsistency: non-orientable component "
            "with Euler characteristic " +
            std::to_string(comp.euler));
      }
      comp.genus = 2 - comp.euler;
    }
  }
  return out;
}

struct ApplyInfo {
  bool closed_component = false;
  int closed_faces = 0;
};

std::vector<std::pair<int, int>> first_moves(const Problem& pb) {
  std::vector<std::pair<int, int>> moves;
  if (pb.m == 0 || pb.m % 2 != 0) return moves;
  const FlatEdge& a = pb.edges[0];
  for (int f = 1; f < pb.m; ++f) {
    if (!admissible(a, pb.edges[f])) continue;
    for (int v = 0; v < variant_count(a); ++v) moves.push_back({f, v});
  }
  return moves;
}

template <class Visitor>
class Engine {
 public:
  Engine(const Problem& pb, Visitor& vis)
      : pb_(pb),
        vis_(vis),
        slots_(pb.m),
        faces_(pb.k),
        partner_(pb.m, -1),
        unpaired_(pb.face_len) {}

  void run() {
    if (pb_.m == 0) {
      vis_.leaf(*this);
      return;
    }
    if (pb_.m % 2 != 0) return;
    recurse(0);
  }

  void run_branch(int branch) {
    if (pb_.m == 0) {
      if (branch != 0) throw std::invalid_argument("branch out of range");
      vis_.leaf(*this);
      return;
    }
    const auto moves = first_moves(pb_);
    if (branch < 0 || branch >= static_cast<int>(moves.size())) {
      throw std::invalid_argument("branch out of range");
    }
    const auto [f, v] = moves[branch];
    const ApplyInfo info = apply(0, f, v);
    if (vis_.after_apply(*this, info)) recurse(1);
    undo(0, f);
  }

  const Problem& problem() const { return pb_; }
  int merges() const { return merges_; }
  int pairs_chosen() const { return static_cast<int>(chosen_.size()); }
  int leaf_V() const { return pb_.m - merges_; }
  const std::vector<ChosenPair>& chosen() const { return chosen_; }
  GluedSurface classify_leaf() { return classify(pb_, chosen_, slots_, scratch_); }

 private:
  void recurse(int low) {
    while (low < pb_.m && partner_[low] != -1) ++low;
    if (low == pb_.m) {
      vis_.leaf(*this);
      return;
    }
    const FlatEdge& a = pb_.edges[low];
    for (int f = low + 1; f < pb_.m; ++f) {
      if (partner_[f] != -1) continue;
      if (!admissible(a, pb_.edges[f])) continue;
      for (int v = 0; v < variant_count(a); ++v) {
        const ApplyInfo info = apply(low, f, v);
        if (vis_.after_apply(*this, info)) recurse(low + 1);
        undo(low, f);
      }
    }
  }

  ApplyInfo apply(int e, int f, int v) {
    const FlatEdge& A = pb_.edges[e];
    const FlatEdge& B = pb_.edges[f];
    const bool tw = variant_twist(A, v);
    const bool ec = entry_crossed_for(A, B, tw);
    frames_.push_back({slots_.checkpoint(), faces_.checkpoint()});
    int mrg = 0;
    if (ec) {
      mrg += slots_.unite(A.x, B.y) ? 1 : 0;
      mrg += slots_.unite(A.y, B.x) ? 1 : 0;
    } else {
      mrg += slots_.unite(A.x, B.x) ? 1 : 0;
      mrg += slots_.unite(A.y, B.y) ? 1 : 0;
    }
    merges_ += mrg;
    partner_[e] = f;
    partner_[f] = e;
    chosen_.push_back({e, f, tw, ec, merge_parity(pb_, e, f, ec)});
    faces_.unite(A.face, B.face);
    --unpaired_[A.face];
    --unpaired_[B.face];
    ApplyInfo info;
    if (unpaired_[A.face] == 0 || unpaired_[B.face] == 0) {
      const int root = faces_.find(A.face);
      bool closed = true;
      int cnt = 0;
      for (int g = 0; g < pb_.k; ++g) {
        if (faces_.find(g) == root) {
          ++cnt;
          if (unpaired_[g] > 0) {
            closed = false;
            break;
          }
        }
      }
      if (closed) {
        info.closed_component = true;
        info.closed_faces = cnt;
      }
    }
    return info;
  }

  void undo(int e, int f) {
    const Frame fr = frames_.back();
    frames_.pop_back();
    merges_ -= slots_.rollback(fr.slot_cp);
    faces_.rollback(fr.face_cp);
    chosen_.pop_back();
    partner_[e] = -1;
    partner_[f] = -1;
    ++unpaired_[pb_.edges[e].face];
    ++unpaired_[pb_.edges[f].face];
  }

  struct Frame {
    std::size_t slot_cp;
    std::size_t face_cp;
  };

  const Problem& pb_;
  Visitor& vis_;
  RollbackDsu slots_;
  RollbackDsu faces_;
  std::vector<int> partner_;
  std::vector<int> unpaired_;
  std::vector<ChosenPair> chosen_;
  std::vector<Frame> frames_;
  int merges_ = 0;
  ClassifyScratch scratch_;
};

DecoratedPairing to_decorated(const Problem& pb,
                              const std::vector<ChosenPair>& chosen) {
  DecoratedPairing d;
  d.pairs.reserve(chosen.size());
  d.twist.reserve(chosen.size());
  for (const ChosenPair& cp : chosen) {
    const FlatEdge& a = pb.edges[cp.e1];
    const FlatEdge& b = pb.edges[cp.e2];
    d.pairs.push_back({EdgeId{a.face, a.pos}, EdgeId{b.face, b.pos}});
    d.twist.push_back(cp.twist);
  }
  return d;
}

struct CollectVisitor {
  const Problem* pb = nullptr;
  const std::function<void(const DecoratedPairing&)>* sink = nullptr;
  std::uint64_t count = 0;

  bool after_apply(Engine<CollectVisitor>&, const ApplyInfo&) { return true; }

  void leaf(Engine<CollectVisitor>& en) {
    ++count;
    if (sink != nullptr && *sink) (*sink)(to_decorated(*pb, en.chosen()));
  }
};

struct ExpansionVisitor {
  ExpansionSummary sum;

  ExpansionVisitor() { sum.v_max = INT_MIN; }

  bool after_apply(Engine<ExpansionVisitor>&, const ApplyInfo&) { return true; }

  void leaf(Engine<ExpansionVisitor>& en) {
    const Problem& pb = en.problem();
    const int expo = en.leaf_V() - pb.m / 2;
    const GluedSurface s = en.classify_leaf();
    int genus2 = 0;
    int crosscaps = 0;
    bool has_atom = false;
    bool all_two_face_spheres = true;
    for (const SurfaceComponent& c : s.components) {
      if (c.orientable) {
        genus2 += 2 * c.genus;
      } else {
        crosscaps += c.genus;
      }
      if (c.F == 1 && c.euler >= 1) has_atom = true;
      if (!(c.F == 2 && c.euler == 2)) all_two_face_spheres = false;
    }
    const int expo_euler = 2 * s.component_count() - pb.k - genus2 - crosscaps;
    if (expo != expo_euler) {
      throw std::logic_error(
          "exponent identity violated: V - m/2 = " + std::to_string(expo) +
          " but 2c - k - 2g - g' = " + std::to_string(expo_euler));
    }
    sum.full.add_term(expo, 1);
    if (!has_atom) sum.atom_free.add_term(expo, 1);
    if (all_two_face_spheres && pb.k % 2 == 0) sum.bi_atomic += 1;
    const int V = en.leaf_V();
    if (V > sum.v_max) {
      sum.v_max = V;
      sum.v_max_count = 1;
    } else if (V == sum.v_max) {
      sum.v_max_count += 1;
    }
    ++sum.pairings;
  }
};

struct TargetVisitor {
  int need = 0;    // exact merge total a leaf must reach
  int half_m = 0;  // pairs in a complete matching
  int k = 0;
  int chi = 0;
  BigInt count = 0;

  bool after_apply(Engine<TargetVisitor>& en, const ApplyInfo& info) {
    if (en.merges() > need) return false;
    const int rem = half_m - en.pairs_chosen();
    if (en.merges() + 2 * rem < need) return false;
    if (info.closed_component && info.closed_faces < k) return false;
    return true;
  }

  void leaf(Engine<TargetVisitor>& en) {
    if (en.merges() != need) return;
    const GluedSurface s = en.classify_leaf();
    if (s.component_count() != 1) return;
    const SurfaceComponent& c = s.components[0];
    if (c.euler != chi) return;
    if (c.orientable != (chi == 2)) {
      throw std::logic_error(
          "surface classification inconsistency at target leaf");
    }
    count += 1;
  }
};

// Spheres of a single all-complex-Ginibre face, enumerated non-crossing
// first: a crossing pair already forces a handle or cross-caps, so only
// non-crossing candidates can close into a sphere. Orientation-reversing
// chords (cross-caps) are rejected at choice time; each complete candidate
// is still verified by gluing before it is counted.
BigInt noncrossing_sphere_count(const Problem& pb) {
  const int m = pb.m;
  std::vector<int> partner(m, -1);
  BigInt count = 0;

  auto verify_and_count = [&]() {
    RollbackDsu d(m);
    int merges = 0;
    for (int e = 0; e < m; ++e) {
      const int f = partner[e];
      if (f < e) continue;
      const FlatEdge& A = pb.edges[e];
      const FlatEdge& B = pb.edges[f];
      merges += d.unite(A.x, B.x) ? 1 : 0;
      merges += d.unite(A.y, B.y) ? 1 : 0;
    }
    if (m - merges == m / 2 + 1) count += 1;
  };

  std::function<void(int)> rec = [&](int low) {
    while (low < m && partner[low] != -1) ++low;
    if (low == m) {
      verify_and_count();
      return;
    }
    const FlatEdge& a = pb.edges[low];
    // The scan stops at the first already-paired edge: a partner beyond it
    // would cross the chord that paired it.
    for (int f = low + 1; f < m && partner[f] == -1; ++f) {
      if ((f - low) % 2 == 0) continue;
      if (!admissible(a, pb.edges[f])) continue;
      if (merge_parity(pb, low, f, false) != 0) continue;
      partner[low] = f;
      partner[f] = low;
      rec(low + 1);
      partner[low] = -1;
      partner[f] = -1;
    }
  };

  rec(0);
  return count;
}

// Shared validation for externally supplied pairings.
std::vector<ChosenPair> validate_pairing(const Problem& pb,
                                         const DecoratedPairing& phi) {
  if (pb.m % 2 != 0) {
    throw InvalidPairingError("total length is odd");
  }
  if (phi.pairs.size() != static_cast<std::size_t>(pb.m / 2)) {
    throw InvalidPairingError("expected " + std::to_string(pb.m / 2) +
                              " pairs, got " + std::to_string(phi.pairs.size()));
  }
  if (phi.twist.size() != phi.pairs.size()) {
    throw InvalidPairingError("twist list length does not match pair count");
  }
  auto edge_id = [&](const EdgeId& id) {
    if (id.face < 0 || id.face >= pb.k) {
      throw InvalidPairingError("face index " + std::to_string(id.face) +
                                " out of range");
    }
    if (id.position < 1 || id.position > pb.face_len[id.face]) {
      throw InvalidPairingError("position " + std::to_string(id.position) +
                                " out of range on face " +
                                std::to_string(id.face));
    }
    return pb.slot_off[id.face] + id.position - 1;
  };
  std::vector<bool> seen(pb.m, false);
  std::vector<ChosenPair> out;
  out.reserve(phi.pairs.size());
  for (std::size_t i = 0; i < phi.pairs.size(); ++i) {
    int e1 = edge_id(phi.pairs[i].first);
    int e2 = edge_id(phi.pairs[i].second);
    if (e1 == e2) throw InvalidPairingError("edge paired with itself");
    if (e1 > e2) std::swap(e1, e2);
    if (seen[e1] || seen[e2]) {
      throw InvalidPairingError("edge appears in more than one pair");
    }
    seen[e1] = true;
    seen[e2] = true;
    const FlatEdge& A = pb.edges[e1];
    const FlatEdge& B = pb.edges[e2];
    if (!admissible(A, B)) {
      throw InvalidPairingError(
          "pair has zero covariance (ensemble, index, or conjugation "
          "mismatch)");
    }
    const bool tw = phi.twist[i];
    if (tw && A.ens != Ensemble::GOE) {
      throw InvalidPairingError("twist set on a non-GOE pair");
    }
    ChosenPair cp;
    cp.e1 = e1;
    cp.e2 = e2;
    cp.twist = tw;
    cp.entry_crossed = entry_crossed_for(A, B, tw);
    cp.parity = merge_parity(pb, e1, e2, cp.entry_crossed);
    out.push_back(cp);
  }
  std::sort(out.begin(), out.end(),
            [](const ChosenPair& a, const ChosenPair& b) { return a.e1 < b.e1; });
  return out;
}

ExpansionSummary merge_summaries(std::vector<ExpansionSummary>& parts) {
  ExpansionSummary total;
  total.v_max = INT_MIN;
  for (ExpansionSummary& p : parts) {
    if (p.pairings == 0) continue;
    total.full += p.full;
    total.atom_free += p.atom_free;
    total.bi_atomic += p.bi_atomic;
    total.pairings += p.pairings;
    if (p.v_max > total.v_max) {
      total.v_max = p.v_max;
      total.v_max_count = p.v_max_count;
    } else if (p.v_max == total.v_max) {
      total.v_max_count += p.v_max_count;
    }
  }
  if (total.pairings == 0) total.v_max = 0;
  return total;
}

}  // namespace

std::uint64_t for_each_pairing(
    const std::vector<Word>& words,
    const std::function<void(const DecoratedPairing&)>& sink,
    const EnumerationLimits& limits) {
  const Problem pb = flatten(words, &limits);
  CollectVisitor vis;
  vis.pb = &pb;
  vis.sink = &sink;
  Engine<CollectVisitor> en(pb, vis);
  en.run();
  return vis.count;
}

std::vector<DecoratedPairing> enumerate_pairings(const std::vector<Word>& words,
                                                 const EnumerationLimits& limits) {
  std::vector<DecoratedPairing> out;
  for_each_pairing(
      words, [&](const DecoratedPairing& d) { out.push_back(d); }, limits);
  return out;
}

int pairing_branch_count(const std::vector<Word>& words,
                         const EnumerationLimits& limits) {
  const Problem pb = flatten(words, &limits);
  if (pb.m == 0) return 1;
  return static_cast<int>(first_moves(pb).size());
}

std::uint64_t for_each_pairing_in_branch(
    const std::vector<Word>& words, int branch,
    const std::function<void(const DecoratedPairing&)>& sink,
    const EnumerationLimits& limits) {
  const Problem pb = flatten(words, &limits);
  CollectVisitor vis;
  vis.pb = &pb;
  vis.sink = &sink;
  Engine<CollectVisitor> en(pb, vis);
  en.run_branch(branch);
  return vis.count;
}

GluedSurface glue(const std::vector<Word>& words, const DecoratedPairing& phi) {
  const Problem pb = flatten(words, nullptr);
  const std::vector<ChosenPair> pairs = validate_pairing(pb, phi);
  RollbackDsu slots(pb.m);
  for (const ChosenPair& cp : pairs) {
    const FlatEdge& A = pb.edges[cp.e1];
    const FlatEdge& B = pb.edges[cp.e2];
    if (cp.entry_crossed) {
      slots.unite(A.x, B.y);
      slots.unite(A.y, B.x);
    } else {
      slots.unite(A.x, B.x);
      slots.unite(A.y, B.y);
    }
  }
  ClassifyScratch sc;
  return classify(pb, pairs, slots, sc);
}

std::vector<int> slot_classes(const std::vector<Word>& words,
                              const DecoratedPairing& phi) {
  const Problem pb = flatten(words, nullptr);
  const std::vector<ChosenPair> pairs = validate_pairing(pb, phi);
  RollbackDsu slots(pb.m);
  for (const ChosenPair& cp : pairs) {
    const FlatEdge& A = pb.edges[cp.e1];
    const FlatEdge& B = pb.edges[cp.e2];
    if (cp.entry_crossed) {
      slots.unite(A.x, B.y);
      slots.unite(A.y, B.x);
    } else {
      slots.unite(A.x, B.x);
      slots.unite(A.y, B.y);
    }
  }
  std::vector<int> compact(pb.m, -1);
  std::vector<int> out(pb.m);
  int next_id = 0;
  for (int s = 0; s < pb.m; ++s) {
    const int root = slots.find(s);
    if (compact[root] == -1) compact[root] = next_id++;
    out[s] = compact[root];
  }
  return out;
}

ExpansionSummary expansion_summary(const std::vector<Word>& words,
                                   const EnumerationLimits& limits,
                                   int workers) {
  const Problem pb = flatten(words, &limits);
  if (pb.m == 0 || pb.m % 2 != 0 || workers <= 1) {
    ExpansionVisitor vis;
    Engine<ExpansionVisitor> en(pb, vis);
    en.run();
    if (vis.sum.pairings == 0) vis.sum.v_max = 0;
    return vis.sum;
  }
  const int branches = static_cast<int>(first_moves(pb).size());
  if (branches == 0) {
    ExpansionSummary empty;
    return empty;
  }
  std::vector<ExpansionSummary> parts(branches);
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  const int nthreads = std::min(workers, branches);
  pool.reserve(nthreads);
  for (int t = 0; t < nthreads; ++t) {
    pool.emplace_back([&, t]() {
      try {
        for (;;) {
          const int b = next.fetch_add(1);
          if (b >= branches) break;
          ExpansionVisitor vis;
          Engine<ExpansionVisitor> en(pb, vis);
          en.run_branch(b);
          parts[b] = std::move(vis.sum);
        }
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (std::thread& th : pool) th.join();
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return merge_summaries(parts);
}

LaurentPolynomial genus_expansion(const std::vector<Word>& words,
                                  const EnumerationLimits& limits, int workers) {
  return expansion_summary(words, limits, workers).full;
}

LaurentPolynomial atom_free_expansion(const std::vector<Word>& words,
                                      const EnumerationLimits& limits,
                                      int workers) {
  const ExpansionSummary sum = expansion_summary(words, limits, workers);
  // Cross-check: centering each trace by its atom polynomial a*N + p must
  // reproduce the same series through inclusion-exclusion over face subsets.
  const int k = static_cast<int>(words.size());
  std::vector<LaurentPolynomial> centering(k);
  for (int i = 0; i < k; ++i) {
    LaurentPolynomial c = LaurentPolynomial::term(
        1, count_closed_pairings({words[i]}, ClosedSurfaceKind::Sphere, limits));
    c += LaurentPolynomial::constant(count_closed_pairings(
        {words[i]}, ClosedSurfaceKind::ProjectivePlane, limits));
    centering[i] = c;
  }
  LaurentPolynomial acc;
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    std::vector<Word> kept;
    for (int i = 0; i < k; ++i) {
      if (mask & (1u << i)) kept.push_back(words[i]);
    }
    LaurentPolynomial term = genus_expansion(kept, limits, 1);
    for (int i = 0; i < k; ++i) {
      if (!(mask & (1u << i))) {
        term = term * (LaurentPolynomial::constant(0) - centering[i]);
      }
    }
    acc += term;
  }
  if (!(acc == sum.atom_free)) {
    throw std::logic_error(
        "atom-free expansion disagrees with its inclusion-exclusion form");
  }
  return sum.atom_free;
}

BigInt bi_atomic_count(const std::vector<Word>& words,
                       const EnumerationLimits& limits) {
  const ExpansionSummary sum = expansion_summary(words, limits, 1);
  if (sum.bi_atomic != sum.atom_free.coefficient(0)) {
    throw std::logic_error(
        "bi-atomic count disagrees with the atom-free constant term");
  }
  return sum.bi_atomic;
}

NondegenerateCount nondegenerate_count(const std::vector<Word>& words,
                                       const EnumerationLimits& limits) {
  const ExpansionSummary sum = expansion_summary(words, limits, 1);
  if (sum.pairings == 0) throw NoPairingError();
  return NondegenerateCount{sum.v_max_count, sum.v_max};
}

BigInt count_closed_pairings(const std::vector<Word>& words,
                             ClosedSurfaceKind kind,
                             const EnumerationLimits& limits) {
  const Problem pb = flatten(words, &limits);
  if (pb.k == 0 || pb.m % 2 != 0) return 0;
  const int chi = kind == ClosedSurfaceKind::Sphere ? 2 : 1;
  const int v_target = chi + pb.m / 2 - pb.k;
  if (v_target < 1) return 0;
  if (kind == ClosedSurfaceKind::Sphere && pb.k == 1 && pb.m > 16) {
    const bool all_complex =
        std::all_of(pb.edges.begin(), pb.edges.end(), [](const FlatEdge& e) {
          return e.ens == Ensemble::GinibreComplex;
        });
    if (all_complex) return noncrossing_sphere_count(pb);
  }
  TargetVisitor vis;
  vis.need = pb.m - v_target;
  vis.half_m = pb.m / 2;
  vis.k = pb.k;
  vis.chi = chi;
  Engine<TargetVisitor> en(pb, vis);
  en.run();
  return vis.count;
}

SphericalCounts spherical_counts(const Word& w, const EnumerationLimits& limits) {
  SphericalCounts out;
  out.a = count_closed_pairings({w}, ClosedSurfaceKind::Sphere, limits);
  out.p = count_closed_pairings({w}, ClosedSurfaceKind::ProjectivePlane, limits);
  out.b = count_closed_pairings({w, star(w)}, ClosedSurfaceKind::Sphere, limits);
  out.c = count_closed_pairings({w, w}, ClosedSurfaceKind::Sphere, limits);
  return out;
}

bool spherical_rule_check(const std::vector<Word>& words,
                          const DecoratedPairing& phi) {
  if (words.empty() || words.size() > 2) {
    throw UnsupportedConfigurationError(
        "planarity rules are defined for one or two faces");
  }
  for (const Word& w : words) {
    for (const Letter& l : w.letters) {
      if (l.ensemble != Ensemble::GinibreComplex) {
        throw UnsupportedConfigurationError(
            "planarity rules are defined for complex Ginibre letters");
      }
    }
  }
  const Problem pb = flatten(words, nullptr);
  const std::vector<ChosenPair> pairs = validate_pairing(pb, phi);

  struct Ext {
    int p0;  // position on face 0
    int p1;  // position on face 1
    int parity;
  };
  std::vector<Ext> ext;
  std::vector<std::vector<std::pair<int, int>>> internal(pb.k);  // (lo, hi)
  for (const ChosenPair& cp : pairs) {
    const FlatEdge& A = pb.edges[cp.e1];
    const FlatEdge& B = pb.edges[cp.e2];
    if (A.face == B.face) {
      // Internal chords must be orientation-preserving: a flip chord is a
      // cross-cap and the surface cannot be a sphere.
      if (cp.parity != 0) return false;
      internal[A.face].push_back({std::min(A.pos, B.pos), std::max(A.pos, B.pos)});
    } else {
      const int p0 = A.face == 0 ? A.pos : B.pos;
      const int p1 = A.face == 0 ? B.pos : A.pos;
      ext.push_back({p0, p1, cp.parity});
    }
  }
  if (pb.k == 2 && ext.empty()) return false;  // two components, not a sphere
  // All face-to-face chords must agree on the relative orientation.
  for (const Ext& e : ext) {
    if (e.parity != ext.front().parity) return false;
  }
  // No internal crossing: chords of one face must not interleave.
  for (int f = 0; f < pb.k; ++f) {
    const auto& ch = internal[f];
    for (std::size_t i = 0; i < ch.size(); ++i) {
      for (std::size_t j = i + 1; j < ch.size(); ++j) {
        const bool inside1 = ch[j].first > ch[i].first && ch[j].first < ch[i].second;
        const bool inside2 = ch[j].second > ch[i].first && ch[j].second < ch[i].second;
        if (inside1 != inside2) return false;
      }
    }
  }
  if (pb.k == 2 && !ext.empty()) {
    // No bridge: an internal chord with face-to-face edges strictly on both
    // sides would pinch the annulus.
    for (int f = 0; f < 2; ++f) {
      for (const auto& ch : internal[f]) {
        bool inside = false;
        bool outside = false;
        for (const Ext& e : ext) {
          const int p = f == 0 ? e.p0 : e.p1;
          if (p > ch.first && p < ch.second) {
            inside = true;
          } else if (p < ch.first || p > ch.second) {
            outside = true;
          }
        }
        if (inside && outside) return false;
      }
    }
    // No external crossing: labelling the face-to-face chords in cyclic
    // order around face 0, their order around face 1 must be the reverse
    // cyclic order (the same cyclic order when the orientation parity flips
    // face 1).
    const int t = static_cast<int>(ext.size());
    std::vector<int> by0(t);
    for (int i = 0; i < t; ++i) by0[i] = i;
    std::sort(by0.begin(), by0.end(),
              [&](int a, int b) { return ext[a].p0 < ext[b].p0; });
    std::vector<int> label(t);
    for (int i = 0; i < t; ++i) label[by0[i]] = i;
    std::vector<int> by1(t);
    for (int i = 0; i < t; ++i) by1[i] = i;
    std::sort(by1.begin(), by1.end(),
              [&](int a, int b) { return ext[a].p1 < ext[b].p1; });
    const int step = ext.front().parity == 0 ? t - 1 : 1;  // -1 or +1 mod t
    const int r0 = label[by1[0]];
    for (int j = 1; j < t; ++j) {
      if (label[by1[j]] != (r0 + static_cast<long long>(step) * j) % t) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace tracewick
