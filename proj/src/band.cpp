#include "tracewick/band.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace tracewick {

namespace {

void validate_config(const BandConfig& cfg) {
  if (cfg.N < 1) throw std::invalid_argument("band dimension must be >= 1");
  if (cfg.b < 1) throw std::invalid_argument("band half-width must be >= 1");
}

void require_complex(const std::vector<Word>& words) {
  for (const Word& w : words) {
    for (const Letter& l : w.letters) {
      if (l.ensemble != Ensemble::GinibreComplex) {
        throw UnsupportedConfigurationError(
            "the band layer handles complex-Ginibre words only");
      }
    }
  }
}

struct Component {
  std::vector<int> vertices;  // in DFS order, root first
  std::vector<int> parent;    // index into `vertices`; -1 for the root
  // Edges to already-assigned vertices, checked as soon as the later
  // endpoint gets its offset: check_edges[i] lists DFS ranks j < i.
  std::vector<std::vector<int>> check_edges;
};

std::vector<Component> split_components(const ConstraintGraph& g) {
  std::vector<std::vector<int>> adj(g.vertices);
  for (const auto& [a, b] : g.edges) {
    if (a < 0 || b < 0 || a >= g.vertices || b >= g.vertices || a == b) {
      throw std::invalid_argument("malformed constraint-graph edge");
    }
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<int> rank(g.vertices, -1);
  std::vector<Component> comps;
  for (int seed = 0; seed < g.vertices; ++seed) {
    if (rank[seed] != -1) continue;
    Component comp;
    std::vector<std::pair<int, int>> stack;  // (vertex, parent rank)
    stack.push_back({seed, -1});
    while (!stack.empty()) {
      const auto [v, par] = stack.back();
      stack.pop_back();
      if (rank[v] != -1) continue;
      rank[v] = static_cast<int>(comp.vertices.size());
      comp.vertices.push_back(v);
      comp.parent.push_back(par);
      for (int u : adj[v]) {
        if (rank[u] == -1) stack.push_back({u, rank[v]});
      }
    }
    comp.check_edges.assign(comp.vertices.size(), {});
    comps.push_back(std::move(comp));
  }
  return comps;
}

// Assemble per-vertex check lists for one component given the full edge set.
void attach_edges(Component& comp, const ConstraintGraph& g,
                  const std::vector<int>& global_rank,
                  const std::vector<int>& comp_of) {
  const int my_comp = comp_of[comp.vertices[0]];
  std::vector<bool> parent_used(comp.vertices.size(), false);
  for (const auto& [a, b] : g.edges) {
    if (comp_of[a] != my_comp) continue;
    int ra = global_rank[a];
    int rb = global_rank[b];
    if (ra > rb) std::swap(ra, rb);
    // One copy of the (parent, child) tree edge is implicit in the window
    // enumeration; every other edge is an explicit check.
    if (comp.parent[rb] == ra && !parent_used[rb]) {
      parent_used[rb] = true;
      continue;
    }
    comp.check_edges[rb].push_back(ra);
  }
}

long long count_component(const Component& comp, int N, int b, int l,
                          const BandLimits& limits) {
  const int V = static_cast<int>(comp.vertices.size());
  if (V > limits.max_component_vertices) {
    throw TooLargeError("constraint-graph component has " + std::to_string(V) +
                        " vertices, cap is " +
                        std::to_string(limits.max_component_vertices));
  }
  double work = 1;
  for (int i = 1; i < V; ++i) work *= l;
  if (work > static_cast<double>(limits.max_component_offsets)) {
    throw TooLargeError("offset enumeration of l^" + std::to_string(V - 1) +
                        " = " + std::to_string(work) + " exceeds cap");
  }
  std::vector<int> offset(V, 0);
  long long count = 0;
  auto ok_edge = [&](int oa, int ob) {
    int d = oa - ob;
    if (d < 0) d = -d;
    return std::min(d, N - d) <= b;
  };
  // Root sits at offset 0; each further vertex ranges over the l window
  // positions around its tree parent (or every residue at full band).
  auto rec = [&](auto&& self, int i) -> void {
    if (i == V) {
      ++count;
      return;
    }
    const int par_off = offset[comp.parent[i]];
    for (int t = 0; t < l; ++t) {
      int off;
      if (l == N) {
        off = t;
      } else {
        off = (par_off + t - b) % N;
        if (off < 0) off += N;
      }
      bool ok = true;
      for (int j : comp.check_edges[i]) {
        if (!ok_edge(off, offset[j])) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      offset[i] = off;
      self(self, i + 1);
    }
  };
  rec(rec, 1);
  return count;
}

struct LadderPoint {
  long long N = 0;
  int b = 0;
  int l = 0;
};

LadderPoint scale_point(long long N, double lambda) {
  LadderPoint p;
  p.N = N;
  long long bb;
  if (lambda == 0.0) {
    bb = std::llround(std::pow(static_cast<double>(N), 2.0 / 3.0));
  } else {
    bb = std::llround(lambda * static_cast<double>(N));
  }
  if (bb < 1) bb = 1;
  p.b = static_cast<int>(bb);
  p.l = static_cast<int>(std::min<long long>(2 * bb + 1, N));
  return p;
}

}  // namespace

ConstraintGraph constraint_graph(const std::vector<Word>& words,
                                 const DecoratedPairing& phi) {
  const std::vector<int> cls = slot_classes(words, phi);
  ConstraintGraph g;
  for (int c : cls) g.vertices = std::max(g.vertices, c + 1);
  std::set<std::pair<int, int>> edges;
  std::size_t off = 0;
  for (const Word& w : words) {
    const std::size_t len = w.size();
    for (std::size_t p = 0; p < len; ++p) {
      const int a = cls[off + p];
      const int b = cls[off + (p + 1) % len];
      if (a != b) edges.insert({std::min(a, b), std::max(a, b)});
    }
    off += len;
  }
  g.edges.assign(edges.begin(), edges.end());
  return g;
}

BigInt band_index_count(const ConstraintGraph& g, const BandConfig& cfg,
                        const BandLimits& limits) {
  validate_config(cfg);
  if (g.vertices == 0) return 1;
  std::vector<Component> comps = split_components(g);
  std::vector<int> global_rank(g.vertices, -1);
  std::vector<int> comp_of(g.vertices, -1);
  for (std::size_t c = 0; c < comps.size(); ++c) {
    for (std::size_t i = 0; i < comps[c].vertices.size(); ++i) {
      global_rank[comps[c].vertices[i]] = static_cast<int>(i);
      comp_of[comps[c].vertices[i]] = static_cast<int>(c);
    }
  }
  BigInt total = 1;
  for (Component& comp : comps) {
    attach_edges(comp, g, global_rank, comp_of);
    const long long cnt =
        count_component(comp, cfg.N, cfg.b, cfg.l(), limits);
    total *= BigInt(cfg.N) * cnt;
  }
  return total;
}

AlphaEstimate alpha(const ConstraintGraph& g, double lambda,
                    const BandLimits& limits) {
  if (lambda < 0) throw std::invalid_argument("lambda must be >= 0");
  if (g.vertices == 0) return {1.0, 0.0};
  // Component census: c components, and the largest one bounds the ladder.
  std::vector<int> parent(g.vertices);
  for (int i = 0; i < g.vertices; ++i) parent[i] = i;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [a, b] : g.edges) {
    const int ra = find(a);
    const int rb = find(b);
    if (ra != rb) parent[ra] = rb;
  }
  int c = 0;
  std::vector<int> comp_size(g.vertices, 0);
  for (int i = 0; i < g.vertices; ++i) {
    if (find(i) == i) ++c;
    ++comp_size[find(i)];
  }
  int vmax = 0;
  for (int i = 0; i < g.vertices; ++i) vmax = std::max(vmax, comp_size[i]);
  const int V = g.vertices;
  // Forests have |I_N| = N^c l^(V-c) exactly, so the ratio is 1 at every
  // finite window; the full-band case l = N degenerates the same way.
  if (static_cast<int>(g.edges.size()) == V - c) return {1.0, 0.0};
  if (lambda >= 0.5) return {1.0, 0.0};
  if (vmax < 3) {
    throw std::logic_error("non-forest graph with all components smaller "
                           "than 3 vertices");
  }
  const int cap_l = static_cast<int>(std::floor(std::pow(
      static_cast<double>(limits.max_component_offsets),
      1.0 / static_cast<double>(vmax - 1))));
  if (cap_l < 5) {
    throw TooLargeError("alpha ladder infeasible under the offset cap");
  }
  const int top_l = std::min(501, cap_l);
  long long N_start;
  if (lambda == 0.0) {
    N_start = std::llround(std::pow((top_l - 1) / 2.0, 1.5));
  } else {
    N_start = std::llround((top_l - 1) / (2.0 * lambda));
  }
  std::vector<LadderPoint> pts;  // decreasing l
  long long Nn = std::max<long long>(N_start, 8);
  while (static_cast<int>(pts.size()) < 3 && Nn >= 8) {
    const LadderPoint p = scale_point(Nn, lambda);
    if (p.l <= cap_l && p.l >= 5 && p.l < p.N &&
        (pts.empty() || p.l <= pts.back().l - 2)) {
      pts.push_back(p);
    }
    Nn = Nn * 5 / 8;
  }
  if (pts.size() < 3) {
    throw TooLargeError("alpha ladder infeasible for this graph and lambda");
  }
  auto ratio = [&](const LadderPoint& p) {
    BandConfig cfg;
    cfg.N = static_cast<int>(p.N);
    cfg.b = p.b;
    const BigInt count = band_index_count(g, cfg, limits);
    BigInt denom = 1;
    for (int i = 0; i < c; ++i) denom *= cfg.N;
    for (int i = 0; i < V - c; ++i) denom *= p.l;
    return BigRational(count, denom).convert_to<double>();
  };
  const double r1 = ratio(pts[2]);
  const double r2 = ratio(pts[1]);
  const double r3 = ratio(pts[0]);
  const double l1 = pts[2].l;
  const double l2 = pts[1].l;
  const double l3 = pts[0].l;
  const double a12 = (r2 * l2 - r1 * l1) / (l2 - l1);
  const double a23 = (r3 * l3 - r2 * l2) / (l3 - l2);
  AlphaEstimate out;
  out.value = a23;
  out.error = std::abs(a23 - a12) + 1e-9;
  return out;
}

double alpha_cycle(int m) {
  if (m < 1) throw std::invalid_argument("cycle length must be >= 1");
  // Truncation: for m >= 3 the dropped tail is below T^(1-m)/(m-1); for
  // m = 1, 2 the slowly decaying part is integrated by parts analytically.
  const double T = m == 3 ? 8000.0 : 2000.0;
  const double h = 5e-4;
  const long long n2 = std::llround(T / (2 * h));  // Simpson pairs
  auto ipow = [](double x, int e) {
    double r = 1;
    while (e > 0) {
      if (e & 1) r *= x;
      x *= x;
      e >>= 1;
    }
    return r;
  };
  auto f = [&](double t) {
    if (t == 0) return 1.0;
    return ipow(std::sin(t) / t, m);
  };
  double sum_odd = 0;
  double sum_even = 0;
  for (long long i = 1; i <= 2 * n2 - 1; i += 2) sum_odd += f(i * h);
  for (long long i = 2; i <= 2 * n2 - 2; i += 2) sum_even += f(i * h);
  const double body =
      (h / 3.0) * (f(0) + f(2 * n2 * h) + 4 * sum_odd + 2 * sum_even);
  double tail = 0;
  if (m == 1) {
    tail = std::cos(T) / T + std::sin(T) / (T * T) -
           2 * std::cos(T) / (T * T * T);
  } else if (m == 2) {
    tail = 1 / (2 * T) + std::sin(2 * T) / (4 * T * T) -
           std::cos(2 * T) / (4 * T * T * T);
  }
  return (2.0 / M_PI) * (body + tail);
}

BigRational band_genus_expansion(const std::vector<Word>& words,
                                 const BandConfig& cfg,
                                 const EnumerationLimits& enum_limits,
                                 const BandLimits& band_limits) {
  require_complex(words);
  validate_config(cfg);
  BigInt total = 0;
  int m = 0;
  for (const Word& w : words) m += static_cast<int>(w.size());
  for_each_pairing(
      words,
      [&](const DecoratedPairing& phi) {
        total += band_index_count(constraint_graph(words, phi), cfg, band_limits);
      },
      enum_limits);
  BigInt denom = 1;
  for (int i = 0; i < m / 2; ++i) denom *= cfg.l();
  return BigRational(total, denom);
}

BandCltParams band_clt_params(const Word& w, double lambda,
                              const EnumerationLimits& enum_limits,
                              const BandLimits& band_limits) {
  require_complex({w});
  BandCltParams out;
  out.a = count_closed_pairings({w}, ClosedSurfaceKind::Sphere, enum_limits);
  const int m = static_cast<int>(w.size());
  const bool star_free = is_star_free(w);
  auto accumulate = [&](const std::vector<Word>& pair_words, double& acc,
                        double& err, bool check_cycle) {
    std::size_t index = 0;
    for_each_pairing(
        pair_words,
        [&](const DecoratedPairing& phi) {
          ++index;
          if (!glue(pair_words, phi).single_sphere()) return;
          const ConstraintGraph g = constraint_graph(pair_words, phi);
          if (check_cycle) {
            // Expected shape for a star-free word: a single cycle through
            // all m classes (for m <= 2 deduplication leaves a tree on m
            // vertices).
            std::vector<int> deg(g.vertices, 0);
            for (const auto& [x, y] : g.edges) {
              ++deg[x];
              ++deg[y];
            }
            const bool cycle_ok =
                m >= 3 ? (g.vertices == m &&
                          static_cast<int>(g.edges.size()) == m &&
                          std::all_of(deg.begin(), deg.end(),
                                      [](int d) { return d == 2; }))
                       : (g.vertices == m &&
                          static_cast<int>(g.edges.size()) == m - 1);
            if (!cycle_ok) {
              out.gamma_cycle_verified = false;
              if (out.counterexample.empty()) {
                out.counterexample =
                    "word " + render(w) + ", spherical pairing #" +
                    std::to_string(index) + ": graph has " +
                    std::to_string(g.vertices) + " vertices and " +
                    std::to_string(g.edges.size()) + " edges";
              }
            }
          }
          const AlphaEstimate a = alpha(g, lambda, band_limits);
          acc += a.value;
          err += a.error;
        },
        enum_limits);
  };
  accumulate({w, star(w)}, out.b_prime, out.b_error, star_free);
  accumulate({w, w}, out.c_prime, out.c_error, false);
  return out;
}

}  // namespace tracewick
