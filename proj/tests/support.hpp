#pragma once

// Independent oracles and random generators for the test suites. The oracles
// share no code with the library beyond GMP rationals.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "pph/pph.hpp"

namespace oracle {

using Q = mpq_class;
using Row = std::vector<Q>;
using Seq = std::vector<int>;

// Row-reduces in place and returns the rank.
inline std::size_t rank(std::vector<Row> m) {
  if (m.empty()) return 0;
  const std::size_t cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[r]);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      Q factor = m[i][c] / m[r][c];
      for (std::size_t k = c; k < cols; ++k) m[i][k] -= factor * m[r][k];
    }
    ++r;
  }
  return r;
}

// Rank over Z/p of integer rows.
inline std::size_t rank_mod(std::vector<std::vector<std::int64_t>> m, std::int64_t p) {
  if (m.empty()) return 0;
  const std::size_t cols = m[0].size();
  auto inv = [p](std::int64_t a) {
    std::int64_t r = 1, e = p - 2;
    a %= p;
    while (e) {
      if (e & 1) r = r * a % p;
      a = a * a % p;
      e >>= 1;
    }
    return r;
  };
  for (auto& row : m)
    for (auto& x : row) x = ((x % p) + p) % p;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[r]);
    std::int64_t iv = inv(m[r][c]);
    for (auto& x : m[r]) x = x * iv % p;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      std::int64_t f = m[i][c];
      for (std::size_t k = c; k < cols; ++k) m[i][k] = ((m[i][k] - f * m[r][k]) % p + p) % p;
    }
    ++r;
  }
  return r;
}

// Kernel basis of the matrix whose columns are `cols` (each a map row -> value).
inline std::vector<Row> kernel(const std::vector<std::map<Seq, Q>>& cols) {
  std::map<Seq, std::size_t> rows;
  for (const auto& c : cols)
    for (const auto& [k, v] : c) rows.try_emplace(k, 0);
  std::size_t i = 0;
  for (auto& [k, v] : rows) v = i++;
  const std::size_t n = cols.size();
  std::vector<Row> m(rows.size(), Row(n, Q(0)));
  for (std::size_t j = 0; j < n; ++j)
    for (const auto& [k, v] : cols[j]) m[rows.at(k)][j] = v;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[r]);
    Q lead = m[r][c];
    for (auto& x : m[r]) x /= lead;
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (k == r || m[k][c] == 0) continue;
      Q f = m[k][c];
      for (std::size_t t = 0; t < n; ++t) m[k][t] -= f * m[r][t];
    }
    pivots.push_back(c);
    ++r;
  }
  std::vector<bool> is_piv(n, false);
  for (auto c : pivots) is_piv[c] = true;
  std::vector<Row> out;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_piv[free]) continue;
    Row v(n, Q(0));
    v[free] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -m[k][free];
    out.push_back(v);
  }
  return out;
}

inline bool regular(const Seq& s) {
  for (std::size_t i = 1; i < s.size(); ++i)
    if (s[i] == s[i - 1]) return false;
  return true;
}

// Regular boundary of one path: alternating faces, non-regular faces dropped.
inline std::map<Seq, Q> boundary(const Seq& s) {
  std::map<Seq, Q> out;
  if (s.size() <= 1) return out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    Seq f;
    for (std::size_t k = 0; k < s.size(); ++k)
      if (k != i) f.push_back(s[k]);
    if (!regular(f)) continue;
    out[f] += (i % 2 == 0) ? Q(1) : Q(-1);
  }
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

// A regular path complex given by its allowed paths, grouped by degree.
struct Complex {
  std::vector<std::vector<Seq>> by_degree;
  std::set<Seq> allowed;
  const std::vector<Seq>& paths(int n) const {
    static const std::vector<Seq> none;
    return n < static_cast<int>(by_degree.size()) ? by_degree[static_cast<std::size_t>(n)] : none;
  }
};

// All walks along edges with at most max_dim steps.
inline Complex walks(int n, const std::set<std::pair<int, int>>& edges, int max_dim) {
  Complex c;
  std::vector<Seq> layer;
  for (int v = 0; v < n; ++v) layer.push_back({v});
  for (int d = 0; d <= max_dim; ++d) {
    c.by_degree.push_back(layer);
    for (const auto& s : layer) c.allowed.insert(s);
    std::vector<Seq> next;
    for (const auto& s : layer)
      for (const auto& [a, b] : edges)
        if (a == s.back()) {
          Seq t = s;
          t.push_back(b);
          next.push_back(t);
        }
    layer = next;
  }
  return c;
}

inline Complex from_paths(const std::set<Seq>& paths) {
  Complex c;
  for (const auto& s : paths) {
    auto d = static_cast<std::size_t>(s.size() - 1);
    if (c.by_degree.size() <= d) c.by_degree.resize(d + 1);
    c.by_degree[d].push_back(s);
    c.allowed.insert(s);
  }
  return c;
}

// Ω_n basis as vectors over the elementary n-paths of the complex.
inline std::vector<std::map<Seq, Q>> omega(const Complex& c, int n) {
  const auto& a = c.paths(n);
  // Membership system: coefficients of faces that are not allowed must vanish.
  std::vector<std::map<Seq, Q>> cols;
  for (const auto& s : a) {
    std::map<Seq, Q> bad;
    for (const auto& [f, v] : boundary(s))
      if (!c.allowed.contains(f)) bad[f] = v;
    cols.push_back(bad);
  }
  std::vector<std::map<Seq, Q>> out;
  for (const auto& k : kernel(cols)) {
    std::map<Seq, Q> v;
    for (std::size_t j = 0; j < a.size(); ++j)
      if (k[j] != 0) v[a[j]] = k[j];
    out.push_back(v);
  }
  return out;
}

inline std::map<Seq, Q> boundary(const std::map<Seq, Q>& chain) {
  std::map<Seq, Q> out;
  for (const auto& [s, v] : chain)
    for (const auto& [f, w] : boundary(s)) out[f] += v * w;
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

inline std::size_t rank_of(const std::vector<std::map<Seq, Q>>& vs) {
  std::map<Seq, std::size_t> idx;
  for (const auto& v : vs)
    for (const auto& [k, x] : v) idx.try_emplace(k, idx.size());
  std::vector<Row> rows;
  for (const auto& v : vs) {
    Row r(idx.size(), Q(0));
    for (const auto& [k, x] : v) r[idx.at(k)] = x;
    rows.push_back(r);
  }
  return rank(rows);
}

inline std::vector<std::map<Seq, Q>> boundaries(const std::vector<std::map<Seq, Q>>& vs) {
  std::vector<std::map<Seq, Q>> out;
  for (const auto& v : vs) out.push_back(boundary(v));
  return out;
}

// Non-reduced dim H_n = dim Ω_n - rank ∂_n - rank ∂_{n+1}.
inline std::size_t homology(const Complex& c, int n) {
  auto on = omega(c, n);
  auto up = omega(c, n + 1);
  std::size_t rn = n == 0 ? 0 : rank_of(boundaries(on));
  return on.size() - rn - rank_of(boundaries(up));
}

// Cycles of Ω_n(c).
inline std::vector<std::map<Seq, Q>> cycles(const Complex& c, int n) {
  auto on = omega(c, n);
  if (n == 0) return on;
  std::vector<std::map<Seq, Q>> cols;
  for (const auto& v : on) cols.push_back(boundary(v));
  std::vector<std::map<Seq, Q>> out;
  for (const auto& k : kernel(cols)) {
    std::map<Seq, Q> z;
    for (std::size_t j = 0; j < on.size(); ++j)
      for (const auto& [s, x] : on[j]) z[s] += k[j] * x;
    for (auto it = z.begin(); it != z.end();) it = it->second == 0 ? z.erase(it) : std::next(it);
    out.push_back(z);
  }
  return out;
}

// rank of H_n(a) -> H_n(b) for a ⊆ b: dim(Z_a + B_b) - dim B_b.
inline std::size_t persistent_rank(const Complex& a, const Complex& b, int n) {
  auto z = cycles(a, n);
  auto bd = boundaries(omega(b, n + 1));
  auto both = z;
  both.insert(both.end(), bd.begin(), bd.end());
  return rank_of(both) - rank_of(bd);
}

// Extended values: nullopt is +infinity.
using Ext = std::optional<Q>;
struct Bar {
  Q birth;
  Ext death;
};

inline Ext ext_max(const Ext& a, const Ext& b) {
  if (!a || !b) return std::nullopt;
  return std::max(*a, *b);
}
inline bool ext_less(const Ext& a, const Ext& b) {
  if (!a) return false;
  if (!b) return true;
  return *a < *b;
}
inline Ext pair_cost(const Bar& x, const Bar& y) {
  Q db = abs(x.birth - y.birth);
  if (!x.death && !y.death) return db;
  if (!x.death || !y.death) return std::nullopt;
  return std::max(db, Q(abs(*x.death - *y.death)));
}
inline Ext diag_cost(const Bar& x) {
  if (!x.death) return std::nullopt;
  return Q((*x.death - x.birth) / 2);
}

// Minimum over all partial matchings of the max cost (unmatched points go to the diagonal).
inline Ext bottleneck_partial(const std::vector<Bar>& a, const std::vector<Bar>& b) {
  Ext best = std::nullopt;
  bool have = false;
  std::vector<bool> used(b.size(), false);
  std::function<void(std::size_t, Ext)> rec = [&](std::size_t i, Ext cur) {
    if (have && !ext_less(cur, best)) return;
    if (i == a.size()) {
      Ext total = cur;
      for (std::size_t j = 0; j < b.size(); ++j)
        if (!used[j]) total = ext_max(total, diag_cost(b[j]));
      if (!have || ext_less(total, best)) best = total, have = true;
      return;
    }
    rec(i + 1, ext_max(cur, diag_cost(a[i])));
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      used[j] = true;
      rec(i + 1, ext_max(cur, pair_cost(a[i], b[j])));
      used[j] = false;
    }
  };
  rec(0, Q(0));
  // Only reached with !have when the search was pruned from the start, i.e. never.
  return best;
}

// Minimum over all bijections of A ∪ Δ_B with B ∪ Δ_A; diagonal to diagonal costs 0.
inline Ext bottleneck_bijection(const std::vector<Bar>& a, const std::vector<Bar>& b) {
  const std::size_t na = a.size(), nb = b.size(), n = na + nb;
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  Ext best;
  bool have = false;
  do {
    Ext cost = Q(0);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t j = perm[i];
      bool left_point = i < na, right_point = j < nb;
      if (left_point && right_point) {
        cost = ext_max(cost, pair_cost(a[i], b[j]));
      } else if (left_point) {
        // a[i] to a diagonal slot; only its own slot is the projection, all slots are equivalent.
        cost = ext_max(cost, diag_cost(a[i]));
      } else if (right_point) {
        cost = ext_max(cost, diag_cost(b[j]));
      }
    }
    if (!have || ext_less(cost, best)) best = cost, have = true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace oracle

namespace gen {

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
inline bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

inline pph::VertexTable names(int n) {
  pph::VertexTable t;
  for (int v = 0; v < n; ++v) t.intern("v" + std::to_string(v));
  return t;
}

inline std::set<pph::Edge> random_edges(Rng& rng, int n, double p) {
  std::set<pph::Edge> e;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b && coin(rng, p)) e.insert({static_cast<pph::Vertex>(a), static_cast<pph::Vertex>(b)});
  return e;
}

inline pph::Digraph random_digraph(Rng& rng, int n, double p) { return pph::Digraph(names(n), random_edges(rng, n, p)); }

inline std::set<std::pair<int, int>> int_edges(const pph::Digraph& g) {
  std::set<std::pair<int, int>> out;
  for (auto [a, b] : g.edges()) out.insert({static_cast<int>(a), static_cast<int>(b)});
  return out;
}

// Weights k / den with k in [1, max_k].
inline pph::WeightedDigraph random_weighted(Rng& rng, const pph::Digraph& g, int max_k, int den = 1) {
  std::map<pph::Edge, pph::Rational> w;
  for (const auto& e : g.edges()) w.emplace(e, pph::Rational(uniform(rng, 1, max_k), den));
  return pph::WeightedDigraph(g, std::move(w));
}

// Random regular paths of length <= top+1 over n vertices, closed under truncation.
inline pph::PathComplex random_path_complex(Rng& rng, int n, int top, int generators) {
  std::vector<pph::ElementaryPath> gens;
  for (int v = 0; v < n; ++v) gens.emplace_back(std::vector<pph::Vertex>{static_cast<pph::Vertex>(v)});
  for (int k = 0; k < generators; ++k) {
    int len = uniform(rng, 2, top + 1);
    std::vector<pph::Vertex> vs{static_cast<pph::Vertex>(uniform(rng, 0, n - 1))};
    while (static_cast<int>(vs.size()) < len) {
      auto v = static_cast<pph::Vertex>(uniform(rng, 0, n - 1));
      if (v != vs.back()) vs.push_back(v);
    }
    gens.emplace_back(std::move(vs));
  }
  return pph::truncation_closure(names(n), gens);
}

inline pph::WeightedPathComplex random_weighted(Rng& rng, const pph::PathComplex& p, int max_k, int den = 1) {
  std::map<pph::Edge, pph::Rational> w;
  for (const auto& e : p.paths(1)) w.emplace(pph::Edge{e[0], e[1]}, pph::Rational(uniform(rng, 1, max_k), den));
  return pph::WeightedPathComplex(p, std::move(w));
}

inline oracle::Complex to_oracle(const pph::PathComplex& p) {
  std::set<oracle::Seq> paths;
  for (const auto& e : p.all_paths()) {
    if (!e.is_regular()) continue;
    oracle::Seq s;
    for (auto v : e.vertices()) s.push_back(static_cast<int>(v));
    paths.insert(s);
  }
  return oracle::from_paths(paths);
}

inline pph::VertexMap random_map(Rng& rng, std::size_t from, std::size_t to) {
  std::vector<pph::Vertex> t;
  for (std::size_t i = 0; i < from; ++i) t.push_back(static_cast<pph::Vertex>(uniform(rng, 0, static_cast<int>(to) - 1)));
  return pph::VertexMap(to, std::move(t));
}

// Random diagram with points on a grid of halves, some infinite.
inline std::vector<oracle::Bar> random_bars(Rng& rng, int max_points) {
  std::vector<oracle::Bar> out;
  int n = uniform(rng, 0, max_points);
  for (int i = 0; i < n; ++i) {
    oracle::Bar b{oracle::Q(uniform(rng, 0, 8), 2), std::nullopt};
    b.birth.canonicalize();
    if (!coin(rng, 0.2)) {
      oracle::Q len(uniform(rng, 1, 8), 2);
      len.canonicalize();
      b.death = b.birth + len;
    }
    out.push_back(b);
  }
  return out;
}

inline pph::PersistenceDiagram to_diagram(int degree, const std::vector<oracle::Bar>& bars) {
  std::vector<pph::DiagramPoint> pts;
  for (const auto& b : bars) pts.push_back({b.birth, b.death ? pph::Extended(*b.death) : pph::Extended::infinity()});
  return pph::PersistenceDiagram(degree, std::move(pts));
}

inline pph::Extended to_extended(const oracle::Ext& e) { return e ? pph::Extended(*e) : pph::Extended::infinity(); }

// Random chain of the given degree over n vertices; regular paths only if asked.
inline pph::FormalChain random_chain(Rng& rng, const pph::Field& f, int n, int degree, bool regular_only) {
  pph::FormalChain c(f, degree);
  int terms = uniform(rng, 1, 6);
  for (int t = 0; t < terms; ++t) {
    std::vector<pph::Vertex> vs;
    while (static_cast<int>(vs.size()) < degree + 1) {
      auto v = static_cast<pph::Vertex>(uniform(rng, 0, n - 1));
      if (regular_only && !vs.empty() && vs.back() == v) continue;
      vs.push_back(v);
    }
    c.add(pph::ElementaryPath(vs), pph::Scalar::from_int(f, uniform(rng, -5, 5)));
  }
  return c;
}

}  // namespace gen

namespace pph {
inline void PrintTo(const Extended& e, std::ostream* os) { *os << e.to_string(); }
inline void PrintTo(const Scalar& s, std::ostream* os) { *os << s.to_string(); }
inline void PrintTo(const DiagramPoint& p, std::ostream* os) { *os << "(" << format_rational(p.birth) << ", " << p.death.to_string() << ")"; }
}  // namespace pph
