#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "pph/error.hpp"
#include "pph/persistence.hpp"
#include "pph/scalar.hpp"

namespace pph {

// Partial matching between the points of two diagrams (indices into points()).
// Every point not in a pair is matched to the diagonal.
struct Matching {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

// L∞ distance with |inf - inf| = 0 and |inf - x| = inf.
inline Extended pair_cost(const DiagramPoint& a, const DiagramPoint& b) {
  return std::max(Extended(Rational(abs(a.birth - b.birth))), abs_diff(a.death, b.death));
}

// Half persistence; infinite for an infinite bar.
inline Extended diagonal_cost(const DiagramPoint& a) {
  if (a.death.is_infinite()) return Extended::infinity();
  return Rational((a.death.value() - a.birth) / 2);
}

inline Extended matching_cost(const PersistenceDiagram& d1, const PersistenceDiagram& d2, const Matching& m) {
  std::vector<bool> used1(d1.size(), false), used2(d2.size(), false);
  Extended cost = Rational(0);
  for (auto [i, j] : m.pairs) {
    if (i >= d1.size() || j >= d2.size()) throw Error(Errc::domain, "matching refers to a missing point");
    if (used1[i] || used2[j]) throw Error(Errc::domain, "a point appears in more than one pair");
    used1[i] = used2[j] = true;
    cost = std::max(cost, pair_cost(d1.points()[i], d2.points()[j]));
  }
  for (std::size_t i = 0; i < d1.size(); ++i)
    if (!used1[i]) cost = std::max(cost, diagonal_cost(d1.points()[i]));
  for (std::size_t j = 0; j < d2.size(); ++j)
    if (!used2[j]) cost = std::max(cost, diagonal_cost(d2.points()[j]));
  return cost;
}

struct BottleneckResult {
  Extended distance;
  Matching witness;
};

namespace detail {

// Perfect matching in the diagonal-augmented bipartite graph at threshold eps.
// Left = points of A then diagonal slots for B; right = points of B then
// diagonal slots for A. Returns match_left or nullopt.
inline std::optional<std::vector<std::size_t>> augmented_matching(const std::vector<DiagramPoint>& a, const std::vector<DiagramPoint>& b,
                                                                   const Rational& eps) {
  const std::size_t na = a.size(), nb = b.size(), n = na + nb;
  const Extended e(eps);
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < nb; ++j)
      if (pair_cost(a[i], b[j]) <= e) adj[i].push_back(j);
    if (diagonal_cost(a[i]) <= e) adj[i].push_back(nb + i);
  }
  for (std::size_t j = 0; j < nb; ++j) {
    if (diagonal_cost(b[j]) <= e) adj[na + j].push_back(j);
    for (std::size_t i = 0; i < na; ++i) adj[na + j].push_back(nb + i);
  }
  constexpr std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> match_left(n, none), match_right(n, none);
  std::vector<char> visited;
  auto augment = [&](auto&& self, std::size_t u) -> bool {
    for (auto v : adj[u]) {
      if (visited[v]) continue;
      visited[v] = 1;
      if (match_right[v] == none || self(self, match_right[v])) {
        match_left[u] = v;
        match_right[v] = u;
        return true;
      }
    }
    return false;
  };
  for (std::size_t u = 0; u < n; ++u) {
    visited.assign(n, 0);
    if (!augment(augment, u)) return std::nullopt;
  }
  return match_left;
}

}  // namespace detail

// Exact bottleneck distance. Infinite bars are matched among themselves in
// birth order; finite bars by binary search over the finite set of candidate
// costs with an augmenting-path feasibility test.
inline BottleneckResult bottleneck(const PersistenceDiagram& d1, const PersistenceDiagram& d2) {
  if (d1.degree() != d2.degree()) throw Error(Errc::degree, "diagrams have different homology degrees");
  std::vector<std::size_t> inf1, inf2, fin1, fin2;
  for (std::size_t i = 0; i < d1.size(); ++i) (d1.points()[i].death.is_infinite() ? inf1 : fin1).push_back(i);
  for (std::size_t j = 0; j < d2.size(); ++j) (d2.points()[j].death.is_infinite() ? inf2 : fin2).push_back(j);

  BottleneckResult r{Rational(0), {}};
  // Points are sorted by birth, so index order is birth order.
  for (std::size_t k = 0; k < std::min(inf1.size(), inf2.size()); ++k) {
    r.witness.pairs.emplace_back(inf1[k], inf2[k]);
    r.distance = std::max(r.distance, pair_cost(d1.points()[inf1[k]], d2.points()[inf2[k]]));
  }
  if (inf1.size() != inf2.size()) r.distance = Extended::infinity();

  std::vector<DiagramPoint> a, b;
  for (auto i : fin1) a.push_back(d1.points()[i]);
  for (auto j : fin2) b.push_back(d2.points()[j]);
  std::vector<Rational> candidates{Rational(0)};
  for (const auto& x : a) candidates.push_back(diagonal_cost(x).value());
  for (const auto& y : b) candidates.push_back(diagonal_cost(y).value());
  for (const auto& x : a)
    for (const auto& y : b) candidates.push_back(pair_cost(x, y).value());
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  // The largest candidate (max half persistence or more) is always feasible.
  std::size_t lo = 0, hi = candidates.size() - 1;
  auto best = detail::augmented_matching(a, b, candidates[hi]);
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo) / 2;
    if (auto m = detail::augmented_matching(a, b, candidates[mid])) {
      hi = mid;
      best = std::move(m);
    } else {
      lo = mid + 1;
    }
  }
  if (!best) throw Error(Errc::consistency, "bottleneck search failed");
  r.distance = std::max(r.distance, Extended(candidates[lo]));
  for (std::size_t i = 0; i < a.size(); ++i)
    if ((*best)[i] < b.size()) r.witness.pairs.emplace_back(fin1[i], fin2[(*best)[i]]);
  std::sort(r.witness.pairs.begin(), r.witness.pairs.end());
  return r;
}

inline Extended bottleneck_distance(const PersistenceDiagram& d1, const PersistenceDiagram& d2) { return bottleneck(d1, d2).distance; }

}  // namespace pph
