#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pph/error.hpp"
#include "pph/filtration.hpp"
#include "pph/homology.hpp"
#include "pph/linalg.hpp"
#include "pph/scalar.hpp"

namespace pph {

struct DiagramPoint {
  Rational birth;
  Extended death;

  friend bool operator==(const DiagramPoint& a, const DiagramPoint& b) { return a.birth == b.birth && a.death == b.death; }
  friend bool operator<(const DiagramPoint& a, const DiagramPoint& b) {
    if (a.birth != b.birth) return a.birth < b.birth;
    return a.death < b.death;
  }
  Extended persistence() const {
    if (death.is_infinite()) return Extended::infinity();
    return Rational(death.value() - birth);
  }
};

// Multiset of (birth, death) points in one homology degree, kept sorted.
class PersistenceDiagram {
 public:
  explicit PersistenceDiagram(int degree, std::vector<DiagramPoint> points = {}) : degree_(degree), points_(std::move(points)) {
    for (auto& p : points_) {
      p.birth.canonicalize();
      if (!p.death.is_infinite() && p.death.value() < p.birth) throw Error(Errc::domain, "diagram point with death before birth");
    }
    std::sort(points_.begin(), points_.end());
  }

  int degree() const noexcept { return degree_; }
  const std::vector<DiagramPoint>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }

  // Distinct points with their multiplicities.
  std::vector<std::pair<DiagramPoint, std::size_t>> multiplicities() const {
    std::vector<std::pair<DiagramPoint, std::size_t>> out;
    for (const auto& p : points_) {
      if (!out.empty() && out.back().first == p)
        ++out.back().second;
      else
        out.emplace_back(p, 1);
    }
    return out;
  }

  std::size_t infinite_count() const {
    return static_cast<std::size_t>(std::count_if(points_.begin(), points_.end(), [](const auto& p) { return p.death.is_infinite(); }));
  }

  friend bool operator==(const PersistenceDiagram&, const PersistenceDiagram&) = default;

 private:
  int degree_;
  std::vector<DiagramPoint> points_;
};

namespace detail {

// Flag-adapted basis of Ω_n across all snapshots, in coordinates of A_n of the final complex.
inline FlagAdaptedBasis omega_flag(const FilteredComplex& fc, int n, const Field& f, BoundaryMode mode, const std::vector<ElementaryPath>& a_n) {
  const std::size_t m = fc.index().size();
  std::vector<SubspaceBasis> flag;
  flag.reserve(m);
  std::size_t last_n = 0, last_prev = 0;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<std::size_t> sub;  // positions of A_n(δ_i) within a_n
    for (std::size_t k = 0; k < a_n.size(); ++k)
      if (fc.entry(a_n[k]) <= i) sub.push_back(k);
    std::size_t prev_count = 0;
    if (n > 0)
      for (const auto& q : fc.full().paths(n - 1))
        if (fc.entry(q) <= i) ++prev_count;
    if (i > 0 && sub.size() == last_n && prev_count == last_prev) {
      flag.push_back(flag.back());
      continue;
    }
    last_n = sub.size();
    last_prev = prev_count;
    std::vector<ElementaryPath> local;
    for (auto k : sub) local.push_back(a_n[k]);
    auto allowed_prev = [&](const ElementaryPath& q) {
      if (q.empty()) return true;
      if (mode == BoundaryMode::regular && !q.is_regular()) return false;
      return fc.full().contains(q) && fc.entry(q) <= i;
    };
    auto local_basis = omega_vectors(f, mode, local, allowed_prev);
    std::vector<Vector> lifted;
    for (const auto& v : local_basis.vectors()) {
      Vector w = zero_vector(f, a_n.size());
      for (std::size_t k = 0; k < sub.size(); ++k) w[sub[k]] = v[k];
      lifted.push_back(std::move(w));
    }
    flag.emplace_back(f, a_n.size(), std::move(lifted));
  }
  return flag_adapted_basis(flag);
}

}  // namespace detail

// Diagram of δ ↦ H_p(Ω_*(snapshot δ)) by column reduction over flag-adapted bases
// of the nested Ω_p and Ω_{p+1}. Zero-length bars are dropped.
inline PersistenceDiagram persistence_diagram(const FilteredComplex& fc, int p, const Field& f = Field::rational()) {
  if (p < 0) throw Error(Errc::degree, "homology degree must be non-negative");
  const BoundaryMode mode = natural_mode(fc.full());
  auto a_p = allowed_space(fc.full(), p, mode);
  auto a_up = allowed_space(fc.full(), p + 1, mode);
  auto omega_p = detail::omega_flag(fc, p, f, mode, a_p);
  auto omega_up = detail::omega_flag(fc, p + 1, f, mode, a_up);
  const auto& basis_p = omega_p.basis;
  const auto& basis_up = omega_up.basis;

  // Ω_p columns that are cycles modulo earlier columns create classes.
  std::vector<bool> positive(basis_p.dim(), true);
  if (p > 0) {
    std::map<ElementaryPath, std::size_t> rows;
    std::vector<FormalChain> bds;
    for (std::size_t j = 0; j < basis_p.dim(); ++j) {
      bds.push_back(boundary(chain_from_coords(f, p, a_p, basis_p[j]), mode));
      for (const auto& [face, c] : bds.back().terms()) rows.try_emplace(face, rows.size());
    }
    IncrementalBasis seen(f, rows.size());
    for (std::size_t j = 0; j < basis_p.dim(); ++j) positive[j] = !seen.insert(*coords_of(bds[j], rows));
  }

  // ∂: Ω_{p+1} -> Ω_p in the adapted bases; columns ordered by entry.
  auto idx_p = index_paths(a_p);
  auto solver = basis_p.echelon();
  std::vector<Vector> cols;
  for (std::size_t j = 0; j < basis_up.dim(); ++j) {
    auto img = boundary(chain_from_coords(f, p + 1, a_up, basis_up[j]), mode);
    auto a = coords_of(img, idx_p);
    if (!a) throw Error(Errc::consistency, "boundary of Ω_{p+1} left A_p");
    auto c = solver.coordinates(*a);
    if (!c) throw Error(Errc::consistency, "boundary of Ω_{p+1} left Ω_p");
    cols.push_back(std::move(*c));
  }

  auto low = [](const Vector& v) -> std::optional<std::size_t> {
    for (std::size_t i = v.size(); i-- > 0;)
      if (!v[i].is_zero()) return i;
    return std::nullopt;
  };
  std::map<std::size_t, std::size_t> pivot_owner;  // row -> column
  std::vector<bool> killed(basis_p.dim(), false);
  std::vector<DiagramPoint> points;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    auto& col = cols[j];
    for (auto l = low(col); l; l = low(col)) {
      auto it = pivot_owner.find(*l);
      if (it == pivot_owner.end()) {
        pivot_owner.emplace(*l, j);
        killed[*l] = true;
        if (!positive[*l]) throw Error(Errc::consistency, "pivot on a non-cycle column");
        std::size_t birth = omega_p.entry_index[*l], death = omega_up.entry_index[j];
        if (birth != death) points.push_back({fc.value(birth), Extended(fc.value(death))});
        break;
      }
      const auto& other = cols[it->second];
      Scalar factor = col[*l] / other[*l];
      for (std::size_t i = 0; i <= *l; ++i)
        if (!other[i].is_zero()) col[i] -= factor * other[i];
    }
  }
  for (std::size_t i = 0; i < basis_p.dim(); ++i)
    if (positive[i] && !killed[i]) points.push_back({fc.value(omega_p.entry_index[i]), Extended::infinity()});
  return PersistenceDiagram(p, std::move(points));
}

// Rank of H_p(snapshot i) -> H_p(snapshot j) induced by inclusion, computed
// from the chain map of the identity vertex map.
inline std::size_t betti_persistence_oracle(const FilteredComplex& fc, int p, std::size_t i, std::size_t j, const Field& f = Field::rational()) {
  if (i > j) throw Error(Errc::usage, "oracle needs i <= j");
  ChainComplexSnapshot a(fc.snapshot(i), p + 1, f, natural_mode(fc.full()));
  ChainComplexSnapshot b(fc.snapshot(j), p + 1, f, natural_mode(fc.full()));
  auto map = induced_chain_map(VertexMap::identity(fc.full().vertex_count()), a, b);
  return rank(homology_map(map, a, b, p));
}

// #{bars born at or before δ_i that are still alive after δ_j}.
inline std::size_t bars_spanning(const PersistenceDiagram& d, const Rational& di, const Rational& dj) {
  std::size_t n = 0;
  for (const auto& pt : d.points())
    if (pt.birth <= di && (pt.death.is_infinite() || dj < pt.death.value())) ++n;
  return n;
}

}  // namespace pph
