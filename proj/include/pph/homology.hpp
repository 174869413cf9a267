#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pph/complexes.hpp"
#include "pph/error.hpp"
#include "pph/homotopy.hpp"
#include "pph/linalg.hpp"
#include "pph/path.hpp"

namespace pph {

inline BoundaryMode natural_mode(const PathComplex& p) {
  return p.is_regular() ? BoundaryMode::regular : BoundaryMode::non_regular;
}

// Ordered elementary basis of A_n (regular mode) or A^nr_n. n = -1 gives {e}.
inline std::vector<ElementaryPath> allowed_space(const PathComplex& p, int n, BoundaryMode mode = BoundaryMode::regular) {
  if (n < -1) throw Error(Errc::degree, "allowed space degree must be >= -1");
  std::vector<ElementaryPath> out;
  for (const auto& path : p.paths(n))
    if (mode == BoundaryMode::non_regular || path.is_regular()) out.push_back(path);
  return out;
}

using PathIndex = std::map<ElementaryPath, std::size_t>;

inline PathIndex index_paths(const std::vector<ElementaryPath>& paths) {
  PathIndex idx;
  for (std::size_t i = 0; i < paths.size(); ++i) idx.emplace(paths[i], i);
  return idx;
}

inline FormalChain chain_from_coords(const Field& f, int degree, const std::vector<ElementaryPath>& basis, const Vector& coords) {
  FormalChain c(f, degree);
  for (std::size_t i = 0; i < basis.size(); ++i) c.add(basis[i], coords[i]);
  return c;
}

// Coordinates of c in an elementary basis; nullopt if c has a term outside it.
inline std::optional<Vector> coords_of(const FormalChain& c, const PathIndex& idx) {
  Vector v = zero_vector(c.field(), idx.size());
  for (const auto& [p, coeff] : c.terms()) {
    auto it = idx.find(p);
    if (it == idx.end()) return std::nullopt;
    v[it->second] = coeff;
  }
  return v;
}

// Solves {v in span(a_n) : ∂v has no term outside `allowed_prev`}; vectors in a_n coordinates.
template <class AllowedPrev>
SubspaceBasis omega_vectors(const Field& f, BoundaryMode mode, const std::vector<ElementaryPath>& a_n, AllowedPrev&& allowed_prev) {
  std::map<ElementaryPath, std::size_t> bad_rows;
  std::vector<FormalChain> boundaries;
  boundaries.reserve(a_n.size());
  for (const auto& p : a_n) {
    boundaries.push_back(boundary(FormalChain::of(f, p), mode));
    for (const auto& [face, c] : boundaries.back().terms())
      if (!allowed_prev(face)) bad_rows.try_emplace(face, bad_rows.size());
  }
  Matrix m(f, bad_rows.size(), a_n.size());
  for (std::size_t j = 0; j < a_n.size(); ++j)
    for (const auto& [face, c] : boundaries[j].terms())
      if (auto it = bad_rows.find(face); it != bad_rows.end()) m(it->second, j) = c;
  return kernel_basis(m);
}

// Ω_n as a subspace of A_n.
struct OmegaBasis {
  int degree;
  std::vector<ElementaryPath> ambient;
  SubspaceBasis vectors;

  std::size_t dim() const noexcept { return vectors.dim(); }
  FormalChain chain(std::size_t i) const { return chain_from_coords(vectors.field(), degree, ambient, vectors[i]); }
};

inline OmegaBasis omega_basis(const PathComplex& p, int n, const Field& f = Field::rational(), BoundaryMode mode = BoundaryMode::regular) {
  if (n < 0) throw Error(Errc::degree, "omega degree must be non-negative");
  auto a_n = allowed_space(p, n, mode);
  auto a_prev = allowed_space(p, n - 1, mode);
  auto prev = index_paths(a_prev);
  auto vs = omega_vectors(f, mode, a_n, [&](const ElementaryPath& q) { return prev.contains(q); });
  return OmegaBasis{n, std::move(a_n), std::move(vs)};
}

// The chain complex 0 <- Ω_0 <- Ω_1 <- ... <- Ω_top with boundary matrices
// in the chosen Ω bases. The map Ω_0 -> K is dropped (non-reduced homology).
class ChainComplexSnapshot {
 public:
  ChainComplexSnapshot(PathComplex p, int top, Field f = Field::rational(), std::optional<BoundaryMode> mode = std::nullopt)
      : complex_(std::move(p)), field_(f), mode_(mode.value_or(natural_mode(complex_))), top_(top) {
    if (top < 0) throw Error(Errc::degree, "top degree must be non-negative");
    for (int n = 0; n <= top; ++n) omega_.push_back(omega_basis(complex_, n, field_, mode_));
    boundary_.emplace_back(field_, 0, omega_[0].dim());
    for (int n = 1; n <= top; ++n) boundary_.push_back(build_boundary(n));
    for (int n = 2; n <= top; ++n)
      if (!(boundary_[static_cast<std::size_t>(n - 1)] * boundary_[static_cast<std::size_t>(n)]).is_zero())
        throw Error(Errc::consistency, "boundary matrices do not compose to zero");
  }

  const PathComplex& complex() const noexcept { return complex_; }
  const Field& field() const noexcept { return field_; }
  BoundaryMode mode() const noexcept { return mode_; }
  int top() const noexcept { return top_; }
  const OmegaBasis& omega(int n) const { return omega_.at(static_cast<std::size_t>(n)); }
  // ∂_n : Ω_n -> Ω_{n-1}; ∂_0 is the zero map to the zero space.
  const Matrix& boundary_matrix(int n) const { return boundary_.at(static_cast<std::size_t>(n)); }

 private:
  Matrix build_boundary(int n) const {
    const auto& src = omega_[static_cast<std::size_t>(n)];
    const auto& dst = omega_[static_cast<std::size_t>(n - 1)];
    auto idx = index_paths(dst.ambient);
    auto solver = dst.vectors.echelon();
    Matrix m(field_, dst.dim(), src.dim());
    for (std::size_t j = 0; j < src.dim(); ++j) {
      auto img = boundary(src.chain(j), mode_);
      auto a = coords_of(img, idx);
      if (!a) throw Error(Errc::consistency, "boundary of an Ω vector left A_{n-1}");
      auto c = solver.coordinates(*a);
      if (!c) throw Error(Errc::consistency, "boundary of an Ω vector left Ω_{n-1}");
      for (std::size_t i = 0; i < dst.dim(); ++i) m(i, j) = (*c)[i];
    }
    return m;
  }

  PathComplex complex_;
  Field field_;
  BoundaryMode mode_;
  int top_;
  std::vector<OmegaBasis> omega_;
  std::vector<Matrix> boundary_;
};

// H_n = Z_n / B_n with chosen representatives, in Ω_n coordinates.
class HomologyBasis {
 public:
  HomologyBasis(const ChainComplexSnapshot& c, int n) : degree_(n), solver_(c.field(), c.omega(n).dim()) {
    if (n < 0 || n + 1 > c.top()) throw Error(Errc::degree, "homology in degree n needs a snapshot built to degree n+1");
    const Matrix& dn1 = c.boundary_matrix(n + 1);
    for (std::size_t j = 0; j < dn1.cols(); ++j)
      if (solver_.insert(dn1.column(j))) ++boundary_rank_;
    auto cycles = kernel_basis(c.boundary_matrix(n));
    for (const auto& z : cycles.vectors()) {
      cycle_dim_++;
      if (solver_.insert(z)) reps_.push_back(z);
    }
  }

  int degree() const noexcept { return degree_; }
  std::size_t dim() const noexcept { return reps_.size(); }
  std::size_t cycle_dim() const noexcept { return cycle_dim_; }
  std::size_t boundary_dim() const noexcept { return boundary_rank_; }
  const std::vector<Vector>& representatives() const noexcept { return reps_; }

  // Class of a cycle (Ω_n coordinates) in the representative basis; nullopt if not a cycle.
  std::optional<Vector> classify(const Vector& z) const {
    auto c = solver_.coordinates(z);
    if (!c) return std::nullopt;
    return Vector(c->begin() + static_cast<long>(boundary_rank_), c->end());
  }

 private:
  int degree_;
  IncrementalBasis solver_;
  std::size_t boundary_rank_ = 0;
  std::size_t cycle_dim_ = 0;
  std::vector<Vector> reps_;
};

// dim H_n for n = 0..up_to via the Ω complex, cross-checked against
// Ker ∂|_{A_n} / (A_n ∩ ∂A_{n+1}).
inline std::size_t homology_dim_from_allowed(const PathComplex& p, int n, const Field& f, BoundaryMode mode) {
  auto a_n = allowed_space(p, n, mode);
  auto a_up = allowed_space(p, n + 1, mode);
  // Ker ∂|_{A_n}; non-reduced, so everything in degree 0.
  std::size_t ker_dim = a_n.size();
  if (n > 0) {
    std::map<ElementaryPath, std::size_t> rows;
    std::vector<FormalChain> bds;
    for (const auto& q : a_n) {
      bds.push_back(boundary(FormalChain::of(f, q), mode));
      for (const auto& [face, c] : bds.back().terms()) rows.try_emplace(face, rows.size());
    }
    Matrix m(f, rows.size(), a_n.size());
    for (std::size_t j = 0; j < a_n.size(); ++j)
      for (const auto& [face, c] : bds[j].terms()) m(rows.at(face), j) = c;
    ker_dim = a_n.size() - rank(m);
  }
  // A_n ∩ ∂A_{n+1} inside the span of A_n and every face that occurs.
  auto idx = index_paths(a_n);
  std::vector<FormalChain> ups;
  for (const auto& q : a_up) {
    ups.push_back(boundary(FormalChain::of(f, q), mode));
    for (const auto& [face, c] : ups.back().terms()) idx.try_emplace(face, idx.size());
  }
  std::vector<Vector> up_vecs;
  for (const auto& c : ups) up_vecs.push_back(*coords_of(c, idx));
  std::vector<std::size_t> axes(a_n.size());
  for (std::size_t i = 0; i < a_n.size(); ++i) axes[i] = i;
  auto a_sub = SubspaceBasis::coordinate(f, idx.size(), axes);
  auto d_sub = span_of(f, idx.size(), up_vecs);
  return ker_dim - intersect(a_sub, d_sub).dim();
}

inline std::vector<std::size_t> homology_dims(const PathComplex& p, int up_to, const Field& f = Field::rational()) {
  if (up_to < 0) throw Error(Errc::degree, "degree must be non-negative");
  ChainComplexSnapshot snap(p, up_to + 1, f);
  std::vector<std::size_t> out;
  for (int n = 0; n <= up_to; ++n) {
    HomologyBasis h(snap, n);
    std::size_t alt = homology_dim_from_allowed(p, n, f, snap.mode());
    if (alt != h.dim())
      throw Error(Errc::consistency, "homology dimension mismatch in degree " + std::to_string(n) + ": " + std::to_string(h.dim()) +
                                         " (Ω complex) vs " + std::to_string(alt) + " (allowed spaces)");
    out.push_back(h.dim());
  }
  return out;
}

// Per-degree matrices of f_*: Ω_n(src) -> Ω_n(dst), for n = 0..min(top).
struct ChainMap {
  std::vector<Matrix> degrees;
  const Matrix& operator[](int n) const { return degrees.at(static_cast<std::size_t>(n)); }
};

inline ChainMap induced_chain_map(const VertexMap& f, const ChainComplexSnapshot& src, const ChainComplexSnapshot& dst) {
  if (!(src.field() == dst.field())) throw Error(Errc::mode_mismatch, "chain complexes over different fields");
  if (src.mode() != dst.mode()) throw Error(Errc::morphism, "chain complexes in different boundary modes");
  if (!is_weak_morphism(f, src.complex(), dst.complex())) throw Error(Errc::morphism, "vertex map is not a weak morphism");
  ChainMap out;
  const int top = std::min(src.top(), dst.top());
  for (int n = 0; n <= top; ++n) {
    const auto& s = src.omega(n);
    const auto& d = dst.omega(n);
    auto idx = index_paths(d.ambient);
    auto solver = d.vectors.echelon();
    Matrix m(src.field(), d.dim(), s.dim());
    for (std::size_t j = 0; j < s.dim(); ++j) {
      auto img = induced_map(f, s.chain(j), src.mode());
      auto a = coords_of(img, idx);
      if (!a) throw Error(Errc::morphism, "image of an Ω vector is not allowed");
      auto c = solver.coordinates(*a);
      if (!c) throw Error(Errc::morphism, "image of an Ω vector is not ∂-invariant");
      for (std::size_t i = 0; i < d.dim(); ++i) m(i, j) = (*c)[i];
    }
    out.degrees.push_back(std::move(m));
  }
  return out;
}

// Matrix of H_n(f) in the representative bases of src and dst.
inline Matrix homology_map(const ChainMap& f, const ChainComplexSnapshot& src, const ChainComplexSnapshot& dst, int n) {
  HomologyBasis hs(src, n), hd(dst, n);
  const Matrix& fn = f[n];
  Matrix out(src.field(), hd.dim(), hs.dim());
  for (std::size_t j = 0; j < hs.dim(); ++j) {
    auto cls = hd.classify(fn.apply(hs.representatives()[j]));
    if (!cls) throw Error(Errc::consistency, "chain map sends a cycle to a non-cycle");
    for (std::size_t i = 0; i < hd.dim(); ++i) out(i, j) = (*cls)[i];
  }
  // Boundaries must go to boundaries for the map on classes to be well defined.
  const Matrix& dn1 = src.boundary_matrix(n + 1);
  for (std::size_t j = 0; j < dn1.cols(); ++j) {
    auto cls = hd.classify(fn.apply(dn1.column(j)));
    if (!cls || !is_zero(*cls)) throw Error(Errc::consistency, "chain map does not preserve boundaries");
  }
  return out;
}

inline std::string describe_omega(const OmegaBasis& o, const VertexTable& names) {
  std::string s;
  for (std::size_t i = 0; i < o.dim(); ++i) s += (i ? "\n" : "") + o.chain(i).to_string(names);
  return s;
}

}  // namespace pph
