#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pph/error.hpp"
#include "pph/scalar.hpp"

namespace pph {

using Vector = std::vector<Scalar>;

inline Vector zero_vector(const Field& f, std::size_t n) { return Vector(n, Scalar::zero(f)); }

inline bool is_zero(std::span<const Scalar> v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

// Dense row-major matrix over one field.
class Matrix {
 public:
  Matrix(Field f, std::size_t rows, std::size_t cols)
      : field_(f), rows_(rows), cols_(cols), data_(rows * cols, Scalar::zero(f)) {}

  static Matrix identity(Field f, std::size_t n) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(f);
    return m;
  }

  // Builds a matrix whose columns are the given vectors (all of length rows).
  static Matrix from_columns(Field f, std::size_t rows, std::span<const Vector> columns) {
    Matrix m(f, rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j].size() != rows) throw Error(Errc::dimension_mismatch, "column length differs from row count");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
    }
    return m;
  }

  const Field& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vector column(std::size_t c) const {
    Vector v;
    v.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v.push_back((*this)(r, c));
    return v;
  }

  Vector apply(std::span<const Scalar> x) const {
    if (x.size() != cols_) throw Error(Errc::dimension_mismatch, "matrix-vector size mismatch");
    Vector y = zero_vector(field_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c)
        if (!x[c].is_zero() && !(*this)(r, c).is_zero()) y[r] += (*this)(r, c) * x[c];
    return y;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error(Errc::dimension_mismatch, "matrix product size mismatch");
    if (a.field_ != b.field_) throw Error(Errc::mode_mismatch, "matrix product over different fields");
    Matrix m(a.field_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k).is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (!b(k, j).is_zero()) m(i, j) += a(i, k) * b(k, j);
      }
    return m;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(Errc::dimension_mismatch, "matrix difference size mismatch");
    Matrix m = a;
    for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] -= b.data_[i];
    return m;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  bool is_zero() const { return pph::is_zero(data_); }

 private:
  Field field_;
  std::size_t rows_, cols_;
  std::vector<Scalar> data_;
};

// Echelon form built one vector at a time. Remembers how each echelon row was
// formed from the inserted vectors, so membership tests can also return
// coordinates with respect to the inserted (independent) vectors.
class IncrementalBasis {
 public:
  IncrementalBasis(Field f, std::size_t dim) : field_(f), dim_(dim) {}

  const Field& field() const noexcept { return field_; }
  std::size_t ambient_dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return rows_.size(); }

  // Adds v if it is independent of what is already stored.
  bool insert(const Vector& v) {
    auto [residual, combo] = reduce(v);
    std::size_t pivot = first_nonzero(residual);
    if (pivot == dim_) return false;
    // residual = v - sum_r combo_r * row_r, rewritten over the inserted vectors.
    const std::size_t n = rows_.size();
    Vector t = zero_vector(field_, n + 1);
    for (std::size_t r = 0; r < n; ++r) {
      if (combo[r].is_zero()) continue;
      for (std::size_t k = 0; k < transforms_[r].size(); ++k)
        if (!transforms_[r][k].is_zero()) t[k] -= combo[r] * transforms_[r][k];
    }
    t[n] = Scalar::one(field_);
    Scalar inv = residual[pivot].inverse();
    for (auto& x : residual) x *= inv;
    for (auto& x : t) x *= inv;
    for (auto& row : transforms_) row.push_back(Scalar::zero(field_));
    rows_.push_back(std::move(residual));
    pivots_.push_back(pivot);
    transforms_.push_back(std::move(t));
    return true;
  }

  bool contains(const Vector& v) const { return first_nonzero(reduce(v).first) == dim_; }

  // Coefficients c with v = sum c_i * inserted_i, or nullopt if v is not in the span.
  std::optional<Vector> coordinates(const Vector& v) const {
    auto [residual, combo] = reduce(v);
    if (first_nonzero(residual) != dim_) return std::nullopt;
    Vector out = zero_vector(field_, rows_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (combo[r].is_zero()) continue;
      for (std::size_t k = 0; k < transforms_[r].size(); ++k)
        if (!transforms_[r][k].is_zero()) out[k] += combo[r] * transforms_[r][k];
    }
    return out;
  }

 private:
  // Returns (v - sum c_r row_r, c).
  std::pair<Vector, Vector> reduce(const Vector& v) const {
    if (v.size() != dim_) throw Error(Errc::dimension_mismatch, "vector length differs from ambient dimension");
    Vector w = v;
    Vector c = zero_vector(field_, rows_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Scalar& lead = w[pivots_[r]];
      if (lead.is_zero()) continue;
      Scalar factor = lead;
      c[r] = factor;
      const Vector& row = rows_[r];
      for (std::size_t k = pivots_[r]; k < dim_; ++k)
        if (!row[k].is_zero()) w[k] -= factor * row[k];
    }
    return {std::move(w), std::move(c)};
  }

  std::size_t first_nonzero(const Vector& v) const {
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!v[i].is_zero()) return i;
    return dim_;
  }

  Field field_;
  std::size_t dim_;
  std::vector<Vector> rows_;
  std::vector<std::size_t> pivots_;
  std::vector<Vector> transforms_;
};

// An ordered list of linearly independent coordinate vectors.
class SubspaceBasis {
 public:
  SubspaceBasis(Field f, std::size_t ambient_dim) : field_(f), dim_(ambient_dim) {}

  // Throws dimension_mismatch if the vectors are dependent or of the wrong length.
  SubspaceBasis(Field f, std::size_t ambient_dim, std::vector<Vector> vectors)
      : field_(f), dim_(ambient_dim), vectors_(std::move(vectors)) {
    IncrementalBasis check(field_, dim_);
    for (const auto& v : vectors_) {
      for (const auto& x : v)
        if (x.field() != field_) throw Error(Errc::mode_mismatch, "basis vector over a different field");
      if (!check.insert(v)) throw Error(Errc::dimension_mismatch, "basis vectors are linearly dependent");
    }
  }

  static SubspaceBasis coordinate(Field f, std::size_t ambient_dim, std::span<const std::size_t> axes) {
    std::vector<Vector> vs;
    for (auto a : axes) {
      Vector v = zero_vector(f, ambient_dim);
      v.at(a) = Scalar::one(f);
      vs.push_back(std::move(v));
    }
    return SubspaceBasis(f, ambient_dim, std::move(vs));
  }

  const Field& field() const noexcept { return field_; }
  std::size_t ambient_dim() const noexcept { return dim_; }
  std::size_t dim() const noexcept { return vectors_.size(); }
  const std::vector<Vector>& vectors() const noexcept { return vectors_; }
  const Vector& operator[](std::size_t i) const { return vectors_[i]; }

  IncrementalBasis echelon() const {
    IncrementalBasis e(field_, dim_);
    for (const auto& v : vectors_) e.insert(v);
    return e;
  }

 private:
  Field field_;
  std::size_t dim_;
  std::vector<Vector> vectors_;
};

// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref(Matrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && m(sel, col).is_zero()) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row)
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(sel, c), m(row, c));
    Scalar inv = m(row, col).inverse();
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col).is_zero()) continue;
      Scalar factor = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c)
        if (!m(row, c).is_zero()) m(r, c) -= factor * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

inline std::size_t rank(const Matrix& m) {
  Matrix work = m;
  return rref(work).size();
}

inline SubspaceBasis kernel_basis(const Matrix& m) {
  Matrix work = m;
  auto pivots = rref(work);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vector> out;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v = zero_vector(m.field(), m.cols());
    v[free] = Scalar::one(m.field());
    for (std::size_t r = 0; r < pivots.size(); ++r)
      if (!work(r, free).is_zero()) v[pivots[r]] = -work(r, free);
    out.push_back(std::move(v));
  }
  return SubspaceBasis(m.field(), m.cols(), std::move(out));
}

// Basis of the span of arbitrary vectors (drops dependent ones, keeps order).
inline SubspaceBasis span_of(Field f, std::size_t dim, std::span<const Vector> vs) {
  IncrementalBasis e(f, dim);
  std::vector<Vector> kept;
  for (const auto& v : vs)
    if (e.insert(v)) kept.push_back(v);
  return SubspaceBasis(f, dim, std::move(kept));
}

inline bool subspace_contains(const SubspaceBasis& outer, const SubspaceBasis& inner) {
  if (outer.ambient_dim() != inner.ambient_dim()) throw Error(Errc::dimension_mismatch, "ambient dimensions differ");
  auto e = outer.echelon();
  for (const auto& v : inner.vectors())
    if (!e.contains(v)) return false;
  return true;
}

inline SubspaceBasis intersect(const SubspaceBasis& a, const SubspaceBasis& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw Error(Errc::dimension_mismatch, "ambient dimensions differ");
  if (a.field() != b.field()) throw Error(Errc::mode_mismatch, "subspaces over different fields");
  const std::size_t n = a.ambient_dim();
  // Solve sum x_i a_i - sum y_j b_j = 0; the intersection is spanned by sum x_i a_i.
  Matrix m(a.field(), n, a.dim() + b.dim());
  for (std::size_t j = 0; j < a.dim(); ++j)
    for (std::size_t i = 0; i < n; ++i) m(i, j) = a[j][i];
  for (std::size_t j = 0; j < b.dim(); ++j)
    for (std::size_t i = 0; i < n; ++i) m(i, a.dim() + j) = -b[j][i];
  auto ker = kernel_basis(m);
  std::vector<Vector> out;
  for (const auto& k : ker.vectors()) {
    Vector v = zero_vector(a.field(), n);
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (!k[j].is_zero())
        for (std::size_t i = 0; i < n; ++i) v[i] += k[j] * a[j][i];
    out.push_back(std::move(v));
  }
  return SubspaceBasis(a.field(), n, std::move(out));
}

struct FlagAdaptedBasis {
  SubspaceBasis basis;
  std::vector<std::size_t> entry_index;  // 0-based flag member where each vector first appears
};

// Given nested subspaces V_0 ⊆ V_1 ⊆ ... ⊆ V_m, returns a basis of V_m whose
// first dim V_i vectors span V_i, for every i.
inline FlagAdaptedBasis flag_adapted_basis(std::span<const SubspaceBasis> flag) {
  if (flag.empty()) throw Error(Errc::dimension_mismatch, "empty flag");
  const Field f = flag.front().field();
  const std::size_t n = flag.front().ambient_dim();
  for (std::size_t i = 0; i + 1 < flag.size(); ++i) {
    if (flag[i + 1].ambient_dim() != n) throw Error(Errc::dimension_mismatch, "flag members in different ambient spaces");
    if (!subspace_contains(flag[i + 1], flag[i]))
      throw Error(Errc::nesting_violation, "flag member " + std::to_string(i) + " is not contained in member " + std::to_string(i + 1));
  }
  IncrementalBasis e(f, n);
  std::vector<Vector> out;
  std::vector<std::size_t> entries;
  for (std::size_t i = 0; i < flag.size(); ++i)
    for (const auto& v : flag[i].vectors())
      if (e.insert(v)) {
        out.push_back(v);
        entries.push_back(i);
      }
  return {SubspaceBasis(f, n, std::move(out)), std::move(entries)};
}

}  // namespace pph
