#pragma once

// Dense exact matrices and the handful of linear-algebra routines the module
// code needs: row reduction, kernels, subspace intersection, minimal
// polynomials.

#include <optional>
#include <string>
#include <vector>

#include "lpa/error.hpp"
#include "lpa/field.hpp"

namespace lpa {

using Vector = std::vector<Scalar>;

inline Vector zero_vector(const FieldPtr& f, std::size_t n) { return Vector(n, Scalar::zero(f)); }

inline bool is_zero_vector(const Vector& v) {
  for (const auto& s : v)
    if (!s.is_zero()) return false;
  return true;
}

class Matrix {
 public:
  Matrix(FieldPtr f, std::size_t rows, std::size_t cols)
      : field_(std::move(f)), rows_(rows), cols_(cols), data_(rows * cols, Scalar::zero(field_)) {}

  static Matrix identity(const FieldPtr& f, std::size_t n) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(f);
    return m;
  }

  // Columns given as vectors of equal length.
  static Matrix from_columns(const FieldPtr& f, std::size_t rows, const std::vector<Vector>& cols) {
    Matrix m(f, rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    return m;
  }

  // Companion matrix of a monic polynomial: multiplication by t on the
  // power basis 1, t, ..., t^{d-1} of K[t]/(f).
  static Matrix companion(const Poly& f) {
    if (!f.is_monic() || f.degree() < 1) throw PreconditionError("companion matrix needs a monic polynomial");
    const auto d = static_cast<std::size_t>(f.degree());
    Matrix m(f.field(), d, d);
    for (std::size_t i = 1; i < d; ++i) m(i, i - 1) = Scalar::one(f.field());
    for (std::size_t i = 0; i < d; ++i) m(i, d - 1) = -f.coeff(i);
    return m;
  }

  const FieldPtr& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vector column(std::size_t j) const {
    Vector v;
    for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
    return v;
  }

  Vector apply(const Vector& x) const {
    if (x.size() != cols_) throw PreconditionError("matrix/vector size mismatch");
    Vector y = zero_vector(field_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (!(*this)(i, j).is_zero() && !x[j].is_zero()) y[i] += (*this)(i, j) * x[j];
    return y;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw PreconditionError("matrix product size mismatch");
    Matrix c(a.field_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Scalar& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (!b(k, j).is_zero()) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw PreconditionError("matrix sum size mismatch");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }

  friend Matrix operator-(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw PreconditionError("matrix difference size mismatch");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }

  Matrix scaled(const Scalar& s) const {
    Matrix r = *this;
    for (auto& x : r.data_) x *= s;
    return r;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  bool is_zero() const {
    for (const auto& s : data_)
      if (!s.is_zero()) return false;
    return true;
  }

  // In-place reduced row echelon form; returns pivot columns.
  std::vector<std::size_t> rref_in_place() {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
      std::size_t p = r;
      while (p < rows_ && (*this)(p, c).is_zero()) ++p;
      if (p == rows_) continue;
      if (p != r)
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(p, j), (*this)(r, j));
      const Scalar inv = (*this)(r, c).inverse();
      for (std::size_t j = c; j < cols_; ++j) (*this)(r, j) *= inv;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == r || (*this)(i, c).is_zero()) continue;
        const Scalar factor = (*this)(i, c);
        for (std::size_t j = c; j < cols_; ++j)
          if (!(*this)(r, j).is_zero()) (*this)(i, j) -= factor * (*this)(r, j);
      }
      pivots.push_back(c);
      ++r;
    }
    return pivots;
  }

  std::size_t rank() const {
    Matrix m = *this;
    return m.rref_in_place().size();
  }

  // Basis of {x : Ax = 0}.
  std::vector<Vector> nullspace() const {
    Matrix m = *this;
    const auto pivots = m.rref_in_place();
    std::vector<bool> is_pivot(cols_, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<Vector> basis;
    for (std::size_t free = 0; free < cols_; ++free) {
      if (is_pivot[free]) continue;
      Vector v = zero_vector(field_, cols_);
      v[free] = Scalar::one(field_);
      for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, free);
      basis.push_back(std::move(v));
    }
    return basis;
  }

  // A basis of the column space drawn from the original columns.
  std::vector<Vector> column_space() const {
    Matrix m = *this;
    std::vector<Vector> out;
    for (auto p : m.rref_in_place()) out.push_back(column(p));
    return out;
  }

  // Some x with Ax = b, if one exists.
  std::optional<Vector> solve(const Vector& b) const {
    Matrix aug(field_, rows_, cols_ + 1);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
      aug(i, cols_) = b[i];
    }
    const auto pivots = aug.rref_in_place();
    if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;
    Vector x = zero_vector(field_, cols_);
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, cols_);
    return x;
  }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      s += i ? "; " : "";
      for (std::size_t j = 0; j < cols_; ++j) s += (j ? " " : "") + (*this)(i, j).to_string();
    }
    return s + "]";
  }

 private:
  FieldPtr field_;
  std::size_t rows_, cols_;
  std::vector<Scalar> data_;
};

// Reduces a spanning set to a basis (rows of the returned list are independent).
inline std::vector<Vector> span_basis(const FieldPtr& f, std::size_t dim, const std::vector<Vector>& vs) {
  if (vs.empty()) return {};
  return Matrix::from_columns(f, dim, vs).column_space();
}

inline std::size_t span_dimension(const FieldPtr& f, std::size_t dim, const std::vector<Vector>& vs) {
  return span_basis(f, dim, vs).size();
}

// Basis of span(a) ∩ span(b) inside K^dim.
inline std::vector<Vector> intersect_subspaces(const FieldPtr& f, std::size_t dim, const std::vector<Vector>& a,
                                               const std::vector<Vector>& b) {
  if (a.empty() || b.empty()) return {};
  // Solve sum x_i a_i - sum y_j b_j = 0, then map x back.
  std::vector<Vector> cols = a;
  for (const auto& v : b) {
    Vector neg;
    for (const auto& s : v) neg.push_back(-s);
    cols.push_back(std::move(neg));
  }
  const Matrix m = Matrix::from_columns(f, dim, cols);
  std::vector<Vector> out;
  for (const auto& k : m.nullspace()) {
    Vector w = zero_vector(f, dim);
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!k[i].is_zero())
        for (std::size_t r = 0; r < dim; ++r) w[r] += k[i] * a[i][r];
    out.push_back(std::move(w));
  }
  return span_basis(f, dim, out);
}

// Minimal polynomial of a square matrix, by finding the first linear
// dependence among I, A, A^2, ... viewed as vectors of length n^2.
inline Poly minimal_polynomial(const Matrix& a) {
  if (a.rows() != a.cols()) throw PreconditionError("minimal polynomial needs a square matrix");
  const FieldPtr& f = a.field();
  const std::size_t n = a.rows();
  auto flatten = [&](const Matrix& m) {
    Vector v;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) v.push_back(m(i, j));
    return v;
  };
  std::vector<Vector> powers;
  Matrix p = Matrix::identity(f, n);
  for (std::size_t k = 0; k <= n; ++k) {
    const Vector target = flatten(p);
    if (!powers.empty()) {
      const Matrix m = Matrix::from_columns(f, n * n, powers);
      if (auto x = m.solve(target)) {
        std::vector<Scalar> coeffs;
        for (const auto& c : *x) coeffs.push_back(-c);
        coeffs.push_back(Scalar::one(f));
        return Poly(f, std::move(coeffs));
      }
    } else if (n == 0) {
      return Poly::constant(f, Scalar::one(f));
    }
    powers.push_back(target);
    p = p * a;
  }
  throw ArithmeticError("minimal polynomial search exceeded the matrix size");
}

}  // namespace lpa
