#include "superbracket/matrix.hpp"

#include <sstream>
#include <utility>

#include "superbracket/errors.hpp"

namespace superbracket {

Matrix::Matrix(std::initializer_list<std::initializer_list<Rational>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  entries_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) {
      throw DimensionError("ragged matrix literal");
    }
    entries_.insert(entries_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = 1;
  }
  return m;
}

Matrix Matrix::diagonal(std::span<const Rational> diag) {
  Matrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) {
    m(i, i) = diag[i];
  }
  return m;
}

Matrix Matrix::from_columns(std::size_t rows, std::span<const Vector> columns) {
  Matrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) {
      throw DimensionError("column length mismatch");
    }
    for (std::size_t r = 0; r < rows; ++r) {
      m(r, c) = columns[c][r];
    }
  }
  return m;
}

Matrix Matrix::from_rows(std::size_t cols, std::span<const Vector> rows) {
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) {
      throw DimensionError("row length mismatch");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      m(r, c) = rows[r][c];
    }
  }
  return m;
}

Vector Matrix::column(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    v[r] = (*this)(r, c);
  }
  return v;
}

bool Matrix::is_zero() const { return superbracket::is_zero(entries_); }

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      t(c, r) = (*this)(r, c);
    }
  }
  return t;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
    throw DimensionError("matrix sum shape mismatch");
  }
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    entries_[i] += rhs.entries_[i];
  }
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
    throw DimensionError("matrix difference shape mismatch");
  }
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    entries_[i] -= rhs.entries_[i];
  }
  return *this;
}

Matrix& Matrix::operator*=(const Rational& s) {
  for (auto& e : entries_) {
    e *= s;
  }
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) {
    throw DimensionError("matrix product shape mismatch");
  }
  Matrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational& aik = a(i, k);
      if (aik.is_zero()) {
        continue;
      }
      for (std::size_t j = 0; j < b.cols_; ++j) {
        out(i, j).add_product(aik, b(k, j));
      }
    }
  }
  return out;
}

Vector operator*(const Matrix& a, std::span<const Rational> v) {
  if (a.cols_ != v.size()) {
    throw DimensionError("matrix-vector shape mismatch");
  }
  Vector out(a.rows_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      out[i].add_product(a(i, k), v[k]);
    }
  }
  return out;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r == 0 ? "[" : ", [");
    for (std::size_t c = 0; c < cols_; ++c) {
      os << (c == 0 ? "" : ", ") << (*this)(r, c);
    }
    os << "]";
  }
  os << "]";
  return os.str();
}

bool is_zero(std::span<const Rational> v) {
  for (const auto& x : v) {
    if (!x.is_zero()) {
      return false;
    }
  }
  return true;
}

Vector unit_vector(std::size_t n, std::size_t i) {
  Vector v(n);
  v.at(i) = 1;
  return v;
}

void axpy(Vector& y, const Rational& a, std::span<const Rational> x) {
  if (a.is_zero()) {
    return;
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    y[i].add_product(a, x[i]);
  }
}

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  Rational acc;
  for (std::size_t i = 0; i < a.size(); ++i) {
    acc.add_product(a[i], b[i]);
  }
  return acc;
}

EchelonForm row_reduce(Matrix a) {
  EchelonForm out;
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < cols && pivot_row < rows; ++col) {
    std::size_t found = rows;
    for (std::size_t r = pivot_row; r < rows; ++r) {
      if (!a(r, col).is_zero()) {
        found = r;
        break;
      }
    }
    if (found == rows) {
      continue;
    }
    if (found != pivot_row) {
      for (std::size_t c = col; c < cols; ++c) {
        std::swap(a(found, c), a(pivot_row, c));
      }
    }
    const Rational inv = Rational(1) / a(pivot_row, col);
    for (std::size_t c = col; c < cols; ++c) {
      a(pivot_row, c) *= inv;
    }
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == pivot_row || a(r, col).is_zero()) {
        continue;
      }
      const Rational factor = -a(r, col);
      for (std::size_t c = col; c < cols; ++c) {
        a(r, c).add_product(factor, a(pivot_row, c));
      }
    }
    out.pivot_columns.push_back(col);
    ++pivot_row;
  }
  out.reduced = std::move(a);
  return out;
}

std::size_t rank(const Matrix& a) { return row_reduce(a).rank(); }

std::optional<Vector> solve_linear(const Matrix& a, std::span<const Rational> b) {
  if (a.rows() != b.size()) {
    throw DimensionError("solve_linear: right-hand side length " + std::to_string(b.size()) +
                         " does not match " + std::to_string(a.rows()) + " rows");
  }
  Matrix aug(a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
      aug(r, c) = a(r, c);
    }
    aug(r, a.cols()) = b[r];
  }
  const EchelonForm ef = row_reduce(std::move(aug));
  if (!ef.pivot_columns.empty() && ef.pivot_columns.back() == a.cols()) {
    return std::nullopt;
  }
  Vector x(a.cols());
  for (std::size_t i = 0; i < ef.rank(); ++i) {
    x[ef.pivot_columns[i]] = ef.reduced(i, a.cols());
  }
  return x;
}

std::vector<Vector> nullspace(const Matrix& a) {
  const EchelonForm ef = row_reduce(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : ef.pivot_columns) {
    is_pivot[c] = true;
  }
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) {
      continue;
    }
    Vector v(a.cols());
    v[free] = 1;
    for (std::size_t i = 0; i < ef.rank(); ++i) {
      v[ef.pivot_columns[i]] = -ef.reduced(i, free);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

Matrix invert(const Matrix& a) {
  if (!a.is_square()) {
    throw DimensionError("invert: matrix is not square");
  }
  const std::size_t n = a.rows();
  Matrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      aug(r, c) = a(r, c);
    }
    aug(r, n + r) = 1;
  }
  const EchelonForm ef = row_reduce(std::move(aug));
  if (ef.rank() < n || ef.pivot_columns[n - 1] != n - 1) {
    throw SingularMatrixError("matrix is singular");
  }
  Matrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      inv(r, c) = ef.reduced(r, n + c);
    }
  }
  return inv;
}

Rational supertrace(const Matrix& a, std::span<const Parity> parities) {
  if (!a.is_square() || parities.size() != a.rows()) {
    throw DimensionError("supertrace: parity list does not match matrix size");
  }
  Rational acc;
  for (std::size_t j = 0; j < a.rows(); ++j) {
    if (parities[j].is_odd()) {
      acc -= a(j, j);
    } else {
      acc += a(j, j);
    }
  }
  return acc;
}

Subspace Subspace::span(std::size_t ambient, std::span<const Vector> vectors) {
  Subspace s(ambient);
  if (vectors.empty()) {
    return s;
  }
  const EchelonForm ef = row_reduce(Matrix::from_rows(ambient, vectors));
  for (std::size_t i = 0; i < ef.rank(); ++i) {
    const auto r = ef.reduced.row(i);
    s.basis_.emplace_back(r.begin(), r.end());
  }
  s.pivots_ = ef.pivot_columns;
  return s;
}

Subspace Subspace::whole(std::size_t ambient) {
  std::vector<Vector> vs;
  for (std::size_t i = 0; i < ambient; ++i) {
    vs.push_back(unit_vector(ambient, i));
  }
  return span(ambient, vs);
}

std::optional<Vector> Subspace::coordinates(std::span<const Rational> v) const {
  if (v.size() != ambient_) {
    throw DimensionError("subspace membership: vector length mismatch");
  }
  // In reduced echelon form the coordinate on basis row i is v[pivot_i].
  Vector coords(basis_.size());
  Vector residual(v.begin(), v.end());
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    coords[i] = v[pivots_[i]];
    axpy(residual, -coords[i], basis_[i]);
  }
  if (!superbracket::is_zero(std::span<const Rational>(residual))) {
    return std::nullopt;
  }
  return coords;
}

bool Subspace::contains(std::span<const Rational> v) const { return coordinates(v).has_value(); }

bool Subspace::contains(const Subspace& other) const {
  for (const auto& b : other.basis_) {
    if (!contains(b)) {
      return false;
    }
  }
  return true;
}

Subspace operator+(const Subspace& a, const Subspace& b) {
  if (a.ambient_ != b.ambient_) {
    throw DimensionError("subspace sum: ambient dimension mismatch");
  }
  std::vector<Vector> all = a.basis_;
  all.insert(all.end(), b.basis_.begin(), b.basis_.end());
  return Subspace::span(a.ambient_, all);
}

}  // namespace superbracket
