#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <ostream>
#include <string>
#include <vector>

#include "superbracket/parity.hpp"
#include "superbracket/rational.hpp"

namespace superbracket {

using Vector = std::vector<Rational>;

/// Dense row-major matrix of exact rationals.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}
  /// Row-by-row literal; all rows must have equal length.
  Matrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const Rational> diag);
  /// Matrix whose columns are the given vectors (all of length rows).
  static Matrix from_columns(std::size_t rows, std::span<const Vector> columns);
  static Matrix from_rows(std::size_t cols, std::span<const Vector> rows);

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] bool is_square() const { return rows_ == cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  [[nodiscard]] std::span<const Rational> row(std::size_t r) const {
    return {entries_.data() + r * cols_, cols_};
  }
  [[nodiscard]] Vector column(std::size_t c) const;
  [[nodiscard]] const std::vector<Rational>& entries() const { return entries_; }
  /// Row-major flattening, used when matrices are treated as vectors.
  [[nodiscard]] Vector flatten() const { return entries_; }

  [[nodiscard]] bool is_zero() const;
  [[nodiscard]] Matrix transpose() const;

  Matrix& operator+=(const Matrix& rhs);
  Matrix& operator-=(const Matrix& rhs);
  Matrix& operator*=(const Rational& s);

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const Rational& s) { return a *= s; }
  friend Matrix operator*(const Rational& s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Vector operator*(const Matrix& a, std::span<const Rational> v);
  friend bool operator==(const Matrix&, const Matrix&) = default;

  [[nodiscard]] std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

inline std::ostream& operator<<(std::ostream& os, const Matrix& m) { return os << m.to_string(); }

// Vector helpers.
[[nodiscard]] bool is_zero(std::span<const Rational> v);
[[nodiscard]] Vector unit_vector(std::size_t n, std::size_t i);
void axpy(Vector& y, const Rational& a, std::span<const Rational> x);
[[nodiscard]] Rational dot(std::span<const Rational> a, std::span<const Rational> b);

/// Reduced row echelon form with first-nonzero pivoting in column order.
struct EchelonForm {
  Matrix reduced;
  std::vector<std::size_t> pivot_columns;
  [[nodiscard]] std::size_t rank() const { return pivot_columns.size(); }
};

[[nodiscard]] EchelonForm row_reduce(Matrix a);
[[nodiscard]] std::size_t rank(const Matrix& a);

/// One exact solution of a x = b (free variables set to zero), or nullopt
/// when the system is inconsistent. Throws DimensionError when b does not
/// match a.rows().
[[nodiscard]] std::optional<Vector> solve_linear(const Matrix& a, std::span<const Rational> b);

/// Basis of {x : a x = 0}, one vector per free column with a 1 in that column
/// and the pivot entries read off the reduced form.
[[nodiscard]] std::vector<Vector> nullspace(const Matrix& a);

/// Exact inverse. Throws SingularMatrixError.
[[nodiscard]] Matrix invert(const Matrix& a);

/// sum_j (-1)^parities[j] a(j, j).
[[nodiscard]] Rational supertrace(const Matrix& a, std::span<const Parity> parities);

/// Finite-dimensional subspace of Q^n held as the nonzero rows of a reduced
/// row echelon matrix. Two subspaces are equal iff their canonical bases are.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient) : ambient_(ambient) {}
  static Subspace span(std::size_t ambient, std::span<const Vector> vectors);
  static Subspace whole(std::size_t ambient);

  [[nodiscard]] std::size_t ambient() const { return ambient_; }
  [[nodiscard]] std::size_t dim() const { return basis_.size(); }
  [[nodiscard]] bool is_zero() const { return basis_.empty(); }
  [[nodiscard]] const std::vector<Vector>& basis() const { return basis_; }
  [[nodiscard]] const std::vector<std::size_t>& pivots() const { return pivots_; }

  [[nodiscard]] bool contains(std::span<const Rational> v) const;
  [[nodiscard]] bool contains(const Subspace& other) const;
  /// Coordinates of v in the canonical basis; nullopt when v is outside.
  [[nodiscard]] std::optional<Vector> coordinates(std::span<const Rational> v) const;

  friend Subspace operator+(const Subspace& a, const Subspace& b);
  friend bool operator==(const Subspace&, const Subspace&) = default;

 private:
  std::size_t ambient_ = 0;
  std::vector<Vector> basis_;
  std::vector<std::size_t> pivots_;
};

}  // namespace superbracket
