#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "superbracket/matrix.hpp"
#include "superbracket/parity.hpp"

namespace superbracket {

/// Ordered basis e_1..e_N of a Z2-graded space with a parity per element.
class GradedBasis {
 public:
  GradedBasis() = default;
  /// Throws InputError on empty input, duplicate names, or length mismatch.
  GradedBasis(std::vector<std::string> names, std::vector<Parity> parities);

  /// All-even basis named e1..eN.
  static GradedBasis even(std::size_t n, const std::string& prefix = "e");

  [[nodiscard]] std::size_t size() const { return names_.size(); }
  [[nodiscard]] const std::string& name(std::size_t i) const { return names_.at(i); }
  [[nodiscard]] Parity parity(std::size_t i) const { return parities_[i]; }
  [[nodiscard]] const std::vector<std::string>& names() const { return names_; }
  [[nodiscard]] const std::vector<Parity>& parities() const { return parities_; }
  [[nodiscard]] std::optional<std::size_t> index_of(const std::string& name) const;
  [[nodiscard]] bool all_even() const;
  /// dim V_0 - dim V_1.
  [[nodiscard]] long superdimension() const;

  /// Concatenation; clashing names from the second summand get primes appended.
  [[nodiscard]] GradedBasis direct_sum(const GradedBasis& other) const;

  friend bool operator==(const GradedBasis&, const GradedBasis&) = default;

 private:
  std::vector<std::string> names_;
  std::vector<Parity> parities_;
};

/// Sparse vector: (index, nonzero coefficient) pairs sorted by index.
using SparseVector = std::vector<std::pair<std::size_t, Rational>>;

[[nodiscard]] SparseVector to_sparse(std::span<const Rational> dense);
[[nodiscard]] Vector to_dense(const SparseVector& sparse, std::size_t n);
/// acc += scale * v.
void accumulate(Vector& acc, const Rational& scale, const SparseVector& v);

/// Parity of a vector in the given basis: nullopt for the zero vector
/// (homogeneous of every parity), throws PreconditionError when the vector
/// mixes grades.
[[nodiscard]] std::optional<Parity> homogeneous_parity(const GradedBasis& basis,
                                                       std::span<const Rational> v);

/// Gram matrix of a bilinear form on a graded basis, entry (j, k) = <e_j|e_k>.
///
/// No symmetry is imposed at construction: Lie superalgebras need
/// <y|x> = (-1)^{xy}<x|y> while delta triple systems need the delta-twisted
/// variant, so each consumer checks the variant it needs.
struct BilinearFormMatrix {
  Matrix gram;
  std::vector<Parity> parities;

  [[nodiscard]] std::size_t size() const { return parities.size(); }
  [[nodiscard]] const Rational& operator()(std::size_t j, std::size_t k) const { return gram(j, k); }
  [[nodiscard]] Rational evaluate(std::span<const Rational> x, std::span<const Rational> y) const;

  /// gram(j,k) = 0 whenever parities differ.
  [[nodiscard]] bool is_grade_block() const;
  /// gram(k,j) = delta (-1)^{sigma_j sigma_k} gram(j,k).
  [[nodiscard]] bool is_supersymmetric(int delta = 1) const;
  [[nodiscard]] bool is_nondegenerate() const;
  [[nodiscard]] std::size_t rank() const;

  friend bool operator==(const BilinearFormMatrix&, const BilinearFormMatrix&) = default;
};

/// Orthogonal direct sum of two forms.
[[nodiscard]] BilinearFormMatrix direct_sum(const BilinearFormMatrix& a, const BilinearFormMatrix& b);

}  // namespace superbracket
