#pragma once

#include <optional>
#include <string>
#include <vector>

#include "superbracket/check_report.hpp"
#include "superbracket/fk_jordan.hpp"
#include "superbracket/lie_super.hpp"
#include "superbracket/poly.hpp"
#include "superbracket/triple.hpp"

namespace superbracket {

/// Dense constants T^m_{jkl} of an arbitrary trilinear product on an
/// N-dimensional space, index ((j*N + k)*N + l)*N + m.
class TripleConstants {
 public:
  TripleConstants() = default;
  explicit TripleConstants(std::size_t n) : n_(n), values_(n * n * n * n) {}

  [[nodiscard]] std::size_t dim() const { return n_; }
  Rational& at(std::size_t j, std::size_t k, std::size_t l, std::size_t m) {
    return values_[((j * n_ + k) * n_ + l) * n_ + m];
  }
  [[nodiscard]] const Rational& at(std::size_t j, std::size_t k, std::size_t l, std::size_t m) const {
    return values_[((j * n_ + k) * n_ + l) * n_ + m];
  }
  /// e_j e_k e_l as a coefficient span of length N.
  [[nodiscard]] std::span<const Rational> product(std::size_t j, std::size_t k, std::size_t l) const {
    return {values_.data() + ((j * n_ + k) * n_ + l) * n_, n_};
  }
  /// Trilinear extension to arbitrary vectors.
  [[nodiscard]] Vector product(std::span<const Rational> x, std::span<const Rational> y,
                               std::span<const Rational> z) const;
  [[nodiscard]] bool is_zero() const;

  TripleConstants& operator+=(const TripleConstants& rhs);
  TripleConstants& operator*=(const Rational& s);

  friend bool operator==(const TripleConstants&, const TripleConstants&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Rational> values_;
};

[[nodiscard]] TripleConstants constants_of(const TripleSystem& t);
[[nodiscard]] TripleConstants constants_of(const GeneralTripleSystem& g);
/// <x|y> z.
[[nodiscard]] TripleConstants form_product(const BilinearFormMatrix& form);
/// [[x,y],z] and [x,[y,z]].
[[nodiscard]] TripleConstants outer_bracket_product(const GradedAlgebra& a);
[[nodiscard]] TripleConstants inner_bracket_product(const GradedAlgebra& a);

struct ThetaComponent {
  TripleConstants constants;
  PolyTheta coefficient;
  std::string label;
};

/// [x,y,z]_theta = sum_i p_i(theta) T_i(x,y,z) on an even space with a
/// symmetric nondegenerate form. The dual symmetry of each component is not
/// enforced here; check_dual_symmetry reports it and build_r requires it.
class ThetaTripleFamily {
 public:
  ThetaTripleFamily() = default;
  /// Throws PreconditionError for odd basis elements, a non-symmetric or
  /// degenerate form, or components of the wrong dimension.
  ThetaTripleFamily(std::string name, GradedBasis basis, BilinearFormMatrix form,
                    std::vector<ThetaComponent> components);

  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] const GradedBasis& basis() const { return basis_; }
  [[nodiscard]] std::size_t dim() const { return basis_.size(); }
  [[nodiscard]] const BilinearFormMatrix& form() const { return form_; }
  [[nodiscard]] const std::vector<ThetaComponent>& components() const { return components_; }
  /// Largest coefficient degree; 0 when every coefficient is constant or zero.
  [[nodiscard]] std::size_t degree() const;
  [[nodiscard]] TripleConstants evaluate(const Rational& theta) const;

 private:
  std::string name_;
  GradedBasis basis_;
  BilinearFormMatrix form_;
  std::vector<ThetaComponent> components_;
};

/// e^j = sum_k matrix(j, k) e_k with <e^j|e_k> = delta_jk.
struct DualBasis {
  Matrix matrix;
};

/// Inverse Gram matrix. Throws PreconditionError for a non-symmetric form
/// and SingularMatrixError for a degenerate one.
[[nodiscard]] DualBasis dual_basis(const BilinearFormMatrix& form);

/// "dual_symmetry" <y|[x,v,u]> = <x|[y,u,v]> for every component on all
/// basis quadruples; violation indices are {component, x, y, u, v}.
[[nodiscard]] CheckReport check_dual_symmetry(const ThetaTripleFamily& f);

/// "triple_commutation" [u,v,[x,y,z]_i]_k = [x,y,[u,v,z]_k]_i for every
/// ordered component pair (i, k) on all basis quintuples; indices are
/// {i, k, u, v, x, y, z}. Sufficient for the two-parameter identity, and
/// equivalent to it when the coefficients are linearly independent.
/// Throws DimensionGuardError above the quintuple limit.
[[nodiscard]] CheckReport check_triple_commutation(const ThetaTripleFamily& f);

/// N^2 x N^2 polynomial matrix acting on V (x) V; row and column (a, b)
/// have index a*N + b.
class RMatrix {
 public:
  RMatrix() = default;
  explicit RMatrix(std::size_t n) : n_(n), entries_(n * n * n * n) {}

  [[nodiscard]] std::size_t dimension() const { return n_; }
  [[nodiscard]] std::size_t size() const { return n_ * n_; }
  PolyTheta& operator()(std::size_t row, std::size_t col) { return entries_[row * size() + col]; }
  [[nodiscard]] const PolyTheta& operator()(std::size_t row, std::size_t col) const {
    return entries_[row * size() + col];
  }
  /// Largest entry degree; 0 for constant or zero matrices.
  [[nodiscard]] std::size_t degree() const;
  [[nodiscard]] Matrix evaluate(const Rational& theta) const;

  friend bool operator==(const RMatrix&, const RMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<PolyTheta> entries_;
};

/// R(x (x) y) = sum_j e_j (x) [e^j, x, y]_theta. Also evaluates the
/// swapped expression sum_j [e^j, y, x]_theta (x) e_j and requires equality.
/// Throws PreconditionError when check_dual_symmetry fails and
/// VerificationError when the two expressions differ.
[[nodiscard]] RMatrix build_r(const ThetaTripleFamily& f);
/// The swapped expression alone, without any check.
[[nodiscard]] RMatrix build_r_swapped(const ThetaTripleFamily& f);

/// Outcome of a polynomial identity certified on a grid of exact points.
struct GridVerdict {
  std::string check;
  bool passed = true;
  std::size_t points_checked = 0;
  /// Points per variable run over 0..grid_max.
  std::size_t grid_max = 0;
  struct Failure {
    std::vector<Rational> point;
    std::size_t row = 0;
    std::size_t col = 0;
    std::string detail;
  };
  std::optional<Failure> failure;
};

/// R12(t) R13(t + t'') R23(t'') = R23(t'') R13(t + t'') R12(t) on the grid
/// (t, t'') in {0..3D}^2, D = degree of R unless overridden.
[[nodiscard]] GridVerdict check_ybe(const RMatrix& r, std::optional<std::size_t> degree = std::nullopt);
/// [R_ij(t), R_kl(t')] = 0 for every pair of slots, t and t' independent on
/// {0..3D}^2.
[[nodiscard]] GridVerdict check_commutation(const RMatrix& r, std::optional<std::size_t> degree = std::nullopt);
/// [R12(t),R13(t')] + [R12(t),R23(t'')] + [R13(t'),R23(t'')] = 0 with three
/// independent parameters on {0..D}^3 (each entry has degree <= D in each
/// parameter).
[[nodiscard]] GridVerdict check_classical_ybe(const RMatrix& r,
                                              std::optional<std::size_t> degree = std::nullopt);

/// Single-point evaluations, used for spot checks off the grid.
[[nodiscard]] bool ybe_holds_at(const RMatrix& r, const Rational& t, const Rational& t2);
[[nodiscard]] bool commutation_holds_at(const RMatrix& r, const Rational& t, const Rational& t1);
[[nodiscard]] bool classical_ybe_holds_at(const RMatrix& r, const Rational& t, const Rational& t1,
                                          const Rational& t2);

struct TripleFormVerdict {
  GridVerdict verdict;
  bool lhs_identically_zero = true;
  bool rhs_identically_zero = true;
};

/// The Yang-Baxter relation written with triple products,
///   sum_j [v, [u,e_j,z]_t', [e^j,x,y]_t]_t'' = sum_j [u, [v,e_j,x]_t', [e^j,z,y]_t'']_t,
/// with t' = t + t'' on the grid {0..3D}^2, over all basis quintuples.
[[nodiscard]] TripleFormVerdict check_ybe_triple_form(const ThetaTripleFamily& f,
                                                      std::optional<std::size_t> degree = std::nullopt);

/// f(t)[x,y,z] + g(t)<x|y>z for a quasi-classical delta = 1 triple system on
/// an even space with [u,v,[x,y,z]] = [x,y,[u,v,z]]. Throws PreconditionError
/// naming the violated identity.
[[nodiscard]] ThetaTripleFamily lie_triple_family(const TripleSystem& t, const PolyTheta& f, const PolyTheta& g);
/// Same family with every precondition except the commutation property, so
/// a failing system can be taken through the grid checks.
[[nodiscard]] ThetaTripleFamily lie_triple_family_candidate(const TripleSystem& t, const PolyTheta& f,
                                                            const PolyTheta& g);

/// f1(t)[[x,y],z] + f2(t)[x,[y,z]] + g(t)<x|y>z on an even quasi-classical
/// Lie algebra with L_5 = 0.
[[nodiscard]] ThetaTripleFamily nilpotent_family(const GradedAlgebra& a, const BilinearFormMatrix& form,
                                                 const PolyTheta& f1, const PolyTheta& f2, const PolyTheta& g);

/// f1(t)[x,[y,z]] + f2(t)[[x,y],z] on an even quasi-classical Lie algebra
/// with L_7 = 0. Solves the triple-product relation, not necessarily the
/// commutation property.
[[nodiscard]] ThetaTripleFamily deep_nilpotent_family(const GradedAlgebra& a, const BilinearFormMatrix& form,
                                                      const PolyTheta& f1, const PolyTheta& f2);

/// g(t)<x|y>z, giving R = g(t) Id.
[[nodiscard]] ThetaTripleFamily scalar_family(const GradedBasis& basis, const BilinearFormMatrix& form,
                                              const PolyTheta& g);

/// R(t) = sum f_{mu nu}(t) J_mu (x) J_nu for pairwise commuting J.
/// Throws PreconditionError for mismatched shapes or non-commuting J.
[[nodiscard]] RMatrix commuting_r_matrix(const std::vector<Matrix>& j,
                                         const std::vector<std::vector<PolyTheta>>& f);

}  // namespace superbracket
