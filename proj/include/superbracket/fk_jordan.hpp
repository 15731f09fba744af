#pragma once

#include <optional>
#include <string>
#include <vector>

#include "superbracket/canonical.hpp"
#include "superbracket/check_report.hpp"
#include "superbracket/lie_super.hpp"
#include "superbracket/triple.hpp"

namespace superbracket {

enum class FkKind { generalized_fk, jordan };

[[nodiscard]] FkKind parse_fk_kind(const std::string& text);
[[nodiscard]] std::string to_string(FkKind kind);

/// Triple product xyz with no symmetry imposed on any pair of arguments.
/// Entries are stored verbatim; absent triples are zero.
class GeneralTripleSystem {
 public:
  GeneralTripleSystem() = default;
  /// Throws InputError on bad signs, out-of-range indices, repeated triples
  /// or mismatched form / operator sizes.
  GeneralTripleSystem(std::string name, GradedBasis basis, FkKind kind, int epsilon, int delta,
                      const std::vector<TripleEntry>& entries,
                      std::optional<BilinearFormMatrix> form = std::nullopt,
                      std::optional<Matrix> p_operator = std::nullopt,
                      std::optional<Rational> c = std::nullopt);

  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] const GradedBasis& basis() const { return basis_; }
  [[nodiscard]] std::size_t dim() const { return basis_.size(); }
  [[nodiscard]] Parity parity(std::size_t i) const { return basis_.parity(i); }
  [[nodiscard]] FkKind kind() const { return kind_; }
  [[nodiscard]] int epsilon() const { return epsilon_; }
  [[nodiscard]] int delta() const { return delta_; }
  [[nodiscard]] const std::optional<BilinearFormMatrix>& form() const { return form_; }
  [[nodiscard]] const std::optional<Matrix>& p_operator() const { return p_; }
  [[nodiscard]] const std::optional<Rational>& c() const { return c_; }

  [[nodiscard]] const SparseVector& product(std::size_t j, std::size_t k, std::size_t l) const {
    return table_[(j * dim() + k) * dim() + l];
  }
  [[nodiscard]] Vector product(std::span<const Rational> x, std::span<const Rational> y,
                               std::span<const Rational> z) const;
  /// Nonzero triples in lexicographic order.
  [[nodiscard]] std::vector<TripleEntry> entries() const;

  [[nodiscard]] GeneralTripleSystem with_form(std::optional<BilinearFormMatrix> form) const;

  friend bool operator==(const GeneralTripleSystem&, const GeneralTripleSystem&) = default;

 private:
  std::string name_;
  GradedBasis basis_;
  FkKind kind_ = FkKind::generalized_fk;
  int epsilon_ = -1;
  int delta_ = 1;
  std::vector<SparseVector> table_;
  std::optional<BilinearFormMatrix> form_;
  std::optional<Matrix> p_;
  std::optional<Rational> c_;
};

/// The triple product xyz = [x,y,z] of a triple system, with epsilon = -1.
[[nodiscard]] GeneralTripleSystem from_triple_system(const TripleSystem& t);

/// "grade" and, on all basis quintuples, "generalized_fk":
///   uv(xyz) = (uvx)yz + eps (-1)^{(u+v)x+uv} x(vuy)z + (-1)^{(u+v)(x+y)} xy(uvz)
/// with the stored epsilon. Throws DimensionGuardError above the quintuple limit.
[[nodiscard]] CheckReport check_generalized_fk(const GeneralTripleSystem& g);

/// "grade", "outer_symmetry" xyz = delta (-1)^{xy+yz+zx} zyx, and
/// "generalized_fk" evaluated with eps = -delta whatever is stored.
[[nodiscard]] CheckReport check_jordan(const GeneralTripleSystem& g);

/// K(x,y)z = (-1)^{yz} xzy - delta (-1)^{x(y+z)} yzx.
/// Throws PreconditionError on non-homogeneous input.
[[nodiscard]] MultOperator k_operator(const GeneralTripleSystem& g, std::span<const Rational> x,
                                      std::span<const Rational> y);
[[nodiscard]] MultOperator k_operator(const GeneralTripleSystem& g, std::size_t j, std::size_t k);

/// "fk_condition" on all basis quadruples:
///   K(xyz,w) + (-1)^{z(x+y)} K(z,xyw) + delta (-1)^{y(z+w)} K(x, K(z,w)y) = 0
/// with vector arguments of K expanded over the basis.
[[nodiscard]] CheckReport check_fk_condition(const GeneralTripleSystem& g);

/// Form conditions of a quasi-classical Jordan system:
///   "grade"         form and product respect the grading
///   "supersymmetry" <y|x> = delta (-1)^{xy} <x|y>
///   "invariance"    <xyu|v> = <x|yuv>
///   "pair_exchange" <xyu|v> = (-1)^{(x+y)(u+v)} <uvx|y>
///   "nondegenerate"
/// Throws PreconditionError when no form is attached.
[[nodiscard]] CheckReport check_jordan_quasi_classical(const GeneralTripleSystem& g);

/// Lie superalgebra on M = span{L(x,y)}, L(x,y)z = xyz, with
///   [L(u,v), L(x,y)] = L(uvx,y) - delta (-1)^{(u+v)x+uv} L(x,vuy)
///   <L(x,y)|L(u,v)> = <xyu|v>.
struct JordanLieAlgebra {
  MSpan m;
  /// Basis M1..Mk; default-constructed when M = 0.
  GradedAlgebra algebra;
  BilinearFormMatrix form;
  /// Bracket formula above against the graded matrix commutator, on all
  /// generator pairs.
  CheckReport bracket_formula{"bracket_formula"};
  /// Form value independent of the generator decomposition.
  CheckReport well_defined{"well_defined"};
  bool nondegenerate = true;
  /// Kernel of the induced form in M coordinates; empty when nondegenerate.
  std::vector<Vector> kernel;
  QuasiClassicalCertificate certificate;
};

/// Expects a Jordan system with a quasi-classical form. Throws
/// PreconditionError without a form and VerificationError when a commutator
/// leaves M. A degenerate induced form is reported, not thrown.
[[nodiscard]] JordanLieAlgebra jordan_lie_algebra(const GeneralTripleSystem& g);

/// [x,y,z] = xyz - delta (-1)^{xy} yxz, carrying the same form.
[[nodiscard]] TripleSystem jordan_to_lie_triple(const GeneralTripleSystem& g);

/// xyz = <x|y>Pz + <x|Py>z + <y|Pz>x + <y|z>Px, a Jordan system with
/// eps = -delta. Form and P as for projector_triple.
[[nodiscard]] GeneralTripleSystem projector_jordan(const GradedBasis& basis, const BilinearFormMatrix& form,
                                                   int delta, const Matrix& p,
                                                   std::optional<Rational> c = std::nullopt);

/// xyz = c1 [x,[y,z]] + c2 [[x,y],z]. Requires L_5 = 0 (PreconditionError
/// otherwise). The optional form is attached unchanged.
[[nodiscard]] GeneralTripleSystem nilpotent_fk(const GradedAlgebra& a, const Rational& c1, const Rational& c2,
                                               int epsilon, int delta,
                                               std::optional<BilinearFormMatrix> form = std::nullopt,
                                               FkKind kind = FkKind::generalized_fk);

/// xyz = <y|Pz> x. Requires <x|y> = -eps (-1)^{xy} <y|x>, a grade-preserving
/// P with <Px|y> = <x|Py> (PreconditionError otherwise).
[[nodiscard]] GeneralTripleSystem rank_one_fk(const GradedBasis& basis, const BilinearFormMatrix& form,
                                              int epsilon, int delta, const Matrix& p);

}  // namespace superbracket
