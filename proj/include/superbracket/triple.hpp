#pragma once

#include <optional>
#include <string>
#include <vector>

#include "superbracket/check_report.hpp"
#include "superbracket/graded.hpp"
#include "superbracket/lie_super.hpp"
#include "superbracket/matrix.hpp"

namespace superbracket {

/// One user-supplied triple product: [e_a, e_b, e_c] = result.
struct TripleEntry {
  std::size_t a;
  std::size_t b;
  std::size_t c;
  SparseVector result;

  friend bool operator==(const TripleEntry&, const TripleEntry&) = default;
};

/// delta Lie-super triple system given by constants T^m_{jkl} with
/// [e_j, e_k, e_l] = sum_m T^m_{jkl} e_m, delta = +1 or -1.
///
/// Construction completes the first pair: a supplied (j, k, l) whose
/// mirror (k, j, l) is absent gets T_{kjl} = -delta (-1)^{jk} T_{jkl}.
/// Both orders given are kept verbatim and left for check_triple_axioms.
class TripleSystem {
 public:
  TripleSystem() = default;
  /// Throws InputError on bad indices, a repeated triple, delta not +-1,
  /// or a form of the wrong size.
  TripleSystem(std::string name, GradedBasis basis, int delta, const std::vector<TripleEntry>& entries,
               std::optional<BilinearFormMatrix> form = std::nullopt);

  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] const GradedBasis& basis() const { return basis_; }
  [[nodiscard]] std::size_t dim() const { return basis_.size(); }
  [[nodiscard]] Parity parity(std::size_t i) const { return basis_.parity(i); }
  [[nodiscard]] int delta() const { return delta_; }
  [[nodiscard]] const std::optional<BilinearFormMatrix>& form() const { return form_; }
  /// Same constants, different (or no) form.
  [[nodiscard]] TripleSystem with_form(std::optional<BilinearFormMatrix> form) const;

  [[nodiscard]] const SparseVector& product(std::size_t j, std::size_t k, std::size_t l) const {
    const std::size_t n = dim();
    return table_[(j * n + k) * n + l];
  }
  /// Trilinear extension to arbitrary vectors.
  [[nodiscard]] Vector product(std::span<const Rational> x, std::span<const Rational> y,
                               std::span<const Rational> z) const;
  /// Nonzero triples of the completed table in lexicographic order.
  [[nodiscard]] std::vector<TripleEntry> entries() const;

  friend bool operator==(const TripleSystem&, const TripleSystem&) = default;

 private:
  std::string name_;
  GradedBasis basis_;
  int delta_ = 1;
  std::vector<SparseVector> table_;
  std::optional<BilinearFormMatrix> form_;
};

/// Largest dimension accepted by the O(N^5) derivation check. Defaults to
/// 12; the SUPERBRACKET_MAX_DIM environment variable overrides it.
[[nodiscard]] std::size_t quintuple_dimension_limit();

/// Checks on all basis tuples:
///   "grade"       T^m = 0 unless sigma_m = sigma_j + sigma_k + sigma_l
///   "skew"        [y,x,z] = -delta (-1)^{xy} [x,y,z]
///   "cyclic"      (-1)^{xz}[x,y,z] + (-1)^{yx}[y,z,x] + (-1)^{zy}[z,x,y] = 0
///   "derivation"  [u,v,[x,y,z]] = [[u,v,x],y,z] + (-1)^{(u+v)x}[x,[u,v,y],z]
///                                 + (-1)^{(u+v)(x+y)}[x,y,[u,v,z]]
/// Throws DimensionGuardError when dim exceeds quintuple_dimension_limit().
[[nodiscard]] CheckReport check_triple_axioms(const TripleSystem& t);

/// Quasi-classical form conditions "grade", "supersymmetry"
/// (<y|x> = delta (-1)^{xy} <x|y>), "invariance"
/// (<[x,y,u]|v> = -(-1)^{(x+y)u} <u|[x,y,v]>) and "nondegenerate".
/// Throws PreconditionError when the system carries no form.
[[nodiscard]] CheckReport check_form_conditions(const TripleSystem& t);

/// The three equivalent invariance conditions evaluated independently:
///   left      <[x,y,u]|v> = -(-1)^{(x+y)u} <u|[x,y,v]>
///   exchange  <[x,y,u]|v> = -(-1)^{(u+v)y} <x|[u,v,y]>
///   swap      <x|[y,u,v]> = (-1)^{xy+uv} <y|[x,v,u]>
/// together with their consequence
///   last_pair <[x,y,u]|v> = -delta (-1)^{uv} <[x,y,v]|u>.
struct FormEquivalenceReport {
  CheckReport left{"left"};
  CheckReport exchange{"exchange"};
  CheckReport swap{"swap"};
  CheckReport last_pair{"last_pair"};
  /// True iff left, exchange and swap share one verdict.
  [[nodiscard]] bool verdicts_agree() const {
    return left.passed() == exchange.passed() && exchange.passed() == swap.passed();
  }
};
/// Throws PreconditionError when the system carries no form.
[[nodiscard]] FormEquivalenceReport check_form_equivalences(const TripleSystem& t);

/// Matrix of a left or right multiplication operator with its parity.
struct MultOperator {
  enum class Side { left, right };
  Matrix matrix;
  Parity parity;
  Side side = Side::left;
};

/// L(x,y): z -> [x,y,z]. Throws PreconditionError on non-homogeneous input.
[[nodiscard]] MultOperator left_op(const TripleSystem& t, std::span<const Rational> x,
                                   std::span<const Rational> y);
/// R(x,y): z -> (-1)^{z(x+y)} [z,x,y]. Throws PreconditionError on
/// non-homogeneous input.
[[nodiscard]] MultOperator right_op(const TripleSystem& t, std::span<const Rational> x,
                                    std::span<const Rational> y);
[[nodiscard]] MultOperator left_op(const TripleSystem& t, std::size_t j, std::size_t k);
[[nodiscard]] MultOperator right_op(const TripleSystem& t, std::size_t j, std::size_t k);

/// [A, B] = AB - (-1)^{ab} BA for homogeneous operators.
[[nodiscard]] Matrix graded_commutator(const MultOperator& a, const MultOperator& b);

/// Operator identities on all basis generator pairs:
///   "left_skew"        L(y,x) = -delta (-1)^{xy} L(x,y)
///   "left_derivation"  [L(u,v),L(x,y)] = L([u,v,x],y) + (-1)^{(u+v)x} L(x,[u,v,y])
///   "right_derivation" [L(u,v),R(x,y)] = R([u,v,x],y) + (-1)^{(u+v)x} R(x,[u,v,y])
[[nodiscard]] CheckReport check_operator_identities(const TripleSystem& t);

struct TraceFormResult {
  /// <x|y>_1 = 1/2 str{R(x,y) + delta (-1)^{xy} R(y,x)}.
  BilinearFormMatrix form;
  bool nondegenerate = false;
  /// "left_supertrace": str L(e_j,e_k) = 0 for every pair.
  CheckReport left_supertrace{"left_supertrace"};
};
[[nodiscard]] TraceFormResult trace_form(const TripleSystem& t);

/// [x,y,z] = [[x,y],z] with the form inherited from g. Throws
/// PreconditionError unless (a, g) certifies as quasi-classical.
[[nodiscard]] TripleSystem triple_from_lie(const GradedAlgebra& a, const BilinearFormMatrix& g);

/// [x,y,z] = <y|z>x - delta (-1)^{xy} <x|z>y. Requires a non-degenerate,
/// grade-block form with <y|x> = delta (-1)^{xy} <x|y>.
[[nodiscard]] TripleSystem orthogonal_triple(const GradedBasis& basis, const BilinearFormMatrix& form,
                                             int delta);

/// [x,y,z] = <y|z>Px + <y|Pz>x - delta (-1)^{xy} (<x|z>Py + <x|Pz>y).
/// Requires the form conditions of orthogonal_triple, P grade preserving,
/// <x|Py> = <Px|y> and P^2 = c Id. When c is omitted it is read off P^2.
/// Also verifies [Px,Py,Pz] = cP[x,y,z] and throws VerificationError if not.
[[nodiscard]] TripleSystem projector_triple(const GradedBasis& basis, const BilinearFormMatrix& form,
                                            int delta, const Matrix& p,
                                            std::optional<Rational> c = std::nullopt);

/// Validates a form and projector for the product above and returns c.
/// Throws PreconditionError on any violated condition.
Rational check_projector_conditions(const GradedBasis& basis, const BilinearFormMatrix& form, int delta,
                                    const Matrix& p, std::optional<Rational> c = std::nullopt);

/// Residual check of [Px,Py,Pz] = cP[x,y,z] on all basis triples.
[[nodiscard]] CheckReport check_projector_homomorphism(const TripleSystem& t, const Matrix& p,
                                                       const Rational& c);

/// [B, V, V] contained in B.
[[nodiscard]] bool verify_triple_ideal(const TripleSystem& t, const Subspace& b);

/// span{[s, u, w]} for s in S, u in U, w in W.
[[nodiscard]] Subspace triple_span(const TripleSystem& t, const Subspace& s, const Subspace& u,
                                   const Subspace& w);

/// {x : <x|B> = 0}. Throws PreconditionError when the system carries no form.
[[nodiscard]] Subspace orthogonal_complement(const TripleSystem& t, const Subspace& b);

struct TripleDecompositionReport {
  bool ideals = true;
  bool nonabelian = true;
  bool orthogonal = true;
  bool cross_products_vanish = true;
  bool direct = true;
  bool spans_whole = true;
  std::vector<std::string> failures;
  [[nodiscard]] bool passed() const { return failures.empty(); }
};

/// Checks each part is an ideal with [B,B,V] != 0, parts are mutually
/// orthogonal, [B_j,B_k,V] = 0 for j != k, and V is their direct sum.
[[nodiscard]] TripleDecompositionReport verify_triple_decomposition(const TripleSystem& t,
                                                                    const std::vector<Subspace>& parts);

/// Block direct sum; products between summands vanish. Both systems must
/// share delta; forms are summed when both are present.
[[nodiscard]] TripleSystem direct_sum(const TripleSystem& a, const TripleSystem& b);

}  // namespace superbracket
