#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "superbracket/check_report.hpp"
#include "superbracket/graded.hpp"
#include "superbracket/matrix.hpp"

namespace superbracket {

/// One user-supplied structure constant row: [e_left, e_right] = result.
struct BracketEntry {
  std::size_t left;
  std::size_t right;
  SparseVector result;

  friend bool operator==(const BracketEntry&, const BracketEntry&) = default;
};

/// Finite-dimensional Z2-graded algebra given by structure constants
/// [e_j, e_k] = sum_l C^l_{jk} e_l.
///
/// Construction completes the table: for every supplied (j, k) whose mirror
/// (k, j) is absent, C^l_{kj} = -(-1)^{sigma_j sigma_k} C^l_{jk} is filled in.
/// Entries supplied for both orders are kept verbatim so inconsistent tables
/// can be loaded and diagnosed by check_lie_super rather than rejected.
class GradedAlgebra {
 public:
  GradedAlgebra() = default;
  /// Throws InputError on out-of-range indices or a pair given twice.
  GradedAlgebra(std::string name, GradedBasis basis, const std::vector<BracketEntry>& entries);

  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] const GradedBasis& basis() const { return basis_; }
  [[nodiscard]] std::size_t dim() const { return basis_.size(); }
  [[nodiscard]] Parity parity(std::size_t i) const { return basis_.parity(i); }

  /// [e_j, e_k] as a sparse vector.
  [[nodiscard]] const SparseVector& bracket(std::size_t j, std::size_t k) const {
    return table_[j * dim() + k];
  }
  /// Bilinear extension to arbitrary vectors.
  [[nodiscard]] Vector bracket(std::span<const Rational> a, std::span<const Rational> b) const;
  /// Nonzero (j, k) pairs of the completed table in row-major order.
  [[nodiscard]] std::vector<BracketEntry> entries() const;

  friend bool operator==(const GradedAlgebra&, const GradedAlgebra&) = default;

 private:
  std::string name_;
  GradedBasis basis_;
  std::vector<SparseVector> table_;
};

/// Casimir coefficients g^{jk} of I_2 = sum g^{jk} e_j e_k.
struct CasimirCoefficients {
  Matrix g_upper;
};

/// Grade compatibility, super-antisymmetry and the graded Jacobi identity
///   (-1)^{xy}[[x,z],y] + (-1)^{yz}[[y,x],z] + (-1)^{zx}[[z,y],x] = 0
/// on every basis pair / triple. Conditions in the report are named
/// "grade", "antisymmetry", "jacobi".
[[nodiscard]] CheckReport check_lie_super(const GradedAlgebra& a);

/// Matrix of ad e_j: entry (l, k) = C^l_{jk}.
[[nodiscard]] Matrix ad_matrix(const GradedAlgebra& a, std::size_t j);

/// gram(j, k) = str(ad e_j ad e_k).
[[nodiscard]] BilinearFormMatrix killing_form(const GradedAlgebra& a);

/// Checks "grade" (<x|y> = 0 unless parities agree), "supersymmetry"
/// (<y|x> = (-1)^{xy}<x|y>) and "invariance" <[e_j,e_k]|e_l> = <e_j|[e_k,e_l]>.
[[nodiscard]] CheckReport check_invariant_form(const GradedAlgebra& a, const BilinearFormMatrix& g);

/// Basis of every Gram matrix satisfying the three form conditions above,
/// degenerate ones included.
/// Deterministic: reduced-echelon nullspace of the linear system in the
/// independent entries g_{jk}, j <= k, equal parity.
[[nodiscard]] std::vector<BilinearFormMatrix> invariant_form_space(const GradedAlgebra& a);

/// Checks sum_m g^{jm} C^k_{ml} = sum_m C^j_{lm} g^{mk} for all (j, k, l).
[[nodiscard]] CheckReport check_casimir_identity(const GradedAlgebra& a, const CasimirCoefficients& c);

/// Result of a quasi-classical certification attempt.
struct QuasiClassicalCertificate {
  bool certified = false;
  /// Present exactly when certified.
  std::optional<CasimirCoefficients> casimir;
  CheckReport form_conditions{"form"};
  CheckReport casimir_identity{"casimir"};
  bool singular = false;
  std::string reason;
};

/// Checks the form conditions, inverts the Gram matrix, and verifies the inverse
/// satisfies the Casimir identity. Refusals (invariance violation, singular
/// Gram) are reported in the certificate, never thrown.
[[nodiscard]] QuasiClassicalCertificate certify_quasi_classical(const GradedAlgebra& a,
                                                               const BilinearFormMatrix& g);

/// [S, T] = span{[s, t]} for subspaces of the algebra.
[[nodiscard]] Subspace bracket_span(const GradedAlgebra& a, const Subspace& s, const Subspace& t);

/// L_1 = L, L_{k+1} = [L, L_k], computed until it reaches zero or stops
/// shrinking. The last element is the stable subspace.
[[nodiscard]] std::vector<Subspace> lower_central_series(const GradedAlgebra& a);
[[nodiscard]] std::vector<std::size_t> lower_central_dimensions(const GradedAlgebra& a);

struct NilpotencyResult {
  bool nilpotent = false;
  /// n with L_{n+1} = 0 and L_n != 0; zero when not nilpotent.
  std::size_t length = 0;
};
[[nodiscard]] NilpotencyResult is_nilpotent(const GradedAlgebra& a);

/// True iff L_k = 0 (the k-th lower central term vanishes).
[[nodiscard]] bool lower_central_vanishes_at(const GradedAlgebra& a, std::size_t k);

/// Literal evaluation of [L, [[L,L],[L,L]]] = 0.
[[nodiscard]] bool derived_test(const GradedAlgebra& a);

/// [B, L] contained in B.
[[nodiscard]] bool verify_ideal(const GradedAlgebra& a, const Subspace& b);

struct DecompositionReport {
  bool ideals = true;
  bool orthogonal = true;
  bool direct = true;
  bool spans_whole = true;
  bool nonabelian = true;
  std::vector<std::string> failures;
  [[nodiscard]] bool passed() const { return failures.empty(); }
};

/// Checks each part is an ideal with [B, B] != 0, parts are pairwise
/// orthogonal under g, and the sum is direct and equals the whole algebra.
[[nodiscard]] DecompositionReport verify_orthogonal_decomposition(const GradedAlgebra& a,
                                                                  const BilinearFormMatrix& g,
                                                                  const std::vector<Subspace>& parts);

/// True iff the space of invariant forms is one-dimensional. Tests the
/// conclusion of the uniqueness theorem for adjoint-irreducible algebras
/// without deciding irreducibility.
[[nodiscard]] bool uniqueness_up_to_scale(const GradedAlgebra& a);

/// The four catalog algebras with their stated invariant forms.
enum class ExampleKind { ex1_1, ex1_2, ex1_3, ex1_4 };

[[nodiscard]] ExampleKind parse_example_kind(const std::string& text);
[[nodiscard]] std::string to_string(ExampleKind kind);

/// Block-diagonal sum of [[0,1],[-1,0]]; size must be even.
[[nodiscard]] Matrix standard_symplectic(std::size_t size);

struct AlgebraWithForm {
  GradedAlgebra algebra;
  BilinearFormMatrix form;
};

/// Builds a catalog algebra.
///
/// - ex1_1: even basis e, f, x_j, y_j with [x_j,f] = x_j, [y_j,f] = -y_j,
///   [x_j,y_k] = delta_jk e. Form <e|f> = 1, <f|f> = -lambda, <x_j|y_k> = -delta_jk.
/// - ex1_2: e, f even; x_j, y_j odd; [x_j,y_k] = [y_k,x_j] = eps_jk e.
///   Requires n even and eps (n x n) antisymmetric invertible.
/// - ex1_3: even basis x_j, u_j, y_A, v_A, Y_jA (dimension 2n + 2m + nm),
///   u and v central; nilpotent of length 3.
/// - ex1_4: x_j, u_j even; y_A, v_A, Y_jA odd; eps is m x m.
///
/// When `epsilon` is omitted the standard symplectic matrix of the needed
/// size is used. lambda is ignored for ex1_3/ex1_4, m for ex1_1/ex1_2.
/// Throws PreconditionError on invalid parameters.
[[nodiscard]] AlgebraWithForm example_algebra(ExampleKind kind, std::size_t n, std::size_t m,
                                              const Rational& lambda,
                                              const std::optional<Matrix>& epsilon = std::nullopt);

/// Three-dimensional even algebra [e1,e2] = e3, [e2,e3] = e1, [e3,e1] = e2
/// with its Killing form.
[[nodiscard]] AlgebraWithForm simple3();

/// Algebra with all brackets zero.
[[nodiscard]] GradedAlgebra abelian(const GradedBasis& basis);

/// Direct sum of two algebras; brackets between summands vanish.
[[nodiscard]] GradedAlgebra direct_sum(const GradedAlgebra& a, const GradedAlgebra& b);

}  // namespace superbracket
