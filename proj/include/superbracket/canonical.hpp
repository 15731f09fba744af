#pragma once

#include <vector>

#include "superbracket/check_report.hpp"
#include "superbracket/lie_super.hpp"
#include "superbracket/triple.hpp"

namespace superbracket {

/// M = span{L(e_j, e_k)}, with operators flattened row-major to N^2-vectors.
struct MSpan {
  /// Reduced echelon basis of M as operators. Each element is homogeneous.
  std::vector<MultOperator> basis;
  /// coords[j * N + k] = coordinates of L(e_j, e_k) in `basis`.
  std::vector<Vector> coords;
  /// The span itself inside the N^2-dimensional operator space.
  Subspace span;
};

/// Echelon span of arbitrary grade-respecting operators; coords follow the
/// order of `generators`.
[[nodiscard]] MSpan span_of_operators(const GradedBasis& basis, const std::vector<Matrix>& generators);

/// Echelon basis of the span of left multiplications. Requires delta = +1.
[[nodiscard]] MSpan build_m(const TripleSystem& t);

/// L0 = V + M with
///   [x, y] = L(x, y),  [Y, z] = Yz,  [z, Y] = -(-1)^{Yz} Yz,
///   [Y, Y'] = graded commutator,
/// and the form <x|y> on V, <L(x,y)|L(u,v)> = <[x,y,u]|v> on M, <V|M> = 0.
struct CanonicalEmbedding {
  TripleSystem source;
  MSpan m;
  /// V basis first, then M basis elements named M1, M2, ...
  GradedAlgebra l0;
  BilinearFormMatrix l0_form;
  /// M on its own, with the M-M block of the form.
  GradedAlgebra m_algebra;
  BilinearFormMatrix m_form;
  /// Agreement of the M-M form computed from several generator decompositions.
  CheckReport well_defined{"well_defined"};
};

/// Builds the canonical embedding. Throws PreconditionError for delta = -1
/// or a missing form, and VerificationError when a commutator of M leaves M
/// (the source violates its axioms).
[[nodiscard]] CanonicalEmbedding build_l0(const TripleSystem& t);

/// On all generator sextuples:
///   "invariance" <[L(x,y),L(z,w)]|L(u,v)> = <L(x,y)|[L(z,w),L(u,v)]>
///   "expansion"  <[L(x,y),L(z,w)]|L(u,v)> = -(-1)^{(u+v)w} <[x,y,z]|[u,v,w]>
///                                          + (-1)^{z(u+v+w)} <[x,y,w]|[u,v,z]>
[[nodiscard]] CheckReport check_m_form_invariance(const CanonicalEmbedding& e);

/// [[x,y],z] computed in L0 equals [x,y,z] of the source on all basis triples.
[[nodiscard]] CheckReport check_representation(const CanonicalEmbedding& e);

struct LiftedIdeal {
  /// L(B, V) inside M (ambient dim M).
  Subspace m_ideal;
  /// B + L(B, V) inside L0.
  Subspace l0_ideal;
  bool m_verified = false;
  bool l0_verified = false;
};

/// Throws PreconditionError unless B is an ideal of the source.
[[nodiscard]] LiftedIdeal lift_ideal(const CanonicalEmbedding& e, const Subspace& b);

}  // namespace superbracket
