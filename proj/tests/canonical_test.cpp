#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "superbracket/canonical.hpp"
#include "superbracket/errors.hpp"

using namespace superbracket;

namespace {

GradedBasis mixed_basis(std::size_t even, std::size_t odd) {
  std::vector<std::string> names;
  std::vector<Parity> parities;
  for (std::size_t i = 0; i < even; ++i) {
    names.push_back("a" + std::to_string(i + 1));
    parities.push_back(Parity::even());
  }
  for (std::size_t i = 0; i < odd; ++i) {
    names.push_back("b" + std::to_string(i + 1));
    parities.push_back(Parity::odd());
  }
  return GradedBasis(names, parities);
}

Matrix block_diag(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c);
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) out(a.rows() + r, a.cols() + c) = b(r, c);
  return out;
}

TripleSystem lie_orthogonal(std::size_t even, std::size_t odd) {
  const GradedBasis basis = mixed_basis(even, odd);
  const Matrix gram = block_diag(Matrix::identity(even), odd ? standard_symplectic(odd) : Matrix(0, 0));
  return orthogonal_triple(basis, BilinearFormMatrix{gram, basis.parities()}, 1);
}

// Same system with the basis listed in the order given by perm.
TripleSystem permuted(const TripleSystem& t, const std::vector<std::size_t>& perm) {
  const std::size_t n = t.dim();
  std::vector<std::size_t> inv(n);
  std::vector<std::string> names;
  std::vector<Parity> parities;
  for (std::size_t i = 0; i < n; ++i) {
    inv[perm[i]] = i;
    names.push_back(t.basis().name(perm[i]));
    parities.push_back(t.parity(perm[i]));
  }
  std::vector<TripleEntry> entries;
  for (const auto& e : t.entries()) {
    SparseVector r;
    for (const auto& [m, c] : e.result) r.emplace_back(inv[m], c);
    std::sort(r.begin(), r.end());
    entries.push_back({inv[e.a], inv[e.b], inv[e.c], r});
  }
  Matrix gram(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) gram(j, k) = (*t.form())(perm[j], perm[k]);
  return TripleSystem(t.name(), GradedBasis(names, parities), t.delta(), entries,
                      BilinearFormMatrix{gram, parities});
}

void expect_quasi_classical_l0(const TripleSystem& t) {
  const CanonicalEmbedding e = build_l0(t);
  EXPECT_TRUE(e.well_defined.passed());
  EXPECT_TRUE(check_lie_super(e.l0).passed());
  const auto cert = certify_quasi_classical(e.l0, e.l0_form);
  EXPECT_TRUE(cert.certified) << cert.reason;
  EXPECT_TRUE(check_representation(e).passed());
  const std::size_t n = t.dim();
  for (std::size_t j = 0; j < e.l0.dim(); ++j) {
    for (std::size_t k = 0; k < e.l0.dim(); ++k) {
      if (j < n && k < n) {
        EXPECT_EQ(e.l0_form(j, k), (*t.form())(j, k));
      } else if (j < n || k < n) {
        EXPECT_TRUE(e.l0_form(j, k).is_zero());
      }
    }
  }
  if (!e.m.basis.empty()) {
    EXPECT_TRUE(e.m_form.is_nondegenerate());
    EXPECT_TRUE(certify_quasi_classical(e.m_algebra, e.m_form).certified);
  }
}

}  // namespace

TEST(BuildMTest, OrthogonalThreeSpaceIsSkewMatrices) {
  const MSpan m = build_m(lie_orthogonal(3, 0));
  ASSERT_EQ(m.basis.size(), 3u);
  for (const auto& op : m.basis) {
    EXPECT_EQ(op.matrix.transpose(), op.matrix * Rational(-1));
    EXPECT_EQ(op.parity, Parity::even());
  }
}

TEST(BuildMTest, ZeroSystem) {
  const TripleSystem t("zero", GradedBasis::even(3), 1, {});
  EXPECT_TRUE(build_m(t).basis.empty());
}

TEST(BuildMTest, LieTripleSpanIsAdjointImageOfDerivedAlgebra) {
  const auto ex = example_algebra(ExampleKind::ex1_1, 1, 0, 0);
  const TripleSystem t = triple_from_lie(ex.algebra, ex.form);
  // Oracle: L(x,y) = ad [x,y], so M = ad([L,L]); e is central so only
  // ad x1 and ad y1 survive.
  std::vector<Vector> ads;
  for (std::size_t j = 0; j < 4; ++j)
    for (std::size_t k = 0; k < 4; ++k) {
      Matrix ad(4, 4);
      for (const auto& [p, c] : ex.algebra.bracket(j, k)) {
        Matrix term = ad_matrix(ex.algebra, p);
        term *= c;
        ad += term;
      }
      ads.push_back(ad.flatten());
    }
  const std::size_t oracle = Subspace::span(16, ads).dim();
  EXPECT_EQ(oracle, 2u);
  EXPECT_EQ(build_m(t).basis.size(), oracle);
}

TEST(BuildMTest, DimensionIndependentOfBasisOrder) {
  const TripleSystem t = lie_orthogonal(2, 2);
  const std::size_t d = build_m(t).basis.size();
  EXPECT_EQ(build_m(permuted(t, {3, 1, 0, 2})).basis.size(), d);
  EXPECT_EQ(build_m(permuted(t, {2, 3, 1, 0})).basis.size(), d);
}

TEST(BuildMTest, RejectsAntiCase) {
  const GradedBasis basis = GradedBasis::even(2);
  const TripleSystem t = orthogonal_triple(basis, BilinearFormMatrix{standard_symplectic(2), basis.parities()}, -1);
  EXPECT_THROW((void)build_m(t), PreconditionError);
  EXPECT_THROW((void)build_l0(t), PreconditionError);
}

TEST(BuildL0Test, OrthogonalThreeSpace) {
  const TripleSystem t = lie_orthogonal(3, 0);
  const CanonicalEmbedding e = build_l0(t);
  EXPECT_EQ(e.l0.dim(), 6u);
  expect_quasi_classical_l0(t);
  EXPECT_TRUE(check_m_form_invariance(e).passed());
}

TEST(BuildL0Test, SuperOrthogonal) {
  for (auto [even, odd] : {std::pair<std::size_t, std::size_t>{1, 2}, {2, 2}, {3, 2}}) {
    SCOPED_TRACE(std::to_string(even) + "|" + std::to_string(odd));
    const TripleSystem t = lie_orthogonal(even, odd);
    expect_quasi_classical_l0(t);
    EXPECT_TRUE(check_m_form_invariance(build_l0(t)).passed());
  }
}

TEST(BuildL0Test, ZeroSystemGivesAbelianV) {
  const GradedBasis basis = GradedBasis::even(2);
  const TripleSystem t("zero", basis, 1, {}, BilinearFormMatrix{Matrix::identity(2), basis.parities()});
  const CanonicalEmbedding e = build_l0(t);
  EXPECT_EQ(e.l0.dim(), 2u);
  EXPECT_TRUE(e.l0.entries().empty());
  EXPECT_TRUE(certify_quasi_classical(e.l0, e.l0_form).certified);
  EXPECT_TRUE(check_m_form_invariance(e).passed());
}

TEST(BuildL0Test, LieTriplesLiftBack) {
  for (auto kind : {ExampleKind::ex1_1, ExampleKind::ex1_2, ExampleKind::ex1_3}) {
    const auto ex = example_algebra(kind, 2, 1, 1);
    SCOPED_TRACE(to_string(kind));
    const TripleSystem t = triple_from_lie(ex.algebra, ex.form);
    expect_quasi_classical_l0(t);
  }
  const auto ex = example_algebra(ExampleKind::ex1_1, 1, 0, 0);
  EXPECT_TRUE(check_m_form_invariance(build_l0(triple_from_lie(ex.algebra, ex.form))).passed());
}

TEST(BuildL0Test, ProjectorExample) {
  const GradedBasis basis = GradedBasis::even(4);
  const std::vector<Rational> p{1, -1, 1, -1};
  const TripleSystem t = projector_triple(basis, BilinearFormMatrix{Matrix::identity(4), basis.parities()}, 1,
                                          Matrix::diagonal(p), Rational(1));
  expect_quasi_classical_l0(t);
  EXPECT_TRUE(check_m_form_invariance(build_l0(t)).passed());
}

TEST(BuildL0Test, BrokenSourceIsReported) {
  // A source violating its axioms: either M fails to close or the
  // resulting L0 fails its checks.
  const GradedBasis basis = GradedBasis::even(2);
  const TripleSystem bad("bad", basis, 1, {{0, 1, 0, {{0, Rational(1)}}}, {0, 1, 1, {{0, Rational(1)}}}},
                         BilinearFormMatrix{Matrix::identity(2), basis.parities()});
  ASSERT_FALSE(check_triple_axioms(bad).passed());
  bool detected = false;
  try {
    const CanonicalEmbedding e = build_l0(bad);
    detected = !check_lie_super(e.l0).passed() || !certify_quasi_classical(e.l0, e.l0_form).certified;
  } catch (const VerificationError&) {
    detected = true;
  }
  EXPECT_TRUE(detected);
}

TEST(LiftIdealTest, WholeSpace) {
  const TripleSystem t = lie_orthogonal(3, 0);
  const CanonicalEmbedding e = build_l0(t);
  const LiftedIdeal lifted = lift_ideal(e, Subspace::whole(3));
  EXPECT_EQ(lifted.m_ideal, Subspace::whole(3));
  EXPECT_EQ(lifted.l0_ideal, Subspace::whole(6));
  EXPECT_TRUE(lifted.m_verified);
  EXPECT_TRUE(lifted.l0_verified);
  const std::vector<Vector> line{unit_vector(3, 0)};
  EXPECT_THROW((void)lift_ideal(e, Subspace::span(3, line)), PreconditionError);
}

TEST(LiftIdealTest, BlockOfDirectSum) {
  const TripleSystem one = lie_orthogonal(3, 0);
  const TripleSystem two = direct_sum(one, one);
  const CanonicalEmbedding e = build_l0(two);
  std::vector<Vector> first;
  for (std::size_t i = 0; i < 3; ++i) first.push_back(unit_vector(6, i));
  const LiftedIdeal lifted = lift_ideal(e, Subspace::span(6, first));
  EXPECT_TRUE(lifted.m_verified);
  EXPECT_TRUE(lifted.l0_verified);
  EXPECT_EQ(lifted.m_ideal.dim(), 3u);
  EXPECT_EQ(lifted.l0_ideal.dim(), 6u);
}

TEST(LiftIdealTest, PaddingIdeal) {
  const TripleSystem base = lie_orthogonal(3, 0);
  const TripleSystem pad("pad", GradedBasis({"p"}, {Parity::even()}), 1, {},
                         BilinearFormMatrix{Matrix::identity(1), {Parity::even()}});
  const TripleSystem padded = direct_sum(base, pad);
  const CanonicalEmbedding e = build_l0(padded);
  const std::vector<Vector> pline{unit_vector(4, 3)};
  const Subspace b = Subspace::span(4, pline);
  const LiftedIdeal lifted = lift_ideal(e, b);
  EXPECT_TRUE(lifted.m_verified);
  EXPECT_TRUE(lifted.l0_verified);
  EXPECT_TRUE(lifted.m_ideal.is_zero());
  EXPECT_EQ(lifted.l0_ideal.dim(), 1u);
  const auto r = verify_triple_decomposition(padded, {orthogonal_complement(padded, b), b});
  EXPECT_FALSE(r.passed());
}

// Property: random delta = 1 forms produce quasi-classical L0 and M.
TEST(CanonicalPropertyTest, RandomOrthogonalSources) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> dist(-2, 2);
  for (int trial = 0; trial < 8; ++trial) {
    const std::size_t even = 1 + trial % 3;
    const std::size_t odd = 2 * (trial % 2);
    const GradedBasis basis = mixed_basis(even, odd);
    Matrix gram(even + odd, even + odd);
    do {
      for (std::size_t r = 0; r < even; ++r)
        for (std::size_t c = r; c < even; ++c) gram(r, c) = gram(c, r) = Rational(dist(rng));
      for (std::size_t r = even; r < even + odd; ++r)
        for (std::size_t c = r + 1; c < even + odd; ++c) {
          gram(r, c) = Rational(dist(rng));
          gram(c, r) = -gram(r, c);
        }
    } while (rank(gram) < even + odd);
    SCOPED_TRACE(gram.to_string());
    const TripleSystem t = orthogonal_triple(basis, BilinearFormMatrix{gram, basis.parities()}, 1);
    expect_quasi_classical_l0(t);
    EXPECT_TRUE(check_m_form_invariance(build_l0(t)).passed());
  }
}
