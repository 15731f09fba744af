#include <gtest/gtest.h>

#include <random>

#include "superbracket/errors.hpp"
#include "superbracket/yang_baxter.hpp"

using namespace superbracket;

namespace {

BilinearFormMatrix identity_form(std::size_t n) {
  return {Matrix::identity(n), std::vector<Parity>(n, Parity::even())};
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return out;
}

// Permutation e_a (x) e_b (x) e_c -> e_a (x) e_c (x) e_b.
Matrix swap23(std::size_t n) {
  Matrix p(n * n * n, n * n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) p((a * n + c) * n + b, (a * n + b) * n + c) = Rational(1);
  return p;
}

struct Embedded {
  Matrix r12, r13, r23;
};

// Dense embeddings R12 = R (x) I, R23 = I (x) R, R13 = S R12 S.
Embedded embed(const RMatrix& r, const Rational& t) {
  const std::size_t n = r.dimension();
  const Matrix m = r.evaluate(t);
  const Matrix s = swap23(n);
  Embedded e{kron(m, Matrix::identity(n)), Matrix(), kron(Matrix::identity(n), m)};
  e.r13 = s * e.r12 * s;
  return e;
}

bool dense_ybe(const RMatrix& r, const Rational& t, const Rational& t2) {
  const auto a = embed(r, t), b = embed(r, t + t2), c = embed(r, t2);
  return a.r12 * b.r13 * c.r23 == c.r23 * b.r13 * a.r12;
}

bool dense_classical(const RMatrix& r, const Rational& t, const Rational& t1, const Rational& t2) {
  const auto a = embed(r, t), b = embed(r, t1), c = embed(r, t2);
  auto br = [](const Matrix& x, const Matrix& y) { return x * y - y * x; };
  return (br(a.r12, b.r13) + br(a.r12, c.r23) + br(b.r13, c.r23)).is_zero();
}

bool dense_commutation(const RMatrix& r, const Rational& t, const Rational& t1) {
  const auto a = embed(r, t), b = embed(r, t1);
  for (const Matrix* x : {&a.r12, &a.r13, &a.r23})
    for (const Matrix* y : {&b.r12, &b.r13, &b.r23})
      if (*x * *y != *y * *x) return false;
  return true;
}

// Random rationals kept away from the integer grid.
std::vector<Rational> off_grid_points(std::mt19937& rng, std::size_t count) {
  std::uniform_int_distribution<int> num(-40, 40);
  std::vector<Rational> out;
  while (out.size() < count) {
    const Rational v(num(rng), 7);
    if (v.is_integer()) continue;
    out.push_back(v);
  }
  return out;
}

const PolyTheta kF{Rational(1), Rational(2), Rational(1)};
const PolyTheta kG{Rational(0), Rational(-1), Rational(3)};

ThetaTripleFamily ex11_family(std::size_t n, const Rational& lambda = Rational(0)) {
  const auto ex = example_algebra(ExampleKind::ex1_1, n, 0, lambda);
  return lie_triple_family(triple_from_lie(ex.algebra, ex.form), kF, kG);
}

// Lie triple of the simple 3-dimensional algebra, assembled without the
// commutation precondition.
ThetaTripleFamily simple_family() {
  const auto s = simple3();
  const auto t = triple_from_lie(s.algebra, s.form);
  return ThetaTripleFamily("simple", t.basis(), *t.form(),
                           {{constants_of(t), kF, "triple"}, {form_product(*t.form()), kG, "form"}});
}

}  // namespace

TEST(DualBasisTest, InverseGram) {
  EXPECT_EQ(dual_basis(identity_form(3)).matrix, Matrix::identity(3));
  const auto ex0 = example_algebra(ExampleKind::ex1_1, 1, 0, Rational(0));
  const Matrix d0 = dual_basis(ex0.form).matrix;
  EXPECT_EQ(d0 * ex0.form.gram, Matrix::identity(4));
  // (e, f) block [[0,1],[1,0]], (x1, y1) block [[0,-1],[-1,0]].
  EXPECT_EQ(d0, (Matrix{{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, -1, 0}}));
  const auto ex3 = example_algebra(ExampleKind::ex1_1, 1, 0, Rational(3));
  const Matrix d3 = dual_basis(ex3.form).matrix;
  EXPECT_EQ(d3(0, 0), Rational(3));
  EXPECT_EQ(d3(0, 1), Rational(1));
  EXPECT_EQ(d3(1, 0), Rational(1));
  EXPECT_EQ(d3(1, 1), Rational(0));
  BilinearFormMatrix singular = identity_form(2);
  singular.gram(1, 1) = Rational(0);
  EXPECT_THROW((void)dual_basis(singular), SingularMatrixError);
  BilinearFormMatrix skew = identity_form(2);
  skew.gram(0, 1) = Rational(1);
  EXPECT_THROW((void)dual_basis(skew), PreconditionError);
}

TEST(ThetaFamilyTest, ConstructionPreconditions) {
  const GradedBasis odd({"a", "b"}, {Parity::odd(), Parity::odd()});
  EXPECT_THROW(ThetaTripleFamily("f", odd, BilinearFormMatrix{Matrix::identity(2), odd.parities()}, {}),
               PreconditionError);
  BilinearFormMatrix skew = identity_form(2);
  skew.gram(0, 1) = Rational(1);
  EXPECT_THROW(ThetaTripleFamily("f", GradedBasis::even(2), skew, {}), PreconditionError);
  EXPECT_THROW(ThetaTripleFamily("f", GradedBasis::even(2), identity_form(2), {{TripleConstants(3), kF, "c"}}),
               PreconditionError);
  const auto fam = scalar_family(GradedBasis::even(2), identity_form(2), kG);
  EXPECT_EQ(fam.degree(), 2u);
  EXPECT_EQ(fam.evaluate(Rational(1)).at(0, 0, 1, 1), Rational(2));
}

TEST(DualSymmetryTest, CatalogFamiliesPass) {
  EXPECT_TRUE(check_dual_symmetry(ex11_family(1)).passed());
  EXPECT_TRUE(check_dual_symmetry(scalar_family(GradedBasis::even(3), identity_form(3), kG)).passed());
}

TEST(DualSymmetryTest, PerturbedComponentReported) {
  TripleConstants c = form_product(identity_form(2));
  c.at(0, 1, 0, 1) += Rational(1);
  const ThetaTripleFamily fam("perturbed", GradedBasis::even(2), identity_form(2), {{c, kG, "perturbed"}});
  const auto report = check_dual_symmetry(fam);
  EXPECT_FALSE(report.passed());
  EXPECT_EQ(report.violations().front().indices.front(), 0u);
  EXPECT_THROW((void)build_r(fam), PreconditionError);
}

TEST(BuildRTest, ScalarFamilyIsScaledIdentity) {
  const auto r = build_r(scalar_family(GradedBasis::even(3), identity_form(3), kG));
  for (std::size_t row = 0; row < 9; ++row)
    for (std::size_t col = 0; col < 9; ++col) EXPECT_EQ(r(row, col), row == col ? kG : PolyTheta());
  // Non-identity symmetric form: the dual contraction still collapses to g Id.
  const auto ex = example_algebra(ExampleKind::ex1_1, 1, 0, Rational(2));
  const auto r2 = build_r(scalar_family(ex.algebra.basis(), ex.form, kG));
  for (std::size_t row = 0; row < 16; ++row)
    for (std::size_t col = 0; col < 16; ++col) EXPECT_EQ(r2(row, col), row == col ? kG : PolyTheta());
}

TEST(BuildRTest, ZeroFamilyGivesZeroMatrix) {
  const ThetaTripleFamily fam("zero", GradedBasis::even(2), identity_form(2), {});
  const auto r = build_r(fam);
  EXPECT_EQ(r, RMatrix(2));
  EXPECT_EQ(r.degree(), 0u);
  EXPECT_TRUE(check_ybe(r).passed);
}

TEST(BuildRTest, HandContractedEntry) {
  // Basis e, f, x1, y1 with lambda = 0; dual of e is f. With f(t) = t and
  // g = 1, the e (x) x1 coefficient of R(x1 (x) f) is [[f,x1],f] = -x1 -> -t,
  // and g <e^{x1}|x1> f puts g on the diagonal entry (x1 f, x1 f).
  const auto ex = example_algebra(ExampleKind::ex1_1, 1, 0, Rational(0));
  const auto& b = ex.algebra.basis();
  const std::size_t e = *b.index_of("e"), f = *b.index_of("f"), x1 = *b.index_of("x1");
  const auto fam = lie_triple_family(triple_from_lie(ex.algebra, ex.form), PolyTheta{Rational(0), Rational(1)},
                                     PolyTheta{Rational(1)});
  const auto r = build_r(fam);
  EXPECT_EQ(r.dimension(), 4u);
  EXPECT_EQ(r.size(), 16u);
  EXPECT_EQ(r(e * 4 + x1, x1 * 4 + f), (PolyTheta{Rational(0), Rational(-1)}));
  EXPECT_EQ(r(x1 * 4 + f, x1 * 4 + f), PolyTheta{Rational(1)});
}

TEST(BuildRTest, BothExpressionsAgree) {
  for (const auto& fam : {ex11_family(1), ex11_family(2, Rational(-2)), simple_family()}) {
    EXPECT_EQ(build_r(fam), build_r_swapped(fam)) << fam.name();
  }
  const auto ex = example_algebra(ExampleKind::ex1_3, 1, 1, Rational(0));
  const auto nil = nilpotent_family(ex.algebra, ex.form, kF, kG, PolyTheta{Rational(2), Rational(1)});
  EXPECT_EQ(build_r(nil), build_r_swapped(nil));
}

TEST(YbeTest, LieTripleFamiliesAreCertified) {
  for (std::size_t n : {1u, 2u}) {
    const auto fam = ex11_family(n);
    EXPECT_TRUE(check_triple_commutation(fam).passed());
    const auto r = build_r(fam);
    EXPECT_EQ(r.size(), (2 + 2 * n) * (2 + 2 * n));
    const auto ybe = check_ybe(r);
    EXPECT_TRUE(ybe.passed) << n;
    EXPECT_EQ(ybe.grid_max, 6u);
    EXPECT_EQ(ybe.points_checked, 49u);
    const auto comm = check_commutation(r);
    EXPECT_TRUE(comm.passed);
    EXPECT_EQ(comm.points_checked, 49u);
    EXPECT_TRUE(check_classical_ybe(r).passed);
  }
}

TEST(YbeTest, SimpleAlgebraCounterexampleFails) {
  const auto fam = simple_family();
  const auto tc = check_triple_commutation(fam);
  EXPECT_FALSE(tc.passed());
  const auto r = build_r(fam);
  const auto comm = check_commutation(r);
  EXPECT_FALSE(comm.passed);
  ASSERT_TRUE(comm.failure.has_value());
  const auto ybe = check_ybe(r);
  EXPECT_FALSE(ybe.passed);
  ASSERT_TRUE(ybe.failure.has_value());
  EXPECT_EQ(ybe.failure->point.size(), 3u);
  EXPECT_FALSE(dense_ybe(r, ybe.failure->point[0], ybe.failure->point[2]));
  EXPECT_FALSE(check_ybe_triple_form(fam).verdict.passed);
  // The builder refuses the same data.
  const auto s = simple3();
  EXPECT_THROW((void)lie_triple_family(triple_from_lie(s.algebra, s.form), kF, kG), PreconditionError);
}

TEST(YbeTest, SingleBracketCommutation) {
  // [[x,y],z] on the first catalog algebra commutes with itself.
  const auto ex = example_algebra(ExampleKind::ex1_1, 2, 0, Rational(1));
  const ThetaTripleFamily fam("bracket", ex.algebra.basis(), ex.form,
                              {{outer_bracket_product(ex.algebra), PolyTheta{Rational(1)}, "outer"}});
  EXPECT_TRUE(check_triple_commutation(fam).passed());
  // A single basis counterexample on the simple algebra.
  const auto s = simple3();
  const ThetaTripleFamily bad("bracket", s.algebra.basis(), s.form,
                              {{outer_bracket_product(s.algebra), PolyTheta{Rational(1)}, "outer"}});
  EXPECT_FALSE(check_triple_commutation(bad).passed());
}

TEST(YbeTest, NilpotentFamilyIsCertified) {
  const auto ex = example_algebra(ExampleKind::ex1_3, 1, 1, Rational(0));
  const auto fam = nilpotent_family(ex.algebra, ex.form, kF, kG, PolyTheta{Rational(2), Rational(1)});
  EXPECT_TRUE(check_triple_commutation(fam).passed());
  const auto r = build_r(fam);
  EXPECT_TRUE(check_commutation(r).passed);
  EXPECT_TRUE(check_ybe(r).passed);
  EXPECT_TRUE(check_classical_ybe(r).passed);
  const auto tf = check_ybe_triple_form(fam);
  EXPECT_TRUE(tf.verdict.passed);
  EXPECT_THROW((void)nilpotent_family(simple3().algebra, simple3().form, kF, kF, kG), PreconditionError);
}

TEST(YbeTest, DeepNilpotentFamilyBothSidesVanish) {
  const auto ex = example_algebra(ExampleKind::ex1_3, 1, 1, Rational(0));
  const auto fam = deep_nilpotent_family(ex.algebra, ex.form, kF, kG);
  const auto tf = check_ybe_triple_form(fam);
  EXPECT_TRUE(tf.verdict.passed);
  EXPECT_TRUE(tf.lhs_identically_zero);
  EXPECT_TRUE(tf.rhs_identically_zero);
  EXPECT_EQ(tf.verdict.points_checked, 49u);
  EXPECT_TRUE(check_ybe(build_r(fam)).passed);
  const auto ex1 = example_algebra(ExampleKind::ex1_1, 1, 0, Rational(0));
  EXPECT_THROW((void)deep_nilpotent_family(ex1.algebra, ex1.form, kF, kG), PreconditionError);
}

TEST(YbeTest, ScalarFamilyPassesEverything) {
  const auto r = build_r(scalar_family(GradedBasis::even(2), identity_form(2), kG));
  EXPECT_TRUE(check_ybe(r).passed);
  EXPECT_TRUE(check_commutation(r).passed);
  EXPECT_TRUE(check_classical_ybe(r).passed);
}

TEST(CommutingRTest, DiagonalOperators) {
  const std::vector<Matrix> j{Matrix{{1, 0}, {0, 2}}, Matrix{{0, 0}, {0, 1}}};
  const std::vector<std::vector<PolyTheta>> f{{PolyTheta{Rational(1), Rational(1)}, PolyTheta{Rational(0), Rational(2)}},
                                               {PolyTheta{Rational(-1), Rational(3)}, PolyTheta{Rational(5)}}};
  const auto r = commuting_r_matrix(j, f);
  EXPECT_EQ(r.degree(), 1u);
  EXPECT_TRUE(check_commutation(r).passed);
  EXPECT_TRUE(check_ybe(r).passed);
  EXPECT_TRUE(check_classical_ybe(r).passed);
  // Entry ((1,1),(1,1)) = sum f_{mu nu} J_mu(1,1) J_nu(1,1).
  const PolyTheta expected = f[0][0] * Rational(4) + f[0][1] * Rational(2) + f[1][0] * Rational(2) + f[1][1];
  EXPECT_EQ(r(3, 3), expected);
}

TEST(CommutingRTest, Preconditions) {
  const Matrix a{{0, 1}, {0, 0}}, b{{0, 0}, {1, 0}};
  const PolyTheta one{Rational(1)};
  EXPECT_THROW((void)commuting_r_matrix({a, b}, {{one, one}, {one, one}}), PreconditionError);
  EXPECT_THROW((void)commuting_r_matrix({a}, {{one, one}}), PreconditionError);
  EXPECT_THROW((void)commuting_r_matrix({}, {}), PreconditionError);
  EXPECT_THROW((void)commuting_r_matrix({a, Matrix::identity(3)}, {{one, one}, {one, one}}), PreconditionError);
}

TEST(ClassicalYbeTest, NonCommutingOperatorFails) {
  // R = theta E12 (x) E21: no pair of embeddings commutes.
  RMatrix r(2);
  r(0 * 2 + 1, 1 * 2 + 0) = PolyTheta{Rational(0), Rational(1)};
  EXPECT_FALSE(dense_classical(r, Rational(1), Rational(2), Rational(3)));
  const auto v = check_classical_ybe(r);
  EXPECT_FALSE(v.passed);
  ASSERT_TRUE(v.failure.has_value());
  EXPECT_EQ(v.failure->point.size(), 3u);
  EXPECT_FALSE(dense_classical(r, v.failure->point[0], v.failure->point[1], v.failure->point[2]));
  EXPECT_FALSE(check_commutation(r).passed);
}

TEST(GridSoundnessTest, OffGridPointsAgreeWithDenseOracle) {
  std::mt19937 rng(99);
  const auto ex3 = example_algebra(ExampleKind::ex1_3, 1, 1, Rational(0));
  std::vector<RMatrix> certified{
      build_r(ex11_family(1)),
      build_r(nilpotent_family(ex3.algebra, ex3.form, kF, kG, PolyTheta{Rational(2), Rational(1)})),
      build_r(scalar_family(GradedBasis::even(2), identity_form(2), kG)),
      commuting_r_matrix({Matrix{{1, 0}, {0, 2}}, Matrix{{0, 0}, {0, 1}}},
                         {{PolyTheta{Rational(0), Rational(1)}, kF}, {kG, PolyTheta{Rational(1)}}})};
  for (const auto& r : certified) {
    ASSERT_TRUE(check_ybe(r).passed);
    const auto points = off_grid_points(rng, 15);
    for (std::size_t i = 0; i < 5; ++i) {
      const Rational t = points[3 * i], t1 = points[3 * i + 1], t2 = points[3 * i + 2];
      EXPECT_TRUE(ybe_holds_at(r, t, t2));
      EXPECT_TRUE(commutation_holds_at(r, t, t1));
      EXPECT_TRUE(classical_ybe_holds_at(r, t, t1, t2));
      if (r.dimension() <= 4) {
        EXPECT_TRUE(dense_ybe(r, t, t2));
        EXPECT_TRUE(dense_commutation(r, t, t1));
        EXPECT_TRUE(dense_classical(r, t, t1, t2));
      }
    }
  }
  const auto bad = build_r(simple_family());
  const auto points = off_grid_points(rng, 3);
  EXPECT_EQ(ybe_holds_at(bad, points[0], points[2]), dense_ybe(bad, points[0], points[2]));
  EXPECT_EQ(commutation_holds_at(bad, points[0], points[1]), dense_commutation(bad, points[0], points[1]));
}

TEST(GridSoundnessTest, FormRescalingKeepsVerdicts) {
  const auto ex = example_algebra(ExampleKind::ex1_1, 1, 0, Rational(1));
  const auto t = triple_from_lie(ex.algebra, ex.form);
  const auto ex3 = example_algebra(ExampleKind::ex1_3, 1, 1, Rational(0));
  for (const Rational c : {Rational(2), Rational(-1, 3)}) {
    BilinearFormMatrix scaled = ex.form;
    scaled.gram *= c;
    const auto base = build_r(lie_triple_family(t, kF, kG));
    const auto rescaled = build_r(lie_triple_family(t.with_form(scaled), kF, kG));
    EXPECT_NE(base, rescaled);
    EXPECT_EQ(check_ybe(base).passed, check_ybe(rescaled).passed);
    BilinearFormMatrix scaled3 = ex3.form;
    scaled3.gram *= c;
    const auto n1 = build_r(nilpotent_family(ex3.algebra, ex3.form, kF, kG, kF));
    const auto n2 = build_r(nilpotent_family(ex3.algebra, scaled3, kF, kG, kF));
    EXPECT_NE(n1, n2);
    EXPECT_EQ(check_ybe(n1).passed, check_ybe(n2).passed);
  }
}

TEST(GridSoundnessTest, CommutationFollowsFromTripleCommutation) {
  const auto ex3 = example_algebra(ExampleKind::ex1_3, 1, 1, Rational(0));
  const std::vector<ThetaTripleFamily> catalog{ex11_family(1), ex11_family(2, Rational(1)),
                                               nilpotent_family(ex3.algebra, ex3.form, kF, kG, kF),
                                               scalar_family(GradedBasis::even(3), identity_form(3), kF),
                                               simple_family()};
  for (const auto& fam : catalog) {
    const bool triple = check_triple_commutation(fam).passed();
    const bool matrix = check_commutation(build_r(fam)).passed;
    EXPECT_EQ(triple, matrix) << fam.name();
  }
}

TEST(GridSoundnessTest, TripleFormAgreesWithMatrixForm) {
  const auto ex3 = example_algebra(ExampleKind::ex1_3, 1, 1, Rational(0));
  const std::vector<ThetaTripleFamily> catalog{ex11_family(1), nilpotent_family(ex3.algebra, ex3.form, kF, kG, kF),
                                               deep_nilpotent_family(ex3.algebra, ex3.form, kF, kG),
                                               scalar_family(GradedBasis::even(3), identity_form(3), kF),
                                               simple_family()};
  for (const auto& fam : catalog) {
    EXPECT_EQ(check_ybe_triple_form(fam).verdict.passed, check_ybe(build_r(fam)).passed) << fam.name();
  }
}

TEST(GridSoundnessTest, DegreeOverrideWidensGrid) {
  const auto r = build_r(scalar_family(GradedBasis::even(2), identity_form(2), kG));
  const auto v = check_ybe(r, 3);
  EXPECT_EQ(v.grid_max, 9u);
  EXPECT_EQ(v.points_checked, 100u);
  EXPECT_EQ(check_classical_ybe(r).grid_max, 2u);
}
