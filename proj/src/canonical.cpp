#include "superbracket/canonical.hpp"

#include <string>

#include "superbracket/errors.hpp"

namespace superbracket {

namespace {

Vector flatten_op(const Matrix& m) { return m.flatten(); }

Matrix unflatten(std::span<const Rational> v, std::size_t n) {
  Matrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      m(r, c) = v[r * n + c];
    }
  }
  return m;
}

// Parity of a nonzero operator whose entries respect the grading.
Parity operator_parity(const Matrix& m, const GradedBasis& basis) {
  std::optional<Parity> p;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (m(r, c).is_zero()) continue;
      const Parity here = basis.parity(r) + basis.parity(c);
      if (p && *p != here) {
        throw VerificationError("element of M is not homogeneous; the source violates the grading");
      }
      p = here;
    }
  }
  return p.value_or(Parity::even());
}

int sign_bits(int exponent) { return exponent % 2 == 0 ? 1 : -1; }

}  // namespace

MSpan span_of_operators(const GradedBasis& basis, const std::vector<Matrix>& generators) {
  const std::size_t n = basis.size();
  std::vector<Vector> flat;
  flat.reserve(generators.size());
  for (const auto& g : generators) {
    flat.push_back(flatten_op(g));
  }
  MSpan out;
  out.span = Subspace::span(n * n, flat);
  for (const auto& row : out.span.basis()) {
    Matrix m = unflatten(row, n);
    const Parity p = operator_parity(m, basis);
    out.basis.push_back({std::move(m), p, MultOperator::Side::left});
  }
  for (const auto& g : flat) {
    out.coords.push_back(*out.span.coordinates(g));
  }
  return out;
}

MSpan build_m(const TripleSystem& t) {
  if (t.delta() != 1) {
    throw PreconditionError("the canonical construction requires delta = +1");
  }
  const std::size_t n = t.dim();
  std::vector<Matrix> generators;
  generators.reserve(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      generators.push_back(left_op(t, j, k).matrix);
    }
  }
  return span_of_operators(t.basis(), generators);
}

CanonicalEmbedding build_l0(const TripleSystem& t) {
  if (t.delta() != 1) {
    throw PreconditionError("the canonical construction does not apply to delta = -1 systems");
  }
  if (!t.form()) {
    throw PreconditionError("the canonical construction needs a bilinear form on the source");
  }
  const BilinearFormMatrix& g = *t.form();
  const std::size_t n = t.dim();
  MSpan m = build_m(t);
  const std::size_t nm = m.basis.size();

  std::vector<std::string> m_names;
  std::vector<Parity> m_parities;
  for (std::size_t i = 0; i < nm; ++i) {
    m_names.push_back("M" + std::to_string(i + 1));
    m_parities.push_back(m.basis[i].parity);
  }

  // [M_i, M_k] as coordinates in the M basis.
  std::vector<Vector> m_brackets(nm * nm);
  for (std::size_t i = 0; i < nm; ++i) {
    for (std::size_t k = 0; k < nm; ++k) {
      const auto c = m.span.coordinates(flatten_op(graded_commutator(m.basis[i], m.basis[k])));
      if (!c) {
        throw VerificationError("[M" + std::to_string(i + 1) + ", M" + std::to_string(k + 1) +
                                "] leaves M; the source violates the derivation identity");
      }
      m_brackets[i * nm + k] = *c;
    }
  }

  // Decompositions of each M basis element into generators L(e_u, e_v).
  std::vector<Vector> generator_columns;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      generator_columns.push_back(flatten_op(left_op(t, j, k).matrix));
    }
  }
  const Matrix gen = Matrix::from_columns(n * n, generator_columns);
  const auto kernel = nullspace(gen);
  std::vector<Vector> decomposition, alternative;
  for (std::size_t i = 0; i < nm; ++i) {
    const auto c = solve_linear(gen, flatten_op(m.basis[i].matrix));
    decomposition.push_back(*c);
    Vector alt = *c;
    for (const auto& z : kernel) {
      axpy(alt, Rational(1), z);
    }
    alternative.push_back(std::move(alt));
  }

  // <Y|L(u,v)> = <Yu|v>.
  auto pair_with_generator = [&](const Matrix& y, std::size_t u, std::size_t v) {
    Rational s;
    for (std::size_t r = 0; r < n; ++r) {
      if (!y(r, u).is_zero()) s.add_product(y(r, u), g(r, v));
    }
    return s;
  };
  auto right_decomposed = [&](const Matrix& y, const Vector& c) {
    Rational s;
    for (std::size_t p = 0; p < n * n; ++p) {
      if (!c[p].is_zero()) s += c[p] * pair_with_generator(y, p / n, p % n);
    }
    return s;
  };
  // <L(x,y)|Y> = -(-1)^{Y y} <x|Yy>.
  auto left_decomposed = [&](const Vector& c, const MultOperator& y) {
    Rational s;
    for (std::size_t p = 0; p < n * n; ++p) {
      if (c[p].is_zero()) continue;
      const std::size_t a = p / n, b = p % n;
      Rational inner;
      for (std::size_t r = 0; r < n; ++r) {
        if (!y.matrix(r, b).is_zero()) inner.add_product(g(a, r), y.matrix(r, b));
      }
      s -= c[p] * Rational(graded_sign(y.parity, t.parity(b))) * inner;
    }
    return s;
  };

  CanonicalEmbedding e;
  e.source = t;
  Matrix m_gram(nm, nm);
  for (std::size_t i = 0; i < nm; ++i) {
    for (std::size_t k = 0; k < nm; ++k) {
      e.well_defined.count_instance();
      const Rational primary = right_decomposed(m.basis[i].matrix, decomposition[k]);
      const Rational from_left = left_decomposed(decomposition[i], m.basis[k]);
      const Rational from_alt = right_decomposed(m.basis[i].matrix, alternative[k]);
      Rational from_both;
      for (std::size_t p = 0; p < n * n; ++p) {
        if (decomposition[i][p].is_zero()) continue;
        for (std::size_t q = 0; q < n * n; ++q) {
          if (decomposition[k][q].is_zero()) continue;
          // <[x,y,u]|v>
          Rational xyu_v;
          for (const auto& [r, c] : t.product(p / n, p % n, q / n)) {
            xyu_v.add_product(c, g(r, q % n));
          }
          from_both += decomposition[i][p] * decomposition[k][q] * xyu_v;
        }
      }
      if (primary != from_left || primary != from_alt || primary != from_both) {
        e.well_defined.add({"well_defined", {i, k},
                            "<M" + std::to_string(i + 1) + "|M" + std::to_string(k + 1) + "> = " +
                                primary.to_string() + " / " + from_left.to_string() + " / " +
                                from_alt.to_string() + " / " + from_both.to_string()});
      }
      m_gram(i, k) = primary;
    }
  }

  std::vector<BracketEntry> entries;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      SparseVector r;
      const Vector& c = m.coords[j * n + k];
      for (std::size_t i = 0; i < nm; ++i) {
        if (!c[i].is_zero()) r.emplace_back(n + i, c[i]);
      }
      entries.push_back({j, k, std::move(r)});
    }
  }
  for (std::size_t i = 0; i < nm; ++i) {
    for (std::size_t l = 0; l < n; ++l) {
      const Vector col = m.basis[i].matrix.column(l);
      const Rational s(-graded_sign(m.basis[i].parity, t.parity(l)));
      SparseVector fwd, back;
      for (std::size_t r = 0; r < n; ++r) {
        if (col[r].is_zero()) continue;
        fwd.emplace_back(r, col[r]);
        back.emplace_back(r, s * col[r]);
      }
      entries.push_back({n + i, l, std::move(fwd)});
      entries.push_back({l, n + i, std::move(back)});
    }
    for (std::size_t k = 0; k < nm; ++k) {
      SparseVector r;
      const Vector& c = m_brackets[i * nm + k];
      for (std::size_t q = 0; q < nm; ++q) {
        if (!c[q].is_zero()) r.emplace_back(n + q, c[q]);
      }
      entries.push_back({n + i, n + k, std::move(r)});
    }
  }

  Matrix l0_gram(n + nm, n + nm);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) l0_gram(j, k) = g(j, k);
  for (std::size_t i = 0; i < nm; ++i)
    for (std::size_t k = 0; k < nm; ++k) l0_gram(n + i, n + k) = m_gram(i, k);

  if (nm == 0) {
    e.l0 = GradedAlgebra(t.name() + "_L0", t.basis(), entries);
    e.l0_form = BilinearFormMatrix{l0_gram, t.basis().parities()};
  } else {
    const GradedBasis m_basis(m_names, m_parities);
    const GradedBasis l0_basis = t.basis().direct_sum(m_basis);
    e.l0 = GradedAlgebra(t.name() + "_L0", l0_basis, entries);
    e.l0_form = BilinearFormMatrix{l0_gram, l0_basis.parities()};
    std::vector<BracketEntry> m_entries;
    for (std::size_t i = 0; i < nm; ++i) {
      for (std::size_t k = 0; k < nm; ++k) {
        m_entries.push_back({i, k, to_sparse(m_brackets[i * nm + k])});
      }
    }
    e.m_algebra = GradedAlgebra(t.name() + "_M", m_basis, m_entries);
    e.m_form = BilinearFormMatrix{m_gram, m_parities};
  }
  e.m = std::move(m);
  return e;
}

CheckReport check_m_form_invariance(const CanonicalEmbedding& e) {
  const TripleSystem& t = e.source;
  const std::size_t n = t.dim();
  if (n > quintuple_dimension_limit()) {
    throw DimensionGuardError("dimension " + std::to_string(n) + " exceeds the limit " +
                              std::to_string(quintuple_dimension_limit()) +
                              " for the sextuple check; set SUPERBRACKET_MAX_DIM to raise it");
  }
  CheckReport report("m_form_invariance");
  const std::size_t nm = e.m.basis.size();
  if (nm == 0) {
    report.count_instance(n * n * n * n * n * n);
    return report;
  }
  const BilinearFormMatrix& g = *t.form();
  const Matrix& mg = e.m_form.gram;
  const std::size_t pairs = n * n;
  // gc = coordinates of L(e_j,e_k); br = coordinates of [L_p, L_q].
  const std::vector<Vector>& gc = e.m.coords;
  std::vector<Vector> g_gc(pairs), br(pairs * pairs), g_br(pairs * pairs);
  for (std::size_t p = 0; p < pairs; ++p) {
    g_gc[p] = mg * gc[p];
  }
  for (std::size_t p = 0; p < pairs; ++p) {
    for (std::size_t q = 0; q < pairs; ++q) {
      br[p * pairs + q] = e.m_algebra.bracket(gc[p], gc[q]);
      g_br[p * pairs + q] = mg * br[p * pairs + q];
    }
  }
  std::vector<Vector> prod(n * n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) prod[(a * n + b) * n + c] = to_dense(t.product(a, b, c), n);
  auto P = [&](std::size_t a, std::size_t b, std::size_t c) -> const Vector& { return prod[(a * n + b) * n + c]; };
  auto bit = [&](std::size_t i) { return t.parity(i).bit(); };

  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const std::size_t xy = x * n + y;
      for (std::size_t z = 0; z < n; ++z) {
        for (std::size_t w = 0; w < n; ++w) {
          const std::size_t zw = z * n + w;
          for (std::size_t u = 0; u < n; ++u) {
            for (std::size_t v = 0; v < n; ++v) {
              const std::size_t uv = u * n + v;
              report.count_instance();
              const Rational lhs = dot(br[xy * pairs + zw], g_gc[uv]);
              const Rational rhs = dot(gc[xy], g_br[zw * pairs + uv]);
              const std::vector<std::size_t> idx{x, y, z, w, u, v};
              if (lhs != rhs) {
                report.add({"invariance", idx, lhs.to_string() + " != " + rhs.to_string()});
              }
              const int puv = bit(u) + bit(v);
              const Rational expansion =
                  Rational(-sign_bits(puv * bit(w))) * g.evaluate(P(x, y, z), P(u, v, w)) +
                  Rational(sign_bits(bit(z) * (puv + bit(w)))) * g.evaluate(P(x, y, w), P(u, v, z));
              if (lhs != expansion) {
                report.add({"expansion", idx, lhs.to_string() + " != " + expansion.to_string()});
              }
            }
          }
        }
      }
    }
  }
  return report;
}

CheckReport check_representation(const CanonicalEmbedding& e) {
  CheckReport report("representation");
  const TripleSystem& t = e.source;
  const std::size_t n = t.dim();
  const std::size_t d = e.l0.dim();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const Vector xy = to_dense(e.l0.bracket(x, y), d);
      for (std::size_t z = 0; z < n; ++z) {
        report.count_instance();
        Vector residual = e.l0.bracket(xy, unit_vector(d, z));
        for (const auto& [m, c] : t.product(x, y, z)) {
          residual[m] -= c;
        }
        if (!is_zero(residual)) {
          report.add({"representation", {x, y, z},
                      "[[" + t.basis().name(x) + ", " + t.basis().name(y) + "], " + t.basis().name(z) +
                          "] differs from the triple product"});
        }
      }
    }
  }
  return report;
}

LiftedIdeal lift_ideal(const CanonicalEmbedding& e, const Subspace& b) {
  const TripleSystem& t = e.source;
  if (!verify_triple_ideal(t, b)) {
    throw PreconditionError("subspace is not an ideal of the triple system");
  }
  const std::size_t n = t.dim();
  const std::size_t nm = e.m.basis.size();
  std::vector<Vector> m_vectors, l0_vectors;
  for (const auto& v : b.basis()) {
    Vector lifted(n + nm);
    for (std::size_t j = 0; j < n; ++j) lifted[j] = v[j];
    l0_vectors.push_back(std::move(lifted));
    for (std::size_t k = 0; k < n; ++k) {
      Vector c(nm);
      for (std::size_t j = 0; j < n; ++j) {
        if (!v[j].is_zero()) axpy(c, v[j], e.m.coords[j * n + k]);
      }
      Vector padded(n + nm);
      for (std::size_t i = 0; i < nm; ++i) padded[n + i] = c[i];
      m_vectors.push_back(std::move(c));
      l0_vectors.push_back(std::move(padded));
    }
  }
  LiftedIdeal out{Subspace::span(nm, m_vectors), Subspace::span(n + nm, l0_vectors)};
  out.m_verified = nm == 0 || verify_ideal(e.m_algebra, out.m_ideal);
  out.l0_verified = verify_ideal(e.l0, out.l0_ideal);
  return out;
}

}  // namespace superbracket
