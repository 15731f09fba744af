#include "superbracket/fk_jordan.hpp"

#include <string>

#include "superbracket/errors.hpp"
#include "superbracket/format.hpp"

namespace superbracket {

namespace {

int sign_bits(int exponent) { return exponent % 2 == 0 ? 1 : -1; }

std::string product_name(const GradedBasis& basis, std::size_t a, std::size_t b, std::size_t c) {
  return basis.name(a) + " " + basis.name(b) + " " + basis.name(c);
}

void require_quintuple_limit(std::size_t n) {
  if (n > quintuple_dimension_limit()) {
    throw DimensionGuardError("dimension " + std::to_string(n) + " exceeds the limit " +
                              std::to_string(quintuple_dimension_limit()) +
                              " for the quintuple check; set SUPERBRACKET_MAX_DIM to raise it");
  }
}

const BilinearFormMatrix& require_form(const GeneralTripleSystem& g) {
  if (!g.form()) {
    throw PreconditionError("triple system '" + g.name() + "' carries no bilinear form");
  }
  return *g.form();
}

void grade_conditions(const GeneralTripleSystem& g, CheckReport& report) {
  const std::size_t n = g.dim();
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t l = 0; l < n; ++l) {
        report.count_instance();
        const Parity expected = g.parity(j) + g.parity(k) + g.parity(l);
        for (const auto& [m, c] : g.product(j, k, l)) {
          if (g.parity(m) != expected) {
            report.add({"grade", {j, k, l, m},
                        product_name(g.basis(), j, k, l) + " has a component on " + g.basis().name(m) +
                            " of the wrong parity"});
          }
        }
      }
    }
  }
}

// (2.15)-type identity for a given epsilon on every basis quintuple (u, v, x, y, z).
void fk_identity(const GeneralTripleSystem& g, int epsilon, CheckReport& report) {
  const std::size_t n = g.dim();
  require_quintuple_limit(n);
  auto b = [&](std::size_t i) { return g.parity(i).bit(); };
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      const int uv = b(u) + b(v);
      for (std::size_t x = 0; x < n; ++x) {
        const SparseVector& uvx = g.product(u, v, x);
        for (std::size_t y = 0; y < n; ++y) {
          const SparseVector& vuy = g.product(v, u, y);
          const Rational middle(epsilon * sign_bits(uv * b(x) + b(u) * b(v)));
          const Rational last(sign_bits(uv * (b(x) + b(y))));
          for (std::size_t z = 0; z < n; ++z) {
            report.count_instance();
            Vector residual(n);
            for (const auto& [m, c] : g.product(x, y, z)) {
              accumulate(residual, c, g.product(u, v, m));
            }
            for (const auto& [m, c] : uvx) {
              accumulate(residual, -c, g.product(m, y, z));
            }
            for (const auto& [m, c] : vuy) {
              accumulate(residual, -middle * c, g.product(x, m, z));
            }
            for (const auto& [m, c] : g.product(u, v, z)) {
              accumulate(residual, -last * c, g.product(x, y, m));
            }
            if (!is_zero(residual)) {
              report.add({"generalized_fk", {u, v, x, y, z},
                          "uv(xyz) - rhs = " + format_vector(g.basis(), residual)});
            }
          }
        }
      }
    }
  }
}

// Column l of K(e_j, e_k).
Vector k_column(const GeneralTripleSystem& g, std::size_t j, std::size_t k, std::size_t l) {
  const int bj = g.parity(j).bit(), bk = g.parity(k).bit(), bl = g.parity(l).bit();
  Vector col(g.dim());
  accumulate(col, Rational(sign_bits(bk * bl)), g.product(j, l, k));
  accumulate(col, Rational(-g.delta() * sign_bits(bj * (bk + bl))), g.product(k, l, j));
  return col;
}

// Pairings <xyu|v> (left) and <x|yuv> (right), index ((x*n + y)*n + u)*n + v.
std::vector<Rational> left_pairings(const GeneralTripleSystem& g, const BilinearFormMatrix& f) {
  const std::size_t n = g.dim();
  std::vector<Rational> out(n * n * n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t u = 0; u < n; ++u) {
        for (const auto& [m, c] : g.product(x, y, u)) {
          for (std::size_t v = 0; v < n; ++v) {
            out[((x * n + y) * n + u) * n + v].add_product(c, f(m, v));
          }
        }
      }
    }
  }
  return out;
}

std::vector<Rational> right_pairings(const GeneralTripleSystem& g, const BilinearFormMatrix& f) {
  const std::size_t n = g.dim();
  std::vector<Rational> out(n * n * n * n);
  for (std::size_t y = 0; y < n; ++y) {
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = 0; v < n; ++v) {
        for (const auto& [m, c] : g.product(y, u, v)) {
          for (std::size_t x = 0; x < n; ++x) {
            out[((x * n + y) * n + u) * n + v].add_product(f(x, m), c);
          }
        }
      }
    }
  }
  return out;
}

Matrix left_matrix(const GeneralTripleSystem& g, std::size_t j, std::size_t k) {
  const std::size_t n = g.dim();
  Matrix m(n, n);
  for (std::size_t l = 0; l < n; ++l) {
    for (const auto& [r, c] : g.product(j, k, l)) {
      m(r, l) = c;
    }
  }
  return m;
}

void validate_form_shape(const GradedBasis& basis, const BilinearFormMatrix& form) {
  if (form.size() != basis.size() || form.parities != basis.parities()) {
    throw PreconditionError("form does not match the basis");
  }
  if (!form.is_grade_block()) {
    throw PreconditionError("form pairs elements of different parity");
  }
}

}  // namespace

FkKind parse_fk_kind(const std::string& text) {
  if (text == "generalized-fk") return FkKind::generalized_fk;
  if (text == "jordan") return FkKind::jordan;
  throw InputError("unknown triple kind '" + text + "' (expected generalized-fk or jordan)");
}

std::string to_string(FkKind kind) { return kind == FkKind::jordan ? "jordan" : "generalized-fk"; }

GeneralTripleSystem::GeneralTripleSystem(std::string name, GradedBasis basis, FkKind kind, int epsilon,
                                         int delta, const std::vector<TripleEntry>& entries,
                                         std::optional<BilinearFormMatrix> form,
                                         std::optional<Matrix> p_operator, std::optional<Rational> c)
    : name_(std::move(name)),
      basis_(std::move(basis)),
      kind_(kind),
      epsilon_(epsilon),
      delta_(delta),
      form_(std::move(form)),
      p_(std::move(p_operator)),
      c_(std::move(c)) {
  if ((epsilon_ != 1 && epsilon_ != -1) || (delta_ != 1 && delta_ != -1)) {
    throw InputError("epsilon and delta must be +1 or -1");
  }
  const std::size_t n = dim();
  if (form_ && (form_->size() != n || form_->gram.rows() != n || form_->gram.cols() != n)) {
    throw InputError("form size does not match the basis");
  }
  if (p_ && (p_->rows() != n || p_->cols() != n)) {
    throw InputError("P size does not match the basis");
  }
  table_.assign(n * n * n, {});
  std::vector<bool> given(n * n * n, false);
  for (const auto& e : entries) {
    if (e.a >= n || e.b >= n || e.c >= n) {
      throw InputError("triple entry index out of range");
    }
    const std::size_t at = (e.a * n + e.b) * n + e.c;
    if (given[at]) {
      throw InputError("triple " + product_name(basis_, e.a, e.b, e.c) + " given twice");
    }
    given[at] = true;
    Vector dense(n);
    for (const auto& [m, c] : e.result) {
      if (m >= n) {
        throw InputError("triple result index out of range");
      }
      dense[m] += c;
    }
    table_[at] = to_sparse(dense);
  }
}

Vector GeneralTripleSystem::product(std::span<const Rational> x, std::span<const Rational> y,
                                    std::span<const Rational> z) const {
  const std::size_t n = dim();
  Vector out(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (x[j].is_zero()) continue;
    for (std::size_t k = 0; k < n; ++k) {
      if (y[k].is_zero()) continue;
      const Rational xy = x[j] * y[k];
      for (std::size_t l = 0; l < n; ++l) {
        if (z[l].is_zero()) continue;
        accumulate(out, xy * z[l], product(j, k, l));
      }
    }
  }
  return out;
}

std::vector<TripleEntry> GeneralTripleSystem::entries() const {
  std::vector<TripleEntry> out;
  const std::size_t n = dim();
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t l = 0; l < n; ++l) {
        if (!product(j, k, l).empty()) {
          out.push_back({j, k, l, product(j, k, l)});
        }
      }
    }
  }
  return out;
}

GeneralTripleSystem GeneralTripleSystem::with_form(std::optional<BilinearFormMatrix> form) const {
  if (form && form->size() != dim()) {
    throw InputError("form size does not match the basis");
  }
  GeneralTripleSystem copy = *this;
  copy.form_ = std::move(form);
  return copy;
}

GeneralTripleSystem from_triple_system(const TripleSystem& t) {
  return GeneralTripleSystem(t.name(), t.basis(), FkKind::generalized_fk, -1, t.delta(), t.entries(), t.form());
}

CheckReport check_generalized_fk(const GeneralTripleSystem& g) {
  CheckReport report("generalized_fk");
  grade_conditions(g, report);
  fk_identity(g, g.epsilon(), report);
  return report;
}

CheckReport check_jordan(const GeneralTripleSystem& g) {
  CheckReport report("jordan");
  grade_conditions(g, report);
  const std::size_t n = g.dim();
  auto b = [&](std::size_t i) { return g.parity(i).bit(); };
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t z = 0; z < n; ++z) {
        report.count_instance();
        Vector residual = to_dense(g.product(x, y, z), n);
        const int s = g.delta() * sign_bits(b(x) * b(y) + b(y) * b(z) + b(z) * b(x));
        accumulate(residual, Rational(-s), g.product(z, y, x));
        if (!is_zero(residual)) {
          report.add({"outer_symmetry", {x, y, z},
                      "xyz - delta (-1)^{xy+yz+zx} zyx = " + format_vector(g.basis(), residual)});
        }
      }
    }
  }
  fk_identity(g, -g.delta(), report);
  return report;
}

MultOperator k_operator(const GeneralTripleSystem& g, std::size_t j, std::size_t k) {
  const std::size_t n = g.dim();
  Matrix m(n, n);
  for (std::size_t l = 0; l < n; ++l) {
    const Vector col = k_column(g, j, k, l);
    for (std::size_t r = 0; r < n; ++r) {
      m(r, l) = col[r];
    }
  }
  return {std::move(m), g.parity(j) + g.parity(k), MultOperator::Side::left};
}

MultOperator k_operator(const GeneralTripleSystem& g, std::span<const Rational> x,
                        std::span<const Rational> y) {
  const std::size_t n = g.dim();
  if (x.size() != n || y.size() != n) {
    throw DimensionError("K(x,y) arguments must have length " + std::to_string(n));
  }
  const auto px = homogeneous_parity(g.basis(), x);
  const auto py = homogeneous_parity(g.basis(), y);
  MultOperator out{Matrix(n, n), px.value_or(Parity::even()) + py.value_or(Parity::even()),
                   MultOperator::Side::left};
  for (std::size_t j = 0; j < n; ++j) {
    if (x[j].is_zero()) continue;
    for (std::size_t k = 0; k < n; ++k) {
      if (y[k].is_zero()) continue;
      out.matrix = out.matrix + k_operator(g, j, k).matrix * (x[j] * y[k]);
    }
  }
  return out;
}

CheckReport check_fk_condition(const GeneralTripleSystem& g) {
  CheckReport report("fk_condition");
  const std::size_t n = g.dim();
  require_quintuple_limit(n);
  auto b = [&](std::size_t i) { return g.parity(i).bit(); };
  // flat[j * n + k] = K(e_j, e_k) flattened row-major.
  std::vector<Vector> flat;
  flat.reserve(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      flat.push_back(k_operator(g, j, k).matrix.flatten());
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t z = 0; z < n; ++z) {
        for (std::size_t w = 0; w < n; ++w) {
          report.count_instance();
          Vector residual(n * n);
          for (const auto& [m, c] : g.product(x, y, z)) {
            axpy(residual, c, flat[m * n + w]);
          }
          const Rational s2(sign_bits(b(z) * (b(x) + b(y))));
          for (const auto& [m, c] : g.product(x, y, w)) {
            axpy(residual, s2 * c, flat[z * n + m]);
          }
          const Rational s3(g.delta() * sign_bits(b(y) * (b(z) + b(w))));
          const Vector kzwy = k_column(g, z, w, y);
          for (std::size_t m = 0; m < n; ++m) {
            if (!kzwy[m].is_zero()) axpy(residual, s3 * kzwy[m], flat[x * n + m]);
          }
          if (!is_zero(residual)) {
            report.add({"fk_condition", {x, y, z, w},
                        "K(xyz,w) + ... != 0 for x,y,z,w = " + g.basis().name(x) + "," + g.basis().name(y) +
                            "," + g.basis().name(z) + "," + g.basis().name(w)});
          }
        }
      }
    }
  }
  return report;
}

CheckReport check_jordan_quasi_classical(const GeneralTripleSystem& g) {
  const BilinearFormMatrix& f = require_form(g);
  CheckReport report("jordan_quasi_classical");
  const std::size_t n = g.dim();
  if (f.size() != n) {
    throw DimensionError("form size does not match the basis");
  }
  auto b = [&](std::size_t i) { return g.parity(i).bit(); };
  grade_conditions(g, report);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      report.count_instance();
      if (g.parity(x) != g.parity(y) && !f(x, y).is_zero()) {
        report.add({"grade", {x, y}, "<" + g.basis().name(x) + "|" + g.basis().name(y) + "> pairs different parities"});
      }
      const Rational expected = f(x, y) * Rational(g.delta() * sign_bits(b(x) * b(y)));
      if (f(y, x) != expected) {
        report.add({"supersymmetry", {x, y},
                    "<y|x> = " + f(y, x).to_string() + ", expected " + expected.to_string()});
      }
    }
  }
  const auto left = left_pairings(g, f);
  const auto right = right_pairings(g, f);
  auto at = [n](std::size_t a, std::size_t c, std::size_t d, std::size_t e) {
    return ((a * n + c) * n + d) * n + e;
  };
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < n; ++v) {
          report.count_instance();
          const Rational& lhs = left[at(x, y, u, v)];
          if (lhs != right[at(x, y, u, v)]) {
            report.add({"invariance", {x, y, u, v},
                        "<xyu|v> = " + lhs.to_string() + ", <x|yuv> = " + right[at(x, y, u, v)].to_string()});
          }
          const Rational swapped =
              left[at(u, v, x, y)] * Rational(sign_bits((b(x) + b(y)) * (b(u) + b(v))));
          if (lhs != swapped) {
            report.add({"pair_exchange", {x, y, u, v},
                        "<xyu|v> = " + lhs.to_string() + ", signed <uvx|y> = " + swapped.to_string()});
          }
        }
      }
    }
  }
  report.count_instance();
  if (!f.is_nondegenerate()) {
    report.add({"nondegenerate", {}, "form has rank " + std::to_string(f.rank()) + " < " + std::to_string(n)});
  }
  return report;
}

JordanLieAlgebra jordan_lie_algebra(const GeneralTripleSystem& g) {
  const BilinearFormMatrix& f = require_form(g);
  const std::size_t n = g.dim();
  auto b = [&](std::size_t i) { return g.parity(i).bit(); };

  std::vector<Matrix> generators;
  generators.reserve(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      generators.push_back(left_matrix(g, j, k));
    }
  }
  JordanLieAlgebra out;
  out.m = span_of_operators(g.basis(), generators);
  const std::size_t nm = out.m.basis.size();
  if (nm == 0) {
    out.certificate.certified = true;
    out.certificate.reason = "M is zero-dimensional";
    return out;
  }

  std::vector<Vector> brackets(nm * nm);
  for (std::size_t i = 0; i < nm; ++i) {
    for (std::size_t k = 0; k < nm; ++k) {
      const auto c = out.m.span.coordinates(graded_commutator(out.m.basis[i], out.m.basis[k]).flatten());
      if (!c) {
        throw VerificationError("[M" + std::to_string(i + 1) + ", M" + std::to_string(k + 1) +
                                "] leaves the span of left multiplications");
      }
      brackets[i * nm + k] = *c;
    }
  }

  std::vector<std::string> names;
  std::vector<Parity> parities;
  std::vector<BracketEntry> entries;
  for (std::size_t i = 0; i < nm; ++i) {
    names.push_back("M" + std::to_string(i + 1));
    parities.push_back(out.m.basis[i].parity);
    for (std::size_t k = 0; k < nm; ++k) {
      if (!is_zero(brackets[i * nm + k])) {
        entries.push_back({i, k, to_sparse(brackets[i * nm + k])});
      }
    }
  }
  GradedBasis m_basis(names, parities);
  out.algebra = GradedAlgebra(g.name() + "_lie", m_basis, entries);

  // Bracket formula on generators, compared in M coordinates.
  const auto& coords = out.m.coords;
  auto bracket_coords = [&](const Vector& p, const Vector& q) {
    Vector r(nm);
    for (std::size_t i = 0; i < nm; ++i) {
      if (p[i].is_zero()) continue;
      for (std::size_t k = 0; k < nm; ++k) {
        if (!q[k].is_zero()) axpy(r, p[i] * q[k], brackets[i * nm + k]);
      }
    }
    return r;
  };
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
          out.bracket_formula.count_instance();
          Vector residual = bracket_coords(coords[u * n + v], coords[x * n + y]);
          for (const auto& [m, c] : g.product(u, v, x)) {
            axpy(residual, -c, coords[m * n + y]);
          }
          const Rational s(g.delta() * sign_bits((b(u) + b(v)) * b(x) + b(u) * b(v)));
          for (const auto& [m, c] : g.product(v, u, y)) {
            axpy(residual, s * c, coords[x * n + m]);
          }
          if (!is_zero(residual)) {
            out.bracket_formula.add({"bracket_formula", {u, v, x, y},
                                     "[L(u,v),L(x,y)] differs from L(uvx,y) - ... by " +
                                         format_vector(m_basis, residual)});
          }
        }
      }
    }
  }

  // Form: <Y|L(u,v)> = <Yu|v>; <Y|Y'> summed over a decomposition of Y'.
  const Matrix gen = Matrix::from_columns(n * n, [&] {
    std::vector<Vector> cols;
    for (const auto& m : generators) cols.push_back(m.flatten());
    return cols;
  }());
  const auto gen_kernel = nullspace(gen);
  std::vector<Vector> decomposition, alternative;
  for (std::size_t i = 0; i < nm; ++i) {
    const auto c = solve_linear(gen, out.m.basis[i].matrix.flatten());
    decomposition.push_back(*c);
    Vector alt = *c;
    for (const auto& z : gen_kernel) axpy(alt, Rational(1), z);
    alternative.push_back(std::move(alt));
  }
  auto paired = [&](const Matrix& y, const Vector& c) {
    Rational s;
    for (std::size_t p = 0; p < n * n; ++p) {
      if (c[p].is_zero()) continue;
      const std::size_t u = p / n, v = p % n;
      Rational yu_v;
      for (std::size_t r = 0; r < n; ++r) {
        if (!y(r, u).is_zero()) yu_v.add_product(y(r, u), f(r, v));
      }
      s += c[p] * yu_v;
    }
    return s;
  };
  Matrix gram(nm, nm);
  for (std::size_t i = 0; i < nm; ++i) {
    for (std::size_t k = 0; k < nm; ++k) {
      out.well_defined.count_instance();
      const Rational value = paired(out.m.basis[i].matrix, decomposition[k]);
      gram(i, k) = value;
      const Rational shifted = paired(out.m.basis[i].matrix, alternative[k]);
      const int pq = out.m.basis[i].parity.bit() * out.m.basis[k].parity.bit();
      const Rational mirrored = paired(out.m.basis[k].matrix, decomposition[i]) * Rational(sign_bits(pq));
      if (shifted != value || mirrored != value) {
        out.well_defined.add({"well_defined", {i, k},
                              "<M" + std::to_string(i + 1) + "|M" + std::to_string(k + 1) + "> = " +
                                  value.to_string() + ", alternative " + shifted.to_string() + ", mirrored " +
                                  mirrored.to_string()});
      }
    }
  }
  out.form = BilinearFormMatrix{gram, parities};
  out.nondegenerate = out.form.is_nondegenerate();
  if (out.nondegenerate) {
    out.certificate = certify_quasi_classical(out.algebra, out.form);
  } else {
    out.kernel = nullspace(gram);
    out.certificate.singular = true;
    out.certificate.reason = "induced form on M is degenerate (kernel dimension " +
                             std::to_string(out.kernel.size()) + ")";
  }
  return out;
}

TripleSystem jordan_to_lie_triple(const GeneralTripleSystem& g) {
  const std::size_t n = g.dim();
  std::vector<TripleEntry> entries;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const Rational s(-g.delta() * sign_bits(g.parity(x).bit() * g.parity(y).bit()));
      for (std::size_t z = 0; z < n; ++z) {
        Vector v = to_dense(g.product(x, y, z), n);
        accumulate(v, s, g.product(y, x, z));
        // Every ordered pair is listed, so no completion applies.
        entries.push_back({x, y, z, to_sparse(v)});
      }
    }
  }
  return TripleSystem(g.name() + "_antisymmetrized", g.basis(), g.delta(), entries, g.form());
}

GeneralTripleSystem projector_jordan(const GradedBasis& basis, const BilinearFormMatrix& form, int delta,
                                     const Matrix& p, std::optional<Rational> c) {
  const Rational scalar = check_projector_conditions(basis, form, delta, p, c);
  const std::size_t n = basis.size();
  const Matrix gp = form.gram * p;
  std::vector<TripleEntry> entries;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t z = 0; z < n; ++z) {
        Vector v(n);
        for (std::size_t m = 0; m < n; ++m) {
          v[m] += form(x, y) * p(m, z);
          v[m] += form(y, z) * p(m, x);
        }
        v[z] += gp(x, y);
        v[x] += gp(y, z);
        if (!is_zero(v)) {
          entries.push_back({x, y, z, to_sparse(v)});
        }
      }
    }
  }
  return GeneralTripleSystem("projector_jordan", basis, FkKind::jordan, -delta, delta, entries, form, p, scalar);
}

GeneralTripleSystem nilpotent_fk(const GradedAlgebra& a, const Rational& c1, const Rational& c2, int epsilon,
                                 int delta, std::optional<BilinearFormMatrix> form, FkKind kind) {
  if (!lower_central_vanishes_at(a, 5)) {
    throw PreconditionError("algebra '" + a.name() + "' does not satisfy L_5 = 0");
  }
  if (form && (form->size() != a.dim() || form->parities != a.basis().parities())) {
    throw PreconditionError("form does not match the algebra basis");
  }
  const std::size_t n = a.dim();
  std::vector<TripleEntry> entries;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t z = 0; z < n; ++z) {
        Vector v(n);
        for (const auto& [m, c] : a.bracket(y, z)) {
          accumulate(v, c1 * c, a.bracket(x, m));
        }
        for (const auto& [m, c] : a.bracket(x, y)) {
          accumulate(v, c2 * c, a.bracket(m, z));
        }
        if (!is_zero(v)) {
          entries.push_back({x, y, z, to_sparse(v)});
        }
      }
    }
  }
  return GeneralTripleSystem(a.name() + "_nilpotent_fk", a.basis(), kind, epsilon, delta, entries,
                             std::move(form));
}

GeneralTripleSystem rank_one_fk(const GradedBasis& basis, const BilinearFormMatrix& form, int epsilon,
                                int delta, const Matrix& p) {
  if ((epsilon != 1 && epsilon != -1) || (delta != 1 && delta != -1)) {
    throw PreconditionError("epsilon and delta must be +1 or -1");
  }
  validate_form_shape(basis, form);
  // <x|y> = -eps (-1)^{xy} <y|x>.
  if (!form.is_supersymmetric(-epsilon)) {
    throw PreconditionError("form violates <x|y> = -epsilon (-1)^{xy} <y|x>");
  }
  const std::size_t n = basis.size();
  if (p.rows() != n || p.cols() != n) {
    throw PreconditionError("P must be " + std::to_string(n) + " x " + std::to_string(n));
  }
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (!p(r, c).is_zero() && basis.parity(r) != basis.parity(c)) {
        throw PreconditionError("P does not preserve the grading");
      }
    }
  }
  if (form.gram * p != p.transpose() * form.gram) {
    throw PreconditionError("P is not self-adjoint: <x|Py> != <Px|y>");
  }
  const Matrix gp = form.gram * p;
  std::vector<TripleEntry> entries;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t z = 0; z < n; ++z) {
        if (!gp(y, z).is_zero()) {
          entries.push_back({x, y, z, {{x, gp(y, z)}}});
        }
      }
    }
  }
  return GeneralTripleSystem("rank_one_fk", basis, FkKind::generalized_fk, epsilon, delta, entries, form, p);
}

}  // namespace superbracket
