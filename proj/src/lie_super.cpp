#include "superbracket/lie_super.hpp"

#include <map>
#include <set>
#include <sstream>

#include "superbracket/errors.hpp"
#include "superbracket/format.hpp"

namespace superbracket {

GradedAlgebra::GradedAlgebra(std::string name, GradedBasis basis,
                             const std::vector<BracketEntry>& entries)
    : name_(std::move(name)), basis_(std::move(basis)), table_(basis_.size() * basis_.size()) {
  const std::size_t n = dim();
  std::vector<bool> given(n * n, false);
  for (const auto& e : entries) {
    if (e.left >= n || e.right >= n) {
      throw InputError("bracket entry index out of range");
    }
    for (const auto& [l, c] : e.result) {
      if (l >= n) {
        throw InputError("bracket result index out of range");
      }
    }
    if (given[e.left * n + e.right]) {
      throw InputError("bracket [" + basis_.name(e.left) + ", " + basis_.name(e.right) +
                       "] given twice");
    }
    given[e.left * n + e.right] = true;
    Vector dense(n);
    for (const auto& [l, c] : e.result) {
      dense[l] += c;
    }
    table_[e.left * n + e.right] = to_sparse(dense);
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      if (!given[j * n + k] || given[k * n + j]) {
        continue;
      }
      const Rational s(-graded_sign(basis_.parity(j), basis_.parity(k)));
      SparseVector mirrored = table_[j * n + k];
      for (auto& [l, c] : mirrored) {
        c *= s;
      }
      table_[k * n + j] = std::move(mirrored);
    }
  }
}

Vector GradedAlgebra::bracket(std::span<const Rational> a, std::span<const Rational> b) const {
  const std::size_t n = dim();
  Vector out(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (a[j].is_zero()) {
      continue;
    }
    for (std::size_t k = 0; k < n; ++k) {
      if (b[k].is_zero()) {
        continue;
      }
      accumulate(out, a[j] * b[k], bracket(j, k));
    }
  }
  return out;
}

std::vector<BracketEntry> GradedAlgebra::entries() const {
  std::vector<BracketEntry> out;
  for (std::size_t j = 0; j < dim(); ++j) {
    for (std::size_t k = 0; k < dim(); ++k) {
      if (!bracket(j, k).empty()) {
        out.push_back({j, k, bracket(j, k)});
      }
    }
  }
  return out;
}

namespace {

// [[e_i, e_j], e_k]
Vector double_bracket(const GradedAlgebra& a, std::size_t i, std::size_t j, std::size_t k) {
  Vector out(a.dim());
  for (const auto& [p, c] : a.bracket(i, j)) {
    accumulate(out, c, a.bracket(p, k));
  }
  return out;
}

Vector sparse_row(const GradedAlgebra& a, std::size_t j, std::size_t k) {
  return to_dense(a.bracket(j, k), a.dim());
}

}  // namespace

CheckReport check_lie_super(const GradedAlgebra& a) {
  CheckReport report("lie_super");
  const std::size_t n = a.dim();
  const auto& basis = a.basis();
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      report.count_instance();
      const Parity expected = a.parity(j) + a.parity(k);
      for (const auto& [l, c] : a.bracket(j, k)) {
        if (a.parity(l) != expected) {
          report.add({"grade", {j, k, l},
                      "[" + basis.name(j) + ", " + basis.name(k) + "] has component on " +
                          basis.name(l) + " of the wrong parity"});
        }
      }
      if (k < j) {
        continue;
      }
      Vector residual = sparse_row(a, k, j);
      accumulate(residual, Rational(graded_sign(a.parity(j), a.parity(k))), a.bracket(j, k));
      if (!is_zero(residual)) {
        report.add({"antisymmetry", {j, k},
                    "[" + basis.name(k) + ", " + basis.name(j) + "] + (-1)^{jk}[" + basis.name(j) +
                        ", " + basis.name(k) + "] = " + format_vector(basis, residual)});
      }
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t z = 0; z < n; ++z) {
        report.count_instance();
        const Parity px = a.parity(x);
        const Parity py = a.parity(y);
        const Parity pz = a.parity(z);
        Vector residual = double_bracket(a, x, z, y);
        for (auto& r : residual) {
          r *= Rational(graded_sign(px, py));
        }
        axpy(residual, Rational(graded_sign(py, pz)), double_bracket(a, y, x, z));
        axpy(residual, Rational(graded_sign(pz, px)), double_bracket(a, z, y, x));
        if (!is_zero(residual)) {
          report.add({"jacobi", {x, y, z},
                      "(" + basis.name(x) + ", " + basis.name(y) + ", " + basis.name(z) +
                          "): " + format_vector(basis, residual)});
        }
      }
    }
  }
  return report;
}

Matrix ad_matrix(const GradedAlgebra& a, std::size_t j) {
  if (j >= a.dim()) {
    throw DimensionError("ad_matrix: basis index out of range");
  }
  Matrix m(a.dim(), a.dim());
  for (std::size_t k = 0; k < a.dim(); ++k) {
    for (const auto& [l, c] : a.bracket(j, k)) {
      m(l, k) = c;
    }
  }
  return m;
}

BilinearFormMatrix killing_form(const GradedAlgebra& a) {
  const std::size_t n = a.dim();
  std::vector<Matrix> ads;
  ads.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    ads.push_back(ad_matrix(a, j));
  }
  BilinearFormMatrix form{Matrix(n, n), a.basis().parities()};
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      form.gram(j, k) = supertrace(ads[j] * ads[k], a.basis().parities());
    }
  }
  return form;
}

CheckReport check_invariant_form(const GradedAlgebra& a, const BilinearFormMatrix& g) {
  CheckReport report("invariant_form");
  const std::size_t n = a.dim();
  if (g.size() != n || g.gram.rows() != n || g.gram.cols() != n) {
    throw DimensionError("form size does not match algebra dimension");
  }
  const auto& basis = a.basis();
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      report.count_instance();
      if (a.parity(j) != a.parity(k) && !g(j, k).is_zero()) {
        report.add({"grade", {j, k},
                    "<" + basis.name(j) + "|" + basis.name(k) + "> = " + g(j, k).to_string()});
      }
      if (g(k, j) != Rational(graded_sign(a.parity(j), a.parity(k))) * g(j, k)) {
        report.add({"supersymmetry", {j, k},
                    "<" + basis.name(k) + "|" + basis.name(j) + "> = " + g(k, j).to_string() +
                        " but <" + basis.name(j) + "|" + basis.name(k) + "> = " + g(j, k).to_string()});
      }
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t l = 0; l < n; ++l) {
        report.count_instance();
        Rational lhs;
        for (const auto& [m, c] : a.bracket(j, k)) {
          lhs.add_product(c, g(m, l));
        }
        Rational rhs;
        for (const auto& [m, c] : a.bracket(k, l)) {
          rhs.add_product(c, g(j, m));
        }
        if (lhs != rhs) {
          report.add({"invariance", {j, k, l},
                      "<[" + basis.name(j) + "," + basis.name(k) + "]|" + basis.name(l) + "> = " +
                          lhs.to_string() + " vs <" + basis.name(j) + "|[" + basis.name(k) + "," +
                          basis.name(l) + "]> = " + rhs.to_string()});
        }
      }
    }
  }
  return report;
}

std::vector<BilinearFormMatrix> invariant_form_space(const GradedAlgebra& a) {
  const std::size_t n = a.dim();
  // Independent unknowns: g_{jk} with j <= k and equal parity. The entry
  // g_{kj} is (-1)^{sigma_j sigma_k} times the same unknown; cross-parity
  // entries are identically zero.
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> param(n * n, kNone);
  std::vector<Rational> param_sign(n * n);
  std::vector<std::pair<std::size_t, std::size_t>> params;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j; k < n; ++k) {
      if (a.parity(j) != a.parity(k)) {
        continue;
      }
      param[j * n + k] = params.size();
      param_sign[j * n + k] = 1;
      param[k * n + j] = params.size();
      param_sign[k * n + j] = graded_sign(a.parity(j), a.parity(k));
      params.emplace_back(j, k);
    }
  }
  const std::size_t unknowns = params.size();
  std::set<Vector> rows;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t l = 0; l < n; ++l) {
        Vector row(unknowns);
        for (const auto& [m, c] : a.bracket(j, k)) {
          const std::size_t idx = m * n + l;
          if (param[idx] != kNone) {
            row[param[idx]].add_product(c, param_sign[idx]);
          }
        }
        for (const auto& [m, c] : a.bracket(k, l)) {
          const std::size_t idx = j * n + m;
          if (param[idx] != kNone) {
            row[param[idx]].add_product(-c, param_sign[idx]);
          }
        }
        if (!is_zero(row)) {
          rows.insert(std::move(row));
        }
      }
    }
  }
  std::vector<Vector> kernel;
  if (rows.empty()) {
    for (std::size_t p = 0; p < unknowns; ++p) {
      kernel.push_back(unit_vector(unknowns, p));
    }
  } else {
    const std::vector<Vector> row_list(rows.begin(), rows.end());
    kernel = nullspace(Matrix::from_rows(unknowns, row_list));
  }
  std::vector<BilinearFormMatrix> out;
  for (const auto& v : kernel) {
    BilinearFormMatrix f{Matrix(n, n), a.basis().parities()};
    for (std::size_t idx = 0; idx < n * n; ++idx) {
      if (param[idx] != kNone) {
        f.gram(idx / n, idx % n) = param_sign[idx] * v[param[idx]];
      }
    }
    out.push_back(std::move(f));
  }
  return out;
}

CheckReport check_casimir_identity(const GradedAlgebra& a, const CasimirCoefficients& c) {
  CheckReport report("casimir_identity");
  const std::size_t n = a.dim();
  const Matrix& g = c.g_upper;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t l = 0; l < n; ++l) {
      report.count_instance(n);
      // lhs_k = sum_m g^{jm} C^k_{ml}
      Vector lhs(n);
      for (std::size_t m = 0; m < n; ++m) {
        accumulate(lhs, g(j, m), a.bracket(m, l));
      }
      // rhs_k = sum_m C^j_{lm} g^{mk}
      Vector rhs(n);
      for (std::size_t m = 0; m < n; ++m) {
        for (const auto& [p, coeff] : a.bracket(l, m)) {
          if (p == j) {
            axpy(rhs, coeff, g.row(m));
          }
        }
      }
      for (std::size_t k = 0; k < n; ++k) {
        if (lhs[k] != rhs[k]) {
          report.add({"casimir", {j, k, l},
                      "sum g^{jm} C^k_{ml} = " + lhs[k].to_string() + " vs sum C^j_{lm} g^{mk} = " +
                          rhs[k].to_string()});
        }
      }
    }
  }
  return report;
}

QuasiClassicalCertificate certify_quasi_classical(const GradedAlgebra& a, const BilinearFormMatrix& g) {
  QuasiClassicalCertificate cert;
  cert.form_conditions = check_invariant_form(a, g);
  if (!cert.form_conditions.passed()) {
    const auto& v = cert.form_conditions.violations().front();
    cert.reason = "form condition '" + v.condition + "' violated: " + v.detail;
    return cert;
  }
  CasimirCoefficients casimir;
  try {
    casimir.g_upper = invert(g.gram);
  } catch (const SingularMatrixError&) {
    cert.singular = true;
    cert.reason = "Gram matrix is singular (rank " + std::to_string(g.rank()) + " of " +
                  std::to_string(g.size()) + ")";
    return cert;
  }
  cert.casimir_identity = check_casimir_identity(a, casimir);
  if (!cert.casimir_identity.passed()) {
    cert.reason = "inverse Gram matrix fails the Casimir identity: " +
                  cert.casimir_identity.violations().front().detail;
    return cert;
  }
  cert.certified = true;
  cert.casimir = std::move(casimir);
  return cert;
}

Subspace bracket_span(const GradedAlgebra& a, const Subspace& s, const Subspace& t) {
  std::vector<Vector> products;
  for (const auto& x : s.basis()) {
    for (const auto& y : t.basis()) {
      Vector b = a.bracket(x, y);
      if (!is_zero(b)) {
        products.push_back(std::move(b));
      }
    }
  }
  return Subspace::span(a.dim(), products);
}

std::vector<Subspace> lower_central_series(const GradedAlgebra& a) {
  const Subspace whole = Subspace::whole(a.dim());
  std::vector<Subspace> series{whole};
  while (!series.back().is_zero()) {
    Subspace next = bracket_span(a, whole, series.back());
    if (next == series.back()) {
      break;
    }
    series.push_back(std::move(next));
  }
  return series;
}

std::vector<std::size_t> lower_central_dimensions(const GradedAlgebra& a) {
  std::vector<std::size_t> dims;
  for (const auto& s : lower_central_series(a)) {
    dims.push_back(s.dim());
  }
  return dims;
}

NilpotencyResult is_nilpotent(const GradedAlgebra& a) {
  const auto series = lower_central_series(a);
  if (!series.back().is_zero()) {
    return {false, 0};
  }
  return {true, series.size() - 1};
}

bool lower_central_vanishes_at(const GradedAlgebra& a, std::size_t k) {
  const NilpotencyResult r = is_nilpotent(a);
  return r.nilpotent && k >= r.length + 1;
}

bool derived_test(const GradedAlgebra& a) {
  const Subspace whole = Subspace::whole(a.dim());
  const Subspace derived = bracket_span(a, whole, whole);
  const Subspace second = bracket_span(a, derived, derived);
  return bracket_span(a, whole, second).is_zero();
}

bool verify_ideal(const GradedAlgebra& a, const Subspace& b) {
  const Subspace whole = Subspace::whole(a.dim());
  return b.contains(bracket_span(a, b, whole));
}

DecompositionReport verify_orthogonal_decomposition(const GradedAlgebra& a, const BilinearFormMatrix& g,
                                                    const std::vector<Subspace>& parts) {
  DecompositionReport r;
  Subspace total(a.dim());
  std::size_t dim_sum = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const Subspace& b = parts[i];
    if (!verify_ideal(a, b)) {
      r.ideals = false;
      r.failures.push_back("part " + std::to_string(i) + " is not an ideal");
    }
    if (bracket_span(a, b, b).is_zero()) {
      r.nonabelian = false;
      r.failures.push_back("part " + std::to_string(i) + " has [B,B] = 0");
    }
    for (std::size_t k = i + 1; k < parts.size(); ++k) {
      for (const auto& x : b.basis()) {
        for (const auto& y : parts[k].basis()) {
          if (!g.evaluate(x, y).is_zero()) {
            if (r.orthogonal) {
              r.failures.push_back("parts " + std::to_string(i) + " and " + std::to_string(k) +
                                   " are not orthogonal");
            }
            r.orthogonal = false;
          }
        }
      }
    }
    total = total + b;
    dim_sum += b.dim();
  }
  if (total.dim() != dim_sum) {
    r.direct = false;
    r.failures.push_back("sum of parts is not direct");
  }
  if (total.dim() != a.dim()) {
    r.spans_whole = false;
    r.failures.push_back("parts do not span the algebra");
  }
  return r;
}

bool uniqueness_up_to_scale(const GradedAlgebra& a) { return invariant_form_space(a).size() == 1; }

ExampleKind parse_example_kind(const std::string& text) {
  if (text == "ex1_1") return ExampleKind::ex1_1;
  if (text == "ex1_2") return ExampleKind::ex1_2;
  if (text == "ex1_3") return ExampleKind::ex1_3;
  if (text == "ex1_4") return ExampleKind::ex1_4;
  throw InputError("unknown example kind '" + text + "'");
}

std::string to_string(ExampleKind kind) {
  switch (kind) {
    case ExampleKind::ex1_1: return "ex1_1";
    case ExampleKind::ex1_2: return "ex1_2";
    case ExampleKind::ex1_3: return "ex1_3";
    case ExampleKind::ex1_4: return "ex1_4";
  }
  return "?";
}

Matrix standard_symplectic(std::size_t size) {
  if (size % 2 != 0) {
    throw PreconditionError("symplectic matrix needs even size");
  }
  Matrix e(size, size);
  for (std::size_t i = 0; i < size; i += 2) {
    e(i, i + 1) = 1;
    e(i + 1, i) = -1;
  }
  return e;
}

namespace {

void require_symplectic(const Matrix& eps, std::size_t size, const char* what) {
  if (eps.rows() != size || eps.cols() != size) {
    throw PreconditionError(std::string(what) + ": epsilon must be " + std::to_string(size) + "x" +
                            std::to_string(size));
  }
  if (eps.transpose() != eps * Rational(-1)) {
    throw PreconditionError(std::string(what) + ": epsilon must be antisymmetric");
  }
  if (rank(eps) != size) {
    throw PreconditionError(std::string(what) + ": epsilon must be invertible");
  }
}

class TableBuilder {
 public:
  explicit TableBuilder(std::size_t n) : n_(n) {}
  void set(std::size_t j, std::size_t k, std::size_t l, const Rational& c) {
    if (!c.is_zero()) {
      entries_[{j, k}].emplace_back(l, c);
    }
  }
  [[nodiscard]] std::vector<BracketEntry> build() const {
    std::vector<BracketEntry> out;
    for (const auto& [key, v] : entries_) {
      out.push_back({key.first, key.second, v});
    }
    return out;
  }

 private:
  std::size_t n_;
  std::map<std::pair<std::size_t, std::size_t>, SparseVector> entries_;
};

AlgebraWithForm build_ex1_1_or_2(bool super, std::size_t n, const Rational& lambda, const Matrix& eps) {
  // e, f, x_1..x_n, y_1..y_n
  std::vector<std::string> names{"e", "f"};
  std::vector<Parity> parities{Parity::even(), Parity::even()};
  const Parity odd_part = super ? Parity::odd() : Parity::even();
  for (std::size_t j = 1; j <= n; ++j) {
    names.push_back("x" + std::to_string(j));
    parities.push_back(odd_part);
  }
  for (std::size_t j = 1; j <= n; ++j) {
    names.push_back("y" + std::to_string(j));
    parities.push_back(odd_part);
  }
  const std::size_t dim = 2 + 2 * n;
  const std::size_t e = 0;
  const std::size_t f = 1;
  auto x = [](std::size_t j) { return 2 + j; };
  auto y = [n](std::size_t j) { return 2 + n + j; };
  TableBuilder t(dim);
  BilinearFormMatrix form{Matrix(dim, dim), parities};
  form.gram(e, f) = 1;
  form.gram(f, e) = 1;
  form.gram(f, f) = -lambda;
  for (std::size_t j = 0; j < n; ++j) {
    t.set(x(j), f, x(j), 1);
    t.set(y(j), f, y(j), -1);
    for (std::size_t k = 0; k < n; ++k) {
      const Rational c = super ? eps(j, k) : Rational(j == k ? 1 : 0);
      t.set(x(j), y(k), e, c);
      if (super) {
        form.gram(x(j), y(k)) = -eps(j, k);
        form.gram(y(k), x(j)) = eps(j, k);
      } else if (j == k) {
        form.gram(x(j), y(k)) = -1;
        form.gram(y(k), x(j)) = -1;
      }
    }
  }
  GradedAlgebra alg(super ? "ex1_2" : "ex1_1", GradedBasis(names, parities), t.build());
  return {std::move(alg), std::move(form)};
}

AlgebraWithForm build_ex1_3_or_4(bool super, std::size_t n, std::size_t m, const Matrix& eps) {
  // x_1..x_n, u_1..u_n, y_1..y_m, v_1..v_m, Y_{jA} (j-major)
  std::vector<std::string> names;
  std::vector<Parity> parities;
  const Parity odd_part = super ? Parity::odd() : Parity::even();
  for (std::size_t j = 1; j <= n; ++j) {
    names.push_back("x" + std::to_string(j));
    parities.push_back(Parity::even());
  }
  for (std::size_t j = 1; j <= n; ++j) {
    names.push_back("u" + std::to_string(j));
    parities.push_back(Parity::even());
  }
  for (std::size_t a = 1; a <= m; ++a) {
    names.push_back("y" + std::to_string(a));
    parities.push_back(odd_part);
  }
  for (std::size_t a = 1; a <= m; ++a) {
    names.push_back("v" + std::to_string(a));
    parities.push_back(odd_part);
  }
  for (std::size_t j = 1; j <= n; ++j) {
    for (std::size_t a = 1; a <= m; ++a) {
      names.push_back("Y" + std::to_string(j) + "_" + std::to_string(a));
      parities.push_back(odd_part);
    }
  }
  const std::size_t dim = 2 * n + 2 * m + n * m;
  auto x = [](std::size_t j) { return j; };
  auto u = [n](std::size_t j) { return n + j; };
  auto y = [n](std::size_t a) { return 2 * n + a; };
  auto v = [n, m](std::size_t a) { return 2 * n + m + a; };
  auto Y = [n, m](std::size_t j, std::size_t a) { return 2 * n + 2 * m + j * m + a; };

  TableBuilder t(dim);
  BilinearFormMatrix form{Matrix(dim, dim), parities};
  for (std::size_t j = 0; j < n; ++j) {
    form.gram(x(j), u(j)) = 1;
    form.gram(u(j), x(j)) = 1;
    for (std::size_t a = 0; a < m; ++a) {
      // [x_j, Y_{kA}] = delta_jk v_A
      t.set(x(j), Y(j, a), v(a), 1);
      // [x_j, y_A] = -Y_{jA}
      t.set(x(j), y(a), Y(j, a), -1);
      for (std::size_t b = 0; b < m; ++b) {
        // [y_A, Y_{jB}] = -delta_AB u_j   or   -eps_AB u_j
        const Rational c = super ? -eps(a, b) : Rational(a == b ? -1 : 0);
        t.set(y(a), Y(j, b), u(j), c);
        // <Y_jA|Y_jB> = delta_AB   or   eps_AB
        form.gram(Y(j, a), Y(j, b)) = super ? eps(a, b) : Rational(a == b ? 1 : 0);
      }
    }
  }
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      if (super) {
        form.gram(v(a), y(b)) = eps(a, b);
        form.gram(y(b), v(a)) = -eps(a, b);
      } else if (a == b) {
        form.gram(v(a), y(b)) = 1;
        form.gram(y(b), v(a)) = 1;
      }
    }
  }
  GradedAlgebra alg(super ? "ex1_4" : "ex1_3", GradedBasis(names, parities), t.build());
  return {std::move(alg), std::move(form)};
}

}  // namespace

AlgebraWithForm example_algebra(ExampleKind kind, std::size_t n, std::size_t m, const Rational& lambda,
                                const std::optional<Matrix>& epsilon) {
  if (n == 0) {
    throw PreconditionError("n must be at least 1");
  }
  switch (kind) {
    case ExampleKind::ex1_1:
      return build_ex1_1_or_2(false, n, lambda, Matrix());
    case ExampleKind::ex1_2: {
      if (n % 2 != 0) {
        throw PreconditionError("ex1_2 requires n even (epsilon must be invertible antisymmetric)");
      }
      const Matrix eps = epsilon.value_or(standard_symplectic(n));
      require_symplectic(eps, n, "ex1_2");
      return build_ex1_1_or_2(true, n, lambda, eps);
    }
    case ExampleKind::ex1_3:
      if (m == 0) {
        throw PreconditionError("ex1_3 requires m >= 1");
      }
      return build_ex1_3_or_4(false, n, m, Matrix());
    case ExampleKind::ex1_4: {
      if (m == 0 || m % 2 != 0) {
        throw PreconditionError("ex1_4 requires m even (epsilon must be invertible antisymmetric)");
      }
      const Matrix eps = epsilon.value_or(standard_symplectic(m));
      require_symplectic(eps, m, "ex1_4");
      return build_ex1_3_or_4(true, n, m, eps);
    }
  }
  throw InputError("unknown example kind");
}

AlgebraWithForm simple3() {
  GradedAlgebra alg("simple3", GradedBasis::even(3),
                    {{0, 1, {{2, Rational(1)}}}, {1, 2, {{0, Rational(1)}}}, {2, 0, {{1, Rational(1)}}}});
  BilinearFormMatrix form = killing_form(alg);
  return {std::move(alg), std::move(form)};
}

GradedAlgebra abelian(const GradedBasis& basis) { return GradedAlgebra("abelian", basis, {}); }

GradedAlgebra direct_sum(const GradedAlgebra& a, const GradedAlgebra& b) {
  std::vector<BracketEntry> entries = a.entries();
  const std::size_t shift = a.dim();
  for (auto e : b.entries()) {
    e.left += shift;
    e.right += shift;
    for (auto& [l, c] : e.result) {
      l += shift;
    }
    entries.push_back(std::move(e));
  }
  return GradedAlgebra(a.name() + "+" + b.name(), a.basis().direct_sum(b.basis()), entries);
}

}  // namespace superbracket
