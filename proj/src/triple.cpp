#include "superbracket/triple.hpp"

#include <cstdlib>
#include <string>

#include "superbracket/errors.hpp"
#include "superbracket/format.hpp"

namespace superbracket {

namespace {

int sign_bits(int exponent) { return exponent % 2 == 0 ? 1 : -1; }

int bit(const TripleSystem& t, std::size_t i) { return t.parity(i).bit(); }

std::string triple_name(const GradedBasis& basis, std::size_t a, std::size_t b, std::size_t c) {
  return "[" + basis.name(a) + ", " + basis.name(b) + ", " + basis.name(c) + "]";
}

// [e_j, e_k, w] for a sparse w.
void add_product_right(Vector& acc, const TripleSystem& t, const Rational& scale, std::size_t j,
                       std::size_t k, const SparseVector& w) {
  for (const auto& [m, c] : w) {
    accumulate(acc, scale * c, t.product(j, k, m));
  }
}

Vector dense_product(const TripleSystem& t, std::size_t j, std::size_t k, std::size_t l) {
  return to_dense(t.product(j, k, l), t.dim());
}

const BilinearFormMatrix& require_form(const TripleSystem& t) {
  if (!t.form()) {
    throw PreconditionError("triple system '" + t.name() + "' carries no bilinear form");
  }
  return *t.form();
}

// <[x,y,u]|v> for all basis quadruples, index ((x*n + y)*n + u)*n + v.
std::vector<Rational> left_pairings(const TripleSystem& t, const BilinearFormMatrix& g) {
  const std::size_t n = t.dim();
  std::vector<Rational> out(n * n * n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t u = 0; u < n; ++u) {
        for (const auto& [m, c] : t.product(x, y, u)) {
          for (std::size_t v = 0; v < n; ++v) {
            out[((x * n + y) * n + u) * n + v].add_product(c, g(m, v));
          }
        }
      }
    }
  }
  return out;
}

// <x|[y,u,v]> for all basis quadruples, index ((x*n + y)*n + u)*n + v.
std::vector<Rational> right_pairings(const TripleSystem& t, const BilinearFormMatrix& g) {
  const std::size_t n = t.dim();
  std::vector<Rational> out(n * n * n * n);
  for (std::size_t y = 0; y < n; ++y) {
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = 0; v < n; ++v) {
        for (const auto& [m, c] : t.product(y, u, v)) {
          for (std::size_t x = 0; x < n; ++x) {
            out[((x * n + y) * n + u) * n + v].add_product(g(x, m), c);
          }
        }
      }
    }
  }
  return out;
}

void validate_form_for_builder(const GradedBasis& basis, const BilinearFormMatrix& form, int delta) {
  if (delta != 1 && delta != -1) {
    throw PreconditionError("delta must be +1 or -1");
  }
  if (form.size() != basis.size() || form.parities != basis.parities()) {
    throw PreconditionError("form does not match the basis");
  }
  if (!form.is_grade_block()) {
    throw PreconditionError("form pairs elements of different parity");
  }
  if (!form.is_supersymmetric(delta)) {
    throw PreconditionError("form violates <y|x> = delta (-1)^{xy} <x|y>");
  }
  if (!form.is_nondegenerate()) {
    throw PreconditionError("form is degenerate");
  }
}

}  // namespace

TripleSystem::TripleSystem(std::string name, GradedBasis basis, int delta,
                           const std::vector<TripleEntry>& entries,
                           std::optional<BilinearFormMatrix> form)
    : name_(std::move(name)), basis_(std::move(basis)), delta_(delta), form_(std::move(form)) {
  if (delta_ != 1 && delta_ != -1) {
    throw InputError("delta must be +1 or -1");
  }
  const std::size_t n = dim();
  if (form_ && (form_->size() != n || form_->gram.rows() != n || form_->gram.cols() != n)) {
    throw InputError("form size does not match the basis");
  }
  table_.assign(n * n * n, {});
  std::vector<bool> given(n * n * n, false);
  auto at = [n](std::size_t j, std::size_t k, std::size_t l) { return (j * n + k) * n + l; };
  for (const auto& e : entries) {
    if (e.a >= n || e.b >= n || e.c >= n) {
      throw InputError("triple entry index out of range");
    }
    Vector dense(n);
    for (const auto& [m, c] : e.result) {
      if (m >= n) {
        throw InputError("triple result index out of range");
      }
      dense[m] += c;
    }
    if (given[at(e.a, e.b, e.c)]) {
      throw InputError("triple " + triple_name(basis_, e.a, e.b, e.c) + " given twice");
    }
    given[at(e.a, e.b, e.c)] = true;
    table_[at(e.a, e.b, e.c)] = to_sparse(dense);
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t l = 0; l < n; ++l) {
        if (!given[at(j, k, l)] || given[at(k, j, l)]) {
          continue;
        }
        const Rational s(-delta_ * graded_sign(parity(j), parity(k)));
        SparseVector mirrored = table_[at(j, k, l)];
        for (auto& [m, c] : mirrored) {
          c *= s;
        }
        table_[at(k, j, l)] = std::move(mirrored);
      }
    }
  }
}

TripleSystem TripleSystem::with_form(std::optional<BilinearFormMatrix> form) const {
  if (form && form->size() != dim()) {
    throw InputError("form size does not match the basis");
  }
  TripleSystem copy = *this;
  copy.form_ = std::move(form);
  return copy;
}

Vector TripleSystem::product(std::span<const Rational> x, std::span<const Rational> y,
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

std::vector<TripleEntry> TripleSystem::entries() const {
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

std::size_t quintuple_dimension_limit() {
  if (const char* env = std::getenv("SUPERBRACKET_MAX_DIM")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) {
      return v;
    }
  }
  return 12;
}

CheckReport check_triple_axioms(const TripleSystem& t) {
  const std::size_t n = t.dim();
  if (n > quintuple_dimension_limit()) {
    throw DimensionGuardError("dimension " + std::to_string(n) + " exceeds the limit " +
                              std::to_string(quintuple_dimension_limit()) +
                              " for the quintuple check; set SUPERBRACKET_MAX_DIM to raise it");
  }
  CheckReport report("triple_axioms");
  const auto& basis = t.basis();
  const int delta = t.delta();
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t l = 0; l < n; ++l) {
        report.count_instance();
        const Parity expected = t.parity(j) + t.parity(k) + t.parity(l);
        for (const auto& [m, c] : t.product(j, k, l)) {
          if (t.parity(m) != expected) {
            report.add({"grade", {j, k, l, m},
                        triple_name(basis, j, k, l) + " has component on " + basis.name(m) +
                            " of the wrong parity"});
          }
        }
        if (k >= j) {
          Vector residual = dense_product(t, k, j, l);
          accumulate(residual, Rational(delta * graded_sign(t.parity(j), t.parity(k))), t.product(j, k, l));
          if (!is_zero(residual)) {
            report.add({"skew", {j, k, l},
                        triple_name(basis, k, j, l) + " + delta (-1)^{jk}" + triple_name(basis, j, k, l) +
                            " = " + format_vector(basis, residual)});
          }
        }
        const int x = bit(t, j), y = bit(t, k), z = bit(t, l);
        Vector residual(n);
        accumulate(residual, Rational(sign_bits(x * z)), t.product(j, k, l));
        accumulate(residual, Rational(sign_bits(y * x)), t.product(k, l, j));
        accumulate(residual, Rational(sign_bits(z * y)), t.product(l, j, k));
        if (!is_zero(residual)) {
          report.add({"cyclic", {j, k, l},
                      "(" + basis.name(j) + ", " + basis.name(k) + ", " + basis.name(l) +
                          "): " + format_vector(basis, residual)});
        }
      }
    }
  }
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      bool nonzero = false;
      for (std::size_t w = 0; w < n && !nonzero; ++w) {
        nonzero = !t.product(u, v, w).empty();
      }
      if (!nonzero) {
        // L(u,v) = 0 makes both sides vanish.
        report.count_instance(n * n * n);
        continue;
      }
      const int uv = bit(t, u) + bit(t, v);
      for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
          for (std::size_t z = 0; z < n; ++z) {
            report.count_instance();
            const int px = bit(t, x), py = bit(t, y);
            Vector residual(n);
            add_product_right(residual, t, Rational(1), u, v, t.product(x, y, z));
            for (const auto& [m, c] : t.product(u, v, x)) {
              accumulate(residual, -c, t.product(m, y, z));
            }
            const Rational s1(-sign_bits(uv * px));
            for (const auto& [m, c] : t.product(u, v, y)) {
              accumulate(residual, s1 * c, t.product(x, m, z));
            }
            const Rational s2(-sign_bits(uv * (px + py)));
            add_product_right(residual, t, s2, x, y, t.product(u, v, z));
            if (!is_zero(residual)) {
              report.add({"derivation", {u, v, x, y, z},
                          "(" + basis.name(u) + ", " + basis.name(v) + "; " + basis.name(x) + ", " +
                              basis.name(y) + ", " + basis.name(z) + "): " +
                              format_vector(basis, residual)});
            }
          }
        }
      }
    }
  }
  return report;
}

CheckReport check_form_conditions(const TripleSystem& t) {
  const BilinearFormMatrix& g = require_form(t);
  CheckReport report("form_conditions");
  const std::size_t n = t.dim();
  const auto& basis = t.basis();
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      report.count_instance();
      if (t.parity(j) != t.parity(k) && !g(j, k).is_zero()) {
        report.add({"grade", {j, k},
                    "<" + basis.name(j) + "|" + basis.name(k) + "> = " + g(j, k).to_string() +
                        " pairs different parities"});
      }
      const Rational expected = Rational(t.delta() * graded_sign(t.parity(j), t.parity(k))) * g(j, k);
      if (g(k, j) != expected) {
        report.add({"supersymmetry", {j, k},
                    "<" + basis.name(k) + "|" + basis.name(j) + "> = " + g(k, j).to_string() +
                        ", expected " + expected.to_string()});
      }
    }
  }
  const auto lp = left_pairings(t, g);
  const auto rp = right_pairings(t, g);
  auto at = [n](std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
    return ((a * n + b) * n + c) * n + d;
  };
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < n; ++v) {
          report.count_instance();
          const int s = sign_bits((bit(t, x) + bit(t, y)) * bit(t, u));
          const Rational residual = lp[at(x, y, u, v)] + Rational(s) * rp[at(u, x, y, v)];
          if (!residual.is_zero()) {
            report.add({"invariance", {x, y, u, v},
                        "<" + triple_name(basis, x, y, u) + "|" + basis.name(v) + "> + (-1)^{(x+y)u}<" +
                            basis.name(u) + "|" + triple_name(basis, x, y, v) +
                            "> = " + residual.to_string()});
          }
        }
      }
    }
  }
  report.count_instance();
  if (!g.is_nondegenerate()) {
    report.add({"nondegenerate", {}, "form has rank " + std::to_string(g.rank()) + " < " + std::to_string(n)});
  }
  return report;
}

FormEquivalenceReport check_form_equivalences(const TripleSystem& t) {
  const BilinearFormMatrix& g = require_form(t);
  FormEquivalenceReport r;
  const std::size_t n = t.dim();
  const auto lp = left_pairings(t, g);
  const auto rp = right_pairings(t, g);
  auto at = [n](std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
    return ((a * n + b) * n + c) * n + d;
  };
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < n; ++v) {
          const int px = bit(t, x), py = bit(t, y), pu = bit(t, u), pv = bit(t, v);
          const std::vector<std::size_t> idx{x, y, u, v};
          const Rational& xyu_v = lp[at(x, y, u, v)];

          r.left.count_instance();
          const Rational left = xyu_v + Rational(sign_bits((px + py) * pu)) * rp[at(u, x, y, v)];
          if (!left.is_zero()) {
            r.left.add({"left", idx, "residual " + left.to_string()});
          }
          r.exchange.count_instance();
          const Rational exchange = xyu_v + Rational(sign_bits((pu + pv) * py)) * rp[at(x, u, v, y)];
          if (!exchange.is_zero()) {
            r.exchange.add({"exchange", idx, "residual " + exchange.to_string()});
          }
          r.swap.count_instance();
          const Rational swap = rp[at(x, y, u, v)] - Rational(sign_bits(px * py + pu * pv)) * rp[at(y, x, v, u)];
          if (!swap.is_zero()) {
            r.swap.add({"swap", idx, "residual " + swap.to_string()});
          }
          r.last_pair.count_instance();
          const Rational last = xyu_v + Rational(t.delta() * sign_bits(pu * pv)) * lp[at(x, y, v, u)];
          if (!last.is_zero()) {
            r.last_pair.add({"last_pair", idx, "residual " + last.to_string()});
          }
        }
      }
    }
  }
  return r;
}

MultOperator left_op(const TripleSystem& t, std::span<const Rational> x, std::span<const Rational> y) {
  if (x.size() != t.dim() || y.size() != t.dim()) {
    throw DimensionError("left_op: vector length mismatch");
  }
  const Parity px = homogeneous_parity(t.basis(), x).value_or(Parity::even());
  const Parity py = homogeneous_parity(t.basis(), y).value_or(Parity::even());
  const std::size_t n = t.dim();
  Matrix m(n, n);
  for (std::size_t l = 0; l < n; ++l) {
    const Vector col = t.product(x, y, unit_vector(n, l));
    for (std::size_t r = 0; r < n; ++r) {
      m(r, l) = col[r];
    }
  }
  return {std::move(m), px + py, MultOperator::Side::left};
}

MultOperator right_op(const TripleSystem& t, std::span<const Rational> x, std::span<const Rational> y) {
  if (x.size() != t.dim() || y.size() != t.dim()) {
    throw DimensionError("right_op: vector length mismatch");
  }
  const Parity px = homogeneous_parity(t.basis(), x).value_or(Parity::even());
  const Parity py = homogeneous_parity(t.basis(), y).value_or(Parity::even());
  const Parity pxy = px + py;
  const std::size_t n = t.dim();
  Matrix m(n, n);
  for (std::size_t l = 0; l < n; ++l) {
    const Vector col = t.product(unit_vector(n, l), x, y);
    const Rational s(graded_sign(t.parity(l), pxy));
    for (std::size_t r = 0; r < n; ++r) {
      m(r, l) = s * col[r];
    }
  }
  return {std::move(m), pxy, MultOperator::Side::right};
}

MultOperator left_op(const TripleSystem& t, std::size_t j, std::size_t k) {
  const std::size_t n = t.dim();
  if (j >= n || k >= n) {
    throw DimensionError("left_op: basis index out of range");
  }
  Matrix m(n, n);
  for (std::size_t l = 0; l < n; ++l) {
    for (const auto& [r, c] : t.product(j, k, l)) {
      m(r, l) = c;
    }
  }
  return {std::move(m), t.parity(j) + t.parity(k), MultOperator::Side::left};
}

MultOperator right_op(const TripleSystem& t, std::size_t j, std::size_t k) {
  const std::size_t n = t.dim();
  if (j >= n || k >= n) {
    throw DimensionError("right_op: basis index out of range");
  }
  const Parity pjk = t.parity(j) + t.parity(k);
  Matrix m(n, n);
  for (std::size_t l = 0; l < n; ++l) {
    const Rational s(graded_sign(t.parity(l), pjk));
    for (const auto& [r, c] : t.product(l, j, k)) {
      m(r, l) = s * c;
    }
  }
  return {std::move(m), pjk, MultOperator::Side::right};
}

Matrix graded_commutator(const MultOperator& a, const MultOperator& b) {
  Matrix out = a.matrix * b.matrix;
  Matrix ba = b.matrix * a.matrix;
  ba *= Rational(graded_sign(a.parity, b.parity));
  out -= ba;
  return out;
}

CheckReport check_operator_identities(const TripleSystem& t) {
  CheckReport report("operator_identities");
  const std::size_t n = t.dim();
  const auto& basis = t.basis();
  std::vector<MultOperator> left, right;
  left.reserve(n * n);
  right.reserve(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      left.push_back(left_op(t, j, k));
      right.push_back(right_op(t, j, k));
    }
  }
  auto L = [&](std::size_t j, std::size_t k) -> const MultOperator& { return left[j * n + k]; };
  auto R = [&](std::size_t j, std::size_t k) -> const MultOperator& { return right[j * n + k]; };
  auto pair_name = [&](std::size_t j, std::size_t k) { return "(" + basis.name(j) + ", " + basis.name(k) + ")"; };

  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      report.count_instance();
      Matrix residual = L(y, x).matrix;
      Matrix scaled = L(x, y).matrix;
      scaled *= Rational(t.delta() * graded_sign(t.parity(x), t.parity(y)));
      residual += scaled;
      if (!residual.is_zero()) {
        report.add({"left_skew", {x, y}, "L" + pair_name(y, x) + " + delta (-1)^{xy} L" + pair_name(x, y) + " != 0"});
      }
    }
  }
  // Linear extension in one slot: sum_m w_m Op(e_m, y) or Op(x, e_m).
  auto combine = [&](const std::vector<MultOperator>& ops, const SparseVector& w, std::size_t fixed,
                     bool first_slot) {
    Matrix out(n, n);
    for (const auto& [m, c] : w) {
      Matrix term = first_slot ? ops[m * n + fixed].matrix : ops[fixed * n + m].matrix;
      term *= c;
      out += term;
    }
    return out;
  };
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (L(u, v).matrix.is_zero()) {
        report.count_instance(2 * n * n);
        continue;
      }
      const int uv = t.parity(u).bit() + t.parity(v).bit();
      for (std::size_t x = 0; x < n; ++x) {
        const Rational s(sign_bits(uv * t.parity(x).bit()));
        for (std::size_t y = 0; y < n; ++y) {
          for (const bool use_right : {false, true}) {
            report.count_instance();
            const auto& ops = use_right ? right : left;
            const MultOperator& op = use_right ? R(x, y) : L(x, y);
            Matrix residual = graded_commutator(L(u, v), op);
            residual -= combine(ops, t.product(u, v, x), y, true);
            Matrix second = combine(ops, t.product(u, v, y), x, false);
            second *= s;
            residual -= second;
            if (!residual.is_zero()) {
              const char* name = use_right ? "right_derivation" : "left_derivation";
              report.add({name, {u, v, x, y}, std::string(name) + " fails for " + pair_name(u, v) + ", " + pair_name(x, y)});
            }
          }
        }
      }
    }
  }
  return report;
}

TraceFormResult trace_form(const TripleSystem& t) {
  const std::size_t n = t.dim();
  TraceFormResult r;
  // str R(e_j, e_k) = sum_l (-1)^l (-1)^{l(j+k)} T^l_{ljk}.
  auto str_right = [&](std::size_t j, std::size_t k) {
    Rational s;
    const int jk = bit(t, j) + bit(t, k);
    for (std::size_t l = 0; l < n; ++l) {
      for (const auto& [m, c] : t.product(l, j, k)) {
        if (m == l) {
          s += Rational(sign_bits(bit(t, l) + bit(t, l) * jk)) * c;
        }
      }
    }
    return s;
  };
  Matrix gram(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      gram(j, k) = (str_right(j, k) +
                    Rational(t.delta() * graded_sign(t.parity(j), t.parity(k))) * str_right(k, j)) /
                   Rational(2);
      r.left_supertrace.count_instance();
      Rational str_left;
      for (std::size_t l = 0; l < n; ++l) {
        for (const auto& [m, c] : t.product(j, k, l)) {
          if (m == l) {
            str_left += Rational(sign_bits(bit(t, l))) * c;
          }
        }
      }
      if (!str_left.is_zero()) {
        r.left_supertrace.add({"left_supertrace", {j, k},
                               "str L(" + t.basis().name(j) + ", " + t.basis().name(k) +
                                   ") = " + str_left.to_string()});
      }
    }
  }
  r.form = BilinearFormMatrix{std::move(gram), t.basis().parities()};
  r.nondegenerate = r.form.is_nondegenerate();
  return r;
}

TripleSystem triple_from_lie(const GradedAlgebra& a, const BilinearFormMatrix& g) {
  const auto cert = certify_quasi_classical(a, g);
  if (!cert.certified) {
    throw PreconditionError("algebra '" + a.name() + "' is not certified quasi-classical: " + cert.reason);
  }
  const std::size_t n = a.dim();
  std::vector<TripleEntry> entries;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t l = 0; l < n; ++l) {
        Vector v(n);
        for (const auto& [p, c] : a.bracket(j, k)) {
          accumulate(v, c, a.bracket(p, l));
        }
        if (!is_zero(v)) {
          entries.push_back({j, k, l, to_sparse(v)});
        }
      }
    }
  }
  return TripleSystem(a.name() + "_triple", a.basis(), 1, entries, g);
}

TripleSystem orthogonal_triple(const GradedBasis& basis, const BilinearFormMatrix& form, int delta) {
  validate_form_for_builder(basis, form, delta);
  const std::size_t n = basis.size();
  std::vector<TripleEntry> entries;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      const Rational s(-delta * graded_sign(basis.parity(j), basis.parity(k)));
      for (std::size_t l = 0; l < n; ++l) {
        Vector v(n);
        v[j] += form(k, l);
        v[k] += s * form(j, l);
        if (!is_zero(v)) {
          entries.push_back({j, k, l, to_sparse(v)});
        }
      }
    }
  }
  return TripleSystem("orthogonal", basis, delta, entries, form);
}

Rational check_projector_conditions(const GradedBasis& basis, const BilinearFormMatrix& form, int delta,
                                    const Matrix& p, std::optional<Rational> c) {
  validate_form_for_builder(basis, form, delta);
  const std::size_t n = basis.size();
  if (p.rows() != n || p.cols() != n) {
    throw PreconditionError("P must be " + std::to_string(n) + " x " + std::to_string(n));
  }
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t col = 0; col < n; ++col) {
      if (!p(r, col).is_zero() && basis.parity(r) != basis.parity(col)) {
        throw PreconditionError("P does not preserve the grading");
      }
    }
  }
  if (form.gram * p != p.transpose() * form.gram) {
    throw PreconditionError("P is not self-adjoint: <x|Py> != <Px|y>");
  }
  const Matrix p2 = p * p;
  const Rational scalar = c.value_or(p2(0, 0));
  if (p2 != Matrix::identity(n) * scalar) {
    throw PreconditionError("P^2 != " + scalar.to_string() + " Id");
  }
  return scalar;
}

TripleSystem projector_triple(const GradedBasis& basis, const BilinearFormMatrix& form, int delta,
                              const Matrix& p, std::optional<Rational> c) {
  const Rational scalar = check_projector_conditions(basis, form, delta, p, c);
  const std::size_t n = basis.size();
  const Matrix gp = form.gram * p;
  std::vector<TripleEntry> entries;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      const Rational s(-delta * graded_sign(basis.parity(j), basis.parity(k)));
      for (std::size_t l = 0; l < n; ++l) {
        Vector v(n);
        for (std::size_t m = 0; m < n; ++m) {
          v[m] += form(k, l) * p(m, j);
          v[m] += s * form(j, l) * p(m, k);
        }
        v[j] += gp(k, l);
        v[k] += s * gp(j, l);
        if (!is_zero(v)) {
          entries.push_back({j, k, l, to_sparse(v)});
        }
      }
    }
  }
  TripleSystem t("projector", basis, delta, entries, form);
  const CheckReport hom = check_projector_homomorphism(t, p, scalar);
  if (!hom.passed()) {
    throw VerificationError("[Px,Py,Pz] = cP[x,y,z] fails: " + hom.violations().front().detail);
  }
  return t;
}

CheckReport check_projector_homomorphism(const TripleSystem& t, const Matrix& p, const Rational& c) {
  CheckReport report("projector_homomorphism");
  const std::size_t n = t.dim();
  std::vector<Vector> images;
  for (std::size_t j = 0; j < n; ++j) {
    images.push_back(p.column(j));
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t l = 0; l < n; ++l) {
        report.count_instance();
        Vector residual = t.product(images[j], images[k], images[l]);
        Vector rhs = p * dense_product(t, j, k, l);
        axpy(residual, -c, rhs);
        if (!is_zero(residual)) {
          report.add({"projector_homomorphism", {j, k, l},
                      "(" + t.basis().name(j) + ", " + t.basis().name(k) + ", " + t.basis().name(l) +
                          "): " + format_vector(t.basis(), residual)});
        }
      }
    }
  }
  return report;
}

Subspace triple_span(const TripleSystem& t, const Subspace& s, const Subspace& u, const Subspace& w) {
  std::vector<Vector> out;
  for (const auto& a : s.basis()) {
    for (const auto& b : u.basis()) {
      for (const auto& c : w.basis()) {
        out.push_back(t.product(a, b, c));
      }
    }
  }
  return Subspace::span(t.dim(), out);
}

bool verify_triple_ideal(const TripleSystem& t, const Subspace& b) {
  const Subspace whole = Subspace::whole(t.dim());
  return b.contains(triple_span(t, b, whole, whole));
}

Subspace orthogonal_complement(const TripleSystem& t, const Subspace& b) {
  const BilinearFormMatrix& g = require_form(t);
  const std::size_t n = t.dim();
  if (b.is_zero()) {
    return Subspace::whole(n);
  }
  // Row i of the system: x -> <x|b_i> = sum_jk x_j g_jk (b_i)_k.
  std::vector<Vector> rows;
  for (const auto& v : b.basis()) {
    rows.push_back(g.gram * v);
  }
  return Subspace::span(n, nullspace(Matrix::from_rows(n, rows)));
}

TripleDecompositionReport verify_triple_decomposition(const TripleSystem& t,
                                                      const std::vector<Subspace>& parts) {
  TripleDecompositionReport r;
  const std::size_t n = t.dim();
  const Subspace whole = Subspace::whole(n);
  if (!t.form()) {
    r.orthogonal = false;
    r.failures.push_back("no bilinear form to test orthogonality");
  }
  Subspace total(n);
  std::size_t dim_sum = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const Subspace& b = parts[i];
    if (!verify_triple_ideal(t, b)) {
      r.ideals = false;
      r.failures.push_back("part " + std::to_string(i) + " is not an ideal");
    }
    if (triple_span(t, b, b, whole).is_zero()) {
      r.nonabelian = false;
      r.failures.push_back("part " + std::to_string(i) + " has [B,B,V] = 0");
    }
    for (std::size_t k = 0; k < parts.size(); ++k) {
      if (k == i) continue;
      if (!triple_span(t, b, parts[k], whole).is_zero()) {
        r.cross_products_vanish = false;
        r.failures.push_back("parts " + std::to_string(i) + " and " + std::to_string(k) +
                             " have [B_j,B_k,V] != 0");
      }
      if (k > i && t.form()) {
        bool orthogonal = true;
        for (const auto& x : b.basis()) {
          for (const auto& y : parts[k].basis()) {
            orthogonal = orthogonal && t.form()->evaluate(x, y).is_zero();
          }
        }
        if (!orthogonal) {
          r.orthogonal = false;
          r.failures.push_back("parts " + std::to_string(i) + " and " + std::to_string(k) +
                               " are not orthogonal");
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
  if (total.dim() != n) {
    r.spans_whole = false;
    r.failures.push_back("parts do not span the space");
  }
  return r;
}

TripleSystem direct_sum(const TripleSystem& a, const TripleSystem& b) {
  if (a.delta() != b.delta()) {
    throw PreconditionError("direct sum of triple systems with different delta");
  }
  const std::size_t na = a.dim();
  std::vector<TripleEntry> entries = a.entries();
  for (const auto& e : b.entries()) {
    SparseVector shifted;
    for (const auto& [m, c] : e.result) {
      shifted.emplace_back(m + na, c);
    }
    entries.push_back({e.a + na, e.b + na, e.c + na, std::move(shifted)});
  }
  std::optional<BilinearFormMatrix> form;
  if (a.form() && b.form()) {
    form = direct_sum(*a.form(), *b.form());
  }
  return TripleSystem(a.name() + "+" + b.name(), a.basis().direct_sum(b.basis()), a.delta(), entries,
                      std::move(form));
}

}  // namespace superbracket
