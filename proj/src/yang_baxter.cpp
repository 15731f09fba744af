#include "superbracket/yang_baxter.hpp"

#include <algorithm>
#include <string>

#include "superbracket/errors.hpp"

namespace superbracket {

namespace {

// Evaluated R as sparse columns: cols[c] = (row, value) pairs.
struct SparseR {
  std::size_t n = 0;
  std::vector<std::vector<std::pair<std::size_t, Rational>>> cols;
};

SparseR sparse_at(const RMatrix& r, const Rational& theta) {
  SparseR s;
  s.n = r.dimension();
  const std::size_t size = r.size();
  s.cols.resize(size);
  for (std::size_t row = 0; row < size; ++row) {
    for (std::size_t col = 0; col < size; ++col) {
      const PolyTheta& p = r(row, col);
      if (p.is_zero()) continue;
      Rational v = p(theta);
      if (!v.is_zero()) s.cols[col].emplace_back(row, std::move(v));
    }
  }
  return s;
}

enum class Slot { s12, s13, s23 };

// Sparse vector of V (x) V (x) V: (index, value) pairs sorted by index.
using TensorVector = std::vector<std::pair<std::size_t, Rational>>;

// Dense accumulator reused across applications; only touched slots are reset.
class Scratch {
 public:
  explicit Scratch(std::size_t size) : values_(size), used_(size, false) {}
  void add(std::size_t i, const Rational& a, const Rational& b) {
    if (!used_[i]) {
      used_[i] = true;
      touched_.push_back(i);
    }
    values_[i].add_product(a, b);
  }
  TensorVector take() {
    std::sort(touched_.begin(), touched_.end());
    TensorVector out;
    for (std::size_t i : touched_) {
      if (!values_[i].is_zero()) out.emplace_back(i, values_[i]);
      values_[i] = Rational();
      used_[i] = false;
    }
    touched_.clear();
    return out;
  }

 private:
  std::vector<Rational> values_;
  std::vector<bool> used_;
  std::vector<std::size_t> touched_;
};

// Applies R in the given pair of tensor slots.
TensorVector apply_slot(const SparseR& r, Slot slot, const TensorVector& x, Scratch& scratch) {
  const std::size_t n = r.n;
  for (const auto& [index, xv] : x) {
    const std::size_t a = index / (n * n), b = (index / n) % n, c = index % n;
    switch (slot) {
      case Slot::s12:
        for (const auto& [row, v] : r.cols[a * n + b]) scratch.add(row * n + c, xv, v);
        break;
      case Slot::s13:
        for (const auto& [row, v] : r.cols[a * n + c]) scratch.add(((row / n) * n + b) * n + row % n, xv, v);
        break;
      case Slot::s23:
        for (const auto& [row, v] : r.cols[b * n + c]) scratch.add(a * n * n + row, xv, v);
        break;
    }
  }
  return scratch.take();
}

// First index where two sorted sparse vectors differ, or nullopt.
std::optional<std::size_t> first_difference(const TensorVector& a, const TensorVector& b) {
  std::size_t i = 0;
  for (; i < a.size() && i < b.size(); ++i) {
    if (a[i].first != b[i].first) return std::min(a[i].first, b[i].first);
    if (a[i].second != b[i].second) return a[i].first;
  }
  if (i < a.size()) return a[i].first;
  if (i < b.size()) return b[i].first;
  return std::nullopt;
}

struct Step {
  const SparseR* r;
  Slot slot;
};

// Applies the steps right to left (the last one acts first).
TensorVector apply_chain(const std::vector<Step>& steps, TensorVector x, Scratch& scratch) {
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    x = apply_slot(*it->r, it->slot, x, scratch);
  }
  return x;
}

TensorVector basis_tensor(std::size_t i) { return {{i, Rational(1)}}; }

// Compares two operator chains on every basis vector of V^{(x)3}; returns
// (row, column) of the first differing entry.
std::optional<std::pair<std::size_t, std::size_t>> compare_chains(std::size_t n, const std::vector<Step>& lhs,
                                                                  const std::vector<Step>& rhs) {
  const std::size_t size = n * n * n;
  Scratch scratch(size);
  for (std::size_t col = 0; col < size; ++col) {
    const TensorVector e = basis_tensor(col);
    if (auto row = first_difference(apply_chain(lhs, e, scratch), apply_chain(rhs, e, scratch))) {
      return std::make_pair(*row, col);
    }
  }
  return std::nullopt;
}

const char* slot_name(Slot s) {
  switch (s) {
    case Slot::s12:
      return "R12";
    case Slot::s13:
      return "R13";
    case Slot::s23:
      return "R23";
  }
  return "";
}

std::size_t effective_degree(std::optional<std::size_t> degree, std::size_t natural) {
  return degree.value_or(natural);
}

bool all_even(const GradedBasis& basis) { return basis.all_even(); }

void require_even_symmetric(const GradedBasis& basis, const BilinearFormMatrix& form) {
  if (!all_even(basis)) {
    throw PreconditionError("spectral families are defined on even spaces only");
  }
  if (form.size() != basis.size()) {
    throw PreconditionError("form does not match the basis");
  }
  if (form.gram != form.gram.transpose()) {
    throw PreconditionError("form is not symmetric");
  }
  if (!form.is_nondegenerate()) {
    throw PreconditionError("form is degenerate");
  }
}

void require_passed(const CheckReport& report, const std::string& what) {
  if (!report.passed()) {
    const auto& v = report.violations().front();
    throw PreconditionError(what + " fails (" + v.condition + "): " + v.detail);
  }
}

}  // namespace

Vector TripleConstants::product(std::span<const Rational> x, std::span<const Rational> y,
                                std::span<const Rational> z) const {
  Vector out(n_);
  for (std::size_t j = 0; j < n_; ++j) {
    if (x[j].is_zero()) continue;
    for (std::size_t k = 0; k < n_; ++k) {
      if (y[k].is_zero()) continue;
      const Rational xy = x[j] * y[k];
      for (std::size_t l = 0; l < n_; ++l) {
        if (z[l].is_zero()) continue;
        const Rational s = xy * z[l];
        const auto p = product(j, k, l);
        for (std::size_t m = 0; m < n_; ++m) {
          if (!p[m].is_zero()) out[m].add_product(s, p[m]);
        }
      }
    }
  }
  return out;
}

bool TripleConstants::is_zero() const {
  for (const auto& v : values_) {
    if (!v.is_zero()) return false;
  }
  return true;
}

TripleConstants& TripleConstants::operator+=(const TripleConstants& rhs) {
  if (rhs.n_ != n_) {
    throw DimensionError("triple constants of different dimensions");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += rhs.values_[i];
  return *this;
}

TripleConstants& TripleConstants::operator*=(const Rational& s) {
  for (auto& v : values_) v *= s;
  return *this;
}

TripleConstants constants_of(const TripleSystem& t) {
  const std::size_t n = t.dim();
  TripleConstants out(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = 0; l < n; ++l)
        for (const auto& [m, c] : t.product(j, k, l)) out.at(j, k, l, m) = c;
  return out;
}

TripleConstants constants_of(const GeneralTripleSystem& g) {
  const std::size_t n = g.dim();
  TripleConstants out(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = 0; l < n; ++l)
        for (const auto& [m, c] : g.product(j, k, l)) out.at(j, k, l, m) = c;
  return out;
}

TripleConstants form_product(const BilinearFormMatrix& form) {
  const std::size_t n = form.size();
  TripleConstants out(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = 0; l < n; ++l) out.at(j, k, l, l) = form(j, k);
  return out;
}

TripleConstants outer_bracket_product(const GradedAlgebra& a) {
  const std::size_t n = a.dim();
  TripleConstants out(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      for (const auto& [p, c] : a.bracket(j, k))
        for (std::size_t l = 0; l < n; ++l)
          for (const auto& [m, d] : a.bracket(p, l)) out.at(j, k, l, m) += c * d;
  return out;
}

TripleConstants inner_bracket_product(const GradedAlgebra& a) {
  const std::size_t n = a.dim();
  TripleConstants out(n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l)
      for (const auto& [p, c] : a.bracket(k, l))
        for (std::size_t j = 0; j < n; ++j)
          for (const auto& [m, d] : a.bracket(j, p)) out.at(j, k, l, m) += c * d;
  return out;
}

ThetaTripleFamily::ThetaTripleFamily(std::string name, GradedBasis basis, BilinearFormMatrix form,
                                     std::vector<ThetaComponent> components)
    : name_(std::move(name)), basis_(std::move(basis)), form_(std::move(form)), components_(std::move(components)) {
  require_even_symmetric(basis_, form_);
  for (const auto& c : components_) {
    if (c.constants.dim() != basis_.size()) {
      throw PreconditionError("component '" + c.label + "' has the wrong dimension");
    }
  }
}

std::size_t ThetaTripleFamily::degree() const {
  int d = 0;
  for (const auto& c : components_) d = std::max(d, c.coefficient.degree());
  return static_cast<std::size_t>(d);
}

TripleConstants ThetaTripleFamily::evaluate(const Rational& theta) const {
  TripleConstants out(dim());
  for (const auto& c : components_) {
    const Rational p = c.coefficient(theta);
    if (p.is_zero()) continue;
    TripleConstants scaled = c.constants;
    scaled *= p;
    out += scaled;
  }
  return out;
}

DualBasis dual_basis(const BilinearFormMatrix& form) {
  if (form.gram != form.gram.transpose()) {
    throw PreconditionError("dual basis needs a symmetric form");
  }
  return {invert(form.gram)};
}

CheckReport check_dual_symmetry(const ThetaTripleFamily& f) {
  CheckReport report("dual_symmetry");
  const std::size_t n = f.dim();
  const auto& g = f.form();
  auto pair = [&](std::size_t a, std::span<const Rational> v) {
    Rational s;
    for (std::size_t m = 0; m < n; ++m) {
      if (!v[m].is_zero()) s.add_product(g(a, m), v[m]);
    }
    return s;
  };
  for (std::size_t i = 0; i < f.components().size(); ++i) {
    const auto& t = f.components()[i].constants;
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        for (std::size_t u = 0; u < n; ++u)
          for (std::size_t v = 0; v < n; ++v) {
            report.count_instance();
            const Rational lhs = pair(y, t.product(x, v, u));
            const Rational rhs = pair(x, t.product(y, u, v));
            if (lhs != rhs) {
              report.add({"dual_symmetry", {i, x, y, u, v},
                          "component '" + f.components()[i].label + "': <y|[x,v,u]> = " + lhs.to_string() +
                              ", <x|[y,u,v]> = " + rhs.to_string()});
            }
          }
  }
  return report;
}

CheckReport check_triple_commutation(const ThetaTripleFamily& f) {
  const std::size_t n = f.dim();
  if (n > quintuple_dimension_limit()) {
    throw DimensionGuardError("dimension " + std::to_string(n) + " exceeds the limit " +
                              std::to_string(quintuple_dimension_limit()) +
                              " for the quintuple check; set SUPERBRACKET_MAX_DIM to raise it");
  }
  CheckReport report("triple_commutation");
  const auto& comps = f.components();
  for (std::size_t i = 0; i < comps.size(); ++i) {
    for (std::size_t k = 0; k < comps.size(); ++k) {
      const auto& ti = comps[i].constants;
      const auto& tk = comps[k].constants;
      for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v)
          for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
              for (std::size_t z = 0; z < n; ++z) {
                report.count_instance();
                Vector residual(n);
                const auto xyz = ti.product(x, y, z);
                for (std::size_t m = 0; m < n; ++m) {
                  if (xyz[m].is_zero()) continue;
                  const auto outer = tk.product(u, v, m);
                  for (std::size_t p = 0; p < n; ++p) residual[p].add_product(xyz[m], outer[p]);
                }
                const auto uvz = tk.product(u, v, z);
                for (std::size_t m = 0; m < n; ++m) {
                  if (uvz[m].is_zero()) continue;
                  const auto outer = ti.product(x, y, m);
                  for (std::size_t p = 0; p < n; ++p) residual[p] -= uvz[m] * outer[p];
                }
                if (!is_zero(residual)) {
                  report.add({"triple_commutation", {i, k, u, v, x, y, z},
                              "components '" + comps[i].label + "', '" + comps[k].label +
                                  "' do not commute on " + f.basis().name(u) + "," + f.basis().name(v) + "," +
                                  f.basis().name(x) + "," + f.basis().name(y) + "," + f.basis().name(z)});
                }
              }
    }
  }
  return report;
}

std::size_t RMatrix::degree() const {
  int d = 0;
  for (const auto& p : entries_) d = std::max(d, p.degree());
  return static_cast<std::size_t>(d);
}

Matrix RMatrix::evaluate(const Rational& theta) const {
  Matrix m(size(), size());
  for (std::size_t r = 0; r < size(); ++r)
    for (std::size_t c = 0; c < size(); ++c)
      if (!(*this)(r, c).is_zero()) m(r, c) = (*this)(r, c)(theta);
  return m;
}

namespace {

// out[(j, m), (a, b)] = sum_k D_jk T^m_{k,a,b} (second expression) or
// out[(m, j), (a, b)] = sum_k D_jk T^m_{k,b,a} (swapped expression).
RMatrix assemble_r(const ThetaTripleFamily& f, bool swapped) {
  const std::size_t n = f.dim();
  const Matrix d = dual_basis(f.form()).matrix;
  RMatrix r(n);
  for (const auto& comp : f.components()) {
    if (comp.coefficient.is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
          Vector contracted(n);
          for (std::size_t k = 0; k < n; ++k) {
            if (d(j, k).is_zero()) continue;
            const auto t = swapped ? comp.constants.product(k, b, a) : comp.constants.product(k, a, b);
            for (std::size_t m = 0; m < n; ++m) {
              if (!t[m].is_zero()) contracted[m].add_product(d(j, k), t[m]);
            }
          }
          for (std::size_t m = 0; m < n; ++m) {
            if (contracted[m].is_zero()) continue;
            const std::size_t row = swapped ? m * n + j : j * n + m;
            r(row, a * n + b) += comp.coefficient * contracted[m];
          }
        }
  }
  return r;
}

}  // namespace

RMatrix build_r_swapped(const ThetaTripleFamily& f) { return assemble_r(f, true); }

RMatrix build_r(const ThetaTripleFamily& f) {
  require_passed(check_dual_symmetry(f), "dual symmetry <y|[x,v,u]> = <x|[y,u,v]>");
  RMatrix r = assemble_r(f, false);
  const RMatrix swapped = assemble_r(f, true);
  for (std::size_t row = 0; row < r.size(); ++row) {
    for (std::size_t col = 0; col < r.size(); ++col) {
      if (r(row, col) != swapped(row, col)) {
        throw VerificationError("the two expressions for R differ at (" + std::to_string(row) + ", " +
                                std::to_string(col) + "): " + r(row, col).to_string() + " vs " +
                                swapped(row, col).to_string());
      }
    }
  }
  return r;
}

bool ybe_holds_at(const RMatrix& r, const Rational& t, const Rational& t2) {
  const SparseR a = sparse_at(r, t), b = sparse_at(r, t + t2), c = sparse_at(r, t2);
  return !compare_chains(r.dimension(), {{&a, Slot::s12}, {&b, Slot::s13}, {&c, Slot::s23}},
                         {{&c, Slot::s23}, {&b, Slot::s13}, {&a, Slot::s12}});
}

bool commutation_holds_at(const RMatrix& r, const Rational& t, const Rational& t1) {
  const SparseR a = sparse_at(r, t), b = sparse_at(r, t1);
  for (Slot s : {Slot::s12, Slot::s13, Slot::s23}) {
    for (Slot q : {Slot::s12, Slot::s13, Slot::s23}) {
      if (compare_chains(r.dimension(), {{&a, s}, {&b, q}}, {{&b, q}, {&a, s}})) return false;
    }
  }
  return true;
}

namespace {

// Sum of the three commutators applied to every basis vector.
std::optional<std::pair<std::size_t, std::size_t>> classical_failure(const SparseR& a, const SparseR& b,
                                                                     const SparseR& c) {
  const std::size_t n = a.n;
  const std::size_t size = n * n * n;
  Scratch scratch(size);
  Scratch total(size);
  const std::vector<std::pair<std::vector<Step>, int>> terms{
      {{{&a, Slot::s12}, {&b, Slot::s13}}, 1},  {{{&b, Slot::s13}, {&a, Slot::s12}}, -1},
      {{{&a, Slot::s12}, {&c, Slot::s23}}, 1},  {{{&c, Slot::s23}, {&a, Slot::s12}}, -1},
      {{{&b, Slot::s13}, {&c, Slot::s23}}, 1},  {{{&c, Slot::s23}, {&b, Slot::s13}}, -1}};
  for (std::size_t col = 0; col < size; ++col) {
    const TensorVector e = basis_tensor(col);
    for (const auto& [chain, sign] : terms) {
      const Rational s(sign);
      for (const auto& [i, v] : apply_chain(chain, e, scratch)) total.add(i, s, v);
    }
    const TensorVector sum = total.take();
    if (!sum.empty()) return std::make_pair(sum.front().first, col);
  }
  return std::nullopt;
}

}  // namespace

bool classical_ybe_holds_at(const RMatrix& r, const Rational& t, const Rational& t1, const Rational& t2) {
  return !classical_failure(sparse_at(r, t), sparse_at(r, t1), sparse_at(r, t2));
}

GridVerdict check_ybe(const RMatrix& r, std::optional<std::size_t> degree) {
  GridVerdict v;
  v.check = "ybe";
  v.grid_max = 3 * effective_degree(degree, r.degree());
  for (std::size_t i = 0; i <= v.grid_max && v.passed; ++i) {
    for (std::size_t k = 0; k <= v.grid_max && v.passed; ++k) {
      const Rational t(static_cast<long>(i)), t2(static_cast<long>(k));
      const SparseR a = sparse_at(r, t), b = sparse_at(r, t + t2), c = sparse_at(r, t2);
      ++v.points_checked;
      if (auto diff = compare_chains(r.dimension(), {{&a, Slot::s12}, {&b, Slot::s13}, {&c, Slot::s23}},
                                     {{&c, Slot::s23}, {&b, Slot::s13}, {&a, Slot::s12}})) {
        v.passed = false;
        v.failure = GridVerdict::Failure{{t, t + t2, t2}, diff->first, diff->second,
                                         "R12 R13 R23 != R23 R13 R12 at theta = " + t.to_string() +
                                             ", theta'' = " + t2.to_string()};
      }
    }
  }
  return v;
}

GridVerdict check_commutation(const RMatrix& r, std::optional<std::size_t> degree) {
  GridVerdict v;
  v.check = "commutation";
  v.grid_max = 3 * effective_degree(degree, r.degree());
  const std::vector<Slot> slots{Slot::s12, Slot::s13, Slot::s23};
  for (std::size_t i = 0; i <= v.grid_max && v.passed; ++i) {
    const Rational t(static_cast<long>(i));
    const SparseR a = sparse_at(r, t);
    for (std::size_t k = 0; k <= v.grid_max && v.passed; ++k) {
      const Rational t1(static_cast<long>(k));
      const SparseR b = sparse_at(r, t1);
      ++v.points_checked;
      // With the grid symmetric in (t, t1), unordered slot pairs suffice.
      for (std::size_t p = 0; p < slots.size() && v.passed; ++p) {
        for (std::size_t q = p; q < slots.size() && v.passed; ++q) {
          if (auto diff = compare_chains(r.dimension(), {{&a, slots[p]}, {&b, slots[q]}},
                                         {{&b, slots[q]}, {&a, slots[p]}})) {
            v.passed = false;
            v.failure = GridVerdict::Failure{{t, t1}, diff->first, diff->second,
                                             std::string("[") + slot_name(slots[p]) + "(" + t.to_string() + "), " +
                                                 slot_name(slots[q]) + "(" + t1.to_string() + ")] != 0"};
          }
        }
      }
    }
  }
  return v;
}

GridVerdict check_classical_ybe(const RMatrix& r, std::optional<std::size_t> degree) {
  GridVerdict v;
  v.check = "classical_ybe";
  v.grid_max = effective_degree(degree, r.degree());
  std::vector<SparseR> values;
  for (std::size_t i = 0; i <= v.grid_max; ++i) values.push_back(sparse_at(r, Rational(static_cast<long>(i))));
  for (std::size_t i = 0; i <= v.grid_max && v.passed; ++i)
    for (std::size_t j = 0; j <= v.grid_max && v.passed; ++j)
      for (std::size_t k = 0; k <= v.grid_max && v.passed; ++k) {
        ++v.points_checked;
        if (auto diff = classical_failure(values[i], values[j], values[k])) {
          const std::vector<Rational> point{Rational(static_cast<long>(i)), Rational(static_cast<long>(j)),
                                            Rational(static_cast<long>(k))};
          v.passed = false;
          v.failure = GridVerdict::Failure{point, diff->first, diff->second,
                                           "classical relation fails at (" + point[0].to_string() + ", " +
                                               point[1].to_string() + ", " + point[2].to_string() + ")"};
        }
      }
  return v;
}

TripleFormVerdict check_ybe_triple_form(const ThetaTripleFamily& f, std::optional<std::size_t> degree) {
  TripleFormVerdict out;
  out.verdict.check = "ybe_triple_form";
  out.verdict.grid_max = 3 * effective_degree(degree, f.degree());
  const std::size_t n = f.dim();
  const Matrix d = dual_basis(f.form()).matrix;
  for (std::size_t i = 0; i <= out.verdict.grid_max && out.verdict.passed; ++i) {
    for (std::size_t k = 0; k <= out.verdict.grid_max && out.verdict.passed; ++k) {
      const Rational t(static_cast<long>(i)), t2(static_cast<long>(k));
      const TripleConstants at_t = f.evaluate(t), at_t1 = f.evaluate(t + t2), at_t2 = f.evaluate(t2);
      ++out.verdict.points_checked;
      // middle[(a*n + b)*n + j] = [e_a, e_j, e_b] at t'.
      // dual(T)[(a*n + b)*n + j] = [e^j, e_a, e_b] at a given parameter.
      auto middle = [&](const TripleConstants& c) {
        std::vector<Vector> out_v(n * n * n);
        for (std::size_t a = 0; a < n; ++a)
          for (std::size_t b = 0; b < n; ++b)
            for (std::size_t j = 0; j < n; ++j) {
              const auto p = c.product(a, j, b);
              out_v[(a * n + b) * n + j] = Vector(p.begin(), p.end());
            }
        return out_v;
      };
      auto dual = [&](const TripleConstants& c) {
        std::vector<Vector> out_v(n * n * n, Vector(n));
        for (std::size_t a = 0; a < n; ++a)
          for (std::size_t b = 0; b < n; ++b)
            for (std::size_t j = 0; j < n; ++j)
              for (std::size_t q = 0; q < n; ++q) {
                if (d(j, q).is_zero()) continue;
                const auto p = c.product(q, a, b);
                for (std::size_t m = 0; m < n; ++m) {
                  if (!p[m].is_zero()) out_v[(a * n + b) * n + j][m].add_product(d(j, q), p[m]);
                }
              }
        return out_v;
      };
      const auto mid_t1 = middle(at_t1);
      const auto dual_t = dual(at_t);
      const auto dual_t2 = dual(at_t2);
      // sum_j [w, A_j, C_j]_c with A_j, C_j vectors.
      auto contract = [&](const TripleConstants& c, std::size_t w, const std::vector<Vector>& a_tab,
                          std::size_t a_off, const std::vector<Vector>& c_tab, std::size_t c_off) {
        Matrix pq(n, n);
        for (std::size_t j = 0; j < n; ++j) {
          const Vector& av = a_tab[a_off + j];
          const Vector& cv = c_tab[c_off + j];
          for (std::size_t p = 0; p < n; ++p) {
            if (av[p].is_zero()) continue;
            for (std::size_t q = 0; q < n; ++q) {
              if (!cv[q].is_zero()) pq(p, q).add_product(av[p], cv[q]);
            }
          }
        }
        Vector res(n);
        for (std::size_t p = 0; p < n; ++p)
          for (std::size_t q = 0; q < n; ++q) {
            if (pq(p, q).is_zero()) continue;
            const auto prod = c.product(w, p, q);
            for (std::size_t m = 0; m < n; ++m) {
              if (!prod[m].is_zero()) res[m].add_product(pq(p, q), prod[m]);
            }
          }
        return res;
      };
      for (std::size_t u = 0; u < n && out.verdict.passed; ++u)
        for (std::size_t v = 0; v < n && out.verdict.passed; ++v)
          for (std::size_t x = 0; x < n && out.verdict.passed; ++x)
            for (std::size_t y = 0; y < n && out.verdict.passed; ++y)
              for (std::size_t z = 0; z < n && out.verdict.passed; ++z) {
                // lhs = sum_j [v, [u,e_j,z]_t', [e^j,x,y]_t]_t''
                const Vector lhs = contract(at_t2, v, mid_t1, (u * n + z) * n, dual_t, (x * n + y) * n);
                // rhs = sum_j [u, [v,e_j,x]_t', [e^j,z,y]_t'']_t
                const Vector rhs = contract(at_t, u, mid_t1, (v * n + x) * n, dual_t2, (z * n + y) * n);
                out.lhs_identically_zero = out.lhs_identically_zero && is_zero(lhs);
                out.rhs_identically_zero = out.rhs_identically_zero && is_zero(rhs);
                if (lhs != rhs) {
                  out.verdict.passed = false;
                  out.verdict.failure = GridVerdict::Failure{
                      {t, t + t2, t2}, ((u * n + v) * n + x) * n + y, z,
                      "triple-product relation fails at theta = " + t.to_string() + ", theta'' = " +
                          t2.to_string() + " on " + f.basis().name(u) + "," + f.basis().name(v) + "," +
                          f.basis().name(x) + "," + f.basis().name(y) + "," + f.basis().name(z)};
                }
              }
    }
  }
  return out;
}

ThetaTripleFamily lie_triple_family_candidate(const TripleSystem& t, const PolyTheta& f, const PolyTheta& g) {
  if (t.delta() != 1) {
    throw PreconditionError("the spectral family needs a delta = 1 triple system");
  }
  if (!t.form()) {
    throw PreconditionError("the spectral family needs a quasi-classical form on the triple system");
  }
  require_even_symmetric(t.basis(), *t.form());
  require_passed(check_triple_axioms(t), "triple system axioms");
  require_passed(check_form_conditions(t), "quasi-classical form conditions");
  return ThetaTripleFamily(t.name() + "_spectral", t.basis(), *t.form(),
                           {{constants_of(t), f, "triple"}, {form_product(*t.form()), g, "form"}});
}

ThetaTripleFamily lie_triple_family(const TripleSystem& t, const PolyTheta& f, const PolyTheta& g) {
  ThetaTripleFamily fam = lie_triple_family_candidate(t, f, g);
  ThetaTripleFamily bare(t.name(), t.basis(), *t.form(), {{constants_of(t), PolyTheta::constant(1), "triple"}});
  require_passed(check_triple_commutation(bare), "[u,v,[x,y,z]] = [x,y,[u,v,z]]");
  return fam;
}

namespace {

void require_quasi_classical_even(const GradedAlgebra& a, const BilinearFormMatrix& form) {
  require_even_symmetric(a.basis(), form);
  require_passed(check_invariant_form(a, form), "invariant form conditions");
}

}  // namespace

ThetaTripleFamily nilpotent_family(const GradedAlgebra& a, const BilinearFormMatrix& form, const PolyTheta& f1,
                                   const PolyTheta& f2, const PolyTheta& g) {
  require_quasi_classical_even(a, form);
  if (!lower_central_vanishes_at(a, 5)) {
    throw PreconditionError("algebra '" + a.name() + "' does not satisfy L_5 = 0");
  }
  ThetaTripleFamily fam(a.name() + "_nilpotent_spectral", a.basis(), form,
                        {{outer_bracket_product(a), f1, "outer_bracket"},
                         {inner_bracket_product(a), f2, "inner_bracket"},
                         {form_product(form), g, "form"}});
  require_passed(check_dual_symmetry(fam), "dual symmetry");
  return fam;
}

ThetaTripleFamily deep_nilpotent_family(const GradedAlgebra& a, const BilinearFormMatrix& form, const PolyTheta& f1,
                                        const PolyTheta& f2) {
  require_quasi_classical_even(a, form);
  if (!lower_central_vanishes_at(a, 7)) {
    throw PreconditionError("algebra '" + a.name() + "' does not satisfy L_7 = 0");
  }
  ThetaTripleFamily fam(a.name() + "_deep_nilpotent_spectral", a.basis(), form,
                        {{inner_bracket_product(a), f1, "inner_bracket"},
                         {outer_bracket_product(a), f2, "outer_bracket"}});
  require_passed(check_dual_symmetry(fam), "dual symmetry");
  return fam;
}

ThetaTripleFamily scalar_family(const GradedBasis& basis, const BilinearFormMatrix& form, const PolyTheta& g) {
  return ThetaTripleFamily("scalar_spectral", basis, form, {{form_product(form), g, "form"}});
}

RMatrix commuting_r_matrix(const std::vector<Matrix>& j, const std::vector<std::vector<PolyTheta>>& f) {
  if (j.empty()) {
    throw PreconditionError("at least one operator J is required");
  }
  const std::size_t n = j.front().rows();
  for (const auto& m : j) {
    if (m.rows() != n || m.cols() != n) {
      throw PreconditionError("all J must be square of the same size");
    }
  }
  if (f.size() != j.size()) {
    throw PreconditionError("coefficient table must be " + std::to_string(j.size()) + " x " +
                            std::to_string(j.size()));
  }
  for (const auto& row : f) {
    if (row.size() != j.size()) {
      throw PreconditionError("coefficient table must be square");
    }
  }
  for (std::size_t a = 0; a < j.size(); ++a) {
    for (std::size_t b = a + 1; b < j.size(); ++b) {
      if (j[a] * j[b] != j[b] * j[a]) {
        throw PreconditionError("J" + std::to_string(a + 1) + " and J" + std::to_string(b + 1) + " do not commute");
      }
    }
  }
  RMatrix r(n);
  for (std::size_t mu = 0; mu < j.size(); ++mu) {
    for (std::size_t nu = 0; nu < j.size(); ++nu) {
      if (f[mu][nu].is_zero()) continue;
      for (std::size_t p = 0; p < n; ++p)
        for (std::size_t a = 0; a < n; ++a) {
          if (j[mu](p, a).is_zero()) continue;
          for (std::size_t q = 0; q < n; ++q)
            for (std::size_t b = 0; b < n; ++b) {
              if (j[nu](q, b).is_zero()) continue;
              r(p * n + q, a * n + b) += f[mu][nu] * (j[mu](p, a) * j[nu](q, b));
            }
        }
    }
  }
  return r;
}

}  // namespace superbracket
