#include "superbracket/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "superbracket/errors.hpp"

namespace superbracket {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw InputError(where + ": " + what);
}

const Json& require(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) fail(where, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) fail(where, std::string("missing field '") + key + "'");
  return *it;
}

void reject_unknown(const Json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) fail(where, "unknown field '" + key + "'");
  }
}

const Json& require_array(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array");
  return j;
}

std::string require_string(const Json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a string");
  return j.get<std::string>();
}

int require_sign(const Json& j, const std::string& where) {
  if (!j.is_number_integer() || (j.get<long>() != 1 && j.get<long>() != -1)) fail(where, "expected 1 or -1");
  return j.get<int>();
}

std::string item(const std::string& where, std::size_t i) { return where + "[" + std::to_string(i) + "]"; }

GradedBasis basis_from_json(const Json& j, const std::string& where) {
  std::vector<std::string> names;
  std::vector<Parity> parities;
  const Json& arr = require_array(j, where);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string w = item(where, i);
    reject_unknown(arr[i], {"name", "grade"}, w);
    names.push_back(require_string(require(arr[i], "name", w), w + ".name"));
    const Json& grade = require(arr[i], "grade", w);
    if (!grade.is_number_integer() || (grade.get<long>() != 0 && grade.get<long>() != 1)) {
      fail(w + ".grade", "expected 0 or 1");
    }
    parities.emplace_back(grade.get<int>());
  }
  if (names.empty()) fail(where, "basis is empty");
  try {
    return GradedBasis(std::move(names), std::move(parities));
  } catch (const InputError& e) {
    fail(where, e.what());
  }
}

Json basis_to_json(const GradedBasis& b) {
  Json out = Json::array();
  for (std::size_t i = 0; i < b.size(); ++i) out.push_back({{"name", b.name(i)}, {"grade", b.parity(i).bit()}});
  return out;
}

std::size_t index_from_json(const GradedBasis& b, const Json& j, const std::string& where) {
  const std::string name = require_string(j, where);
  const auto idx = b.index_of(name);
  if (!idx) fail(where, "unknown basis element '" + name + "'");
  return *idx;
}

Json sparse_to_json(const GradedBasis& b, const SparseVector& v) {
  Json out = Json::array();
  for (const auto& [i, c] : v) out.push_back({{"coeff", rational_to_json(c)}, {"basis", b.name(i)}});
  return out;
}

SparseVector sparse_from_json(const GradedBasis& b, const Json& j, const std::string& where) {
  Vector dense(b.size());
  std::set<std::size_t> seen;
  const Json& arr = require_array(j, where);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string w = item(where, i);
    reject_unknown(arr[i], {"coeff", "basis"}, w);
    const std::size_t idx = index_from_json(b, require(arr[i], "basis", w), w + ".basis");
    if (!seen.insert(idx).second) fail(w, "basis element '" + b.name(idx) + "' repeated");
    dense[idx] = rational_from_json(require(arr[i], "coeff", w), w + ".coeff");
  }
  return to_sparse(dense);
}

Json form_to_json(const BilinearFormMatrix& f, const GradedBasis& b) {
  Json out = Json::array();
  for (std::size_t j = 0; j < f.size(); ++j)
    for (std::size_t k = 0; k < f.size(); ++k)
      if (!f(j, k).is_zero()) {
        out.push_back({{"left", b.name(j)}, {"right", b.name(k)}, {"value", rational_to_json(f(j, k))}});
      }
  return out;
}

BilinearFormMatrix form_from_json(const GradedBasis& b, const Json& j, const std::string& where) {
  BilinearFormMatrix f{Matrix(b.size(), b.size()), b.parities()};
  std::set<std::pair<std::size_t, std::size_t>> seen;
  const Json& arr = require_array(j, where);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string w = item(where, i);
    reject_unknown(arr[i], {"left", "right", "value"}, w);
    const std::size_t l = index_from_json(b, require(arr[i], "left", w), w + ".left");
    const std::size_t r = index_from_json(b, require(arr[i], "right", w), w + ".right");
    if (!seen.emplace(l, r).second) fail(w, "pair (" + b.name(l) + ", " + b.name(r) + ") repeated");
    f.gram(l, r) = rational_from_json(require(arr[i], "value", w), w + ".value");
  }
  return f;
}

SparseVector scaled(const SparseVector& v, const Rational& s) {
  SparseVector out;
  for (const auto& [i, c] : v) out.emplace_back(i, c * s);
  return out;
}

Json triple_entries_to_json(const GradedBasis& b, const std::vector<TripleEntry>& entries) {
  Json out = Json::array();
  for (const auto& e : entries) {
    out.push_back({{"a", b.name(e.a)}, {"b", b.name(e.b)}, {"c", b.name(e.c)}, {"result", sparse_to_json(b, e.result)}});
  }
  return out;
}

std::vector<TripleEntry> triple_entries_from_json(const GradedBasis& b, const Json& j, const std::string& where) {
  std::vector<TripleEntry> out;
  const Json& arr = require_array(j, where);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string w = item(where, i);
    reject_unknown(arr[i], {"a", "b", "c", "result"}, w);
    out.push_back({index_from_json(b, require(arr[i], "a", w), w + ".a"),
                   index_from_json(b, require(arr[i], "b", w), w + ".b"),
                   index_from_json(b, require(arr[i], "c", w), w + ".c"),
                   sparse_from_json(b, require(arr[i], "result", w), w + ".result")});
  }
  return out;
}

std::pair<std::size_t, std::size_t> line_and_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace

Json parse_json(std::string_view text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    const auto [line, column] = line_and_column(text, e.byte);
    std::string what = e.what();
    // Drop the library prefix "[json.exception.parse_error.101] parse error at line L, column C: ".
    if (const auto colon = what.find(": "); colon != std::string::npos) what = what.substr(colon + 2);
    throw InputError(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + what);
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path.string() + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str(), path.string());
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

void write_json_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError(path.string() + ": cannot write file");
  out << dump_json(j);
  if (!out) throw InputError(path.string() + ": write failed");
}

Json rational_to_json(const Rational& r) { return r.to_string(); }

Rational rational_from_json(const Json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "rationals are written as strings \"p\" or \"p/q\"");
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    fail(where, e.what());
  }
}

Json poly_to_json(const PolyTheta& p) {
  Json out = Json::array();
  for (const auto& c : p.coefficients()) out.push_back(rational_to_json(c));
  return out;
}

PolyTheta poly_from_json(const Json& j, const std::string& where) {
  std::vector<Rational> coeffs;
  const Json& arr = require_array(j, where);
  for (std::size_t i = 0; i < arr.size(); ++i) coeffs.push_back(rational_from_json(arr[i], item(where, i)));
  return PolyTheta(std::move(coeffs));
}

Json matrix_to_json(const Matrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (const auto& x : m.row(r)) row.push_back(rational_to_json(x));
    out.push_back(std::move(row));
  }
  return out;
}

Matrix matrix_from_json(const Json& j, const std::string& where) {
  const Json& rows = require_array(j, where);
  if (rows.empty()) fail(where, "matrix has no rows");
  const std::size_t cols = require_array(rows[0], item(where, 0)).size();
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const Json& row = require_array(rows[r], item(where, r));
    if (row.size() != cols) fail(item(where, r), "rows have different lengths");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rational_from_json(row[c], item(item(where, r), c));
  }
  return m;
}

Json algebra_to_json(const GradedAlgebra& a, const std::optional<BilinearFormMatrix>& form) {
  const auto& b = a.basis();
  Json brackets = Json::array();
  auto emit = [&](std::size_t j, std::size_t k) {
    brackets.push_back({{"left", b.name(j)}, {"right", b.name(k)}, {"result", sparse_to_json(b, a.bracket(j, k))}});
  };
  // A mirror is written only where the loader's completion would differ.
  for (std::size_t j = 0; j < a.dim(); ++j)
    for (std::size_t k = j; k < a.dim(); ++k) {
      const SparseVector& v = a.bracket(j, k);
      const SparseVector& w = a.bracket(k, j);
      if (v.empty() && w.empty()) continue;
      emit(j, k);
      if (k != j && w != scaled(v, Rational(-graded_sign(b.parity(j), b.parity(k))))) emit(k, j);
    }
  Json out{{"name", a.name()}, {"basis", basis_to_json(b)}, {"brackets", std::move(brackets)}};
  if (form) out["form"] = form_to_json(*form, b);
  return out;
}

LoadedAlgebra algebra_from_json(const Json& j) {
  const std::string where = "algebra";
  if (!j.is_object()) fail(where, "expected an object");
  reject_unknown(j, {"name", "basis", "brackets", "form"}, where);
  const std::string name = require_string(require(j, "name", where), "name");
  GradedBasis basis = basis_from_json(require(j, "basis", where), "basis");
  std::vector<BracketEntry> entries;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  const Json& arr = require_array(require(j, "brackets", where), "brackets");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string w = item("brackets", i);
    reject_unknown(arr[i], {"left", "right", "result"}, w);
    const std::size_t l = index_from_json(basis, require(arr[i], "left", w), w + ".left");
    const std::size_t r = index_from_json(basis, require(arr[i], "right", w), w + ".right");
    if (!seen.emplace(l, r).second) fail(w, "pair (" + basis.name(l) + ", " + basis.name(r) + ") repeated");
    entries.push_back({l, r, sparse_from_json(basis, require(arr[i], "result", w), w + ".result")});
  }
  LoadedAlgebra out;
  if (j.contains("form")) out.form = form_from_json(basis, j["form"], "form");
  out.algebra = GradedAlgebra(name, std::move(basis), entries);
  return out;
}

Json triple_to_json(const TripleSystem& t) {
  const auto& b = t.basis();
  const std::size_t n = t.dim();
  std::vector<TripleEntry> kept;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j; k < n; ++k)
      for (std::size_t l = 0; l < n; ++l) {
        const SparseVector& v = t.product(j, k, l);
        const SparseVector& w = t.product(k, j, l);
        if (v.empty() && w.empty()) continue;
        kept.push_back({j, k, l, v});
        const Rational s(-t.delta() * graded_sign(b.parity(j), b.parity(k)));
        if (k != j && w != scaled(v, s)) kept.push_back({k, j, l, w});
      }
  Json out{{"name", t.name()}, {"delta", t.delta()}, {"basis", basis_to_json(b)},
           {"triples", triple_entries_to_json(b, kept)}};
  if (t.form()) out["form"] = form_to_json(*t.form(), b);
  return out;
}

TripleSystem triple_from_json(const Json& j) {
  const std::string where = "triple system";
  if (!j.is_object()) fail(where, "expected an object");
  reject_unknown(j, {"name", "delta", "basis", "triples", "form"}, where);
  const std::string name = require_string(require(j, "name", where), "name");
  const int delta = require_sign(require(j, "delta", where), "delta");
  GradedBasis basis = basis_from_json(require(j, "basis", where), "basis");
  auto entries = triple_entries_from_json(basis, require(j, "triples", where), "triples");
  std::optional<BilinearFormMatrix> form;
  if (j.contains("form")) form = form_from_json(basis, j["form"], "form");
  try {
    return TripleSystem(name, std::move(basis), delta, entries, std::move(form));
  } catch (const InputError& e) {
    fail(where, e.what());
  }
}

Json general_triple_to_json(const GeneralTripleSystem& g) {
  const auto& b = g.basis();
  Json out{{"name", g.name()},
           {"kind", to_string(g.kind())},
           {"epsilon", g.epsilon()},
           {"delta", g.delta()},
           {"basis", basis_to_json(b)},
           {"triples", triple_entries_to_json(b, g.entries())}};
  if (g.form()) out["form"] = form_to_json(*g.form(), b);
  if (g.p_operator()) out["p_operator"] = matrix_to_json(*g.p_operator());
  if (g.c()) out["c"] = rational_to_json(*g.c());
  return out;
}

GeneralTripleSystem general_triple_from_json(const Json& j) {
  const std::string where = "triple system";
  if (!j.is_object()) fail(where, "expected an object");
  reject_unknown(j, {"name", "kind", "epsilon", "delta", "basis", "triples", "form", "p_operator", "c"}, where);
  const std::string name = require_string(require(j, "name", where), "name");
  FkKind kind;
  try {
    kind = parse_fk_kind(require_string(require(j, "kind", where), "kind"));
  } catch (const InputError& e) {
    fail("kind", e.what());
  }
  const int epsilon = j.contains("epsilon") ? require_sign(j["epsilon"], "epsilon") : -1;
  const int delta = j.contains("delta") ? require_sign(j["delta"], "delta") : (kind == FkKind::jordan ? -epsilon : 1);
  GradedBasis basis = basis_from_json(require(j, "basis", where), "basis");
  auto entries = triple_entries_from_json(basis, require(j, "triples", where), "triples");
  std::optional<BilinearFormMatrix> form;
  if (j.contains("form")) form = form_from_json(basis, j["form"], "form");
  std::optional<Matrix> p;
  if (j.contains("p_operator")) p = matrix_from_json(j["p_operator"], "p_operator");
  std::optional<Rational> c;
  if (j.contains("c")) c = rational_from_json(j["c"], "c");
  try {
    return GeneralTripleSystem(name, std::move(basis), kind, epsilon, delta, entries, std::move(form), std::move(p),
                               std::move(c));
  } catch (const InputError& e) {
    fail(where, e.what());
  }
}

Json r_matrix_to_json(const RMatrix& r, const GradedBasis& basis, const std::optional<Rational>& theta) {
  if (basis.size() != r.dimension()) throw DimensionError("basis size does not match the R-matrix");
  Json entries = Json::array();
  for (std::size_t row = 0; row < r.size(); ++row) {
    Json line = Json::array();
    for (std::size_t col = 0; col < r.size(); ++col) line.push_back(poly_to_json(r(row, col)));
    entries.push_back(std::move(line));
  }
  Json out{{"dimension", r.dimension()},
           {"basis", basis.names()},
           {"index_order", "row-major (a,b) -> a*N+b"},
           {"entries", std::move(entries)}};
  if (theta) out["evaluated"] = {{"theta", rational_to_json(*theta)}, {"matrix", matrix_to_json(r.evaluate(*theta))}};
  return out;
}

RMatrix r_matrix_from_json(const Json& j) {
  const std::string where = "r-matrix";
  if (!j.is_object()) fail(where, "expected an object");
  reject_unknown(j, {"dimension", "basis", "index_order", "entries", "evaluated"}, where);
  const Json& dim = require(j, "dimension", where);
  if (!dim.is_number_unsigned() || dim.get<std::size_t>() == 0) fail("dimension", "expected a positive integer");
  RMatrix r(dim.get<std::size_t>());
  const Json& rows = require_array(require(j, "entries", where), "entries");
  if (rows.size() != r.size()) fail("entries", "expected " + std::to_string(r.size()) + " rows");
  for (std::size_t row = 0; row < r.size(); ++row) {
    const Json& line = require_array(rows[row], item("entries", row));
    if (line.size() != r.size()) fail(item("entries", row), "expected " + std::to_string(r.size()) + " entries");
    for (std::size_t col = 0; col < r.size(); ++col) {
      r(row, col) = poly_from_json(line[col], item(item("entries", row), col));
    }
  }
  if (j.contains("evaluated")) {
    const Json& ev = j["evaluated"];
    reject_unknown(ev, {"theta", "matrix"}, "evaluated");
    const Rational theta = rational_from_json(require(ev, "theta", "evaluated"), "evaluated.theta");
    if (matrix_from_json(require(ev, "matrix", "evaluated"), "evaluated.matrix") != r.evaluate(theta)) {
      fail("evaluated", "matrix does not match the entries at theta = " + theta.to_string());
    }
  }
  return r;
}

Json check_report_to_json(const CheckReport& r, std::size_t max_violations) {
  Json violations = Json::array();
  for (std::size_t i = 0; i < r.violations().size() && i < max_violations; ++i) {
    const auto& v = r.violations()[i];
    violations.push_back({{"condition", v.condition}, {"indices", v.indices}, {"detail", v.detail}});
  }
  return {{"name", r.name()},
          {"verdict", r.passed() ? "pass" : "fail"},
          {"checked", r.checked()},
          {"violation_count", r.violation_count()},
          {"violations", std::move(violations)}};
}

Json grid_verdict_to_json(const GridVerdict& v) {
  Json out{{"name", v.check},
           {"verdict", v.passed ? "pass" : "fail"},
           {"points_checked", v.points_checked},
           {"grid_max", v.grid_max}};
  if (v.failure) {
    Json point = Json::array();
    for (const auto& t : v.failure->point) point.push_back(rational_to_json(t));
    out["failure"] = {{"point", std::move(point)},
                      {"row", v.failure->row},
                      {"col", v.failure->col},
                      {"detail", v.failure->detail}};
  }
  return out;
}

}  // namespace superbracket
