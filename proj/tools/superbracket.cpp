// Command-line front end. Every command prints one JSON report on stdout
// (or a table with --human) and exits 0 when all checks pass, 1 on a
// mathematical violation, 2 on bad input or usage.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "superbracket/canonical.hpp"
#include "superbracket/errors.hpp"
#include "superbracket/fk_jordan.hpp"
#include "superbracket/io.hpp"
#include "superbracket/lie_super.hpp"
#include "superbracket/triple.hpp"
#include "superbracket/yang_baxter.hpp"

using namespace superbracket;

namespace {

struct GlobalOptions {
  bool human = false;
  bool stable = false;
};

class Report {
 public:
  Report(std::string command, std::string subject) : command_(std::move(command)), subject_(std::move(subject)) {}

  void set_subject(std::string s) { subject_ = std::move(s); }
  void add(Json check) { checks_.push_back(std::move(check)); }
  Json& data() { return data_; }

  [[nodiscard]] bool passed() const {
    for (const auto& c : checks_)
      if (c["verdict"] != "pass") return false;
    return true;
  }

  [[nodiscard]] Json to_json(std::optional<double> timing_ms) const {
    Json out{{"command", command_}, {"subject", subject_}, {"verdict", passed() ? "pass" : "fail"},
             {"checks", checks_}, {"data", data_}};
    if (timing_ms) out["timing_ms"] = *timing_ms;
    return out;
  }

 private:
  std::string command_;
  std::string subject_;
  Json checks_ = Json::array();
  Json data_ = Json::object();
};

Json named_check(const std::string& name, bool passed, Json details = Json::object()) {
  Json out{{"name", name}, {"verdict", passed ? "pass" : "fail"}};
  for (auto& [k, v] : details.items()) out[k] = v;
  return out;
}

Json named_report(const std::string& name, const CheckReport& r) {
  Json j = check_report_to_json(r);
  j["name"] = name;
  return j;
}

Json certificate_check(const QuasiClassicalCertificate& c) {
  return named_check("quasi_classical", c.certified,
                     {{"reason", c.reason},
                      {"singular", c.singular},
                      {"form_conditions", check_report_to_json(c.form_conditions)},
                      {"casimir_identity", check_report_to_json(c.casimir_identity)}});
}

std::string compact(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

void print_human(const Json& report, std::ostream& out) {
  out << "command: " << compact(report["command"]) << "\n"
      << "subject: " << compact(report["subject"]) << "\n"
      << "verdict: " << compact(report["verdict"]) << "\n";
  if (!report["checks"].empty()) {
    out << "checks:\n";
    for (const auto& c : report["checks"]) {
      std::ostringstream line;
      line << "  " << std::left << std::setw(28) << compact(c["name"]) << std::setw(6) << compact(c["verdict"]);
      if (c.contains("checked")) line << " checked " << c["checked"] << ", violations " << c["violation_count"];
      if (c.contains("points_checked")) line << " points " << c["points_checked"] << ", grid 0.." << c["grid_max"];
      if (c.contains("violations") && !c["violations"].empty()) {
        line << "\n" << std::string(36, ' ') << "first: " << compact(c["violations"][0]["condition"]) << " at "
             << c["violations"][0]["indices"].dump() << " " << compact(c["violations"][0]["detail"]);
      }
      if (c.contains("failure")) {
        line << "\n" << std::string(36, ' ') << "first failure at " << c["failure"]["point"].dump() << ": "
             << compact(c["failure"]["detail"]);
      }
      if (c.contains("reason") && !c["reason"].get<std::string>().empty()) line << " (" << compact(c["reason"]) << ")";
      out << line.str() << "\n";
    }
  }
  if (!report["data"].empty()) {
    out << "data:\n";
    for (const auto& [k, v] : report["data"].items()) out << "  " << k << ": " << compact(v) << "\n";
  }
  if (report.contains("timing_ms")) out << "timing_ms: " << report["timing_ms"] << "\n";
}

int emit(const Report& report, const GlobalOptions& opts, std::chrono::steady_clock::time_point start) {
  std::optional<double> timing;
  if (!opts.stable) {
    timing = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  const Json j = report.to_json(timing);
  if (opts.human) {
    print_human(j, std::cout);
  } else {
    std::cout << dump_json(j);
  }
  return report.passed() ? 0 : 1;
}

// Base algebras: catalog specs "ex1_3:n=1,m=1,lambda=0", "simple3",
// "abelian:n=2", "identity:n=3" (abelian with the identity form),
// "symplectic:n=1" (abelian on 2n vectors with the standard symplectic
// form), or a path to an algebra file.
LoadedAlgebra load_base(const std::string& spec) {
  if (spec.ends_with(".json") || spec.find('/') != std::string::npos) {
    return algebra_from_json(read_json_file(spec));
  }
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  std::map<std::string, std::string> params;
  if (colon != std::string::npos) {
    std::stringstream in(spec.substr(colon + 1));
    std::string item;
    while (std::getline(in, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw InputError("base '" + spec + "': expected key=value, got '" + item + "'");
      params[item.substr(0, eq)] = item.substr(eq + 1);
    }
  }
  auto take_count = [&](const std::string& key, std::size_t fallback) -> std::size_t {
    const auto it = params.find(key);
    if (it == params.end()) return fallback;
    const std::string text = it->second;
    params.erase(it);
    if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
      throw InputError("base '" + spec + "': " + key + " must be a non-negative integer");
    }
    return std::stoul(text);
  };
  LoadedAlgebra out;
  if (kind == "simple3") {
    const auto s = simple3();
    out = {s.algebra, s.form};
  } else if (kind == "abelian" || kind == "identity" || kind == "symplectic") {
    const std::size_t n = take_count("n", kind == "identity" ? 3 : 1);
    if (n == 0) throw InputError("base '" + spec + "': n must be positive");
    const GradedBasis basis = GradedBasis::even(kind == "symplectic" ? 2 * n : n);
    out.algebra = abelian(basis);
    if (kind == "identity") out.form = BilinearFormMatrix{Matrix::identity(n), basis.parities()};
    if (kind == "symplectic") out.form = BilinearFormMatrix{standard_symplectic(2 * n), basis.parities()};
  } else {
    ExampleKind ek;
    try {
      ek = parse_example_kind(kind);
    } catch (const Error&) {
      throw InputError("unknown base '" + spec + "'");
    }
    const std::size_t n = take_count("n", 1);
    const std::size_t m = take_count("m", 1);
    Rational lambda(0);
    if (const auto it = params.find("lambda"); it != params.end()) {
      try {
        lambda = Rational::parse(it->second);
      } catch (const std::invalid_argument& e) {
        throw InputError("base '" + spec + "': " + e.what());
      }
      params.erase(it);
    }
    const auto ex = example_algebra(ek, n, m, lambda);
    out = {ex.algebra, ex.form};
  }
  if (!params.empty()) throw InputError("base '" + spec + "': unknown parameter '" + params.begin()->first + "'");
  return out;
}

BilinearFormMatrix require_form(const LoadedAlgebra& a, const std::string& what) {
  if (!a.form) throw InputError(what + " needs an algebra with a form");
  return *a.form;
}

PolyTheta parse_poly(const std::string& text, const std::string& flag) {
  try {
    return PolyTheta::parse(text);
  } catch (const std::invalid_argument& e) {
    throw InputError(flag + ": " + e.what());
  }
}

Rational parse_rational(const std::string& text, const std::string& flag) {
  try {
    return Rational::parse(text);
  } catch (const std::invalid_argument& e) {
    throw InputError(flag + ": " + e.what());
  }
}

Matrix diagonal_from(const std::string& text, std::size_t n, const std::string& flag) {
  if (text.empty()) return Matrix::identity(n);
  Vector diag(n);
  std::stringstream in(text);
  std::string item;
  std::size_t i = 0;
  while (std::getline(in, item, ',')) {
    if (i == n) throw InputError(flag + ": expected " + std::to_string(n) + " entries");
    diag[i++] = parse_rational(item, flag);
  }
  if (i != n) throw InputError(flag + ": expected " + std::to_string(n) + " entries");
  return Matrix::diagonal(diag);
}

Json lie_checks(Report& report, const GradedAlgebra& a, const std::optional<BilinearFormMatrix>& form) {
  const CheckReport axioms = check_lie_super(a);
  report.add(named_report("lie_super", axioms));
  Json casimir = nullptr;
  if (form) {
    report.add(named_report("invariant_form", check_invariant_form(a, *form)));
    const auto cert = certify_quasi_classical(a, *form);
    report.add(certificate_check(cert));
    if (cert.casimir) casimir = matrix_to_json(cert.casimir->g_upper);
  }
  return casimir;
}

void triple_checks(Report& report, const TripleSystem& t) {
  report.add(named_report("triple_axioms", check_triple_axioms(t)));
  if (t.form()) report.add(named_report("form_conditions", check_form_conditions(t)));
}

void fk_checks(Report& report, const GeneralTripleSystem& g) {
  report.add(named_report("generalized_fk", check_generalized_fk(g)));
  report.add(named_report("fk_condition", check_fk_condition(g)));
  if (g.kind() == FkKind::jordan) {
    report.add(named_report("jordan", check_jordan(g)));
    if (g.form()) report.add(named_report("jordan_quasi_classical", check_jordan_quasi_classical(g)));
  }
}

void write_if(const std::string& path, const Json& j, Report& report, const std::string& key) {
  if (path.empty()) return;
  write_json_file(path, j);
  report.data()[key] = path;
}

// ---------------------------------------------------------------- commands

int cmd_verify(const std::string& path, const std::string& kind, const GlobalOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  const Json j = read_json_file(path);
  Report report("verify", "");
  report.data()["kind"] = kind;
  if (kind == "lie") {
    const auto a = algebra_from_json(j);
    report.set_subject(a.algebra.name());
    report.data()["dimension"] = a.algebra.dim();
    lie_checks(report, a.algebra, a.form);
  } else if (kind == "triple") {
    const auto t = triple_from_json(j);
    report.set_subject(t.name());
    report.data()["dimension"] = t.dim();
    report.data()["delta"] = t.delta();
    triple_checks(report, t);
  } else if (kind == "r-matrix") {
    const auto r = r_matrix_from_json(j);
    report.set_subject(j.contains("basis") ? "r-matrix on " + j["basis"].dump() : "r-matrix");
    report.data()["dimension"] = r.dimension();
    report.data()["degree"] = r.degree();
    report.add(grid_verdict_to_json(check_ybe(r)));
  } else {
    const auto g = general_triple_from_json(j);
    report.set_subject(g.name());
    report.data()["dimension"] = g.dim();
    report.data()["epsilon"] = g.epsilon();
    report.data()["delta"] = g.delta();
    if (kind == "fk") {
      report.add(named_report("generalized_fk", check_generalized_fk(g)));
    } else {
      report.add(named_report("jordan", check_jordan(g)));
      if (g.form()) report.add(named_report("jordan_quasi_classical", check_jordan_quasi_classical(g)));
    }
  }
  return emit(report, opts, start);
}

std::size_t expected_example_dimension(ExampleKind kind, std::size_t n, std::size_t m) {
  switch (kind) {
    case ExampleKind::ex1_1:
    case ExampleKind::ex1_2:
      return 2 * n + 2;
    case ExampleKind::ex1_3:
    case ExampleKind::ex1_4:
      return 2 * n + 2 * m + n * m;
  }
  return 0;
}

int cmd_example(const std::string& kind_text, std::size_t n, std::size_t m, const std::string& lambda_text,
                const std::string& out, const GlobalOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  ExampleKind kind;
  try {
    kind = parse_example_kind(kind_text);
  } catch (const Error& e) {
    throw InputError(e.what());
  }
  const auto ex = example_algebra(kind, n, m, parse_rational(lambda_text, "--lambda"));
  Report report("example", ex.algebra.name());
  const std::size_t expected = expected_example_dimension(kind, n, m);
  report.add(named_check("dimension", ex.algebra.dim() == expected,
                         {{"dimension", ex.algebra.dim()}, {"expected", expected}}));
  lie_checks(report, ex.algebra, ex.form);
  const Json file = algebra_to_json(ex.algebra, ex.form);
  // Re-read what is about to be written.
  const auto back = algebra_from_json(parse_json(dump_json(file)));
  report.add(named_check("round_trip", back.algebra == ex.algebra && back.form == ex.form));
  if (report.passed()) write_if(out, file, report, "written");
  return emit(report, opts, start);
}

// Deterministic search for a nondegenerate member: integer coefficient
// vectors ordered by max-norm 1, 2, then lexicographically, at most
// kFormSamples candidates.
constexpr std::size_t kFormSamples = 4096;

std::optional<Vector> nondegenerate_combination(const std::vector<BilinearFormMatrix>& space,
                                                std::size_t& examined) {
  const std::size_t d = space.size();
  examined = 0;
  if (d == 0) return std::nullopt;
  for (int radius = 1; radius <= 2; ++radius) {
    std::vector<int> c(d, -radius);
    while (true) {
      bool on_shell = false;
      for (int x : c) on_shell = on_shell || x == radius || x == -radius;
      if (on_shell) {
        if (++examined > kFormSamples) return std::nullopt;
        Matrix gram(space[0].size(), space[0].size());
        for (std::size_t i = 0; i < d; ++i) gram += space[i].gram * Rational(c[i]);
        if (BilinearFormMatrix{gram, space[0].parities}.is_nondegenerate()) {
          Vector out;
          for (int x : c) out.emplace_back(x);
          return out;
        }
      }
      std::size_t i = d;
      while (i > 0 && c[i - 1] == radius) c[--i] = -radius;
      if (i == 0) break;
      ++c[i - 1];
    }
  }
  return std::nullopt;
}

int cmd_forms(const std::string& path, const GlobalOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  const auto a = algebra_from_json(read_json_file(path));
  Report report("forms", a.algebra.name());
  report.add(named_report("lie_super", check_lie_super(a.algebra)));
  const auto space = invariant_form_space(a.algebra);
  Json basis = Json::array();
  for (const auto& f : space) basis.push_back(matrix_to_json(f.gram));
  std::size_t examined = 0;
  const auto found = nondegenerate_combination(space, examined);
  Json details{{"candidates_examined", examined}, {"sample_limit", kFormSamples}};
  if (found) {
    Json coeffs = Json::array();
    Matrix gram(a.algebra.dim(), a.algebra.dim());
    for (std::size_t i = 0; i < found->size(); ++i) {
      coeffs.push_back(rational_to_json((*found)[i]));
      gram += space[i].gram * (*found)[i];
    }
    details["coefficients"] = coeffs;
    details["gram"] = matrix_to_json(gram);
  }
  report.add(named_check("nondegenerate_member", found.has_value(), details));
  report.data()["dimension"] = space.size();
  report.data()["unique_up_to_scale"] = space.size() == 1;
  report.data()["basis"] = basis;
  return emit(report, opts, start);
}

int cmd_casimir(const std::string& path, const GlobalOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  const auto a = algebra_from_json(read_json_file(path));
  const BilinearFormMatrix form = require_form(a, "casimir");
  Report report("casimir", a.algebra.name());
  const Json g = lie_checks(report, a.algebra, form);
  report.data()["g_upper"] = g;
  return emit(report, opts, start);
}

int cmd_series(const std::string& path, const GlobalOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  const auto a = algebra_from_json(read_json_file(path));
  Report report("series", a.algebra.name());
  report.add(named_report("lie_super", check_lie_super(a.algebra)));
  const auto nil = is_nilpotent(a.algebra);
  report.data()["lower_central_dimensions"] = lower_central_dimensions(a.algebra);
  report.data()["nilpotent"] = nil.nilpotent;
  report.data()["nilpotency_length"] = nil.length;
  report.data()["derived_identity"] = derived_test(a.algebra);
  return emit(report, opts, start);
}

int cmd_triple_from_lie(const std::string& path, const std::string& out, const GlobalOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  const auto a = algebra_from_json(read_json_file(path));
  const auto t = triple_from_lie(a.algebra, require_form(a, "triple-from-lie"));
  Report report("triple-from-lie", t.name());
  triple_checks(report, t);
  report.data()["dimension"] = t.dim();
  if (report.passed()) write_if(out, triple_to_json(t), report, "written");
  return emit(report, opts, start);
}

int cmd_embed(const std::string& path, const std::string& l0_out, const std::string& m_out,
              const GlobalOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  const auto t = triple_from_json(read_json_file(path));
  if (t.delta() != 1) {
    throw InputError("embed: the canonical Lie superalgebra construction does not work for delta = -1");
  }
  const auto e = build_l0(t);
  Report report("embed", t.name());
  triple_checks(report, t);
  report.add(named_report("l0_lie_super", check_lie_super(e.l0)));
  {
    auto cert = certify_quasi_classical(e.l0, e.l0_form);
    Json c = certificate_check(cert);
    c["name"] = "l0_quasi_classical";
    report.add(std::move(c));
  }
  bool orthogonal = true;
  for (std::size_t v = 0; v < t.dim(); ++v)
    for (std::size_t m = t.dim(); m < e.l0.dim(); ++m)
      orthogonal = orthogonal && e.l0_form(v, m).is_zero() && e.l0_form(m, v).is_zero();
  report.add(named_check("m_orthogonal_to_v", orthogonal));
  report.add(named_report("m_form_invariance", check_m_form_invariance(e)));
  report.add(named_report("representation", check_representation(e)));
  report.add(named_report("well_defined", e.well_defined));
  report.data()["v_dimension"] = t.dim();
  report.data()["m_dimension"] = e.m.basis.size();
  report.data()["l0_dimension"] = e.l0.dim();
  if (report.passed()) {
    write_if(l0_out, algebra_to_json(e.l0, e.l0_form), report, "l0_written");
    if (!m_out.empty() && e.m_algebra.dim() > 0) {
      write_if(m_out, algebra_to_json(e.m_algebra, e.m_form), report, "m_written");
    }
  }
  return emit(report, opts, start);
}

struct FkOptions {
  std::string construction;
  std::string base;
  int epsilon = -1;
  int delta = 1;
  std::string p_diagonal;
  std::string c;
  std::string c1 = "1";
  std::string c2 = "1";
  std::string kind = "generalized-fk";
  std::string out;
};

int cmd_fk(const FkOptions& o, const GlobalOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  if (o.delta != 1 && o.delta != -1) throw InputError("--delta must be 1 or -1");
  if (o.epsilon != 1 && o.epsilon != -1) throw InputError("--epsilon must be 1 or -1");
  const auto base = load_base(o.base);
  const GradedBasis& basis = base.algebra.basis();
  GeneralTripleSystem g;
  if (o.construction == "projector") {
    std::optional<Rational> c;
    if (!o.c.empty()) c = parse_rational(o.c, "--c");
    g = projector_jordan(basis, require_form(base, "projector"), o.delta,
                         diagonal_from(o.p_diagonal, basis.size(), "--p-diagonal"), c);
  } else if (o.construction == "nilpotent") {
    g = nilpotent_fk(base.algebra, parse_rational(o.c1, "--c1"), parse_rational(o.c2, "--c2"), o.epsilon, o.delta,
                     base.form, parse_fk_kind(o.kind));
  } else if (o.construction == "rank-one") {
    g = rank_one_fk(basis, require_form(base, "rank-one"), o.epsilon, o.delta,
                    diagonal_from(o.p_diagonal, basis.size(), "--p-diagonal"));
  } else {
    throw InputError("unknown construction '" + o.construction + "'");
  }
  Report report("fk", g.name());
  fk_checks(report, g);
  report.data()["construction"] = o.construction;
  report.data()["kind"] = to_string(g.kind());
  report.data()["epsilon"] = g.epsilon();
  report.data()["delta"] = g.delta();
  report.data()["dimension"] = g.dim();
  write_if(o.out, general_triple_to_json(g), report, "written");
  return emit(report, opts, start);
}

int cmd_jordan_lie(const std::string& path, const std::string& out, const std::string& triple_out,
                   const GlobalOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  const auto g = general_triple_from_json(read_json_file(path));
  if (!g.form()) throw InputError("jordan-lie needs a system with a form");
  Report report("jordan-lie", g.name());
  report.add(named_report("jordan", check_jordan(g)));
  report.add(named_report("jordan_quasi_classical", check_jordan_quasi_classical(g)));
  const auto jl = jordan_lie_algebra(g);
  report.add(named_report("bracket_formula", jl.bracket_formula));
  report.add(named_report("well_defined", jl.well_defined));
  {
    Json kernel = Json::array();
    for (const auto& v : jl.kernel) {
      Json row = Json::array();
      for (const auto& x : v) row.push_back(rational_to_json(x));
      kernel.push_back(std::move(row));
    }
    report.add(named_check("induced_form_nondegenerate", jl.nondegenerate, {{"kernel", kernel}}));
  }
  report.add(certificate_check(jl.certificate));
  if (jl.algebra.dim() > 0) report.add(named_report("m_lie_super", check_lie_super(jl.algebra)));
  const auto t = jordan_to_lie_triple(g);
  {
    Json axioms = named_report("antisymmetrized_axioms", check_triple_axioms(t));
    report.add(std::move(axioms));
    report.add(named_report("antisymmetrized_form", check_form_conditions(t)));
  }
  report.data()["m_dimension"] = jl.m.basis.size();
  if (report.passed()) {
    if (!out.empty() && jl.algebra.dim() > 0) write_if(out, algebra_to_json(jl.algebra, jl.form), report, "written");
    write_if(triple_out, triple_to_json(t), report, "triple_written");
  }
  return emit(report, opts, start);
}

struct YbeOptions {
  std::string family;
  std::string base;
  std::string f = "0,1";
  std::string g = "1";
  std::string f1 = "1";
  std::string f2 = "1";
  std::vector<std::string> diagonals;
  std::vector<std::string> coefficients;
  std::string check = "ybe";
  std::optional<std::size_t> grid_degree;
  std::string theta;
  std::string export_path;
};

int cmd_ybe(const YbeOptions& o, const GlobalOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  std::optional<ThetaTripleFamily> family;
  RMatrix r;
  GradedBasis basis;
  Report report("ybe", o.family);
  if (o.family == "commuting") {
    if (o.diagonals.empty()) throw InputError("commuting: give at least one --diagonal");
    const std::size_t k = o.diagonals.size();
    std::vector<Matrix> j;
    for (const auto& d : o.diagonals) {
      const std::size_t n = static_cast<std::size_t>(std::count(d.begin(), d.end(), ',')) + 1;
      j.push_back(diagonal_from(d, n, "--diagonal"));
    }
    if (o.coefficients.size() != k * k) {
      throw InputError("commuting: expected " + std::to_string(k * k) + " --coefficient values (row-major)");
    }
    std::vector<std::vector<PolyTheta>> f(k);
    for (std::size_t i = 0; i < k * k; ++i) f[i / k].push_back(parse_poly(o.coefficients[i], "--coefficient"));
    r = commuting_r_matrix(j, f);
    basis = GradedBasis::even(r.dimension());
  } else {
    if (o.base.empty()) throw InputError(o.family + ": --base is required");
    const auto base = load_base(o.base);
    const BilinearFormMatrix form = require_form(base, o.family);
    if (o.family == "lie-triple") {
      const auto t = triple_from_lie(base.algebra, form);
      family = lie_triple_family_candidate(t, parse_poly(o.f, "--f"), parse_poly(o.g, "--g"));
    } else if (o.family == "nilpotent") {
      family = nilpotent_family(base.algebra, form, parse_poly(o.f1, "--f1"), parse_poly(o.f2, "--f2"),
                                parse_poly(o.g, "--g"));
    } else if (o.family == "deep-nilpotent") {
      family = deep_nilpotent_family(base.algebra, form, parse_poly(o.f1, "--f1"), parse_poly(o.f2, "--f2"));
    } else if (o.family == "scalar") {
      family = scalar_family(base.algebra.basis(), form, parse_poly(o.g, "--g"));
    } else {
      throw InputError("unknown family '" + o.family + "'");
    }
    report.set_subject(family->name());
    report.add(named_report("dual_symmetry", check_dual_symmetry(*family)));
    r = build_r(*family);
    basis = family->basis();
  }
  report.data()["family"] = o.family;
  report.data()["dimension"] = r.dimension();
  report.data()["r_size"] = r.size();
  report.data()["degree"] = r.degree();
  if (o.check == "ybe") {
    report.add(grid_verdict_to_json(check_ybe(r, o.grid_degree)));
  } else if (o.check == "commute") {
    if (family) report.add(named_report("triple_commutation", check_triple_commutation(*family)));
    report.add(grid_verdict_to_json(check_commutation(r, o.grid_degree)));
  } else if (o.check == "classical") {
    report.add(grid_verdict_to_json(check_classical_ybe(r, o.grid_degree)));
  } else {
    if (!family) throw InputError("triple-form needs a triple-product family");
    const auto tf = check_ybe_triple_form(*family, o.grid_degree);
    Json v = grid_verdict_to_json(tf.verdict);
    v["lhs_identically_zero"] = tf.lhs_identically_zero;
    v["rhs_identically_zero"] = tf.rhs_identically_zero;
    report.add(std::move(v));
  }
  std::optional<Rational> theta;
  if (!o.theta.empty()) theta = parse_rational(o.theta, "--theta");
  if (theta) report.data()["theta"] = rational_to_json(*theta);
  write_if(o.export_path, r_matrix_to_json(r, basis, theta), report, "exported");
  return emit(report, opts, start);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact certification of Lie superalgebras, triple systems and Yang-Baxter solutions"};
  app.require_subcommand(1);
  GlobalOptions opts;
  app.add_flag("--human", opts.human, "Tabular text instead of JSON");
  app.add_flag("--stable", opts.stable, "Omit timing so identical runs are byte-identical");
  app.fallthrough();

  std::string path, kind = "lie", out, l0_out, m_out, triple_out, lambda = "0";
  std::size_t n = 1, m = 1;
  std::string example_kind;

  auto* verify = app.add_subcommand("verify", "Run the axiom and form suite on a file");
  verify->add_option("path", path, "Input file")->required();
  verify->add_option("--kind", kind, "lie | triple | fk | jordan | r-matrix")
      ->check(CLI::IsMember({"lie", "triple", "fk", "jordan", "r-matrix"}));

  auto* example = app.add_subcommand("example", "Write a catalog algebra with its form");
  example->add_option("kind", example_kind, "ex1_1 | ex1_2 | ex1_3 | ex1_4")->required();
  example->add_option("--n", n, "n");
  example->add_option("--m", m, "m");
  example->add_option("--lambda", lambda, "lambda (rational)");
  example->add_option("--out", out, "Output algebra file");

  auto* forms = app.add_subcommand("forms", "Basis of the invariant form space");
  forms->add_option("path", path, "Algebra file")->required();

  auto* casimir = app.add_subcommand("casimir", "Casimir coefficients of the attached form");
  casimir->add_option("path", path, "Algebra file")->required();

  auto* series = app.add_subcommand("series", "Lower central series and nilpotency");
  series->add_option("path", path, "Algebra file")->required();

  auto* tfl = app.add_subcommand("triple-from-lie", "Triple system [[x,y],z] of an algebra with form");
  tfl->add_option("path", path, "Algebra file")->required();
  tfl->add_option("--out", out, "Output triple file");

  auto* embed = app.add_subcommand("embed", "Canonical Lie superalgebra L0 = V + M of a triple system");
  embed->add_option("path", path, "Triple file")->required();
  embed->add_option("--l0", l0_out, "Output algebra file for L0");
  embed->add_option("--m", m_out, "Output algebra file for M");

  FkOptions fk_opts;
  auto* fk = app.add_subcommand("fk", "Build and check a Freudenthal-Kantor or Jordan triple system");
  fk->add_option("--construction", fk_opts.construction, "projector | nilpotent | rank-one")
      ->required()
      ->check(CLI::IsMember({"projector", "nilpotent", "rank-one"}));
  fk->add_option("--base", fk_opts.base, "Base algebra spec or file")->required();
  fk->add_option("--epsilon", fk_opts.epsilon, "epsilon (+1 or -1)");
  fk->add_option("--delta", fk_opts.delta, "delta (+1 or -1)");
  fk->add_option("--p-diagonal", fk_opts.p_diagonal, "Diagonal of P, comma-separated (default identity)");
  fk->add_option("--c", fk_opts.c, "c with P^2 = c Id (default read off P)");
  fk->add_option("--c1", fk_opts.c1, "Coefficient of [x,[y,z]]");
  fk->add_option("--c2", fk_opts.c2, "Coefficient of [[x,y],z]");
  fk->add_option("--kind", fk_opts.kind, "generalized-fk | jordan (nilpotent construction)")
      ->check(CLI::IsMember({"generalized-fk", "jordan"}));
  fk->add_option("--out", fk_opts.out, "Output triple file");

  auto* jordan_lie = app.add_subcommand("jordan-lie", "Lie superalgebra on span L(x,y) of a Jordan system");
  jordan_lie->add_option("path", path, "Jordan triple file")->required();
  jordan_lie->add_option("--out", out, "Output algebra file for M");
  jordan_lie->add_option("--triple-out", triple_out, "Output file for the antisymmetrized triple system");

  YbeOptions ybe_opts;
  auto* ybe = app.add_subcommand("ybe", "Build an R-matrix family and certify it on an exact grid");
  ybe->add_option("--family", ybe_opts.family, "lie-triple | nilpotent | deep-nilpotent | scalar | commuting")
      ->required()
      ->check(CLI::IsMember({"lie-triple", "nilpotent", "deep-nilpotent", "scalar", "commuting"}));
  ybe->add_option("--base", ybe_opts.base, "Base algebra spec or file");
  ybe->add_option("--f", ybe_opts.f, "f(theta), ascending coefficients");
  ybe->add_option("--g", ybe_opts.g, "g(theta)");
  ybe->add_option("--f1", ybe_opts.f1, "f1(theta)");
  ybe->add_option("--f2", ybe_opts.f2, "f2(theta)");
  ybe->add_option("--diagonal", ybe_opts.diagonals, "Diagonal of one commuting operator (repeatable)");
  ybe->add_option("--coefficient", ybe_opts.coefficients, "f_{mu nu}(theta), row-major (repeatable)");
  ybe->add_option("--check", ybe_opts.check, "ybe | commute | classical | triple-form")
      ->check(CLI::IsMember({"ybe", "commute", "classical", "triple-form"}));
  ybe->add_option("--grid-degree", ybe_opts.grid_degree, "Override the degree bound D");
  ybe->add_option("--theta", ybe_opts.theta, "Also export R evaluated at this rational");
  ybe->add_option("--export", ybe_opts.export_path, "Output R-matrix file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*verify) return cmd_verify(path, kind, opts);
    if (*example) return cmd_example(example_kind, n, m, lambda, out, opts);
    if (*forms) return cmd_forms(path, opts);
    if (*casimir) return cmd_casimir(path, opts);
    if (*series) return cmd_series(path, opts);
    if (*tfl) return cmd_triple_from_lie(path, out, opts);
    if (*embed) return cmd_embed(path, l0_out, m_out, opts);
    if (*fk) return cmd_fk(fk_opts, opts);
    if (*jordan_lie) return cmd_jordan_lie(path, out, triple_out, opts);
    if (*ybe) return cmd_ybe(ybe_opts, opts);
  } catch (const VerificationError& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
