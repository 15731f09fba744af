#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "superbracket/fk_jordan.hpp"
#include "superbracket/lie_super.hpp"
#include "superbracket/poly.hpp"
#include "superbracket/triple.hpp"
#include "superbracket/yang_baxter.hpp"

namespace superbracket {

/// Keys keep insertion order, so serialized output is deterministic.
using Json = nlohmann::ordered_json;

/// Parses JSON text. Syntax errors become InputError naming `source` with
/// line and column.
[[nodiscard]] Json parse_json(std::string_view text, const std::string& source = "<input>");
/// Reads and parses a file; unreadable files throw InputError.
[[nodiscard]] Json read_json_file(const std::filesystem::path& path);
/// Two-space indented JSON followed by a newline.
[[nodiscard]] std::string dump_json(const Json& j);
/// Throws InputError when the file cannot be written.
void write_json_file(const std::filesystem::path& path, const Json& j);

/// "p" or "p/q".
[[nodiscard]] Json rational_to_json(const Rational& r);
/// Accepts only strings; `where` prefixes error messages.
[[nodiscard]] Rational rational_from_json(const Json& j, const std::string& where);
/// Ascending coefficient array of rational strings.
[[nodiscard]] Json poly_to_json(const PolyTheta& p);
[[nodiscard]] PolyTheta poly_from_json(const Json& j, const std::string& where);
/// Nested row arrays of rational strings.
[[nodiscard]] Json matrix_to_json(const Matrix& m);
[[nodiscard]] Matrix matrix_from_json(const Json& j, const std::string& where);

struct LoadedAlgebra {
  GradedAlgebra algebra;
  std::optional<BilinearFormMatrix> form;
};

/// Algebra file:
///   {name, basis: [{name, grade}], brackets: [{left, right, result: [{coeff, basis}]}],
///    form?: [{left, right, value}]}
/// Basis references are names; omitted pairs are zero and mirrors are
/// completed by super-antisymmetry.
[[nodiscard]] Json algebra_to_json(const GradedAlgebra& a, const std::optional<BilinearFormMatrix>& form);
[[nodiscard]] LoadedAlgebra algebra_from_json(const Json& j);

/// Triple file: {name, delta, basis, triples: [{a, b, c, result}], form?}.
[[nodiscard]] Json triple_to_json(const TripleSystem& t);
[[nodiscard]] TripleSystem triple_from_json(const Json& j);

/// Triple file with "kind" (generalized-fk | jordan) and optional
/// "epsilon" (default -1), "p_operator" and "c". A missing "delta" means
/// delta = -epsilon for jordan and +1 otherwise.
[[nodiscard]] Json general_triple_to_json(const GeneralTripleSystem& g);
[[nodiscard]] GeneralTripleSystem general_triple_from_json(const Json& j);

/// {dimension, basis, index_order: "row-major (a,b) -> a*N+b",
///  entries: N^2 rows of N^2 coefficient arrays}; with `theta` also
/// "evaluated": {theta, matrix} as a flat N^2 x N^2 matrix.
[[nodiscard]] Json r_matrix_to_json(const RMatrix& r, const GradedBasis& basis,
                                    const std::optional<Rational>& theta = std::nullopt);
[[nodiscard]] RMatrix r_matrix_from_json(const Json& j);

/// Report fragments.
[[nodiscard]] Json check_report_to_json(const CheckReport& r, std::size_t max_violations = 20);
[[nodiscard]] Json grid_verdict_to_json(const GridVerdict& v);

}  // namespace superbracket
