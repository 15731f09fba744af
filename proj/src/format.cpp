#include "superbracket/format.hpp"

namespace superbracket {

std::string format_vector(const GradedBasis& basis, std::span<const Rational> v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) {
      continue;
    }
    if (!out.empty()) {
      out += " + ";
    }
    out += v[i].to_string() + "*" + basis.name(i);
  }
  return out.empty() ? "0" : out;
}

}  // namespace superbracket
