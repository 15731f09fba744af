#pragma once

#include <span>
#include <string>

#include "superbracket/graded.hpp"

namespace superbracket {

/// "c1*name1 + c2*name2", or "0" for the zero vector.
[[nodiscard]] std::string format_vector(const GradedBasis& basis, std::span<const Rational> v);

}  // namespace superbracket
