#pragma once

#include "tatekit/field.hpp"

#include <string_view>

namespace tatekit {

// Arithmetic expressions over the field: integers, t, u1..uN, z, + - * / ^,
// parentheses, and a trailing "+ O(x)" marking the absolute precision v(x).
// Accepts everything Scalar::to_string prints, e.g. "13/4*3^-2",
// "(z+1)*t^3 + O(t^7)", "(u1+u2)*t^-1".
Scalar parse_scalar(const FieldSpec& spec, std::string_view text);

}  // namespace tatekit
