#pragma once

#include <string>
#include <variant>
#include <vector>

#include "composition.hpp"
#include "errors.hpp"
#include "matrix.hpp"

namespace nilred {

/// `algebra <name> { family = H; p = 1; q = 1; }`
struct ConstructorSpec {
  Family family = Family::Quaternion;
  std::size_t p = 0;
  std::size_t q = 0;
};

/// `algebra <name> { dim_v = 2; dim_z = 2; J1 = [[0,1],[-1,0]]; ... }`
/// with one skew dim_v x dim_v matrix per central direction.
struct RawSpec {
  std::size_t dim_v = 0;
  std::size_t dim_z = 0;
  std::vector<QMatrix> j_mats;
};

struct AlgebraSpec {
  std::string name;
  std::variant<ConstructorSpec, RawSpec> body;

  bool is_constructor() const { return std::holds_alternative<ConstructorSpec>(body); }
};

/// Parses every algebra block in `text`. Grammar: line-oriented
/// `key = value;` statements inside `algebra <name> { ... }` blocks; values
/// are identifiers, integers, rationals `a/b`, or nested bracket lists;
/// `#` starts a comment. Throws ParseError (syntax, with line/column) or
/// ValidationError (bad dimensions, non-skew matrices, p + q = 0, ...).
std::vector<AlgebraSpec> parse_spec(const std::string& text);

/// Canonical raw-form serialization; parse(export(s)) builds the same j map.
std::string export_spec_dsl(const AlgebraSpec& spec);

}  // namespace nilred
