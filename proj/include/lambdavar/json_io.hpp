#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "json.hpp"

#include "lambdavar/functions.hpp"
#include "lambdavar/lambda_sequence.hpp"
#include "lambdavar/variation.hpp"

namespace lambdavar {

using Json = nlohmann::ordered_json;

/// {"type":"plf"|"step"|"bernstein"|"named", ...}; errors name the field path.
Function function_from_json(const Json& j);
Function function_from_json_text(std::string_view text);
Json function_to_json(const Function& f);

/// Named built-ins: identity, hat, counterexample, abs_mid.
PiecewiseLinear named_function(std::string_view name);

/// {"family": ..., "params": {...}, "shift": m}
LambdaSequence lambda_from_json(const Json& j);
LambdaSequence lambda_from_json_text(std::string_view text);
Json lambda_to_json(const LambdaSequence& seq);

/// {"value", "witness", "assignment", "method"} plus "grid_upper_bound" when set.
Json variation_to_json(const VariationResult& r);

/// Deterministic text form: fixed key order, numbers with 17 significant digits.
std::string dump_json(const Json& j, int indent = 2);

/// Shortest-form-independent number formatting used by dump_json and CSV.
std::string format_number(double v);

/// FNV-1a 64-bit digest of the given bytes, as 16 hex digits.
std::string digest_hex(std::string_view bytes);

}  // namespace lambdavar
