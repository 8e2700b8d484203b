#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace wedgelab {

/// Coefficient family for experiments:
///   uniform:K        lambda_k = const
///   geometric:R:K    lambda_k ~ R^k
///   power:P:K        lambda_k ~ k^-P
///   file:PATH        one non-negative real per line
/// Resolved values are sorted descending and normalized to sum lambda^2 = 1.
struct LambdaSpec {
  enum class Kind { uniform, geometric, power, file };

  Kind kind = Kind::uniform;
  std::string descriptor;  // the text it was parsed from
  std::vector<double> resolved;
};

/// Throws std::invalid_argument on malformed text.
[[nodiscard]] LambdaSpec parse_lambda_spec(std::string_view text);

/// Sorted descending, scaled to unit l2 norm.
[[nodiscard]] std::vector<double> normalize_profile(std::vector<double> values);

}  // namespace wedgelab
