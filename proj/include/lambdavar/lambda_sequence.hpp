#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace lambdavar {

struct ConstantFamily {
  double c = 1.0;
};

// lambda_n = a * n + b
struct LinearFamily {
  double a = 1.0;
  double b = 0.0;
};

// lambda_n = n^p, 0 < p <= 1
struct PowerFamily {
  double p = 1.0;
};

// lambda_n = n * ln(n + 1)
struct NLogFamily {};

// lambda_n = values[n-1] for n <= values.size(), then
// values.back() + slope * (n - values.size()).
struct ExplicitFamily {
  std::vector<double> values;
  double slope = 0.0;
};

using LambdaFamily =
    std::variant<ConstantFamily, LinearFamily, PowerFamily, NLogFamily, ExplicitFamily>;

/// Upper limit on the absolute index (shift included) that may be materialized.
inline constexpr std::size_t kMaxLambdaPrefix = 10'000'000;

/// A positive nondecreasing weight sequence lambda_1 <= lambda_2 <= ... .
///
/// Terms are memoized in a table shared between a sequence and all of its
/// tails; the table is guarded for concurrent readers and every newly
/// materialized term is checked for positivity and monotonicity.
class LambdaSequence {
 public:
  static LambdaSequence constant(double c = 1.0);
  static LambdaSequence linear(double a, double b);
  static LambdaSequence harmonic() { return linear(1.0, 0.0); }
  static LambdaSequence power(double p);
  static LambdaSequence nlog();
  static LambdaSequence explicit_prefix(std::vector<double> values, double slope);

  /// lambda_{n + shift}; n >= 1.
  double term(std::size_t n) const;

  /// Sequence with the first m further terms omitted.
  LambdaSequence tail(std::size_t m) const;

  /// Ensures terms 1..count (relative to the shift) are materialized and valid.
  void materialize(std::size_t count) const;

  std::size_t shift() const noexcept { return shift_; }
  /// lambda_n -> infinity for this family.
  bool proper() const noexcept;
  const LambdaFamily& family() const noexcept { return family_; }
  /// "constant" | "linear" | "power" | "nlog" | "explicit"
  std::string family_name() const;

 private:
  struct Memo;

  LambdaSequence(LambdaFamily family, std::size_t shift);
  double formula(std::size_t k) const;
  void extend_to(std::size_t k) const;

  LambdaFamily family_;
  std::size_t shift_ = 0;
  std::shared_ptr<Memo> memo_;
};

/// (sum_{i<=2n} 1/lambda_i) / (sum_{i<=n} 1/lambda_i) by direct summation.
double shao_sablin_ratio(const LambdaSequence& seq, std::size_t n);

}  // namespace lambdavar
