#include "lambdavar/lambda_sequence.hpp"

#include <cmath>
#include <mutex>
#include <shared_mutex>
#include <sstream>

#include "lambdavar/error.hpp"

namespace lambdavar {

struct LambdaSequence::Memo {
  mutable std::shared_mutex mutex;
  std::vector<double> values;  // values[k-1] = lambda_k (absolute index)
};

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

LambdaSequence::LambdaSequence(LambdaFamily family, std::size_t shift)
    : family_(std::move(family)), shift_(shift), memo_(std::make_shared<Memo>()) {}

LambdaSequence LambdaSequence::constant(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw InvalidInput("params.c: constant lambda must be a positive finite number");
  }
  return LambdaSequence(ConstantFamily{c}, 0);
}

LambdaSequence LambdaSequence::linear(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw InvalidInput("params: linear lambda coefficients must be finite");
  }
  if (a < 0.0) throw InvalidInput("params.a: linear lambda slope must be nonnegative");
  if (!(a + b > 0.0)) throw InvalidInput("params.b: linear lambda requires a + b > 0");
  return LambdaSequence(LinearFamily{a, b}, 0);
}

LambdaSequence LambdaSequence::power(double p) {
  if (!(p > 0.0 && p <= 1.0)) {
    throw InvalidInput("params.p: power lambda exponent must lie in (0, 1]");
  }
  return LambdaSequence(PowerFamily{p}, 0);
}

LambdaSequence LambdaSequence::nlog() { return LambdaSequence(NLogFamily{}, 0); }

LambdaSequence LambdaSequence::explicit_prefix(std::vector<double> values, double slope) {
  if (values.empty()) throw InvalidInput("params.values: explicit lambda needs at least one value");
  if (!(slope >= 0.0) || !std::isfinite(slope)) {
    throw InvalidInput("params.slope: explicit lambda tail slope must be nonnegative");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0) || !std::isfinite(values[i])) {
      throw InvalidInput("params.values[" + std::to_string(i) + "]: must be positive");
    }
    if (i > 0 && values[i] < values[i - 1]) {
      throw InvalidInput("params.values[" + std::to_string(i) + "]: sequence must be nondecreasing");
    }
  }
  return LambdaSequence(ExplicitFamily{std::move(values), slope}, 0);
}

double LambdaSequence::formula(std::size_t k) const {
  const double n = static_cast<double>(k);
  return std::visit(
      Overloaded{
          [](const ConstantFamily& f) { return f.c; },
          [n](const LinearFamily& f) { return f.a * n + f.b; },
          [n](const PowerFamily& f) { return std::pow(n, f.p); },
          [n](const NLogFamily&) { return n * std::log(n + 1.0); },
          [k](const ExplicitFamily& f) {
            if (k <= f.values.size()) return f.values[k - 1];
            return f.values.back() + f.slope * static_cast<double>(k - f.values.size());
          },
      },
      family_);
}

void LambdaSequence::extend_to(std::size_t k) const {
  std::unique_lock lock(memo_->mutex);
  auto& values = memo_->values;
  if (values.size() >= k) return;
  std::size_t target = std::max(k, std::min(kMaxLambdaPrefix, 2 * values.size() + 64));
  values.reserve(target);
  for (std::size_t i = values.size() + 1; i <= target; ++i) {
    const double v = formula(i);
    if (!(v > 0.0) || !std::isfinite(v)) {
      std::ostringstream os;
      os << "lambda term " << i << " is not positive (" << v << ")";
      throw InvalidInput(os.str());
    }
    if (!values.empty() && v < values.back()) {
      std::ostringstream os;
      os << "lambda term " << i << " decreases (" << v << " < " << values.back() << ")";
      throw InvalidInput(os.str());
    }
    values.push_back(v);
  }
}

double LambdaSequence::term(std::size_t n) const {
  if (n == 0) throw DomainError("lambda index must be >= 1");
  const std::size_t k = n + shift_;
  if (k > kMaxLambdaPrefix || k < n) {
    throw ResourceError("lambda index " + std::to_string(k) + " exceeds the prefix budget of " +
                        std::to_string(kMaxLambdaPrefix));
  }
  {
    std::shared_lock lock(memo_->mutex);
    if (memo_->values.size() >= k) return memo_->values[k - 1];
  }
  extend_to(k);
  std::shared_lock lock(memo_->mutex);
  return memo_->values[k - 1];
}

void LambdaSequence::materialize(std::size_t count) const {
  if (count == 0) return;
  term(count);
}

LambdaSequence LambdaSequence::tail(std::size_t m) const {
  LambdaSequence out = *this;
  out.shift_ = shift_ + m;
  return out;
}

bool LambdaSequence::proper() const noexcept {
  return std::visit(Overloaded{
                        [](const ConstantFamily&) { return false; },
                        [](const LinearFamily& f) { return f.a > 0.0; },
                        [](const PowerFamily&) { return true; },
                        [](const NLogFamily&) { return true; },
                        [](const ExplicitFamily& f) { return f.slope > 0.0; },
                    },
                    family_);
}

std::string LambdaSequence::family_name() const {
  return std::visit(Overloaded{
                        [](const ConstantFamily&) { return std::string("constant"); },
                        [](const LinearFamily&) { return std::string("linear"); },
                        [](const PowerFamily&) { return std::string("power"); },
                        [](const NLogFamily&) { return std::string("nlog"); },
                        [](const ExplicitFamily&) { return std::string("explicit"); },
                    },
                    family_);
}

double shao_sablin_ratio(const LambdaSequence& seq, std::size_t n) {
  if (n == 0) throw DomainError("shao-sablin ratio needs n >= 1");
  if (2 * n + seq.shift() > kMaxLambdaPrefix) {
    throw ResourceError("shao-sablin ratio at n = " + std::to_string(n) +
                        " exceeds the prefix budget");
  }
  seq.materialize(2 * n);
  double head = 0.0;
  for (std::size_t i = 1; i <= n; ++i) head += 1.0 / seq.term(i);
  double total = head;
  for (std::size_t i = n + 1; i <= 2 * n; ++i) total += 1.0 / seq.term(i);
  return total / head;
}

}  // namespace lambdavar
