#include "chaos/bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "chaos/error.hpp"

namespace chaos {
namespace {

// exp() overflows a double beyond this.
constexpr double kMaxLinearLog = 700.0;

double log_factorial(int k) {
  double s = 0.0;
  for (int i = 2; i <= k; ++i) s += std::log(static_cast<double>(i));
  return s;
}

void require_positive_order(int k, int M) {
  if (k < 1) throw InvalidInput("degree k must be positive");
  if (M < 1) throw InvalidInput("moment index M must be positive");
}

}  // namespace

ScaledValue ScaledValue::from_log(double log_value) {
  if (log_value > kMaxLinearLog) {
    return {std::numeric_limits<double>::infinity(), log_value, true};
  }
  return {std::exp(log_value), log_value, false};
}

ScaledValue ScaledValue::from_linear(double value) {
  return {value, value > 0.0 ? std::log(value)
                             : -std::numeric_limits<double>::infinity(),
          false};
}

bool dominates_with_tolerance(double bound, double oracle) {
  return bound >= oracle - 1e-9 * std::max(1.0, std::fabs(oracle));
}

bool dominates_with_tolerance(const ScaledValue& bound, double oracle) {
  if (!bound.log_scale) return dominates_with_tolerance(bound.value, oracle);
  // The bound exceeds every finite double.
  return std::isfinite(oracle) || oracle < 0.0;
}

BoundReport make_report(std::string bound_name, double u_or_order,
                        ScaledValue bound, std::optional<double> oracle,
                        std::optional<std::string> oracle_name) {
  BoundReport r{std::move(bound_name), u_or_order, bound, oracle,
                std::move(oracle_name), std::nullopt};
  if (oracle) r.dominates = dominates_with_tolerance(bound, *oracle);
  return r;
}

std::uint64_t double_factorial_odd(int m) {
  if (m < 1 || m % 2 == 0) {
    throw InvalidInput("double_factorial_odd needs an odd positive argument, got " +
                       std::to_string(m));
  }
  std::uint64_t r = 1;
  for (int i = 3; i <= m; i += 2) {
    if (r > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(i)) {
      throw Overflow(std::to_string(m) + "!! does not fit in 64 bits");
    }
    r *= static_cast<std::uint64_t>(i);
  }
  return r;
}

double log_double_factorial_odd(int m) {
  if (m < 1 || m % 2 == 0) {
    throw InvalidInput("log_double_factorial_odd needs an odd positive argument, got " +
                       std::to_string(m));
  }
  double s = 0.0;
  for (int i = 3; i <= m; i += 2) s += std::log(static_cast<double>(i));
  return s;
}

// Both exponents are written through (u/V)^2 = u^2 / v2 so that they agree
// bit for bit at k = 1.
double hoeffding_exponent(double u, double v2) {
  if (!(v2 > 0.0)) throw InvalidInput("variance constant must be positive");
  return -0.5 * (u * u / v2);
}

double hoeffding_tail_bound(double u, double v2) {
  return std::exp(hoeffding_exponent(u, v2));
}

ScaledValue theorem2_moment_bound(int k, int M, double v2) {
  require_positive_order(k, M);
  if (v2 < 0.0) throw InvalidInput("variance constant must be nonnegative");
  const int m = 2 * k * M - 1;
  if (v2 == 0.0) return {0.0, -std::numeric_limits<double>::infinity(), false};
  try {
    const double df = static_cast<double>(double_factorial_odd(m));
    const double linear = df * std::pow(v2, M);
    if (std::isfinite(linear)) return ScaledValue::from_linear(linear);
  } catch (const Overflow&) {
  }
  return ScaledValue::from_log(log_double_factorial_odd(m) + M * std::log(v2));
}

double tail_constant_A(int k) {
  if (k < 1) throw InvalidInput("degree k must be positive");
  return 2.0 * std::numbers::sqrt2 * std::exp(static_cast<double>(k));
}

double theorem1_exponent(double u, int k, double v2) {
  if (k < 1) throw InvalidInput("degree k must be positive");
  if (!(v2 > 0.0)) throw InvalidInput("variance constant must be positive");
  if (u < 0.0) throw InvalidInput("u must be nonnegative");
  const double ratio_sq = u * u / v2;
  return -0.5 * (k == 1 ? ratio_sq : std::pow(ratio_sq, 1.0 / k));
}

double theorem1_tail_bound(double u, int k, double v2, std::optional<double> A) {
  const double a = A ? *A : tail_constant_A(k);
  if (!(a > 0.0)) throw InvalidInput("tail constant A must be positive");
  return std::min(1.0, a * std::exp(theorem1_exponent(u, k, v2)));
}

ScaledValue borell_moment_bound(int k, double p, double v2) {
  if (k < 1) throw InvalidInput("degree k must be positive");
  if (!(p >= 1.0)) throw InvalidInput("Borell exponent p must be >= 1");
  if (v2 < 0.0) throw InvalidInput("variance constant must be nonnegative");
  if (v2 == 0.0) return {0.0, -std::numeric_limits<double>::infinity(), false};
  const double log_value =
      k * p * std::log(2.0 * p - 1.0) + p * (log_factorial(k) + std::log(v2));
  const double linear =
      std::pow(2.0 * p - 1.0, k * p) * std::pow(std::tgamma(k + 1.0) * v2, p);
  if (std::isfinite(linear)) return {linear, log_value, false};
  return ScaledValue::from_log(log_value);
}

BoundComparison compare_theorem2_vs_borell(int k, int M, double v2) {
  require_positive_order(k, M);
  if (!(v2 > 0.0)) throw InvalidInput("variance constant must be positive");
  const double t2 = log_double_factorial_odd(2 * k * M - 1) + M * std::log(v2);
  const double b = k * M * std::log(2.0 * M - 1.0) + M * (log_factorial(k) + std::log(v2));
  return {t2, b, t2 - b};
}

StirlingCheck stirling_step_check(int max_n) {
  if (max_n < 1) throw InvalidInput("max_n must be positive");
  StirlingCheck out{true, true, 0, {}};
  out.ratios.reserve(static_cast<std::size_t>(max_n));
  const double log_sqrt2 = 0.5 * std::numbers::ln2;
  double log_df = 0.0;
  double previous = -std::numeric_limits<double>::infinity();
  for (int n = 1; n <= max_n; ++n) {
    if (n > 1) log_df += std::log(2.0 * n - 1.0);
    const double log_rhs = log_sqrt2 + n * std::log(2.0 * n / std::numbers::e);
    const double log_ratio = log_df - log_rhs;
    out.ratios.push_back(std::exp(log_ratio));
    if (log_ratio > 0.0 && out.holds) {
      out.holds = false;
      out.first_failure = n;
    }
    if (!(log_ratio > previous)) out.monotone = false;
    previous = log_ratio;
  }
  return out;
}

}  // namespace chaos
