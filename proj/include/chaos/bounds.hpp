#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace chaos {

/// A nonnegative quantity that may be too large for a double. `log_value`
/// is always set; `value` is exp(log_value) and is +inf when `log_scale`.
struct ScaledValue {
  double value;
  double log_value;
  bool log_scale;

  static ScaledValue from_log(double log_value);
  static ScaledValue from_linear(double value);
};

/// Named bound next to the oracle it was checked against.
struct BoundReport {
  std::string bound_name;
  double u_or_order;
  ScaledValue bound_value;
  std::optional<double> oracle_value;
  std::optional<std::string> oracle_name;
  std::optional<bool> dominates;
};

/// bound >= oracle - 1e-9 * max(1, |oracle|).
bool dominates_with_tolerance(double bound, double oracle);
/// Same test with the bound given in log form.
bool dominates_with_tolerance(const ScaledValue& bound, double oracle);

BoundReport make_report(std::string bound_name, double u_or_order,
                        ScaledValue bound, std::optional<double> oracle = {},
                        std::optional<std::string> oracle_name = {});

/// 1 * 3 * 5 * ... * m for odd m >= 1. Throws InvalidInput for even or
/// nonpositive m and Overflow when the result does not fit 64 bits.
std::uint64_t double_factorial_odd(int m);

/// log(1 * 3 * ... * m) by summing logarithms; m odd, m >= 1.
double log_double_factorial_odd(int m);

/// exp(-u^2 / (2 v2)): one-sided tail bound for a linear form (k = 1).
double hoeffding_tail_bound(double u, double v2);

/// (2kM - 1)!! * v2^M, the 2M-th moment bound for a degree-k form.
ScaledValue theorem2_moment_bound(int k, int M, double v2);

/// Explicit constant 2 * sqrt(2) * e^k that makes the two-sided tail bound
/// hold for every u >= 0.
double tail_constant_A(int k);

/// min(1, A exp(-(u / V)^{2/k} / 2)) with V = sqrt(v2); A defaults to
/// tail_constant_A(k).
double theorem1_tail_bound(double u, int k, double v2,
                           std::optional<double> A = {});

/// Exponent -(u / V)^{2/k} / 2 used by theorem1_tail_bound.
double theorem1_exponent(double u, int k, double v2);
/// Exponent -u^2 / (2 v2) used by hoeffding_tail_bound.
double hoeffding_exponent(double u, double v2);

/// (2p - 1)^{kp} (k! v2)^p: hypercontractive bound on E|Z|^{2p} from the
/// second moment.
ScaledValue borell_moment_bound(int k, double p, double v2);

struct BoundComparison {
  double log_theorem2;
  double log_borell;
  /// log_theorem2 - log_borell; negative when the double-factorial bound
  /// is the sharper one.
  double log_ratio;
};

BoundComparison compare_theorem2_vs_borell(int k, int M, double v2);

struct StirlingCheck {
  bool holds;        // (2N-1)!! <= sqrt(2) (2N/e)^N for every N checked
  bool monotone;     // the ratio increases strictly with N
  int first_failure; // 0 when everything holds
  std::vector<double> ratios;  // (2N-1)!! / (sqrt(2) (2N/e)^N), N = 1..max
};

/// Checks the Stirling-type estimate behind tail_constant_A for N = 1..max_n.
StirlingCheck stirling_step_check(int max_n = 200);

}  // namespace chaos
