#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "chaos/form.hpp"

namespace chaos {

/// Even moments E x^2, E x^4, ..., E x^{2R} of a symmetric random variable.
/// Odd moments are zero by assumption.
class MomentSequence {
 public:
  MomentSequence(std::string label, std::vector<double> even_moments);

  const std::string& label() const noexcept { return label_; }
  /// Highest available half-order R (moments up to E x^{2R}).
  int max_half_order() const noexcept {
    return static_cast<int>(even_.size());
  }
  /// E x^{2m}; m = 0 gives 1. Throws InvalidInput when m exceeds R.
  double even(int m) const;
  /// E x^p for any p >= 0; odd p gives 0.
  double raw(int p) const;
  std::span<const double> even_moments() const noexcept { return even_; }
  /// True when every even moment equals 1, i.e. x^2 = 1 almost surely.
  bool is_sign() const noexcept;

 private:
  std::string label_;
  std::vector<double> even_;
};

inline constexpr int kDefaultMomentCount = 12;

MomentSequence rademacher_moments(int count = kDefaultMomentCount);
MomentSequence gaussian_moments(int count = kDefaultMomentCount);
/// Uniform on [-sqrt 3, sqrt 3]: E x^{2m} = 3^m / (2m + 1).
MomentSequence uniform_moments(int count = kDefaultMomentCount);

/// A symmetric sub-Gaussian input: its moments plus a seeded sampler.
class SubGaussianInput {
 public:
  enum class Kind { rademacher, gaussian, uniform };

  explicit SubGaussianInput(Kind kind);

  Kind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return moments_.label(); }
  const MomentSequence& moments() const noexcept { return moments_; }

  double draw(std::mt19937_64& engine) const;

 private:
  Kind kind_;
  MomentSequence moments_;
};

std::vector<SubGaussianInput> builtin_inputs();
/// Lookup by name ("rademacher", "gaussian", "uniform"); throws InvalidInput.
SubGaussianInput find_input(const std::string& name);

struct SubGaussianCheck {
  bool ok;
  /// Half-order m of the first moment with E x^{2m} > (2m-1)!!, 0 if none.
  int first_failing_index;
};

SubGaussianCheck check_subgaussian(const MomentSequence& moments);

/// Probabilists' Hermite polynomial He_k(x) (leading coefficient 1).
double hermite(int k, double x);

/// Form with coefficient V / sqrt(n(n-1)...(n-k+1)) on every distinct tuple.
SymmetricMultilinearForm sharpness_form(int k, int n, double V);

/// Draws Z_n = sum over ordered distinct tuples of c * e_{j_1}..e_{j_k}
/// for the constant-coefficient form above under random signs, using the
/// elementary symmetric polynomial recursion (O(nk) per draw).
std::vector<double> sample_sharpness(int k, int n, double V,
                                     std::size_t count, std::uint64_t seed);

/// Draws V * He_k(eta) for standard normal eta.
std::vector<double> sample_hermite_limit(int k, double V, std::size_t count,
                                         std::uint64_t seed);

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|; ties handled.
double ks_distance(std::vector<double> a, std::vector<double> b);

struct SharpnessRow {
  int n;
  double ks_distance;
  std::size_t samples;
};

/// Empirical KS distance between Z_n and V * He_k(eta) for each n.
std::vector<SharpnessRow> limit_comparison(int k, std::span<const int> n_list,
                                           double V, std::size_t sample_count,
                                           std::uint64_t seed);

}  // namespace chaos
