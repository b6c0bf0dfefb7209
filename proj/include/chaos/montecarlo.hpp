#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "chaos/distributions.hpp"
#include "chaos/form.hpp"

namespace chaos {

inline constexpr std::size_t kDefaultSampleCount = 100'000;

struct TailEstimate {
  double u;
  double point;      // fraction of draws with |Z| > u
  double std_error;  // sqrt(point (1 - point) / samples)
  std::size_t samples;
  std::uint64_t seed;
};

struct MomentEstimate {
  int order;
  double point;
  double std_error;
  std::size_t samples;
  std::uint64_t seed;
};

/// `count` independent draws of Z with coordinate i distributed as
/// inputs[i]. Draws come from fixed-size chunks, each with its own
/// substream keyed by (seed, chunk), so the output is a function of the
/// seed alone.
std::vector<double> sample_z(const SymmetricMultilinearForm& form,
                             std::span<const SubGaussianInput> inputs,
                             std::size_t count, std::uint64_t seed);

TailEstimate tail_from_samples(std::span<const double> draws, double u,
                               std::uint64_t seed);

TailEstimate estimate_tail(const SymmetricMultilinearForm& form,
                           std::span<const SubGaussianInput> inputs, double u,
                           std::size_t count, std::uint64_t seed);

/// Tail estimates at several levels from one set of draws.
std::vector<TailEstimate> estimate_tails(const SymmetricMultilinearForm& form,
                                         std::span<const SubGaussianInput> inputs,
                                         std::span<const double> u,
                                         std::size_t count, std::uint64_t seed);

/// Sample mean of Z^order with its standard error.
MomentEstimate moment_from_samples(std::span<const double> draws, int order,
                                   std::uint64_t seed);

}  // namespace chaos
