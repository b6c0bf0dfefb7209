#include "chaos/montecarlo.hpp"

#include <cmath>

#include "chaos/error.hpp"
#include "chaos/parallel.hpp"

namespace chaos {

std::vector<double> sample_z(const SymmetricMultilinearForm& form,
                             std::span<const SubGaussianInput> inputs,
                             std::size_t count, std::uint64_t seed) {
  const auto n = static_cast<std::size_t>(form.dimension());
  if (inputs.size() != n) {
    throw InvalidInput("need one input distribution per coordinate (" +
                       std::to_string(n) + "), got " + std::to_string(inputs.size()));
  }
  std::vector<double> out(count);
  const std::size_t chunks = (count + detail::kChunkSize - 1) / detail::kChunkSize;
  detail::parallel_for(chunks, [&](std::size_t c) {
    auto engine = detail::substream(seed, 0, c);
    std::vector<double> x(n);
    const std::size_t end = std::min(count, (c + 1) * detail::kChunkSize);
    for (std::size_t s = c * detail::kChunkSize; s < end; ++s) {
      for (std::size_t i = 0; i < n; ++i) x[i] = inputs[i].draw(engine);
      out[s] = evaluate_at(form, x);
    }
  });
  return out;
}

TailEstimate tail_from_samples(std::span<const double> draws, double u,
                               std::uint64_t seed) {
  if (draws.empty()) throw InvalidInput("no samples");
  std::size_t hits = 0;
  for (double z : draws) hits += std::fabs(z) > u;
  const double n = static_cast<double>(draws.size());
  const double p = static_cast<double>(hits) / n;
  return {u, p, std::sqrt(p * (1.0 - p) / n), draws.size(), seed};
}

TailEstimate estimate_tail(const SymmetricMultilinearForm& form,
                           std::span<const SubGaussianInput> inputs, double u,
                           std::size_t count, std::uint64_t seed) {
  const auto draws = sample_z(form, inputs, count, seed);
  return tail_from_samples(draws, u, seed);
}

std::vector<TailEstimate> estimate_tails(const SymmetricMultilinearForm& form,
                                         std::span<const SubGaussianInput> inputs,
                                         std::span<const double> u,
                                         std::size_t count, std::uint64_t seed) {
  const auto draws = sample_z(form, inputs, count, seed);
  std::vector<TailEstimate> out;
  out.reserve(u.size());
  for (double level : u) out.push_back(tail_from_samples(draws, level, seed));
  return out;
}

MomentEstimate moment_from_samples(std::span<const double> draws, int order,
                                   std::uint64_t seed) {
  if (draws.size() < 2) throw InvalidInput("need at least two samples");
  if (order < 0) throw InvalidInput("moment order must be nonnegative");
  double mean = 0.0;
  double m2 = 0.0;
  std::size_t i = 0;
  for (double z : draws) {
    const double v = std::pow(z, order);
    ++i;
    const double d = v - mean;
    mean += d / static_cast<double>(i);
    m2 += d * (v - mean);
  }
  const double n = static_cast<double>(draws.size());
  const double var = m2 / (n - 1.0);
  return {order, mean, std::sqrt(var / n), draws.size(), seed};
}

}  // namespace chaos
