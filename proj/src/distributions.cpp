#include "chaos/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "chaos/error.hpp"
#include "chaos/parallel.hpp"

namespace chaos {
namespace {

constexpr std::uint64_t kHermiteStream = std::uint64_t{1} << 40;

// Runs fill(engine, begin, end) over fixed-size chunks, each chunk with its
// own substream, and returns the concatenated draws.
template <class Fill>
std::vector<double> chunked_draws(std::size_t count, std::uint64_t seed,
                                  std::uint64_t stream, Fill fill) {
  std::vector<double> out(count);
  const std::size_t chunks = (count + detail::kChunkSize - 1) / detail::kChunkSize;
  detail::parallel_for(chunks, [&](std::size_t c) {
    auto engine = detail::substream(seed, stream, c);
    const std::size_t begin = c * detail::kChunkSize;
    const std::size_t end = std::min(count, begin + detail::kChunkSize);
    fill(engine, out.data() + begin, out.data() + end);
  });
  return out;
}

}  // namespace

MomentSequence::MomentSequence(std::string label,
                               std::vector<double> even_moments)
    : label_(std::move(label)), even_(std::move(even_moments)) {
  for (double m : even_) {
    if (!(m >= 0.0) || !std::isfinite(m)) {
      throw InvalidInput("moment sequence '" + label_ +
                         "' has a negative or non-finite even moment");
    }
  }
}

double MomentSequence::even(int m) const {
  if (m == 0) return 1.0;
  if (m < 0 || m > max_half_order()) {
    throw InvalidInput("moment sequence '" + label_ + "' provides moments up to order " +
                       std::to_string(2 * max_half_order()) + ", order " +
                       std::to_string(2 * m) + " is required");
  }
  return even_[static_cast<std::size_t>(m - 1)];
}

double MomentSequence::raw(int p) const {
  if (p % 2 != 0) return 0.0;
  return even(p / 2);
}

bool MomentSequence::is_sign() const noexcept {
  return std::all_of(even_.begin(), even_.end(),
                     [](double m) { return m == 1.0; });
}

MomentSequence rademacher_moments(int count) {
  return MomentSequence("rademacher",
                        std::vector<double>(static_cast<std::size_t>(count), 1.0));
}

MomentSequence gaussian_moments(int count) {
  std::vector<double> m(static_cast<std::size_t>(count));
  double df = 1.0;
  for (int i = 1; i <= count; ++i) {
    df *= 2 * i - 1;
    m[static_cast<std::size_t>(i - 1)] = df;
  }
  return MomentSequence("gaussian", std::move(m));
}

MomentSequence uniform_moments(int count) {
  std::vector<double> m(static_cast<std::size_t>(count));
  double p = 1.0;
  for (int i = 1; i <= count; ++i) {
    p *= 3.0;
    m[static_cast<std::size_t>(i - 1)] = p / (2 * i + 1);
  }
  return MomentSequence("uniform", std::move(m));
}

SubGaussianInput::SubGaussianInput(Kind kind)
    : kind_(kind),
      moments_(kind == Kind::rademacher ? rademacher_moments()
               : kind == Kind::gaussian ? gaussian_moments()
                                        : uniform_moments()) {}

double SubGaussianInput::draw(std::mt19937_64& engine) const {
  switch (kind_) {
    case Kind::rademacher:
      return (engine() >> 63) ? -1.0 : 1.0;
    case Kind::gaussian:
      return std::normal_distribution<double>()(engine);
    case Kind::uniform: {
      const double c = std::sqrt(3.0);
      return std::uniform_real_distribution<double>(-c, c)(engine);
    }
  }
  return 0.0;
}

std::vector<SubGaussianInput> builtin_inputs() {
  return {SubGaussianInput(SubGaussianInput::Kind::rademacher),
          SubGaussianInput(SubGaussianInput::Kind::gaussian),
          SubGaussianInput(SubGaussianInput::Kind::uniform)};
}

SubGaussianInput find_input(const std::string& name) {
  for (auto& input : builtin_inputs()) {
    if (input.name() == name) return input;
  }
  throw InvalidInput("unknown distribution '" + name +
                     "' (expected rademacher, gaussian or uniform)");
}

SubGaussianCheck check_subgaussian(const MomentSequence& moments) {
  double gauss = 1.0;
  for (int m = 1; m <= moments.max_half_order(); ++m) {
    gauss *= 2 * m - 1;
    if (moments.even(m) > gauss) return {false, m};
  }
  return {true, 0};
}

double hermite(int k, double x) {
  if (k < 0) throw InvalidInput("Hermite degree must be nonnegative");
  double prev = 1.0;
  if (k == 0) return prev;
  double cur = x;
  for (int i = 1; i < k; ++i) {
    const double next = x * cur - i * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

SymmetricMultilinearForm sharpness_form(int k, int n, double V) {
  if (k < 1) throw InvalidInput("degree k must be positive");
  if (n < k) {
    throw InvalidInput("sharpness form needs n >= k (n=" + std::to_string(n) +
                       ", k=" + std::to_string(k) + ")");
  }
  double falling = 1.0;
  for (int i = 0; i < k; ++i) falling *= n - i;
  const double value = V / std::sqrt(falling);

  SymmetricMultilinearForm::CoefficientMap coeffs;
  IndexTuple key(static_cast<std::size_t>(k));
  std::iota(key.begin(), key.end(), 1);
  while (true) {
    coeffs.emplace(key, value);
    int pos = k - 1;
    while (pos >= 0 && key[static_cast<std::size_t>(pos)] == n - (k - 1 - pos)) --pos;
    if (pos < 0) break;
    ++key[static_cast<std::size_t>(pos)];
    for (int i = pos + 1; i < k; ++i) {
      key[static_cast<std::size_t>(i)] = key[static_cast<std::size_t>(i - 1)] + 1;
    }
  }
  return SymmetricMultilinearForm(k, n, std::move(coeffs));
}

std::vector<double> sample_sharpness(int k, int n, double V, std::size_t count,
                                     std::uint64_t seed) {
  if (k < 1 || n < k) throw InvalidInput("sharpness sampling needs 1 <= k <= n");
  double scale = V;  // k! * V / sqrt(n(n-1)...(n-k+1))
  for (int i = 0; i < k; ++i) scale *= static_cast<double>(i + 1) / std::sqrt(n - i);

  return chunked_draws(count, seed, static_cast<std::uint64_t>(n),
                       [&](std::mt19937_64& engine, double* begin, double* end) {
    std::vector<double> e(static_cast<std::size_t>(k) + 1);
    for (double* out = begin; out != end; ++out) {
      std::fill(e.begin(), e.end(), 0.0);
      e[0] = 1.0;
      std::uint64_t bits = 0;
      for (int i = 0; i < n; ++i) {
        if (i % 64 == 0) bits = engine();
        const double s = (bits & 1U) ? -1.0 : 1.0;
        bits >>= 1;
        for (int j = std::min(k, i + 1); j >= 1; --j) {
          e[static_cast<std::size_t>(j)] += s * e[static_cast<std::size_t>(j - 1)];
        }
      }
      *out = scale * e[static_cast<std::size_t>(k)];
    }
  });
}

std::vector<double> sample_hermite_limit(int k, double V, std::size_t count,
                                         std::uint64_t seed) {
  return chunked_draws(count, seed, kHermiteStream + static_cast<std::uint64_t>(k),
                       [&](std::mt19937_64& engine, double* begin, double* end) {
    std::normal_distribution<double> normal;
    for (double* out = begin; out != end; ++out) *out = V * hermite(k, normal(engine));
  });
}

double ks_distance(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw InvalidInput("KS distance needs two nonempty samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

std::vector<SharpnessRow> limit_comparison(int k, std::span<const int> n_list,
                                           double V, std::size_t sample_count,
                                           std::uint64_t seed) {
  if (!(V > 0.0)) throw InvalidInput("V must be positive");
  if (sample_count == 0) throw InvalidInput("sample count must be positive");
  std::vector<SharpnessRow> rows;
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    const int n = n_list[i];
    if (i > 0 && n <= n_list[i - 1]) throw InvalidInput("n list must be increasing");
    auto z = sample_sharpness(k, n, V, sample_count, seed);
    // Fresh limit draws per n so rows are independent.
    auto limit = sample_hermite_limit(k, V, sample_count,
                                      seed ^ (static_cast<std::uint64_t>(n) << 20));
    rows.push_back({n, ks_distance(std::move(z), std::move(limit)), sample_count});
  }
  return rows;
}

}  // namespace chaos
