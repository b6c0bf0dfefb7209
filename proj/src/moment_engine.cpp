#include "chaos/moment_engine.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>

#include "chaos/error.hpp"
#include "chaos/parallel.hpp"

namespace chaos {
namespace {

// Each block fixes the top bits of the sign mask; the low bits are walked
// in Gray-code order. Per-block results are reduced in block order, so the
// sums do not depend on how blocks are scheduled.
constexpr int kMaxBlockBits = 8;
// Re-evaluate from scratch this often to bound drift on non-integer data.
constexpr std::uint64_t kResyncInterval = 4096;

void check_budget(const SymmetricMultilinearForm& form) {
  if (form.dimension() > kEnumerationLimit) {
    throw BudgetExceeded(
        "sign enumeration needs 2^" + std::to_string(form.dimension()) +
            " states; the limit is n <= " + std::to_string(kEnumerationLimit),
        std::ldexp(1.0, form.dimension()), std::ldexp(1.0, kEnumerationLimit));
  }
}

struct Enumerator {
  explicit Enumerator(const SymmetricMultilinearForm& form) : n(form.dimension()) {
    for (const auto& t : form.terms()) {
      std::uint64_t mask = 0;
      for (int j : t.indices) mask |= std::uint64_t{1} << j;
      masks.push_back(mask);
      weights.push_back(t.weight);
    }
    touching.resize(static_cast<std::size_t>(n));
    for (std::size_t t = 0; t < masks.size(); ++t) {
      for (int j = 0; j < n; ++j) {
        if (masks[t] >> j & 1U) touching[static_cast<std::size_t>(j)].push_back(t);
      }
    }
    block_bits = std::min(n, kMaxBlockBits);
    low_bits = n - block_bits;
  }

  std::size_t blocks() const { return std::size_t{1} << block_bits; }
  std::size_t block_size() const { return std::size_t{1} << low_bits; }

  // Same arithmetic and term order as evaluate().
  double naive(const std::vector<int>& sign) const {
    double z = 0.0;
    for (std::size_t t = 0; t < masks.size(); ++t) z += sign[t] * weights[t];
    return z;
  }

  void fill_signs(std::uint64_t state, std::vector<int>& sign) const {
    for (std::size_t t = 0; t < masks.size(); ++t) {
      sign[t] = std::popcount(masks[t] & state) & 1 ? -1 : 1;
    }
  }

  // values[i] = Z at mask (block << low_bits) | gray(i).
  void run_block(std::size_t block, std::vector<double>& values,
                 std::vector<std::uint64_t>& states) const {
    const std::size_t size = block_size();
    values.resize(size);
    states.resize(size);
    std::vector<int> sign(masks.size());
    std::uint64_t state = static_cast<std::uint64_t>(block) << low_bits;
    fill_signs(state, sign);
    double z = naive(sign);
    values[0] = z;
    states[0] = state;
    for (std::size_t i = 1; i < size; ++i) {
      const int j = std::countr_zero(i);
      state ^= std::uint64_t{1} << j;
      double delta = 0.0;
      for (std::size_t t : touching[static_cast<std::size_t>(j)]) {
        delta += sign[t] * weights[t];
        sign[t] = -sign[t];
      }
      z -= 2.0 * delta;
      if (i % kResyncInterval == 0) z = naive(sign);
      values[i] = z;
      states[i] = state;
    }
  }

  int n;
  int block_bits = 0;
  int low_bits = 0;
  std::vector<std::uint64_t> masks;
  std::vector<double> weights;
  std::vector<std::vector<std::size_t>> touching;
};

// Calls visit(block, values) once per block, possibly concurrently.
template <class Visit>
void for_each_block(const SymmetricMultilinearForm& form, Visit visit) {
  check_budget(form);
  const Enumerator en(form);
  detail::parallel_for(en.blocks(), [&](std::size_t b) {
    std::vector<double> values;
    std::vector<std::uint64_t> states;
    en.run_block(b, values, states);
    visit(b, values);
  });
}

double ipow(double x, int p) {
  double r = 1.0;
  for (int i = 0; i < p; ++i) r *= x;
  return r;
}

}  // namespace

double exact_moment_rademacher(const SymmetricMultilinearForm& form, int order) {
  if (order < 0) throw InvalidInput("moment order must be nonnegative");
  check_budget(form);
  if (order % 2 != 0) return 0.0;
  if (order == 0) return 1.0;

  const Enumerator probe(form);
  std::vector<double> partial(probe.blocks(), 0.0);
  for_each_block(form, [&](std::size_t b, const std::vector<double>& values) {
    double s = 0.0;
    for (double z : values) s += ipow(z, order);
    partial[b] = s;
  });
  double total = 0.0;
  for (double s : partial) total += s;
  return std::ldexp(total, -form.dimension());
}

double exact_moment_by_expansion(const SymmetricMultilinearForm& form,
                                 const MomentSequence& moments, int order,
                                 const ExpansionOptions& options) {
  if (order < 0) throw InvalidInput("moment order must be nonnegative");
  if (order % 2 != 0) return 0.0;
  // A multilinear form raised to `order` has per-variable exponents <= order.
  if (2 * moments.max_half_order() < order) {
    throw InvalidInput("moment sequence '" + moments.label() +
                       "' provides moments up to order " +
                       std::to_string(2 * moments.max_half_order()) +
                       "; order " + std::to_string(order) + " is required");
  }
  ExpansionOptions opts = options;
  opts.reduce_mod2 = opts.reduce_mod2 || moments.is_sign();
  return expectation_of_power(MonomialPolynomial::from_form(form), order,
                              moments, opts);
}

namespace {

std::vector<double> count_tails(const SymmetricMultilinearForm& form,
                                std::span<const double> u, bool two_sided) {
  check_budget(form);
  const Enumerator probe(form);
  std::vector<std::vector<std::uint64_t>> counts(
      probe.blocks(), std::vector<std::uint64_t>(u.size(), 0));
  for_each_block(form, [&](std::size_t b, const std::vector<double>& values) {
    auto& c = counts[b];
    for (double z : values) {
      const double a = two_sided ? std::fabs(z) : z;
      for (std::size_t i = 0; i < u.size(); ++i) c[i] += a > u[i];
    }
  });
  std::vector<double> out(u.size(), 0.0);
  for (std::size_t i = 0; i < u.size(); ++i) {
    std::uint64_t total = 0;
    for (const auto& c : counts) total += c[i];
    out[i] = std::ldexp(static_cast<double>(total), -form.dimension());
  }
  return out;
}

}  // namespace

std::vector<double> exact_tails(const SymmetricMultilinearForm& form,
                                std::span<const double> u) {
  return count_tails(form, u, true);
}

std::vector<double> exact_upper_tails(const SymmetricMultilinearForm& form,
                                      std::span<const double> u) {
  return count_tails(form, u, false);
}

double exact_tail(const SymmetricMultilinearForm& form, double u) {
  const double one[] = {u};
  return exact_tails(form, one).front();
}

double rademacher_max_abs(const SymmetricMultilinearForm& form) {
  check_budget(form);
  const Enumerator probe(form);
  std::vector<double> partial(probe.blocks(), 0.0);
  for_each_block(form, [&](std::size_t b, const std::vector<double>& values) {
    double m = 0.0;
    for (double z : values) m = std::max(m, std::fabs(z));
    partial[b] = m;
  });
  return *std::max_element(partial.begin(), partial.end());
}

std::vector<double> enumerate_values(const SymmetricMultilinearForm& form) {
  check_budget(form);
  const Enumerator en(form);
  std::vector<double> out(std::size_t{1} << form.dimension());
  detail::parallel_for(en.blocks(), [&](std::size_t b) {
    std::vector<double> values;
    std::vector<std::uint64_t> states;
    en.run_block(b, values, states);
    for (std::size_t i = 0; i < values.size(); ++i) out[states[i]] = values[i];
  });
  return out;
}

}  // namespace chaos
