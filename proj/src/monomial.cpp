#include "chaos/monomial.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "chaos/error.hpp"

namespace chaos {
namespace {

using Key = std::string;
using Term = std::pair<Key, double>;

constexpr int kMaxExponent = 255;

Key make_key(int n, std::span<const int> exponents) {
  if (static_cast<int>(exponents.size()) != n) {
    throw InvalidInput("exponent vector has length " +
                       std::to_string(exponents.size()) + ", expected " +
                       std::to_string(n));
  }
  Key key(static_cast<std::size_t>(n), '\0');
  for (int i = 0; i < n; ++i) {
    const int e = exponents[static_cast<std::size_t>(i)];
    if (e < 0 || e > kMaxExponent) {
      throw InvalidInput("exponent out of range 0..255");
    }
    key[static_cast<std::size_t>(i)] = static_cast<char>(e);
  }
  return key;
}

int exponent_at(const Key& key, std::size_t i) {
  return static_cast<unsigned char>(key[i]);
}

int odd_count(const Key& key) {
  int c = 0;
  for (std::size_t i = 0; i < key.size(); ++i) c += exponent_at(key, i) & 1;
  return c;
}

void combine_into(Key& out, const Key& a, const Key& b, bool mod2) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    int e = exponent_at(a, i) + exponent_at(b, i);
    if (mod2) e &= 1;
    if (e > kMaxExponent) throw InvalidInput("exponent overflow in expansion");
    out[i] = static_cast<char>(e);
  }
}

double key_expectation(const Key& key, const MomentSequence& moments) {
  double e = 1.0;
  for (std::size_t i = 0; i < key.size() && e != 0.0; ++i) {
    e *= moments.raw(exponent_at(key, i));
  }
  return e;
}

std::vector<Term> sorted_terms(std::unordered_map<Key, double>&& live) {
  std::vector<Term> out;
  out.reserve(live.size());
  for (auto& [k, v] : live) {
    if (v != 0.0) out.emplace_back(k, v);
  }
  std::sort(out.begin(), out.end(),
            [](const Term& x, const Term& y) { return x.first < y.first; });
  return out;
}

// One multiplication step over canonically ordered inputs. Partial products
// with more than `max_odd` odd exponents are dropped.
std::vector<Term> multiply_step(const std::vector<Term>& lhs,
                                const std::vector<Term>& rhs, bool mod2,
                                int max_odd, std::size_t cap) {
  std::unordered_map<Key, double> live;
  Key scratch;
  for (const auto& [ka, va] : lhs) {
    scratch.assign(ka.size(), '\0');
    for (const auto& [kb, vb] : rhs) {
      combine_into(scratch, ka, kb, mod2);
      if (max_odd >= 0 && odd_count(scratch) > max_odd) continue;
      live[scratch] += va * vb;
      if (live.size() > cap) {
        throw BudgetExceeded("monomial expansion exceeded the term cap of " +
                                 std::to_string(cap),
                             static_cast<double>(live.size()),
                             static_cast<double>(cap));
      }
    }
  }
  return sorted_terms(std::move(live));
}

std::vector<Term> as_terms(const std::map<Key, double>& m) {
  return {m.begin(), m.end()};
}

}  // namespace

MonomialPolynomial::MonomialPolynomial(int variables) : n_(variables) {
  if (variables < 0) throw InvalidInput("variable count must be nonnegative");
}

MonomialPolynomial MonomialPolynomial::from_form(
    const SymmetricMultilinearForm& form) {
  MonomialPolynomial p(form.dimension());
  for (const auto& t : form.terms()) {
    Key key(static_cast<std::size_t>(p.n_), '\0');
    for (int j : t.indices) key[static_cast<std::size_t>(j)] = 1;
    p.terms_.emplace(std::move(key), t.weight);
  }
  return p;
}

MonomialPolynomial MonomialPolynomial::constant(int variables, double c) {
  MonomialPolynomial p(variables);
  if (c != 0.0) p.terms_.emplace(Key(static_cast<std::size_t>(variables), '\0'), c);
  return p;
}

void MonomialPolynomial::add_term(std::span<const int> exponents,
                                  double coefficient) {
  Key key = make_key(n_, exponents);
  auto [it, inserted] = terms_.emplace(key, coefficient);
  if (!inserted) it->second += coefficient;
  if (it->second == 0.0) terms_.erase(it);
}

double MonomialPolynomial::coefficient(std::span<const int> exponents) const {
  auto it = terms_.find(make_key(n_, exponents));
  return it == terms_.end() ? 0.0 : it->second;
}

std::vector<std::pair<MonomialPolynomial::Exponents, double>>
MonomialPolynomial::terms() const {
  std::vector<std::pair<Exponents, double>> out;
  out.reserve(terms_.size());
  for (const auto& [key, value] : terms_) {
    Exponents e(key.size());
    for (std::size_t i = 0; i < key.size(); ++i) e[i] = exponent_at(key, i);
    out.emplace_back(std::move(e), value);
  }
  return out;
}

MonomialPolynomial MonomialPolynomial::times(
    const MonomialPolynomial& other, const ExpansionOptions& options) const {
  if (other.n_ != n_) throw InvalidInput("polynomials over different variable sets");
  auto product = multiply_step(as_terms(terms_), as_terms(other.terms_),
                               options.reduce_mod2, -1, options.term_cap);
  MonomialPolynomial out(n_);
  out.terms_.insert(product.begin(), product.end());
  return out;
}

MonomialPolynomial MonomialPolynomial::power(
    int exponent, const ExpansionOptions& options) const {
  if (exponent < 0) throw InvalidInput("negative power");
  MonomialPolynomial out = constant(n_, 1.0);
  for (int i = 0; i < exponent; ++i) out = out.times(*this, options);
  return out;
}

double MonomialPolynomial::expectation(const MomentSequence& moments) const {
  double sum = 0.0;
  for (const auto& [key, value] : terms_) sum += value * key_expectation(key, moments);
  return sum;
}

double expectation_of_power(const MonomialPolynomial& base, int order,
                            const MomentSequence& moments,
                            const ExpansionOptions& options) {
  if (order < 0) throw InvalidInput("negative power");
  const int n = base.n_;
  if (order == 0) return 1.0;

  const auto factor = as_terms(base.terms_);
  // Odd exponents a single factor can toggle.
  int flips = 0;
  for (const auto& [k, v] : factor) flips = std::max(flips, odd_count(k));

  std::vector<Term> current{{Key(static_cast<std::size_t>(n), '\0'), 1.0}};
  for (int step = 1; step < order; ++step) {
    const int max_odd = flips * (order - step);
    current = multiply_step(current, factor, options.reduce_mod2, max_odd,
                            options.term_cap);
    if (current.empty()) return 0.0;
  }

  // Last factor: accumulate expectations in canonical key order.
  double sum = 0.0;
  Key scratch(static_cast<std::size_t>(n), '\0');
  for (const auto& [ka, va] : current) {
    double row = 0.0;
    for (const auto& [kb, vb] : factor) {
      combine_into(scratch, ka, kb, options.reduce_mod2);
      if (odd_count(scratch) != 0) continue;
      row += vb * key_expectation(scratch, moments);
    }
    sum += va * row;
  }
  return sum;
}

}  // namespace chaos
