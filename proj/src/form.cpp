#include "chaos/form.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "chaos/error.hpp"

namespace chaos {
namespace {

std::string describe(const IndexTuple& key) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (i) os << ',';
    os << key[i];
  }
  os << ')';
  return os.str();
}

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// Distinct indices in 1..n, any order.
void check_distinct_key(const IndexTuple& key, int k, int n) {
  if (static_cast<int>(key.size()) != k) {
    throw InvalidInput("key " + describe(key) + " has length " +
                       std::to_string(key.size()) + ", expected " +
                       std::to_string(k));
  }
  for (int j : key) {
    if (j < 1 || j > n) {
      throw InvalidInput("key " + describe(key) + " has index outside 1.." +
                         std::to_string(n));
    }
  }
  IndexTuple sorted = key;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InvalidInput("key " + describe(key) + " repeats an index");
  }
}

}  // namespace

SignVector::SignVector(std::vector<int> values) : values_(std::move(values)) {
  for (int v : values_) {
    if (v != 1 && v != -1) {
      throw InvalidInput("sign entries must be +1 or -1, got " +
                         std::to_string(v));
    }
  }
}

SignVector SignVector::ones(int n) {
  return SignVector(std::vector<int>(static_cast<std::size_t>(n), 1));
}

SignVector SignVector::from_mask(int n, std::uint64_t mask) {
  std::vector<int> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = (mask >> i) & 1U ? -1 : 1;
  return SignVector(std::move(v));
}

SignVector SignVector::negated() const {
  std::vector<int> v = values_;
  for (int& x : v) x = -x;
  return SignVector(std::move(v));
}

SymmetricMultilinearForm::SymmetricMultilinearForm(int k, int n,
                                                   CoefficientMap coeffs)
    : k_(k), n_(n) {
  if (k < 1) throw InvalidInput("degree k must be positive");
  if (n < k) {
    throw InvalidInput("dimension n=" + std::to_string(n) +
                       " is smaller than degree k=" + std::to_string(k));
  }
  for (auto& [key, value] : coeffs) {
    check_distinct_key(key, k, n);
    if (!std::is_sorted(key.begin(), key.end())) {
      throw InvalidInput("key " + describe(key) + " is not sorted");
    }
    if (!std::isfinite(value)) {
      throw InvalidInput("key " + describe(key) + " has a non-finite value");
    }
    if (value != 0.0) coeffs_.emplace(key, value);
  }
  const double multiplicity = factorial(k);
  terms_.reserve(coeffs_.size());
  for (const auto& [key, value] : coeffs_) {
    FormTerm t;
    t.indices.reserve(key.size());
    for (int j : key) t.indices.push_back(j - 1);
    t.weight = multiplicity * value;
    terms_.push_back(std::move(t));
  }
}

double SymmetricMultilinearForm::coefficient(const IndexTuple& indices) const {
  check_distinct_key(indices, k_, n_);
  IndexTuple sorted = indices;
  std::sort(sorted.begin(), sorted.end());
  auto it = coeffs_.find(sorted);
  return it == coeffs_.end() ? 0.0 : it->second;
}

SymmetricMultilinearForm SymmetricMultilinearForm::absolute() const {
  CoefficientMap abs;
  for (const auto& [key, value] : coeffs_) abs.emplace(key, std::fabs(value));
  return SymmetricMultilinearForm(k_, n_, std::move(abs));
}

double SymmetricMultilinearForm::sup_norm_bound() const {
  double s = 0.0;
  for (const auto& t : terms_) s += std::fabs(t.weight);
  return s;
}

SymmetricMultilinearForm symmetrize(int k, int n,
                                    const std::map<IndexTuple, double>& raw) {
  if (k < 1) throw InvalidInput("degree k must be positive");
  std::map<IndexTuple, double> sums;
  for (const auto& [key, value] : raw) {
    check_distinct_key(key, k, n);
    IndexTuple sorted = key;
    std::sort(sorted.begin(), sorted.end());
    sums[sorted] += value;
  }
  const double kf = factorial(k);
  for (auto& [key, value] : sums) value /= kf;
  return SymmetricMultilinearForm(k, n, std::move(sums));
}

std::map<IndexTuple, double> expand(const SymmetricMultilinearForm& form) {
  std::map<IndexTuple, double> out;
  for (const auto& [key, value] : form.coefficients()) {
    IndexTuple perm = key;
    do {
      out.emplace(perm, value);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return out;
}

double v_squared(const SymmetricMultilinearForm& form) {
  double s = 0.0;
  for (const auto& [key, value] : form.coefficients()) s += value * value;
  return factorial(form.degree()) * s;
}

double evaluate(const SymmetricMultilinearForm& form, const SignVector& signs) {
  if (signs.size() != form.dimension()) {
    throw InvalidInput("sign vector has length " +
                       std::to_string(signs.size()) + ", form has n=" +
                       std::to_string(form.dimension()));
  }
  double z = 0.0;
  for (const auto& t : form.terms()) {
    int sign = 1;
    for (int j : t.indices) sign *= signs[j];
    z += sign * t.weight;
  }
  return z;
}

double evaluate_at(const SymmetricMultilinearForm& form,
                   std::span<const double> x) {
  if (static_cast<int>(x.size()) != form.dimension()) {
    throw InvalidInput("point has length " + std::to_string(x.size()) +
                       ", form has n=" + std::to_string(form.dimension()));
  }
  double z = 0.0;
  for (const auto& t : form.terms()) {
    double p = t.weight;
    for (int j : t.indices) p *= x[static_cast<std::size_t>(j)];
    z += p;
  }
  return z;
}

}  // namespace chaos
