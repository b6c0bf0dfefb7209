#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "chaos/distributions.hpp"
#include "chaos/form.hpp"

namespace chaos {

struct ExpansionOptions {
  /// Reduce every exponent modulo 2 (valid when x^2 = 1, i.e. random signs).
  bool reduce_mod2 = false;
  /// Abort with BudgetExceeded once a product holds more live terms.
  std::size_t term_cap = 10'000'000;
};

/// Polynomial in n commuting variables, stored as a map from the dense
/// exponent vector to its coefficient. Terms are kept in canonical order
/// (lexicographic in the exponents of variables 1, 2, ..., n) and zero
/// coefficients are never stored.
class MonomialPolynomial {
 public:
  using Exponents = std::vector<int>;

  explicit MonomialPolynomial(int variables);

  /// Z as a polynomial: one monomial per sorted key, coefficient k! * a.
  static MonomialPolynomial from_form(const SymmetricMultilinearForm& form);
  static MonomialPolynomial constant(int variables, double c);

  int variables() const noexcept { return n_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }

  void add_term(std::span<const int> exponents, double coefficient);
  double coefficient(std::span<const int> exponents) const;
  std::vector<std::pair<Exponents, double>> terms() const;

  MonomialPolynomial times(const MonomialPolynomial& other,
                           const ExpansionOptions& options = {}) const;
  MonomialPolynomial power(int exponent,
                           const ExpansionOptions& options = {}) const;

  /// E of the polynomial when the variables are independent with the given
  /// symmetric moments: x^{2m} -> E x^{2m}, odd powers -> 0.
  double expectation(const MomentSequence& moments) const;

 private:
  friend double expectation_of_power(const MonomialPolynomial&, int,
                                     const MomentSequence&,
                                     const ExpansionOptions&);
  // One byte per variable holding its exponent.
  using Key = std::string;

  int n_;
  std::map<Key, double> terms_;
};

/// E[base^order] without storing base^order: multiplies step by step with
/// term merging, drops partial products whose odd exponents can no longer
/// all be paired off by the remaining factors, and folds the last factor
/// straight into the expectation.
double expectation_of_power(const MonomialPolynomial& base, int order,
                            const MomentSequence& moments,
                            const ExpansionOptions& options = {});

}  // namespace chaos
