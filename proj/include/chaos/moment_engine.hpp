#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "chaos/distributions.hpp"
#include "chaos/form.hpp"
#include "chaos/monomial.hpp"

namespace chaos {

/// Largest n for which the 2^n sign enumeration is attempted.
inline constexpr int kEnumerationLimit = 24;

/// E Z^order under independent random signs, by enumerating all 2^n sign
/// vectors. Odd orders return 0 after the budget check.
double exact_moment_rademacher(const SymmetricMultilinearForm& form, int order);

/// E Z^order for i.i.d. symmetric coordinates with the given even moments,
/// by expanding Z^order into monomials and replacing x^{2m} by E x^{2m}.
/// Needs moments up to E x^{order}; throws InvalidInput otherwise.
double exact_moment_by_expansion(const SymmetricMultilinearForm& form,
                                 const MomentSequence& moments, int order,
                                 const ExpansionOptions& options = {});

/// P(|Z| > u) under random signs, exactly.
double exact_tail(const SymmetricMultilinearForm& form, double u);

/// exact_tail at every u, from a single enumeration pass.
std::vector<double> exact_tails(const SymmetricMultilinearForm& form,
                                std::span<const double> u);

/// One-sided P(Z > u) under random signs, at every u.
std::vector<double> exact_upper_tails(const SymmetricMultilinearForm& form,
                                      std::span<const double> u);

/// max |Z| over all sign vectors.
double rademacher_max_abs(const SymmetricMultilinearForm& form);

/// Z for every sign vector, indexed by the mask of -1 coordinates, computed
/// by Gray-code updates. Exposed for equality checks against evaluate().
std::vector<double> enumerate_values(const SymmetricMultilinearForm& form);

}  // namespace chaos
