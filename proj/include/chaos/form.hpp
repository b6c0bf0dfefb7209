#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace chaos {

/// Ordered tuple of 1-based variable indices.
using IndexTuple = std::vector<int>;

/// Realized outcome of n independent random signs.
class SignVector {
 public:
  explicit SignVector(std::vector<int> values);

  /// All +1 signs of length n.
  static SignVector ones(int n);
  /// Bit i of `mask` set means coordinate i+1 is -1.
  static SignVector from_mask(int n, std::uint64_t mask);

  int size() const noexcept { return static_cast<int>(values_.size()); }
  int operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }
  std::span<const int> values() const noexcept { return values_; }
  SignVector negated() const;

 private:
  std::vector<int> values_;
};

/// One flattened term of the form: the product of the listed variables
/// times `weight`, where `weight` already carries the k! multiplicity.
struct FormTerm {
  std::vector<int> indices;  // 0-based, strictly increasing
  double weight;
};

/// Homogeneous multilinear form
///   Z = sum over ordered distinct (j_1..j_k) of a(j_1..j_k) x_{j_1} ... x_{j_k}
/// with a(.) symmetric. Only strictly increasing keys are stored; the k!
/// orderings of each key are accounted for at evaluation time.
class SymmetricMultilinearForm {
 public:
  using CoefficientMap = std::map<IndexTuple, double>;

  /// Throws InvalidInput unless every key is a strictly increasing k-tuple
  /// in 1..n. Zero values are dropped.
  SymmetricMultilinearForm(int k, int n, CoefficientMap coeffs);

  int degree() const noexcept { return k_; }
  int dimension() const noexcept { return n_; }
  const CoefficientMap& coefficients() const noexcept { return coeffs_; }

  /// Coefficient a(j_1..j_k) for any ordering of distinct indices; zero when
  /// absent. Throws InvalidInput on repeated or out-of-range indices.
  double coefficient(const IndexTuple& indices) const;

  /// Terms with weight k! * a, in canonical key order.
  const std::vector<FormTerm>& terms() const noexcept { return terms_; }

  /// Same form with every coefficient replaced by its absolute value.
  SymmetricMultilinearForm absolute() const;

  /// k! * sum |a| over sorted keys; an upper bound for |Z| under signs.
  double sup_norm_bound() const;

 private:
  int k_;
  int n_;
  CoefficientMap coeffs_;
  std::vector<FormTerm> terms_;
};

/// (1/k!) * sum over permutations of the raw coefficient, collected on the
/// sorted key. Keys must be k-tuples of distinct indices in 1..n.
SymmetricMultilinearForm symmetrize(int k, int n,
                                    const std::map<IndexTuple, double>& raw);

/// Writes the canonical coefficients back over all k! orderings of each key.
std::map<IndexTuple, double> expand(const SymmetricMultilinearForm& form);

/// Sum of a^2 over all ordered distinct tuples.
double v_squared(const SymmetricMultilinearForm& form);

/// Z at a realized sign vector.
double evaluate(const SymmetricMultilinearForm& form, const SignVector& signs);

/// Z at arbitrary real coordinates.
double evaluate_at(const SymmetricMultilinearForm& form,
                   std::span<const double> x);

}  // namespace chaos
