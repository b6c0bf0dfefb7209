#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "chaos/form.hpp"

namespace chaos {

/// Refuse layouts with more (same-row-allowed) pairings than this.
inline constexpr double kDefaultDiagramBudget = 1e7;
/// Refuse F_gamma sums with more ground-point assignments than this.
inline constexpr double kAssignmentBudget = 1e9;

/// Rows of vertices (l, j), 0 <= l < L, 0 <= j < row_sizes[l].
struct RowLayout {
  std::vector<int> row_sizes;

  int rows() const noexcept { return static_cast<int>(row_sizes.size()); }
  int vertex_count() const noexcept;
  /// L copies of a row of size k.
  static RowLayout equal_rows(int k, int L);
};

struct Vertex {
  int row;
  int col;
  auto operator<=>(const Vertex&) const = default;
};

/// Edge of a diagram. `lower` is the endpoint in the larger row; for an
/// edge inside one row it is the endpoint with the larger column.
struct Edge {
  Vertex upper;
  Vertex lower;
  auto operator<=>(const Edge&) const = default;
};

/// Perfect matching of the vertices of a layout. Edges are listed in the
/// row-major order of their upper endpoints.
struct Diagram {
  RowLayout layout;
  std::vector<Edge> edges;

  bool cross_row_only() const;
  /// Lower endpoints in lexicographic (row, col) order.
  std::vector<Vertex> lower_endpoints() const;
};

/// Visits every perfect matching once. Vertices are taken in row-major
/// order; the first unmatched vertex is paired with each later unmatched
/// vertex in turn, so diagrams come out in lexicographic order of their
/// edge lists. Throws BudgetExceeded when the layout has more than `budget`
/// same-row-allowed pairings.
void for_each_diagram(const RowLayout& layout, bool allow_same_row,
                      const std::function<void(const Diagram&)>& visit,
                      double budget = kDefaultDiagramBudget);

std::vector<Diagram> enumerate_diagrams(const RowLayout& layout,
                                        bool allow_same_row,
                                        double budget = kDefaultDiagramBudget);

/// Number of diagrams, by a memoized recursion on the remaining row sizes
/// (does not enumerate). Throws Overflow past 64 bits.
std::uint64_t count_diagrams(const RowLayout& layout, bool allow_same_row);

/// Real kernel f(x_1..x_k) on a finite ground set {0..G-1} carrying atom
/// weights mu(x). Values are dense, first argument most significant.
class DiscreteKernel {
 public:
  DiscreteKernel(int arity, int ground_size, std::vector<double> values,
                 std::vector<double> measure);

  int arity() const noexcept { return arity_; }
  int ground_size() const noexcept { return ground_; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<const double> measure() const noexcept { return measure_; }

  double operator()(std::span<const int> args) const;
  /// sum f^2(x_1..x_k) mu(x_1)...mu(x_k).
  double squared_norm() const;

 private:
  int arity_;
  int ground_;
  std::vector<double> values_;
  std::vector<double> measure_;
};

/// F_gamma: the product of the kernels with the two ends of every edge
/// identified, summed over the lower endpoints with weights mu. Lower
/// endpoints are numbered lexicographically.
double f_gamma(const Diagram& gamma, std::span<const DiscreteKernel> kernels);

/// F_gamma with the lower endpoints numbered by `endpoint_order`, a
/// permutation of 0..N-1 applied to the lexicographic list.
double f_gamma(const Diagram& gamma, std::span<const DiscreteKernel> kernels,
               std::span<const int> endpoint_order);

/// E prod_l (k_l! J_{k_l}(f_l)) = sum of F_gamma over cross-row diagrams.
/// Zero when no such diagram exists.
double expected_product(std::span<const DiscreteKernel> kernels,
                        double budget = kDefaultDiagramBudget);

/// E (k! J_k(f))^{2M} from the diagram formula. Throws BudgetExceeded when
/// (2kM - 1)!! exceeds the budget.
double chaos_moment_via_diagrams(const DiscreteKernel& kernel, int M,
                                 double budget = kDefaultDiagramBudget);

/// Ground set {1..n} with unit atoms; value a(j_1..j_k) (or |a|) on tuples
/// of distinct indices and 0 whenever an index repeats.
DiscreteKernel embed_form(const SymmetricMultilinearForm& form,
                          bool use_absolute_values);

}  // namespace chaos
