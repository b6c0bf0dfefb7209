#include "chaos/diagram.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "chaos/error.hpp"

namespace chaos {
namespace {

// (v - 1)!! as a double, the number of perfect matchings of v points.
double pairing_count(int v) {
  if (v % 2 != 0) return 0.0;
  double c = 1.0;
  for (int i = v - 1; i > 1; i -= 2) c *= i;
  return c;
}

void check_diagram_budget(const RowLayout& layout, double budget) {
  const double projected = pairing_count(layout.vertex_count());
  if (projected > budget) {
    throw BudgetExceeded("layout with " + std::to_string(layout.vertex_count()) +
                             " vertices has " + std::to_string(projected) +
                             " pairings, over the diagram budget",
                         projected, budget);
  }
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow("diagram count exceeds 64 bits");
  return r;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Overflow("diagram count exceeds 64 bits");
  return r;
}

class Counter {
 public:
  explicit Counter(bool allow_same_row) : allow_same_(allow_same_row) {}

  // Rows are interchangeable for counting, so the state is the sorted
  // multiset of remaining row sizes.
  std::uint64_t count(std::vector<int> remaining) {
    std::erase(remaining, 0);
    std::sort(remaining.begin(), remaining.end());
    if (remaining.empty()) return 1;
    if (auto it = memo_.find(remaining); it != memo_.end()) return it->second;

    std::uint64_t total = 0;
    auto next = remaining;
    --next[0];
    for (std::size_t s = 1; s < remaining.size(); ++s) {
      auto state = next;
      --state[s];
      total = checked_add(total, checked_mul(static_cast<std::uint64_t>(remaining[s]),
                                             count(std::move(state))));
    }
    if (allow_same_ && remaining[0] >= 2) {
      auto state = next;
      --state[0];
      total = checked_add(total, checked_mul(static_cast<std::uint64_t>(remaining[0] - 1),
                                             count(std::move(state))));
    }
    memo_.emplace(std::move(remaining), total);
    return total;
  }

 private:
  bool allow_same_;
  std::map<std::vector<int>, std::uint64_t> memo_;
};

class Pairer {
 public:
  Pairer(const RowLayout& layout, bool allow_same_row,
         const std::function<void(const Diagram&)>& visit)
      : allow_same_(allow_same_row), visit_(visit) {
    current_.layout = layout;
    for (int l = 0; l < layout.rows(); ++l) {
      for (int j = 0; j < layout.row_sizes[static_cast<std::size_t>(l)]; ++j) {
        vertices_.push_back({l, j});
      }
    }
    matched_.assign(vertices_.size(), false);
  }

  void run() {
    if (vertices_.size() % 2 != 0) return;
    recurse(0);
  }

 private:
  void recurse(std::size_t from) {
    while (from < vertices_.size() && matched_[from]) ++from;
    if (from == vertices_.size()) {
      visit_(current_);
      return;
    }
    matched_[from] = true;
    for (std::size_t p = from + 1; p < vertices_.size(); ++p) {
      if (matched_[p]) continue;
      if (!allow_same_ && vertices_[p].row == vertices_[from].row) continue;
      matched_[p] = true;
      current_.edges.push_back({vertices_[from], vertices_[p]});
      recurse(from + 1);
      current_.edges.pop_back();
      matched_[p] = false;
    }
    matched_[from] = false;
  }

  bool allow_same_;
  const std::function<void(const Diagram&)>& visit_;
  std::vector<Vertex> vertices_;
  std::vector<bool> matched_;
  Diagram current_;
};

void check_kernels(const Diagram& gamma, std::span<const DiscreteKernel> kernels) {
  const auto& rows = gamma.layout.row_sizes;
  if (kernels.size() != rows.size()) {
    throw InvalidInput("diagram has " + std::to_string(rows.size()) + " rows but " +
                       std::to_string(kernels.size()) + " kernels were given");
  }
  for (std::size_t l = 0; l < rows.size(); ++l) {
    if (kernels[l].arity() != rows[l]) {
      throw InvalidInput("kernel " + std::to_string(l) + " has arity " +
                         std::to_string(kernels[l].arity()) + " but row " +
                         std::to_string(l) + " has " + std::to_string(rows[l]) +
                         " vertices");
    }
    if (kernels[l].ground_size() != kernels[0].ground_size() ||
        !std::equal(kernels[l].measure().begin(), kernels[l].measure().end(),
                    kernels[0].measure().begin(), kernels[0].measure().end())) {
      throw InvalidInput("kernels must share the ground set and measure");
    }
  }
}

}  // namespace

int RowLayout::vertex_count() const noexcept {
  return std::accumulate(row_sizes.begin(), row_sizes.end(), 0);
}

RowLayout RowLayout::equal_rows(int k, int L) {
  return RowLayout{std::vector<int>(static_cast<std::size_t>(L), k)};
}

bool Diagram::cross_row_only() const {
  return std::all_of(edges.begin(), edges.end(),
                     [](const Edge& e) { return e.upper.row != e.lower.row; });
}

std::vector<Vertex> Diagram::lower_endpoints() const {
  std::vector<Vertex> out;
  out.reserve(edges.size());
  for (const auto& e : edges) out.push_back(e.lower);
  std::sort(out.begin(), out.end());
  return out;
}

void for_each_diagram(const RowLayout& layout, bool allow_same_row,
                      const std::function<void(const Diagram&)>& visit,
                      double budget) {
  for (int size : layout.row_sizes) {
    if (size < 1) throw InvalidInput("row sizes must be positive");
  }
  if (layout.vertex_count() % 2 != 0) return;
  check_diagram_budget(layout, budget);
  Pairer(layout, allow_same_row, visit).run();
}

std::vector<Diagram> enumerate_diagrams(const RowLayout& layout,
                                        bool allow_same_row, double budget) {
  std::vector<Diagram> out;
  for_each_diagram(layout, allow_same_row,
                   [&](const Diagram& d) { out.push_back(d); }, budget);
  return out;
}

std::uint64_t count_diagrams(const RowLayout& layout, bool allow_same_row) {
  for (int size : layout.row_sizes) {
    if (size < 1) throw InvalidInput("row sizes must be positive");
  }
  if (layout.vertex_count() % 2 != 0) return 0;
  return Counter(allow_same_row).count(layout.row_sizes);
}

DiscreteKernel::DiscreteKernel(int arity, int ground_size,
                               std::vector<double> values,
                               std::vector<double> measure)
    : arity_(arity),
      ground_(ground_size),
      values_(std::move(values)),
      measure_(std::move(measure)) {
  if (arity < 1) throw InvalidInput("kernel arity must be positive");
  if (ground_size < 1) throw InvalidInput("ground set must be nonempty");
  const double expected = std::pow(static_cast<double>(ground_size), arity);
  if (expected > 1e8) throw InvalidInput("dense kernel would hold more than 1e8 values");
  if (static_cast<double>(values_.size()) != expected) {
    throw InvalidInput("kernel needs " + std::to_string(static_cast<long long>(expected)) +
                       " values, got " + std::to_string(values_.size()));
  }
  if (static_cast<int>(measure_.size()) != ground_size) {
    throw InvalidInput("measure needs " + std::to_string(ground_size) + " atom weights");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw InvalidInput("kernel values must be finite");
  }
  for (double w : measure_) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw InvalidInput("atom weights must be finite and nonnegative");
    }
  }
}

double DiscreteKernel::operator()(std::span<const int> args) const {
  if (static_cast<int>(args.size()) != arity_) {
    throw InvalidInput("kernel called with the wrong number of arguments");
  }
  std::size_t idx = 0;
  for (int x : args) {
    if (x < 0 || x >= ground_) throw InvalidInput("kernel argument outside the ground set");
    idx = idx * static_cast<std::size_t>(ground_) + static_cast<std::size_t>(x);
  }
  return values_[idx];
}

double DiscreteKernel::squared_norm() const {
  double s = 0.0;
  std::vector<int> x(static_cast<std::size_t>(arity_), 0);
  for (double v : values_) {
    double w = v * v;
    for (int xi : x) w *= measure_[static_cast<std::size_t>(xi)];
    s += w;
    for (int i = arity_ - 1; i >= 0; --i) {
      if (++x[static_cast<std::size_t>(i)] < ground_) break;
      x[static_cast<std::size_t>(i)] = 0;
    }
  }
  return s;
}

double f_gamma(const Diagram& gamma, std::span<const DiscreteKernel> kernels) {
  std::vector<int> identity(gamma.edges.size());
  std::iota(identity.begin(), identity.end(), 0);
  return f_gamma(gamma, kernels, identity);
}

double f_gamma(const Diagram& gamma, std::span<const DiscreteKernel> kernels,
               std::span<const int> endpoint_order) {
  check_kernels(gamma, kernels);
  const auto lowers = gamma.lower_endpoints();
  const std::size_t N = lowers.size();
  {
    std::vector<int> sorted(endpoint_order.begin(), endpoint_order.end());
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t r = 0; r < sorted.size(); ++r) {
      if (sorted[r] != static_cast<int>(r) || sorted.size() != N) {
        throw InvalidInput("endpoint order must be a permutation of 0..N-1");
      }
    }
  }
  const int G = kernels.empty() ? 1 : kernels[0].ground_size();
  const double assignments = std::pow(static_cast<double>(G), static_cast<double>(N));
  if (assignments > kAssignmentBudget) {
    throw BudgetExceeded("F_gamma needs " + std::to_string(assignments) +
                             " ground-point assignments",
                         assignments, kAssignmentBudget);
  }

  // slot[l][j]: summation variable carried by vertex (l, j), i.e. the
  // position of its edge's lower endpoint in the chosen numbering.
  std::map<Vertex, int> position;
  for (std::size_t r = 0; r < N; ++r) {
    position.emplace(lowers[static_cast<std::size_t>(endpoint_order[r])], static_cast<int>(r));
  }
  std::vector<std::vector<int>> slot(kernels.size());
  for (std::size_t l = 0; l < kernels.size(); ++l) {
    slot[l].resize(static_cast<std::size_t>(kernels[l].arity()));
  }
  for (const auto& e : gamma.edges) {
    const int r = position.at(e.lower);
    slot[static_cast<std::size_t>(e.upper.row)][static_cast<std::size_t>(e.upper.col)] = r;
    slot[static_cast<std::size_t>(e.lower.row)][static_cast<std::size_t>(e.lower.col)] = r;
  }

  if (kernels.empty()) return 1.0;
  const auto mu = kernels[0].measure();
  std::vector<int> x(N, 0);
  double total = 0.0;
  while (true) {
    double w = 1.0;
    for (int xi : x) w *= mu[static_cast<std::size_t>(xi)];
    if (w != 0.0) {
      for (std::size_t l = 0; l < kernels.size() && w != 0.0; ++l) {
        std::size_t idx = 0;
        for (int s : slot[l]) {
          idx = idx * static_cast<std::size_t>(G) + static_cast<std::size_t>(x[static_cast<std::size_t>(s)]);
        }
        w *= kernels[l].values()[idx];
      }
      total += w;
    }
    std::size_t i = N;
    while (i > 0) {
      --i;
      if (++x[i] < G) break;
      x[i] = 0;
      if (i == 0) return total;
    }
    if (N == 0) return total;
  }
}

double expected_product(std::span<const DiscreteKernel> kernels, double budget) {
  RowLayout layout;
  for (const auto& f : kernels) layout.row_sizes.push_back(f.arity());
  if (kernels.empty()) return 1.0;
  double total = 0.0;
  for_each_diagram(layout, false,
                   [&](const Diagram& d) { total += f_gamma(d, kernels); }, budget);
  return total;
}

double chaos_moment_via_diagrams(const DiscreteKernel& kernel, int M, double budget) {
  if (M < 1) throw InvalidInput("moment index M must be positive");
  const int vertices = 2 * M * kernel.arity();
  const double projected = pairing_count(vertices);
  if (projected > budget) {
    throw BudgetExceeded("diagram formula for 2M=" + std::to_string(2 * M) +
                             ", k=" + std::to_string(kernel.arity()) + " needs up to " +
                             std::to_string(projected) + " diagrams",
                         projected, budget);
  }
  const std::vector<DiscreteKernel> copies(static_cast<std::size_t>(2 * M), kernel);
  return expected_product(copies, budget);
}

DiscreteKernel embed_form(const SymmetricMultilinearForm& form,
                          bool use_absolute_values) {
  const int k = form.degree();
  const int n = form.dimension();
  const auto size = static_cast<std::size_t>(std::pow(static_cast<double>(n), k));
  std::vector<double> values(size, 0.0);
  for (const auto& [key, value] : form.coefficients()) {
    const double v = use_absolute_values ? std::fabs(value) : value;
    IndexTuple perm = key;
    do {
      std::size_t idx = 0;
      for (int j : perm) idx = idx * static_cast<std::size_t>(n) + static_cast<std::size_t>(j - 1);
      values[idx] = v;
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return DiscreteKernel(k, n, std::move(values),
                        std::vector<double>(static_cast<std::size_t>(n), 1.0));
}

}  // namespace chaos
