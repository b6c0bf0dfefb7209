#include "chaos/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "chaos/bounds.hpp"
#include "chaos/diagram.hpp"
#include "chaos/distributions.hpp"
#include "chaos/error.hpp"
#include "chaos/form.hpp"
#include "chaos/io.hpp"
#include "chaos/moment_engine.hpp"
#include "chaos/montecarlo.hpp"

namespace chaos::cli {
namespace {

constexpr std::uint64_t kDefaultSeed = 1;
// Margin, in standard errors, for every sampled comparison.
constexpr double kSigmaMargin = 5.0;
// Relative agreement required between two exact oracles.
constexpr double kOracleAgreement = 1e-9;

bool agree(double a, double b) {
  return std::fabs(a - b) <= kOracleAgreement * std::max(1.0, std::fabs(b));
}

void add_bound_fields(ReportRow& row, const BoundReport& r, const char* parameter) {
  row.set("bound_name", r.bound_name)
      .set("parameter", parameter)
      .set("u_or_order", r.u_or_order)
      .set("bound_value", r.bound_value.log_scale ? ReportValue(nullptr)
                                                  : ReportValue(r.bound_value.value))
      .set("log_bound_value", r.bound_value.log_value)
      .set("log_scale", r.bound_value.log_scale);
  if (r.oracle_value) {
    row.set("oracle", r.oracle_name.value_or("unspecified"))
        .set("oracle_value", *r.oracle_value)
        .set("dominates", r.dominates.value_or(false));
  } else {
    row.set("oracle", nullptr).set("oracle_value", nullptr).set("dominates", nullptr);
  }
}

ReportRow bound_row(const BoundReport& r, const char* parameter) {
  ReportRow row;
  add_bound_fields(row, r, parameter);
  return row;
}

std::optional<SymmetricMultilinearForm> maybe_form(const RunConfig& c) {
  if (!c.form_path) return std::nullopt;
  return load_form(*c.form_path);
}

SymmetricMultilinearForm require_form(const RunConfig& c) {
  if (!c.form_path) throw InvalidInput(c.command + " requires --form");
  return load_form(*c.form_path);
}

void echo_common(ReportRow& inputs, const RunConfig& c) {
  if (c.form_path) inputs.set("form", c.form_path->string());
  if (c.kernel_path) inputs.set("kernel", c.kernel_path->string());
}

void echo_form(ReportRow& inputs, const SymmetricMultilinearForm& form) {
  inputs.set("k", form.degree())
      .set("n", form.dimension())
      .set("nonzero_coefficients", form.coefficients().size())
      .set("v2", v_squared(form));
}

std::vector<int> moment_indices(const RunConfig& c, std::vector<int> fallback) {
  auto M = c.M.empty() ? std::move(fallback) : c.M;
  for (int m : M) {
    if (m < 1) throw InvalidInput("--M values must be positive");
  }
  return M;
}

// Explicit --u values plus an optional evenly spaced grid on [0, top].
std::vector<double> tail_levels(const RunConfig& c, double top) {
  std::vector<double> u = c.u;
  if (c.u_grid) {
    if (*c.u_grid < 2) throw InvalidInput("--u-grid needs at least 2 points");
    for (int i = 0; i < *c.u_grid; ++i) u.push_back(top * i / (*c.u_grid - 1));
  }
  for (double x : u) {
    if (!(x >= 0.0)) throw InvalidInput("--u values must be nonnegative");
  }
  return u;
}

double grid_top(const SymmetricMultilinearForm& form) {
  return form.dimension() <= kEnumerationLimit ? rademacher_max_abs(form)
                                               : form.sup_norm_bound();
}

CommandResult run_bounds(const RunConfig& c) {
  CommandResult result;
  Report& rep = result.report;
  rep.command = "bounds";
  echo_common(rep.inputs, c);

  const auto form = maybe_form(c);
  int k = 0;
  double v2 = 0.0;
  if (form) {
    k = form->degree();
    v2 = v_squared(*form);
    echo_form(rep.inputs, *form);
  } else {
    if (!c.k || !c.v2) throw InvalidInput("bounds requires --form, or both --k and --v2");
    k = *c.k;
    v2 = *c.v2;
    rep.inputs.set("k", k).set("v2", v2);
  }
  if (!(v2 > 0.0)) throw InvalidInput("bounds requires a nonzero form (v2 > 0)");
  const bool exact = form && form->dimension() <= kEnumerationLimit;
  const auto u = tail_levels(c, form ? grid_top(*form) : 0.0);
  const auto M = c.M;
  if (u.empty() && M.empty()) throw InvalidInput("bounds requires --u, --u-grid or --M");
  for (int m : M) {
    if (m < 1) throw InvalidInput("--M values must be positive");
  }
  rep.inputs.set("tail_constant_A", tail_constant_A(k));

  const auto two_sided = exact ? exact_tails(*form, u) : std::vector<double>{};
  const auto one_sided = exact && k == 1 ? exact_upper_tails(*form, u) : std::vector<double>{};
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto t1 = ScaledValue::from_linear(theorem1_tail_bound(u[i], k, v2));
    rep.rows.push_back(bound_row(
        exact ? make_report("theorem1_tail_bound", u[i], t1, two_sided[i], "exact_tail_enumeration")
              : make_report("theorem1_tail_bound", u[i], t1),
        "u"));
    if (k == 1 && u[i] > 0.0) {
      const auto h = ScaledValue::from_linear(hoeffding_tail_bound(u[i], v2));
      rep.rows.push_back(bound_row(
          exact ? make_report("hoeffding_tail_bound", u[i], h, one_sided[i],
                              "exact_upper_tail_enumeration")
                : make_report("hoeffding_tail_bound", u[i], h),
          "u"));
    }
  }
  for (int m : M) {
    std::optional<double> moment;
    if (exact) moment = exact_moment_rademacher(*form, 2 * m);
    const auto t2 = theorem2_moment_bound(k, m, v2);
    const auto b = borell_moment_bound(k, m, v2);
    const auto oracle_name = moment ? std::optional<std::string>("exact_moment_enumeration")
                                    : std::nullopt;
    rep.rows.push_back(bound_row(
        make_report("theorem2_moment_bound", 2 * m, t2, moment, oracle_name), "order"));
    rep.rows.push_back(bound_row(
        make_report("borell_moment_bound", 2 * m, b, moment, oracle_name), "order"));
  }
  return result;
}

CommandResult run_exact(const RunConfig& c) {
  CommandResult result;
  Report& rep = result.report;
  rep.command = "exact";
  echo_common(rep.inputs, c);
  const auto form = require_form(c);
  echo_form(rep.inputs, form);
  const double v2 = v_squared(form);
  const int k = form.degree();
  const auto M = moment_indices(c, {1, 2, 3});
  const auto u = tail_levels(c, grid_top(form));
  ExpansionOptions opts;
  opts.term_cap = c.budget_terms;
  const auto gauss = gaussian_moments();
  const auto abs_form = form.absolute();

  for (int m : M) {
    const double rad = exact_moment_rademacher(form, 2 * m);
    const double rad_expansion =
        exact_moment_by_expansion(form, rademacher_moments(), 2 * m, opts);
    ReportRow row;
    row.set("quantity", "moment").set("order", 2 * m).set("exact_moment", rad)
        .set("exact_moment_oracle", "rademacher_enumeration")
        .set("expansion_moment", rad_expansion)
        .set("oracles_agree", agree(rad_expansion, rad));
    if (v2 > 0.0) {
      add_bound_fields(row,
                       make_report("theorem2_moment_bound", 2 * m,
                                   theorem2_moment_bound(k, m, v2), rad,
                                   "rademacher_enumeration"),
                       "order");
    }
    rep.rows.push_back(std::move(row));

    // Gaussian comparison variable built from |a|.
    const double gaussian = exact_moment_by_expansion(abs_form, gauss, 2 * m, opts);
    ReportRow cmp = bound_row(make_report("gaussian_comparison_moment", 2 * m,
                                          ScaledValue::from_linear(gaussian), rad,
                                          "rademacher_enumeration"),
                              "order");
    cmp.set("quantity", "moment_comparison");
    rep.rows.push_back(std::move(cmp));
  }
  if (v2 > 0.0) {
    const auto tails = exact_tails(form, u);
    for (std::size_t i = 0; i < u.size(); ++i) {
      ReportRow row;
      row.set("quantity", "tail");
      add_bound_fields(row,
                       make_report("theorem1_tail_bound", u[i],
                                   ScaledValue::from_linear(theorem1_tail_bound(u[i], k, v2)),
                                   tails[i], "exact_tail_enumeration"),
                       "u");
      rep.rows.push_back(std::move(row));
    }
  }
  return result;
}

CommandResult run_diagrams(const RunConfig& c) {
  CommandResult result;
  Report& rep = result.report;
  rep.command = "diagrams";
  echo_common(rep.inputs, c);
  const auto M = moment_indices(c, {1, 2});

  std::optional<SymmetricMultilinearForm> form = maybe_form(c);
  std::optional<DiscreteKernel> kernel;
  if (c.kernel_path) {
    if (form) throw InvalidInput("diagrams takes --form or --kernel, not both");
    kernel = load_kernel(*c.kernel_path);
  } else if (form) {
    echo_form(rep.inputs, *form);
    kernel = embed_form(*form, true);
  }
  int k = 0;
  if (kernel) {
    k = kernel->arity();
  } else if (c.k) {
    k = *c.k;
  } else {
    throw InvalidInput("diagrams requires --form, --kernel or --k");
  }
  if (k < 1) throw InvalidInput("--k must be positive");
  rep.inputs.set("arity", k).set("budget_diagrams", c.budget_diagrams);
  if (kernel) rep.inputs.set("sigma2", kernel->squared_norm());

  ExpansionOptions opts;
  opts.term_cap = c.budget_terms;
  for (int m : M) {
    const auto layout = RowLayout::equal_rows(k, 2 * m);
    ReportRow row;
    row.set("M", m)
        .set("rows", 2 * m)
        .set("row_size", k)
        .set("same_row_count", static_cast<std::int64_t>(count_diagrams(layout, true)))
        .set("cross_row_count", static_cast<std::int64_t>(count_diagrams(layout, false)));
    try {
      row.set("double_factorial", double_factorial_odd(2 * k * m - 1));
    } catch (const Overflow&) {
      row.set("double_factorial", nullptr);
    }
    row.set("log_double_factorial", log_double_factorial_odd(2 * k * m - 1));
    if (kernel) {
      const double sigma2 = kernel->squared_norm();
      const double moment = chaos_moment_via_diagrams(*kernel, m, c.budget_diagrams);
      row.set("chaos_moment", moment).set("chaos_moment_oracle", "diagram_formula");
      if (form) {
        const double expansion =
            exact_moment_by_expansion(form->absolute(), gaussian_moments(), 2 * m, opts);
        row.set("expansion_moment", expansion).set("oracles_agree", agree(moment, expansion));
      }
      const auto bound = sigma2 > 0.0 ? theorem2_moment_bound(k, m, sigma2)
                                      : ScaledValue{0.0, -INFINITY, false};
      row.set("bound_name", "diagram_moment_bound")
          .set("bound_value", bound.log_scale ? ReportValue(nullptr) : ReportValue(bound.value))
          .set("log_bound_value", bound.log_value)
          .set("dominates", dominates_with_tolerance(bound, moment));
    }
    rep.rows.push_back(std::move(row));
  }
  return result;
}

std::vector<SubGaussianInput> resolve_inputs(const RunConfig& c, int n) {
  if (c.dists.empty()) throw InvalidInput("simulate requires --dist");
  std::vector<SubGaussianInput> inputs;
  if (c.dists.size() == 1) {
    inputs.assign(static_cast<std::size_t>(n), find_input(c.dists.front()));
  } else if (static_cast<int>(c.dists.size()) == n) {
    for (const auto& d : c.dists) inputs.push_back(find_input(d));
  } else {
    throw InvalidInput("--dist takes one name or one per coordinate (" + std::to_string(n) +
                       "), got " + std::to_string(c.dists.size()));
  }
  return inputs;
}

CommandResult run_simulate(const RunConfig& c) {
  CommandResult result;
  Report& rep = result.report;
  rep.command = "simulate";
  echo_common(rep.inputs, c);
  const auto form = require_form(c);
  echo_form(rep.inputs, form);
  const auto inputs = resolve_inputs(c, form.dimension());
  const std::uint64_t seed = resolve_seed(c);
  if (c.samples < 2) throw InvalidInput("--samples must be at least 2");
  std::string names;
  for (std::size_t i = 0; i < inputs.size(); ++i) names += (i ? "," : "") + inputs[i].name();
  rep.inputs.set("dist", names).set("samples", c.samples).set("seed", std::to_string(seed));

  const double v2 = v_squared(form);
  if (!(v2 > 0.0)) throw InvalidInput("simulate requires a nonzero form (v2 > 0)");
  const auto u = tail_levels(c, form.sup_norm_bound());
  if (u.empty()) throw InvalidInput("simulate requires --u or --u-grid");
  const auto draws = sample_z(form, inputs, c.samples, seed);
  for (double level : u) {
    const auto est = tail_from_samples(draws, level, seed);
    const double bound = theorem1_tail_bound(level, form.degree(), v2);
    ReportRow row;
    row.set("bound_name", "theorem1_tail_bound")
        .set("parameter", "u")
        .set("u_or_order", level)
        .set("bound_value", bound)
        .set("oracle", "monte_carlo")
        .set("oracle_value", est.point)
        .set("std_error", est.std_error)
        .set("samples", est.samples)
        .set("seed", std::to_string(est.seed))
        .set("dominates", bound >= est.point - kSigmaMargin * est.std_error);
    rep.rows.push_back(std::move(row));
  }
  return result;
}

CommandResult run_compare(const RunConfig& c) {
  CommandResult result;
  Report& rep = result.report;
  rep.command = "compare";
  if (!c.k) throw InvalidInput("compare requires --k");
  if (c.M.empty()) throw InvalidInput("compare requires --M");
  const double v2 = c.v2.value_or(1.0);
  rep.inputs.set("k", *c.k).set("v2", v2);
  for (int m : moment_indices(c, {})) {
    const auto cmp = compare_theorem2_vs_borell(*c.k, m, v2);
    ReportRow row;
    row.set("bound_name", "theorem2_vs_borell")
        .set("M", m)
        .set("order", 2 * m)
        .set("log_theorem2", cmp.log_theorem2)
        .set("log_borell", cmp.log_borell)
        .set("log_ratio", cmp.log_ratio)
        .set("sharper", cmp.log_ratio < 0.0 ? "theorem2" : cmp.log_ratio > 0.0 ? "borell" : "tie");
    rep.rows.push_back(std::move(row));
  }
  return result;
}

CommandResult run_sharpness(const RunConfig& c) {
  CommandResult result;
  Report& rep = result.report;
  rep.command = "sharpness";
  if (!c.k) throw InvalidInput("sharpness requires --k");
  if (c.n.empty()) throw InvalidInput("sharpness requires --n");
  const std::uint64_t seed = resolve_seed(c);
  rep.inputs.set("k", *c.k).set("V", c.V).set("samples", c.samples)
      .set("seed", std::to_string(seed));
  for (const auto& r : limit_comparison(*c.k, c.n, c.V, c.samples, seed)) {
    ReportRow row;
    row.set("n", r.n).set("ks_distance", r.ks_distance).set("samples", r.samples)
        .set("reference", "V*He_k(gaussian)");
    rep.rows.push_back(std::move(row));
  }
  return result;
}

// Built-in fixtures with integer coefficients.
std::vector<std::pair<std::string, SymmetricMultilinearForm>> selfcheck_fixtures() {
  using Map = SymmetricMultilinearForm::CoefficientMap;
  std::vector<std::pair<std::string, SymmetricMultilinearForm>> f;
  f.emplace_back("linear_n4", SymmetricMultilinearForm(1, 4, Map{{{1}, 1}, {{2}, 2}, {{3}, -3}, {{4}, 1}}));
  f.emplace_back("all_pairs_n3", SymmetricMultilinearForm(2, 3, Map{{{1, 2}, 1}, {{1, 3}, 1}, {{2, 3}, 1}}));
  f.emplace_back("mixed_pairs_n5",
                 SymmetricMultilinearForm(2, 5, Map{{{1, 2}, 2}, {{1, 4}, -1}, {{2, 3}, 3},
                                                    {{3, 5}, -2}, {{4, 5}, 1}}));
  f.emplace_back("cubic_n5", SymmetricMultilinearForm(3, 5, Map{{{1, 2, 3}, 1}, {{1, 4, 5}, -2},
                                                               {{2, 3, 4}, 1}, {{3, 4, 5}, 3}}));
  return f;
}

CommandResult run_selfcheck(const RunConfig& c) {
  CommandResult result;
  Report& rep = result.report;
  rep.command = "selfcheck";
  const std::uint64_t seed = resolve_seed(c);
  const std::size_t samples = c.samples;
  rep.inputs.set("seed", std::to_string(seed)).set("samples", samples);

  auto check = [&](const std::string& name, const std::string& fixture, double value,
                   double reference, bool passed) {
    ReportRow row;
    row.set("check", name).set("fixture", fixture).set("value", value)
        .set("reference", reference).set("passed", passed);
    result.failed = result.failed || !passed;
    rep.rows.push_back(std::move(row));
  };

  const auto stirling = stirling_step_check(200);
  check("stirling_step_inequality", "N=1..200", stirling.ratios.back(), 1.0,
        stirling.holds);
  check("stirling_step_monotone", "N=1..200", stirling.ratios.back(), stirling.ratios.front(),
        stirling.monotone);

  const auto gauss = gaussian_moments();
  for (const auto& [name, form] : selfcheck_fixtures()) {
    const int k = form.degree();
    const double v2 = v_squared(form);
    const auto abs_form = form.absolute();
    const auto kernel = embed_form(form, true);
    check("embedded_norm_equals_v2", name, kernel.squared_norm(), v2,
          agree(kernel.squared_norm(), v2));
    for (int m = 1; m <= 3; ++m) {
      const std::string at = name + ",M=" + std::to_string(m);
      const double rad = exact_moment_rademacher(form, 2 * m);
      const double rad_exp = exact_moment_by_expansion(form, rademacher_moments(), 2 * m);
      const double gaussian = exact_moment_by_expansion(abs_form, gauss, 2 * m);
      const auto bound = theorem2_moment_bound(k, m, v2);
      check("rademacher_oracles_agree", at, rad_exp, rad, agree(rad_exp, rad));
      check("gaussian_comparison_dominates", at, gaussian, rad,
            dominates_with_tolerance(gaussian, rad));
      check("theorem2_dominates_rademacher", at, bound.value, rad,
            dominates_with_tolerance(bound, rad));
      check("theorem2_dominates_gaussian", at, bound.value, gaussian,
            dominates_with_tolerance(bound, gaussian));
      if (k * m <= 4) {
        const double diag = chaos_moment_via_diagrams(kernel, m, c.budget_diagrams);
        check("diagram_matches_expansion", at, diag, gaussian, agree(diag, gaussian));
      }
    }
    const double top = rademacher_max_abs(form);
    std::vector<double> grid;
    for (int i = 0; i < 20; ++i) grid.push_back(top * i / 19.0);
    const auto tails = exact_tails(form, grid);
    bool tail_ok = true;
    double worst = -INFINITY;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double gap = tails[i] - theorem1_tail_bound(grid[i], k, v2);
      worst = std::max(worst, gap);
      tail_ok = tail_ok && dominates_with_tolerance(theorem1_tail_bound(grid[i], k, v2), tails[i]);
    }
    check("theorem1_dominates_exact_tail", name, worst, 0.0, tail_ok);

    const std::vector<SubGaussianInput> inputs(static_cast<std::size_t>(form.dimension()),
                                               find_input("uniform"));
    const auto draws = sample_z(form, inputs, samples, seed);
    bool mc_ok = true;
    double worst_mc = -INFINITY;
    for (double level : grid) {
      const auto est = tail_from_samples(draws, level, seed);
      const double bound = theorem1_tail_bound(level, k, v2);
      worst_mc = std::max(worst_mc, est.point - kSigmaMargin * est.std_error - bound);
      mc_ok = mc_ok && bound >= est.point - kSigmaMargin * est.std_error;
    }
    check("theorem1_dominates_uniform_mc_tail", name, worst_mc, 0.0, mc_ok);
  }
  rep.inputs.set("passed", !result.failed);
  return result;
}

}  // namespace

std::uint64_t resolve_seed(const RunConfig& config) {
  if (config.seed) return *config.seed;
  if (const char* env = std::getenv("CHAOS_BOUNDS_SEED"); env && *env) {
    try {
      std::size_t pos = 0;
      const auto v = std::stoull(env, &pos);
      if (pos != std::string(env).size()) throw std::invalid_argument("trailing");
      return v;
    } catch (const std::exception&) {
      throw InvalidInput(std::string("CHAOS_BOUNDS_SEED is not an unsigned integer: ") + env);
    }
  }
  return kDefaultSeed;
}

CommandResult execute(const RunConfig& c) {
  if (c.format != "json" && c.format != "csv") {
    throw InvalidInput("--format must be json or csv");
  }
  if (c.command == "bounds") return run_bounds(c);
  if (c.command == "exact") return run_exact(c);
  if (c.command == "diagrams") return run_diagrams(c);
  if (c.command == "simulate") return run_simulate(c);
  if (c.command == "compare") return run_compare(c);
  if (c.command == "sharpness") return run_sharpness(c);
  if (c.command == "selfcheck") {
    if (c.samples < 2) throw InvalidInput("--samples must be at least 2");
    return run_selfcheck(c);
  }
  throw InvalidInput("unknown command '" + c.command + "'");
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  CommandResult result;
  try {
    result = execute(config);
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const BudgetExceeded& e) {
    err << "budget error: " << e.what() << '\n';
    return kBudgetError;
  } catch (const Overflow& e) {
    err << "budget error: " << e.what() << '\n';
    return kBudgetError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }

  const std::string text =
      config.format == "csv" ? to_csv(result.report) : to_json(result.report);
  if (config.out) {
    std::ofstream file(*config.out, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << config.out->string() << '\n';
      return kConfigError;
    }
    file << text;
  } else {
    out << text;
  }
  if (result.failed) {
    err << "selfcheck failed\n";
    return kSelfcheckFailure;
  }
  return kSuccess;
}

std::vector<int> parse_int_list(const std::vector<std::string>& tokens) {
  std::vector<int> out;
  for (const auto& t : tokens) {
    try {
      const auto dots = t.find("..");
      std::size_t pos = 0;
      if (dots == std::string::npos) {
        out.push_back(std::stoi(t, &pos));
        if (pos != t.size()) throw std::invalid_argument(t);
        continue;
      }
      const std::string lo_text = t.substr(0, dots);
      const std::string hi_text = t.substr(dots + 2);
      const int lo = std::stoi(lo_text, &pos);
      if (pos != lo_text.size()) throw std::invalid_argument(t);
      const int hi = std::stoi(hi_text, &pos);
      if (pos != hi_text.size()) throw std::invalid_argument(t);
      if (hi < lo) throw std::invalid_argument(t);
      for (int i = lo; i <= hi; ++i) out.push_back(i);
    } catch (const std::logic_error&) {
      throw InvalidInput("cannot read integer list entry '" + t + "'");
    }
  }
  return out;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Moment and tail bounds for multilinear forms of sub-Gaussian variables"};
  app.require_subcommand(1, 1);

  RunConfig config;
  std::vector<std::string> m_tokens, n_tokens;
  std::string form_path, kernel_path, out_path;
  std::optional<std::uint64_t> seed;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", config.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", out_path, "write the report here instead of stdout");
    sub->add_option("--seed", seed, "random seed (fallback: CHAOS_BOUNDS_SEED)");
    sub->add_option("--budget-terms", config.budget_terms, "monomial term cap");
    sub->add_option("--budget-diagrams", config.budget_diagrams, "diagram count cap");
  };
  auto add_form = [&](CLI::App* sub) {
    sub->add_option("--form", form_path, "JSON form document");
  };
  auto add_m = [&](CLI::App* sub) {
    sub->add_option("--M", m_tokens, "moment indices, e.g. 3 or 1..25 (repeatable)");
  };
  auto add_u = [&](CLI::App* sub) {
    sub->add_option("--u", config.u, "tail level (repeatable)");
    sub->add_option("--u-grid", config.u_grid, "evenly spaced levels on [0, max|Z|]");
  };
  auto add_k = [&](CLI::App* sub) { sub->add_option("--k", config.k, "degree"); };

  auto* bounds = app.add_subcommand("bounds", "closed-form bounds, with exact oracles when a form is given");
  add_common(bounds); add_form(bounds); add_k(bounds); add_m(bounds); add_u(bounds);
  bounds->add_option("--v2", config.v2, "variance constant V^2 when no form is given");

  auto* exact = app.add_subcommand("exact", "exact moments and tails next to the bounds");
  add_common(exact); add_form(exact); add_m(exact); add_u(exact);

  auto* diagrams = app.add_subcommand("diagrams", "diagram counts and diagram-formula moments");
  add_common(diagrams); add_form(diagrams); add_k(diagrams); add_m(diagrams);
  diagrams->add_option("--kernel", kernel_path, "JSON kernel document");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo tail estimates");
  add_common(simulate); add_form(simulate); add_u(simulate);
  simulate->add_option("--samples", config.samples, "number of draws");
  simulate->add_option("--dist", config.dists,
                       "rademacher | gaussian | uniform; one name or one per coordinate");

  auto* compare = app.add_subcommand("compare", "double-factorial moment bound vs Borell, in logs");
  add_common(compare); add_k(compare); add_m(compare);
  compare->add_option("--v2", config.v2, "variance constant (default 1)");

  auto* sharpness = app.add_subcommand("sharpness", "KS distance of Z_n to V*He_k(eta)");
  add_common(sharpness); add_k(sharpness);
  sharpness->add_option("--n", n_tokens, "increasing dimensions, e.g. 10 40 160");
  sharpness->add_option("--V", config.V, "scale (default 1)");
  sharpness->add_option("--samples", config.samples, "draws per n");

  auto* selfcheck = app.add_subcommand("selfcheck", "built-in consistency checks");
  add_common(selfcheck);
  selfcheck->add_option("--samples", config.samples, "Monte Carlo draws per fixture");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kConfigError;
  }

  config.command = app.get_subcommands().front()->get_name();
  if (!form_path.empty()) config.form_path = form_path;
  if (!kernel_path.empty()) config.kernel_path = kernel_path;
  if (!out_path.empty()) config.out = out_path;
  config.seed = seed;
  try {
    config.M = parse_int_list(m_tokens);
    config.n = parse_int_list(n_tokens);
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }
  return run(config, out, err);
}

}  // namespace chaos::cli
