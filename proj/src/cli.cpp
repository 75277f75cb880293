#include "mphase/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <ostream>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mphase/analytic.hpp"
#include "mphase/chioptim.hpp"
#include "mphase/costs.hpp"
#include "mphase/errors.hpp"
#include "mphase/integrate.hpp"
#include "mphase/povm.hpp"
#include "mphase/states.hpp"

namespace mphase::cli {

namespace {

using nlohmann::json;

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kLowAcceptance = 0.01;

// Round to 9 significant digits so nlohmann's shortest round-trip printer
// emits the same digits as format_number.
double round9(double v) {
  if (!std::isfinite(v)) return v;
  const std::string s = format_number(v);
  double r = 0.0;
  std::from_chars(s.data(), s.data() + s.size(), r);
  return r;
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& message) {
  if (!ok) throw UsageError(message);
}

std::vector<int> copy_range(const RunConfig& cfg) {
  if (cfg.n && cfg.n_max) throw UsageError("--n and --n-max are mutually exclusive");
  if (cfg.n) {
    require(*cfg.n >= 1, "--n must be >= 1");
    return {*cfg.n};
  }
  const int hi = cfg.n_max.value_or(4);
  require(hi >= 1, "--n-max must be >= 1");
  std::vector<int> out;
  for (int N = 1; N <= hi; ++N) out.push_back(N);
  return out;
}

int single_copy(const RunConfig& cfg) {
  require(!cfg.n_max, "this command takes --n, not --n-max");
  const int N = cfg.n.value_or(1);
  require(N >= 1, "--n must be >= 1");
  return N;
}

CostSpec cost_by_name(const std::string& name, int d) {
  if (name == "fidelity") return fidelity_cost_spec(d);
  if (name == "variance") return variance_cost_spec(d - 1);
  throw UsageError("unknown cost '" + name + "' (expected fidelity or variance)");
}

// Writes rows either as CSV (header + LF rows) or as a JSON object with a
// "rows" array of objects keyed by the header.
class Table {
 public:
  Table(std::string command, std::vector<std::string> columns)
      : command_(std::move(command)), columns_(std::move(columns)) {}

  using Cell = std::optional<double>;

  void add(std::vector<Cell> row) { rows_.push_back(std::move(row)); }
  void note(std::string text) { notes_.push_back(std::move(text)); }

  void write(std::ostream& out, std::ostream& err, Format format) const {
    if (format == Format::kCsv) {
      for (std::size_t c = 0; c < columns_.size(); ++c) out << (c ? "," : "") << columns_[c];
      out << '\n';
      for (const auto& row : rows_) {
        for (std::size_t c = 0; c < row.size(); ++c) {
          if (c) out << ',';
          if (row[c]) out << format_number(*row[c]);
        }
        out << '\n';
      }
      for (const auto& n : notes_) err << "note: " << n << '\n';
      return;
    }
    json doc;
    doc["command"] = command_;
    doc["rows"] = json::array();
    for (const auto& row : rows_) {
      json obj = json::object();
      for (std::size_t c = 0; c < row.size(); ++c) {
        obj[columns_[c]] = row[c] ? json(round9(*row[c])) : json(nullptr);
      }
      doc["rows"].push_back(std::move(obj));
    }
    doc["notes"] = notes_;
    out << doc.dump() << '\n';
  }

 private:
  std::string command_;
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
  std::vector<std::string> notes_;
};

// ---- verify suites --------------------------------------------------------

struct SuiteResult {
  std::string name;
  bool passed = true;
  std::size_t checks = 0;
  double worst = 0.0;  // largest observed error (or smallest margin for bounds)
  double tolerance = 0.0;
  std::vector<std::string> failures;

  void check(bool ok, const std::string& label) {
    ++checks;
    if (!ok) {
      passed = false;
      failures.push_back(label);
    }
  }

  json to_json() const {
    return {{"name", name},   {"passed", passed},         {"checks", checks},
            {"worst", round9(worst)}, {"tolerance", tolerance}, {"failures", failures}};
  }
};

SuiteResult make_suite(std::string name, double tolerance) {
  SuiteResult r;
  r.name = std::move(name);
  r.tolerance = tolerance;
  return r;
}

std::string tag(int d, int N) { return "d=" + std::to_string(d) + ",N=" + std::to_string(N); }

SuiteResult suite_completeness(const RunConfig& cfg, int n_max) {
  auto r = make_suite("completeness", 1e-10);
  for (int d = 2; d <= cfg.d; ++d) {
    for (int N = 1; N <= n_max; ++N) {
      const double defect = completeness_defect(d, N, 2 * N + 2);
      r.worst = std::max(r.worst, defect);
      r.check(defect < r.tolerance, tag(d, N));
    }
  }
  return r;
}

SuiteResult suite_normalization(const RunConfig& cfg, int n_max) {
  auto r = make_suite("normalization", 1e-10);
  for (int d = 2; d <= cfg.d; ++d) {
    for (int N = 1; N <= n_max; ++N) {
      const auto amps = psi0_amplitudes(d, N);
      const int points = 2 * N + 2;
      const std::size_t m = static_cast<std::size_t>(d - 1);
      std::size_t total = 1;
      for (std::size_t j = 0; j < m; ++j) total *= static_cast<std::size_t>(points);
      std::vector<int> idx(m, 0);
      std::vector<double> angles(m);
      double integral = 0.0;
      for (std::size_t p = 0; p < total; ++p) {
        for (std::size_t j = 0; j < m; ++j) angles[j] = kTwoPi * idx[j] / points;
        integral += conditional_density(amps, PhaseVector(angles));
        for (std::size_t j = 0; j < m; ++j) {
          if (++idx[j] < points) break;
          idx[j] = 0;
        }
      }
      integral *= std::pow(kTwoPi, static_cast<double>(m)) / static_cast<double>(total);
      const double err = std::abs(integral - 1.0);
      r.worst = std::max(r.worst, err);
      r.check(err < r.tolerance, tag(d, N));
    }
  }
  return r;
}

SuiteResult suite_agreement(const RunConfig& cfg, int n_max) {
  auto r = make_suite("agreement", 1e-10);
  for (int d = 2; d <= cfg.d; ++d) {
    for (int N = 1; N <= n_max; ++N) {
      const auto amps = psi0_amplitudes(d, N);
      const auto chi = chi_optimal(static_cast<Eigen::Index>(amps.size()));
      for (const char* name : {"fidelity", "variance"}) {
        const auto spec = cost_by_name(name, d);
        const std::string label = tag(d, N) + "," + name;
        const double fourier = avg_cost_fourier(spec, amps, chi);
        try {
          const double quad = avg_cost_quadrature(spec, amps, chi, 2 * N + 3, cfg.budget);
          const double err = std::abs(fourier - quad);
          r.worst = std::max(r.worst, err);
          r.check(err < r.tolerance, label + ",quadrature");
        } catch (const BudgetExceeded&) {
          // Skipped, not failed: the grid is too large for the budget.
        }
        const auto mc = mc_average_cost(spec, amps, cfg.samples, cfg.seed);
        const double z = std::abs(mc.mean - fourier) / mc.std_error;
        r.check(z <= 4.0, label + ",monte-carlo z=" + format_number(z));
        if (std::string(name) == "fidelity") {
          const double err = std::abs(fourier - (1.0 - avg_fidelity_qudit(d, N)));
          r.worst = std::max(r.worst, err);
          r.check(err < 1e-12, label + ",closed-form");
        }
      }
    }
  }
  return r;
}

SuiteResult suite_optimality(const RunConfig& cfg, int n_max) {
  auto r = make_suite("optimality", kBoundSlack);
  r.worst = std::numeric_limits<double>::infinity();
  for (int d = 2; d <= cfg.d; ++d) {
    for (int N = 1; N <= n_max; ++N) {
      const auto amps = psi0_amplitudes(d, N);
      const auto dim = static_cast<Eigen::Index>(amps.size());
      for (const char* name : {"fidelity", "variance"}) {
        const auto spec = cost_by_name(name, d);
        const std::string label = tag(d, N) + "," + name;
        auto report = verify_bound(spec, amps, cfg.trials, cfg.seed);
        if (cfg.inject_chi_offdiag) {
          Eigen::MatrixXcd m = Eigen::MatrixXcd::Constant(dim, dim, *cfg.inject_chi_offdiag);
          m.diagonal().setOnes();
          const std::vector<ChiMatrix> injected{ChiMatrix(std::move(m))};
          const auto extra = verify_bound(spec, amps, injected);
          report.violations += extra.violations;
          report.infeasible += extra.infeasible;
          report.min_margin = std::min(report.min_margin, extra.min_margin);
        }
        r.worst = std::min(r.worst, report.min_margin);
        r.check(report.passed(),
                label + ",violations=" + std::to_string(report.violations) +
                    ",infeasible=" + std::to_string(report.infeasible));
        r.check(std::abs(report.optimal_margin) < 1e-12, label + ",equality");
      }
    }
  }
  return r;
}

SuiteResult suite_monotonicity(const RunConfig& cfg, int n_max) {
  (void)cfg;
  auto r = make_suite("monotonicity", 0.0);
  r.worst = std::numeric_limits<double>::infinity();
  auto gap = [&](double larger, double smaller, const std::string& label) {
    r.worst = std::min(r.worst, larger - smaller);
    r.check(larger > smaller, label);
  };
  for (int N = 1; N <= n_max; ++N) {
    for (int d = 2; d < 6; ++d) {
      gap(avg_fidelity_qudit(d, N), avg_fidelity_qudit(d + 1, N), "dimension " + tag(d, N));
    }
  }
  for (int N = 1; N <= 10; ++N) {
    gap(avg_fidelity_qudit(2, N), avg_fidelity_qudit(3, N), "qubit-dominance N=" + std::to_string(N));
  }
  for (int d = 2; d <= 8; ++d) {
    gap(avg_fidelity_single(d), universal_fidelity_single(d), "universal d=" + std::to_string(d));
  }
  return r;
}

using SuiteFn = std::function<SuiteResult(const RunConfig&, int)>;

const std::vector<std::pair<std::string, SuiteFn>>& suites() {
  static const std::vector<std::pair<std::string, SuiteFn>> all{
      {"completeness", suite_completeness}, {"normalization", suite_normalization},
      {"agreement", suite_agreement},       {"optimality", suite_optimality},
      {"monotonicity", suite_monotonicity},
  };
  return all;
}

}  // namespace

std::string format_number(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 9);
  return std::string(buf, res.ptr);
}

int cmd_fidelity(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  require(cfg.d >= 2, "--d must be >= 2");
  Table table("fidelity", {"d", "N", "fbar_analytic", "fbar_quadrature", "abs_err"});
  bool over_budget = false;
  for (int N : copy_range(cfg)) {
    const double analytic = avg_fidelity_qudit(cfg.d, N);
    Table::Cell quad;
    Table::Cell diff;
    const int points = cfg.grid.value_or(2 * N + 3);
    require(points >= 2 * N + 3, "--grid must be >= 2N+3 = " + std::to_string(2 * N + 3));
    try {
      const auto amps = psi0_amplitudes(cfg.d, N);
      const double cost = avg_cost_quadrature(fidelity_cost_spec(cfg.d), amps,
                                              chi_optimal(static_cast<Eigen::Index>(amps.size())),
                                              points, cfg.budget);
      quad = 1.0 - cost;
      diff = std::abs(analytic - *quad);
    } catch (const BudgetExceeded&) {
      over_budget = true;
    }
    table.add({cfg.d, N, analytic, quad, diff});
  }
  if (over_budget) {
    table.note("quadrature omitted where the grid exceeds --budget " + std::to_string(cfg.budget) +
               " points; raise --budget or lower --grid");
  }
  table.write(out, err, cfg.format.value_or(Format::kCsv));
  return kSuccess;
}

int cmd_variance(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  require(cfg.d >= 2, "--d must be >= 2");
  Table table("variance", {"d", "N", "vbar"});
  for (int N : copy_range(cfg)) {
    const double v = cfg.d == 3 ? avg_variance_qutrit(N)
                                : min_cost(variance_cost_spec(cfg.d - 1), psi0_amplitudes(cfg.d, N));
    table.add({cfg.d, N, v});
  }
  table.write(out, err, cfg.format.value_or(Format::kCsv));
  return kSuccess;
}

int cmd_density(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  (void)err;
  require(cfg.d >= 2, "--d must be >= 2");
  require(cfg.d <= 3, "density dumps need d-1 <= 2 plottable axes");
  const int N = single_copy(cfg);
  const int grid = cfg.grid.value_or(64);
  require(grid >= 2, "--grid must be >= 2");
  const auto amps = psi0_amplitudes(cfg.d, N);
  const double step = kTwoPi / grid;

  std::vector<std::vector<double>> rows;
  if (cfg.d == 2) {
    for (int i = 0; i < grid; ++i) {
      rows.push_back({i * step, conditional_density(amps, PhaseVector({i * step}))});
    }
  } else {
    for (int i = 0; i < grid; ++i) {
      for (int k = 0; k < grid; ++k) {
        rows.push_back(
            {i * step, k * step, conditional_density(amps, PhaseVector({i * step, k * step}))});
      }
    }
  }
  const std::vector<std::string> header =
      cfg.d == 2 ? std::vector<std::string>{"delta1", "density"}
                 : std::vector<std::string>{"delta1", "delta2", "density"};

  if (cfg.format.value_or(Format::kCsv) == Format::kCsv) {
    for (std::size_t c = 0; c < header.size(); ++c) out << (c ? "," : "") << header[c];
    out << '\n';
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_number(row[c]);
      out << '\n';
    }
  } else {
    json doc{{"command", "density"}, {"d", cfg.d}, {"N", N}, {"grid", grid}, {"columns", header}};
    doc["rows"] = json::array();
    for (const auto& row : rows) {
      json r = json::array();
      for (double v : row) r.push_back(round9(v));
      doc["rows"].push_back(std::move(r));
    }
    out << doc.dump() << '\n';
  }
  return kSuccess;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  require(cfg.d >= 2, "--d must be >= 2");
  require(cfg.samples >= 1000, "--samples must be >= 1000");
  const int N = single_copy(cfg);
  const auto amps = psi0_amplitudes(cfg.d, N);
  const auto spec = cost_by_name(cfg.cost, cfg.d);
  const auto report = mc_average_cost(spec, amps, cfg.samples, cfg.seed);
  const double reference = min_cost(spec, amps);
  const double z = (report.mean - reference) / report.std_error;
  if (report.acceptance_rate < kLowAcceptance) {
    err << "warning: rejection-sampler acceptance rate " << format_number(report.acceptance_rate)
        << " is below 1%\n";
  }
  if (cfg.format.value_or(Format::kJson) == Format::kJson) {
    json doc{{"mean", round9(report.mean)},
             {"stderr", round9(report.std_error)},
             {"samples", report.samples},
             {"acceptance_rate", round9(report.acceptance_rate)},
             {"seed", report.seed},
             {"analytic_reference", round9(reference)},
             {"z_score", round9(z)}};
    out << doc.dump() << '\n';
  } else {
    out << "mean,stderr,samples,acceptance_rate,seed,analytic_reference,z_score\n"
        << format_number(report.mean) << ',' << format_number(report.std_error) << ','
        << report.samples << ',' << format_number(report.acceptance_rate) << ',' << report.seed
        << ',' << format_number(reference) << ',' << format_number(z) << '\n';
  }
  return kSuccess;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  (void)err;
  require(cfg.d >= 2, "--d must be >= 2");
  require(cfg.samples >= 1000, "--samples must be >= 1000");
  require(!cfg.n, "verify takes --n-max, not --n");
  const int n_max = cfg.n_max.value_or(4);
  require(n_max >= 1, "--n-max must be >= 1");
  require(cfg.trials >= 1, "--trials must be >= 1");

  std::vector<SuiteResult> results;
  bool matched = cfg.suite.empty();
  for (const auto& [name, fn] : suites()) {
    if (!cfg.suite.empty() && cfg.suite != name) continue;
    matched = true;
    results.push_back(fn(cfg, n_max));
  }
  require(matched, "unknown suite '" + cfg.suite + "'");

  bool passed = true;
  json doc{{"command", "verify"}, {"d_max", cfg.d}, {"n_max", n_max}, {"seed", cfg.seed}};
  doc["suites"] = json::array();
  for (const auto& r : results) {
    passed = passed && r.passed;
    doc["suites"].push_back(r.to_json());
  }
  doc["passed"] = passed;

  if (cfg.format.value_or(Format::kJson) == Format::kJson) {
    out << doc.dump() << '\n';
  } else {
    out << "suite,passed,checks,worst,tolerance\n";
    for (const auto& r : results) {
      out << r.name << ',' << (r.passed ? "true" : "false") << ',' << r.checks << ','
          << format_number(r.worst) << ',' << format_number(r.tolerance) << '\n';
    }
  }
  return passed ? kSuccess : kVerificationFailed;
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Optimal covariant multiple-phase estimation", "mphase"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string format_name;

  auto add_format_out = [&](CLI::App* sub) {
    sub->add_option("--format", format_name, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", cfg.out_path, "Write output to PATH instead of stdout");
  };

  auto* fidelity = app.add_subcommand("fidelity", "Average fidelity: closed form vs torus quadrature");
  fidelity->add_option("--d", cfg.d, "Levels per system")->required();
  fidelity->add_option("--n", cfg.n, "Single copy count");
  fidelity->add_option("--n-max", cfg.n_max, "Tabulate N = 1..n-max (default 4)");
  fidelity->add_option("--grid", cfg.grid, "Quadrature points per axis (default 2N+3)");
  fidelity->add_option("--budget", cfg.budget, "Maximum total quadrature points");
  add_format_out(fidelity);

  auto* variance = app.add_subcommand("variance", "Average periodic variance");
  variance->add_option("--d", cfg.d, "Levels per system")->required();
  variance->add_option("--n", cfg.n, "Single copy count");
  variance->add_option("--n-max", cfg.n_max, "Tabulate N = 1..n-max (default 4)");
  add_format_out(variance);

  auto* density = app.add_subcommand("density", "Dump the estimation-error density on a grid");
  density->add_option("--d", cfg.d, "Levels per system (2 or 3)")->required();
  density->add_option("--n", cfg.n, "Copy count (default 1)");
  density->add_option("--grid", cfg.grid, "Points per axis (default 64)");
  add_format_out(density);

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimate of the average cost");
  simulate->add_option("--d", cfg.d, "Levels per system")->required();
  simulate->add_option("--n", cfg.n, "Copy count (default 1)");
  simulate->add_option("--samples", cfg.samples, "Number of samples (>= 1000)");
  simulate->add_option("--seed", cfg.seed, "RNG seed");
  simulate->add_option("--cost", cfg.cost, "Cost function")->check(CLI::IsMember({"fidelity", "variance"}));
  add_format_out(simulate);

  auto* verify = app.add_subcommand("verify", "Run the verification suites");
  verify->add_option("--d", cfg.d, "Largest level count (default 4)");
  verify->add_option("--n-max", cfg.n_max, "Largest copy count (default 4)");
  verify->add_option("--samples", cfg.samples, "Monte Carlo samples per check (default 20000)");
  verify->add_option("--seed", cfg.seed, "RNG seed");
  verify->add_option("--suite", cfg.suite, "Run only this suite");
  verify->add_option("--budget", cfg.budget, "Maximum total quadrature points");
  verify->add_option("--trials", cfg.trials, "Random chi samples per optimality check");
  verify->add_option("--inject-chi-offdiag", cfg.inject_chi_offdiag,
                     "Test hook: add a chi candidate with this off-diagonal value")
      ->group("");
  add_format_out(verify);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return e.get_exit_code() == 0 ? kSuccess : kUsageError;
  }

  for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
  if (cfg.command == "verify") {
    if (verify->count("--d") == 0) cfg.d = 4;
    if (verify->count("--samples") == 0) cfg.samples = 20000;
  }
  if (format_name == "csv") cfg.format = Format::kCsv;
  if (format_name == "json") cfg.format = Format::kJson;

  std::ofstream file;
  std::ostream* sink = &out;
  if (!cfg.out_path.empty()) {
    file.open(cfg.out_path, std::ios::binary);
    if (!file) {
      err << "error: cannot open " << cfg.out_path << " for writing\n";
      return kUsageError;
    }
    sink = &file;
  }

  try {
    if (cfg.command == "fidelity") return cmd_fidelity(cfg, *sink, err);
    if (cfg.command == "variance") return cmd_variance(cfg, *sink, err);
    if (cfg.command == "density") return cmd_density(cfg, *sink, err);
    if (cfg.command == "simulate") return cmd_simulate(cfg, *sink, err);
    return cmd_verify(cfg, *sink, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
}

}  // namespace mphase::cli
