// Command-line surface for the punctured quantum Reed-Muller code family:
// params / construct / verify / scan / asymptotic / distill.
//
// Exit codes: 0 pass, 1 check failed, 2 bad arguments or constraint
// violation, 3 I/O error, 4 parse error, 5 budget refusal.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qrm/qrm.hpp"

namespace {

using nlohmann::json;

enum class Format { table, json_fmt, csv };

Format parse_format(const std::string& s) {
  if (s == "json") return Format::json_fmt;
  if (s == "csv") return Format::csv;
  return Format::table;
}

struct ResultItem {
  std::string name;
  json value;
  bool exact = true;
};

std::string value_to_string(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) {
    std::ostringstream os;
    os << std::setprecision(12) << v.get<double>();
    return os.str();
  }
  return v.dump();
}

class Timer {
 public:
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<json> json_rows;
};

/// One machine- or human-readable record per command run.
struct Report {
  std::string command;
  json params = json::object();
  std::vector<ResultItem> items;
  std::optional<Table> table;
  std::string mode;  // "exhaustive" or "sampled" when an oracle ran
  std::optional<std::uint64_t> seed;

  void print(Format format, bool quiet, double elapsed) const {
    if (quiet && format == Format::table) return;
    if (format == Format::json_fmt) {
      json out;
      out["command"] = command;
      out["params"] = params;
      json results = json::object();
      for (const ResultItem& item : items) {
        results[item.name] = {{"value", item.value}, {"exact", item.exact}};
      }
      out["results"] = results;
      if (table) {
        json rows = json::array();
        for (const json& r : table->json_rows) rows.push_back(r);
        out["rows"] = rows;
      }
      if (!mode.empty()) out["mode"] = mode;
      if (seed) out["seed"] = *seed;
      out["elapsed_ms"] = elapsed;
      std::cout << out.dump(2) << "\n";
      return;
    }
    if (format == Format::csv) {
      if (table) {
        for (std::size_t i = 0; i < table->columns.size(); ++i) {
          std::cout << (i ? "," : "") << table->columns[i];
        }
        std::cout << "\n";
        for (const auto& row : table->rows) {
          for (std::size_t i = 0; i < row.size(); ++i) std::cout << (i ? "," : "") << row[i];
          std::cout << "\n";
        }
      }
      for (const ResultItem& item : items) {
        std::cout << item.name << "," << value_to_string(item.value) << "\n";
      }
      return;
    }
    // table format
    std::size_t width = 0;
    for (const ResultItem& item : items) width = std::max(width, item.name.size());
    for (const ResultItem& item : items) {
      std::cout << std::left << std::setw(static_cast<int>(width) + 2) << item.name
                << value_to_string(item.value) << (item.exact ? "" : "  (approx)") << "\n";
    }
    if (table) {
      std::vector<std::size_t> widths(table->columns.size());
      for (std::size_t i = 0; i < table->columns.size(); ++i) {
        widths[i] = table->columns[i].size();
      }
      for (const auto& row : table->rows) {
        for (std::size_t i = 0; i < row.size(); ++i) widths[i] = std::max(widths[i], row[i].size());
      }
      for (std::size_t i = 0; i < table->columns.size(); ++i) {
        std::cout << std::left << std::setw(static_cast<int>(widths[i]) + 2) << table->columns[i];
      }
      std::cout << "\n";
      for (const auto& row : table->rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
          std::cout << std::left << std::setw(static_cast<int>(widths[i]) + 2) << row[i];
        }
        std::cout << "\n";
      }
    }
    if (!mode.empty()) std::cout << "mode: " << mode << "\n";
    if (seed) std::cout << "seed: " << *seed << "\n";
  }
};

std::string fmt_double(double x) {
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

struct GlobalOptions {
  std::string format = "table";
  std::uint64_t budget = qrm::kDefaultBudget;
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 12345;
  bool quiet = false;
};

int run_params(int m, int r, int w, const GlobalOptions& g) {
  Timer timer;
  const qrm::CodeParams p = qrm::params_formula(m, r, w);
  Report rep;
  rep.command = "params";
  rep.params = {{"m", m}, {"r", r}, {"w", w}};
  rep.items = {{"n", p.n.str(), true},
               {"k", p.k.str(), true},
               {"d", p.d.str(), true},
               {"nu", p.nu, true},
               {"gamma", p.gamma, false}};
  rep.print(parse_format(g.format), g.quiet, timer.elapsed_ms());
  return 0;
}

int run_construct(int m, int r, int w, const std::string& out_path, const GlobalOptions& g) {
  Timer timer;
  const qrm::CssCode code = qrm::build_code(m, r, w);
  qrm::save_code(code, out_path);
  const qrm::CssCode reloaded = qrm::load_code(out_path);
  if (!(reloaded.x_stabilizers == code.x_stabilizers &&
        reloaded.z_stabilizers == code.z_stabilizers &&
        reloaded.logical_x == code.logical_x && reloaded.logical_z == code.logical_z)) {
    throw std::logic_error("construct: serialization round-trip mismatch");
  }
  if (!qrm::commutation_check(reloaded)) {
    throw std::logic_error("construct: deserialized code failed commutation_check");
  }
  Report rep;
  rep.command = "construct";
  rep.params = {{"m", m}, {"r", r}, {"w", w}, {"out", out_path}};
  rep.items = {{"n", code.n.str(), true},
               {"k", code.k.str(), true},
               {"x_stabilizer_rows", code.x_stabilizers.rows(), true},
               {"z_stabilizer_rows", code.z_stabilizers.rows(), true},
               {"logical_pairs", code.logical_x.rows(), true},
               {"commutation_recheck", "pass", true}};
  rep.print(parse_format(g.format), g.quiet, timer.elapsed_ms());
  return 0;
}

int run_verify(const std::string& path, std::vector<std::string> checks,
               std::optional<int> nu_override, std::optional<int> l_max_opt,
               const GlobalOptions& g) {
  Timer timer;
  const qrm::CssCode code = qrm::load_code(path);
  const int nu = nu_override.value_or(code.params.nu);
  const bool forced = nu_override.has_value() && *nu_override != code.params.nu;
  const int l_max = l_max_opt.value_or(nu);

  if (checks.empty()) {
    checks = {"commutation", "distance", "transversal", "overlap", "divisibility"};
  }

  Table table;
  table.columns = {"check", "status", "mode", "checked"};
  bool any_fail = false, any_refused = false, sampled = false;

  auto add = [&](const std::string& name, const std::string& status, const std::string& mode,
                 std::uint64_t checked) {
    table.rows.push_back({name, status, mode, std::to_string(checked)});
    table.json_rows.push_back(
        {{"check", name}, {"status", status}, {"mode", mode}, {"checked", checked}});
  };

  for (const std::string& check : checks) {
    try {
      if (check == "commutation") {
        const bool ok = qrm::commutation_check(code);
        any_fail |= !ok;
        const std::uint64_t pairs =
            (code.x_stabilizers.rows() + code.logical_x.rows()) *
            (code.z_stabilizers.rows() + code.logical_z.rows());
        add(check, ok ? "pass" : "fail", "exhaustive", pairs);
      } else if (check == "distance") {
        const qrm::DistanceResult d = qrm::distance_brute(code, g.budget);
        const qrm::WideInt expect_dz = qrm::binom_sum_gt(code.params.r + 1, code.params.w);
        const qrm::WideInt expect_dx =
            qrm::binom_sum_gt(code.params.m - code.params.r, code.params.w);
        const bool ok = qrm::WideInt(d.d_z) == expect_dz && qrm::WideInt(d.d_x) == expect_dx;
        any_fail |= !ok;
        add(check + "(d_z=" + std::to_string(d.d_z) + ",d_x=" + std::to_string(d.d_x) + ")",
            ok ? "pass" : "fail", "exhaustive",
            (std::uint64_t{1} << (code.logical_z.rows() + code.z_stabilizers.rows())) +
                (std::uint64_t{1} << (code.logical_x.rows() + code.x_stabilizers.rows())));
      } else if (check == "transversal") {
        qrm::TransversalOptions opts;
        opts.budget = g.budget;
        opts.trials = g.trials;
        opts.seed = g.seed;
        opts.force = forced;
        const qrm::TransversalResult res = qrm::transversal_phase_check(code, nu, opts);
        any_fail |= !res.passed;
        sampled |= !res.exhaustive;
        add(check, res.passed ? "pass" : "fail", res.exhaustive ? "exhaustive" : "sampled",
            res.checked);
      } else if (check == "overlap") {
        const bool ok = qrm::overlap_divisibility_check(code, nu, l_max, g.budget);
        any_fail |= !ok;
        add(check, ok ? "pass" : "fail", "exhaustive", 0);
      } else if (check == "divisibility") {
        // Ward condition on the X-stabilizer group: weights divisible by 2^nu.
        qrm::detail::require_budget_pow2(static_cast<int>(code.x_stabilizers.rows()),
                                         g.budget, "divisibility");
        bool ok = true;
        const std::uint64_t modulus = std::uint64_t{1} << nu;
        qrm::detail::for_each_nonzero_codeword(
            code.x_stabilizers, [&](std::uint64_t, const qrm::BitVector& v) {
              if (v.weight() % modulus != 0) ok = false;
            });
        any_fail |= !ok;
        add(check, ok ? "pass" : "fail", "exhaustive",
            std::uint64_t{1} << code.x_stabilizers.rows());
      } else {
        throw std::invalid_argument("unknown check: " + check);
      }
    } catch (const qrm::BudgetExceeded& e) {
      any_refused = true;
      add(check, "refused", "none", 0);
      std::cerr << "refused: " << e.what() << "\n";
    }
  }

  Report rep;
  rep.command = "verify";
  rep.params = {{"code", path}, {"nu", nu}, {"l_max", l_max}, {"budget", g.budget}};
  rep.table = std::move(table);
  rep.items = {{"overall", any_fail ? "fail" : (any_refused ? "refused" : "pass"), true}};
  rep.mode = sampled ? "sampled" : "exhaustive";
  if (sampled) rep.seed = g.seed;
  rep.print(parse_format(g.format), g.quiet, timer.elapsed_ms());
  return any_fail ? 1 : (any_refused ? 5 : 0);
}

int run_scan(int r_max, const std::string& constraint, int nu_min, double gamma_below,
             int m_max, const GlobalOptions& g) {
  Timer timer;
  const qrm::ScanConstraint c =
      constraint == "general" ? qrm::ScanConstraint::general : qrm::ScanConstraint::m3r1;
  const std::vector<qrm::ScanRow> rows = qrm::scan(r_max, c, nu_min, m_max);

  Table table;
  table.columns = {"m", "r", "w", "nu", "n", "k", "d", "gamma"};
  for (const qrm::ScanRow& row : rows) {
    if (row.gamma >= gamma_below) continue;
    table.rows.push_back({std::to_string(row.m), std::to_string(row.r), std::to_string(row.w),
                          std::to_string(row.nu), row.n.str(), row.k.str(), row.d.str(),
                          fmt_double(row.gamma)});
    table.json_rows.push_back({{"m", row.m},
                               {"r", row.r},
                               {"w", row.w},
                               {"nu", row.nu},
                               {"n", row.n.str()},
                               {"k", row.k.str()},
                               {"d", row.d.str()},
                               {"gamma", row.gamma}});
  }
  Report rep;
  rep.command = "scan";
  rep.params = {{"r_max", r_max},
                {"constraint", constraint},
                {"nu_min", nu_min},
                {"gamma_below", gamma_below}};
  rep.table = std::move(table);
  rep.print(parse_format(g.format), g.quiet, timer.elapsed_ms());
  return 0;
}

int run_asymptotic(bool optimize, std::optional<double> p, double tol, const GlobalOptions& g) {
  Timer timer;
  Report rep;
  rep.command = "asymptotic";
  rep.params = {{"tol", tol}};
  if (optimize) {
    const qrm::AsymptoticPoint best = qrm::optimize_p(tol);
    rep.items = {{"p_star", best.p, false}, {"gamma_star", best.gamma, false}};
  } else if (p) {
    rep.params["p"] = *p;
    rep.items = {{"gamma", qrm::asymptotic_gamma(*p), false}};
  } else {
    throw std::invalid_argument("asymptotic: pass --optimize or --p");
  }
  rep.print(parse_format(g.format), g.quiet, timer.elapsed_ms());
  return 0;
}

int run_distill(const std::string& path, const std::vector<double>& eps_list,
                const std::string& method, const std::vector<double>& targets,
                double prefactor, const GlobalOptions& g) {
  Timer timer;
  const qrm::CssCode code = qrm::load_code(path);
  const qrm::CodeParams p =
      qrm::params_formula(code.params.m, code.params.r, code.params.w);

  Report rep;
  rep.command = "distill";
  rep.params = {{"code", path}, {"method", method}, {"prefactor", prefactor}};

  if (!targets.empty()) {
    // Concatenation schedule per target, using eps_list[0] as the input rate.
    const double eps_in = eps_list.at(0);
    rep.params["eps_in"] = eps_in;
    qrm::OverheadModel model{p.n, p.k, p.d, prefactor};
    Table table;
    table.columns = {"target", "z", "eps_out", "ratio", "input_count", "output_count"};
    for (double target : targets) {
      const qrm::ConcatenationTrace t = qrm::concat_trace(model, eps_in, target);
      table.rows.push_back({fmt_double(target), std::to_string(t.z_final),
                            fmt_double(t.levels.back().eps), fmt_double(t.ratio),
                            t.input_count.str(), t.output_count.str()});
      table.json_rows.push_back({{"target", target},
                                 {"z", t.z_final},
                                 {"eps_out", t.levels.back().eps},
                                 {"ratio", t.ratio},
                                 {"input_count", t.input_count.str()},
                                 {"output_count", t.output_count.str()}});
    }
    rep.table = std::move(table);
    rep.items.push_back({"gamma_formula", p.gamma, false});
    if (targets.size() >= 3) {
      rep.items.push_back(
          {"fitted_exponent", qrm::overhead_scaling_exponent(model, eps_in, targets), false});
    }
    rep.print(parse_format(g.format), g.quiet, timer.elapsed_ms());
    return 0;
  }

  Table table;
  const bool mc = method == "mc";
  if (mc) {
    table.columns = {"eps", "p_accept", "p_accept_sigma", "eps_block", "eps_block_sigma"};
  } else {
    table.columns = {"eps", "p_accept", "eps_block"};
  }
  std::vector<double> log_eps, log_block;
  for (double eps : eps_list) {
    if (mc) {
      const qrm::McOutputError res = qrm::mc_output_error(code, eps, g.trials, g.seed);
      table.rows.push_back({fmt_double(eps), fmt_double(res.p_accept),
                            fmt_double(res.p_accept_sigma), fmt_double(res.eps_block),
                            fmt_double(res.eps_block_sigma)});
      table.json_rows.push_back({{"eps", eps},
                                 {"p_accept", res.p_accept},
                                 {"p_accept_sigma", res.p_accept_sigma},
                                 {"eps_block", res.eps_block},
                                 {"eps_block_sigma", res.eps_block_sigma}});
      if (res.eps_block > 0) {
        log_eps.push_back(std::log(eps));
        log_block.push_back(std::log(res.eps_block));
      }
    } else {
      try {
        const qrm::ExactOutputError res = qrm::exact_output_error(code, eps, g.budget);
        table.rows.push_back({fmt_double(eps), fmt_double(res.p_accept),
                              fmt_double(res.eps_block)});
        table.json_rows.push_back(
            {{"eps", eps}, {"p_accept", res.p_accept}, {"eps_block", res.eps_block}});
        if (res.eps_block > 0) {
          log_eps.push_back(std::log(eps));
          log_block.push_back(std::log(res.eps_block));
        }
      } catch (const qrm::BudgetExceeded&) {
        std::cerr << "exact enumeration exceeds the budget; try --method mc\n";
        throw;
      }
    }
  }
  rep.table = std::move(table);
  if (log_eps.size() >= 2) {
    // least-squares slope of log eps_block vs log eps
    const double xb = std::accumulate(log_eps.begin(), log_eps.end(), 0.0) / log_eps.size();
    const double yb =
        std::accumulate(log_block.begin(), log_block.end(), 0.0) / log_block.size();
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < log_eps.size(); ++i) {
      sxy += (log_eps[i] - xb) * (log_block[i] - yb);
      sxx += (log_eps[i] - xb) * (log_eps[i] - xb);
    }
    if (sxx > 0) rep.items.push_back({"exponent_fit", sxy / sxx, false});
  }
  rep.mode = mc ? "sampled" : "exhaustive";
  if (mc) rep.seed = g.seed;
  rep.print(parse_format(g.format), g.quiet, timer.elapsed_ms());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Punctured quantum Reed-Muller codes: construction, verification and "
               "magic-state distillation overhead analysis"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"table", "json", "csv"}));
  app.add_option("--budget", g.budget, "Max enumeration steps for exhaustive oracles");
  app.add_option("--trials", g.trials, "Monte Carlo / sampling trial count");
  app.add_option("--seed", g.seed, "RNG seed for randomized checks");
  app.add_flag("--quiet", g.quiet, "Suppress table output");

  int m = 0, r = 0, w = 0;
  std::string out_path, code_path;

  CLI::App* cmd_params = app.add_subcommand("params", "Exact [[n,k,d]] and gamma from (m,r,w)");
  cmd_params->add_option("--m", m)->required();
  cmd_params->add_option("--r", r)->required();
  cmd_params->add_option("--w", w)->required();

  CLI::App* cmd_construct = app.add_subcommand("construct", "Build a code and write it to a file");
  cmd_construct->add_option("--m", m)->required();
  cmd_construct->add_option("--r", r)->required();
  cmd_construct->add_option("--w", w)->required();
  cmd_construct->add_option("--out", out_path, "Output code file")->required();

  std::vector<std::string> checks;
  std::optional<int> nu_override, l_max_opt;
  CLI::App* cmd_verify = app.add_subcommand("verify", "Run oracle checks on a code file");
  cmd_verify->add_option("--code", code_path, "Code file")->required();
  cmd_verify->add_option("--checks", checks, "Subset of checks to run")
      ->delimiter(',')
      ->check(CLI::IsMember({"commutation", "distance", "transversal", "overlap",
                             "divisibility"}));
  cmd_verify->add_option("--nu", nu_override, "Override the hierarchy level (negative controls)");
  cmd_verify->add_option("--l-max", l_max_opt, "Largest overlap subset size (default nu)");

  int r_max = 0, nu_min = 3, m_max = 0;
  std::string constraint = "m3r1";
  double gamma_below = std::numeric_limits<double>::infinity();
  CLI::App* cmd_scan = app.add_subcommand("scan", "Enumerate family members sorted by gamma");
  cmd_scan->add_option("--r-max", r_max)->required();
  cmd_scan->add_option("--constraint", constraint)->check(CLI::IsMember({"general", "m3r1"}));
  cmd_scan->add_option("--nu-min", nu_min, "Require m > nu_min * r");
  cmd_scan->add_option("--gamma-below", gamma_below, "Only print rows with gamma below this");
  cmd_scan->add_option("--m-max", m_max, "Upper bound on m in general mode");

  bool optimize = false;
  std::optional<double> p_opt;
  double tol = 1e-6;
  CLI::App* cmd_asym = app.add_subcommand("asymptotic", "Asymptotic exponent 3(1-S(p))/S(3p)");
  cmd_asym->add_flag("--optimize", optimize, "Minimize over p");
  cmd_asym->add_option("--p", p_opt, "Evaluate at a single p");
  cmd_asym->add_option("--tol", tol, "Golden-section bracket width");

  std::vector<double> eps_list, targets;
  std::string method = "exact";
  double prefactor = 1.0;
  CLI::App* cmd_distill = app.add_subcommand("distill", "Output error and overhead analysis");
  cmd_distill->add_option("--code", code_path, "Code file")->required();
  cmd_distill->add_option("--eps", eps_list, "Input error rate(s)")->delimiter(',')->required();
  cmd_distill->add_option("--method", method)->check(CLI::IsMember({"exact", "mc"}));
  cmd_distill->add_option("--targets", targets, "Output error targets for concatenation")
      ->delimiter(',');
  cmd_distill->add_option("--prefactor", prefactor, "Prefactor A in the level map A*(n*eps)^d");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*cmd_params) return run_params(m, r, w, g);
    if (*cmd_construct) return run_construct(m, r, w, out_path, g);
    if (*cmd_verify) return run_verify(code_path, checks, nu_override, l_max_opt, g);
    if (*cmd_scan) return run_scan(r_max, constraint, nu_min, gamma_below, m_max, g);
    if (*cmd_asym) return run_asymptotic(optimize, p_opt, tol, g);
    if (*cmd_distill) return run_distill(code_path, eps_list, method, targets, prefactor, g);
    return 2;
  } catch (const qrm::BudgetExceeded& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return 5;
  } catch (const qrm::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 4;
  } catch (const qrm::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
