#include "cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "vortex/io.hpp"

namespace vortex::cli {

namespace fs = std::filesystem;

namespace {

struct RunConfig {
  double R = 20.0;
  std::vector<int> m{1};
  double alpha = 1.0;
  std::vector<double> P0;
  int N = 20;
  SolverConfig solver;
  QuadratureOptions quadrature;
  std::string out_dir = ".";
  std::string format = "csv";
  bool gnuplot = false;
  int threads = 0;
  std::string profile_path;
  std::string summary_path;
  std::vector<int> figures;
};

struct UsageError : Error {
  using Error::Error;
};

template <typename T>
std::vector<T> parse_list(const std::string& text, int line, T (*convert)(const std::string&)) {
  std::vector<T> values;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    if (first == std::string::npos) throw ParseError("empty list element", line);
    try {
      values.push_back(convert(item.substr(first, last - first + 1)));
    } catch (const std::exception&) {
      throw ParseError("cannot parse '" + item + "'", line);
    }
  }
  return values;
}

double to_double(const std::string& s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument(s);
  return v;
}

int to_int(const std::string& s) {
  std::size_t used = 0;
  const int v = std::stoi(s, &used);
  if (used != s.size()) throw std::invalid_argument(s);
  return v;
}

template <typename T>
T single(const std::string& text, int line, T (*convert)(const std::string&)) {
  try {
    return convert(text);
  } catch (const std::exception&) {
    throw ParseError("cannot parse '" + text + "'", line);
  }
}

void apply_config_file(const std::string& path, RunConfig& config) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file " + path);
  const auto entries = io::parse_config(in);
  using Setter = std::function<void(const io::ConfigEntry&)>;
  const std::map<std::string, Setter> setters{
      {"R", [&](const auto& e) { config.R = single(e.value, e.line, to_double); }},
      {"m", [&](const auto& e) { config.m = parse_list(e.value, e.line, to_int); }},
      {"alpha", [&](const auto& e) { config.alpha = single(e.value, e.line, to_double); }},
      {"P0", [&](const auto& e) { config.P0 = parse_list(e.value, e.line, to_double); }},
      {"N", [&](const auto& e) { config.N = single(e.value, e.line, to_int); }},
      {"max-iters", [&](const auto& e) { config.solver.max_iters = single(e.value, e.line, to_int); }},
      {"grad-tol", [&](const auto& e) { config.solver.grad_tol = single(e.value, e.line, to_double); }},
      {"panels", [&](const auto& e) { config.quadrature.panel_count = single(e.value, e.line, to_int); }},
      {"nodes-per-panel",
       [&](const auto& e) { config.quadrature.nodes_per_panel = single(e.value, e.line, to_int); }},
      {"out-dir", [&](const auto& e) { config.out_dir = e.value; }},
      {"format", [&](const auto& e) { config.format = e.value; }},
      {"threads", [&](const auto& e) { config.threads = single(e.value, e.line, to_int); }},
  };
  for (const auto& [key, entry] : entries) {
    const auto it = setters.find(key);
    if (it == setters.end()) throw ParseError("unknown key '" + key + "'", entry.line);
    it->second(entry);
  }
}

void add_common_options(CLI::App& app, RunConfig& config) {
  app.add_option("--R", config.R, "Domain radius");
  app.add_option("--m", config.m, "Vortex number (repeatable in sweep)");
  app.add_option("--alpha", config.alpha, "Coupling parameter alpha >= 1");
  app.add_option("--P0", config.P0, "Energy flux (repeatable in sweep)");
  app.add_option("--N", config.N, "Basis dimension");
  app.add_option("--max-iters", config.solver.max_iters, "Iteration limit");
  app.add_option("--grad-tol", config.solver.grad_tol, "Tangential gradient tolerance");
  app.add_option("--panels", config.quadrature.panel_count, "Quadrature panels (0: max(8, N))");
  app.add_option("--nodes-per-panel", config.quadrature.nodes_per_panel, "Gauss nodes per panel");
  app.add_option("--out-dir", config.out_dir, "Output directory");
  app.add_option("--format", config.format, "Table format: csv or jsonl")
      ->check(CLI::IsMember({"csv", "jsonl"}));
  app.add_flag("--gnuplot", config.gnuplot, "Also write a gnuplot script");
  app.add_option("--threads", config.threads, "Worker threads for sweeps (0: all cores)");
  // Consumed before parsing; declared so CLI11 accepts it.
  app.add_option("--config", "key = value file; flags override it");
}

ProblemSpec spec_for(const RunConfig& config, int m, double p0) {
  ProblemSpec spec{config.R, m, config.alpha, p0, config.N};
  spec.validate();
  return spec;
}

ProblemSpec single_spec(const RunConfig& config) {
  if (config.P0.empty()) throw UsageError("P0 is required");
  if (config.P0.size() != 1 || config.m.size() != 1) {
    throw UsageError("solve takes exactly one --m and one --P0");
  }
  return spec_for(config, config.m.front(), config.P0.front());
}

std::ofstream open_output(const RunConfig& config, const std::string& name) {
  fs::create_directories(config.out_dir);
  const fs::path path = fs::path(config.out_dir) / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

std::string yes_no(bool value) { return value ? "pass" : "FAIL"; }

void print_report(std::ostream& out, const BoundsReport& report) {
  out << "beta upper bound     " << io::format_double(report.beta_upper) << "  "
      << yes_no(report.beta_ok) << '\n';
  out << "peak bound (u^2)     " << io::format_double(report.peak_bound_sq) << "  max u^2 "
      << io::format_double(report.max_u_sq) << "  " << yes_no(report.peak_ok) << '\n';
  out << "decay applicable     " << (report.decay_applicable ? "yes" : "no");
  if (report.decay_applicable) {
    out << "  epsilon0 fit "
        << (report.epsilon0_fit ? io::format_double(*report.epsilon0_fit) : std::string("n/a"))
        << "  floor " << io::format_double(report.epsilon0_floor) << "  "
        << yes_no(report.decay_ok.value_or(false));
  }
  out << '\n';
  out << "poincare ratio       " << io::format_double(report.poincare_ratio) << "  "
      << yes_no(report.poincare_ok) << '\n';
  out << "flux                 " << io::format_double(report.flux) << "  "
      << (report.flux_ok ? "pass" : "FAIL (flux mismatch)") << '\n';
}

void print_report_rows(std::ostream& out, const BoundsReport& report) {
  out << "check,value,threshold,pass\n";
  out << "beta_bound,," << io::format_double(report.beta_upper) << ',' << report.beta_ok << '\n';
  out << "peak_bound," << io::format_double(report.max_u_sq) << ','
      << io::format_double(report.peak_bound_sq) << ',' << report.peak_ok << '\n';
  if (report.decay_applicable) {
    out << "decay," << (report.epsilon0_fit ? io::format_double(*report.epsilon0_fit) : "")
        << ',' << io::format_double(report.epsilon0_floor) << ','
        << report.decay_ok.value_or(false) << '\n';
  }
  out << "poincare," << io::format_double(report.poincare_ratio) << ",1," << report.poincare_ok
      << '\n';
  out << "flux," << io::format_double(report.flux) << ",," << report.flux_ok << '\n';
}

void write_gnuplot_profile(std::ostream& out) {
  out << "set datafile separator ','\n"
         "set key autotitle columnhead\n"
         "set xlabel 'r'\nset ylabel 'u(r)'\n"
         "plot 'profile.csv' using 1:2 with lines\n";
}

int cmd_solve(const RunConfig& config, std::ostream& out) {
  const ProblemSpec spec = single_spec(config);
  const QuadratureRule rule = config.quadrature.rule_for(spec);
  const SolveResult result = minimize(spec, make_basis(spec, rule), rule, config.solver);
  const BoundsReport report = validate_solution(result, spec, rule);
  const io::Summary summary = io::make_summary(spec, result);

  {
    auto file = open_output(config, "profile.csv");
    io::write_profile_csv(file, result.profile);
  }
  if (config.format == "jsonl") {
    auto file = open_output(config, "summary.jsonl");
    io::write_summary_jsonl(file, summary, report);
  } else {
    auto file = open_output(config, "summary.csv");
    io::write_summary_csv(file, summary, report);
  }
  if (config.gnuplot) {
    auto file = open_output(config, "profile.gp");
    write_gnuplot_profile(file);
  }

  out << "beta        " << io::format_double(result.beta) << '\n';
  out << "delta_beta  " << io::format_double(result.delta_beta) << '\n';
  out << "objective   " << io::format_double(result.objective) << '\n';
  out << "iterations  " << result.iterations << '\n';
  out << "converged   " << (result.converged ? "yes" : "no") << '\n';
  out << "positive    " << (result.positive ? "yes" : "no") << '\n';
  print_report(out, report);

  if (!result.converged) return kInternalError;
  if (!result.positive) return kRejectedSolution;
  return kSuccess;
}

std::vector<ProblemSpec> sweep_specs(const RunConfig& config) {
  if (config.P0.empty()) throw UsageError("P0 is required");
  if (config.m.empty()) throw UsageError("m is required");
  std::vector<ProblemSpec> specs;
  for (int m : config.m) {
    for (double p0 : config.P0) specs.push_back(spec_for(config, m, p0));
  }
  return specs;
}

int cmd_sweep(const RunConfig& config, std::ostream& out) {
  const auto items = sweep(sweep_specs(config), config.solver, config.quadrature, config.threads);
  if (config.format == "jsonl") {
    auto file = open_output(config, "beta_vs_P0.jsonl");
    io::write_sweep_jsonl(file, items);
  } else {
    auto file = open_output(config, "beta_vs_P0.csv");
    io::write_sweep_csv(file, items);
  }
  if (config.gnuplot) {
    auto file = open_output(config, "beta_vs_P0.gp");
    file << "set datafile separator ','\n"
            "set xlabel 'P0'\nset ylabel 'beta'\n"
            "plot for [m in '";
    std::vector<int> ms = config.m;
    for (std::size_t i = 0; i < ms.size(); ++i) file << (i ? " " : "") << ms[i];
    file << "'] 'beta_vs_P0.csv' using ($1==m ? $2 : 1/0):3:4 with yerrorlines title 'm='.m, \\\n"
            "     for [m in '";
    for (std::size_t i = 0; i < ms.size(); ++i) file << (i ? " " : "") << ms[i];
    file << "'] 'beta_vs_P0.csv' using ($1==m ? $2 : 1/0):5 with lines dt 2 notitle\n";
  }
  io::write_sweep_csv(out, items);
  const bool any_ok = std::any_of(items.begin(), items.end(), [](const SweepItem& item) {
    return item.ok();
  });
  return any_ok ? kSuccess : kInternalError;
}

int cmd_validate(const RunConfig& config, std::ostream& out) {
  BoundsReport report;
  bool positive = true;
  if (!config.profile_path.empty() || !config.summary_path.empty()) {
    if (config.profile_path.empty() || config.summary_path.empty()) {
      throw UsageError("validate needs both --profile and --summary");
    }
    std::ifstream summary_in(config.summary_path);
    if (!summary_in) throw UsageError("cannot open " + config.summary_path);
    std::ifstream profile_in(config.profile_path);
    if (!profile_in) throw UsageError("cannot open " + config.profile_path);
    const io::Summary summary = io::read_summary_csv(summary_in);
    summary.spec.validate();
    const SampledProfile samples = io::read_profile_csv(profile_in);
    if (std::abs(samples.r.front()) > 1e-12 * summary.spec.R ||
        std::abs(samples.r.back() - summary.spec.R) > 1e-12 * summary.spec.R) {
      throw ParseError("profile radii do not span [0, R]", 2);
    }
    report = validate_sampled(samples, summary.spec, summary.beta);
    for (std::size_t i = 1; i + 1 < samples.u.size(); ++i) positive = positive && samples.u[i] > 0.0;
  } else {
    const ProblemSpec spec = single_spec(config);
    const QuadratureRule rule = config.quadrature.rule_for(spec);
    const SolveResult result = minimize(spec, make_basis(spec, rule), rule, config.solver);
    report = validate_solution(result, spec, rule);
    positive = result.positive && result.converged;
    out << "beta                 " << io::format_double(result.beta) << '\n';
  }
  print_report(out, report);
  out << "positive             " << (positive ? "pass" : "FAIL") << '\n';
  print_report_rows(out, report);
  {
    auto file = open_output(config, "validation.csv");
    print_report_rows(file, report);
  }
  return report.all_ok() && positive ? kSuccess : kRejectedSolution;
}

void write_wide_profiles(std::ostream& out, const std::vector<SweepItem>& items,
                         const std::string& label) {
  const double radius = items.front().spec.R;
  out << "r";
  for (const SweepItem& item : items) {
    out << ",u_" << label << '=' << (label == "m" ? std::to_string(item.spec.m)
                                                   : io::format_double(item.spec.P0));
  }
  out << '\n';
  for (int i = 0; i < io::kProfileRows; ++i) {
    const double r = i == io::kProfileRows - 1 ? radius : radius * i / (io::kProfileRows - 1.0);
    out << io::format_double(r);
    for (const SweepItem& item : items) {
      out << ',' << (item.ok() ? io::format_double(eval(item.result->profile, r)) : "");
    }
    out << '\n';
  }
}

void write_gnuplot_wide(std::ostream& out, const std::string& data, std::size_t columns) {
  out << "set datafile separator ','\n"
         "set key autotitle columnhead\n"
         "set xlabel 'r'\nset ylabel 'u(r)'\n"
         "plot for [i=2:"
      << columns + 1 << "] '" << data << "' using 1:i with lines\n";
}

int cmd_export(const RunConfig& config, const CLI::App& app, std::ostream& out) {
  if (config.figures.empty()) throw UsageError("export needs --figure 1, 2 and/or 3");
  const bool has_R = app.count("--R") > 0;
  const bool has_m = app.count("--m") > 0;
  const bool has_P0 = app.count("--P0") > 0;
  bool any_ok = false;
  for (int figure : config.figures) {
    RunConfig fig = config;
    std::string stem;
    if (figure == 1) {
      if (!has_R) fig.R = 40.0;
      if (!has_P0) fig.P0 = {200.0};
      if (!has_m) fig.m = {1, 2, 3, 4, 5, 6};
      stem = "fig1_profiles";
    } else if (figure == 2) {
      if (!has_R) fig.R = 20.0;
      if (!has_m) fig.m = {1};
      if (!has_P0) fig.P0 = {10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
      stem = "fig2_profiles";
    } else if (figure == 3) {
      if (!has_R) fig.R = 20.0;
      if (!has_m) fig.m = {1, 2, 3, 4, 5};
      if (!has_P0) fig.P0 = {1, 50, 100, 200, 300, 400, 500, 600, 700, 800};
      stem = "fig3_beta_vs_P0";
    } else {
      throw UsageError("unknown figure " + std::to_string(figure));
    }
    const auto items = sweep(sweep_specs(fig), fig.solver, fig.quadrature, fig.threads);
    any_ok = any_ok || std::any_of(items.begin(), items.end(),
                                   [](const SweepItem& item) { return item.ok(); });
    {
      auto file = open_output(fig, stem + ".csv");
      if (figure == 3) {
        io::write_sweep_csv(file, items);
      } else {
        write_wide_profiles(file, items, figure == 1 ? "m" : "P0");
      }
    }
    if (config.gnuplot && figure != 3) {
      auto file = open_output(fig, stem + ".gp");
      write_gnuplot_wide(file, stem + ".csv", items.size());
    }
    out << "wrote " << (fs::path(fig.out_dir) / (stem + ".csv")).string() << '\n';
  }
  return any_ok ? kSuccess : kInternalError;
}

std::string find_config_path(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw UsageError("--config needs a path");
      return args[i + 1];
    }
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return {};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  CLI::App app{"Ring vortex soliton profiles by constrained minimization", "vortex"};
  app.require_subcommand(1);
  auto* solve = app.add_subcommand("solve", "Solve one problem and write profile.csv, summary.csv");
  auto* sweep_cmd = app.add_subcommand("sweep", "Solve a grid of (m, P0) and write beta_vs_P0.csv");
  auto* validate = app.add_subcommand("validate", "Check a solution against the analytic bounds");
  auto* export_cmd = app.add_subcommand("export", "Write plot-ready data for the standard figures");
  for (auto* sub : {solve, sweep_cmd, validate, export_cmd}) add_common_options(*sub, config);
  validate->add_option("--profile", config.profile_path, "profile.csv to validate");
  validate->add_option("--summary", config.summary_path, "summary.csv paired with --profile");
  export_cmd->add_option("--figure", config.figures, "Figure number 1, 2 or 3 (repeatable)");

  try {
    if (const std::string path = find_config_path(args); !path.empty()) {
      apply_config_file(path, config);
    }
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n' << app.help();
    return kUsage;
  } catch (const ParseError& e) {
    err << "config: " << e.what() << '\n';
    return kDataFormat;
  } catch (const UsageError& e) {
    err << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*solve) return cmd_solve(config, out);
    if (*sweep_cmd) return cmd_sweep(config, out);
    if (*validate) return cmd_validate(config, out);
    return cmd_export(config, *export_cmd, out);
  } catch (const UsageError& e) {
    err << e.what() << '\n';
    return kUsage;
  } catch (const InvalidArgument& e) {
    err << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kDataFormat;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInternalError;
  }
}

}  // namespace vortex::cli
