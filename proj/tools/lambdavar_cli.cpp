#include <lambdavar.h>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

namespace {

struct CliError {
  lvar_status status;
  std::string message;
};

int exit_code(lvar_status s) {
  switch (s) {
    case LVAR_OK: return 0;
    case LVAR_USAGE: return 1;
    case LVAR_INVALID_INPUT:
    case LVAR_DOMAIN: return 2;
    case LVAR_VIOLATION:
    case LVAR_INTERNAL: return 3;
    case LVAR_RESOURCE: return 4;
  }
  return 3;
}

void check(lvar_status s) {
  if (s != LVAR_OK) throw CliError{s, lvar_last_error()};
}

struct Deleter {
  void operator()(lvar_lambda* p) const { lvar_lambda_free(p); }
  void operator()(lvar_function* p) const { lvar_function_free(p); }
  void operator()(lvar_report* p) const { lvar_report_free(p); }
  void operator()(char* p) const { lvar_string_free(p); }
};
using LambdaPtr = std::unique_ptr<lvar_lambda, Deleter>;
using FunctionPtr = std::unique_ptr<lvar_function, Deleter>;
using ReportPtr = std::unique_ptr<lvar_report, Deleter>;
using StringPtr = std::unique_ptr<char, Deleter>;

std::string take(char* s) { return StringPtr(s).get(); }

// Arguments starting with '{' are inline JSON, anything else is a path.
std::string read_source(const std::string& option, const std::string& arg) {
  if (!arg.empty() && arg.front() == '{') return arg;
  std::ifstream in(arg, std::ios::binary);
  if (!in) throw CliError{LVAR_INVALID_INPUT, option + ": cannot read '" + arg + "'"};
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string prefixed(const std::string& option, const char* msg) {
  return option + ": " + msg;
}

LambdaPtr load_lambda(const std::string& arg) {
  const std::string text = read_source("lambda", arg);
  lvar_lambda* p = nullptr;
  const lvar_status s = lvar_lambda_from_json(text.c_str(), &p);
  if (s != LVAR_OK) throw CliError{s, prefixed("lambda", lvar_last_error())};
  return LambdaPtr(p);
}

FunctionPtr load_function(const std::string& arg) {
  const std::string text = read_source("fn", arg);
  lvar_function* p = nullptr;
  const lvar_status s = lvar_function_from_json(text.c_str(), &p);
  if (s != LVAR_OK) throw CliError{s, prefixed("fn", lvar_last_error())};
  return FunctionPtr(p);
}

std::string num(double v) {
  char buf[32];
  check(lvar_format_number(v, buf, sizeof buf));
  return buf;
}

void emit(const std::string& text, const std::string& out_path) {
  std::string body = text;
  if (body.empty() || body.back() != '\n') body.push_back('\n');
  if (out_path.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw CliError{LVAR_INVALID_INPUT, "out: cannot write '" + out_path + "'"};
  out << body;
}

bool wants_csv(const std::string& format, const std::string& out_path) {
  if (format == "csv") return true;
  if (format == "json") return false;
  return out_path.size() >= 4 && out_path.compare(out_path.size() - 4, 4, ".csv") == 0;
}

int finish_report(const ReportPtr& r, const std::string& format, const std::string& out_path) {
  char* s = nullptr;
  check(wants_csv(format, out_path) ? lvar_report_csv(r.get(), &s) : lvar_report_json(r.get(), &s));
  emit(take(s), out_path);
  if (!out_path.empty()) {
    std::cout << "violations " << lvar_report_violation_count(r.get()) << ", ok "
              << (lvar_report_ok(r.get()) ? "true" : "false") << '\n';
  }
  return lvar_report_ok(r.get()) ? 0 : exit_code(LVAR_VIOLATION);
}

const char* kReportCsv =
    "Report CSV columns: case_id,inputs_digest,primary,secondary,margin,violation\n"
    "(inputs_digest is FNV-1a 64 of the compact case inputs JSON; violation is 0 or 1).";

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lambda-variation toolkit: variation, Bernstein/Kantorovich operators, campaigns"};
  app.require_subcommand(1);
  app.footer("Exit codes: 0 success, 1 usage, 2 invalid input, 3 property violation, 4 resource limit.");

  std::string fn_arg, lambda_arg, out_path, format = "auto";

  // variation
  auto* var = app.add_subcommand("variation", "Lambda-variation of a function (JSON)");
  std::size_t tail = 0, resolution = 16;
  double delta = 0.0;
  var->add_option("--fn", fn_arg, "Function JSON file or inline JSON")->required();
  var->add_option("--lambda", lambda_arg, "Lambda-sequence JSON file or inline JSON")->required();
  var->add_option("--tail", tail, "Drop the first m weights");
  auto* delta_opt = var->add_option("--delta", delta, "Restrict to systems with mesh <= delta");
  var->add_option("--resolution", resolution, "Uniform grid resolution for --delta")
      ->needs(delta_opt);

  // operator
  auto* op = app.add_subcommand("operator", "Bernstein or Kantorovich polynomial as CSV");
  std::string op_name = "bernstein", emit_spec = "coeffs";
  std::size_t degree = 0;
  op->add_option("--op", op_name, "bernstein | kantorovich")
      ->check(CLI::IsMember({"bernstein", "kantorovich"}));
  op->add_option("--fn", fn_arg, "Function JSON file or inline JSON")->required();
  op->add_option("-n", degree, "Degree")->required();
  op->add_option("--emit", emit_spec, "coeffs | samples:K");
  op->footer("CSV columns: coeffs -> k,coefficient; samples:K -> x,value at K equispaced points.");

  // diminish
  auto* dim = app.add_subcommand("diminish", "Variation-diminishing campaign");
  lvar_diminish_config dcfg;
  lvar_diminish_config_default(&dcfg);
  std::string ops = "both", lambdas = dcfg.lambdas;
  std::uint64_t seed = dcfg.seed;
  std::size_t cases = dcfg.cases, threads = 0;
  dim->add_option("--seed", seed, "Campaign seed");
  dim->add_option("--cases", cases, "Number of random functions");
  dim->add_option("--ops", ops, "bernstein | kantorovich | both")
      ->check(CLI::IsMember({"bernstein", "kantorovich", "both"}));
  dim->add_option("--nmin", dcfg.n_min, "Smallest degree");
  dim->add_option("--nmax", dcfg.n_max, "Largest degree");
  dim->add_option("--lambdas", lambdas, "Comma list of constant, linear, power, nlog");
  dim->add_option("--max-breakpoints", dcfg.max_breakpoints, "Breakpoints per function (2..9)");
  dim->add_option("--tolerance", dcfg.tolerance, "Violation tolerance");
  dim->add_option("--threads", threads, "Worker threads (0: all cores)");
  dim->add_option("--out", out_path, "Write the report here instead of standard output");
  dim->add_option("--format", format, "json | csv | auto (by --out extension)")
      ->check(CLI::IsMember({"json", "csv", "auto"}));
  dim->footer(kReportCsv);

  // counterexample
  auto* cex = app.add_subcommand("counterexample", "Restricted-variation counterexample study");
  double cex_delta = 0.75;
  std::size_t cex_nmax = 10, cex_resolution = 8;
  cex->add_option("--lambda", lambda_arg, "Lambda-sequence JSON file or inline JSON")->required();
  cex->add_option("--delta", cex_delta, "Split point, in (2/3, 1)");
  cex->add_option("--nmax", cex_nmax, "Largest Bernstein degree");
  cex->add_option("--resolution", cex_resolution, "Grid resolution for the solver cross-check");
  cex->add_option("--out", out_path, "Write the report here instead of standard output");
  cex->add_option("--format", format, "json | csv | auto")
      ->check(CLI::IsMember({"json", "csv", "auto"}));
  cex->footer(kReportCsv);

  // converge
  auto* conv = app.add_subcommand("converge", "Lambda-norm convergence table");
  std::vector<std::size_t> schedule{4, 16, 64, 256};
  std::string conv_format = "csv";
  conv->add_option("--fn", fn_arg, "Piecewise linear function JSON")->required();
  conv->add_option("--lambda", lambda_arg, "Proper Lambda-sequence JSON")->required();
  conv->add_option("--schedule", schedule, "Strictly increasing degrees")->delimiter(',');
  conv->add_option("--out", out_path, "Write the output here instead of standard output");
  conv->add_option("--format", conv_format, "csv (table) | json (full report)")
      ->check(CLI::IsMember({"json", "csv"}));
  conv->footer("CSV columns: n,d_bernstein,d_kantorovich,norm_gap_bernstein,status");

  // wiener
  auto* wien = app.add_subcommand("wiener", "Restricted-variation profile over decreasing deltas");
  std::vector<double> deltas{0.125, 0.03125, 0.0078125};
  std::size_t wres = 16;
  wien->add_option("--fn", fn_arg, "Function JSON")->required();
  wien->add_option("--lambda", lambda_arg, "Lambda-sequence JSON")->required();
  wien->add_option("--deltas", deltas, "Strictly decreasing mesh bounds")->delimiter(',');
  wien->add_option("--resolution", wres, "Uniform grid resolution");

  // shao-sablin
  auto* ss = app.add_subcommand("shao-sablin", "Partial Shao-Sablin ratios");
  std::vector<std::size_t> points{10, 100, 1000, 10000};
  ss->add_option("--lambda", lambda_arg, "Lambda-sequence JSON")->required();
  ss->add_option("--points", points, "Values of n")->delimiter(',');

  // oracle-check
  auto* orc = app.add_subcommand("oracle-check", "Exact solver against brute force");
  std::uint64_t oseed = 7;
  std::size_t ocases = 200;
  orc->add_option("--seed", oseed, "Campaign seed");
  orc->add_option("--cases", ocases, "Number of random functions");
  orc->add_option("--threads", threads, "Worker threads (0: all cores)");
  orc->add_option("--out", out_path, "Write the report here instead of standard output");
  orc->add_option("--format", format, "json | csv | auto")
      ->check(CLI::IsMember({"json", "csv", "auto"}));
  orc->footer(kReportCsv);

  // continuity
  auto* cont = app.add_subcommand("continuity", "Continuity-point checks on step functions");
  cont->add_option("--out", out_path, "Write the report here instead of standard output");
  cont->add_option("--format", format, "json | csv | auto")
      ->check(CLI::IsMember({"json", "csv", "auto"}));
  cont->footer(kReportCsv);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 1;
  }

  try {
    if (var->parsed()) {
      auto f = load_function(fn_arg);
      auto l = load_lambda(lambda_arg);
      lvar_variation_options o;
      lvar_variation_options_default(&o);
      o.tail = tail;
      o.delta = delta;
      o.resolution = resolution;
      if (delta_opt->count() > 0 && !(delta > 0.0)) {
        throw CliError{LVAR_INVALID_INPUT, "delta: must be positive"};
      }
      char* s = nullptr;
      check(lvar_variation(f.get(), l.get(), &o, &s));
      emit(take(s), "");
      return 0;
    }
    if (op->parsed()) {
      auto f = load_function(fn_arg);
      lvar_function* raw = nullptr;
      check(lvar_apply_operator(f.get(), op_name == "bernstein" ? LVAR_BERNSTEIN : LVAR_KANTOROVICH,
                                degree, &raw));
      FunctionPtr p(raw);
      std::ostringstream os;
      if (emit_spec == "coeffs") {
        std::size_t count = 0;
        check(lvar_bernstein_coefficients(p.get(), nullptr, 0, &count));
        std::vector<double> c(count);
        check(lvar_bernstein_coefficients(p.get(), c.data(), c.size(), &count));
        os << "k,coefficient\n";
        for (std::size_t k = 0; k < c.size(); ++k) os << k << ',' << num(c[k]) << '\n';
      } else if (emit_spec.rfind("samples:", 0) == 0) {
        std::size_t k = 0;
        try {
          std::size_t used = 0;
          k = std::stoul(emit_spec.substr(8), &used);
          if (used != emit_spec.size() - 8) k = 0;
        } catch (const std::exception&) {
          k = 0;
        }
        if (k < 2) throw CliError{LVAR_USAGE, "emit: samples:K needs an integer K >= 2"};
        os << "x,value\n";
        for (std::size_t i = 0; i < k; ++i) {
          const double x = i + 1 == k ? 1.0 : static_cast<double>(i) / static_cast<double>(k - 1);
          double y = 0.0;
          check(lvar_function_eval(p.get(), x, &y));
          os << num(x) << ',' << num(y) << '\n';
        }
      } else {
        throw CliError{LVAR_USAGE, "emit: expected coeffs or samples:K"};
      }
      emit(os.str(), "");
      return 0;
    }
    if (dim->parsed()) {
      dcfg.seed = seed;
      dcfg.cases = cases;
      dcfg.threads = threads;
      dcfg.use_bernstein = ops != "kantorovich";
      dcfg.use_kantorovich = ops != "bernstein";
      dcfg.lambdas = lambdas.c_str();
      lvar_report* raw = nullptr;
      check(lvar_run_diminish(&dcfg, &raw));
      return finish_report(ReportPtr(raw), format, out_path);
    }
    if (cex->parsed()) {
      auto l = load_lambda(lambda_arg);
      lvar_report* raw = nullptr;
      check(lvar_run_counterexample(l.get(), cex_delta, cex_nmax, cex_resolution, &raw));
      return finish_report(ReportPtr(raw), format, out_path);
    }
    if (conv->parsed()) {
      auto f = load_function(fn_arg);
      auto l = load_lambda(lambda_arg);
      lvar_report* raw = nullptr;
      check(lvar_run_convergence(f.get(), l.get(), schedule.data(), schedule.size(), &raw));
      ReportPtr r(raw);
      char* s = nullptr;
      check(conv_format == "csv" ? lvar_report_table_csv(r.get(), &s) : lvar_report_json(r.get(), &s));
      emit(take(s), out_path);
      return lvar_report_ok(r.get()) ? 0 : exit_code(LVAR_VIOLATION);
    }
    if (wien->parsed()) {
      auto f = load_function(fn_arg);
      auto l = load_lambda(lambda_arg);
      char* s = nullptr;
      check(lvar_wiener_profile(f.get(), l.get(), deltas.data(), deltas.size(), wres, &s));
      emit(take(s), "");
      return 0;
    }
    if (ss->parsed()) {
      auto l = load_lambda(lambda_arg);
      char* s = nullptr;
      check(lvar_shao_sablin_profile(l.get(), points.data(), points.size(), &s));
      emit(take(s), "");
      return 0;
    }
    if (orc->parsed()) {
      lvar_report* raw = nullptr;
      check(lvar_run_oracle_check(oseed, ocases, threads, &raw));
      return finish_report(ReportPtr(raw), format, out_path);
    }
    if (cont->parsed()) {
      lvar_report* raw = nullptr;
      check(lvar_run_continuity(&raw));
      return finish_report(ReportPtr(raw), format, out_path);
    }
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << '\n';
    return exit_code(e.status);
  }
  return 1;
}
