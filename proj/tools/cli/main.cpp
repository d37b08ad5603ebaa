#include "cli/config.hpp"
#include "cli/sweeps.hpp"

#include "diqsdc/epp.hpp"
#include "diqsdc/errors.hpp"
#include "diqsdc/nla.hpp"
#include "diqsdc/version.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace diqsdc;
using nlohmann::json;

int log_verbosity() {
  static const int level = [] {
    const char* e = std::getenv("DIQSDC_LOG");
    if (!e) return 0;
    const std::string s(e);
    if (s == "debug" || s == "2") return 2;
    if (s == "info" || s == "1") return 1;
    return 0;
  }();
  return level;
}

void log_info(const std::string& msg) {
  if (log_verbosity() >= 1) std::clog << "[diqsdc] " << msg << '\n';
}

void write_output(const std::string& text, const std::string& out_path) {
  std::cout << text;
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write output file: " + out_path);
    out << text;
  }
}

struct VerifyPrinter {
  std::ostringstream out;
  bool any_fail = false;

  void row(const std::string& component, const std::string& what, double expected,
           double computed, double tol) {
    const bool ok = std::abs(expected - computed) <= tol;
    any_fail = any_fail || !ok;
    out << component << "  " << what << "  expected " << cli::format_number(expected)
        << "  computed " << cli::format_number(computed) << "  " << (ok ? "pass" : "FAIL") << '\n';
  }

  void info(const std::string& component, const std::string& what) {
    out << component << "  " << what << "  info\n";
  }
};

void verify_nla(VerifyPrinter& p) {
  for (int i = 0; i <= 10; ++i) {
    const double eta = 0.1 * i;
    const FockNlaResult r = fock_nla_oracle(eta);
    p.row("nla", "P_success(eta=" + cli::format_number(eta) + ")", eta / 2.0, r.p_success, 1e-10);
    if (r.fidelity) {
      p.row("nla", "fidelity(eta=" + cli::format_number(eta) + ")", 1.0, *r.fidelity, 1e-10);
    }
  }
}

void verify_epp(VerifyPrinter& p) {
  for (int i = 0; i <= 10; ++i) {
    const double w = 0.1 * i;
    const PurifyResult r = epp_circuit_oracle(BellDiagonalState::werner(w));
    p.row("epp", "A1(p=" + cli::format_number(w) + ")",
          (5.0 * w * w + 2.0 * w + 1.0) / (4.0 * (1.0 + w * w)), r.out.a, 1e-10);
    p.row("epp", "P_success(p=" + cli::format_number(w) + ")", (1.0 + w * w) / 16.0, r.p_success,
          1e-10);
  }
  p.row("epp", "plan k(p=1)", 0.0, static_cast<double>(plan_epp(1.0).k), 0.0);
  p.row("epp", "plan k(p=0.98)", 2.0, static_cast<double>(plan_epp(0.98).k), 0.0);
  const double claimed[] = {2, 2, 3};
  const double ps[] = {0.94, 0.90, 0.86};
  for (int i = 0; i < 3; ++i) {
    const EppSchedule plan = plan_epp(ps[i]);
    p.info("epp", "plan k(p=" + cli::format_number(ps[i]) + ") derived " +
                      std::to_string(plan.k) + " vs published " +
                      cli::format_number(claimed[i]) +
                      " (published count ignores the re-randomization overhead)");
  }
}

void verify_rates(VerifyPrinter& p) {
  // Throughput at 10 GHz repetition with full Bell-state readout.
  const double eta100 = std::pow(10.0, -2.0);
  p.row("rates", "bit/s (d=100, p=1, k=0)", 25.0,
        throughput(efficiency_modified(eta100, 1.0, EppSchedule{}), 1e10, 1.0), 0.5);

  // The published ~1 bit/s points are reproducible only when the iteration
  // count matches the published one and only the first purification round is
  // charged; both accountings are printed.
  struct Point {
    double d, p;
    std::size_t k_published;
  };
  for (const Point pt : {Point{100.0, 0.90, 2}, Point{80.0, 0.86, 3}}) {
    const double eta = std::pow(10.0, -0.02 * pt.d);
    EppSchedule published;
    published.k = pt.k_published;
    published.per_step_success = {(1.0 + pt.p * pt.p) / 16.0};
    const double rate_published =
        throughput(efficiency_modified(eta, pt.p, published), 1e10, 1.0);
    const bool in_band = rate_published >= 0.1 && rate_published <= 10.0;
    p.row("rates",
          "order-of-magnitude band [0.1,10] bit/s (d=" + cli::format_number(pt.d) +
              ", p=" + cli::format_number(pt.p) + ")",
          1.0, in_band ? 1.0 : 0.0, 0.0);
    const double rate_derived =
        throughput(efficiency_modified(eta, pt.p, plan_epp(pt.p)), 1e10, 1.0);
    p.info("rates", "derived-schedule rate at d=" + cli::format_number(pt.d) +
                        ", p=" + cli::format_number(pt.p) + " is " +
                        cli::format_number(rate_derived) +
                        " bit/s vs published ~1 bit/s (full per-step success product applied)");
  }
}

int cmd_verify(const std::string& component, const std::string& out_path) {
  VerifyPrinter p;
  if (component == "nla" || component == "all") verify_nla(p);
  if (component == "epp" || component == "all") verify_epp(p);
  if (component == "rates" || component == "all") verify_rates(p);
  write_output(p.out.str(), out_path);
  return p.any_fail ? 4 : 0;
}

int cmd_simulate(const std::string& config_path, const std::string& out_path,
                 std::optional<std::uint64_t> seed, std::optional<unsigned> threads) {
  ProtocolConfig cfg = cli::load_protocol_config(config_path);
  if (seed) cfg.seed = *seed;
  if (threads) cfg.threads = *threads;
  log_info("simulate: " + std::to_string(cfg.n_pairs) + " pairs, seed " +
           std::to_string(cfg.seed));

  const auto start = std::chrono::steady_clock::now();
  const TranscriptStats stats = run_protocol(cfg);
  const auto elapsed =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start);

  json report;
  report["version"] = kVersion;
  report["seed"] = cfg.seed;
  report["config"] = cli::emit_protocol_config(cfg);
  report["duration_ms"] = elapsed.count();
  report["result"] = cli::report_stats(stats);
  write_output(report.dump(2) + "\n", out_path);
  return 0;
}

int cmd_attack_demo(std::uint64_t seed, unsigned threads, const std::string& out_path) {
  json scenarios = json::array();

  ProtocolConfig base;
  base.n_pairs = 100000;
  base.seed = seed;
  base.threads = threads;

  {
    ProtocolConfig cfg = base;
    cfg.eve = EveModel{.fraction_round1 = 1.0};
    const TranscriptStats stats = run_original(cfg);
    json s;
    s["name"] = "full_round1_intercept";
    s["fraction_round1"] = 1.0;
    s["result"] = cli::report_stats(stats);
    scenarios.push_back(std::move(s));
  }
  {
    ProtocolConfig cfg = base;
    cfg.eve = EveModel{.fraction_round2 = 0.5};
    const TranscriptStats stats = run_original(cfg);
    json s;
    s["name"] = "round2_only_intercept";
    s["fraction_round2"] = 0.5;
    s["result"] = cli::report_stats(stats);
    scenarios.push_back(std::move(s));
  }

  json report;
  report["version"] = kVersion;
  report["seed"] = seed;
  report["scenarios"] = std::move(scenarios);
  write_output(report.dump(2) + "\n", out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulator and analytics for an entanglement-based secure "
               "direct-communication protocol"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  auto* analytic = app.add_subcommand("analytic", "Closed-form sweep tables (CSV)");
  std::string sweep = "custom";
  std::string grid_spec;
  std::string variant_name = "original";
  std::string out_path;
  analytic->add_option("--sweep", sweep, "One of fig2, fig3, fig7, custom");
  analytic->add_option("--grid", grid_spec, "Custom grid d0:d1:step,p0:p1:step");
  analytic->add_option("--variant", variant_name, "original or modified")
      ->check(CLI::IsMember({"original", "modified"}));
  analytic->add_option("--out", out_path, "Also write the table to this file");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo protocol run (JSON report)");
  std::string config_path;
  std::string sim_out;
  std::uint64_t seed_override = 0;
  unsigned threads_override = 0;
  simulate->add_option("--config", config_path, "JSON run configuration")->required();
  simulate->add_option("--out", sim_out, "Also write the report to this file");
  auto* seed_opt = simulate->add_option("--seed", seed_override, "Override the config seed");
  auto* threads_opt =
      simulate->add_option("--threads", threads_override, "Worker threads (0 = machine)");

  auto* verify = app.add_subcommand("verify", "Golden checks of the photonic circuit oracles");
  std::string component = "all";
  std::string verify_out;
  verify->add_option("component", component, "nla, epp, rates, or all")
      ->check(CLI::IsMember({"nla", "epp", "rates", "all"}));
  verify->add_option("--out", verify_out, "Also write the table to this file");

  auto* demo = app.add_subcommand("attack-demo", "Intercept-resend attack scenarios");
  std::uint64_t demo_seed = 1;
  unsigned demo_threads = 0;
  std::string demo_out;
  demo->add_option("--seed", demo_seed, "Master seed");
  demo->add_option("--threads", demo_threads, "Worker threads (0 = machine)");
  demo->add_option("--out", demo_out, "Also write the report to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (analytic->parsed()) {
      std::optional<diqsdc::cli::Grid> grid;
      if (!grid_spec.empty()) grid = diqsdc::cli::parse_grid(grid_spec);
      const diqsdc::Variant variant = variant_name == "modified" ? diqsdc::Variant::Modified
                                                                 : diqsdc::Variant::Original;
      write_output(diqsdc::cli::run_sweep(sweep, grid, variant), out_path);
      return 0;
    }
    if (simulate->parsed()) {
      return cmd_simulate(config_path, sim_out,
                          seed_opt->count() ? std::optional(seed_override) : std::nullopt,
                          threads_opt->count() ? std::optional(threads_override) : std::nullopt);
    }
    if (verify->parsed()) return cmd_verify(component, verify_out);
    if (demo->parsed()) return cmd_attack_demo(demo_seed, demo_threads, demo_out);
  } catch (const diqsdc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
