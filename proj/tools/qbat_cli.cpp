// Command-line sweeps over the battery-charging library: named figure-style
// CSV presets (fig1..fig6) and a brute-force verification suite.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "qbat/multimode.hpp"
#include "qbat/oracle.hpp"
#include "qbat/protocols.hpp"
#include "qbat/solvers.hpp"

namespace {

using namespace qbat;

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct SweepConfig {
  std::vector<double> temps;
  double emax = -1.0;  // -1 = per-figure default
  double step = 0.05;
  int dim = 0;  // 0 = choose per temperature
  double d_levels = 6.0;
  double delta_eps = 1.75;
  std::string out;
  unsigned long seed = 1;
  int cases = 200;
  double tol = 1e-6;
  bool explain = false;
};

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", x);
  return buf;
}

std::string temp_tag(double t) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%g", t);
  return buf;
}

ThermalSpec spec_for_temperature(double t) {
  if (t < 0.0) throw ConfigError("temperature must be nonnegative");
  return ThermalSpec{1.0, t == 0.0 ? kInf : 1.0 / t};
}

int protocol_dim(const SweepConfig& cfg, const ThermalSpec& spec,
                 double deps) {
  return cfg.dim > 0 ? cfg.dim : recommended_dim(spec, deps);
}

void write_csv(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file " + path);
  out << body;
}

std::vector<double> energy_grid(double emax, double step) {
  if (!(step > 0.0) || !(emax >= 0.0)) {
    throw ConfigError("need emax >= 0 and step > 0");
  }
  std::vector<double> grid;
  const int n = static_cast<int>(std::floor(emax / step + 1e-9));
  grid.reserve(n + 1);
  for (int i = 0; i <= n; ++i) grid.push_back(i * step);
  return grid;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + ((rng() >> 11) * 0x1p-53) * (hi - lo);
}

// ---------------------------------------------------------------- figures

int run_fig1(const SweepConfig& cfg) {
  if (cfg.explain) {
    std::cout << "delta_E: energy grid (units of omega)\n"
                 "v_min, v_max: protocols / zero_temp_bounds at d="
              << fmt(cfg.d_levels) << "\n";
    return 0;
  }
  std::string body = "delta_E,v_min,v_max\n";
  for (double e : energy_grid(cfg.emax, cfg.step)) {
    const ZeroTempBounds b = zero_temp_bounds(e, cfg.d_levels);
    body += fmt(e) + "," + fmt(b.v_min) + "," + fmt(b.v_max) + "\n";
  }
  write_csv(cfg.out, body);
  return 0;
}

int run_fig2(const SweepConfig& cfg) {
  if (cfg.explain) {
    std::cout << "delta_E: energy grid (units of omega)\n"
                 "V_T{t}: protocols / optimal_precision_charge, final_V\n"
                 "dsigma_T{t}: protocols / optimal_precision_charge, "
                 "delta_sigma\n";
    return 0;
  }
  std::string body = "delta_E";
  for (double t : cfg.temps) {
    body += ",V_T" + temp_tag(t) + ",dsigma_T" + temp_tag(t);
  }
  body += "\n";
  for (double e : energy_grid(cfg.emax, cfg.step)) {
    body += fmt(e);
    for (double t : cfg.temps) {
      const ThermalSpec spec = spec_for_temperature(t);
      const ChargingReport rep =
          optimal_precision_charge(spec, e, protocol_dim(cfg, spec, e));
      body += "," + fmt(rep.final_V) + "," + fmt(rep.delta_sigma);
    }
    body += "\n";
  }
  write_csv(cfg.out, body);
  return 0;
}

int run_fig3(const SweepConfig& cfg) {
  if (cfg.explain) {
    std::cout << "step, level_m, level_n, theta, eps_tilde: protocols / "
                 "optimal_precision_charge rotation trace\n";
    return 0;
  }
  const ThermalSpec spec = spec_for_temperature(cfg.temps.at(0));
  const ChargingReport rep = optimal_precision_charge(
      spec, cfg.delta_eps, protocol_dim(cfg, spec, cfg.delta_eps));
  std::string body = "step,level_m,level_n,theta,eps_tilde\n";
  // replay the recorded rotations to expose the running energy
  const int dim = static_cast<int>(rep.final_weights.size());
  const Eigen::VectorXd initial = thermal_weights(spec, dim).weights();
  Eigen::VectorXd w(dim);
  for (int i = 0; i < dim; ++i) w[i] = initial[rep.reorder[i]];
  int index = 0;
  for (const RotationStep& st : rep.steps) {
    const double s2 = std::sin(st.theta) * std::sin(st.theta);
    const double wm = w[st.m], wn = w[st.n];
    w[st.m] = (1 - s2) * wm + s2 * wn;
    w[st.n] = (1 - s2) * wn + s2 * wm;
    double eps_tilde = 0.0;
    for (int n = 0; n < dim; ++n) eps_tilde += n * w[n];
    body += fmt(index++) + "," + fmt(st.m) + "," + fmt(st.n) + "," +
            fmt(st.theta) + "," + fmt(eps_tilde) + "\n";
  }
  write_csv(cfg.out, body);
  return 0;
}

int run_fig4(const SweepConfig& cfg) {
  if (cfg.explain) {
    std::cout << "delta_E: energy grid (units of omega, quantum omega/20)\n"
                 "v_single_T{t}: all energy in one of two equal modes "
                 "(fundamental strategy)\n"
                 "v_even_T{t}: even allocation, same evaluation\n"
                 "v_opt_T{t}: multimode / optimize_local_split optimum\n";
    return 0;
  }
  const double quantum = 1.0 / 20.0;
  std::string body = "delta_E";
  for (double t : cfg.temps) {
    const std::string tag = temp_tag(t);
    body += ",v_single_T" + tag + ",v_even_T" + tag + ",v_opt_T" + tag;
  }
  body += "\n";
  const int n_steps = static_cast<int>(std::floor(cfg.emax / quantum + 1e-9));
  for (int m = 0; m <= n_steps; ++m) {
    const double e = m * quantum;
    body += fmt(e);
    for (double t : cfg.temps) {
      const ThermalSpec spec = spec_for_temperature(t);
      const ModeSet modes{{spec, spec}, {"A", "B"}};
      const auto charge_v = [&](double energy) {
        return optimal_precision_charge(spec, energy,
                                        protocol_dim(cfg, spec, energy))
            .final_V;
      };
      const double single = charge_v(e) + thermal_variance(spec);
      const int half = m / 2;
      const double even =
          charge_v(half * quantum) + charge_v((m - half) * quantum);
      const SplitResult opt =
          optimize_local_split(e, modes, SplitObjective::Variance,
                               SplitStrategy::Fundamental, quantum);
      body += "," + fmt(single) + "," + fmt(even) + "," + fmt(opt.total_V);
    }
    body += "\n";
  }
  write_csv(cfg.out, body);
  return 0;
}

int run_fig5(const SweepConfig& cfg) {
  if (cfg.explain) {
    std::cout << "delta_E: energy grid (units of omega)\n"
                 "dsigma_worst_T{t}: solvers / worst_precision\n"
                 "dsigma_best_T{t}: solvers / best_precision (variance -> "
                 "standard-deviation change)\n"
                 "dsigma_fund_T{t}: protocols / optimal_precision_charge\n";
    return 0;
  }
  std::string body = "delta_E";
  for (double t : cfg.temps) {
    const std::string tag = temp_tag(t);
    body += ",dsigma_worst_T" + tag + ",dsigma_best_T" + tag +
            ",dsigma_fund_T" + tag;
  }
  body += "\n";
  for (double e : energy_grid(cfg.emax, cfg.step)) {
    body += fmt(e);
    for (double t : cfg.temps) {
      const ThermalSpec spec = spec_for_temperature(t);
      const double sigma_tau = std::sqrt(thermal_variance(spec));
      const double worst = worst_precision(e, spec).objective;
      const double best =
          std::sqrt(best_precision(e, spec).objective) - sigma_tau;
      const ChargingReport rep =
          optimal_precision_charge(spec, e, protocol_dim(cfg, spec, e));
      body += "," + fmt(worst) + "," + fmt(best) + "," + fmt(rep.delta_sigma);
    }
    body += "\n";
  }
  write_csv(cfg.out, body);
  return 0;
}

int run_fig6(const SweepConfig& cfg) {
  if (cfg.explain) {
    std::cout << "delta_E: energy grid (units of omega)\n"
                 "dw_min_T{t}, dw_max_T{t}: solvers / extremal_fluctuations\n"
                 "dw_fund: protocols / min_fluctuation_value (temperature "
                 "independent)\n";
    return 0;
  }
  std::string body = "delta_E";
  for (double t : cfg.temps) {
    const std::string tag = temp_tag(t);
    body += ",dw_min_T" + tag + ",dw_max_T" + tag;
  }
  body += ",dw_fund\n";
  for (double e : energy_grid(cfg.emax, cfg.step)) {
    body += fmt(e);
    for (double t : cfg.temps) {
      const ThermalSpec spec = spec_for_temperature(t);
      const double lo =
          std::sqrt(extremal_fluctuations(e, spec, Extremum::Min).objective);
      const double hi =
          std::sqrt(extremal_fluctuations(e, spec, Extremum::Max).objective);
      body += "," + fmt(lo) + "," + fmt(hi);
    }
    body += "," + fmt(std::sqrt(min_fluctuation_value(e))) + "\n";
  }
  write_csv(cfg.out, body);
  return 0;
}

// ----------------------------------------------------------------- verify

int run_verify(const SweepConfig& cfg, const std::string& suite) {
  if (cfg.explain) {
    std::cout << "oracle suite: gaussian / gaussian_charge_stats vs oracle / "
                 "oracle_stats on random feasible unitaries\n";
    return 0;
  }
  if (suite != "oracle") throw ConfigError("unknown suite: " + suite);
  const int dim = cfg.dim > 0 ? cfg.dim : 120;
  std::mt19937_64 rng(cfg.seed);
  double max_rel = 0.0;
  int accepted = 0;
  long attempts = 0;
  while (accepted < cfg.cases) {
    if (++attempts > 200L * cfg.cases) {
      throw ConvergenceFailure("sampling kept hitting truncation rejections");
    }
    SymplecticParams p;
    p.r = uniform(rng, 0.0, 1.5);
    p.theta = uniform(rng, 0.0, 2 * M_PI);
    p.phi = uniform(rng, 0.0, 2 * M_PI);
    const double norm = uniform(rng, 0.0, 3.0);
    const double ang = uniform(rng, 0.0, 2 * M_PI);
    p.xi << norm * std::cos(ang), norm * std::sin(ang);
    const ThermalSpec spec{1.0, uniform(rng, 0.5, 5.0)};
    ChargeStats oracle{};
    try {
      oracle = oracle_stats(p, spec, dim);
    } catch (const TruncationTooSmall&) {
      continue;  // outside the oracle's validity domain at this dim
    }
    ++accepted;
    const ChargeStats closed = gaussian_charge_stats(p, spec);
    const auto rel = [](double a, double b) {
      return std::abs(a - b) / std::max(1.0, std::abs(b));
    };
    max_rel = std::max({max_rel, rel(oracle.delta_E, closed.delta_E),
                        rel(oracle.v_final, closed.v_final),
                        rel(oracle.delta_w2, closed.delta_w2)});
  }
  char line[160];
  std::snprintf(line, sizeof(line),
                "oracle: %d cases, max rel err %s %.0e (actual %.3e)\n",
                accepted, max_rel < cfg.tol ? "<" : ">=", cfg.tol, max_rel);
  std::cout << line;
  return max_rel < cfg.tol ? 0 : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"battery charging sweeps: precision and work fluctuations"};
  app.require_subcommand(1);

  SweepConfig cfg;
  std::string suite = "oracle";

  const auto add_common = [&cfg](CLI::App* cmd) {
    cmd->add_option("--temps", cfg.temps, "temperatures (units of omega)")
        ->delimiter(',');
    cmd->add_option("--emax", cfg.emax, "largest energy input");
    cmd->add_option("--step", cfg.step, "energy grid step")
        ->capture_default_str();
    cmd->add_option("--dim", cfg.dim, "truncation dimension (0 = auto)")
        ->capture_default_str();
    cmd->add_option("--out", cfg.out, "output CSV path");
    cmd->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    cmd->add_flag("--explain", cfg.explain,
                  "print the column-to-operation mapping and exit");
  };

  CLI::App* fig1 = app.add_subcommand("fig1", "zero-temperature V bounds");
  add_common(fig1);
  fig1->add_option("--d", cfg.d_levels, "system dimension")
      ->capture_default_str();

  CLI::App* fig2 =
      app.add_subcommand("fig2", "optimal-precision charging sweep");
  add_common(fig2);

  CLI::App* fig3 =
      app.add_subcommand("fig3", "optimal-precision rotation trace");
  add_common(fig3);
  fig3->add_option("--deps", cfg.delta_eps, "energy input (units of omega)")
      ->capture_default_str();

  CLI::App* fig4 = app.add_subcommand("fig4", "two-mode energy splitting");
  add_common(fig4);

  CLI::App* fig5 =
      app.add_subcommand("fig5", "Gaussian vs fundamental precision");
  add_common(fig5);

  CLI::App* fig6 =
      app.add_subcommand("fig6", "Gaussian vs fundamental fluctuations");
  add_common(fig6);

  CLI::App* verify = app.add_subcommand("verify", "verification suites");
  verify->add_option("--suite", suite, "suite name")->capture_default_str();
  verify->add_option("--n", cfg.cases, "number of random cases")
      ->capture_default_str();
  verify->add_option("--tol", cfg.tol, "acceptance tolerance")
      ->capture_default_str();
  verify->add_option("--dim", cfg.dim, "oracle dimension (0 = 120)");
  verify->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  verify->add_flag("--explain", cfg.explain,
                   "print the suite description and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (fig1->parsed()) {
      if (cfg.emax < 0.0) cfg.emax = 5.0;
      if (cfg.out.empty()) cfg.out = "fig1.csv";
      return run_fig1(cfg);
    }
    if (fig2->parsed()) {
      if (cfg.temps.empty()) {
        cfg.temps = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
      }
      if (cfg.emax < 0.0) cfg.emax = 3.0;
      if (cfg.out.empty()) cfg.out = "fig2.csv";
      return run_fig2(cfg);
    }
    if (fig3->parsed()) {
      if (cfg.temps.empty()) cfg.temps = {3.0};
      if (cfg.out.empty()) cfg.out = "fig3.csv";
      return run_fig3(cfg);
    }
    if (fig4->parsed()) {
      if (cfg.temps.empty()) cfg.temps = {0.1, 0.7, 1.0};
      if (cfg.emax < 0.0) cfg.emax = 3.0;
      if (cfg.out.empty()) cfg.out = "fig4.csv";
      return run_fig4(cfg);
    }
    if (fig5->parsed()) {
      if (cfg.temps.empty()) {
        cfg.temps = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
      }
      if (cfg.emax < 0.0) cfg.emax = 5.0;
      if (cfg.out.empty()) cfg.out = "fig5.csv";
      return run_fig5(cfg);
    }
    if (fig6->parsed()) {
      if (cfg.temps.empty()) {
        cfg.temps = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
      }
      if (cfg.emax < 0.0) cfg.emax = 5.0;
      if (cfg.out.empty()) cfg.out = "fig6.csv";
      return run_fig6(cfg);
    }
    if (verify->parsed()) return run_verify(cfg, suite);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitConfig;
}
