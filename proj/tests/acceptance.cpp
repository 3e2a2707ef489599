// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. argv[1] must point at the sweep CLI binary (used by the
// determinism criterion).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qbat/multimode.hpp"
#include "qbat/oracle.hpp"
#include "qbat/protocols.hpp"
#include "qbat/solvers.hpp"

using namespace qbat;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int index, const std::string& name, bool pass, double seconds,
            const std::string& detail) {
  std::printf("[%s] %2d. %-38s (%6.2f s) %s\n", pass ? "PASS" : "FAIL", index,
              name.c_str(), seconds, detail.c_str());
  if (!pass) ++failures;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + ((rng() >> 11) * 0x1p-53) * (hi - lo);
}

std::string fmt_err(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "max err %.2e", v);
  return buf;
}

struct Timer {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  }
};

// 1. zero-temperature closed forms on the d=6 grid
void criterion_1() {
  Timer t;
  double max_err = 0.0;
  for (int i = 0; i <= 100; ++i) {
    const double deps = 0.05 * i;
    const ZeroTempBounds b = zero_temp_bounds(deps, 6.0);
    const double v_min_ref =
        (deps - std::floor(deps)) * (std::ceil(deps) - deps);
    const double v_max_ref = deps * (5.0 - deps);
    max_err = std::max({max_err, std::abs(b.v_min - v_min_ref),
                        std::abs(b.v_max - v_max_ref)});
  }
  report(1, "zero-temperature closed forms",
         max_err <= 1e-14 && t.seconds() < 1.0, t.seconds(), fmt_err(max_err));
}

// 2. ledger fluctuation of the minimal-fluctuation protocol vs closed form
void criterion_2() {
  Timer t;
  double max_err = 0.0;
  const double betas[] = {0.3, 0.7, std::log(2.0), 1.0, 2.0};
  for (double bw : betas) {
    for (int i = 1; i <= 29; ++i) {
      const double deps = 0.1 * i;
      const ChargingReport rep =
          min_fluctuation_charge(ThermalSpec{1.0, bw}, deps, 256);
      max_err = std::max(max_err,
                         std::abs(rep.delta_W2 - min_fluctuation_value(deps)));
    }
  }
  report(2, "protocol-vs-formula fluctuations",
         max_err <= 1e-6 && t.seconds() < 30.0, t.seconds(), fmt_err(max_err));
}

// 3. optimal-precision convergence and the documented rotation sequence
void criterion_3() {
  Timer t;
  double max_err = 0.0;
  for (int i = 1; i <= 30; ++i) {
    const double deps = 0.1 * i;
    const ChargingReport rep =
        optimal_precision_charge(ThermalSpec{1.0, 20.0}, deps, 64);
    max_err = std::max(max_err,
                       std::abs(rep.final_V - zero_temp_bounds(deps).v_min));
  }
  const ChargingReport trace =
      optimal_precision_charge(ThermalSpec{1.0, 1.0 / 3.0}, 1.75, 96);
  bool steps_ok = trace.steps.size() >= 3;
  if (steps_ok) {
    const auto full = [](const RotationStep& s, int m, int n) {
      return s.m == m && s.n == n && std::abs(s.theta - M_PI_2) < 1e-12;
    };
    steps_ok = full(trace.steps[0], 3, 5) && full(trace.steps[1], 2, 6) &&
               trace.steps[2].m == 1 && trace.steps[2].n == 7 &&
               trace.steps[2].theta > 0.0 &&
               trace.steps[2].theta < M_PI_2 - 0.1;
  }
  report(3, "optimal-precision convergence",
         max_err <= 1e-4 && steps_ok && t.seconds() < 10.0, t.seconds(),
         fmt_err(max_err) + (steps_ok ? ", trace ok" : ", trace WRONG"));
}

// 4. Gaussian closed forms vs the dense oracle on random feasible cases
void criterion_4() {
  Timer t;
  std::mt19937_64 rng(20260810);
  double max_rel = 0.0;
  int accepted = 0;
  long attempts = 0;
  while (accepted < 200 && attempts < 40000) {
    ++attempts;
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
      oracle = oracle_stats(p, spec, 120);
    } catch (const TruncationTooSmall&) {
      continue;
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
  char detail[80];
  std::snprintf(detail, sizeof(detail), "%d cases, max rel err %.2e", accepted,
                max_rel);
  report(4, "oracle equivalence (Gaussian forms)",
         accepted == 200 && max_rel <= 1e-6 && t.seconds() < 120.0,
         t.seconds(), detail);
}

// 5. random feasible strategies stay within the extremal solver bounds
void criterion_5() {
  Timer t;
  std::mt19937_64 rng(5);
  double worst_violation = 0.0;
  for (double bw : {0.2, 0.5, 1.0, 2.0, 5.0}) {
    for (double deps : {0.3, 1.0, 2.0, 5.0, 10.0}) {
      const ThermalSpec spec{1.0, bw};
      const double v_lo = best_precision(deps, spec).objective;
      const double sigma_hi = worst_precision(deps, spec).objective;
      const double vt = thermal_variance(spec);
      const double v_hi = std::pow(sigma_hi + std::sqrt(vt), 2);
      const double w_lo =
          extremal_fluctuations(deps, spec, Extremum::Min).objective;
      const double w_hi =
          extremal_fluctuations(deps, spec, Extremum::Max).objective;
      const double nu = thermal_nu(spec);
      const double r_full = max_squeezing(deps, spec);
      for (int i = 0; i < 1000; ++i) {
        const double r = uniform(rng, 0.0, r_full);
        const double resid =
            std::max(2.0 * deps - nu * (std::cosh(2 * r) - 1.0), 0.0);
        const double ang = uniform(rng, 0, 2 * M_PI);
        SymplecticParams p;
        p.r = r;
        p.xi << std::sqrt(resid) * std::cos(ang),
            std::sqrt(resid) * std::sin(ang);
        const ChargeStats st = gaussian_charge_stats(p, spec);
        worst_violation =
            std::max({worst_violation, v_lo - st.v_final, st.v_final - v_hi,
                      w_lo - st.delta_w2, st.delta_w2 - w_hi});
      }
    }
  }
  report(5, "extremal ordering", worst_violation <= 1e-9 && t.seconds() < 60.0,
         t.seconds(), fmt_err(std::max(worst_violation, 0.0)));
}

// 6. stationarity of the extremal squeezing parameters
void criterion_6() {
  Timer t;
  double max_fd = 0.0;
  for (double bw : {0.5, 1.0, 2.0}) {
    for (double deps : {0.5, 1.0, 2.0, 5.0}) {
      const ThermalSpec spec{1.0, bw};
      const ExtremalSolution sol = best_precision(deps, spec);
      const double h = 3e-6;
      max_fd = std::max(
          max_fd, std::abs((v_bounds_at_r(sol.r + h, deps, spec).v_minus -
                            v_bounds_at_r(sol.r - h, deps, spec).v_minus) /
                           (2 * h)));
    }
  }
  const std::pair<double, double> fluct_grid[] = {
      {0.5, 1.0}, {0.5, 2.0}, {1.0, 1.0}, {1.0, 2.0},
      {1.0, 3.0}, {2.0, 0.5}, {2.0, 1.0}};
  for (const auto& [bw, deps] : fluct_grid) {
    const ThermalSpec spec{1.0, bw};
    const double h = 2.5e-6;
    const ExtremalSolution lo =
        extremal_fluctuations(deps, spec, Extremum::Min);
    const ExtremalSolution hi =
        extremal_fluctuations(deps, spec, Extremum::Max);
    max_fd = std::max(
        max_fd, std::abs((dw_bounds_at_r(lo.r + h, deps, spec).dw2_minus -
                          dw_bounds_at_r(lo.r - h, deps, spec).dw2_minus) /
                         (2 * h)));
    if (hi.e_disp > 0.0) {  // interior stationary point
      max_fd = std::max(
          max_fd, std::abs((dw_bounds_at_r(hi.r + h, deps, spec).dw2_plus -
                            dw_bounds_at_r(hi.r - h, deps, spec).dw2_plus) /
                           (2 * h)));
    }
  }
  report(6, "stationarity of extremal parameters", max_fd < 1e-8, t.seconds(),
         fmt_err(max_fd));
}

// 7. asymptotic sub-linearity and the energy-split ratio
void criterion_7() {
  Timer t;
  const ThermalSpec spec{1.0, 1.0};
  bool ok = true;
  double prev_v = kInf, prev_w = kInf;
  for (double dE : {10.0, 100.0, 1000.0}) {
    const double rv = best_precision(dE, spec).objective / dE;
    const double rw =
        extremal_fluctuations(dE, spec, Extremum::Min).objective / dE;
    ok = ok && rv < prev_v && rw < prev_w;
    prev_v = rv;
    prev_w = rw;
  }
  double max_ratio_err = 0.0;
  const double nu = thermal_nu(spec);
  for (double r : {3.0, 3.5, 4.0}) {
    const double dE = 0.5 * nu * (std::exp(2 * r) * std::cosh(4 * r) - 1.0);
    const ExtremalSolution sol = best_precision(dE, spec);
    const double ratio = sol.e_disp / sol.e_sq;
    max_ratio_err =
        std::max(max_ratio_err, std::abs(ratio / std::exp(4.0 * sol.r) - 1.0));
  }
  ok = ok && max_ratio_err <= 0.05;
  char detail[64];
  std::snprintf(detail, sizeof(detail), "split ratio off by %.2f%%",
                100.0 * max_ratio_err);
  report(7, "asymptotics", ok, t.seconds(), detail);
}

// 8. Wigner-function quadrature of <N^2> matches the moment formula
void criterion_8() {
  Timer t;
  double max_rel = 0.0;
  const GaussianState vac = thermal_gaussian(ThermalSpec{1.0, kInf});
  max_rel = std::max(max_rel, std::abs(wigner_moment_check(vac, 9.0, 360)));
  const GaussianState tau = thermal_gaussian(ThermalSpec{1.0, 1.0});
  max_rel = std::max(max_rel, std::abs(wigner_moment_check(tau, 10.0, 400) /
                                           photon_moments(tau).mean_n2 -
                                       1.0));
  SymplecticParams p;
  p.theta = 0.3;
  p.r = 0.4;
  p.phi = 0.9;
  p.xi << 0.8, -0.5;
  const GaussianState s = apply_symplectic(tau, p);
  max_rel = std::max(max_rel, std::abs(wigner_moment_check(s, 14.0, 500) /
                                           photon_moments(s).mean_n2 -
                                       1.0));
  report(8, "Wigner identity", max_rel <= 1e-6, t.seconds(), fmt_err(max_rel));
}

// 9. multi-mode splitting claims
void criterion_9() {
  Timer t;
  bool ok = true;
  std::string detail = "ok";

  // (a) equal-frequency displacement split independence
  const ModeSet equal{{ThermalSpec{1.0, 1.0}, ThermalSpec{1.0, 1.0}},
                      {"A", "B"}};
  const double v_ref = displacement_split_variance(0.0, 1.7, equal);
  for (int i = 0; i <= 100; ++i) {
    if (std::abs(displacement_split_variance(i / 100.0, 1.7, equal) - v_ref) >
        1e-12) {
      ok = false;
      detail = "split dependence detected";
    }
  }

  // (b) never-detrimental fundamental splitting on the omega/20 grid
  for (double temp : {0.1, 0.7, 1.0}) {
    const ThermalSpec spec{1.0, 1.0 / temp};
    const ModeSet modes{{spec, spec}, {"A", "B"}};
    for (int m = 0; m <= 60 && ok; m += 4) {
      const double dE = m / 20.0;
      const SplitResult opt =
          optimize_local_split(dE, modes, SplitObjective::Variance,
                               SplitStrategy::Fundamental, 1.0 / 20.0);
      const double single =
          optimal_precision_charge(spec, dE, recommended_dim(spec, dE))
              .final_V +
          thermal_variance(spec);
      if (opt.total_V > single + 1e-12) {
        ok = false;
        detail = "splitting was detrimental";
      }
    }
  }

  // (c) two-frequency fluctuation zeros
  const ModeSet two{{ThermalSpec{1.0, 1.0}, ThermalSpec{2.0, 1.0}},
                    {"A", "B"}};
  for (int m = 0; m <= 2 && ok; ++m) {
    for (int n = 0; n <= 2; ++n) {
      if (m == 0 && n == 0) continue;
      const SplitResult res = optimize_local_split(
          m * 1.0 + n * 2.0, two, SplitObjective::Fluctuation,
          SplitStrategy::Fundamental, 1.0 / 20.0);
      if (!(res.total_dW2 < 1e-6)) {
        ok = false;
        detail = "combined integer energies keep fluctuations";
      }
    }
  }
  report(9, "multi-mode claims", ok, t.seconds(), detail);
}

// 10. byte-reproducibility of the CLI
void criterion_10(const std::string& cli) {
  Timer t;
  bool ok = true;
  std::string detail = "all commands byte-identical";
  const fs::path dir = fs::path("acceptance_tmp");
  fs::create_directories(dir);
  const auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"fig1", ""},
      {"fig2", "--emax 1.5"},
      {"fig3", ""},
      {"fig4", "--emax 1.5"},
      {"fig5", "--emax 2 --temps 0,1,3,10"},
      {"fig6", "--emax 2 --temps 0,1,3,10"},
  };
  for (const auto& [name, extra] : commands) {
    const fs::path a = dir / (name + "_a.csv");
    const fs::path b = dir / (name + "_b.csv");
    for (const fs::path& out : {a, b}) {
      const std::string cmd = "\"" + cli + "\" " + name + " " + extra +
                              " --out \"" + out.string() + "\"";
      if (std::system(cmd.c_str()) != 0) {
        ok = false;
        detail = name + " exited nonzero";
      }
    }
    if (ok && slurp(a) != slurp(b)) {
      ok = false;
      detail = name + " differs between runs";
    }
  }
  for (int run = 0; run < 2 && ok; ++run) {
    const fs::path out = dir / ("verify_" + std::to_string(run) + ".txt");
    const std::string cmd = "\"" + cli +
                            "\" verify --suite oracle --n 40 "
                            "--seed 7 > \"" +
                            out.string() + "\"";
    if (std::system(cmd.c_str()) != 0) {
      ok = false;
      detail = "verify exited nonzero";
    }
  }
  if (ok && slurp(dir / "verify_0.txt") != slurp(dir / "verify_1.txt")) {
    ok = false;
    detail = "verify output differs between runs";
  }
  fs::remove_all(dir);
  report(10, "CLI determinism", ok, t.seconds(), detail);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: qbat_acceptance <path-to-cli>\n";
    return 2;
  }
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10(argv[1]);
  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
