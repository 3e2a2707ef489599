#include "qbat/solvers.hpp"

#include <cmath>
#include <string>

namespace qbat {

namespace {

constexpr int kMaxDoublings = 64;

// chi = 2 deps/nu + 1, the constant side of every extremal condition.
double chi_of(double delta_E, const ThermalSpec& spec) {
  return 2.0 * (delta_E / spec.omega) / thermal_nu(spec) + 1.0;
}

// lambda = (nu^2 - 1)/nu^2, the temperature weight in the fluctuation
// stationarity conditions.
double lambda_of(const ThermalSpec& spec) {
  const double nu = thermal_nu(spec);
  return (nu * nu - 1.0) / (nu * nu);
}

double squeeze_energy(double r, const ThermalSpec& spec) {
  return 0.5 * spec.omega * thermal_nu(spec) * (std::cosh(2.0 * r) - 1.0);
}

}  // namespace

double bracketed_root(const std::function<double(double)>& f, double lo,
                      double hi, double tol, int& iterations) {
  iterations = 0;
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    throw NotBracketed("f(" + std::to_string(lo) + ") and f(" +
                       std::to_string(hi) + ") have the same sign");
  }
  for (int i = 0; i < 200 && hi - lo > 1e-14; ++i) {
    ++iterations;
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (std::abs(fm) <= tol) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double bracketed_root(const std::function<double(double)>& f, double lo,
                      double hi, double tol) {
  int iterations = 0;
  return bracketed_root(f, lo, hi, tol, iterations);
}

ExtremalSolution worst_precision(double delta_E, const ThermalSpec& spec) {
  validate(spec);
  if (delta_E < 0.0) throw InvalidSpec("energy input must be nonnegative");
  const double nu = thermal_nu(spec);
  const double deps = delta_E / spec.omega;
  const double vt = thermal_variance(spec) / (spec.omega * spec.omega);
  ExtremalSolution sol;
  sol.r = max_squeezing(delta_E, spec);
  sol.objective =
      spec.omega * (std::sqrt(2.0 * deps * (deps + nu) + vt) - std::sqrt(vt));
  sol.e_disp = 0.0;
  sol.e_sq = delta_E;
  return sol;
}

ExtremalSolution best_precision(double delta_E, const ThermalSpec& spec) {
  validate(spec);
  if (delta_E < 0.0) throw InvalidSpec("energy input must be nonnegative");
  const double chi = chi_of(delta_E, spec);
  ExtremalSolution sol;
  if (chi > 1.0) {
    const auto f = [chi](double r) {
      return std::exp(2.0 * r) * std::cosh(4.0 * r) - chi;
    };
    double hi = 1.0;
    int doublings = 0;
    while (f(hi) < 0.0) {
      hi *= 2.0;
      if (++doublings > kMaxDoublings) {
        throw ConvergenceFailure("no upper bracket for the r- condition");
      }
    }
    sol.r = bracketed_root(f, 0.0, hi, 0.0, sol.iterations);
  }
  sol.objective = v_bounds_at_r(sol.r, delta_E, spec).v_minus;
  sol.e_sq = squeeze_energy(sol.r, spec);
  sol.e_disp = delta_E - sol.e_sq;
  return sol;
}

ExtremalSolution extremal_fluctuations(double delta_E, const ThermalSpec& spec,
                                       Extremum which) {
  validate(spec);
  if (delta_E < 0.0) throw InvalidSpec("energy input must be nonnegative");
  const double chi = chi_of(delta_E, spec);
  const double lambda = lambda_of(spec);
  ExtremalSolution sol;
  if (chi <= 1.0) return sol;  // delta_E = 0: identity is both extremes

  if (which == Extremum::Min) {
    // h_lambda(v) = chi, h strictly decreasing on (0, 1], h(1) = 1.
    const auto h = [lambda, chi](double v) {
      return 0.5 * lambda * (1.0 - 1.0 / (v * v)) +
             0.5 * (v + 1.0 / (v * v * v)) - chi;
    };
    double lo = 0.5;
    int halvings = 0;
    while (h(lo) < 0.0) {
      lo *= 0.5;
      if (++halvings > kMaxDoublings) {
        throw ConvergenceFailure("no lower bracket for the r~- condition");
      }
    }
    const double v = bracketed_root(h, lo, 1.0, 0.0, sol.iterations);
    sol.r = -0.5 * std::log(v);
    sol.objective = dw_bounds_at_r(sol.r, delta_E, spec).dw2_minus;
    sol.e_sq = squeeze_energy(sol.r, spec);
    sol.e_disp = delta_E - sol.e_sq;
    return sol;
  }

  // Maximum: f_lambda(u) = chi on (0, u_lambda), with u_lambda the minimum
  // of f_lambda located by g(u) = (3u - u^{-3})/2 = lambda on [3^{-1/4}, 1].
  const auto f = [lambda, chi](double u) {
    return 0.5 * lambda * (1.0 - u * u) + 0.5 * (1.0 / u + u * u * u) - chi;
  };
  double u_lambda = std::pow(3.0, -0.25);
  if (lambda > 0.0) {
    const auto g = [lambda](double u) {
      return 0.5 * (3.0 * u - 1.0 / (u * u * u)) - lambda;
    };
    u_lambda = bracketed_root(g, std::pow(3.0, -0.25), 1.0, 0.0);
  }
  double lo = 0.5 * u_lambda;
  int halvings = 0;
  while (f(lo) < 0.0) {
    lo *= 0.5;
    if (++halvings > kMaxDoublings) {
      throw ConvergenceFailure("no lower bracket for the r~+ condition");
    }
  }
  const double u = bracketed_root(f, lo, u_lambda, 0.0, sol.iterations);
  double r = -0.5 * std::log(u);
  double e_sq = squeeze_energy(r, spec);
  if (e_sq > delta_E) {
    // Stationary point needs more squeezing energy than supplied; the
    // feasible maximum sits at the full-squeezing boundary.
    r = max_squeezing(delta_E, spec);
    e_sq = delta_E;
  }
  sol.r = r;
  sol.objective = dw_bounds_at_r(sol.r, delta_E, spec).dw2_plus;
  sol.e_sq = e_sq;
  sol.e_disp = delta_E - e_sq;
  if (sol.e_disp < 0.0) sol.e_disp = 0.0;
  return sol;
}

}  // namespace qbat
