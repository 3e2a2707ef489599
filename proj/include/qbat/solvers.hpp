#pragma once

#include <functional>

#include "qbat/gaussian.hpp"

namespace qbat {

/// Extremal single-mode Gaussian charging strategy: the squeezing parameter,
/// the extremal objective (a variance, a squared fluctuation, or a standard
/// deviation increase, depending on the solver), and the energy split.
struct ExtremalSolution {
  double r = 0.0;
  double objective = 0.0;
  double e_disp = 0.0;
  double e_sq = 0.0;
  int iterations = 0;
};

enum class Extremum { Min, Max };

/// Deterministic bisection on a bracketing interval; stops at |f| <= tol or
/// interval width <= 1e-14.
double bracketed_root(const std::function<double(double)>& f, double lo,
                      double hi, double tol);
double bracketed_root(const std::function<double(double)>& f, double lo,
                      double hi, double tol, int& iterations);

/// Worst Gaussian charging precision: all energy into squeezing,
/// r+ = arcosh(2 dE/(omega nu) + 1)/2; objective is the maximal
/// standard-deviation increase (energy units).
ExtremalSolution worst_precision(double delta_E, const ThermalSpec& spec);

/// Optimal Gaussian charging precision: r- solves e^{2r} cosh(4r) =
/// 2 dE/(omega nu) + 1; objective is the minimal final variance V_-(r-)
/// (energy^2 units).
ExtremalSolution best_precision(double delta_E, const ThermalSpec& spec);

/// Extremal squared work fluctuations over single-mode Gaussian unitaries
/// (energy^2 units). The maximum clamps to the full-squeezing boundary when
/// the stationary point would need negative displacement energy.
ExtremalSolution extremal_fluctuations(double delta_E, const ThermalSpec& spec,
                                       Extremum which);

}  // namespace qbat
