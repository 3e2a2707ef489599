#pragma once

#include <string>
#include <vector>

#include "qbat/thermal.hpp"

namespace qbat {

/// Battery modes sharing one inverse temperature, with per-mode frequencies.
struct ModeSet {
  std::vector<ThermalSpec> specs;
  std::vector<std::string> labels;
};

enum class SplitObjective { Variance, Fluctuation };
enum class SplitStrategy { GaussianOptimal, Displacement, SqueezeOnly, Fundamental };

/// Outcome of an exhaustive energy-split search. Both totals describe the
/// same chosen allocation charged with the chosen strategy; `rounded` is set
/// when delta_E was not an integer multiple of the grid quantum.
struct SplitResult {
  std::vector<double> allocation;
  double total_V = 0.0;
  double total_dW2 = 0.0;
  SplitStrategy strategy = SplitStrategy::GaussianOptimal;
  bool rounded = false;
};

void validate(const ModeSet& modes);

/// Closed-form two-mode variance when delta_E is split p : (1-p) between two
/// modes charged by pure displacements.
double displacement_split_variance(double p, double delta_E,
                                   const ModeSet& modes);

/// Exhaustive search over integer allocations of delta_E (in units of
/// `quantum`) across the modes, minimizing the per-mode-additive objective of
/// the chosen local strategy.
SplitResult optimize_local_split(double delta_E, const ModeSet& modes,
                                 SplitObjective objective,
                                 SplitStrategy strategy, double quantum);

}  // namespace qbat
