#pragma once

#include <vector>

#include "qbat/fock.hpp"

namespace qbat {

struct RotationStep {
  int m;
  int n;
  double theta;
};

/// Result of a charging protocol. The realized unitary is the level
/// permutation `reorder` (new level i receives the weight of old level
/// reorder[i]) followed by the two-level rotations in `steps`, in order.
struct ChargingReport {
  double initial_E = 0.0;
  double delta_E = 0.0;
  double final_E = 0.0;
  double final_V = 0.0;
  double delta_sigma = 0.0;
  double delta_W2 = 0.0;
  std::vector<int> reorder;
  std::vector<RotationStep> steps;
  Eigen::VectorXd final_weights;
  Eigen::VectorXd level_energies;
  Eigen::MatrixXd ledger;
};

/// Target bookkeeping for the optimal-precision protocol: eps = eps0 +
/// delta_eps and the nearest level k (ties resolved upward).
struct TargetSpec {
  double delta_eps;
  double eps;
  int k;
};

TargetSpec make_target(const ThermalSpec& spec, double delta_eps);

struct ZeroTempBounds {
  double v_min;  // omega^2 units
  double v_max;  // omega^2 units, +inf for infinite dimension
};

/// V bounds for charging a ground-state battery by delta_eps = dE/omega in a
/// d-level system (d may be +inf).
ZeroTempBounds zero_temp_bounds(double delta_eps, double d = kInf);

/// Minimal-variance charging by delta_eps = dE/omega: weight reordering
/// around the target level followed by energy-adjusting two-level rotations
/// in order of increasing variance cost per unit energy.
ChargingReport optimal_precision_charge(const ThermalSpec& spec,
                                        double delta_eps, int dim);

/// Closed-form minimum of the squared work fluctuations, in omega^2 units.
double min_fluctuation_value(double delta_eps);

/// Minimal-fluctuation charging: integer part via a full upward shift,
/// fractional part via a shift from the thermal-tail threshold level plus one
/// partial rotation. Requires finite temperature.
ChargingReport min_fluctuation_charge(const ThermalSpec& spec,
                                      double delta_eps, int dim);

/// Greedy multi-mode generalization of the optimal-precision protocol over
/// the joint (product) level set; pairs are chosen by the smallest increase
/// of the squared deviation from the target per unit of energy moved.
ChargingReport joint_optimal_precision_charge(
    const std::vector<ThermalSpec>& specs, double delta_E,
    const std::vector<int>& dims, int dimension_cap = 4096);

/// Truncation dimension a protocol run needs: thermal tail below 1e-12 plus
/// the reordering reach around the target level with 8 margin levels.
int recommended_dim(const ThermalSpec& spec, double delta_eps);

}  // namespace qbat
