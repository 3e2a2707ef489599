#pragma once

#include <Eigen/Dense>
#include <utility>

#include "qbat/thermal.hpp"

namespace qbat {

inline constexpr double kWeightTol = 1e-12;

/// Diagonal (in the Fock basis) state on a truncated space of `dim` levels.
/// Immutable after construction; update operations return new values.
class DiagonalState {
 public:
  DiagonalState(Eigen::VectorXd weights, ThermalSpec spec);

  int dim() const { return static_cast<int>(weights_.size()); }
  const Eigen::VectorXd& weights() const { return weights_; }
  const ThermalSpec& spec() const { return spec_; }

 private:
  Eigen::VectorXd weights_;
  ThermalSpec spec_;
};

/// Matrix of transition probabilities p_{m->n} accumulated across protocol
/// steps; entry (m, n) is the probability of starting in level m and ending
/// in level n. Row sums stay equal to the initial weights.
class TransitionLedger {
 public:
  TransitionLedger(Eigen::MatrixXd probs, ThermalSpec spec);

  static TransitionLedger identity(const DiagonalState& state);

  int dim() const { return static_cast<int>(probs_.rows()); }
  const Eigen::MatrixXd& probs() const { return probs_; }
  const ThermalSpec& spec() const { return spec_; }

  /// Mean energy change sum_{m,n} p_{m->n} omega (n - m) implied by the ledger.
  double implied_energy_shift() const;

 private:
  Eigen::MatrixXd probs_;
  ThermalSpec spec_;
};

struct DiagStats {
  double energy;
  double variance;
};

/// Thermal (Gibbs) weights truncated to `dim` levels; requires the tail mass
/// e^{-dim beta omega} to be below 1e-12.
DiagonalState thermal_weights(const ThermalSpec& spec, int dim);

DiagStats diag_stats(const DiagonalState& state);

/// Two-level rotation on levels (m, n) by angle theta in [0, pi/2]:
/// (w_m, w_n) -> (cos^2 w_m + sin^2 w_n, cos^2 w_n + sin^2 w_m), with ledger
/// columns m, n mixed by the same doubly stochastic map.
std::pair<DiagonalState, TransitionLedger> apply_two_level_rotation(
    const DiagonalState& state, const TransitionLedger& ledger, int m, int n,
    double theta);

/// Squared work fluctuation sum_{m,n} p_{m->n} (omega(n-m) - delta_E)^2.
/// Checks that delta_E matches the ledger's implied mean energy change.
double work_fluctuation(const TransitionLedger& ledger, double delta_E);

}  // namespace qbat
