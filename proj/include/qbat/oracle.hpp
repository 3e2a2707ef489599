#pragma once

#include <Eigen/Dense>
#include <vector>

#include "qbat/gaussian.hpp"

namespace qbat {

/// Dense truncated mode operators; the commutator defect of the truncation is
/// confined to the top level.
struct OperatorSet {
  int dim;
  Eigen::MatrixXcd a;
  Eigen::MatrixXcd adag;
  Eigen::MatrixXcd num;
  Eigen::MatrixXcd h;
};

OperatorSet build_mode_operators(int dim, double omega);

/// Dense Gaussian unitary U = D(alpha) R(theta) U_S(r) R(phi) built from
/// matrix exponentials, with first moments transforming by
/// R(theta) S(r) R(phi) then shifting by xi. Throws TruncationWarning when
/// the vacuum column leaks more than 1e-8 into the top decile of levels.
Eigen::MatrixXcd gaussian_unitary_matrix(const SymplecticParams& params,
                                         int dim);

/// Transition probabilities P(m, n) = |<n|U|m>|^2 (row = initial level).
Eigen::MatrixXd transition_probabilities(const Eigen::MatrixXcd& unitary);

/// Exact double-sum evaluation of (delta_E, V, dW^2) on the truncated space.
/// Throws TruncationTooSmall when the thermal-weighted probability leakage
/// into the top decile of levels exceeds `health_tol`.
ChargeStats oracle_stats(const SymplecticParams& params,
                         const ThermalSpec& spec, int dim,
                         double health_tol = 1e-12);

/// Photon moments of U tau U^dagger evaluated on the truncated space.
PhotonMoments oracle_state_moments(const SymplecticParams& params,
                                   const ThermalSpec& spec, int dim,
                                   double health_tol = 1e-12);

/// 2-D quadrature of the Wigner function against the phase-space kernel of
/// N^2; the grid must cover at least 8 standard deviations around the mean.
double wigner_moment_check(const GaussianState& state, double grid_half_width,
                           int grid_points);

/// Joint squared work fluctuation of local unitaries on a two-mode battery,
/// by direct four-index summation.
double two_mode_fluctuation(const std::vector<SymplecticParams>& params,
                            const std::vector<ThermalSpec>& specs,
                            const std::vector<int>& dims);

}  // namespace qbat
