#pragma once

#include <Eigen/Dense>

#include "qbat/thermal.hpp"

namespace qbat {

/// Single-mode Gaussian state: first moments and covariance matrix in the
/// convention Gamma_ij = <X_i X_j + X_j X_i> - 2 <X_i><X_j> (vacuum = I),
/// so a thermal state has Gamma = coth(beta omega/2) I.
struct GaussianState {
  Eigen::Vector2d xbar = Eigen::Vector2d::Zero();
  Eigen::Matrix2d gamma = Eigen::Matrix2d::Identity();
  ThermalSpec spec;
};

/// Local Gaussian unitary parameters: phase-space action
/// X -> R(theta) S(r) R(phi) X + xi with S(r) = diag(e^{-r}, e^{r}).
struct SymplecticParams {
  double theta = 0.0;
  double r = 0.0;
  double phi = 0.0;
  Eigen::Vector2d xi = Eigen::Vector2d::Zero();
};

struct PhotonMoments {
  double mean_n;
  double mean_n2;
  double var_n;
};

struct ChargeStats {
  double delta_E;
  double v_final;
  double delta_w2;
};

struct VBounds {
  double v_minus;
  double v_plus;
};

struct DwBounds {
  double dw2_minus;
  double dw2_plus;
};

Eigen::Matrix2d rotation_matrix(double theta);
Eigen::Matrix2d squeeze_matrix(double r);

/// Checks gamma symmetric and det(gamma) >= 1 (the uncertainty bound in this
/// convention); throws InvalidSpec otherwise.
void validate(const GaussianState& state);

GaussianState thermal_gaussian(const ThermalSpec& spec);

/// <N>, <N^2> and the photon-number variance from the first and second
/// moments of a single-mode Gaussian state.
PhotonMoments photon_moments(const GaussianState& state);

GaussianState apply_symplectic(const GaussianState& state,
                               const SymplecticParams& params);

/// Standard-deviation increase for a pure displacement of energy delta_E.
double displacement_only_sigma(double delta_E, const ThermalSpec& spec);

/// Energy input, final variance and squared work fluctuations of the Gaussian
/// unitary described by params acting on the thermal state.
ChargeStats gaussian_charge_stats(const SymplecticParams& params,
                                  const ThermalSpec& spec);

/// V_-(r), V_+(r): final variance with the residual displacement energy put
/// along the squeezed / anti-squeezed axis. Throws InfeasibleSqueezing when
/// squeezing alone would exceed delta_E.
VBounds v_bounds_at_r(double r, double delta_E, const ThermalSpec& spec);

/// dW^2 analogue of v_bounds_at_r.
DwBounds dw_bounds_at_r(double r, double delta_E, const ThermalSpec& spec);

/// Squeezing parameter that invests all of delta_E into squeezing.
double max_squeezing(double delta_E, const ThermalSpec& spec);

}  // namespace qbat
