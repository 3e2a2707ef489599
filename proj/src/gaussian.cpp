#include "qbat/gaussian.hpp"

#include <cmath>
#include <string>

namespace qbat {

namespace {

// arcosh with the stable factorization of sqrt(x^2 - 1).
double stable_acosh(double x) {
  return std::log(x + std::sqrt((x - 1.0) * (x + 1.0)));
}

}  // namespace

Eigen::Matrix2d rotation_matrix(double theta) {
  Eigen::Matrix2d R;
  R << std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta);
  return R;
}

Eigen::Matrix2d squeeze_matrix(double r) {
  Eigen::Matrix2d S = Eigen::Matrix2d::Zero();
  S(0, 0) = std::exp(-r);
  S(1, 1) = std::exp(r);
  return S;
}

void validate(const GaussianState& state) {
  validate(state.spec);
  if (std::abs(state.gamma(0, 1) - state.gamma(1, 0)) > 1e-9) {
    throw InvalidSpec("covariance matrix must be symmetric");
  }
  if (state.gamma.determinant() < 1.0 - 1e-9) {
    throw InvalidSpec("covariance matrix violates det(gamma) >= 1");
  }
  if (!state.xbar.allFinite()) throw InvalidSpec("first moments not finite");
}

GaussianState thermal_gaussian(const ThermalSpec& spec) {
  validate(spec);
  GaussianState state;
  state.spec = spec;
  state.gamma = thermal_nu(spec) * Eigen::Matrix2d::Identity();
  return state;
}

PhotonMoments photon_moments(const GaussianState& state) {
  validate(state);
  const double tr = state.gamma.trace();
  const double tr2 = (state.gamma * state.gamma).trace();
  const double x2 = state.xbar.squaredNorm();
  const double mean_n = 0.25 * (tr - 2.0) + 0.5 * x2;
  const double var_n =
      0.5 * state.xbar.dot(state.gamma * state.xbar) + 0.125 * (tr2 - 2.0);
  return {mean_n, var_n + mean_n * mean_n, var_n};
}

GaussianState apply_symplectic(const GaussianState& state,
                               const SymplecticParams& params) {
  const Eigen::Matrix2d S = rotation_matrix(params.theta) *
                            squeeze_matrix(params.r) *
                            rotation_matrix(params.phi);
  GaussianState out;
  out.spec = state.spec;
  out.gamma = S * state.gamma * S.transpose();
  out.xbar = S * state.xbar + params.xi;
  return out;
}

double displacement_only_sigma(double delta_E, const ThermalSpec& spec) {
  validate(spec);
  if (delta_E < 0.0) throw InvalidSpec("energy input must be nonnegative");
  const double nu = thermal_nu(spec);
  const double vt = thermal_variance(spec) / (spec.omega * spec.omega);
  const double deps = delta_E / spec.omega;
  return spec.omega * (std::sqrt(nu * deps + vt) - std::sqrt(vt));
}

ChargeStats gaussian_charge_stats(const SymplecticParams& params,
                                  const ThermalSpec& spec) {
  validate(spec);
  const double omega = spec.omega;
  const double nu = thermal_nu(spec);
  const double r = params.r;
  // theta only redirects the displacement; fold it into the moments.
  const Eigen::Vector2d eta =
      rotation_matrix(params.theta).transpose() * params.xi;
  const double xi_sq = eta.squaredNorm();
  const double deps =
      0.5 * (nu * (std::cosh(2.0 * r) - 1.0) + xi_sq);
  const double quad =
      eta[0] * eta[0] * std::exp(-2.0 * r) + eta[1] * eta[1] * std::exp(2.0 * r);
  const double v =
      0.25 * (nu * nu * std::cosh(4.0 * r) - 1.0 + 2.0 * nu * quad);
  const double vt = 0.25 * (nu * nu - 1.0);
  const double dw2 = v + vt - 2.0 * vt * std::cosh(2.0 * r);
  return {omega * deps, omega * omega * v, omega * omega * dw2};
}

VBounds v_bounds_at_r(double r, double delta_E, const ThermalSpec& spec) {
  validate(spec);
  if (r < 0.0) throw InvalidSpec("canonical squeezing parameter is >= 0");
  const double nu = thermal_nu(spec);
  const double deps = delta_E / spec.omega;
  double resid = deps - 0.5 * nu * (std::cosh(2.0 * r) - 1.0);
  if (resid < -1e-12 * std::max(1.0, deps)) {
    throw InfeasibleSqueezing("squeezing r=" + std::to_string(r) +
                              " alone exceeds the energy input");
  }
  resid = std::max(resid, 0.0);
  const double base = 0.25 * (nu * nu * std::cosh(4.0 * r) - 1.0);
  const double w2 = spec.omega * spec.omega;
  return {w2 * (base + nu * std::exp(-2.0 * r) * resid),
          w2 * (base + nu * std::exp(2.0 * r) * resid)};
}

DwBounds dw_bounds_at_r(double r, double delta_E, const ThermalSpec& spec) {
  const VBounds v = v_bounds_at_r(r, delta_E, spec);
  const double vt = thermal_variance(spec);
  const double shift = vt * (1.0 - 2.0 * std::cosh(2.0 * r));
  return {v.v_minus + shift, v.v_plus + shift};
}

double max_squeezing(double delta_E, const ThermalSpec& spec) {
  validate(spec);
  if (delta_E < 0.0) throw InvalidSpec("energy input must be nonnegative");
  const double nu = thermal_nu(spec);
  return 0.5 * stable_acosh(2.0 * (delta_E / spec.omega) / nu + 1.0);
}

}  // namespace qbat
