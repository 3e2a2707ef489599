#include "qbat/oracle.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <complex>
#include <cstdio>
#include <string>

#include "qbat/fock.hpp"

namespace qbat {

namespace {

using Complex = std::complex<double>;

Eigen::MatrixXcd unitary_unchecked(const SymplecticParams& params, int dim) {
  const OperatorSet ops = build_mode_operators(dim, 1.0);
  const Complex alpha((params.xi[0]) / std::sqrt(2.0),
                      (params.xi[1]) / std::sqrt(2.0));

  Eigen::MatrixXcd squeeze =
      (0.5 * params.r * (ops.a * ops.a - ops.adag * ops.adag)).exp();
  Eigen::MatrixXcd displace =
      (alpha * ops.adag - std::conj(alpha) * ops.a).exp();

  Eigen::VectorXcd rot_theta(dim), rot_phi(dim);
  for (int n = 0; n < dim; ++n) {
    rot_theta[n] = std::exp(Complex(0.0, -params.theta * n));
    rot_phi[n] = std::exp(Complex(0.0, -params.phi * n));
  }
  // D * R(theta) * S * R(phi), with the rotations applied as diagonals.
  Eigen::MatrixXcd u = rot_theta.asDiagonal() * squeeze;
  u = u * rot_phi.asDiagonal();
  return displace * u;
}

// Probability mass of column `col` in the top decile of levels.
double column_top_decile_mass(const Eigen::MatrixXcd& u, int col) {
  const int dim = static_cast<int>(u.rows());
  const int start = (9 * dim + 9) / 10;
  double mass = 0.0;
  for (int n = start; n < dim; ++n) mass += std::norm(u(n, col));
  return mass;
}

// Thermal-weighted leakage into the top decile; throws when the truncated
// space cannot hold the transformed state to the requested health.
Eigen::MatrixXcd healthy_unitary(const SymplecticParams& params,
                                 const ThermalSpec& spec, int dim,
                                 double health_tol,
                                 Eigen::VectorXd* weights_out) {
  const DiagonalState tau = thermal_weights(spec, dim);
  Eigen::MatrixXcd u = unitary_unchecked(params, dim);
  double leak = 0.0;
  for (int m = 0; m < dim; ++m) {
    const double pm = tau.weights()[m];
    if (pm < 1e-16) continue;
    leak += pm * column_top_decile_mass(u, m);
  }
  if (leak > health_tol) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3e", leak);
    throw TruncationTooSmall(std::string("thermal-weighted top-decile leakage ") +
                             buf + " exceeds health bound");
  }
  if (weights_out) *weights_out = tau.weights();
  return u;
}

}  // namespace

OperatorSet build_mode_operators(int dim, double omega) {
  if (dim < 2) throw InvalidSpec("operator space needs at least two levels");
  OperatorSet ops;
  ops.dim = dim;
  ops.a = Eigen::MatrixXcd::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) ops.a(n - 1, n) = std::sqrt(double(n));
  ops.adag = ops.a.adjoint();
  ops.num = Eigen::MatrixXcd::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) ops.num(n, n) = n;
  ops.h = omega * ops.num;
  return ops;
}

Eigen::MatrixXcd gaussian_unitary_matrix(const SymplecticParams& params,
                                         int dim) {
  Eigen::MatrixXcd u = unitary_unchecked(params, dim);
  const double vac_leak = column_top_decile_mass(u, 0);
  if (vac_leak > 1e-8) {
    throw TruncationWarning("vacuum column leaks " + std::to_string(vac_leak) +
                            " into the top decile at dim " +
                            std::to_string(dim));
  }
  return u;
}

Eigen::MatrixXd transition_probabilities(const Eigen::MatrixXcd& unitary) {
  return unitary.cwiseAbs2().transpose();
}

ChargeStats oracle_stats(const SymplecticParams& params,
                         const ThermalSpec& spec, int dim, double health_tol) {
  Eigen::VectorXd p;
  const Eigen::MatrixXcd u = healthy_unitary(params, spec, dim, health_tol, &p);
  const Eigen::MatrixXd trans = transition_probabilities(u);
  const double omega = spec.omega;

  double e0 = 0.0;
  for (int m = 0; m < dim; ++m) e0 += omega * m * p[m];
  double ef = 0.0, e2f = 0.0;
  for (int m = 0; m < dim; ++m) {
    for (int n = 0; n < dim; ++n) {
      const double w = p[m] * trans(m, n);
      ef += w * omega * n;
      e2f += w * omega * omega * static_cast<double>(n) * n;
    }
  }
  const double delta_E = ef - e0;
  const double v = e2f - ef * ef;
  double dw2 = 0.0;
  for (int m = 0; m < dim; ++m) {
    for (int n = 0; n < dim; ++n) {
      const double jump = omega * static_cast<double>(n - m) - delta_E;
      dw2 += p[m] * trans(m, n) * jump * jump;
    }
  }
  return {delta_E, v, dw2};
}

PhotonMoments oracle_state_moments(const SymplecticParams& params,
                                   const ThermalSpec& spec, int dim,
                                   double health_tol) {
  Eigen::VectorXd p;
  const Eigen::MatrixXcd u = healthy_unitary(params, spec, dim, health_tol, &p);
  double m1 = 0.0, m2 = 0.0;
  for (int n = 0; n < dim; ++n) {
    double occ = 0.0;
    for (int m = 0; m < dim; ++m) occ += p[m] * std::norm(u(n, m));
    m1 += occ * n;
    m2 += occ * static_cast<double>(n) * n;
  }
  return {m1, m2, m2 - m1 * m1};
}

double wigner_moment_check(const GaussianState& state, double grid_half_width,
                           int grid_points) {
  validate(state);
  if (grid_points < 16) throw GridInsufficient("grid too coarse");
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(state.gamma);
  const double sigma_max = std::sqrt(0.5 * eig.eigenvalues().maxCoeff());
  const double needed =
      state.xbar.cwiseAbs().maxCoeff() + 8.0 * sigma_max;
  if (grid_half_width < needed) {
    throw GridInsufficient("grid half-width " +
                           std::to_string(grid_half_width) +
                           " below required " + std::to_string(needed));
  }
  const Eigen::Matrix2d inv = state.gamma.inverse();
  const double norm =
      1.0 / (M_PI * std::sqrt(state.gamma.determinant()));
  const double h = 2.0 * grid_half_width / grid_points;
  double acc = 0.0;
  for (int i = 0; i < grid_points; ++i) {
    const double x = -grid_half_width + (i + 0.5) * h;
    for (int j = 0; j < grid_points; ++j) {
      const double p = -grid_half_width + (j + 0.5) * h;
      const Eigen::Vector2d d(x - state.xbar[0], p - state.xbar[1]);
      const double w = norm * std::exp(-d.dot(inv * d));
      const double q = x * x + p * p - 1.0;
      acc += w * (0.25 * q * q - 0.25);
    }
  }
  return acc * h * h;
}

double two_mode_fluctuation(const std::vector<SymplecticParams>& params,
                            const std::vector<ThermalSpec>& specs,
                            const std::vector<int>& dims) {
  if (params.size() != 2 || specs.size() != 2 || dims.size() != 2) {
    throw InvalidSpec("two-mode oracle needs exactly two of everything");
  }
  std::vector<Eigen::MatrixXd> trans;
  std::vector<Eigen::VectorXd> weights;
  for (int i = 0; i < 2; ++i) {
    const DiagonalState tau = thermal_weights(specs[i], dims[i]);
    weights.push_back(tau.weights());
    trans.push_back(
        transition_probabilities(unitary_unchecked(params[i], dims[i])));
  }
  double delta_E = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int m = 0; m < dims[i]; ++m) {
      for (int n = 0; n < dims[i]; ++n) {
        delta_E += specs[i].omega * (n - m) * weights[i][m] * trans[i](m, n);
      }
    }
  }
  double dw2 = 0.0;
  for (int m1 = 0; m1 < dims[0]; ++m1) {
    for (int n1 = 0; n1 < dims[0]; ++n1) {
      const double w1 = weights[0][m1] * trans[0](m1, n1);
      if (w1 == 0.0) continue;
      const double jump1 = specs[0].omega * (n1 - m1);
      for (int m2 = 0; m2 < dims[1]; ++m2) {
        for (int n2 = 0; n2 < dims[1]; ++n2) {
          const double w = w1 * weights[1][m2] * trans[1](m2, n2);
          const double jump =
              jump1 + specs[1].omega * (n2 - m2) - delta_E;
          dw2 += w * jump * jump;
        }
      }
    }
  }
  return dw2;
}

}  // namespace qbat
