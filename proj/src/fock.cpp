#include "qbat/fock.hpp"

#include <cmath>
#include <string>

namespace qbat {

namespace {

void check_angle(double theta) {
  if (!(theta >= 0.0 && theta <= M_PI_2 + 1e-15)) {
    throw InvalidAngle("rotation angle must lie in [0, pi/2]");
  }
}

}  // namespace

DiagonalState::DiagonalState(Eigen::VectorXd weights, ThermalSpec spec)
    : weights_(std::move(weights)), spec_(spec) {
  validate(spec_);
  if (weights_.size() < 1) throw InvalidSpec("state needs at least one level");
  if ((weights_.array() < 0.0).any()) {
    throw InvalidSpec("negative probability weight");
  }
  const double total = weights_.sum();
  if (std::abs(total - 1.0) > kWeightTol) {
    throw TruncationTooSmall("weights sum to " + std::to_string(total) +
                             ", more than 1e-12 away from 1");
  }
}

TransitionLedger::TransitionLedger(Eigen::MatrixXd probs, ThermalSpec spec)
    : probs_(std::move(probs)), spec_(spec) {
  validate(spec_);
  if (probs_.rows() != probs_.cols() || probs_.rows() < 1) {
    throw InvalidSpec("ledger must be a square matrix");
  }
  if ((probs_.array() < 0.0).any()) {
    throw InvalidSpec("negative transition probability");
  }
  if (std::abs(probs_.sum() - 1.0) > kWeightTol) {
    throw InvalidSpec("ledger total probability differs from 1");
  }
}

TransitionLedger TransitionLedger::identity(const DiagonalState& state) {
  Eigen::MatrixXd probs = Eigen::MatrixXd::Zero(state.dim(), state.dim());
  probs.diagonal() = state.weights();
  return TransitionLedger(std::move(probs), state.spec());
}

double TransitionLedger::implied_energy_shift() const {
  const int d = dim();
  double shift = 0.0;
  for (int m = 0; m < d; ++m) {
    for (int n = 0; n < d; ++n) {
      shift += probs_(m, n) * static_cast<double>(n - m);
    }
  }
  return spec_.omega * shift;
}

DiagonalState thermal_weights(const ThermalSpec& spec, int dim) {
  validate(spec);
  if (dim < 1) throw InvalidSpec("dimension must be positive");
  Eigen::VectorXd w = Eigen::VectorXd::Zero(dim);
  if (zero_temperature(spec)) {
    w[0] = 1.0;
    return DiagonalState(std::move(w), spec);
  }
  const double bw = spec.beta * spec.omega;
  const double tail = std::exp(-bw * static_cast<double>(dim));
  if (!(tail < 1e-12)) {
    throw TruncationTooSmall("thermal tail mass " + std::to_string(tail) +
                             " at dim " + std::to_string(dim));
  }
  const double norm = -std::expm1(-bw);  // 1 - e^{-bw}
  for (int n = 0; n < dim; ++n) w[n] = norm * std::exp(-bw * n);
  return DiagonalState(std::move(w), spec);
}

DiagStats diag_stats(const DiagonalState& state) {
  const auto& w = state.weights();
  double m1 = 0.0, m2 = 0.0;
  for (int n = 0; n < state.dim(); ++n) {
    m1 += n * w[n];
    m2 += static_cast<double>(n) * n * w[n];
  }
  const double omega = state.spec().omega;
  return {omega * m1, omega * omega * (m2 - m1 * m1)};
}

std::pair<DiagonalState, TransitionLedger> apply_two_level_rotation(
    const DiagonalState& state, const TransitionLedger& ledger, int m, int n,
    double theta) {
  if (m == n) throw IndexOutOfRange("rotation levels must differ");
  if (m < 0 || n < 0 || m >= state.dim() || n >= state.dim() ||
      ledger.dim() != state.dim()) {
    throw IndexOutOfRange("rotation level outside truncated space");
  }
  check_angle(theta);
  const double s = std::sin(theta);
  const double s2 = s * s;   // exactly 1 at theta = pi/2
  const double c2 = 1.0 - s2;

  Eigen::VectorXd w = state.weights();
  const double wm = w[m], wn = w[n];
  w[m] = c2 * wm + s2 * wn;
  w[n] = c2 * wn + s2 * wm;

  Eigen::MatrixXd probs = ledger.probs();
  Eigen::VectorXd colm = probs.col(m), coln = probs.col(n);
  probs.col(m) = c2 * colm + s2 * coln;
  probs.col(n) = c2 * coln + s2 * colm;

  return {DiagonalState(std::move(w), state.spec()),
          TransitionLedger(std::move(probs), ledger.spec())};
}

double work_fluctuation(const TransitionLedger& ledger, double delta_E) {
  const double omega = ledger.spec().omega;
  const double implied = ledger.implied_energy_shift();
  if (std::abs(implied - delta_E) > 1e-9 * std::max(omega, std::abs(delta_E))) {
    throw InconsistentDeltaE("delta_E " + std::to_string(delta_E) +
                             " does not match ledger mean shift " +
                             std::to_string(implied));
  }
  const int d = ledger.dim();
  const auto& probs = ledger.probs();
  double acc = 0.0;
  for (int m = 0; m < d; ++m) {
    for (int n = 0; n < d; ++n) {
      const double jump = omega * static_cast<double>(n - m) - delta_E;
      acc += probs(m, n) * jump * jump;
    }
  }
  return acc;
}

}  // namespace qbat
