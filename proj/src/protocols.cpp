#include "qbat/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace qbat {

namespace {

constexpr double kTargetRelTol = 1e-9;
constexpr int kPhaseLimit = 64;

/// Mutable working copy of a diagonal-protocol run. The realized unitary is
/// the accumulated permutation followed by the recorded rotations, so
/// permutations may only be composed before the first rotation.
struct Charger {
  Eigen::VectorXd w;
  Eigen::MatrixXd ledger;
  Eigen::VectorXd energy;
  std::vector<int> reorder;
  std::vector<RotationStep> steps;

  explicit Charger(const Eigen::VectorXd& weights, Eigen::VectorXd energies)
      : w(weights),
        ledger(Eigen::MatrixXd::Zero(weights.size(), weights.size())),
        energy(std::move(energies)),
        reorder(weights.size()) {
    ledger.diagonal() = weights;
    std::iota(reorder.begin(), reorder.end(), 0);
  }

  // new_w[i] = w[perm[i]]
  void permute(const std::vector<int>& perm) {
    const int d = static_cast<int>(w.size());
    Eigen::VectorXd nw(d);
    Eigen::MatrixXd nl(d, d);
    std::vector<int> nr(d);
    for (int i = 0; i < d; ++i) {
      nw[i] = w[perm[i]];
      nl.col(i) = ledger.col(perm[i]);
      nr[i] = reorder[perm[i]];
    }
    w = std::move(nw);
    ledger = std::move(nl);
    reorder = std::move(nr);
  }

  void rotate(int a, int b, double theta) {
    const double s = std::sin(theta);
    const double s2 = s * s;
    const double c2 = 1.0 - s2;
    const double wa = w[a], wb = w[b];
    w[a] = c2 * wa + s2 * wb;
    w[b] = c2 * wb + s2 * wa;
    Eigen::VectorXd cola = ledger.col(a), colb = ledger.col(b);
    ledger.col(a) = c2 * cola + s2 * colb;
    ledger.col(b) = c2 * colb + s2 * cola;
    steps.push_back({a, b, theta});
  }

  double mean_energy() const { return w.dot(energy); }
};

ChargingReport finalize(Charger&& c, double initial_E, double initial_V) {
  ChargingReport rep;
  rep.initial_E = initial_E;
  rep.final_E = c.mean_energy();
  const double e2 = c.w.dot(c.energy.cwiseProduct(c.energy));
  rep.final_V = std::max(e2 - rep.final_E * rep.final_E, 0.0);
  rep.delta_E = rep.final_E - initial_E;
  rep.delta_sigma = std::sqrt(std::max(rep.final_V, 0.0)) -
                    std::sqrt(std::max(initial_V, 0.0));
  const int d = static_cast<int>(c.w.size());
  double dw2 = 0.0;
  for (int m = 0; m < d; ++m) {
    for (int n = 0; n < d; ++n) {
      const double jump = c.energy[n] - c.energy[m] - rep.delta_E;
      dw2 += c.ledger(m, n) * jump * jump;
    }
  }
  rep.delta_W2 = dw2;
  rep.reorder = std::move(c.reorder);
  rep.steps = std::move(c.steps);
  rep.final_weights = std::move(c.w);
  rep.level_energies = std::move(c.energy);
  rep.ledger = std::move(c.ledger);
  return rep;
}

Eigen::VectorXd level_ladder(double omega, int dim) {
  Eigen::VectorXd e(dim);
  for (int n = 0; n < dim; ++n) e[n] = omega * n;
  return e;
}

// Part-I permutation of the optimal-precision protocol: weights sorted by
// decreasing size onto levels sorted by increasing distance to the target.
std::vector<int> part_one_permutation(int dim, int k, bool k_is_floor) {
  std::vector<int> perm(dim);
  std::iota(perm.begin(), perm.end(), 0);
  if (k_is_floor) {
    for (int n = 0; n <= k; ++n) perm[n] = 2 * (k - n);
    for (int n = k + 1; n <= std::max(1, 2 * k); ++n) perm[n] = 2 * (n - k) - 1;
  } else {
    for (int n = 0; n <= k - 1; ++n) perm[n] = 2 * (k - n) - 1;
    for (int n = k; n <= 2 * k - 1; ++n) perm[n] = 2 * (n - k);
  }
  return perm;
}

// Phase schedule (j, l_min) of Part II.
std::pair<int, int> phase_schedule(int phase, bool k_is_floor, bool increase) {
  if (k_is_floor && increase) return {phase, -((phase + 1) / 2) + 1};
  if (k_is_floor && !increase) return {-phase + 1, (phase + 1) / 2};
  if (!k_is_floor && increase) return {phase - 1, -(phase / 2) + 1};
  return {-phase, phase / 2 + 1};
}

double partial_angle(double needed, double available) {
  const double ratio = needed / available;
  if (ratio >= 1.0) return M_PI_2;
  return std::asin(std::sqrt(std::max(ratio, 0.0)));
}

ChargingReport identity_report(const ThermalSpec& spec, int dim) {
  const DiagonalState tau = thermal_weights(spec, dim);
  Charger c(tau.weights(), level_ladder(spec.omega, dim));
  const DiagStats stats = diag_stats(tau);
  return finalize(std::move(c), stats.energy, stats.variance);
}

}  // namespace

TargetSpec make_target(const ThermalSpec& spec, double delta_eps) {
  validate(spec);
  if (delta_eps < 0.0) throw InvalidSpec("energy input must be nonnegative");
  const double eps = mean_occupation(spec) + delta_eps;
  const double fl = std::floor(eps);
  const int k = (eps - fl < 0.5) ? static_cast<int>(fl)
                                 : static_cast<int>(fl) + 1;
  return {delta_eps, eps, k};
}

ZeroTempBounds zero_temp_bounds(double delta_eps, double d) {
  if (delta_eps < 0.0) throw InvalidSpec("energy input must be nonnegative");
  const double v_min =
      (delta_eps - std::floor(delta_eps)) * (std::ceil(delta_eps) - delta_eps);
  if (std::isinf(d)) return {v_min, kInf};
  if (delta_eps > d - 1.0) {
    throw EnergyExceedsDimension("delta_eps " + std::to_string(delta_eps) +
                                 " exceeds d-1 for d=" + std::to_string(d));
  }
  return {v_min, delta_eps * ((d - 1.0) - delta_eps)};
}

int recommended_dim(const ThermalSpec& spec, double delta_eps) {
  validate(spec);
  int tail_dim = 1;
  if (!zero_temperature(spec)) {
    tail_dim = static_cast<int>(
                   std::ceil(std::log(1e12) / (spec.beta * spec.omega))) +
               1;
  }
  const TargetSpec target = make_target(spec, delta_eps);
  return std::max({tail_dim, 2 * target.k + 10, 16});
}

ChargingReport optimal_precision_charge(const ThermalSpec& spec,
                                        double delta_eps, int dim) {
  validate(spec);
  if (delta_eps < 0.0) throw InvalidSpec("energy input must be nonnegative");
  if (delta_eps == 0.0) return identity_report(spec, dim);

  const TargetSpec target = make_target(spec, delta_eps);
  const int k = target.k;
  const double eps = target.eps;
  const bool k_is_floor = (eps - std::floor(eps) < 0.5);
  if (dim < 2 * k + 10) {
    throw TruncationTooSmall("dim " + std::to_string(dim) +
                             " below target reach " +
                             std::to_string(2 * k + 10));
  }

  const DiagonalState tau = thermal_weights(spec, dim);
  const DiagStats init = diag_stats(tau);
  Charger c(tau.weights(), level_ladder(spec.omega, dim));

  c.permute(part_one_permutation(dim, k, k_is_floor));

  // Part II: adjust the energy to the target at minimal cost in squared
  // deviation, phase by phase.
  const double tol = kTargetRelTol * std::max(1.0, eps);
  double eps_tilde = c.mean_energy() / spec.omega;
  const bool increase = eps_tilde < eps;
  bool done = std::abs(eps_tilde - eps) <= tol;
  for (int phase = 1; !done; ++phase) {
    if (phase > kPhaseLimit) {
      throw PhaseLimitExceeded("no convergence after " +
                               std::to_string(kPhaseLimit) + " phases");
    }
    const auto [j, l_min] = phase_schedule(phase, k_is_floor, increase);
    for (int l = l_min; l <= k; ++l) {
      const int m = k - l;
      const int n = k + l + j;
      if (n < 0 || n == m) continue;
      if (n >= dim || m >= dim) {
        throw TruncationTooSmall("protocol pair (" + std::to_string(m) + "," +
                                 std::to_string(n) + ") outside dim " +
                                 std::to_string(dim));
      }
      const double d_max = (c.w[m] - c.w[n]) * (2 * l + j);
      const double needed = eps - eps_tilde;
      if (d_max == 0.0 || (d_max > 0.0) != (needed > 0.0)) continue;
      const double theta = partial_angle(needed, d_max);
      c.rotate(m, n, theta);
      const double s = std::sin(theta);
      eps_tilde += s * s * d_max;
      if (std::abs(eps_tilde - eps) <= tol) {
        done = true;
        break;
      }
    }
  }
  return finalize(std::move(c), init.energy, init.variance);
}

double min_fluctuation_value(double delta_eps) {
  if (delta_eps < 0.0) throw InvalidSpec("energy input must be nonnegative");
  return (delta_eps - std::floor(delta_eps)) *
         (std::ceil(delta_eps) - delta_eps);
}

ChargingReport min_fluctuation_charge(const ThermalSpec& spec,
                                      double delta_eps, int dim) {
  validate(spec);
  if (zero_temperature(spec)) {
    throw ZeroTemperatureUnsupported(
        "the shift construction needs a thermal tail; at T=0 the minimum is "
        "the zero-temperature bound");
  }
  if (delta_eps < 0.0) throw InvalidSpec("energy input must be nonnegative");

  int shift = static_cast<int>(std::floor(delta_eps + 1e-12));
  double frac = delta_eps - shift;
  if (frac < 1e-12) frac = 0.0;
  if (frac > 1.0 - 1e-12) {
    ++shift;
    frac = 0.0;
  }
  if (shift == 0 && frac == 0.0) return identity_report(spec, dim);

  const double bw = spec.beta * spec.omega;
  const DiagonalState tau = thermal_weights(spec, dim);
  const DiagStats init = diag_stats(tau);
  Charger c(tau.weights(), level_ladder(spec.omega, dim));

  int k_tilde = 0;
  if (frac > 0.0) {
    k_tilde = std::max(
        1, static_cast<int>(std::ceil(std::log(1.0 / frac) / bw - 1e-12)));
    if (k_tilde + shift + 2 >= dim) {
      throw TruncationTooSmall("dim " + std::to_string(dim) +
                               " too small for threshold level " +
                               std::to_string(k_tilde) + " plus shift " +
                               std::to_string(shift));
    }
  } else if (shift + 1 >= dim) {
    throw TruncationTooSmall("dim too small for integer shift head-room");
  }

  // Combined permutation: fractional-part shift upward from k_tilde, then the
  // integer-part shift of the whole ladder (both cyclic on the truncation).
  std::vector<int> perm(dim);
  std::vector<int> pf(dim);
  std::iota(pf.begin(), pf.end(), 0);
  if (frac > 0.0) {
    pf[k_tilde] = dim - 1;
    for (int i = k_tilde + 1; i < dim; ++i) pf[i] = i - 1;
  }
  for (int i = 0; i < dim; ++i) perm[i] = pf[((i - shift) % dim + dim) % dim];
  c.permute(perm);

  if (frac > 0.0) {
    // theta = arcsin sqrt((e^{k bw} frac - 1)/(e^{bw} - 1)), applied on the
    // shifted pair since the integer shift was commuted past the rotation.
    const double ratio =
        (std::exp(k_tilde * bw) * frac - 1.0) / std::expm1(bw);
    const double theta = std::asin(std::sqrt(std::clamp(ratio, 0.0, 1.0)));
    if (theta > 0.0) c.rotate(k_tilde - 1 + shift, k_tilde + shift, theta);
  }
  return finalize(std::move(c), init.energy, init.variance);
}

ChargingReport joint_optimal_precision_charge(
    const std::vector<ThermalSpec>& specs, double delta_E,
    const std::vector<int>& dims, int dimension_cap) {
  if (specs.empty()) throw InvalidSpec("need at least one mode");
  if (specs.size() != dims.size()) {
    throw InvalidSpec("one truncation dimension per mode required");
  }
  if (specs.size() == 1) {
    return optimal_precision_charge(specs[0], delta_E / specs[0].omega,
                                    dims[0]);
  }
  if (delta_E < 0.0) throw InvalidSpec("energy input must be nonnegative");

  long total = 1;
  for (int d : dims) {
    if (d < 1) throw InvalidSpec("dimensions must be positive");
    total *= d;
    if (total > dimension_cap) {
      throw DimensionCapExceeded("joint dimension exceeds cap " +
                                 std::to_string(dimension_cap));
    }
  }
  const int D = static_cast<int>(total);
  const int modes = static_cast<int>(specs.size());

  Eigen::VectorXd w = Eigen::VectorXd::Ones(1);
  Eigen::VectorXd energy = Eigen::VectorXd::Zero(1);
  double initial_E = 0.0, initial_V = 0.0;
  for (int i = 0; i < modes; ++i) {
    const DiagonalState tau = thermal_weights(specs[i], dims[i]);
    const DiagStats stats = diag_stats(tau);
    initial_E += stats.energy;
    initial_V += stats.variance;
    const int prev = static_cast<int>(w.size());
    Eigen::VectorXd nw(prev * dims[i]), ne(prev * dims[i]);
    for (int a = 0; a < prev; ++a) {
      for (int n = 0; n < dims[i]; ++n) {
        nw[a * dims[i] + n] = w[a] * tau.weights()[n];
        ne[a * dims[i] + n] = energy[a] + specs[i].omega * n;
      }
    }
    w = std::move(nw);
    energy = std::move(ne);
  }

  const double e_target = initial_E + delta_E;
  Charger c(w, energy);

  // Part I: closest level gets the largest weight; degenerate distances and
  // equal weights break ties by level index for determinism.
  std::vector<int> by_distance(D), by_weight(D), perm(D);
  std::iota(by_distance.begin(), by_distance.end(), 0);
  std::iota(by_weight.begin(), by_weight.end(), 0);
  std::sort(by_distance.begin(), by_distance.end(), [&](int a, int b) {
    const double da = std::abs(energy[a] - e_target);
    const double db = std::abs(energy[b] - e_target);
    return da != db ? da < db : a < b;
  });
  std::sort(by_weight.begin(), by_weight.end(), [&](int a, int b) {
    return w[a] != w[b] ? w[a] > w[b] : a < b;
  });
  for (int r = 0; r < D; ++r) perm[by_distance[r]] = by_weight[r];
  c.permute(perm);

  // Part II: greedy two-level rotations with minimal dV/|dE| toward target.
  const double tol = kTargetRelTol * std::max(1.0, std::abs(e_target));
  double e_tilde = c.mean_energy();
  long guard = 0;
  while (std::abs(e_tilde - e_target) > tol) {
    if (++guard > 200000) {
      throw ConvergenceFailure("greedy joint protocol did not reach target");
    }
    const double needed = e_target - e_tilde;
    int best_a = -1, best_b = -1;
    double best_ratio = 0.0, best_full = 0.0;
    for (int a = 0; a < D; ++a) {
      for (int b = a + 1; b < D; ++b) {
        const double dw = c.w[a] - c.w[b];
        if (dw == 0.0 || energy[a] == energy[b]) continue;
        const double full = dw * (energy[b] - energy[a]);
        if ((full > 0.0) != (needed > 0.0)) continue;
        const double ea = energy[a] - e_target;
        const double eb = energy[b] - e_target;
        const double ratio = dw * (eb * eb - ea * ea) / std::abs(full);
        if (best_a < 0 || ratio < best_ratio) {
          best_a = a;
          best_b = b;
          best_ratio = ratio;
          best_full = full;
        }
      }
    }
    if (best_a < 0) {
      throw ConvergenceFailure("target energy unreachable from current state");
    }
    const double theta = partial_angle(needed, best_full);
    c.rotate(best_a, best_b, theta);
    const double s = std::sin(theta);
    e_tilde += s * s * best_full;
  }
  return finalize(std::move(c), initial_E, initial_V);
}

}  // namespace qbat
