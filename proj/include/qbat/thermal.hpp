#pragma once

#include <limits>

#include "qbat/errors.hpp"

namespace qbat {

/// Single bosonic mode at inverse temperature beta (units hbar = k_B = 1).
/// T = 0 is represented by beta = +infinity.
struct ThermalSpec {
  double omega = 1.0;
  double beta = std::numeric_limits<double>::infinity();
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

void validate(const ThermalSpec& spec);  // throws InvalidSpec

bool zero_temperature(const ThermalSpec& spec);

/// nu = coth(beta*omega/2); 1 at T = 0.
double thermal_nu(const ThermalSpec& spec);

/// Mean thermal occupation eps0 = 1/(e^{beta*omega} - 1).
double mean_occupation(const ThermalSpec& spec);

/// E(tau) = (omega/2)(nu - 1).
double thermal_energy(const ThermalSpec& spec);

/// V(tau) = (omega^2/4)(nu^2 - 1).
double thermal_variance(const ThermalSpec& spec);

}  // namespace qbat
