#include "qbat/thermal.hpp"

#include <cmath>

namespace qbat {

void validate(const ThermalSpec& spec) {
  if (!(spec.omega > 0.0) || std::isinf(spec.omega)) {
    throw InvalidSpec("mode frequency must be positive and finite");
  }
  if (!(spec.beta > 0.0)) {
    throw InvalidSpec("inverse temperature must be positive (+inf for T=0)");
  }
}

bool zero_temperature(const ThermalSpec& spec) { return std::isinf(spec.beta); }

double thermal_nu(const ThermalSpec& spec) {
  if (zero_temperature(spec)) return 1.0;
  return 1.0 / std::tanh(0.5 * spec.beta * spec.omega);
}

double mean_occupation(const ThermalSpec& spec) {
  if (zero_temperature(spec)) return 0.0;
  return 1.0 / std::expm1(spec.beta * spec.omega);
}

double thermal_energy(const ThermalSpec& spec) {
  return spec.omega * mean_occupation(spec);
}

double thermal_variance(const ThermalSpec& spec) {
  // nu^2 - 1 = 4 eps0 (eps0 + 1), exact also in the T -> 0 limit
  const double n = mean_occupation(spec);
  return spec.omega * spec.omega * n * (n + 1.0);
}

}  // namespace qbat
