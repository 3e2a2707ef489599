#include "qbat/multimode.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qbat/protocols.hpp"
#include "qbat/solvers.hpp"

namespace qbat {

namespace {

struct ModeValue {
  double v;
  double dw2;
};

// Variance and squared fluctuation of the unitary a strategy picks for one
// mode at energy e, when asked to optimize the given objective.
ModeValue evaluate_mode(const ThermalSpec& spec, double e,
                        SplitObjective objective, SplitStrategy strategy) {
  const double vt = thermal_variance(spec);
  switch (strategy) {
    case SplitStrategy::Displacement: {
      const double nu = thermal_nu(spec);
      return {nu * spec.omega * e + vt, nu * spec.omega * e};
    }
    case SplitStrategy::SqueezeOnly: {
      // all energy into squeezing: the two bound branches coincide
      const double r = max_squeezing(e, spec);
      return {v_bounds_at_r(r, e, spec).v_plus,
              dw_bounds_at_r(r, e, spec).dw2_plus};
    }
    case SplitStrategy::GaussianOptimal: {
      if (objective == SplitObjective::Variance) {
        const ExtremalSolution sol = best_precision(e, spec);
        return {sol.objective, dw_bounds_at_r(sol.r, e, spec).dw2_minus};
      }
      const ExtremalSolution sol =
          extremal_fluctuations(e, spec, Extremum::Min);
      return {v_bounds_at_r(sol.r, e, spec).v_minus, sol.objective};
    }
    case SplitStrategy::Fundamental: {
      if (objective == SplitObjective::Variance) {
        const double deps = e / spec.omega;
        const ChargingReport rep =
            optimal_precision_charge(spec, deps, recommended_dim(spec, deps));
        return {rep.final_V, rep.delta_W2};
      }
      const double deps = e / spec.omega;
      const double dw2 =
          min_fluctuation_value(deps) * spec.omega * spec.omega;
      if (zero_temperature(spec)) {
        // Shift construction undefined at T=0; report the bound itself.
        return {zero_temp_bounds(deps).v_min * spec.omega * spec.omega, dw2};
      }
      const ChargingReport rep =
          min_fluctuation_charge(spec, deps, recommended_dim(spec, deps) + 8);
      return {rep.final_V, dw2};
    }
  }
  throw InvalidSpec("unknown strategy");
}

double allocation_count(int quanta, int modes) {
  // C(quanta + modes - 1, modes - 1)
  double count = 1.0;
  for (int i = 1; i <= modes - 1; ++i) {
    count *= static_cast<double>(quanta + i) / i;
  }
  return count;
}

}  // namespace

void validate(const ModeSet& modes) {
  if (modes.specs.empty()) throw InvalidSpec("mode set must be nonempty");
  const double beta = modes.specs.front().beta;
  for (const auto& spec : modes.specs) {
    validate(spec);
    if (spec.beta != beta) {
      throw InvalidSpec("all modes must share one inverse temperature");
    }
  }
}

double displacement_split_variance(double p, double delta_E,
                                   const ModeSet& modes) {
  validate(modes);
  if (modes.specs.size() != 2) {
    throw InvalidSpec("displacement split formula is for two modes");
  }
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidSpec("p must lie in [0, 1]");
  const ThermalSpec& a = modes.specs[0];
  const ThermalSpec& b = modes.specs[1];
  return (p * thermal_nu(a) * a.omega + (1.0 - p) * thermal_nu(b) * b.omega) *
             delta_E +
         thermal_variance(a) + thermal_variance(b);
}

SplitResult optimize_local_split(double delta_E, const ModeSet& modes,
                                 SplitObjective objective,
                                 SplitStrategy strategy, double quantum) {
  validate(modes);
  if (!(quantum > 0.0)) throw InvalidSpec("grid quantum must be positive");
  if (delta_E < 0.0) throw InvalidSpec("energy input must be nonnegative");
  const int modes_n = static_cast<int>(modes.specs.size());

  const double quanta_exact = delta_E / quantum;
  int quanta = static_cast<int>(std::floor(quanta_exact + 1e-9));
  SplitResult result;
  result.strategy = strategy;
  result.rounded = std::abs(quanta_exact - quanta) > 1e-9;

  if (allocation_count(quanta, modes_n) > 1e7) {
    throw GridTooFine("allocation count exceeds 1e7");
  }

  // Per-mode objective cache over 0..quanta units.
  std::vector<std::vector<ModeValue>> cache(modes_n);
  for (int i = 0; i < modes_n; ++i) {
    cache[i].reserve(quanta + 1);
    for (int m = 0; m <= quanta; ++m) {
      cache[i].push_back(
          evaluate_mode(modes.specs[i], m * quantum, objective, strategy));
    }
  }
  const auto score = [&](const ModeValue& v) {
    return objective == SplitObjective::Variance ? v.v : v.dw2;
  };

  // Depth-first enumeration of (m_1, ..., m_k) with sum = quanta; per-mode
  // objectives are nonnegative-additive, so partial sums prune.
  std::vector<int> alloc(modes_n, 0), best_alloc(modes_n, 0);
  double best = std::numeric_limits<double>::infinity();
  const auto recurse = [&](auto&& self, int mode, int remaining,
                           double partial) -> void {
    if (partial >= best) return;
    if (mode == modes_n - 1) {
      alloc[mode] = remaining;
      const double total = partial + score(cache[mode][remaining]);
      if (total < best) {
        best = total;
        best_alloc = alloc;
      }
      return;
    }
    for (int m = 0; m <= remaining; ++m) {
      alloc[mode] = m;
      self(self, mode + 1, remaining - m, partial + score(cache[mode][m]));
    }
  };
  recurse(recurse, 0, quanta, 0.0);

  result.allocation.resize(modes_n);
  result.total_V = 0.0;
  result.total_dW2 = 0.0;
  for (int i = 0; i < modes_n; ++i) {
    result.allocation[i] = best_alloc[i] * quantum;
    const ModeValue& v = cache[i][best_alloc[i]];
    result.total_V += v.v;
    result.total_dW2 += v.dw2;
  }
  return result;
}

}  // namespace qbat
