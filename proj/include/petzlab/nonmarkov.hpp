#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "petzlab/channels.hpp"
#include "petzlab/integrate.hpp"
#include "petzlab/petz.hpp"
#include "petzlab/states.hpp"

namespace petzlab {

//=========================================================================
// Time-dependent dephasing probabilities
//=========================================================================

// Case 1: recurrent dephasing. The prefactor normalizes the maximum
// (reached at omega t = pi) to exactly 1, so coherence vanishes there and
// fully returns at omega t = 2 pi.
inline double p_case1(double t, double omega = 1.0) {
  const double alpha = std::exp(4.0) / (std::exp(4.0) - 1.0);
  return alpha * (1.0 - std::exp(-2.0 * (1.0 - std::cos(omega * t))));
}

// Case 2: damped oscillatory dephasing; revivals decay with the envelope
// e^{-0.3 omega t}.
inline double p_case2(double t, double omega = 1.0) {
  const double c = std::cos(omega * t);
  return 1.0 - std::exp(-0.3 * omega * t) * c * c;
}

struct DynamicsModel {
  std::string name;
  double omega = 1.0;
  std::function<double(double)> p_of_t;  // dephasing probability at time t

  static DynamicsModel case1(double omega = 1.0) {
    return {"case1", omega,
            [omega](double t) { return p_case1(t, omega); }};
  }
  static DynamicsModel case2(double omega = 1.0) {
    return {"case2", omega,
            [omega](double t) { return p_case2(t, omega); }};
  }
  static DynamicsModel custom(std::string name,
                              std::function<double(double)> p_of_t,
                              double omega = 1.0) {
    return {std::move(name), omega, std::move(p_of_t)};
  }
};

inline DynamicsModel dynamics_by_case(int which, double omega = 1.0) {
  if (which == 1) return DynamicsModel::case1(omega);
  if (which == 2) return DynamicsModel::case2(omega);
  throw std::invalid_argument("dynamics_by_case: case must be 1 or 2");
}

namespace detail {

inline double probability_at(const DynamicsModel &model, double t) {
  double p = model.p_of_t(t);
  // Round-off at the extremes (e.g. the case-1 maximum) may leave p a few
  // ulp outside [0, 1]; anything further out is a broken model.
  if (p < 0.0 || p > 1.0) {
    if (p < -1e-12 || p > 1.0 + 1e-12)
      throw numerical_error("dynamics '" + model.name +
                            "': probability out of [0, 1] at t = " +
                            std::to_string(t));
    p = std::min(1.0, std::max(0.0, p));
  }
  return p;
}

}  // namespace detail

//=========================================================================
// Dynamical maps and the recovery-based approximation
//=========================================================================

// Snapshot map from time 0 to t.
inline QuantumChannel map_at(const DynamicsModel &model, double t) {
  return dephasing(detail::probability_at(model, t));
}

// Approximation of the map from t to ratio*t that replaces the (possibly
// non-invertible) inverse of the 0->t map by its Petz recovery with the
// maximally mixed reference:
//   Lambda_{ratio t, 0} . Petz(Lambda_{t, 0}) . Lambda_{t, 0}
inline QuantumChannel approx_map(const DynamicsModel &model, double t,
                                 double ratio = 2.0) {
  if (!(ratio > 1.0))
    throw std::invalid_argument("approx_map: ratio must exceed 1");
  const QuantumChannel to_t = map_at(model, t);
  const QuantumChannel to_final = map_at(model, ratio * t);
  const KrausMap recovery = petz_map(to_t, maximally_mixed());
  return compose(to_final, compose(recovery, to_t));
}

//=========================================================================
// Distinguishability trajectories
//=========================================================================

struct TrajectoryPoint {
  double t = 0.0;
  double value = 0.0;
};

enum class Trajectory { original, approximate };

// Trace distance between the images of |+> and |-> under the map to time
// ratio*t: exact dynamics for Trajectory::original, the Petz-based
// approximation for Trajectory::approximate.
inline std::vector<TrajectoryPoint> backflow_trajectory(
    const DynamicsModel &model, Trajectory which,
    const std::vector<double> &t_grid, double ratio = 2.0) {
  const DensityMatrix r1 = plus_state();
  const DensityMatrix r2 = minus_state();
  std::vector<TrajectoryPoint> out;
  out.reserve(t_grid.size());
  for (const double t : t_grid) {
    const QuantumChannel ch = (which == Trajectory::original)
                                  ? map_at(model, ratio * t)
                                  : approx_map(model, t, ratio);
    out.push_back({t, trace_distance(apply(ch, r1), apply(ch, r2))});
  }
  return out;
}

// Half trace norm of the Choi matrix difference between the approximation
// and the exact map to ratio*t.
inline std::vector<TrajectoryPoint> choi_distance_trajectory(
    const DynamicsModel &model, const std::vector<double> &t_grid,
    double ratio = 2.0) {
  std::vector<TrajectoryPoint> out;
  out.reserve(t_grid.size());
  for (const double t : t_grid) {
    const Cmat ja = choi(approx_map(model, t, ratio)).mat;
    const Cmat jo = choi(map_at(model, ratio * t)).mat;
    out.push_back({t, 0.5 * trace_norm(ja - jo)});
  }
  return out;
}

//=========================================================================
// Canonical generator rates
//=========================================================================

// Time-local generator with rates gamma_k attached to the Pauli channels
// (k = 1, 2, 3 for x, y, z); only one channel is active in the models
// treated here. Negative rates witness non-Markovianity.
struct GeneratorModel {
  std::string name;
  std::array<std::function<double(double)>, 3> gamma{};
  int active = 3;  // 1-based Pauli index of the active channel

  static GeneratorModel case1() {
    GeneratorModel g;
    g.name = "case1";
    g.gamma = {nullptr, nullptr, [](double t) { return std::sin(t); }};
    return g;
  }

  static GeneratorModel case2() {
    GeneratorModel g;
    g.name = "case2";
    g.gamma = {nullptr, nullptr, [](double t) {
                 const double c = std::cos(t);
                 return c * (-0.3 * c - 2.0 * std::sin(t)) /
                        (std::exp(0.3 * t) - 2.0 * c * c);
               }};
    return g;
  }

  double rate(int k, double t) const {
    const auto &fn = gamma[std::size_t(k - 1)];
    return fn ? fn(t) : 0.0;
  }
};

// Dephasing probability accumulated by the active rate up to time t:
// p = (1 - e^{-2 Gamma}) / 2 with Gamma the integral of gamma.
inline double gamma_to_probability(const GeneratorModel &gen, double t,
                                   double quad_tol = 1e-10) {
  if (t < 0.0)
    throw std::invalid_argument("gamma_to_probability: t must be >= 0");
  const auto &fn = gen.gamma[std::size_t(gen.active - 1)];
  if (!fn)
    throw std::invalid_argument("gamma_to_probability: active rate not set");
  const double big_gamma = adaptive_simpson(fn, 0.0, t, quad_tol);
  return 0.5 * (1.0 - std::exp(-2.0 * big_gamma));
}

struct RateInterval {
  double t_begin = 0.0;
  double t_end = 0.0;
};

// Grid spans where any rate dips below -1e-12. Consecutive flagged points
// merge into one interval.
inline std::vector<RateInterval> markovianity_witness(
    const GeneratorModel &gen, const std::vector<double> &t_grid) {
  std::vector<RateInterval> out;
  bool open = false;
  for (const double t : t_grid) {
    bool negative = false;
    for (int k = 1; k <= 3; ++k)
      if (gen.rate(k, t) < -1e-12) negative = true;
    if (negative) {
      if (!open) {
        out.push_back({t, t});
        open = true;
      } else {
        out.back().t_end = t;
      }
    } else {
      open = false;
    }
  }
  return out;
}

// Uniform grid helper: t = 0, dt, 2 dt, ... up to and including t_max
// (within half a step).
inline std::vector<double> uniform_grid(double t_max, double dt) {
  if (!(dt > 0.0))
    throw std::invalid_argument("uniform_grid: dt must be positive");
  if (t_max < 0.0)
    throw std::invalid_argument("uniform_grid: t_max must be >= 0");
  std::vector<double> grid;
  const std::size_t n = std::size_t(std::floor(t_max / dt + 0.5)) + 1;
  grid.reserve(n);
  for (std::size_t i = 0; i < n; ++i) grid.push_back(double(i) * dt);
  return grid;
}

}  // namespace petzlab
