#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "petzlab/channels.hpp"
#include "petzlab/parallel.hpp"
#include "petzlab/petz.hpp"
#include "petzlab/rng.hpp"
#include "petzlab/states.hpp"

namespace petzlab {

//=========================================================================
// Random states
//=========================================================================

// Mixed qubit from the partial trace of a Haar-random two-qubit pure
// state: four i.i.d. standard complex Gaussian amplitudes, normalized,
// second qubit traced out. Induced measure has mean purity 4/5.
inline DensityMatrix random_mixed_qubit(SampleStream &stream) {
  std::complex<double> psi[4];
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (auto &amp : psi) {
      amp = stream.next_complex_normal();
      norm2 += std::norm(amp);
    }
  } while (std::sqrt(norm2) < 1e-100);
  const double inv = 1.0 / norm2;
  Cmat rho(2);
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) {
      cplx s = 0.0;
      for (std::size_t c = 0; c < 2; ++c)
        s += psi[2 * a + c] * std::conj(psi[2 * b + c]);
      rho(a, b) = s * inv;
    }
  return DensityMatrix::from_matrix(rho);
}

struct SampleConfig {
  std::uint64_t n_samples = 10000;
  std::uint64_t seed = 12345;
};

// The sample set is a pure function of (seed, n): sample k comes from the
// stream keyed by (seed, k).
inline std::vector<DensityMatrix> sample_states(const SampleConfig &cfg) {
  if (cfg.n_samples == 0)
    throw std::invalid_argument("sample_states: need at least one sample");
  std::vector<DensityMatrix> out(cfg.n_samples, maximally_mixed());
  parallel_for(cfg.n_samples, [&](std::size_t k) {
    SampleStream stream(cfg.seed, k);
    out[k] = random_mixed_qubit(stream);
  });
  return out;
}

//=========================================================================
// Average recovery fidelity
//=========================================================================

struct FidelityEstimate {
  double mean = 0.0;
  double variance = 0.0;  // population variance of the per-sample values
  std::uint64_t n = 0;

  double standard_error() const {
    return std::sqrt(variance / double(n));
  }
};

namespace detail {

// Two-pass mean/variance over per-sample values, pairwise sums so the
// result does not depend on evaluation order.
inline FidelityEstimate summarize(const std::vector<double> &vals) {
  FidelityEstimate est;
  est.n = vals.size();
  est.mean = pairwise_sum(vals) / double(vals.size());
  std::vector<double> sq(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) {
    const double d = vals[i] - est.mean;
    sq[i] = d * d;
  }
  est.variance = pairwise_sum(sq) / double(vals.size());
  return est;
}

inline FidelityEstimate estimate_recovery(
    const std::vector<DensityMatrix> &states,
    const std::vector<DensityMatrix> &outputs, const Recoverer &rec) {
  std::vector<double> fid(states.size());
  parallel_for(states.size(), [&](std::size_t k) {
    fid[k] = fidelity(states[k], rec(outputs[k]));
  });
  return summarize(fid);
}

}  // namespace detail

// Mean fidelity between inputs and their recovered channel outputs,
// F(rho_k, R(ch(rho_k))), over the sample set defined by cfg.
inline FidelityEstimate mean_fidelity(const QuantumChannel &ch,
                                      const RecoveryStrategy &strategy,
                                      const SampleConfig &cfg) {
  const std::vector<DensityMatrix> states = sample_states(cfg);
  std::vector<DensityMatrix> outputs(states.size(), maximally_mixed());
  parallel_for(states.size(),
               [&](std::size_t k) { outputs[k] = apply(ch, states[k]); });
  return detail::estimate_recovery(states, outputs, Recoverer(strategy, ch));
}

//=========================================================================
// Reference-state sweeps
//=========================================================================

struct ChannelFamily {
  std::string name;
  std::function<QuantumChannel(double)> at;
};

inline ChannelFamily dephasing_family() {
  return {"dephasing", [](double p) { return dephasing(p); }};
}
inline ChannelFamily depolarizing_family() {
  return {"depolarizing", [](double p) { return depolarizing(p); }};
}
inline ChannelFamily amplitude_damping_family() {
  return {"amplitude_damping", [](double p) { return amplitude_damping(p); }};
}

inline ChannelFamily channel_family_by_name(const std::string &name) {
  if (name == "dephasing") return dephasing_family();
  if (name == "depolarizing") return depolarizing_family();
  if (name == "amplitude_damping") return amplitude_damping_family();
  throw std::invalid_argument("unknown channel family '" + name +
                              "' (expected dephasing, depolarizing or "
                              "amplitude_damping)");
}

struct SweepCell {
  double p = 0.0;
  double q = 0.0;
  FidelityEstimate estimate{};
  bool is_optimal = false;         // argmax over q at this p
  bool support_deficient = false;  // pseudo-inverse truncated ch(sigma)
};

// Petz recovery fidelity over a (p, q) grid with common random numbers:
// every cell sees the same sample set, so comparisons across cells are
// paired. Within each p the best q is marked, ties resolved toward the
// smallest q.
inline std::vector<SweepCell> sweep_reference(const ChannelFamily &family,
                                              const std::vector<double> &p_grid,
                                              const std::vector<double> &q_grid,
                                              const SampleConfig &cfg) {
  if (p_grid.empty() || q_grid.empty())
    throw std::invalid_argument("sweep_reference: empty grid");
  const std::vector<DensityMatrix> states = sample_states(cfg);
  std::vector<DensityMatrix> outputs(states.size(), maximally_mixed());
  std::vector<SweepCell> cells;
  cells.reserve(p_grid.size() * q_grid.size());

  for (const double p : p_grid) {
    const QuantumChannel ch = family.at(p);
    parallel_for(states.size(),
                 [&](std::size_t k) { outputs[k] = apply(ch, states[k]); });
    const std::size_t row_begin = cells.size();
    std::size_t best = row_begin;
    for (const double q : q_grid) {
      const RecoveryStrategy strat = RecoveryStrategy::petz(q);
      SweepCell cell;
      cell.p = p;
      cell.q = q;
      cell.estimate =
          detail::estimate_recovery(states, outputs, Recoverer(strat, ch));
      cell.support_deficient = petz_support_deficient(ch, strat.ref);
      cells.push_back(cell);
      if (cell.estimate.mean > cells[best].estimate.mean)
        best = cells.size() - 1;
    }
    cells[best].is_optimal = true;
  }
  return cells;
}

// Best reference parameter for each p (the cell marked optimal).
inline std::vector<SweepCell> optimal_cells(const std::vector<SweepCell> &cells) {
  std::vector<SweepCell> out;
  for (const SweepCell &c : cells)
    if (c.is_optimal) out.push_back(c);
  return out;
}

}  // namespace petzlab
