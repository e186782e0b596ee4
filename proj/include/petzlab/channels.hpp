#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "petzlab/matrix.hpp"
#include "petzlab/states.hpp"

namespace petzlab {

//=========================================================================
// Kraus maps and channels
//=========================================================================
//
// A KrausMap is any completely positive map given by operators {K_i},
// acting as X -> sum_i K_i X K_i^dagger. A QuantumChannel is a KrausMap
// whose operators satisfy the trace preservation identity
// sum_i K_i^dagger K_i = I; make_channel() enforces it. Duals and Petz
// maps reuse the same representation without the identity holding.

struct KrausMap {
  std::vector<Cmat> kraus;
  std::string label;

  std::size_t dim() const { return kraus.front().dim(); }
};

using QuantumChannel = KrausMap;

inline KrausMap make_kraus_map(std::vector<Cmat> kraus, std::string label) {
  if (kraus.empty())
    throw std::invalid_argument("make_kraus_map: need at least one operator");
  const std::size_t d = kraus.front().dim();
  for (const Cmat &k : kraus)
    if (k.dim() != d)
      throw std::invalid_argument("make_kraus_map: mixed operator dimensions");
  return KrausMap{std::move(kraus), std::move(label)};
}

// Max-abs deviation of sum K^dagger K from the identity.
inline double trace_preservation_defect(const KrausMap &m) {
  Cmat s(m.dim());
  for (const Cmat &k : m.kraus) s += k.adjoint() * k;
  return max_abs_diff(s, Cmat::identity(m.dim()));
}

inline bool is_trace_preserving(const KrausMap &m, double tol = 1e-10) {
  return trace_preservation_defect(m) <= tol;
}

inline QuantumChannel make_channel(std::vector<Cmat> kraus, std::string label) {
  KrausMap m = make_kraus_map(std::move(kraus), std::move(label));
  const double defect = trace_preservation_defect(m);
  if (defect > 1e-10)
    throw std::invalid_argument("make_channel: Kraus set is not trace "
                                "preserving (defect " +
                                std::to_string(defect) + ") for '" +
                                m.label + "'");
  return m;
}

//=========================================================================
// Map action and algebra
//=========================================================================

inline Cmat apply_map(const KrausMap &m, const Cmat &x) {
  Cmat out(m.dim());
  for (const Cmat &k : m.kraus) out += k * x * k.adjoint();
  return out;
}

inline DensityMatrix apply(const QuantumChannel &ch, const DensityMatrix &rho) {
  return DensityMatrix::unchecked(apply_map(ch, rho.mat()));
}

// Heisenberg-picture dual: Kraus operators are the adjoints. Trace
// preservation is not inherited (the dual is unital instead).
inline KrausMap dual(const KrausMap &m) {
  std::vector<Cmat> ks;
  ks.reserve(m.kraus.size());
  for (const Cmat &k : m.kraus) ks.push_back(k.adjoint());
  return KrausMap{std::move(ks), "dual(" + m.label + ")"};
}

// Composition after . before, Kraus operators all pairwise products.
inline KrausMap compose(const KrausMap &after, const KrausMap &before) {
  if (after.dim() != before.dim())
    throw std::invalid_argument("compose: dimension mismatch");
  std::vector<Cmat> ks;
  ks.reserve(after.kraus.size() * before.kraus.size());
  for (const Cmat &a : after.kraus)
    for (const Cmat &b : before.kraus) ks.push_back(a * b);
  return KrausMap{std::move(ks), after.label + " . " + before.label};
}

//=========================================================================
// Channel representations
//=========================================================================

// Choi matrix J = (I x Lambda)(|Omega><Omega|) with the maximally
// entangled |Omega> = (|00> + |11>)/sqrt(2); normalized to unit trace for
// trace-preserving maps. Qubit maps only (result is 4x4).
struct ChoiMatrix {
  Cmat mat;
};

inline ChoiMatrix choi(const KrausMap &m) {
  if (m.dim() != 2)
    throw std::invalid_argument("choi: implemented for qubit maps");
  Cmat j(4);
  for (std::size_t a1 = 0; a1 < 2; ++a1)
    for (std::size_t a2 = 0; a2 < 2; ++a2) {
      Cmat e(2);
      e(a1, a2) = 1.0;
      const Cmat img = apply_map(m, e);
      for (std::size_t b1 = 0; b1 < 2; ++b1)
        for (std::size_t b2 = 0; b2 < 2; ++b2)
          j(2 * a1 + b1, 2 * a2 + b2) = 0.5 * img(b1, b2);
    }
  return ChoiMatrix{j};
}

// Superoperator in the column-stacking convention: vec(X) stacks columns,
// so vec(K X K^dagger) = (conj(K) kron K) vec(X) and the full matrix is
// sum_i conj(K_i) kron K_i. Qubit maps only (result is 4x4).
inline Cmat superoperator(const KrausMap &m) {
  if (m.dim() != 2)
    throw std::invalid_argument("superoperator: implemented for qubit maps");
  Cmat s(4);
  for (const Cmat &k : m.kraus) s += kron(k.conjugate(), k);
  return s;
}

// Channel equality in superoperator form.
inline bool maps_equal(const KrausMap &a, const KrausMap &b,
                       double tol = 1e-10) {
  return max_abs_diff(superoperator(a), superoperator(b)) <= tol;
}

//=========================================================================
// Named qubit channels
//=========================================================================

namespace detail {

inline void check_probability(double p, const char *who) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument(std::string(who) +
                                ": probability must lie in [0, 1], got " +
                                std::to_string(p));
}

}  // namespace detail

// Phase damping: with probability p the phase is scrambled, shrinking
// off-diagonals by (1 - p).
inline QuantumChannel dephasing(double p) {
  detail::check_probability(p, "dephasing");
  std::vector<Cmat> ks;
  ks.push_back(std::sqrt(1.0 - 0.5 * p) * Cmat::identity(2));
  ks.push_back(std::sqrt(0.5 * p) * pauli_z());
  return make_channel(std::move(ks), "dephasing(p=" + std::to_string(p) + ")");
}

// Isotropic depolarizing: Bloch vector shrinks by (1 - p).
inline QuantumChannel depolarizing(double p) {
  detail::check_probability(p, "depolarizing");
  std::vector<Cmat> ks;
  ks.push_back(std::sqrt(1.0 - 0.75 * p) * Cmat::identity(2));
  ks.push_back(std::sqrt(0.25 * p) * pauli_x());
  ks.push_back(std::sqrt(0.25 * p) * pauli_y());
  ks.push_back(std::sqrt(0.25 * p) * pauli_z());
  return make_channel(std::move(ks),
                      "depolarizing(p=" + std::to_string(p) + ")");
}

// Amplitude damping: |1> decays to |0> with probability p.
inline QuantumChannel amplitude_damping(double p) {
  detail::check_probability(p, "amplitude_damping");
  Cmat k0(2);
  k0(0, 0) = 1.0;
  k0(1, 1) = std::sqrt(1.0 - p);
  Cmat k1(2);
  k1(0, 1) = std::sqrt(p);
  return make_channel({k0, k1},
                      "amplitude_damping(p=" + std::to_string(p) + ")");
}

inline QuantumChannel fully_depolarizing() {
  QuantumChannel ch = depolarizing(1.0);
  ch.label = "fully_depolarizing";
  return ch;
}

inline QuantumChannel identity_channel(std::size_t dim = 2) {
  return make_channel({Cmat::identity(dim)}, "identity");
}

}  // namespace petzlab
