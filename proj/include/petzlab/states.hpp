#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "petzlab/linalg.hpp"
#include "petzlab/matrix.hpp"

namespace petzlab {

//=========================================================================
// DensityMatrix
//=========================================================================
//
// Hermitian, unit trace, PSD up to round-off. Construction through
// from_matrix() enforces the invariants and clamps eigenvalues in
// [-1e-12, 0) to zero; unchecked() is for outputs of maps that guarantee
// them structurally. A completely positive but trace non-increasing map
// (the Petz map off the support of a rank-deficient channel image) can
// yield trace < 1; such outputs are carried unrenormalized.

class DensityMatrix {
 public:
  static DensityMatrix from_matrix(const Cmat &m) {
    if (!m.is_hermitian())
      throw std::invalid_argument("DensityMatrix: matrix is not Hermitian");
    if (std::abs(m.trace() - cplx(1.0, 0.0)) > 1e-12)
      throw std::invalid_argument("DensityMatrix: trace differs from 1");
    const EigHermitian e = eig_hermitian(m);
    bool clamped = false;
    std::array<double, Cmat::max_dim> lam = e.values;
    for (std::size_t k = 0; k < m.dim(); ++k) {
      if (lam[k] < -1e-12)
        throw std::invalid_argument(
            "DensityMatrix: negative eigenvalue beyond round-off");
      if (lam[k] < 0.0) {
        lam[k] = 0.0;
        clamped = true;
      }
    }
    if (!clamped) return DensityMatrix(m);
    return DensityMatrix(detail::rebuild(e, lam));
  }

  // Trusted path for map outputs; no validation.
  static DensityMatrix unchecked(const Cmat &m) { return DensityMatrix(m); }

  const Cmat &mat() const { return m_; }
  std::size_t dim() const { return m_.dim(); }

  double purity() const {
    double s = 0.0;
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = 0; j < dim(); ++j)
        s += (m_(i, j) * m_(j, i)).real();
    return s;
  }

  // Bloch vector (qubit only): r_k = tr(rho sigma_k).
  std::array<double, 3> bloch_vector() const {
    if (dim() != 2)
      throw std::invalid_argument("bloch_vector: defined for qubits only");
    return {2.0 * m_(0, 1).real(), -2.0 * m_(0, 1).imag(),
            (m_(0, 0) - m_(1, 1)).real()};
  }

 private:
  explicit DensityMatrix(const Cmat &m) : m_(m) {}
  Cmat m_;
};

//=========================================================================
// Named states
//=========================================================================

inline DensityMatrix ket0_state() {
  Cmat m(2);
  m(0, 0) = 1.0;
  return DensityMatrix::unchecked(m);
}

inline DensityMatrix ket1_state() {
  Cmat m(2);
  m(1, 1) = 1.0;
  return DensityMatrix::unchecked(m);
}

inline DensityMatrix plus_state() {
  Cmat m(2);
  m(0, 0) = m(0, 1) = m(1, 0) = m(1, 1) = 0.5;
  return DensityMatrix::unchecked(m);
}

inline DensityMatrix minus_state() {
  Cmat m(2);
  m(0, 0) = m(1, 1) = 0.5;
  m(0, 1) = m(1, 0) = -0.5;
  return DensityMatrix::unchecked(m);
}

inline DensityMatrix maximally_mixed(std::size_t dim = 2) {
  Cmat m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0 / double(dim);
  return DensityMatrix::unchecked(m);
}

// Diagonal mixture (1-q)|0><0| + q|1><1|.
inline DensityMatrix diagonal_mixture(double q) {
  if (q < 0.0 || q > 1.0)
    throw std::invalid_argument("diagonal_mixture: q must lie in [0, 1]");
  Cmat m(2);
  m(0, 0) = 1.0 - q;
  m(1, 1) = q;
  return DensityMatrix::unchecked(m);
}

//=========================================================================
// Distance and overlap measures
//=========================================================================

// Uhlmann fidelity F = (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2. Accepts a
// subnormalized second argument (trace <= 1), in which case F simply falls
// below one; the formula is unchanged.
inline double fidelity(const DensityMatrix &rho, const DensityMatrix &sigma) {
  const Cmat a = matrix_sqrt(rho.mat());
  Cmat m = a * sigma.mat() * a;
  // Symmetrize away round-off before the eigensolve.
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = i; j < m.dim(); ++j) {
      const cplx h = 0.5 * (m(i, j) + std::conj(m(j, i)));
      m(i, j) = h;
      m(j, i) = std::conj(h);
    }
  const EigHermitian e = eig_hermitian(m);
  double root_sum = 0.0;
  for (std::size_t k = 0; k < m.dim(); ++k)
    root_sum += std::sqrt(std::max(0.0, e.values[k]));
  const double f = root_sum * root_sum;
  return std::min(1.0, std::max(0.0, f));
}

inline double trace_distance(const DensityMatrix &r1, const DensityMatrix &r2) {
  return 0.5 * trace_norm(r1.mat() - r2.mat());
}

// Relative entropy S(rho || eta) in bits. Divergent (+infinity) when the
// support of rho leaks outside the support of eta.
inline double relative_entropy(const DensityMatrix &rho,
                               const DensityMatrix &eta) {
  const EigHermitian er = eig_hermitian(rho.mat());
  const EigHermitian ee = eig_hermitian(eta.mat());
  const std::size_t n = rho.dim();

  const double rho_max = std::max(0.0, er.values[n - 1]);
  const double eta_max = std::max(0.0, ee.values[n - 1]);
  const double rho_cut = 1e-12 * rho_max;
  const double eta_cut = 1e-12 * eta_max;

  // Weight of rho in each eigenvector of eta.
  std::array<double, Cmat::max_dim> weight{};
  for (std::size_t k = 0; k < n; ++k) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        s += std::conj(ee.vectors(i, k)) * rho.mat()(i, j) * ee.vectors(j, k);
    weight[k] = std::max(0.0, s.real());
  }

  double null_mass = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    if (ee.values[k] <= eta_cut) null_mass += weight[k];
  if (null_mass > 1e-10) return std::numeric_limits<double>::infinity();

  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    if (er.values[k] > rho_cut) s += er.values[k] * std::log2(er.values[k]);
  for (std::size_t k = 0; k < n; ++k)
    if (ee.values[k] > eta_cut) s -= weight[k] * std::log2(ee.values[k]);
  return s;
}

}  // namespace petzlab
