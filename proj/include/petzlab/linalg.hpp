#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numeric>

#include "petzlab/matrix.hpp"

namespace petzlab {

//=========================================================================
// Hermitian eigendecomposition
//=========================================================================

struct EigHermitian {
  std::array<double, Cmat::max_dim> values{};  // ascending, first dim() used
  Cmat vectors;                                // unitary, columns are vectors

  explicit EigHermitian(std::size_t dim) : vectors(dim) {}
  std::size_t dim() const { return vectors.dim(); }
};

namespace detail {

// 2x2 closed form. The off-diagonal entry b = A(0,1) defines the mixing;
// for b == 0 the matrix is already diagonal.
inline EigHermitian eig2(const Cmat &a) {
  EigHermitian e(2);
  const double p = a(0, 0).real();
  const double q = a(1, 1).real();
  const cplx b = a(0, 1);
  const double ab = std::abs(b);
  if (ab == 0.0) {
    if (p <= q) {
      e.values = {p, q};
      e.vectors = Cmat::identity(2);
    } else {
      e.values = {q, p};
      e.vectors(0, 1) = 1.0;
      e.vectors(1, 0) = 1.0;
    }
    return e;
  }
  const double mid = 0.5 * (p + q);
  const double rad = std::hypot(0.5 * (p - q), ab);
  const double lo = mid - rad;
  const double hi = mid + rad;
  e.values = {lo, hi};
  // Column k solves (A - lambda_k) v = 0; candidates (b, lambda - p) are
  // nonzero for b != 0 and exactly orthogonal for the two roots.
  const std::array<double, 2> lam = {lo, hi};
  for (std::size_t k = 0; k < 2; ++k) {
    const cplx v0 = b;
    const cplx v1 = cplx(lam[k] - p, 0.0);
    const double nrm = std::sqrt(std::norm(v0) + std::norm(v1));
    e.vectors(0, k) = v0 / nrm;
    e.vectors(1, k) = v1 / nrm;
  }
  return e;
}

// Cyclic Jacobi for Hermitian matrices up to 4x4. Each pivot (p,q) is
// eliminated by U = D * R with D = diag(1, e^{-i phi}) absorbing the phase
// of A(p,q) and R a real Givens rotation.
inline EigHermitian eig_jacobi(const Cmat &a) {
  const std::size_t n = a.dim();
  Cmat m = a;
  Cmat v = Cmat::identity(n);
  const double scale = std::max(1.0, m.frobenius_norm());
  const double tol = 1e-14 * scale;
  const int max_sweeps = 100;

  auto off_norm = [&]() {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += std::norm(m(i, j));
    return std::sqrt(s);
  };

  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    if (off_norm() <= tol) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = m(p, q);
        const double ab = std::abs(apq);
        if (ab == 0.0) continue;
        const double app = m(p, p).real();
        const double aqq = m(q, q).real();
        const cplx phase = apq / ab;  // e^{i phi}
        // Real rotation zeroing the pivot of [[app, ab], [ab, aqq]].
        const double theta = (aqq - app) / (2.0 * ab);
        const double t =
            (theta >= 0.0 ? 1.0 : -1.0) /
            (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        Cmat u = Cmat::identity(n);
        u(p, p) = c;
        u(p, q) = s;
        u(q, p) = -s * std::conj(phase);
        u(q, q) = c * std::conj(phase);

        m = u.adjoint() * m * u;
        v = v * u;
      }
    }
  }
  if (off_norm() > tol)
    throw numerical_error("eig_hermitian: Jacobi failed to converge in 100 sweeps");

  EigHermitian e(n);
  std::array<std::size_t, Cmat::max_dim> order{};
  std::iota(order.begin(), order.begin() + n, std::size_t{0});
  std::array<double, Cmat::max_dim> diag{};
  for (std::size_t i = 0; i < n; ++i) diag[i] = m(i, i).real();
  std::sort(order.begin(), order.begin() + n,
            [&](std::size_t x, std::size_t y) { return diag[x] < diag[y]; });
  for (std::size_t k = 0; k < n; ++k) {
    e.values[k] = diag[order[k]];
    for (std::size_t i = 0; i < n; ++i) e.vectors(i, k) = v(i, order[k]);
  }
  return e;
}

}  // namespace detail

// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
inline EigHermitian eig_hermitian(const Cmat &a) {
  if (!a.is_hermitian())
    throw std::invalid_argument("eig_hermitian: matrix is not Hermitian");
  if (a.dim() == 1) {
    EigHermitian e(1);
    e.values[0] = a(0, 0).real();
    e.vectors(0, 0) = 1.0;
    return e;
  }
  if (a.dim() == 2) return detail::eig2(a);
  return detail::eig_jacobi(a);
}

namespace detail {

inline Cmat rebuild(const EigHermitian &e,
                    const std::array<double, Cmat::max_dim> &f) {
  const std::size_t n = e.dim();
  Cmat out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        s += e.vectors(i, k) * f[k] * std::conj(e.vectors(j, k));
      out(i, j) = s;
    }
  return out;
}

// PSD gate shared by the matrix function routines: eigenvalues below
// -1e-9 reject the input, anything negative above that is round-off and
// clamps to zero.
inline std::array<double, Cmat::max_dim> psd_clamp(const EigHermitian &e,
                                                   const char *who) {
  std::array<double, Cmat::max_dim> lam = e.values;
  for (std::size_t k = 0; k < e.dim(); ++k) {
    if (lam[k] < -1e-9)
      throw std::invalid_argument(std::string(who) +
                                  ": matrix is not positive semidefinite "
                                  "(eigenvalue " +
                                  std::to_string(lam[k]) + ")");
    if (lam[k] < 0.0) lam[k] = 0.0;
  }
  return lam;
}

}  // namespace detail

// Principal square root of a Hermitian PSD matrix.
inline Cmat matrix_sqrt(const Cmat &a) {
  const EigHermitian e = eig_hermitian(a);
  auto lam = detail::psd_clamp(e, "matrix_sqrt");
  for (std::size_t k = 0; k < e.dim(); ++k) lam[k] = std::sqrt(lam[k]);
  return detail::rebuild(e, lam);
}

// Pseudo-inverse square root: eigenvalues at or below the relative cutoff
// 1e-12 * lambda_max map to zero instead of being inverted.
inline Cmat matrix_invsqrt_pinv(const Cmat &a) {
  const EigHermitian e = eig_hermitian(a);
  auto lam = detail::psd_clamp(e, "matrix_invsqrt_pinv");
  const double lam_max =
      *std::max_element(lam.begin(), lam.begin() + e.dim());
  const double cutoff = 1e-12 * lam_max;
  for (std::size_t k = 0; k < e.dim(); ++k)
    lam[k] = (lam_max > 0.0 && lam[k] > cutoff) ? 1.0 / std::sqrt(lam[k]) : 0.0;
  return detail::rebuild(e, lam);
}

// Rank against the same relative cutoff used by matrix_invsqrt_pinv.
inline std::size_t psd_rank(const Cmat &a) {
  const EigHermitian e = eig_hermitian(a);
  auto lam = detail::psd_clamp(e, "psd_rank");
  const double lam_max =
      *std::max_element(lam.begin(), lam.begin() + e.dim());
  if (lam_max <= 0.0) return 0;
  std::size_t r = 0;
  for (std::size_t k = 0; k < e.dim(); ++k)
    if (lam[k] > 1e-12 * lam_max) ++r;
  return r;
}

// Trace norm (sum of singular values). Hermitian inputs reduce to the sum
// of absolute eigenvalues; the general path goes through A^dagger A.
inline double trace_norm(const Cmat &a) {
  if (a.is_hermitian()) {
    const EigHermitian e = eig_hermitian(a);
    double s = 0.0;
    for (std::size_t k = 0; k < a.dim(); ++k) s += std::abs(e.values[k]);
    return s;
  }
  const Cmat g = a.adjoint() * a;
  const EigHermitian e = eig_hermitian(g);
  double s = 0.0;
  for (std::size_t k = 0; k < a.dim(); ++k)
    s += std::sqrt(std::max(0.0, e.values[k]));
  return s;
}

}  // namespace petzlab
