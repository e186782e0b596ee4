#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace petzlab {

using cplx = std::complex<double>;

// Thrown when an iterative routine fails to converge or a quantity leaves
// its numerical validity range.
struct numerical_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

//=========================================================================
// Cmat: dense complex matrix, dimension 1..4, inline storage
//=========================================================================
//
// Everything in this library lives on one or two qubits, so matrices are
// at most 4x4 (Choi matrices, superoperators). Fixed capacity keeps all
// temporaries on the stack.

class Cmat {
 public:
  static constexpr std::size_t max_dim = 4;

  explicit Cmat(std::size_t dim) : dim_(dim) {
    if (dim < 1 || dim > max_dim)
      throw std::invalid_argument("Cmat: dimension must be in [1, 4], got " +
                                  std::to_string(dim));
    a_.fill(cplx(0.0, 0.0));
  }

  static Cmat identity(std::size_t dim) {
    Cmat m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t dim() const { return dim_; }

  cplx &operator()(std::size_t r, std::size_t c) { return a_[r * dim_ + c]; }
  cplx operator()(std::size_t r, std::size_t c) const {
    return a_[r * dim_ + c];
  }

  Cmat adjoint() const {
    Cmat m(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) m(i, j) = std::conj((*this)(j, i));
    return m;
  }

  Cmat conjugate() const {
    Cmat m(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) m(i, j) = std::conj((*this)(i, j));
    return m;
  }

  cplx trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
  }

  double max_abs() const {
    double m = 0.0;
    for (std::size_t i = 0; i < dim_ * dim_; ++i)
      m = std::max(m, std::abs(a_[i]));
    return m;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (std::size_t i = 0; i < dim_ * dim_; ++i) s += std::norm(a_[i]);
    return std::sqrt(s);
  }

  // Hermiticity test with tolerance relative to the matrix scale.
  bool is_hermitian(double tol = 1e-12) const {
    const double scale = std::max(1.0, max_abs());
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = i; j < dim_; ++j)
        if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol * scale)
          return false;
    return true;
  }

  Cmat &operator+=(const Cmat &o) {
    for (std::size_t i = 0; i < dim_ * dim_; ++i) a_[i] += o.a_[i];
    return *this;
  }
  Cmat &operator-=(const Cmat &o) {
    for (std::size_t i = 0; i < dim_ * dim_; ++i) a_[i] -= o.a_[i];
    return *this;
  }
  Cmat &operator*=(cplx s) {
    for (std::size_t i = 0; i < dim_ * dim_; ++i) a_[i] *= s;
    return *this;
  }

  friend Cmat operator+(Cmat a, const Cmat &b) { return a += b; }
  friend Cmat operator-(Cmat a, const Cmat &b) { return a -= b; }
  friend Cmat operator*(cplx s, Cmat a) { return a *= s; }
  friend Cmat operator*(Cmat a, cplx s) { return a *= s; }

  friend Cmat operator*(const Cmat &a, const Cmat &b) {
    const std::size_t n = a.dim_;
    Cmat c(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        const cplx aik = a(i, k);
        if (aik == cplx(0.0, 0.0)) continue;
        for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

 private:
  std::size_t dim_;
  std::array<cplx, max_dim * max_dim> a_;
};

inline double max_abs_diff(const Cmat &a, const Cmat &b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

// Kronecker product; result dimension must stay within capacity, which
// limits use to (2x2) x (2x2).
inline Cmat kron(const Cmat &a, const Cmat &b) {
  const std::size_t n = a.dim() * b.dim();
  if (n > Cmat::max_dim)
    throw std::invalid_argument("kron: product dimension exceeds capacity");
  Cmat c(n);
  for (std::size_t i1 = 0; i1 < a.dim(); ++i1)
    for (std::size_t j1 = 0; j1 < a.dim(); ++j1)
      for (std::size_t i2 = 0; i2 < b.dim(); ++i2)
        for (std::size_t j2 = 0; j2 < b.dim(); ++j2)
          c(i1 * b.dim() + i2, j1 * b.dim() + j2) = a(i1, j1) * b(i2, j2);
  return c;
}

// Partial traces of a 4x4 bipartite matrix, index convention r = 2*a + b
// (a: first qubit, b: second qubit).
inline Cmat partial_trace_first(const Cmat &m) {
  if (m.dim() != 4)
    throw std::invalid_argument("partial_trace_first: need a 4x4 matrix");
  Cmat r(2);
  for (std::size_t b1 = 0; b1 < 2; ++b1)
    for (std::size_t b2 = 0; b2 < 2; ++b2)
      for (std::size_t a = 0; a < 2; ++a)
        r(b1, b2) += m(2 * a + b1, 2 * a + b2);
  return r;
}

inline Cmat partial_trace_second(const Cmat &m) {
  if (m.dim() != 4)
    throw std::invalid_argument("partial_trace_second: need a 4x4 matrix");
  Cmat r(2);
  for (std::size_t a1 = 0; a1 < 2; ++a1)
    for (std::size_t a2 = 0; a2 < 2; ++a2)
      for (std::size_t b = 0; b < 2; ++b)
        r(a1, a2) += m(2 * a1 + b, 2 * a2 + b);
  return r;
}

//=========================================================================
// Pauli matrices
//=========================================================================

inline Cmat pauli_x() {
  Cmat m(2);
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return m;
}

inline Cmat pauli_y() {
  Cmat m(2);
  m(0, 1) = cplx(0.0, -1.0);
  m(1, 0) = cplx(0.0, 1.0);
  return m;
}

inline Cmat pauli_z() {
  Cmat m(2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

}  // namespace petzlab
