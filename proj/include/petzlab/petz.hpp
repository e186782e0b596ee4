#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "petzlab/channels.hpp"
#include "petzlab/linalg.hpp"
#include "petzlab/states.hpp"

namespace petzlab {

//=========================================================================
// Reference states
//=========================================================================

// The diagonal reference family sigma(q) = (1-q)|0><0| + q|1><1|. The
// realized mixture keeps q away from the exact endpoints by this floor, so
// sigma stays full rank and the recovery map depends continuously on q;
// at the floor the map agrees with the q -> 0 (or q -> 1) limit to well
// below every tolerance used here. Rank deficiency coming from the channel
// itself (e.g. full amplitude damping) is still handled by the
// pseudo-inverse and leaves the map trace non-increasing off the support.
inline constexpr double kReferenceFloor = 1e-9;

struct ReferenceState {
  double q = 0.5;

  DensityMatrix state() const {
    if (q < 0.0 || q > 1.0)
      throw std::invalid_argument("ReferenceState: q must lie in [0, 1]");
    const double qq = std::clamp(q, kReferenceFloor, 1.0 - kReferenceFloor);
    return diagonal_mixture(qq);
  }
};

//=========================================================================
// Petz recovery map
//=========================================================================

// Transpose channel of ch with respect to sigma:
//   R(X) = sigma^{1/2} ch^dagger( ch(sigma)^{-1/2} X ch(sigma)^{-1/2} ) sigma^{1/2}
// realized on Kraus operators as K_i -> sigma^{1/2} K_i^dagger ch(sigma)^{-1/2}.
// When ch(sigma) is rank deficient the pseudo-inverse kills the complement
// of its support and the map is trace preserving only on that support.
inline KrausMap petz_map(const QuantumChannel &ch, const DensityMatrix &sigma) {
  if (ch.dim() != sigma.dim())
    throw std::invalid_argument("petz_map: dimension mismatch");
  const Cmat s_half = matrix_sqrt(sigma.mat());
  const Cmat image = apply_map(ch, sigma.mat());
  const Cmat t_half = matrix_invsqrt_pinv(image);
  std::vector<Cmat> ks;
  ks.reserve(ch.kraus.size());
  for (const Cmat &k : ch.kraus) ks.push_back(s_half * k.adjoint() * t_half);
  return KrausMap{std::move(ks), "petz(" + ch.label + ")"};
}

inline KrausMap petz_map(const QuantumChannel &ch, const ReferenceState &ref) {
  return petz_map(ch, ref.state());
}

// True when ch(sigma) lost rank, i.e. the pseudo-inverse truncated and the
// recovery map is trace non-increasing off the support.
inline bool petz_support_deficient(const QuantumChannel &ch,
                                   const ReferenceState &ref) {
  return psd_rank(apply_map(ch, ref.state().mat())) < ch.dim();
}

//=========================================================================
// Recovery strategies
//=========================================================================

struct RecoveryStrategy {
  enum class Kind { petz, identity, maximally_mixed };

  Kind kind = Kind::identity;
  ReferenceState ref{};

  static RecoveryStrategy petz(double q) {
    return {Kind::petz, ReferenceState{q}};
  }
  static RecoveryStrategy identity() { return {Kind::identity, {}}; }
  static RecoveryStrategy maximally_mixed() {
    return {Kind::maximally_mixed, {}};
  }

  std::string name() const {
    switch (kind) {
      case Kind::petz:
        return "petz";
      case Kind::identity:
        return "identity";
      case Kind::maximally_mixed:
        return "maximally_mixed";
    }
    return "?";
  }
};

// A strategy resolved against a fixed channel, cheap to apply repeatedly.
class Recoverer {
 public:
  Recoverer(const RecoveryStrategy &strategy, const QuantumChannel &ch)
      : kind_(strategy.kind) {
    if (kind_ == RecoveryStrategy::Kind::petz)
      map_.emplace(petz_map(ch, strategy.ref));
  }

  DensityMatrix operator()(const DensityMatrix &rho_out) const {
    switch (kind_) {
      case RecoveryStrategy::Kind::petz:
        return DensityMatrix::unchecked(apply_map(*map_, rho_out.mat()));
      case RecoveryStrategy::Kind::identity:
        return rho_out;
      case RecoveryStrategy::Kind::maximally_mixed:
        return maximally_mixed(rho_out.dim());
    }
    throw std::logic_error("Recoverer: bad strategy kind");
  }

 private:
  RecoveryStrategy::Kind kind_;
  std::optional<KrausMap> map_;
};

inline DensityMatrix recover(const RecoveryStrategy &strategy,
                             const QuantumChannel &ch,
                             const DensityMatrix &rho_out) {
  return Recoverer(strategy, ch)(rho_out);
}

}  // namespace petzlab
