#pragma once

// Pair operator B = sum_k lambda_k c_{k,down} c_{k,up} and the generalized
// Yang pairing states Psi_M = (B*)^M Omega.
//
// Pairing states live in the seniority-zero subspace (every pair empty or
// doubly occupied). They are stored over pair-occupation masks: bit k of a
// PairVector basis state means pair k is doubly occupied. Fermionic signs
// are taken from the corresponding orbital mask, so any pair_map works.

#include <Eigen/Core>

#include <vector>

#include "wedgelab/fock.hpp"

namespace wedgelab {

enum class Spin { up, down };

/// Amplitudes over pair-occupation masks (sector of K "pair modes" with M pairs).
using PairVector = BasicSectorVector<double>;

class PairOperator {
 public:
  /// lambdas may be shorter than the pair count; missing entries are zero.
  PairOperator(OrbitalBasis basis, std::vector<double> lambdas, double norm_tol = 1e-10);

  /// Standard layout on 2 * lambdas.size() modes.
  static PairOperator standard(std::vector<double> lambdas, double norm_tol = 1e-10);

  [[nodiscard]] const OrbitalBasis& basis() const { return basis_; }
  [[nodiscard]] const std::vector<double>& lambdas() const { return lambdas_; }
  [[nodiscard]] double lambda(int k) const { return lambdas_[static_cast<std::size_t>(k)]; }
  [[nodiscard]] int pair_count() const { return basis_.pair_count(); }
  [[nodiscard]] int modes() const { return basis_.modes(); }
  [[nodiscard]] double lambda_max() const;
  [[nodiscard]] double sum_lambda4() const;
  [[nodiscard]] int support_size() const;

 private:
  OrbitalBasis basis_;
  std::vector<double> lambdas_;
};

/// B v, (d, N) -> (d, N - 2).
[[nodiscard]] SectorVector apply_B(const PairOperator& op, const SectorVector& v);

/// B* v, (d, N) -> (d, N + 2). Adjoint of apply_B.
[[nodiscard]] SectorVector apply_B_star(const PairOperator& op, const SectorVector& v);

/// sum_k lambda_k^2 (n_{k,up} + n_{k,down}) v.
[[nodiscard]] SectorVector apply_weighted_number(const PairOperator& op, const SectorVector& v);

/// c_{k,sigma} and c*_{k,sigma} in the pair layout of `basis`.
[[nodiscard]] int pair_orbital(const OrbitalBasis& basis, int k, Spin s);

/// Orbital mask of a pair-occupation mask.
[[nodiscard]] Mask orbital_mask(const OrbitalBasis& basis, Mask pairs);

/// B and B* restricted to seniority-zero vectors.
[[nodiscard]] PairVector apply_B(const PairOperator& op, const PairVector& v);
[[nodiscard]] PairVector apply_B_star(const PairOperator& op, const PairVector& v);

/// sum_k lambda_k^2 (n_{k,up} + n_{k,down}) on seniority-zero vectors.
[[nodiscard]] PairVector apply_weighted_number(const PairOperator& op, const PairVector& v);

/// Embeds a seniority-zero vector into the full (d, 2M) sector.
[[nodiscard]] SectorVector embed(const OrbitalBasis& basis, const PairVector& v, const Limits& limits = {});

struct PairingState {
  int pairs = 0;              // M
  PairVector seniority;       // Psi_M over pair-occupation masks (unnormalized)
  double norm_sq = 0.0;       // ||Psi_M||^2
  bool degenerate = false;    // Psi_M = 0: fewer than M nonzero lambdas
  OrbitalBasis basis{2};

  /// Psi_M in the full (d, 2M) sector.
  [[nodiscard]] SectorVector sector_vector(const Limits& limits = {}) const;
  /// Psi_M / ||Psi_M||. Throws on a degenerate state.
  [[nodiscard]] SectorVector normalized_sector_vector(const Limits& limits = {}) const;
  [[nodiscard]] PairVector normalized_seniority() const;
};

/// Psi_M = (B*)^M Omega built on the seniority basis.
[[nodiscard]] PairingState build_pairing_state(const PairOperator& op, int pairs);

/// Psi_0 .. Psi_{max_pairs}, sharing the intermediate applications.
[[nodiscard]] std::vector<PairingState> build_pairing_ladder(const PairOperator& op, int max_pairs);

/// (M!)^2 e_M(lambda_1^2, ..., lambda_K^2); zero when M > K.
[[nodiscard]] double norm_sq_oracle(const std::vector<double>& lambdas, int pairs);

/// 2 <Psi, B* B Psi> / <Psi, Psi> for a seniority-zero Psi.
[[nodiscard]] double pair_expectation(const PairOperator& op, const PairVector& psi);

struct IdentityResiduals {
  double annihilation = 0.0;  // || c_{k,s} Psi_M -/+ M lambda_k c*_{k,s'} Psi_{M-1} ||
  double rearranged = 0.0;    // || (lambda_k c*_{k,s} +/- (M+1)^{-1} c_{k,s'} B*) Psi_M ||
};

/// Residuals of the two pairing-state identities for mode (k, s), where
/// (s', +/-) = (down, +) for s = up and (up, -) for s = down.
[[nodiscard]] IdentityResiduals annihilation_identity_check(const PairOperator& op, int pairs, int k, Spin s);

}  // namespace wedgelab
