#pragma once

// Two-body reduced operator gamma_2 of an N-fermion state, represented on
// the antisymmetric subspace with basis e_i ^ e_j (i < j) in two-particle
// sector order. Matrix elements:
//
//   <e_i ^ e_j, gamma_2 e_k ^ e_l> = 2 <Psi, c*_k c*_l c_j c_i Psi>.

#include <Eigen/Core>

#include <vector>

#include "wedgelab/canonical.hpp"
#include "wedgelab/fock.hpp"

namespace wedgelab {

struct TwoBodyOperator {
  int modes = 0;
  int particles = 0;
  Eigen::MatrixXcd matrix;          // C(d,2) x C(d,2), Hermitian
  double hermiticity_defect = 0.0;  // max |G - G^dagger| before averaging

  [[nodiscard]] double trace() const { return matrix.trace().real(); }
};

struct SpectralData {
  Eigen::VectorXd eigenvalues;                    // descending
  std::vector<AntisymmetricTensor> eigenvectors;  // normalized, same order
};

struct Gamma2Options {
  double norm_tol = 1e-10;
  double hermiticity_tol = 1e-10;
};

/// c_j c_i Psi.
[[nodiscard]] SectorVector apply_pair_annihilation(int i, int j, const SectorVector& psi);

/// G = 2 conj(W^dagger W) with columns W_(ij) = c_j c_i Psi.
[[nodiscard]] TwoBodyOperator compute_gamma2(const SectorVector& psi, const Gamma2Options& opts = {});

[[nodiscard]] SpectralData spectral_decompose(const TwoBodyOperator& g);

/// <Phi, gamma_2 Phi> as a quadratic form of G.
[[nodiscard]] double expectation(const AntisymmetricTensor& phi, const TwoBodyOperator& g);

/// <Phi, gamma_2 Phi> = 2 ||B Psi||^2 with B = sum_k lambda_k c(v_k) c(u_k),
/// applied matrix-free; gamma_2 is never assembled.
[[nodiscard]] double expectation_fast(const CanonicalForm& phi, const SectorVector& psi);

/// B Psi for the pair operator of a canonical form (vectors in Psi's basis).
[[nodiscard]] SectorVector apply_canonical_pair_annihilation(const CanonicalForm& phi, const SectorVector& psi);

}  // namespace wedgelab
