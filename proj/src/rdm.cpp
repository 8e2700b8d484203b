#include "wedgelab/rdm.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>

namespace wedgelab {

SectorVector apply_pair_annihilation(int i, int j, const SectorVector& psi) {
  return apply_annihilate(j, apply_annihilate(i, psi));
}

TwoBodyOperator compute_gamma2(const SectorVector& psi, const Gamma2Options& opts) {
  const int d = psi.modes();
  const int n = psi.particles();
  if (n < 2) throw SizeError("gamma_2 needs at least two particles");
  if (std::abs(psi.norm() - 1.0) > opts.norm_tol)
    throw NormalizationError("compute_gamma2 expects a normalized state (norm " + std::to_string(psi.norm()) + ")");

  const SectorHandle target = enumerate_sector(d, n - 2);
  const SectorHandle pairs = enumerate_sector(d, 2);
  Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(target->size()),
                                              static_cast<Eigen::Index>(pairs->size()));
  const auto states = psi.basis().states();
  for (std::size_t s = 0; s < states.size(); ++s) {
    const cplx a = psi[static_cast<Eigen::Index>(s)];
    if (a == cplx(0)) continue;
    const Mask m = states[s];
    for (Mask ri = m; ri; ri &= ri - 1) {
      const int i = std::countr_zero(ri);
      const Mask mi = m ^ bit(i);
      const int si = fermion_sign(m, i);
      for (Mask rj = mi & ~(bit(i + 1) - 1); rj; rj &= rj - 1) {
        const int j = std::countr_zero(rj);
        const Mask mij = mi ^ bit(j);
        const auto row = static_cast<Eigen::Index>(target->index_of(mij));
        const auto col = static_cast<Eigen::Index>(pairs->index_of(bit(i) | bit(j)));
        w(row, col) += static_cast<double>(si * fermion_sign(mi, j)) * a;
      }
    }
  }

  TwoBodyOperator g;
  g.modes = d;
  g.particles = n;
  const Eigen::MatrixXcd gram = 2.0 * (w.adjoint() * w).conjugate();
  g.hermiticity_defect = gram.size() ? (gram - gram.adjoint()).cwiseAbs().maxCoeff() : 0.0;
  if (g.hermiticity_defect > opts.hermiticity_tol)
    throw NumericalError("gamma_2 failed the Hermiticity check (defect " + std::to_string(g.hermiticity_defect) + ")");
  g.matrix = 0.5 * (gram + gram.adjoint());
  return g;
}

SpectralData spectral_decompose(const TwoBodyOperator& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g.matrix);
  if (es.info() != Eigen::Success) throw ConvergenceError("gamma_2 eigensolver did not converge");
  const Eigen::Index p = g.matrix.rows();
  SpectralData out;
  out.eigenvalues.resize(p);
  out.eigenvectors.reserve(static_cast<std::size_t>(p));
  for (Eigen::Index k = 0; k < p; ++k) {
    const Eigen::Index src = p - 1 - k;  // solver returns ascending
    out.eigenvalues(k) = es.eigenvalues()(src);
    out.eigenvectors.push_back(AntisymmetricTensor::from_wedge_amplitudes(g.modes, es.eigenvectors().col(src)));
  }
  return out;
}

double expectation(const AntisymmetricTensor& phi, const TwoBodyOperator& g) {
  if (phi.modes() != g.modes) throw DimensionError("tensor and gamma_2 differ in mode count");
  const Eigen::VectorXcd a = phi.wedge_amplitudes();
  const cplx q = a.dot(g.matrix * a);
  if (std::abs(q.imag()) > 1e-10 * std::max(1.0, std::abs(q)))
    throw NumericalError("quadratic form of a Hermitian operator has an imaginary part");
  return q.real();
}

SectorVector apply_canonical_pair_annihilation(const CanonicalForm& phi, const SectorVector& psi) {
  if (phi.modes() != psi.modes()) throw DimensionError("canonical vectors are not expressed in the state's basis");
  if (psi.particles() < 2) throw SizeError("pair annihilation needs at least two particles");
  SectorVector out(enumerate_sector(psi.modes(), psi.particles() - 2));
  for (int k = 0; k < phi.size(); ++k) {
    if (phi.lambdas[k] == 0.0) continue;
    out += phi.lambdas[k] * apply_annihilate(phi.v(k), apply_annihilate(phi.u(k), psi));
  }
  return out;
}

double expectation_fast(const CanonicalForm& phi, const SectorVector& psi) {
  return 2.0 * apply_canonical_pair_annihilation(phi, psi).squared_norm();
}

}  // namespace wedgelab
