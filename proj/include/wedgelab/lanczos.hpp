#pragma once

// Largest eigenvalue of a Hermitian operator given only as a mat-vec.
// Plain Lanczos with full reorthogonalization; the Krylov basis is kept in
// memory so the dimension cap in Limits bounds the footprint.

#include <Eigen/Core>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>

#include "wedgelab/errors.hpp"

namespace wedgelab {

struct LanczosOptions {
  int max_iterations = 300;
  double tol = 1e-13;  // residual bound, relative to max(1, |theta|)
  std::uint64_t seed = 0x5eed;
};

struct LanczosResult {
  double eigenvalue = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

template <typename Scalar, typename Apply>
[[nodiscard]] LanczosResult lanczos_largest(Apply&& apply, Eigen::Index n, const LanczosOptions& opts = {}) {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  if (n <= 0) return {};
  const Eigen::Index m_max = std::min<Eigen::Index>(n, opts.max_iterations);
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> q(n, m_max);

  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Vector start(n);
  for (Eigen::Index i = 0; i < n; ++i) start(i) = Scalar(unif(rng));
  q.col(0) = start.normalized();

  std::vector<double> alpha;
  std::vector<double> beta;
  LanczosResult res;
  for (Eigen::Index j = 0; j < m_max; ++j) {
    Vector w = apply(Vector(q.col(j)));
    const double a = std::real(q.col(j).dot(w));
    alpha.push_back(a);
    // Full reorthogonalization, two passes.
    for (int pass = 0; pass < 2; ++pass) w -= q.leftCols(j + 1) * (q.leftCols(j + 1).adjoint() * w);
    const double b = w.norm();

    const auto k = static_cast<Eigen::Index>(alpha.size());
    Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alpha.data(), k);
    Eigen::VectorXd off = k > 1 ? Eigen::VectorXd(Eigen::Map<Eigen::VectorXd>(beta.data(), k - 1))
                                : Eigen::VectorXd();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
    tri.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
    if (tri.info() != Eigen::Success) throw ConvergenceError("tridiagonal eigensolver failed");
    const double theta = tri.eigenvalues()(k - 1);
    const double resid = b * std::abs(tri.eigenvectors()(k - 1, k - 1));
    res = {theta, resid, static_cast<int>(k)};
    if (resid <= opts.tol * std::max(1.0, std::abs(theta)) || b <= 1e-300 || j + 1 == m_max) {
      if (resid > 1e-9 * std::max(1.0, std::abs(theta)) && j + 1 == m_max && m_max < n)
        throw ConvergenceError("Lanczos did not converge within the iteration budget");
      return res;
    }
    beta.push_back(b);
    q.col(j + 1) = w / b;
  }
  return res;
}

}  // namespace wedgelab
