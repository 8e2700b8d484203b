#pragma once

#include <Eigen/Core>

namespace wedgelab {

/// e_0 .. e_m of z_1 .. z_m via the one-element-at-a-time recurrence
/// e_j <- e_j + z_i e_{j-1} (j descending). All terms are non-negative for
/// non-negative z, so there is no cancellation.
template <typename Derived>
[[nodiscard]] Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> elementary_symmetric(
    const Eigen::MatrixBase<Derived>& z) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index m = z.size();
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> e = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(m + 1);
  e(0) = Scalar(1);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = i + 1; j >= 1; --j) e(j) += z(i) * e(j - 1);
  return e;
}

}  // namespace wedgelab
