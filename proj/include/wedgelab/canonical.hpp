#pragma once

// Antisymmetric 2-tensors and their canonical (Youla) form.
//
// Coefficient convention: Phi = sum_ij A_ij e_i (x) e_j, so ||Phi|| = ||A||_F,
// and u ^ v = (u (x) v - v (x) u) / sqrt(2). An elementary wedge lambda u ^ v
// therefore contributes (lambda / sqrt 2)(u v^T - v u^T) to A and the singular
// values of A are lambda_k / sqrt 2, each appearing twice.

#include <Eigen/Core>

#include <span>
#include <vector>

#include "wedgelab/fock.hpp"

namespace wedgelab {

struct UpperEntry {
  int i;
  int j;
  cplx value;
};

class AntisymmetricTensor {
 public:
  explicit AntisymmetricTensor(int modes);

  /// Builds A from its strictly-upper entries (i < j).
  static AntisymmetricTensor from_upper(int modes, std::span<const UpperEntry> entries);

  /// Accepts a matrix that is antisymmetric within `tol` (max entry of A + A^T);
  /// keeps the strictly-upper triangle.
  static AntisymmetricTensor from_matrix(const Eigen::MatrixXcd& a, double tol = 1e-12);

  /// Inverse of wedge_amplitudes.
  static AntisymmetricTensor from_wedge_amplitudes(int modes, const Eigen::VectorXcd& amplitudes);

  /// (u (x) v - v (x) u) / sqrt 2.
  static AntisymmetricTensor wedge(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v);

  void set(int i, int j, cplx value);

  [[nodiscard]] int modes() const { return static_cast<int>(a_.rows()); }
  [[nodiscard]] const Eigen::MatrixXcd& matrix() const { return a_; }
  [[nodiscard]] double norm() const { return a_.norm(); }
  [[nodiscard]] AntisymmetricTensor normalized() const;

  /// Components <e_i ^ e_j, Phi> = sqrt 2 A_ij for i < j, in the colex order of
  /// the two-particle sector (0,1), (0,2), (1,2), (0,3), ...
  [[nodiscard]] Eigen::VectorXcd wedge_amplitudes() const;

  AntisymmetricTensor& operator+=(const AntisymmetricTensor& o);
  AntisymmetricTensor& operator*=(cplx s);

 private:
  Eigen::MatrixXcd a_;
};

/// <Phi, Phi'> = tr(A^dagger A').
[[nodiscard]] cplx inner(const AntisymmetricTensor& a, const AntisymmetricTensor& b);

/// Phi = sum_k lambda_k u_k ^ v_k with orthonormal columns u_1, v_1, u_2, v_2, ...
struct CanonicalForm {
  std::vector<double> lambdas;  // descending, non-negative
  Eigen::MatrixXcd vectors;     // d x 2K

  [[nodiscard]] int modes() const { return static_cast<int>(vectors.rows()); }
  [[nodiscard]] int size() const { return static_cast<int>(lambdas.size()); }
  [[nodiscard]] Eigen::VectorXcd u(int k) const { return vectors.col(2 * k); }
  [[nodiscard]] Eigen::VectorXcd v(int k) const { return vectors.col(2 * k + 1); }

  /// lambda_k u_k ^ v_k laid out on e_{2k}, e_{2k+1} of a 2K-mode space.
  static CanonicalForm paired(std::vector<double> lambdas);
};

struct YoulaOptions {
  double norm_tol = 1e-8;
  double antisymmetry_tol = 1e-12;
  double drop_below = 1e-12;  // lambdas below this are discarded
  bool require_normalized = true;
};

/// Canonical form by successive deflation: the top right singular vector x of
/// the remainder R gives v = conj(x), u = R x / ||R x||, and R loses
/// sigma (u v^T - v u^T). x^T R x = 0 for antisymmetric R, so u is
/// orthogonal to v without any pairing recipe inside degenerate clusters.
[[nodiscard]] CanonicalForm youla_decompose(const AntisymmetricTensor& t, const YoulaOptions& opts = {});

/// A = sum_k (lambda_k / sqrt 2)(u_k v_k^T - v_k u_k^T) on `modes` modes.
[[nodiscard]] AntisymmetricTensor reconstruct(const CanonicalForm& c, int modes);
[[nodiscard]] AntisymmetricTensor reconstruct(const CanonicalForm& c);

struct CorrelationMeasures {
  double sum_lambda4;
  double lambda_max;
  double participation;  // 1 / sum_lambda4
};

[[nodiscard]] CorrelationMeasures correlation_measures(const CanonicalForm& c);
[[nodiscard]] CorrelationMeasures correlation_measures(std::span<const double> lambdas);

/// Two-particle sector vector with amplitude sqrt 2 A_ij on mask {i, j}.
[[nodiscard]] SectorVector embed_as_sector_vector(const AntisymmetricTensor& t, const OrbitalBasis& basis);
[[nodiscard]] SectorVector embed_as_sector_vector(const CanonicalForm& c, const OrbitalBasis& basis);

}  // namespace wedgelab
