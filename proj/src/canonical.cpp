#include "wedgelab/canonical.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace wedgelab {

namespace {

const double kSqrt2 = std::sqrt(2.0);

void check_pair(int i, int j, int modes) {
  if (i < 0 || j < 0 || i >= modes || j >= modes) throw DimensionError("tensor index out of range");
  if (i == j) throw NotAntisymmetricError("diagonal entry of an antisymmetric tensor");
}

}  // namespace

AntisymmetricTensor::AntisymmetricTensor(int modes) {
  if (modes < 2) throw DimensionError("antisymmetric tensor needs at least two modes");
  a_ = Eigen::MatrixXcd::Zero(modes, modes);
}

AntisymmetricTensor AntisymmetricTensor::from_upper(int modes, std::span<const UpperEntry> entries) {
  AntisymmetricTensor t(modes);
  for (const auto& e : entries) {
    if (e.i >= e.j) throw DimensionError("expected strictly-upper entry (i < j)");
    t.set(e.i, e.j, e.value);
  }
  return t;
}

AntisymmetricTensor AntisymmetricTensor::from_matrix(const Eigen::MatrixXcd& a, double tol) {
  if (a.rows() != a.cols()) throw DimensionError("tensor matrix must be square");
  const double defect = (a + a.transpose()).cwiseAbs().maxCoeff();
  if (defect > tol) throw NotAntisymmetricError("matrix is not antisymmetric (defect " + std::to_string(defect) + ")");
  AntisymmetricTensor t(static_cast<int>(a.rows()));
  for (int j = 1; j < a.cols(); ++j)
    for (int i = 0; i < j; ++i) t.set(i, j, a(i, j));
  return t;
}

AntisymmetricTensor AntisymmetricTensor::from_wedge_amplitudes(int modes, const Eigen::VectorXcd& amplitudes) {
  if (static_cast<std::uint64_t>(amplitudes.size()) != binomial(modes, 2))
    throw DimensionError("wedge amplitude vector has the wrong length");
  AntisymmetricTensor t(modes);
  Eigen::Index p = 0;
  for (int j = 1; j < modes; ++j)
    for (int i = 0; i < j; ++i) t.set(i, j, amplitudes(p++) / kSqrt2);
  return t;
}

AntisymmetricTensor AntisymmetricTensor::wedge(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) {
  if (u.size() != v.size()) throw DimensionError("wedge factors differ in length");
  const Eigen::MatrixXcd a = (u * v.transpose() - v * u.transpose()) / kSqrt2;
  return from_matrix(a, 1e-12);
}

void AntisymmetricTensor::set(int i, int j, cplx value) {
  check_pair(i, j, modes());
  a_(i, j) = value;
  a_(j, i) = -value;
}

AntisymmetricTensor AntisymmetricTensor::normalized() const {
  const double n = norm();
  if (n == 0.0) throw NormalizationError("cannot normalize the zero tensor");
  AntisymmetricTensor t = *this;
  t.a_ /= n;
  return t;
}

Eigen::VectorXcd AntisymmetricTensor::wedge_amplitudes() const {
  const int d = modes();
  Eigen::VectorXcd out(static_cast<Eigen::Index>(binomial(d, 2)));
  Eigen::Index p = 0;
  for (int j = 1; j < d; ++j)
    for (int i = 0; i < j; ++i) out(p++) = kSqrt2 * a_(i, j);
  return out;
}

AntisymmetricTensor& AntisymmetricTensor::operator+=(const AntisymmetricTensor& o) {
  if (o.modes() != modes()) throw DimensionError("tensor dimension mismatch");
  a_ += o.a_;
  return *this;
}

AntisymmetricTensor& AntisymmetricTensor::operator*=(cplx s) {
  a_ *= s;
  return *this;
}

cplx inner(const AntisymmetricTensor& a, const AntisymmetricTensor& b) {
  if (a.modes() != b.modes()) throw DimensionError("tensor dimension mismatch");
  return (a.matrix().adjoint() * b.matrix()).trace();
}

CanonicalForm CanonicalForm::paired(std::vector<double> lambdas) {
  const auto k = static_cast<Eigen::Index>(lambdas.size());
  return CanonicalForm{std::move(lambdas), Eigen::MatrixXcd::Identity(2 * k, 2 * k)};
}

CanonicalForm youla_decompose(const AntisymmetricTensor& t, const YoulaOptions& opts) {
  const Eigen::MatrixXcd& a = t.matrix();
  const int d = t.modes();
  if (!a.allFinite()) throw NotAntisymmetricError("tensor has non-finite entries");
  if ((a + a.transpose()).cwiseAbs().maxCoeff() > opts.antisymmetry_tol)
    throw NotAntisymmetricError("input is not antisymmetric");
  if (opts.require_normalized && std::abs(t.norm() - 1.0) > opts.norm_tol)
    throw NormalizationError("youla_decompose expects a normalized tensor (norm " + std::to_string(t.norm()) + ")");

  Eigen::MatrixXcd rest = a;
  std::vector<double> lambdas;
  std::vector<Eigen::VectorXcd> cols;
  for (int k = 0; k < d / 2; ++k) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(rest, Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success || !svd.singularValues().allFinite())
      throw ConvergenceError("singular value decomposition failed");
    if (kSqrt2 * svd.singularValues()(0) < opts.drop_below) break;
    const Eigen::VectorXcd x = svd.matrixV().col(0);
    const Eigen::VectorXcd image = rest * x;
    const double sigma = image.norm();
    if (kSqrt2 * sigma < opts.drop_below) break;
    const Eigen::VectorXcd u = image / sigma;
    const Eigen::VectorXcd v = x.conjugate();
    rest -= sigma * (u * v.transpose() - v * u.transpose());
    lambdas.push_back(kSqrt2 * sigma);
    cols.push_back(u);
    cols.push_back(v);
  }

  // Deflation yields descending order up to roundoff inside degenerate clusters.
  std::vector<std::size_t> order(lambdas.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return lambdas[x] > lambdas[y]; });

  CanonicalForm out;
  out.vectors.resize(d, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t n = 0; n < order.size(); ++n) {
    out.lambdas.push_back(lambdas[order[n]]);
    out.vectors.col(static_cast<Eigen::Index>(2 * n)) = cols[2 * order[n]];
    out.vectors.col(static_cast<Eigen::Index>(2 * n + 1)) = cols[2 * order[n] + 1];
  }
  return out;
}

AntisymmetricTensor reconstruct(const CanonicalForm& c, int modes) {
  if (c.vectors.cols() != 2 * static_cast<Eigen::Index>(c.lambdas.size()))
    throw DimensionError("canonical form needs two vectors per coefficient");
  if (c.modes() != modes) throw DimensionError("canonical vectors do not match the requested mode count");
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(modes, modes);
  for (int k = 0; k < c.size(); ++k) {
    const Eigen::VectorXcd u = c.u(k);
    const Eigen::VectorXcd v = c.v(k);
    a += (c.lambdas[k] / kSqrt2) * (u * v.transpose() - v * u.transpose());
  }
  // Exact antisymmetry: keep the upper triangle.
  AntisymmetricTensor t(modes);
  for (int j = 1; j < modes; ++j)
    for (int i = 0; i < j; ++i) t.set(i, j, a(i, j));
  return t;
}

AntisymmetricTensor reconstruct(const CanonicalForm& c) { return reconstruct(c, c.modes()); }

CorrelationMeasures correlation_measures(std::span<const double> lambdas) {
  if (lambdas.empty()) throw DimensionError("empty coefficient list");
  double s4 = 0.0;
  double mx = 0.0;
  for (double l : lambdas) {
    if (l < 0.0) throw DimensionError("negative canonical coefficient");
    s4 += l * l * l * l;
    mx = std::max(mx, l);
  }
  return {s4, mx, 1.0 / s4};
}

CorrelationMeasures correlation_measures(const CanonicalForm& c) { return correlation_measures(c.lambdas); }

SectorVector embed_as_sector_vector(const AntisymmetricTensor& t, const OrbitalBasis& basis) {
  if (t.modes() != basis.modes()) throw DimensionError("tensor and orbital basis differ in mode count");
  // wedge_amplitudes is already in two-particle sector order.
  return SectorVector(enumerate_sector(basis.modes(), 2), t.wedge_amplitudes());
}

SectorVector embed_as_sector_vector(const CanonicalForm& c, const OrbitalBasis& basis) {
  return embed_as_sector_vector(reconstruct(c, basis.modes()), basis);
}

}  // namespace wedgelab
