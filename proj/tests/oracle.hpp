#pragma once

// Independent reference implementations for the tests. Operators are built as
// dense Jordan-Wigner matrices on the full 2^d Fock space by Kronecker
// products, so none of the bit-twiddling sign code of the library is reused.

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <vector>

#include "wedgelab/fock.hpp"

namespace oracle {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using cplx = std::complex<double>;

// Full-space index of an occupation pattern is the mask itself. The first
// Kronecker factor carries the most significant bit, i.e. the last orbital.
inline Mat annihilator(int modes, int orbital) {
  Mat a(2, 2);
  a << 0, 1, 0, 0;
  Mat z(2, 2);
  z << 1, 0, 0, -1;
  const Mat id = Mat::Identity(2, 2);
  Mat out = Mat::Identity(1, 1);
  for (int j = modes - 1; j >= 0; --j) {
    const Mat& f = j < orbital ? z : (j == orbital ? a : id);
    out = Eigen::kroneckerProduct(out, f).eval();
  }
  return out;
}

inline std::vector<Mat> annihilators(int modes) {
  std::vector<Mat> c;
  for (int i = 0; i < modes; ++i) c.push_back(annihilator(modes, i));
  return c;
}

inline Vec to_full(const wedgelab::SectorVector& v) {
  Vec out = Vec::Zero(Eigen::Index{1} << v.modes());
  const auto states = v.basis().states();
  for (std::size_t i = 0; i < states.size(); ++i) out(static_cast<Eigen::Index>(states[i])) = v[static_cast<Eigen::Index>(i)];
  return out;
}

inline std::vector<std::pair<int, int>> pair_list(int modes) {
  std::vector<std::pair<int, int>> p;
  for (int j = 1; j < modes; ++j)
    for (int i = 0; i < j; ++i) p.emplace_back(i, j);  // colex
  return p;
}

// G_(ij),(kl) = 2 <c_l c_k Psi, c_j c_i Psi>.
inline Mat gamma2(const std::vector<Mat>& c, const Vec& psi) {
  const auto pairs = pair_list(static_cast<int>(c.size()));
  std::vector<Vec> w;
  for (auto [i, j] : pairs) w.push_back(c[j] * (c[i] * psi));
  const auto n = static_cast<Eigen::Index>(pairs.size());
  Mat g(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b) g(a, b) = 2.0 * w[b].dot(w[a]);
  return g;
}

// B = sum_k lambda_k c_{2k+1} c_{2k} in the standard layout.
inline Mat pair_operator(const std::vector<Mat>& c, const std::vector<double>& lam) {
  Mat b = Mat::Zero(c[0].rows(), c[0].cols());
  for (std::size_t k = 0; k < lam.size(); ++k) b += lam[k] * c[2 * k + 1] * c[2 * k];
  return b;
}

// Restriction of a full-space operator to the N-particle sector, rows and
// columns in ascending mask order.
inline Mat restrict_to(const Mat& op, int particles) {
  std::vector<Eigen::Index> idx;
  for (Eigen::Index m = 0; m < op.rows(); ++m)
    if (std::popcount(static_cast<unsigned long long>(m)) == particles) idx.push_back(m);
  Mat out(static_cast<Eigen::Index>(idx.size()), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t r = 0; r < idx.size(); ++r)
    for (std::size_t s = 0; s < idx.size(); ++s) out(r, s) = op(idx[r], idx[s]);
  return out;
}

inline double top_eigenvalue(const Mat& h) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(h.rows() - 1);
}

// (M!)^2 sum over M-subsets of prod lambda^2, by explicit subset enumeration.
inline double norm_sq_by_subsets(const std::vector<double>& lam, int pairs) {
  const int k = static_cast<int>(lam.size());
  double sum = 0.0;
  for (unsigned s = 0; s < (1u << k); ++s) {
    if (std::popcount(s) != pairs) continue;
    double p = 1.0;
    for (int i = 0; i < k; ++i)
      if (s >> i & 1u) p *= lam[static_cast<std::size_t>(i)] * lam[static_cast<std::size_t>(i)];
    sum += p;
  }
  double f = 1.0;
  for (int i = 2; i <= pairs; ++i) f *= i;
  return f * f * sum;
}

inline std::vector<double> unit(std::vector<double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  for (double& x : v) x /= std::sqrt(s);
  return v;
}

inline std::vector<double> uniform(int k) { return std::vector<double>(static_cast<std::size_t>(k), 1.0 / std::sqrt(k)); }

inline std::vector<double> geometric(double r, int k) {
  std::vector<double> v;
  for (int i = 0; i < k; ++i) v.push_back(std::pow(r, i));
  return unit(v);
}

inline std::vector<double> harmonic(int k) {
  std::vector<double> v;
  for (int i = 1; i <= k; ++i) v.push_back(1.0 / i);
  return unit(v);
}

}  // namespace oracle
