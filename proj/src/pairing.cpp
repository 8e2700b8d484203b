#include "wedgelab/pairing.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wedgelab/symmetric_poly.hpp"

namespace wedgelab {

PairOperator::PairOperator(OrbitalBasis basis, std::vector<double> lambdas, double norm_tol)
    : basis_(std::move(basis)), lambdas_(std::move(lambdas)) {
  if (static_cast<int>(lambdas_.size()) > basis_.pair_count())
    throw DimensionError("more coefficients than pairs in the orbital basis");
  lambdas_.resize(static_cast<std::size_t>(basis_.pair_count()), 0.0);
  double s2 = 0.0;
  for (double l : lambdas_) {
    if (!(l >= 0.0) || !std::isfinite(l)) throw DimensionError("pair coefficients must be finite and non-negative");
    s2 += l * l;
  }
  if (std::abs(s2 - 1.0) > norm_tol)
    throw NormalizationError("pair coefficients must satisfy sum lambda^2 = 1 (got " + std::to_string(s2) + ")");
}

PairOperator PairOperator::standard(std::vector<double> lambdas, double norm_tol) {
  const int k = static_cast<int>(lambdas.size());
  return PairOperator(OrbitalBasis(2 * k), std::move(lambdas), norm_tol);
}

double PairOperator::lambda_max() const { return *std::max_element(lambdas_.begin(), lambdas_.end()); }

double PairOperator::sum_lambda4() const {
  double s = 0.0;
  for (double l : lambdas_) s += l * l * l * l;
  return s;
}

int PairOperator::support_size() const {
  return static_cast<int>(std::count_if(lambdas_.begin(), lambdas_.end(), [](double l) { return l > 0.0; }));
}

int pair_orbital(const OrbitalBasis& basis, int k, Spin s) { return s == Spin::up ? basis.up(k) : basis.down(k); }

Mask orbital_mask(const OrbitalBasis& basis, Mask pairs) {
  Mask m = 0;
  for (; pairs; pairs &= pairs - 1) {
    const int k = std::countr_zero(pairs);
    m |= bit(basis.up(k)) | bit(basis.down(k));
  }
  return m;
}

namespace {

// Sign of c_{k,down} c_{k,up} acting on an orbital mask with both bits set.
int annihilation_pair_sign(Mask m, int up, int down) {
  return fermion_sign(m, up) * fermion_sign(m ^ bit(up), down);
}

// Sign of c*_{k,up} c*_{k,down} acting on an orbital mask with both bits empty.
int creation_pair_sign(Mask m, int up, int down) {
  return fermion_sign(m, down) * fermion_sign(m | bit(down), up);
}

void check_basis(const PairOperator& op, int modes) {
  if (op.modes() != modes) throw DimensionError("pair operator and state differ in mode count");
}

}  // namespace

SectorVector apply_B(const PairOperator& op, const SectorVector& v) {
  check_basis(op, v.modes());
  if (v.particles() < 2) throw SizeError("B needs at least two particles");
  SectorVector out(enumerate_sector(v.modes(), v.particles() - 2));
  const auto states = v.basis().states();
  const auto& basis = op.basis();
  for (std::size_t i = 0; i < states.size(); ++i) {
    const cplx a = v[static_cast<Eigen::Index>(i)];
    if (a == cplx(0)) continue;
    const Mask m = states[i];
    for (int k = 0; k < op.pair_count(); ++k) {
      const double l = op.lambda(k);
      const int u = basis.up(k), d = basis.down(k);
      if (l == 0.0 || !(m & bit(u)) || !(m & bit(d))) continue;
      const Mask t = m ^ bit(u) ^ bit(d);
      out[static_cast<Eigen::Index>(out.basis().index_of(t))] += l * annihilation_pair_sign(m, u, d) * a;
    }
  }
  return out;
}

SectorVector apply_B_star(const PairOperator& op, const SectorVector& v) {
  check_basis(op, v.modes());
  if (v.particles() + 2 > v.modes()) throw SizeError("B* would exceed the mode count");
  SectorVector out(enumerate_sector(v.modes(), v.particles() + 2));
  const auto states = v.basis().states();
  const auto& basis = op.basis();
  for (std::size_t i = 0; i < states.size(); ++i) {
    const cplx a = v[static_cast<Eigen::Index>(i)];
    if (a == cplx(0)) continue;
    const Mask m = states[i];
    for (int k = 0; k < op.pair_count(); ++k) {
      const double l = op.lambda(k);
      const int u = basis.up(k), d = basis.down(k);
      if (l == 0.0 || (m & bit(u)) || (m & bit(d))) continue;
      const Mask t = m | bit(u) | bit(d);
      out[static_cast<Eigen::Index>(out.basis().index_of(t))] += l * creation_pair_sign(m, u, d) * a;
    }
  }
  return out;
}

SectorVector apply_weighted_number(const PairOperator& op, const SectorVector& v) {
  check_basis(op, v.modes());
  SectorVector out = v;
  const auto states = v.basis().states();
  for (std::size_t i = 0; i < states.size(); ++i) {
    double w = 0.0;
    for (int k = 0; k < op.pair_count(); ++k) {
      const double l2 = op.lambda(k) * op.lambda(k);
      if (states[i] & bit(op.basis().up(k))) w += l2;
      if (states[i] & bit(op.basis().down(k))) w += l2;
    }
    out[static_cast<Eigen::Index>(i)] *= w;
  }
  return out;
}

PairVector apply_B(const PairOperator& op, const PairVector& v) {
  if (v.modes() != op.pair_count()) throw DimensionError("pair vector and operator differ in pair count");
  if (v.particles() < 1) throw SizeError("B on the vacuum");
  PairVector out(enumerate_sector(op.pair_count(), v.particles() - 1));
  const auto states = v.basis().states();
  for (std::size_t i = 0; i < states.size(); ++i) {
    const double a = v[static_cast<Eigen::Index>(i)];
    if (a == 0.0) continue;
    const Mask p = states[i];
    const Mask m = orbital_mask(op.basis(), p);
    for (Mask r = p; r; r &= r - 1) {
      const int k = std::countr_zero(r);
      if (op.lambda(k) == 0.0) continue;
      const int s = annihilation_pair_sign(m, op.basis().up(k), op.basis().down(k));
      out[static_cast<Eigen::Index>(out.basis().index_of(p ^ bit(k)))] += op.lambda(k) * s * a;
    }
  }
  return out;
}

PairVector apply_B_star(const PairOperator& op, const PairVector& v) {
  if (v.modes() != op.pair_count()) throw DimensionError("pair vector and operator differ in pair count");
  if (v.particles() + 1 > op.pair_count()) throw SizeError("B* would exceed the pair count");
  PairVector out(enumerate_sector(op.pair_count(), v.particles() + 1));
  const auto states = v.basis().states();
  const Mask all = (Mask{1} << op.pair_count()) - 1;
  for (std::size_t i = 0; i < states.size(); ++i) {
    const double a = v[static_cast<Eigen::Index>(i)];
    if (a == 0.0) continue;
    const Mask p = states[i];
    const Mask m = orbital_mask(op.basis(), p);
    for (Mask r = all & ~p; r; r &= r - 1) {
      const int k = std::countr_zero(r);
      if (op.lambda(k) == 0.0) continue;
      const int s = creation_pair_sign(m, op.basis().up(k), op.basis().down(k));
      out[static_cast<Eigen::Index>(out.basis().index_of(p | bit(k)))] += op.lambda(k) * s * a;
    }
  }
  return out;
}

PairVector apply_weighted_number(const PairOperator& op, const PairVector& v) {
  PairVector out = v;
  const auto states = v.basis().states();
  for (std::size_t i = 0; i < states.size(); ++i) {
    double w = 0.0;
    for (Mask r = states[i]; r; r &= r - 1) {
      const double l = op.lambda(std::countr_zero(r));
      w += 2.0 * l * l;
    }
    out[static_cast<Eigen::Index>(i)] *= w;
  }
  return out;
}

SectorVector embed(const OrbitalBasis& basis, const PairVector& v, const Limits& limits) {
  if (v.modes() != basis.pair_count()) throw DimensionError("pair vector and orbital basis differ in pair count");
  SectorVector out(enumerate_sector(basis.modes(), 2 * v.particles(), limits));
  const auto states = v.basis().states();
  for (std::size_t i = 0; i < states.size(); ++i)
    out[static_cast<Eigen::Index>(out.basis().index_of(orbital_mask(basis, states[i])))] =
        v[static_cast<Eigen::Index>(i)];
  return out;
}

SectorVector PairingState::sector_vector(const Limits& limits) const { return embed(basis, seniority, limits); }

SectorVector PairingState::normalized_sector_vector(const Limits& limits) const {
  if (degenerate) throw NormalizationError("pairing state vanishes (support smaller than M)");
  return sector_vector(limits).normalized();
}

PairVector PairingState::normalized_seniority() const {
  if (degenerate) throw NormalizationError("pairing state vanishes (support smaller than M)");
  return seniority.normalized();
}

std::vector<PairingState> build_pairing_ladder(const PairOperator& op, int max_pairs) {
  if (max_pairs < 0 || max_pairs > op.pair_count())
    throw SizeError("pairing state needs 0 <= M <= K (2M <= d)");
  std::vector<PairingState> ladder;
  PairVector v = vacuum<double>(op.pair_count());
  for (int m = 0; m <= max_pairs; ++m) {
    if (m > 0) v = apply_B_star(op, v);
    PairingState s{m, v, v.squared_norm(), false, op.basis()};
    s.degenerate = s.norm_sq == 0.0;
    ladder.push_back(std::move(s));
  }
  return ladder;
}

PairingState build_pairing_state(const PairOperator& op, int pairs) {
  return std::move(build_pairing_ladder(op, pairs).back());
}

double norm_sq_oracle(const std::vector<double>& lambdas, int pairs) {
  if (pairs < 0) throw SizeError("negative pair count");
  if (pairs > static_cast<int>(lambdas.size())) return 0.0;
  Eigen::VectorXd z(static_cast<Eigen::Index>(lambdas.size()));
  for (std::size_t k = 0; k < lambdas.size(); ++k) z(static_cast<Eigen::Index>(k)) = lambdas[k] * lambdas[k];
  const Eigen::VectorXd e = elementary_symmetric(z);
  double fact = 1.0;
  for (int i = 2; i <= pairs; ++i) fact *= i;
  return fact * fact * e(pairs);
}

double pair_expectation(const PairOperator& op, const PairVector& psi) {
  const double nn = psi.squared_norm();
  if (nn == 0.0) throw NormalizationError("expectation in the zero vector");
  if (psi.particles() == 0) return 0.0;
  return 2.0 * apply_B(op, psi).squared_norm() / nn;
}

IdentityResiduals annihilation_identity_check(const PairOperator& op, int pairs, int k, Spin s) {
  if (k < 0 || k >= op.pair_count()) throw DimensionError("pair index out of range");
  const int d = op.modes();
  const auto ladder = build_pairing_ladder(op, pairs);
  const SectorVector psi = ladder.back().sector_vector();
  const Spin partner = s == Spin::up ? Spin::down : Spin::up;
  const double pm = s == Spin::up ? 1.0 : -1.0;
  const int o = pair_orbital(op.basis(), k, s);
  const int o_bar = pair_orbital(op.basis(), k, partner);
  const double lk = op.lambda(k);

  IdentityResiduals r;
  if (pairs > 0) {
    const SectorVector prev = ladder[static_cast<std::size_t>(pairs - 1)].sector_vector();
    SectorVector diff = apply_annihilate(o, psi);
    diff -= (pm * pairs * lk) * apply_create(o_bar, prev);
    r.annihilation = diff.norm();
  }
  if (2 * pairs + 1 <= d) {
    SectorVector lhs = lk * apply_create(o, psi);
    if (2 * pairs + 2 <= d) lhs += (pm / (pairs + 1)) * apply_annihilate(o_bar, apply_B_star(op, psi));
    r.rearranged = lhs.norm();
  }
  return r;
}

}  // namespace wedgelab
