#include "wedgelab/bounds.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "wedgelab/lanczos.hpp"

namespace wedgelab {

std::string_view to_string(CheckKind k) {
  switch (k) {
    case CheckKind::thm1: return "thm1";
    case CheckKind::thm2: return "thm2";
    case CheckKind::prop_BB: return "prop_BB";
    case CheckKind::prop_occupation: return "prop_occupation";
    case CheckKind::norm_recursion: return "norm_recursion";
    case CheckKind::counterexample: return "counterexample";
    case CheckKind::conjecture: return "conjecture";
  }
  return "unknown";
}

double theorem1_rhs(int particles, double sum_lambda4) {
  if (particles < 2) throw std::domain_error("theorem1_rhs requires N >= 2");
  if (!(sum_lambda4 > 0.0) || sum_lambda4 > 1.0 + 1e-12)
    throw std::domain_error("theorem1_rhs requires sum lambda^4 in (0, 1]");
  return particles / (1.0 + 0.5 * (particles - 2) * sum_lambda4);
}

double asymptotic_expansion(int particles, double sum_lambda4) {
  return particles * (1.0 - 0.5 * (particles - 2) * sum_lambda4);
}

double theorem2_bound(int particles, double sum_lambda4, double lambda_max) {
  const double x = particles * lambda_max * lambda_max;
  return particles * (1.0 - 0.5 * (particles - 2) * sum_lambda4 - 0.5 * x * x);
}

namespace {

constexpr double kLambdaNormTol = 1e-8;

double top_eigenvalue(const Eigen::MatrixXd& h) {
  if (h.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw ConvergenceError("dense eigensolver did not converge");
  return es.eigenvalues()(h.rows() - 1);
}

double bottom_eigenvalue(const Eigen::MatrixXd& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw ConvergenceError("dense eigensolver did not converge");
  return es.eigenvalues()(0);
}

// Largest sector used to cross-check the seniority sup in explore_conjecture.
constexpr std::uint64_t kSeniorityCrossCheckDim = 500;

// Seniority-zero configurations with `pairs` pairs avoiding `excluded`.
std::vector<Mask> pair_configurations(int k, int pairs, Mask excluded) {
  std::vector<Mask> out;
  const SectorBasis basis(k, pairs);
  for (Mask s : basis.states())
    if (!(s & excluded)) out.push_back(s);
  return out;
}

// B* B on pair configurations in the standard layout, where every pair
// transfer carries sign +1 whatever the broken (singly occupied) pairs are.
Eigen::MatrixXd pair_transfer_matrix(const std::vector<double>& lam, const std::vector<Mask>& configs, Mask excluded) {
  const int k = static_cast<int>(lam.size());
  std::unordered_map<Mask, Eigen::Index> index;
  for (std::size_t i = 0; i < configs.size(); ++i) index.emplace(configs[i], static_cast<Eigen::Index>(i));
  const auto n = static_cast<Eigen::Index>(configs.size());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  const Mask all = (k >= 64) ? ~Mask{0} : (Mask{1} << k) - 1;
  for (Eigen::Index c = 0; c < n; ++c) {
    const Mask s = configs[static_cast<std::size_t>(c)];
    for (Mask r = s; r; r &= r - 1) {
      const int from = std::countr_zero(r);
      const Mask base = s ^ bit(from);
      for (Mask f = all & ~base & ~excluded; f; f &= f - 1) {
        const int to = std::countr_zero(f);
        h(index.at(base | bit(to)), c) += lam[static_cast<std::size_t>(from)] * lam[static_cast<std::size_t>(to)];
      }
    }
  }
  return h;
}

std::vector<double> checked_lambdas(const CanonicalForm& phi) {
  if (phi.lambdas.empty()) throw DimensionError("canonical form has no coefficients");
  return phi.lambdas;
}

double lanczos_budget_check(std::size_t dim, const Limits& limits) {
  if (dim > limits.max_sector_dim) throw SizeError("sector exceeds the iterative dimension cap");
  return static_cast<double>(dim);
}

}  // namespace

std::vector<TheoremReport> verify_theorem1(const SpectralData& spectral, int particles, double tol) {
  std::vector<TheoremReport> out;
  for (Eigen::Index i = 0; i < spectral.eigenvalues.size(); ++i) {
    const double lam = spectral.eigenvalues(i);
    if (lam <= tol) continue;
    const auto& phi = spectral.eigenvectors[static_cast<std::size_t>(i)];
    const CanonicalForm cf = youla_decompose(phi);
    const auto m = correlation_measures(cf);
    TheoremReport r;
    r.kind = CheckKind::thm1;
    r.modes = phi.modes();
    r.particles = particles;
    r.observed = lam;
    r.bound = theorem1_rhs(particles, std::min(m.sum_lambda4, 1.0));
    r.margin = r.bound - lam;
    r.tolerance = tol;
    r.pass = r.margin >= -tol;
    r.details = {{"eigen_index", static_cast<double>(i)},
                 {"sum_lambda4", m.sum_lambda4},
                 {"lambda_max", m.lambda_max},
                 {"canonical_rank", static_cast<double>(cf.size())},
                 {"yang_margin", particles - lam}};
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<TheoremReport> verify_theorem1(const SectorVector& psi, double tol) {
  return verify_theorem1(spectral_decompose(compute_gamma2(psi)), psi.particles(), tol);
}

TheoremReport verify_theorem2(const CanonicalForm& phi, int particles, double tol, bool require_admissible) {
  const auto lam = checked_lambdas(phi);
  const auto m = correlation_measures(lam);
  const int k = static_cast<int>(lam.size());
  TheoremReport r;
  r.kind = CheckKind::thm2;
  r.modes = 2 * k;
  r.particles = particles;
  r.tolerance = tol;
  const double x = particles * m.lambda_max * m.lambda_max;
  const bool admissible = x <= 1.0 + 1e-12;
  r.details = {{"sum_lambda4", m.sum_lambda4},
               {"lambda_max", m.lambda_max},
               {"n_lambda_max_sq", x},
               {"admissible", admissible ? 1.0 : 0.0}};
  r.bound = theorem2_bound(particles, m.sum_lambda4, m.lambda_max);

  if (particles < 2 || particles % 2 != 0) {
    r.skipped = true;
    r.note = "N must be a positive even integer";
    return r;
  }
  if (particles / 2 > k) {
    r.skipped = true;
    r.note = "support of lambda smaller than N/2";
    return r;
  }
  if (!admissible && require_admissible) {
    r.skipped = true;
    r.note = "N lambda_max^2 > 1";
    return r;
  }
  const PairOperator op = PairOperator::standard(lam, kLambdaNormTol);
  const PairingState st = build_pairing_state(op, particles / 2);
  if (st.degenerate) {
    r.skipped = true;
    r.note = "pairing state vanishes";
    return r;
  }
  r.observed = pair_expectation(op, st.seniority);
  r.margin = r.observed - r.bound;
  r.pass = r.margin >= -tol;
  r.details["norm_sq"] = st.norm_sq;
  if (!admissible) r.note = "outside N lambda_max^2 <= 1; evaluated anyway";
  return r;
}

PropositionGap proposition_gap(const PairOperator& op, int particles, GapMethod method, const Limits& limits) {
  if (particles < 2 || particles % 2 != 0) throw DimensionError("proposition_gap needs even N >= 2");
  const int d = op.modes();
  const int k = op.pair_count();
  if (particles > d) throw SizeError("N exceeds the mode count");
  const double c0 = 0.5 * particles;
  const double c1 = 0.25 * (particles - 2);

  PropositionGap out;
  if (method == GapMethod::automatic)
    method = binomial(d, particles) <= limits.max_dense_dim ? GapMethod::dense : GapMethod::blocks;
  out.method = method;

  if (method == GapMethod::dense) {
    if (binomial(d, particles) > limits.max_dense_dim) throw SizeError("sector too large for dense D");
    const SectorHandle sec = enumerate_sector(d, particles, limits);
    const Eigen::MatrixXcd dmat = dense_operator<cplx>(sec, sec, [&](const SectorVector& v) {
      SectorVector w = c0 * v;
      w -= c1 * apply_weighted_number(op, v);
      w -= apply_B_star(op, apply_B(op, v));
      return w;
    });
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dmat, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw ConvergenceError("dense eigensolver did not converge");
    out.min_eigenvalue = es.eigenvalues()(0);
  } else {
    // Blocks labelled by the set T of broken pairs; |T| = s has N - s even.
    const auto& lam = op.lambdas();
    double best = std::numeric_limits<double>::infinity();
    for (int s = 0; s <= std::min(particles, k); s += 2) {
      const int pairs = (particles - s) / 2;
      if (pairs > k - s) continue;
      const SectorBasis broken_sets(k, s);
      for (Mask t : broken_sets.states()) {
        double broken = 0.0;
        for (Mask r = t; r; r &= r - 1) broken += lam[static_cast<std::size_t>(std::countr_zero(r))] *
                                                  lam[static_cast<std::size_t>(std::countr_zero(r))];
        const auto configs = pair_configurations(k, pairs, t);
        if (configs.size() > limits.max_dense_dim) throw SizeError("pair block too large for dense D");
        Eigen::MatrixXd h = -pair_transfer_matrix(lam, configs, t);
        for (std::size_t i = 0; i < configs.size(); ++i) {
          double w = broken;
          for (Mask r = configs[i]; r; r &= r - 1) {
            const double l = lam[static_cast<std::size_t>(std::countr_zero(r))];
            w += 2.0 * l * l;
          }
          h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) += c0 - c1 * w;
        }
        best = std::min(best, bottom_eigenvalue(h));
      }
    }
    out.min_eigenvalue = best;
  }

  const PairingState st = build_pairing_state(op, particles / 2);
  out.degenerate = st.degenerate;
  if (!st.degenerate) {
    const PairVector& psi = st.seniority;
    PairVector dpsi = c0 * psi;
    dpsi -= c1 * apply_weighted_number(op, psi);
    dpsi -= apply_B_star(op, apply_B(op, psi));
    out.kernel_residual = dpsi.norm() / psi.norm();
  }
  return out;
}

std::vector<TheoremReport> eigenvector_occupation_check(const SectorVector& psi, const SpectralData& spectral,
                                                        double tol) {
  if (std::abs(psi.norm() - 1.0) > 1e-10) throw NormalizationError("occupation check expects a normalized state");
  std::vector<TheoremReport> out;
  for (Eigen::Index i = 0; i < spectral.eigenvalues.size(); ++i) {
    const double big_lambda = spectral.eigenvalues(i);
    if (big_lambda <= tol) continue;
    const auto& phi = spectral.eigenvectors[static_cast<std::size_t>(i)];
    if (phi.modes() != psi.modes()) throw DimensionError("eigenvector and state differ in mode count");
    const CanonicalForm cf = youla_decompose(phi);

    TheoremReport r;
    r.kind = CheckKind::prop_occupation;
    r.modes = psi.modes();
    r.particles = psi.particles();
    r.tolerance = tol;
    r.margin = std::numeric_limits<double>::infinity();
    int worst_k = -1;
    int worst_spin = 0;
    for (int k = 0; k < cf.size(); ++k) {
      const double need = 0.5 * big_lambda * cf.lambdas[k] * cf.lambdas[k];
      const double occ[2] = {apply_annihilate(cf.u(k), psi).squared_norm(),
                             apply_annihilate(cf.v(k), psi).squared_norm()};
      for (int s = 0; s < 2; ++s) {
        if (occ[s] - need < r.margin) {
          r.margin = occ[s] - need;
          r.observed = occ[s];
          r.bound = need;
          worst_k = k;
          worst_spin = s;
        }
      }
    }
    if (worst_k < 0) continue;
    r.pass = r.margin >= -tol;
    r.details = {{"eigen_index", static_cast<double>(i)},
                 {"eigenvalue", big_lambda},
                 {"worst_pair", static_cast<double>(worst_k)},
                 {"worst_spin_down", static_cast<double>(worst_spin)}};
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<TheoremReport> norm_recursion_check(const PairOperator& op, int max_pairs, double tol) {
  if (max_pairs > op.pair_count()) throw SizeError("M_max exceeds the pair count");
  const auto ladder = build_pairing_ladder(op, max_pairs);
  const double lmax = op.lambda_max();
  const double s4 = op.sum_lambda4();
  std::vector<TheoremReport> out;
  for (int m = 1; m <= max_pairs; ++m) {
    const double prev = ladder[static_cast<std::size_t>(m - 1)].norm_sq;
    const double cur = ladder[static_cast<std::size_t>(m)].norm_sq;
    const double oracle = norm_sq_oracle(op.lambdas(), m);
    TheoremReport r;
    r.kind = CheckKind::norm_recursion;
    r.modes = op.modes();
    r.particles = 2 * m;
    r.tolerance = tol;
    const double rel = std::abs(cur - oracle) / std::max(oracle, std::numeric_limits<double>::min());
    r.details = {{"pairs", static_cast<double>(m)},
                 {"norm_sq", cur},
                 {"norm_sq_prev", prev},
                 {"oracle_norm_sq", oracle},
                 {"oracle_rel_error", cur == oracle ? 0.0 : rel}};
    if (prev == 0.0) {
      r.skipped = true;
      r.note = "Psi_{M-1} vanishes";
      out.push_back(std::move(r));
      continue;
    }
    const double ratio = cur / (m * prev);
    const double lower = 1.0 - (m - 1) * lmax * lmax;
    r.observed = ratio;
    r.bound = lower;
    r.margin = std::min(ratio - lower, 1.0 - ratio);
    r.pass = r.margin >= -tol && r.details["oracle_rel_error"] <= tol;
    r.details["upper"] = 1.0;
    // Second-order remainder of the ratio around 1 - (M-1) sum lambda^4,
    // scaled by (N lambda_max^2)^2 with N = 2M. Reported, never asserted.
    const double resid = ratio - (1.0 - (m - 1) * s4);
    const double x = 2.0 * m * lmax * lmax;
    r.details["second_order_residual"] = resid;
    r.details["second_order_scaled"] = resid / (x * x);
    out.push_back(std::move(r));
  }
  return out;
}

double pairing_block_top(const std::vector<double>& lambdas, int pairs, const Limits& limits) {
  const int k = static_cast<int>(lambdas.size());
  if (pairs <= 0 || pairs > k) return 0.0;
  const std::size_t dim = binomial(k, pairs);
  if (dim <= limits.max_dense_dim) {
    const auto configs = pair_configurations(k, pairs, 0);
    return top_eigenvalue(pair_transfer_matrix(lambdas, configs, 0));
  }
  lanczos_budget_check(dim, limits);
  const PairOperator op = PairOperator::standard(lambdas, kLambdaNormTol);
  const SectorHandle sec = enumerate_sector(k, pairs, Limits{std::max(limits.max_modes, k), limits.max_sector_dim,
                                                             limits.max_dense_dim});
  auto apply = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    return apply_B_star(op, apply_B(op, PairVector(sec, x))).amplitudes();
  };
  return lanczos_largest<double>(apply, static_cast<Eigen::Index>(dim)).eigenvalue;
}

double sup_over_states(const CanonicalForm& phi, int particles, SupMethod method, const Limits& limits) {
  if (particles < 0) throw SizeError("negative particle number");
  const auto lam = checked_lambdas(phi);
  const int k = static_cast<int>(lam.size());
  double best = 0.0;

  if (method == SupMethod::seniority) {
    // Every broken-pair block is a principal submatrix of the seniority-zero
    // block with the same number of pairs, so by interlacing the sup is
    // attained on seniority-zero states with spectators filling the rest.
    for (int m = 1; m <= std::min(particles / 2, k); ++m) best = std::max(best, pairing_block_top(lam, m, limits));
    return 2.0 * best;
  }

  const PairOperator op = PairOperator::standard(lam, kLambdaNormTol);
  const int d = 2 * k;
  for (int n = 2; n <= std::min(particles, d); ++n) {
    const std::size_t dim = binomial(d, n);
    const SectorHandle sec = enumerate_sector(d, n, limits);
    double top = 0.0;
    if (method == SupMethod::dense) {
      if (dim > limits.max_dense_dim) throw SizeError("sector too large for the dense sup path");
      const Eigen::MatrixXcd h =
          dense_operator<cplx>(sec, sec, [&](const SectorVector& v) { return apply_B_star(op, apply_B(op, v)); });
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
      if (es.info() != Eigen::Success) throw ConvergenceError("dense eigensolver did not converge");
      top = es.eigenvalues()(h.rows() - 1);
    } else {
      lanczos_budget_check(dim, limits);
      auto apply = [&](const Eigen::VectorXcd& x) -> Eigen::VectorXcd {
        return apply_B_star(op, apply_B(op, SectorVector(sec, x))).amplitudes();
      };
      top = lanczos_largest<cplx>(apply, static_cast<Eigen::Index>(dim)).eigenvalue;
    }
    best = std::max(best, top);
  }
  return 2.0 * best;
}

std::vector<TheoremReport> explore_conjecture(const CanonicalForm& phi, const std::vector<int>& particle_list,
                                              SupMethod method, const Limits& limits) {
  const auto lam = checked_lambdas(phi);
  const auto m = correlation_measures(lam);
  std::vector<TheoremReport> out;
  for (int n : particle_list) {
    TheoremReport r;
    r.kind = CheckKind::conjecture;
    r.modes = 2 * static_cast<int>(lam.size());
    r.particles = n;
    const double x = n * m.lambda_max * m.lambda_max;
    r.details = {{"sum_lambda4", m.sum_lambda4}, {"lambda_max", m.lambda_max}, {"n_lambda_max_sq", x}};
    if (n < 2 || n % 2 != 0 || x > 1.0 + 1e-12) {
      r.skipped = true;
      r.note = n % 2 != 0 || n < 2 ? "N must be a positive even integer" : "N lambda_max^2 > 1";
      out.push_back(std::move(r));
      continue;
    }
    const double sup = sup_over_states(phi, n, method, limits);
    const double floor = theorem2_bound(n, m.sum_lambda4, m.lambda_max);
    r.observed = sup;
    r.bound = floor;
    r.margin = sup - floor;
    r.details["sup"] = sup;
    // Cross-check the seniority reduction against the full sectors when cheap.
    const int d = r.modes;
    if (method == SupMethod::seniority && binomial(d, std::min(n, d / 2)) <= kSeniorityCrossCheckDim) {
      const double full = sup_over_states(phi, n, SupMethod::dense, limits);
      r.details["sup_full_sector"] = full;
      r.details["seniority_discrepancy"] = std::abs(full - sup);
    }
    r.details["c_emp"] = (sup / n - 1.0 + 0.5 * (n - 2) * m.sum_lambda4) / (x * x);
    r.details["thm2_floor"] = floor;
    r.details["thm1_ceiling"] = theorem1_rhs(n, m.sum_lambda4);
    r.details["asymptotic_leading"] = asymptotic_expansion(n, m.sum_lambda4);
    r.note = r.details.count("seniority_discrepancy") && r.details["seniority_discrepancy"] > 1e-8
                 ? "reporting only; seniority sup differs from the full-sector sup"
                 : "reporting only";
    out.push_back(std::move(r));
  }
  return out;
}

TheoremReport counterexample_driver(const std::vector<double>& profile, int particles, double tol) {
  if (particles < 2 || particles % 2 != 0) throw DimensionError("counterexample needs even N >= 2");
  if (static_cast<int>(profile.size()) < particles) throw DimensionError("lambda profile shorter than N");
  const double norm = std::sqrt(std::inner_product(profile.begin(), profile.end(), profile.begin(), 0.0));
  if (norm == 0.0) throw NormalizationError("zero lambda profile");
  std::vector<double> lam(profile.size());
  std::transform(profile.begin(), profile.end(), lam.begin(), [&](double l) { return l / norm; });

  const int k = static_cast<int>(lam.size());
  std::vector<double> uniform(static_cast<std::size_t>(k), 0.0);
  std::fill_n(uniform.begin(), particles, 1.0 / std::sqrt(static_cast<double>(particles)));

  const PairOperator phi_op = PairOperator::standard(lam, kLambdaNormTol);
  const PairOperator yang_op = PairOperator::standard(uniform, kLambdaNormTol);
  const PairingState yang = build_pairing_state(yang_op, particles / 2);
  const double observed = pair_expectation(phi_op, yang.seniority);

  const double head = std::accumulate(lam.begin(), lam.begin() + particles, 0.0);
  const double overlap_bound = (0.5 * particles + 1.0) * head * head / particles;
  const double half_square = 0.5 * head * head;
  const auto m = correlation_measures(lam);

  TheoremReport r;
  r.kind = CheckKind::counterexample;
  r.modes = 2 * k;
  r.particles = particles;
  r.tolerance = tol;
  r.observed = observed;
  r.bound = overlap_bound;
  r.margin = std::min(observed - overlap_bound, overlap_bound - half_square);
  r.pass = r.margin >= -tol;
  r.details = {{"overlap_bound", overlap_bound},
               {"half_square_bound", half_square},
               {"head_sum", head},
               {"sum_lambda4", m.sum_lambda4},
               {"strong_conjecture_rhs", theorem1_rhs(particles, m.sum_lambda4)},
               {"n_uniform_ceiling", 2.0 / m.sum_lambda4}};
  return r;
}

}  // namespace wedgelab
