#include "wedgelab/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "wedgelab/bounds.hpp"
#include "wedgelab/canonical.hpp"
#include "wedgelab/io.hpp"
#include "wedgelab/lambda_spec.hpp"
#include "wedgelab/pairing.hpp"
#include "wedgelab/random_state.hpp"
#include "wedgelab/rdm.hpp"
#include "wedgelab/report.hpp"

namespace wedgelab {

namespace {

namespace fs = std::filesystem;

struct Options {
  std::string out;
  int threads = 1;
  double tol = 1e-8;
  bool timing = false;

  int dim = 0;
  std::vector<int> particles;
  int trials = 1;
  std::uint64_t seed = 0;
  std::string lambda;
  int max_pairs = -1;
  std::string method;
  bool allow_inadmissible = false;
  bool dump_eigenvectors = false;
  std::string tensor;
  bool normalize = false;
  std::string state;
  bool truncate_to_n = false;
  int pairs = 0;
  std::string state_out;
};

// Thrown for problems detected after parsing that still count as usage errors.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json complex_vector(const Eigen::VectorXcd& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back({v(i).real(), v(i).imag()});
  return a;
}

Json real_vector(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

// Runs body(i) for i in [0, n) on up to `threads` workers. Results are merged
// in index order; the first failing index stops the merge and is rethrown
// after the preceding results have been handed to `merge`.
template <typename T>
void parallel_trials(int n, int threads, const std::function<T(int)>& body, const std::function<void(T&&)>& merge) {
  std::vector<std::optional<T>> results(static_cast<std::size_t>(n));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < n; i = next++) {
      try {
        results[static_cast<std::size_t>(i)] = body(i);
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  };
  const int w = std::max(1, std::min(threads, n));
  if (w == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < w; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    merge(std::move(*results[i]));
  }
}

LambdaSpec resolve_lambda(const Options& o) {
  if (o.lambda.empty()) throw UsageError("--lambda is required");
  try {
    return parse_lambda_spec(o.lambda);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::vector<int> particle_list(const Options& o) {
  if (o.particles.empty()) throw UsageError("--particles is required");
  for (int n : o.particles)
    if (n < 0) throw UsageError("--particles must be non-negative");
  return o.particles;
}

// Command bodies. Each fills `rep` incrementally so a numerical failure
// still leaves the finished part in the report.

struct TrialOutput {
  std::vector<TheoremReport> checks;
  Json spectrum;
};

void run_state_trials(const Options& o, RunReport& rep, bool occupation) {
  if (o.dim <= 0) throw UsageError("--dim is required");
  const auto ns = particle_list(o);
  if (o.trials < 1) throw UsageError("--trials must be positive");
  std::optional<SectorVector> given;
  if (!o.state.empty()) {
    if (!fs::exists(o.state)) throw UsageError("state file not found: " + o.state);
    given = read_sector_vector(fs::path(o.state), o.dim);
  }
  Json spectra = Json::array();
  for (int n : ns) {
    const int trials = given ? 1 : o.trials;
    auto body = [&](int i) {
      const std::uint64_t seed = o.seed + static_cast<std::uint64_t>(i);
      const SectorVector psi = given ? given->normalized() : random_state(o.dim, n, seed);
      const auto g = compute_gamma2(psi);
      const auto spectral = spectral_decompose(g);
      TrialOutput t;
      t.checks = occupation ? eigenvector_occupation_check(psi, spectral, o.tol)
                            : verify_theorem1(spectral, psi.particles(), o.tol);
      for (auto& c : t.checks) {
        c.lambda_descriptor = given ? "state:" + o.state : "random";
        if (!given) c.seed = seed;
      }
      const double top = spectral.eigenvalues.size() ? spectral.eigenvalues(0) : 0.0;
      t.spectrum = {{"particles", psi.particles()},
                    {"seed", given ? Json(nullptr) : Json(seed)},
                    {"trace", g.trace()},
                    {"trace_expected", static_cast<double>(psi.particles()) * (psi.particles() - 1)},
                    {"hermiticity_defect", g.hermiticity_defect},
                    {"max_eigenvalue", top},
                    {"yang_margin", psi.particles() - top},
                    {"eigenvalues", real_vector(spectral.eigenvalues)}};
      if (o.dump_eigenvectors) {
        Json ev = Json::array();
        for (const auto& phi : spectral.eigenvectors) ev.push_back(complex_vector(phi.wedge_amplitudes()));
        t.spectrum["eigenvectors"] = std::move(ev);
      }
      return t;
    };
    parallel_trials<TrialOutput>(trials, o.threads, body, [&](TrialOutput&& t) {
      for (auto& c : t.checks) rep.checks.push_back(std::move(c));
      spectra.push_back(std::move(t.spectrum));
      rep.results["spectra"] = spectra;
    });
  }
  rep.results["spectra"] = std::move(spectra);
}

void run_thm2(const Options& o, RunReport& rep) {
  const auto spec = resolve_lambda(o);
  const auto cf = CanonicalForm::paired(spec.resolved);
  for (int n : particle_list(o)) {
    auto r = verify_theorem2(cf, n, o.tol, !o.allow_inadmissible);
    r.lambda_descriptor = spec.descriptor;
    rep.checks.push_back(std::move(r));
  }
}

GapMethod gap_method(const std::string& m) {
  if (m == "dense") return GapMethod::dense;
  if (m == "blocks") return GapMethod::blocks;
  return GapMethod::automatic;
}

void run_prop(const Options& o, RunReport& rep) {
  const auto spec = resolve_lambda(o);
  const auto op = PairOperator::standard(spec.resolved);
  for (int n : particle_list(o)) {
    const auto gap = proposition_gap(op, n, gap_method(o.method));
    TheoremReport pos;
    pos.kind = CheckKind::prop_BB;
    pos.modes = op.modes();
    pos.particles = n;
    pos.lambda_descriptor = spec.descriptor;
    pos.observed = gap.min_eigenvalue;
    pos.bound = 0.0;
    pos.margin = gap.min_eigenvalue;
    pos.tolerance = o.tol;
    pos.pass = pos.margin >= -o.tol;
    pos.note = "positivity";
    pos.details = {{"kernel_residual", gap.kernel_residual}, {"blocks", gap.method == GapMethod::blocks ? 1.0 : 0.0}};

    TheoremReport ker = pos;
    ker.note = "kernel";
    ker.observed = gap.kernel_residual;
    ker.margin = -gap.kernel_residual;
    if (gap.degenerate) {
      ker.skipped = true;
      ker.pass.reset();
      ker.note = "kernel: pairing state vanishes (support smaller than N/2)";
    } else {
      ker.pass = ker.margin >= -o.tol;
    }
    rep.checks.push_back(std::move(pos));
    rep.checks.push_back(std::move(ker));
  }
}

void run_norms(const Options& o, RunReport& rep) {
  const auto spec = resolve_lambda(o);
  const auto op = PairOperator::standard(spec.resolved);
  const int m = o.max_pairs < 0 ? op.pair_count() : o.max_pairs;
  if (m > op.pair_count()) throw UsageError("--max-pairs exceeds the number of pairs");
  for (auto& r : norm_recursion_check(op, m, o.tol)) {
    r.lambda_descriptor = spec.descriptor;
    rep.checks.push_back(std::move(r));
  }
}

SupMethod sup_method(const std::string& m) {
  if (m == "dense") return SupMethod::dense;
  if (m == "iterative") return SupMethod::iterative;
  return SupMethod::seniority;
}

void run_explore(const Options& o, RunReport& rep) {
  const auto spec = resolve_lambda(o);
  const auto cf = CanonicalForm::paired(spec.resolved);
  for (auto& r : explore_conjecture(cf, particle_list(o), sup_method(o.method))) {
    r.lambda_descriptor = spec.descriptor;
    rep.checks.push_back(std::move(r));
  }
}

void run_counterexample(const Options& o, RunReport& rep) {
  const auto spec = resolve_lambda(o);
  std::vector<double> observed;
  for (int n : particle_list(o)) {
    std::vector<double> profile = spec.resolved;
    if (o.truncate_to_n) {
      if (static_cast<int>(profile.size()) < n) throw UsageError("profile shorter than N");
      profile.resize(static_cast<std::size_t>(n));
    }
    auto r = counterexample_driver(profile, n, o.tol);
    r.lambda_descriptor = spec.descriptor;
    observed.push_back(r.observed);
    rep.checks.push_back(std::move(r));
  }
  if (observed.size() >= 2) {
    double step = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < observed.size(); ++i) step = std::min(step, observed[i] - observed[i - 1]);
    TheoremReport mono;
    mono.kind = CheckKind::counterexample;
    mono.lambda_descriptor = spec.descriptor;
    mono.observed = step;
    mono.bound = 0.0;
    mono.margin = step;
    mono.tolerance = 0.0;
    mono.pass = step > 0.0;
    mono.note = "strictly increasing in N";
    rep.checks.push_back(std::move(mono));
  }
}

void run_pairing_state(const Options& o, RunReport& rep) {
  const auto spec = resolve_lambda(o);
  const auto op = PairOperator::standard(spec.resolved);
  if (o.pairs < 0 || o.pairs > op.pair_count()) throw UsageError("--pairs must satisfy 0 <= M <= K");
  const auto st = build_pairing_state(op, o.pairs);
  const double oracle = norm_sq_oracle(op.lambdas(), o.pairs);
  rep.results["pairing_state"] = {{"lambda", spec.descriptor},
                                  {"lambdas", op.lambdas()},
                                  {"pairs", o.pairs},
                                  {"modes", op.modes()},
                                  {"norm_sq", st.norm_sq},
                                  {"norm_sq_oracle", oracle},
                                  {"degenerate", st.degenerate}};
  if (!st.degenerate)
    rep.results["pairing_state"]["expectation"] = pair_expectation(op, st.seniority);
  if (!o.state_out.empty()) {
    const SectorVector v = st.degenerate ? st.sector_vector() : st.normalized_sector_vector();
    if (fs::path(o.state_out).has_parent_path()) fs::create_directories(fs::path(o.state_out).parent_path());
    std::ofstream f(o.state_out);
    if (!f) throw std::runtime_error("cannot write " + o.state_out);
    write_sector_vector(f, v, 0.0);
    rep.results["pairing_state"]["state_file"] = o.state_out;
  }
}

void run_canonical(const Options& o, RunReport& rep) {
  if (!fs::exists(o.tensor)) throw UsageError("tensor file not found: " + o.tensor);
  AntisymmetricTensor t = read_tensor(fs::path(o.tensor));
  if (o.normalize) t = t.normalized();
  const auto cf = youla_decompose(t);
  const auto m = correlation_measures(cf);
  Json pairs = Json::array();
  for (int k = 0; k < cf.size(); ++k)
    pairs.push_back({{"lambda", cf.lambdas[static_cast<std::size_t>(k)]},
                     {"u", complex_vector(cf.u(k))},
                     {"v", complex_vector(cf.v(k))}});
  rep.results["canonical"] = {
      {"modes", t.modes()},
      {"norm", t.norm()},
      {"lambdas", cf.lambdas},
      {"sum_lambda4", m.sum_lambda4},
      {"lambda_max", m.lambda_max},
      {"participation", m.participation},
      {"reconstruction_error", (reconstruct(cf, t.modes()).matrix() - t.matrix()).norm()},
      {"pairs", std::move(pairs)}};
}

fs::path default_report_path(const std::string& slug) {
  const char* dir = std::getenv(kOutDirEnv);
  return fs::path(dir && *dir ? dir : ".") / (slug + ".json");
}

Json config_echo(const Options& o, const std::string& command) {
  Json c;
  c["threads"] = o.threads;
  c["tol"] = o.tol;
  c["timing"] = o.timing;
  if (command == "canonical") {
    c["tensor"] = o.tensor;
    c["normalize"] = o.normalize;
    return c;
  }
  if (command == "verify thm1" || command == "verify occupation") {
    c["dim"] = o.dim;
    c["particles"] = o.particles;
    c["trials"] = o.trials;
    c["state"] = o.state.empty() ? Json(nullptr) : Json(o.state);
    c["dump_eigenvectors"] = o.dump_eigenvectors;
    return c;
  }
  c["lambda"] = o.lambda;
  if (command == "pairing-state") {
    c["pairs"] = o.pairs;
    c["state_out"] = o.state_out.empty() ? Json(nullptr) : Json(o.state_out);
    return c;
  }
  if (command == "verify norms") {
    c["max_pairs"] = o.max_pairs;
    return c;
  }
  c["particles"] = o.particles;
  if (command == "verify thm2") c["allow_inadmissible"] = o.allow_inadmissible;
  if (command == "verify prop" || command == "explore") c["method"] = o.method;
  if (command == "counterexample") c["truncate_to_n"] = o.truncate_to_n;
  return c;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"wedgelab: two-body density matrix eigenvalue bounds on small fermionic Fock spaces"};
  app.require_subcommand(1);
  app.fallthrough();
  auto* out_opt = app.add_option("--out", o.out, "Report path (.json or .csv)");
  app.add_option("--threads", o.threads, "Worker threads for trial sweeps")->check(CLI::PositiveNumber);
  auto* tol_opt = app.add_option("--tol", o.tol, "Check tolerance")->check(CLI::NonNegativeNumber);
  app.add_flag("--timing", o.timing, "Record wall time in the report");

  auto add_particles = [&](CLI::App* s, bool required) {
    auto* p = s->add_option("--particles", o.particles, "Particle number(s), comma separated")->delimiter(',');
    if (required) p->required();
  };
  auto add_lambda = [&](CLI::App* s) {
    s->add_option("--lambda", o.lambda, "uniform:K | geometric:R:K | power:P:K | file:PATH")->required();
  };
  auto add_sweep = [&](CLI::App* s) {
    s->add_option("--dim", o.dim, "Number of modes d")->required();
    add_particles(s, true);
    s->add_option("--trials", o.trials, "Random states per particle number");
    s->add_option("--seed", o.seed, "Seed of the first trial; trial i uses seed + i");
    s->add_option("--state", o.state, "Read one state from file instead of sampling");
    s->add_flag("--dump-eigenvectors", o.dump_eigenvectors, "Store gamma_2 eigenvectors in the report");
  };

  auto* canonical = app.add_subcommand("canonical", "Canonical form of an antisymmetric tensor");
  canonical->add_option("--tensor", o.tensor, "Tensor file")->required();
  canonical->add_flag("--normalize", o.normalize, "Normalize the tensor before decomposing");

  auto* verify = app.add_subcommand("verify", "Run one family of checks");
  verify->require_subcommand(1);
  verify->fallthrough();
  auto* thm1 = verify->add_subcommand("thm1", "Eigenvalue bound on random states");
  add_sweep(thm1);
  auto* occupation = verify->add_subcommand("occupation", "Occupation inequality for gamma_2 eigenvectors");
  add_sweep(occupation);
  auto* thm2 = verify->add_subcommand("thm2", "Lower bound from pairing states");
  add_lambda(thm2);
  add_particles(thm2, true);
  thm2->add_flag("--allow-inadmissible", o.allow_inadmissible, "Evaluate even when N lambda_max^2 > 1");
  auto* prop = verify->add_subcommand("prop", "Positivity and kernel of the pair-operator inequality");
  add_lambda(prop);
  add_particles(prop, true);
  o.method = "auto";
  prop->add_option("--method", o.method, "auto | dense | blocks")->check(CLI::IsMember({"auto", "dense", "blocks"}));
  auto* norms = verify->add_subcommand("norms", "Pairing-state norm recursion");
  add_lambda(norms);
  norms->add_option("--max-pairs", o.max_pairs, "Largest M (default K)");

  auto* explore = app.add_subcommand("explore", "Supremum sweep over N in the highly correlated regime");
  add_lambda(explore);
  add_particles(explore, true);
  explore->add_option("--method", o.method, "seniority | dense | iterative")
      ->check(CLI::IsMember({"auto", "seniority", "dense", "iterative"}));
  auto* counter = app.add_subcommand("counterexample", "Uniform pairing state against a heavy-tailed profile");
  add_lambda(counter);
  add_particles(counter, true);
  counter->add_flag("--truncate-to-n", o.truncate_to_n, "Keep only the first N coefficients for each N");
  auto* pstate = app.add_subcommand("pairing-state", "Build a generalized pairing state");
  add_lambda(pstate);
  pstate->add_option("--pairs", o.pairs, "Number of pairs M")->required();
  pstate->add_option("--state-out", o.state_out, "Write the normalized state to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  std::string command;
  std::function<void(RunReport&)> body;
  double default_tol = 1e-8;
  if (canonical->parsed()) {
    command = "canonical";
    body = [&](RunReport& r) { run_canonical(o, r); };
  } else if (thm1->parsed()) {
    command = "verify thm1";
    body = [&](RunReport& r) { run_state_trials(o, r, false); };
  } else if (occupation->parsed()) {
    command = "verify occupation";
    body = [&](RunReport& r) { run_state_trials(o, r, true); };
  } else if (thm2->parsed()) {
    command = "verify thm2";
    body = [&](RunReport& r) { run_thm2(o, r); };
  } else if (prop->parsed()) {
    command = "verify prop";
    default_tol = 1e-10;
    body = [&](RunReport& r) { run_prop(o, r); };
  } else if (norms->parsed()) {
    command = "verify norms";
    default_tol = 1e-10;
    body = [&](RunReport& r) { run_norms(o, r); };
  } else if (explore->parsed()) {
    command = "explore";
    if (o.method == "auto") o.method = "seniority";
    body = [&](RunReport& r) { run_explore(o, r); };
  } else if (counter->parsed()) {
    command = "counterexample";
    body = [&](RunReport& r) { run_counterexample(o, r); };
  } else {
    command = "pairing-state";
    body = [&](RunReport& r) { run_pairing_state(o, r); };
  }
  if (tol_opt->count() == 0) o.tol = default_tol;

  std::string slug = command;
  std::replace(slug.begin(), slug.end(), ' ', '-');
  const fs::path path = out_opt->count() ? fs::path(o.out) : default_report_path(slug);

  RunReport rep;
  rep.command = command;
  rep.config = config_echo(o, command);
  if (thm1->parsed() || occupation->parsed()) rep.seed = o.seed;

  const auto start = std::chrono::steady_clock::now();
  int code = kExitPass;
  try {
    body(rep);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    rep.error = e.what();
    code = kExitNumerical;
  }
  if (o.timing)
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  try {
    write_report(rep, path);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }

  const auto failed = std::count_if(rep.checks.begin(), rep.checks.end(),
                                    [](const TheoremReport& c) { return !c.skipped && c.pass && !*c.pass; });
  out << command << ": " << rep.checks.size() << " checks, " << failed << " failed -> " << path.string() << '\n';
  if (rep.error) {
    err << "error: " << *rep.error << '\n';
    return code;
  }
  return rep.all_pass() ? kExitPass : kExitCheckFailed;
}

}  // namespace wedgelab
