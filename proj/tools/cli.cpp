#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "io.hpp"
#include "sceot/config.hpp"
#include "sceot/costs.hpp"
#include "sceot/discrete.hpp"
#include "sceot/kantorovich.hpp"
#include "sceot/measure1d.hpp"
#include "sceot/mmot.hpp"
#include "sceot/seidl.hpp"
#include "sceot/semiclassical.hpp"
#include "sceot/swaplab.hpp"

#ifndef SCEOT_VERSION
#define SCEOT_VERSION "0.0.0"
#endif

namespace sceot::cli {

namespace fs = std::filesystem;
using io::Json;

namespace {

constexpr int kTraceDigits = 12;
constexpr double kSeidlMatch = 1e-7;

struct Options {
  std::string density;
  std::string cost;
  int n = 2;
  int m = 8;
  std::size_t grid = 0;
  std::string eps = "1e-1,1e-2,1e-3,1e-4";
  std::uint64_t seed = 0;
  std::string out = "sceot_out";
  std::string expect;
  std::string set = "1,3,4,8,9,11,12";
  bool strict = false;
  bool symmetrize = false;
  std::optional<std::size_t> samples;
  std::optional<double> h;
  std::size_t max_iters = 200;
  double tol = 1e-6;
  int atoms = 1024;
};

// Collects what the manifest needs while a command runs.
class Run {
 public:
  Run(std::string command, const Options& opt) : command_(std::move(command)), dir_(opt.out) {
    fs::create_directories(dir_);
  }

  void input(const std::string& path) {
    inputs_.push_back({{"path", path}, {"sha256", io::sha256_hex(io::read_text(path))}});
  }
  void param(const std::string& key, Json value) { params_[key] = std::move(value); }

  void write(const std::string& name, const std::string& text) {
    io::write_text(dir_ / name, text);
    outputs_.push_back({{"file", name}, {"sha256", io::sha256_hex(text)}});
  }
  void write_json(const std::string& name, Json j) { write(name, io::dump_json(j)); }

  Json header() const {
    Json j;
    j["schema"] = io::kSchema;
    j["command"] = command_;
    return j;
  }

  void manifest(std::chrono::steady_clock::time_point start, int exit_code) {
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    Json j = header();
    j["version"] = SCEOT_VERSION;
    j["compiler"] = compiler();
    j["parameters"] = params_;
    j["inputs"] = inputs_;
    j["outputs"] = outputs_;
    j["exit_code"] = exit_code;
    j["wall_time_seconds"] = wall;
    j["timestamp"] = timestamp();
    io::write_text(dir_ / "manifest.json", io::dump_json(j));
  }

  const fs::path& dir() const { return dir_; }

 private:
  static std::string compiler() {
#if defined(__clang__)
    return "clang " __clang_version__;
#elif defined(__GNUC__)
    return "gcc " __VERSION__;
#else
    return "unknown";
#endif
  }

  static std::string timestamp() {
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
  }

  std::string command_;
  fs::path dir_;
  Json params_ = Json::object();
  Json inputs_ = Json::array();
  Json outputs_ = Json::array();
};

std::string canonical_verdict(std::string v) {
  std::replace(v.begin(), v.end(), '-', '_');
  return v;
}

Json real_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json rounded(double x) { return real_or_null(io::round_significant(x, kTraceDigits)); }

io::LoadedDensity density_input(Run& run, const Options& opt) {
  if (opt.density.empty()) return {densities::uniform(), 1.0, "uniform"};
  run.input(opt.density);
  return io::load_density(opt.density);
}

CostModel cost_input(Run& run, const Options& opt, const Profile& fallback) {
  if (opt.cost.empty()) return make_ring_cost(fallback);
  run.input(opt.cost);
  return io::load_cost(opt.cost);
}

CostModel required_cost(Run& run, const Options& opt) {
  if (opt.cost.empty()) throw io::InputError("--cost is required");
  run.input(opt.cost);
  return io::load_cost(opt.cost);
}

void check_expect(const std::string& expect, std::initializer_list<const char*> allowed) {
  if (expect.empty()) return;
  for (const char* a : allowed) {
    if (expect == a) return;
  }
  std::string list;
  for (const char* a : allowed) list += std::string(list.empty() ? "" : ", ") + a;
  throw io::InputError("--expect must be one of: " + list);
}

int verdict_exit(const std::string& expect, const std::string& verdict, std::ostream& out) {
  out << "verdict: " << verdict << "\n";
  if (expect.empty() || expect == verdict) return kOk;
  // A strictly well-ordering cost also satisfies the plain expectation.
  if (expect == "well_ordering" && verdict == "strictly_well_ordering") return kOk;
  out << "expected: " << expect << "\n";
  return kVerdictFailure;
}

io::CsvTable plan_table(const DiscretePlan& plan) {
  io::CsvTable t;
  for (int i = 1; i <= plan.n(); ++i) t.columns.push_back("x" + std::to_string(i));
  t.columns.push_back("weight");
  for (std::size_t k = 0; k < plan.size(); ++k) {
    const auto a = plan.atom(k);
    std::vector<double> row(a.begin(), a.end());
    row.push_back(plan.weight(k));
    t.rows.push_back(std::move(row));
  }
  return t;
}

int cmd_check_wellordering(const Options& opt, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const std::string expect = canonical_verdict(opt.expect);
  check_expect(expect, {"well_ordering", "violated", "strictly_well_ordering"});
  Run run("check-wellordering", opt);
  const CostModel w = required_cost(run, opt);
  const std::size_t grid = opt.grid == 0 ? 64 : opt.grid;
  run.param("grid", grid);
  run.param("seed", opt.seed);
  run.param("strict", opt.strict);
  run.param("random_quadruples", opt.samples ? Json(*opt.samples) : Json(nullptr));

  const WellOrderReport r = check_well_ordering(w, grid, opt.strict, opt.seed, opt.samples);
  Json j = run.header();
  j["cost"] = w.description();
  j["verdict"] = to_string(r.verdict);
  j["margin"] = real_or_null(r.margin);
  j["grid"] = r.grid_size;
  j["random_quadruples"] = r.random_quadruples;
  j["quadruples_checked"] = r.quadruples_checked;
  j["inconclusive"] = r.inconclusive;
  j["profile_admissible"] = w.traits().profile_admissible;
  if (r.counterexample) {
    const Counterexample& c = *r.counterexample;
    j["counterexample"] = {{"quadruple", c.quadruple},
                           {"better_pairing", to_string(c.better_pairing)},
                           {"nested_value", real_or_null(c.nested_value)},
                           {"better_value", real_or_null(c.better_value)}};
  } else {
    j["counterexample"] = nullptr;
  }
  run.write_json("wellordering.json", j);
  const int code = verdict_exit(expect, to_string(r.verdict), out);
  run.manifest(start, code);
  return code;
}

int cmd_seidl_plan(const Options& opt, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  Run run("seidl-plan", opt);
  const io::LoadedDensity d = density_input(run, opt);
  std::optional<CostModel> w;
  if (!opt.cost.empty()) w = required_cost(run, opt);
  run.param("n", opt.n);
  run.param("m", opt.m);
  run.param("symmetrize", opt.symmetrize);

  const SeidlMap T = build_seidl_map(d.density, opt.n);
  const DiscretePlan plan = seidl_plan(d.density, opt.n, opt.m, opt.symmetrize);
  run.write("plan.csv", io::to_csv(plan_table(plan)));

  const std::size_t samples = opt.grid == 0 ? 512 : opt.grid;
  io::CsvTable map;
  map.columns.push_back("x");
  for (int k = 1; k < opt.n; ++k) map.columns.push_back("T" + std::to_string(k));
  for (std::size_t g = 0; g < samples; ++g) {
    const double x = kTwoPi * (static_cast<double>(g) + 0.5) / static_cast<double>(samples);
    std::vector<double> row{x};
    for (int k = 1; k < opt.n; ++k) row.push_back(T.iterate(k, x));
    map.rows.push_back(std::move(row));
  }
  run.write("seidl_map.csv", io::to_csv(map));

  Json j = run.header();
  j["density"] = d.label;
  j["density_scale"] = d.scale;
  j["n"] = opt.n;
  j["m"] = opt.m;
  j["atoms"] = plan.size();
  j["boundaries"] = T.segmentation().boundaries;
  if (w) {
    j["cost"] = w->description();
    j["plan_cost"] = real_or_null(plan_cost(plan, *w));
  }
  run.write_json("seidl_plan.json", j);
  out << "seidl plan: " << plan.size() << " atoms\n";
  run.manifest(start, kOk);
  return kOk;
}

int cmd_swap_demo(const Options& opt, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  Run run("swap-demo", opt);
  const CostModel w = cost_input(run, opt, profiles::inverse());
  std::vector<int> members;
  for (double v : io::parse_real_list(opt.set)) {
    if (v != std::floor(v)) throw io::InputError("--set entries must be integers");
    members.push_back(static_cast<int>(v));
  }
  const int n = static_cast<int>(members.size());
  const Bipartition a(n, members);
  std::vector<double> x;
  for (int j = 1; j <= 2 * n; ++j) x.push_back(j * kTwoPi / (2 * n + 1));
  run.param("set", members);

  const SwapTrace trace = reduce_to_wellordered(a, x, w);
  Json j = run.header();
  j["cost"] = w.description();
  j["n"] = n;
  Json xs = Json::array();
  for (double v : x) xs.push_back(rounded(v));
  j["x"] = xs;
  Json steps = Json::array();
  for (std::size_t s = 0; s < trace.steps.size(); ++s) {
    const TraceStep& st = trace.steps[s];
    steps.push_back({{"step", s},
                     {"set", st.set.members()},
                     {"f", st.f.values},
                     {"oscillation", st.oscillation},
                     {"paired_cost", rounded(st.paired_cost)},
                     {"max_points", st.max_points},
                     {"used_complement", st.used_complement}});
  }
  j["steps"] = steps;
  j["swaps"] = trace.swaps();
  const Bipartition& last = trace.steps.back().set;
  j["final"] = last == Bipartition::even(n) ? "even" : last == Bipartition::odd(n) ? "odd" : "other";
  run.write_json("trace.json", j);
  out << "swaps: " << trace.swaps() << ", final: " << j["final"].get<std::string>() << "\n";
  run.manifest(start, kOk);
  return kOk;
}

int cmd_mmot_solve(const Options& opt, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const std::string expect = canonical_verdict(opt.expect);
  check_expect(expect, {"seidl_optimal", "seidl_suboptimal"});
  Run run("mmot-solve", opt);
  const io::LoadedDensity d = density_input(run, opt);
  const CostModel w = required_cost(run, opt);
  run.param("n", opt.n);
  run.param("m", opt.m);

  const DiscreteMarginal marginal = quantize(d.density, opt.m);
  const LPSolution sol = solve_mmot(marginal, opt.n, w);
  const LPCertificate cert = certify(sol, w);
  const double seidl = plan_cost(seidl_plan(d.density, opt.n, opt.m), w);
  const double diff = seidl - sol.value;
  const std::string verdict = std::abs(diff) <= kSeidlMatch ? "seidl_optimal" : "seidl_suboptimal";

  run.write("plan.csv", io::to_csv(plan_table(sol.plan)));
  io::CsvTable duals;
  duals.columns = {"atom", "weight", "v"};
  for (int i = 1; i <= opt.n; ++i) duals.columns.push_back("u" + std::to_string(i));
  const std::vector<double> v = symmetrized_duals(sol);
  for (std::size_t k = 0; k < marginal.size(); ++k) {
    std::vector<double> row{marginal.atoms[k], marginal.weights[k], v[k]};
    for (int i = 0; i < opt.n; ++i) row.push_back(sol.duals[static_cast<std::size_t>(i)][k]);
    duals.rows.push_back(std::move(row));
  }
  run.write("duals.csv", io::to_csv(duals));

  Json j = run.header();
  j["density"] = d.label;
  j["cost"] = w.description();
  j["n"] = opt.n;
  j["m"] = opt.m;
  j["value"] = sol.value;
  j["seidl_cost"] = real_or_null(seidl);
  j["seidl_minus_lp"] = real_or_null(diff);
  j["verdict"] = verdict;
  j["iterations"] = sol.iterations;
  j["variables"] = sol.variables;
  j["support_size"] = sol.support.size();
  j["certificate"] = {{"primal_residual", cert.primal_residual},
                      {"min_dual_slack", cert.min_dual_slack},
                      {"max_support_slack", cert.max_support_slack},
                      {"dual_objective", cert.dual_objective},
                      {"symmetric_min_slack", cert.symmetric_min_slack},
                      {"symmetric_objective", cert.symmetric_objective}};
  run.write_json("mmot.json", j);
  out << "lp value: " << io::format_real(sol.value) << "\n";
  const int code = verdict_exit(expect, verdict, out);
  run.manifest(start, code);
  return code;
}

int cmd_kantorovich(const Options& opt, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  Run run("kantorovich", opt);
  const io::LoadedDensity d = density_input(run, opt);
  const CostModel w = required_cost(run, opt);
  CertifyOptions co;
  co.grid = opt.grid == 0 ? 128 : opt.grid;
  co.atoms = opt.m;
  co.max_iters = opt.max_iters;
  co.tol = opt.tol;
  run.param("n", opt.n);
  run.param("grid", co.grid);
  run.param("m", co.atoms);
  run.param("max_iters", co.max_iters);
  run.param("tol", co.tol);

  // An already truncated cost is certified as given. Otherwise the cost is
  // truncated at --h or at the computed support threshold.
  std::optional<CostModel> w_trunc;
  std::optional<SupportThresholds> th;
  if (w.truncation()) {
    w_trunc = w;
  } else if (opt.h) {
    w_trunc = truncate(w, *opt.h);
  } else {
    th = auto_support_thresholds(d.density, w, opt.n);
    w_trunc = truncate(w, th->h);
  }
  run.param("h", opt.h ? Json(*opt.h) : Json(nullptr));
  const KantorovichCertificate c =
      certify_potential(d.density, *w_trunc, opt.n, co, w.truncation() ? nullptr : &w);

  io::CsvTable pot;
  pot.columns = {"x", "v"};
  for (std::size_t i = 0; i < c.normalized.size(); ++i) {
    pot.rows.push_back({c.normalized.grid[i], c.normalized.values[i]});
  }
  run.write("potential.csv", io::to_csv(pot));

  Json j = run.header();
  j["density"] = d.label;
  j["cost"] = w_trunc->description();
  j["n"] = opt.n;
  j["grid"] = co.grid;
  j["m"] = co.atoms;
  j["passed"] = c.passed;
  j["margin"] = c.margin.margin;
  j["margin_sampled"] = c.margin.sampled;
  j["gap"] = c.gap;
  j["gap_tol"] = c.gap_tol;
  j["oscillation"] = c.oscillation ? Json(c.oscillation->oscillation) : Json(nullptr);
  j["h"] = c.h ? Json(*c.h) : Json(nullptr);
  if (th) {
    j["thresholds"] = {{"beta", th->beta}, {"radius", th->radius}, {"kappa", th->kappa}};
  }
  j["iterations"] = c.convergence.iterations;
  j["residual"] = c.convergence.residual;
  j["converged"] = c.convergence.converged;
  j["initial_shift"] = c.convergence.initial_shift;
  j["repaired"] = c.convergence.repaired;
  j["lp_value"] = c.lp_value;
  j["full_lp_value"] = c.full_lp_value ? Json(*c.full_lp_value) : Json(nullptr);
  if (c.oscillation) {
    j["oscillation_check"] = {{"bound", c.oscillation->bound},
                              {"box_lower", c.oscillation->box_lower},
                              {"box_upper", c.oscillation->box_upper},
                              {"oscillation_ok", c.oscillation->oscillation_ok},
                              {"box_ok", c.oscillation->box_ok}};
  }
  if (c.untruncated) {
    j["untruncated"] = {{"truncated_margin", c.untruncated->truncated_margin},
                        {"full_margin", c.untruncated->full_margin},
                        {"gap", c.untruncated->gap},
                        {"passed", c.untruncated->passed}};
  }
  j["residual_history"] = c.convergence.residual_history;
  run.write_json("kantorovich.json", j);
  const int code = c.passed ? kOk : kVerdictFailure;
  out << "certificate: " << (c.passed ? "passed" : "failed") << "\n";
  run.manifest(start, code);
  return code;
}

int cmd_semiclassical(const Options& opt, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  Run run("semiclassical", opt);
  const io::LoadedDensity d = density_input(run, opt);
  const CostModel w = required_cost(run, opt);
  const std::vector<double> eps = io::parse_real_list(opt.eps);
  CurveOptions co;
  co.atoms = opt.atoms;
  run.param("n", opt.n);
  run.param("eps", eps);
  run.param("atoms", co.atoms);

  const UpperBoundCurve curve = upper_bound_curve(d.density, w, opt.n, eps, co);
  io::CsvTable t;
  t.columns = {"eps", "eta", "kinetic", "interaction", "bound"};
  for (const BoundPoint& p : curve.rows) t.rows.push_back({p.eps, p.eta, p.kinetic, p.interaction, p.bound});
  run.write("curve.csv", io::to_csv(t));

  // Identity checks on the trial state at the smallest eta of the curve.
  double eta = curve.rows.front().eta;
  for (const BoundPoint& p : curve.rows) eta = std::min(eta, p.eta);
  // Default: at least 8 grid points per eta, a power of two, no fewer than 256.
  std::size_t grid = opt.grid;
  if (grid == 0) {
    grid = 256;
    while (kTwoPi / static_cast<double>(grid) > eta / 8.0) grid *= 2;
  }
  run.param("grid", grid);
  const GammaEta gamma(seidl_plan_on_cells(d.density, opt.n, co.atoms), d.density, eta, co.gamma);
  const KineticEnergy ke = kinetic_energy(gamma, grid);
  const PeriodicityCheck pc = periodicity_check(gamma);
  Json checks = {{"eta", eta},
                 {"kinetic_relative_mismatch", ke.relative_mismatch},
                 {"periodicity_value", pc.value_mismatch},
                 {"periodicity_derivative", pc.derivative_mismatch}};
  if (opt.n == 2) checks["marginal_sup_error"] = marginal_identity_check(gamma, grid).sup_error;

  const bool slope_ok = std::isfinite(curve.slope) && curve.slope >= 0.4 && curve.slope <= 0.6;
  const bool passed = curve.decreasing && curve.above_floor && slope_ok;
  Json j = run.header();
  j["density"] = d.label;
  j["cost"] = w.description();
  j["n"] = opt.n;
  j["f_ot"] = curve.f_ot;
  j["alpha"] = curve.alpha;
  j["c"] = curve.c;
  j["pilot_constant"] = curve.pilot_constant;
  j["quantization_budget"] = curve.quantization_budget;
  j["slope"] = real_or_null(curve.slope);
  j["slope_range"] = {0.4, 0.6};
  j["slope_ok"] = slope_ok;
  j["decreasing"] = curve.decreasing;
  j["above_floor"] = curve.above_floor;
  j["passed"] = passed;
  j["checks"] = checks;
  run.write_json("semiclassical.json", j);
  out << "slope: " << io::format_real(curve.slope) << (passed ? " (passed)" : " (failed)") << "\n";
  const int code = passed ? kOk : kVerdictFailure;
  run.manifest(start, code);
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Symmetric multimarginal optimal transport toolkit", "sceot"};
  app.set_version_flag("--version", SCEOT_VERSION);
  app.require_subcommand(1);
  Options opt;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--out", opt.out, "Output directory")->capture_default_str();
    sub->add_option("--seed", opt.seed, "Seed for randomized sampling")->capture_default_str();
  };
  auto with_density = [&](CLI::App* sub) {
    sub->add_option("--density", opt.density, "Density JSON (default: uniform)");
  };
  auto with_n = [&](CLI::App* sub) {
    sub->add_option("--n", opt.n, "Number of marginals")->check(CLI::Range(2, 16))->capture_default_str();
  };

  CLI::App* wo = app.add_subcommand("check-wellordering", "Certify or refute well-ordering of a cost");
  common(wo);
  wo->add_option("--cost", opt.cost, "Cost JSON")->required();
  wo->add_option("--grid", opt.grid, "Grid points per axis (default 64)");
  wo->add_option("--samples", opt.samples, "Random quadruples (default 10 per grid point)");
  wo->add_flag("--strict", opt.strict, "Report strict well-ordering");
  wo->add_option("--expect", opt.expect, "well_ordering | violated | strictly_well_ordering");

  CLI::App* sp = app.add_subcommand("seidl-plan", "Build the Seidl map and plan");
  common(sp);
  with_density(sp);
  with_n(sp);
  sp->add_option("--m", opt.m, "Atoms per marginal")->check(CLI::PositiveNumber)->capture_default_str();
  sp->add_option("--grid", opt.grid, "Sample points for seidl_map.csv (default 512)");
  sp->add_option("--cost", opt.cost, "Optional cost JSON for the plan cost");
  sp->add_flag("--symmetrize", opt.symmetrize, "Symmetrize the plan");

  CLI::App* sd = app.add_subcommand("swap-demo", "Reduce a bipartition to the odd or even set");
  common(sd);
  sd->add_option("--set", opt.set, "Comma-separated 1-based indices")->capture_default_str();
  sd->add_option("--cost", opt.cost, "Cost JSON (default: ring 1/d)");

  CLI::App* ms = app.add_subcommand("mmot-solve", "Solve the discrete MMOT linear program");
  common(ms);
  with_density(ms);
  with_n(ms);
  ms->add_option("--m", opt.m, "Atoms per marginal")->check(CLI::PositiveNumber)->capture_default_str();
  ms->add_option("--cost", opt.cost, "Cost JSON")->required();
  ms->add_option("--expect", opt.expect, "seidl_optimal | seidl_suboptimal");

  CLI::App* ka = app.add_subcommand("kantorovich", "Compute and certify a Kantorovich potential");
  common(ka);
  with_density(ka);
  with_n(ka);
  ka->add_option("--m", opt.m, "LP atoms per marginal")->check(CLI::PositiveNumber)->capture_default_str();
  ka->add_option("--grid", opt.grid, "Potential grid size (default 128)");
  ka->add_option("--cost", opt.cost, "Cost JSON")->required();
  ka->add_option("--truncate", opt.h, "Truncation level h (default: computed threshold)");
  ka->add_option("--max-iters", opt.max_iters, "Iteration cap")->capture_default_str();
  ka->add_option("--tol", opt.tol, "Residual and margin tolerance")->capture_default_str();

  CLI::App* sc = app.add_subcommand("semiclassical", "Trial-state upper bound curve");
  common(sc);
  with_density(sc);
  with_n(sc);
  sc->add_option("--cost", opt.cost, "Cost JSON")->required();
  sc->add_option("--eps", opt.eps, "Comma-separated eps values")->capture_default_str();
  sc->add_option("--atoms", opt.atoms, "Cells of the base plan")->check(CLI::PositiveNumber)->capture_default_str();
  sc->add_option("--grid", opt.grid, "Grid for the identity checks (default: 8 points per eta, at least 256)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kError;
  }

  try {
    if (wo->parsed()) return cmd_check_wellordering(opt, out);
    if (sp->parsed()) return cmd_seidl_plan(opt, out);
    if (sd->parsed()) return cmd_swap_demo(opt, out);
    if (ms->parsed()) return cmd_mmot_solve(opt, out);
    if (ka->parsed()) return cmd_kantorovich(opt, out);
    if (sc->parsed()) return cmd_semiclassical(opt, out);
  } catch (const SizeError& e) {
    err << "size error: " << e.what() << "\n";
    return kError;
  } catch (const io::InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}

int main_entry(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace sceot::cli
