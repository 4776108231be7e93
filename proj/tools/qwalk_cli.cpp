// qwalk -- command-line harness for the torus quantum-walk toolkit.
//
// Subcommands: evolve, spectrum, limiting, mixing, search, scaling,
// classical, reproduce. Every invocation echoes its parameters into a plain
// key=value manifest, embeds the manifest hash as a comment line in each CSV
// it writes, and prints a one-line summary. The pipeline contains no RNG, so
// identical invocations produce byte-identical files at any --threads value.
#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "qwalk/evolution.hpp"
#include "qwalk/fit.hpp"
#include "qwalk/io.hpp"
#include "qwalk/lattice.hpp"
#include "qwalk/limiting.hpp"
#include "qwalk/mixing.hpp"
#include "qwalk/search.hpp"
#include "qwalk/spectral.hpp"

namespace {

using qwalk::Index;

struct GlobalOptions {
  std::string out_dir = ".";
  int threads = 1;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

std::string fit_brief(const qwalk::FitResult& fit) {
  return fit.model + ": slope=" + qwalk::format_real(fit.slope) +
         " intercept=" + qwalk::format_real(fit.intercept) +
         " R2=" + qwalk::format_real(fit.r_squared);
}

// Shared manifest preamble: command name and toolkit version. Execution
// details (--threads, --out-dir) are deliberately left out -- they cannot
// change the computed data, so they must not change the hash sealed into the
// CSVs either.
qwalk::Manifest make_manifest(const std::string& command) {
  qwalk::Manifest manifest;
  manifest.set("command", command);
  manifest.set("version", qwalk::kToolkitVersion);
  return manifest;
}

void write_manifest_file(const GlobalOptions& global,
                         const std::string& stem,
                         const qwalk::Manifest& manifest) {
  qwalk::write_text_file(
      qwalk::join_path(global.out_dir, stem + "_manifest.txt"),
      manifest.text());
}

// --- evolve ----------------------------------------------------------------

struct EvolveArgs {
  Index side = 5;
  Index steps = 0;
  Index x0 = 0;
  Index y0 = 0;
};

int run_evolve(const GlobalOptions& global, const EvolveArgs& args) {
  const auto start = std::chrono::steady_clock::now();
  const qwalk::LatticeGeometry geometry(args.side);

  qwalk::Manifest manifest = make_manifest("evolve");
  manifest.set("side", args.side);
  manifest.set("steps", args.steps);
  manifest.set("x0", args.x0);
  manifest.set("y0", args.y0);
  const std::string stem = "evolve_side" + std::to_string(args.side) + "_t" +
                           std::to_string(args.steps);
  write_manifest_file(global, stem, manifest);

  const qwalk::WalkState<double> initial =
      qwalk::make_localized_uniform_coin<double>(geometry, args.x0, args.y0);
  const qwalk::WalkState<double> final_state =
      qwalk::evolve(initial, qwalk::grover_coin<double>(), args.steps);
  const qwalk::Distribution<double> dist = qwalk::measure(final_state);

  const std::string csv = qwalk::join_path(global.out_dir, stem + ".csv");
  qwalk::write_distribution_csv(csv, dist, manifest.hash_hex());

  std::cout << "evolve: side=" << args.side << " steps=" << args.steps
            << " start=(" << args.x0 << "," << args.y0
            << ") p_max=" << qwalk::format_real(dist.probabilities.maxCoeff())
            << " wrote " << csv << " ("
            << qwalk::format_real(seconds_since(start)) << "s)\n";
  return 0;
}

// --- spectrum ----------------------------------------------------------------

struct SpectrumArgs {
  Index side = 5;
};

int run_spectrum(const GlobalOptions& global, const SpectrumArgs& args) {
  const auto start = std::chrono::steady_clock::now();
  const qwalk::LatticeGeometry geometry(args.side);

  qwalk::Manifest manifest = make_manifest("spectrum");
  manifest.set("side", args.side);
  const std::string stem = "spectrum_side" + std::to_string(args.side);
  write_manifest_file(global, stem, manifest);

  const qwalk::EigenSystem<double> system =
      qwalk::build_eigensystem<double>(geometry, global.threads);
  const std::string csv = qwalk::join_path(global.out_dir, stem + ".csv");
  qwalk::write_spectrum_csv(csv, system, manifest.hash_hex());

  std::cout << "spectrum: side=" << args.side << " modes="
            << geometry.vertices() << " eigenvalues="
            << 4 * geometry.vertices()
            << " gap=" << qwalk::format_real(system.gap) << " wrote " << csv
            << " (" << qwalk::format_real(seconds_since(start)) << "s)\n";
  return 0;
}

// --- limiting ----------------------------------------------------------------

struct LimitingArgs {
  Index side = 5;
  Index x0 = 0;
  Index y0 = 0;
  bool empirical = false;
  Index steps = 10000;
};

int run_limiting(const GlobalOptions& global, const LimitingArgs& args) {
  const auto start = std::chrono::steady_clock::now();
  const qwalk::LatticeGeometry geometry(args.side);
  const bool empirical = args.empirical || !geometry.odd();

  qwalk::Manifest manifest = make_manifest("limiting");
  manifest.set("side", args.side);
  manifest.set("x0", args.x0);
  manifest.set("y0", args.y0);
  manifest.set("method", empirical ? "empirical" : "analytic");
  if (empirical) manifest.set("steps", args.steps);
  const std::string stem = "limiting_side" + std::to_string(args.side);
  write_manifest_file(global, stem, manifest);

  const qwalk::WalkState<double> initial =
      qwalk::make_localized_uniform_coin<double>(geometry, args.x0, args.y0);
  const qwalk::Distribution<double> pi =
      empirical ? qwalk::average_distribution(geometry,
                                              qwalk::grover_coin<double>(),
                                              initial, args.steps)
                : qwalk::limiting_distribution(geometry, initial,
                                               global.threads);

  const Index peaks = qwalk::peak_count(pi);
  const double at_start = pi(args.x0, args.y0);
  std::string meta = "N=" + std::to_string(geometry.vertices()) +
                     " method=" + (empirical ? "empirical" : "analytic");
  if (empirical) meta += " T=" + std::to_string(args.steps);
  meta += " peaks=" + std::to_string(peaks) +
          " p_origin=" + qwalk::format_real(at_start);

  const std::string csv = qwalk::join_path(global.out_dir, stem + ".csv");
  qwalk::write_distribution_csv(csv, pi, manifest.hash_hex(), meta);

  std::cout << "limiting: " << meta << " wrote " << csv << " ("
            << qwalk::format_real(seconds_since(start)) << "s)\n";
  return 0;
}

// --- mixing ----------------------------------------------------------------

struct MixingArgs {
  Index side = 5;
  std::vector<double> epsilons{0.1};
  std::string coin = "grover";
  Index marked_x = 0;
  Index marked_y = 0;
  Index horizon = -1;  // -1: use default_horizon(side)
  std::string trace_path;
  Index reference_steps = 10000;
};

int run_mixing(const GlobalOptions& global, const MixingArgs& args) {
  const auto start = std::chrono::steady_clock::now();
  const qwalk::LatticeGeometry geometry(args.side);
  const Index horizon =
      args.horizon > 0 ? args.horizon : qwalk::default_horizon(args.side);
  const bool marked = args.coin == "marked";

  qwalk::Manifest manifest = make_manifest("mixing");
  manifest.set("side", args.side);
  manifest.set("coin", args.coin);
  if (marked) {
    manifest.set("marked_x", args.marked_x);
    manifest.set("marked_y", args.marked_y);
  }
  manifest.set("horizon", horizon);
  for (const double eps : args.epsilons) manifest.set("epsilon", eps);
  const std::string stem =
      "mixing_side" + std::to_string(args.side) + "_" + args.coin;
  write_manifest_file(global, stem, manifest);

  // Reference: analytic limiting distribution where it exists (unmarked coin,
  // odd side); empirical time average otherwise.
  qwalk::MixingTrace<double> trace;
  if (marked) {
    const qwalk::MarkedCoinSpec<double> marked_coin{qwalk::grover_coin<double>(),
                                             args.marked_x, args.marked_y};
    const qwalk::WalkState<double> initial =
        qwalk::make_global_uniform<double>(geometry);
    const qwalk::Distribution<double> reference = qwalk::average_distribution(
        geometry, marked_coin, initial, args.reference_steps);
    trace = qwalk::mixing_trace(geometry, marked_coin, initial, reference, horizon);
  } else {
    const qwalk::WalkState<double> initial =
        qwalk::make_localized_uniform_coin<double>(geometry, 0, 0);
    const qwalk::Distribution<double> reference =
        geometry.odd()
            ? qwalk::limiting_distribution(geometry, initial, global.threads)
            : qwalk::average_distribution(geometry,
                                          qwalk::grover_coin<double>(),
                                          initial, args.reference_steps);
    trace = qwalk::mixing_trace(geometry, qwalk::grover_coin<double>(),
                                initial, reference, horizon);
  }

  const std::string trace_csv =
      args.trace_path.empty()
          ? qwalk::join_path(global.out_dir, stem + "_trace.csv")
          : args.trace_path;
  qwalk::write_mixing_trace_csv(trace_csv, trace, manifest.hash_hex());

  std::vector<qwalk::ExperimentRecord> records;
  int id = 0;
  for (const double eps : args.epsilons) {
    if (eps <= 0.0) throw std::domain_error("mixing: epsilon must be positive");
    if (eps >= 2.0)
      std::cout << "mixing: warning: epsilon=" << qwalk::format_real(eps)
                << " is >= 2, every distribution pair is closer than that\n";
    qwalk::ExperimentRecord rec;
    rec.id = id++;
    rec.kind = "mixing";
    rec.side = args.side;
    rec.epsilon = eps;
    rec.coin = args.coin;
    rec.marked_x = args.marked_x;
    rec.marked_y = args.marked_y;
    rec.horizon = horizon;
    const auto m = qwalk::m_eps_from_trace(trace.avg_to_ref, eps);
    const auto i = qwalk::i_eps_from_trace(trace.inst0, trace.inst_to_ref, eps);
    rec.reached = m.has_value();
    rec.m_eps = m.has_value() ? *m : -1;
    rec.i_eps = i.has_value() ? *i : -1;
    records.push_back(rec);
  }

  const std::string sweep_csv =
      qwalk::join_path(global.out_dir, stem + "_times.csv");
  qwalk::write_sweep_csv(sweep_csv, records, manifest.hash_hex());

  const double elapsed = seconds_since(start);
  for (const auto& rec : records) {
    std::cout << "mixing: side=" << rec.side << " coin=" << rec.coin
              << " eps=" << qwalk::format_real(rec.epsilon) << " M_eps=";
    if (rec.reached)
      std::cout << rec.m_eps;
    else
      std::cout << "not-reached(horizon=" << horizon << ")";
    std::cout << " I_eps=" << rec.i_eps;
    if (&rec == &records.back())
      std::cout << " wrote " << trace_csv << ", " << sweep_csv << " ("
                << qwalk::format_real(elapsed) << "s)";
    std::cout << "\n";
  }
  return 0;
}

// --- search ----------------------------------------------------------------

struct SearchArgs {
  Index side = 41;
  Index marked_x = 0;
  Index marked_y = 0;
  Index t_max = -1;
  Index snapshot_at = -1;  // emit full distribution at this step when >= 0
};

int run_search(const GlobalOptions& global, const SearchArgs& args) {
  const auto start = std::chrono::steady_clock::now();
  const qwalk::LatticeGeometry geometry(args.side);

  qwalk::Manifest manifest = make_manifest("search");
  manifest.set("side", args.side);
  manifest.set("marked_x", args.marked_x);
  manifest.set("marked_y", args.marked_y);
  const Index t_max =
      args.t_max > 0 ? args.t_max : qwalk::default_search_horizon(args.side);
  manifest.set("t_max", t_max);
  if (args.snapshot_at >= 0) manifest.set("snapshot_at", args.snapshot_at);
  const std::string stem = "search_side" + std::to_string(args.side);
  write_manifest_file(global, stem, manifest);

  const qwalk::SearchRunResult<double> result =
      qwalk::run_search<double>(geometry, args.marked_x, args.marked_y, t_max);
  const std::string trace_csv =
      qwalk::join_path(global.out_dir, stem + "_trace.csv");
  qwalk::write_search_trace_csv(trace_csv, result.marked_probability,
                                manifest.hash_hex());

  std::string snapshot_note;
  if (args.snapshot_at >= 0) {
    if (args.snapshot_at > t_max)
      throw std::domain_error("search: snapshot step exceeds t-max");
    const qwalk::MarkedCoinSpec<double> marked_coin{qwalk::grover_coin<double>(),
                                             args.marked_x, args.marked_y};
    const qwalk::WalkState<double> snapshot_state = qwalk::evolve(
        qwalk::make_global_uniform<double>(geometry), marked_coin, args.snapshot_at);
    const std::string snap_csv = qwalk::join_path(
        global.out_dir,
        stem + "_snapshot_t" + std::to_string(args.snapshot_at) + ".csv");
    qwalk::write_distribution_csv(snap_csv, qwalk::measure(snapshot_state),
                                  manifest.hash_hex());
    snapshot_note = ", " + snap_csv;
  }

  std::cout << "search: side=" << args.side << " marked=(" << args.marked_x
            << "," << args.marked_y << ")";
  if (result.found)
    std::cout << " t*=" << result.t_star
              << " p*=" << qwalk::format_real(result.p_star);
  else
    std::cout << " no confirmed maximum within t_max=" << t_max;
  std::cout << " wrote " << trace_csv << snapshot_note << " ("
            << qwalk::format_real(seconds_since(start)) << "s)\n";
  return 0;
}

// --- scaling ----------------------------------------------------------------

struct ScalingArgs {
  std::vector<Index> sides;
  std::vector<double> epsilons;
  std::string coin = "grover";
  Index marked_x = 0;
  Index marked_y = 0;
  Index reference_steps = 10000;
};

int run_scaling(const GlobalOptions& global, ScalingArgs args,
                const std::string& stem_override = "",
                const std::string& command = "scaling") {
  const auto start = std::chrono::steady_clock::now();
  if (args.sides.empty()) args.sides = {21, 31, 41, 51, 61, 71, 81, 91, 101};
  if (args.epsilons.empty()) args.epsilons = {0.1, 0.15, 0.2, 0.3, 0.4, 0.5};
  const qwalk::CoinKind kind = args.coin == "marked" ? qwalk::CoinKind::marked
                                                     : qwalk::CoinKind::grover;

  qwalk::Manifest manifest = make_manifest(command);
  for (const Index side : args.sides) manifest.set("side", side);
  for (const double eps : args.epsilons) manifest.set("epsilon", eps);
  manifest.set("coin", args.coin);
  if (kind == qwalk::CoinKind::marked) {
    manifest.set("marked_x", args.marked_x);
    manifest.set("marked_y", args.marked_y);
    manifest.set("reference_steps", args.reference_steps);
  }
  const std::string stem =
      stem_override.empty() ? "scaling_" + args.coin : stem_override;
  write_manifest_file(global, stem, manifest);

  const qwalk::SweepResult sweep = qwalk::scaling_sweep<double>(
      args.sides, args.epsilons, kind, global.threads, args.marked_x,
      args.marked_y, args.reference_steps);

  const std::string csv = qwalk::join_path(global.out_dir, stem + ".csv");
  qwalk::write_sweep_csv(csv, sweep.records, manifest.hash_hex());

  std::cout << command << ": coin=" << args.coin << " sides=" << args.sides.size()
            << " epsilons=" << args.epsilons.size() << " wrote " << csv << " ("
            << qwalk::format_real(seconds_since(start)) << "s)\n";
  for (const auto& fit : sweep.linear_fit_per_epsilon)
    std::cout << command << ": fit " << fit_brief(fit) << "\n";
  for (const auto& fit : sweep.exponent_fit_per_side)
    std::cout << command << ": fit " << fit_brief(fit) << "\n";
  return 0;
}

// --- classical ----------------------------------------------------------------

struct ClassicalArgs {
  std::vector<Index> sides;
  double epsilon = 0.1;
  Index t_max = 1000000;
};

int run_classical(const GlobalOptions& global, ClassicalArgs args) {
  const auto start = std::chrono::steady_clock::now();
  if (args.sides.empty())
    args.sides = {5, 9, 13, 17, 21, 25, 29, 33, 37, 41};
  if (args.epsilon <= 0.0)
    throw std::domain_error("classical: epsilon must be positive");

  qwalk::Manifest manifest = make_manifest("classical");
  for (const Index side : args.sides) manifest.set("side", side);
  manifest.set("epsilon", args.epsilon);
  manifest.set("t_max", args.t_max);
  const std::string stem = "classical";
  write_manifest_file(global, stem, manifest);

  const qwalk::ClassicalBaselineResult baseline =
      qwalk::classical_mixing_baseline<double>(args.sides, args.epsilon,
                                               global.threads, args.t_max);
  const std::string csv = qwalk::join_path(global.out_dir, stem + ".csv");
  qwalk::write_classical_csv(csv, baseline.records, manifest.hash_hex());

  std::cout << "classical: eps=" << qwalk::format_real(args.epsilon)
            << " sides=" << args.sides.size() << " wrote " << csv << " ("
            << qwalk::format_real(seconds_since(start)) << "s)\n";
  std::cout << "classical: fit " << fit_brief(baseline.power_fit) << "\n";
  return 0;
}

// --- reproduce ----------------------------------------------------------------

// Figure-reproduction presets. Each target regenerates the plot data of one
// display in the write-up:
//   fig1: analytic limiting distribution, side 41, start shifted to the
//         lattice centre -- a single sharp peak at the start site.
//   fig2: averaged-distance mixing sweep for the unmarked walk (M_eps vs
//         sqrt(N ln N) lines and the eps-exponent).
//   fig3: marked-vertex search at side 41 -- p_marked(t) trace, the snapshot
//         at the first confirmed maximum (t=80), and the T=1e4 time average.
//   fig4: mixing sweep of the marked walk toward its own empirical average.
int run_reproduce(const GlobalOptions& global, const std::string& target,
                  Index side) {
  if (target == "fig1") {
    LimitingArgs args;
    args.side = side > 0 ? side : 41;
    args.x0 = args.side / 2;
    args.y0 = args.side / 2;
    return run_limiting(global, args);
  }
  if (target == "fig2") {
    ScalingArgs args;
    args.coin = "grover";
    return run_scaling(global, std::move(args), "reproduce_fig2", "reproduce");
  }
  if (target == "fig3") {
    SearchArgs args;
    args.side = side > 0 ? side : 41;
    args.marked_x = 0;
    args.marked_y = 0;
    args.snapshot_at = 80;
    const int status = run_search(global, args);
    if (status != 0) return status;

    const auto start = std::chrono::steady_clock::now();
    const qwalk::LatticeGeometry geometry(args.side);
    qwalk::Manifest manifest = make_manifest("reproduce");
    manifest.set("target", "fig3");
    manifest.set("side", args.side);
    manifest.set("reference_steps", Index(10000));
    const std::string stem =
        "reproduce_fig3_average_side" + std::to_string(args.side);
    write_manifest_file(global, stem, manifest);
    const qwalk::Distribution<double> average =
        qwalk::stationary_reference_marked<double>(geometry, 0, 0, 10000);
    const std::string csv = qwalk::join_path(global.out_dir, stem + ".csv");
    qwalk::write_distribution_csv(csv, average, manifest.hash_hex());
    std::cout << "reproduce: fig3 average p(marked)="
              << qwalk::format_real(average(0, 0)) << " peaks="
              << qwalk::peak_count(average) << " wrote " << csv << " ("
              << qwalk::format_real(seconds_since(start)) << "s)\n";
    return 0;
  }
  if (target == "fig4") {
    ScalingArgs args;
    args.coin = "marked";
    args.sides = {21, 41, 61, 81, 101};
    args.epsilons = {0.1, 0.2};
    return run_scaling(global, std::move(args), "reproduce_fig4", "reproduce");
  }
  throw std::domain_error("reproduce: unknown target '" + target +
                          "' (expected fig1|fig2|fig3|fig4)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coined quantum walk on the 2D torus: spectra, limiting "
               "distributions, mixing times, search"};
  app.set_version_flag("--version", qwalk::kToolkitVersion);
  app.require_subcommand(1);

  GlobalOptions global;
  app.add_option("-o,--out-dir", global.out_dir,
                 "output directory for CSVs and manifests")
      ->envname("QWALK_OUT_DIR")
      ->capture_default_str();
  app.add_option("--threads", global.threads, "max worker threads")
      ->check(CLI::Range(1, 256))
      ->capture_default_str();

  EvolveArgs evolve_args;
  CLI::App* evolve = app.add_subcommand(
      "evolve", "run the walk from a localized start and dump P(t)");
  evolve->add_option("--side", evolve_args.side, "lattice side (>= 2)")
      ->required()
      ->check(CLI::Range(Index(2), Index(100000)));
  evolve->add_option("--steps", evolve_args.steps, "number of steps")
      ->required()
      ->check(CLI::Range(Index(0), Index(100000000)));
  evolve->add_option("--x0", evolve_args.x0, "start x");
  evolve->add_option("--y0", evolve_args.y0, "start y");

  SpectrumArgs spectrum_args;
  CLI::App* spectrum = app.add_subcommand(
      "spectrum", "dump all 4N eigenvalues and the spectral gap");
  spectrum->add_option("--side", spectrum_args.side, "lattice side (>= 2)")
      ->required()
      ->check(CLI::Range(Index(2), Index(100000)));

  LimitingArgs limiting_args;
  CLI::App* limiting = app.add_subcommand(
      "limiting", "limiting distribution (analytic for odd sides)");
  limiting->add_option("--side", limiting_args.side, "lattice side (>= 2)")
      ->required()
      ->check(CLI::Range(Index(2), Index(100000)));
  limiting->add_option("--x0", limiting_args.x0, "start x");
  limiting->add_option("--y0", limiting_args.y0, "start y");
  limiting->add_flag("--empirical", limiting_args.empirical,
                     "use the finite-T time average even on odd sides");
  limiting->add_option("--steps", limiting_args.steps,
                       "averaging horizon for the empirical method")
      ->check(CLI::Range(Index(1), Index(100000000)));

  MixingArgs mixing_args;
  CLI::App* mixing = app.add_subcommand(
      "mixing", "total-variation trace and mixing times for one lattice");
  mixing->add_option("--side", mixing_args.side, "lattice side (>= 2)")
      ->required()
      ->check(CLI::Range(Index(2), Index(100000)));
  mixing->add_option("--epsilon", mixing_args.epsilons,
                     "threshold(s), repeatable");
  mixing->add_option("--coin", mixing_args.coin, "coin kind")
      ->check(CLI::IsMember({"grover", "marked"}))
      ->capture_default_str();
  mixing->add_option("--marked-x", mixing_args.marked_x, "marked vertex x");
  mixing->add_option("--marked-y", mixing_args.marked_y, "marked vertex y");
  mixing->add_option("--horizon", mixing_args.horizon,
                     "trace length (default max(1e4, 50 sqrt(N ln N)))");
  mixing->add_option("--trace", mixing_args.trace_path, "trace CSV path");
  mixing->add_option("--reference-steps", mixing_args.reference_steps,
                     "horizon of the empirical reference average")
      ->check(CLI::Range(Index(1), Index(100000000)));

  SearchArgs search_args;
  CLI::App* search = app.add_subcommand(
      "search", "marked-vertex walk from the uniform state");
  search->add_option("--side", search_args.side, "lattice side (>= 2)")
      ->required()
      ->check(CLI::Range(Index(2), Index(100000)));
  search->add_option("--marked-x", search_args.marked_x, "marked vertex x");
  search->add_option("--marked-y", search_args.marked_y, "marked vertex y");
  search->add_option("--t-max", search_args.t_max,
                     "trace horizon (default 4 sqrt(N ln N) + 30)");
  search->add_option("--dump-snapshot-at", search_args.snapshot_at,
                     "also write the full distribution at this step");

  ScalingArgs scaling_args;
  CLI::App* scaling = app.add_subcommand(
      "scaling", "M_eps sweep across lattice sides with fits");
  scaling->add_option("--side", scaling_args.sides,
                      "lattice sides, repeatable (default 21..101)");
  scaling->add_option("--epsilon", scaling_args.epsilons,
                      "thresholds, repeatable (default 0.1..0.5)");
  scaling->add_option("--coin", scaling_args.coin, "coin kind")
      ->check(CLI::IsMember({"grover", "marked"}))
      ->capture_default_str();
  scaling->add_option("--marked-x", scaling_args.marked_x, "marked vertex x");
  scaling->add_option("--marked-y", scaling_args.marked_y, "marked vertex y");
  scaling->add_option("--reference-steps", scaling_args.reference_steps,
                      "horizon of the marked walk's reference average");

  ClassicalArgs classical_args;
  CLI::App* classical = app.add_subcommand(
      "classical", "exact-kernel classical random-walk mixing baseline");
  classical->add_option("--side", classical_args.sides,
                        "lattice sides, repeatable (default 5,9,...,41)");
  classical->add_option("--epsilon", classical_args.epsilon, "threshold")
      ->capture_default_str();
  classical->add_option("--t-max", classical_args.t_max, "iteration cap")
      ->capture_default_str();

  std::string reproduce_target;
  Index reproduce_side = -1;
  CLI::App* reproduce = app.add_subcommand(
      "reproduce", "regenerate the plot data behind one figure");
  reproduce->add_option("target", reproduce_target, "fig1|fig2|fig3|fig4")
      ->required();
  reproduce->add_option("--side", reproduce_side,
                        "lattice side for fig1/fig3 (default 41)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Normalize every usage error to exit code 1; --help/--version exit 0.
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    std::filesystem::create_directories(global.out_dir);
    if (*evolve) return run_evolve(global, evolve_args);
    if (*spectrum) return run_spectrum(global, spectrum_args);
    if (*limiting) return run_limiting(global, limiting_args);
    if (*mixing) return run_mixing(global, mixing_args);
    if (*search) return run_search(global, search_args);
    if (*scaling) return run_scaling(global, scaling_args);
    if (*classical) return run_classical(global, classical_args);
    if (*reproduce) return run_reproduce(global, reproduce_target,
                                         reproduce_side);
  } catch (const std::domain_error& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 3;
  }
  return 1;
}
