// mixing.hpp -- total-variation mixing diagnostics for the averaged walk.
//
// Definitions implemented here, for a reference distribution `ref`
// (the analytic limiting distribution, or an empirical stand-in):
//   * average mixing time  M_eps = min{ T : || P_bar(t) - ref || <= eps for
//     all t >= T }, measured at a finite horizon as 1 + the last recorded
//     threshold crossing, guarded by requiring the trailing 20% of the
//     horizon to stay below 0.9*eps (otherwise the result is "not reached");
//   * instantaneous mixing time  I_eps = min{ t : || P(t) - ref || <= eps },
//     which need not exist for a coherent walk;
//   * the spectral-gap convergence bound
//     || P_bar(T) - ref || <= (pi / (T * gap)) * ln(2N + 1).
// A classical exact-kernel random-walk baseline is included for contrast.
#ifndef QWALK_MIXING_HPP
#define QWALK_MIXING_HPP

#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qwalk/evolution.hpp"
#include "qwalk/fit.hpp"
#include "qwalk/lattice.hpp"
#include "qwalk/limiting.hpp"
#include "qwalk/parallel.hpp"

namespace qwalk {

inline constexpr const char* kToolkitVersion = "0.1.0";

// sqrt(N ln N), the scaling variable every fit in this toolkit is plotted
// against (natural log throughout).
inline double sqrt_n_log_n(Index side) {
  const double n = static_cast<double>(side) * static_cast<double>(side);
  return std::sqrt(n * std::log(n));
}

// Default measurement horizon: comfortably past the observed mixing range.
inline Index default_horizon(Index side) {
  return static_cast<Index>(std::max(1.0e4, 50.0 * sqrt_n_log_n(side)));
}

// Distance trace of one run. Row t (1-based) records
//   avg_to_ref[t-1]     = || P_bar(t) - ref ||   (P_bar averages steps 0..t-1)
//   inst_to_ref[t-1]    = || P(t)     - ref ||   (state after t steps)
//   avg_to_uniform[t-1] = || P_bar(t) - uniform ||
// inst0 keeps || P(0) - ref || so instantaneous scans can include t = 0.
template <typename Scalar = double>
struct MixingTrace {
  Index horizon = 0;
  RealArray<Scalar> avg_to_ref;
  RealArray<Scalar> inst_to_ref;
  RealArray<Scalar> avg_to_uniform;
  Scalar inst0 = 0;
};

// Evolve `initial` under `coin` for T_max steps, maintaining the running
// average incrementally (O(N) memory) and recording all three distances.
template <typename Scalar, typename Coin>
MixingTrace<Scalar> mixing_trace(const LatticeGeometry& geometry,
                                 const Coin& coin,
                                 const WalkState<Scalar>& initial,
                                 const Distribution<Scalar>& reference,
                                 Index t_max) {
  if (t_max < 1) throw std::invalid_argument("mixing_trace: horizon must be >= 1");
  if (reference.geometry != geometry || initial.geometry != geometry)
    throw std::invalid_argument("mixing_trace: geometry mismatch");

  const RealArray<Scalar>& ref = reference.probabilities;
  const RealArray<Scalar> uni =
      uniform_distribution<Scalar>(geometry).probabilities;

  MixingTrace<Scalar> trace;
  trace.horizon = t_max;
  trace.avg_to_ref.resize(t_max);
  trace.inst_to_ref.resize(t_max);
  trace.avg_to_uniform.resize(t_max);

  RealArray<Scalar> current = measure(initial).probabilities;  // P(0)
  trace.inst0 = (current - ref).abs().sum();
  RealArray<Scalar> running = RealArray<Scalar>::Zero(geometry.vertices());

  Index t = 0;
  const auto record_average = [&](Index step) {
    running += current;  // adds P(step - 1)
    const RealArray<Scalar> avg = running / Scalar(step);
    trace.avg_to_ref(step - 1) = (avg - ref).abs().sum();
    trace.avg_to_uniform(step - 1) = (avg - uni).abs().sum();
  };
  evolve(initial, coin, t_max, [&](Index step, const Distribution<Scalar>& p) {
    record_average(step);
    current = p.probabilities;  // P(step)
    trace.inst_to_ref(step - 1) = (current - ref).abs().sum();
    t = step;
  });
  (void)t;
  return trace;
}

// Average mixing time from a recorded trace: 1 + the last t whose averaged
// distance exceeds eps. Returns 0 when the threshold is never exceeded (the
// defining property then holds over the whole recorded horizon). When a
// crossing exists, the trailing guard window -- the final guard_frac of the
// horizon -- must stay below eps*guard_scale to certify it; otherwise the
// horizon is too short and the result is nullopt ("not reached").
template <typename Scalar>
std::optional<Index> m_eps_from_trace(const RealArray<Scalar>& avg_to_ref,
                                      Scalar eps,
                                      Scalar guard_frac = Scalar(0.2),
                                      Scalar guard_scale = Scalar(0.9)) {
  const Index t_max = avg_to_ref.size();
  Index last_above = -1;
  for (Index i = t_max - 1; i >= 0; --i) {
    if (avg_to_ref(i) > eps) {
      last_above = i;
      break;
    }
  }
  if (last_above < 0) return 0;
  const Index guard_start = static_cast<Index>(
      std::ceil(Scalar(t_max) * (Scalar(1) - guard_frac)));
  for (Index i = std::max<Index>(guard_start - 1, 0); i < t_max; ++i)
    if (avg_to_ref(i) > eps * guard_scale) return std::nullopt;
  return last_above + 2;  // index i is step i+1
}

// Instantaneous mixing time: first t (including t = 0) with distance <= eps.
template <typename Scalar>
std::optional<Index> i_eps_from_trace(Scalar inst0,
                                      const RealArray<Scalar>& inst_to_ref,
                                      Scalar eps) {
  if (inst0 <= eps) return 0;
  for (Index i = 0; i < inst_to_ref.size(); ++i)
    if (inst_to_ref(i) <= eps) return i + 1;
  return std::nullopt;
}

template <typename Scalar = double>
struct MixingResult {
  Scalar epsilon = 0;
  Index horizon = 0;
  std::optional<Index> average_mixing_time;        // M_eps
  std::optional<Index> instantaneous_mixing_time;  // I_eps
  MixingTrace<Scalar> trace;
};

// Full mixing measurement against a reference distribution.
template <typename Scalar, typename Coin>
MixingResult<Scalar> mixing_time(const LatticeGeometry& geometry,
                                 const Coin& coin,
                                 const WalkState<Scalar>& initial,
                                 const Distribution<Scalar>& reference,
                                 Scalar epsilon, Index t_max) {
  if (epsilon <= Scalar(0))
    throw std::domain_error("mixing_time: epsilon must be positive");
  if (std::abs(reference.probabilities.sum() - Scalar(1)) > Scalar(1e-6))
    throw std::invalid_argument("mixing_time: reference does not sum to 1");
  MixingResult<Scalar> result;
  result.epsilon = epsilon;
  result.horizon = t_max;
  result.trace = mixing_trace(geometry, coin, initial, reference, t_max);
  result.average_mixing_time = m_eps_from_trace(result.trace.avg_to_ref, epsilon);
  result.instantaneous_mixing_time =
      i_eps_from_trace(result.trace.inst0, result.trace.inst_to_ref, epsilon);
  return result;
}

// Upper bound on || P_bar(T) - pi || from the eigenvalue gap:
// (pi / (T * gap)) * ln(N * degree / 2 + 1) with degree 4, natural log.
template <typename Scalar = double>
Scalar aharonov_bound(const LatticeGeometry& geometry, Scalar gap, Index t) {
  if (t < 1) throw std::domain_error("aharonov_bound: T must be >= 1");
  if (!(gap > Scalar(0)))
    throw std::domain_error("aharonov_bound: gap must be positive");
  return std::numbers::pi_v<Scalar> / (Scalar(t) * gap) *
         std::log(Scalar(2) * Scalar(geometry.vertices()) + Scalar(1));
}

// ---------------------------------------------------------------------------
// Experiment sweeps
// ---------------------------------------------------------------------------

enum class CoinKind { grover, marked };

inline const char* coin_kind_name(CoinKind kind) {
  return kind == CoinKind::grover ? "grover" : "marked";
}

// One sweep row; `seconds` is wall clock for the stdout summary only and is
// never serialized (outputs must be byte-identical across runs).
struct ExperimentRecord {
  int id = 0;
  std::string kind;  // mixing | search | limiting | spectrum | classical
  Index side = 0;
  double epsilon = 0;
  std::string coin;
  Index marked_x = 0;
  Index marked_y = 0;
  Index horizon = 0;
  Index m_eps = -1;  // -1 when not reached
  Index i_eps = -1;
  bool reached = false;
  double seconds = 0;
  std::string version = kToolkitVersion;
};

struct SweepResult {
  std::vector<ExperimentRecord> records;
  std::vector<FitResult> linear_fit_per_epsilon;  // M_eps vs sqrt(N ln N)
  std::vector<FitResult> exponent_fit_per_side;   // ln M_eps vs ln(1/eps)
};

// Measure M_eps / I_eps across (side, eps). One trace per side serves every
// eps. Grover runs start localized at the origin and mix toward the analytic
// limiting distribution; marked runs start globally uniform and mix toward
// their own empirical average at `reference_steps`. Sides run in parallel;
// records and fits are assembled in fixed order.
template <typename Scalar = double>
SweepResult scaling_sweep(const std::vector<Index>& sides,
                          const std::vector<Scalar>& epsilons, CoinKind kind,
                          int threads = 1, Index marked_x = 0,
                          Index marked_y = 0, Index reference_steps = 10000) {
  if (sides.empty() || epsilons.empty())
    throw std::invalid_argument("scaling_sweep: empty sweep");

  struct SideOutcome {
    std::vector<std::optional<Index>> m;
    std::vector<std::optional<Index>> i;
    Index horizon = 0;
    double seconds = 0;
  };
  std::vector<SideOutcome> outcomes(sides.size());

  parallel_for_index(static_cast<Index>(sides.size()), threads, [&](Index j) {
    const Index side = sides[static_cast<std::size_t>(j)];
    const auto start = std::chrono::steady_clock::now();
    const LatticeGeometry geometry(side);
    const Index horizon = default_horizon(side);

    MixingTrace<Scalar> trace;
    if (kind == CoinKind::grover) {
      const WalkState<Scalar> initial =
          make_localized_uniform_coin<Scalar>(geometry, 0, 0);
      const Distribution<Scalar> reference =
          limiting_distribution(geometry, initial);
      trace = mixing_trace(geometry, grover_coin<Scalar>(), initial, reference,
                           horizon);
    } else {
      const MarkedCoinSpec<Scalar> marked_coin{grover_coin<Scalar>(), marked_x,
                                        marked_y};
      const WalkState<Scalar> initial = make_global_uniform<Scalar>(geometry);
      const Distribution<Scalar> reference =
          average_distribution(geometry, marked_coin, initial, reference_steps);
      trace = mixing_trace(geometry, marked_coin, initial, reference, horizon);
    }

    SideOutcome& out = outcomes[static_cast<std::size_t>(j)];
    out.horizon = horizon;
    for (const Scalar eps : epsilons) {
      out.m.push_back(m_eps_from_trace(trace.avg_to_ref, eps));
      out.i.push_back(i_eps_from_trace(trace.inst0, trace.inst_to_ref, eps));
    }
    out.seconds = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - start)
                      .count();
  });

  SweepResult result;
  int id = 0;
  for (std::size_t j = 0; j < sides.size(); ++j) {
    for (std::size_t e = 0; e < epsilons.size(); ++e) {
      ExperimentRecord rec;
      rec.id = id++;
      rec.kind = "mixing";
      rec.side = sides[j];
      rec.epsilon = static_cast<double>(epsilons[e]);
      rec.coin = coin_kind_name(kind);
      rec.marked_x = marked_x;
      rec.marked_y = marked_y;
      rec.horizon = outcomes[j].horizon;
      rec.reached = outcomes[j].m[e].has_value();
      rec.m_eps = rec.reached ? *outcomes[j].m[e] : -1;
      rec.i_eps = outcomes[j].i[e].has_value() ? *outcomes[j].i[e] : -1;
      rec.seconds = outcomes[j].seconds;
      result.records.push_back(std::move(rec));
    }
  }

  // Too few usable points (e.g. everything unreached) yields a labelled
  // empty fit instead of aborting the whole sweep.
  const auto fit_or_empty = [](const std::vector<double>& xs,
                               const std::vector<double>& ys,
                               std::string label) {
    if (xs.size() >= 2) return ols_fit(xs, ys, std::move(label));
    FitResult empty;
    empty.model = std::move(label);
    empty.points = xs.size();
    return empty;
  };

  // Per-epsilon straight-line fits of M_eps against sqrt(N ln N); unreached
  // entries are excluded (they are still flagged in the records).
  for (std::size_t e = 0; e < epsilons.size(); ++e) {
    std::vector<double> xs, ys;
    for (std::size_t j = 0; j < sides.size(); ++j) {
      if (!outcomes[j].m[e].has_value()) continue;
      xs.push_back(sqrt_n_log_n(sides[j]));
      ys.push_back(static_cast<double>(*outcomes[j].m[e]));
    }
    result.linear_fit_per_epsilon.push_back(fit_or_empty(
        xs, ys, "M_eps vs sqrt(N ln N), eps=" +
                    std::to_string(static_cast<double>(epsilons[e]))));
  }

  // Per-side exponent c from ln M_eps = -c ln eps + const.
  for (std::size_t j = 0; j < sides.size(); ++j) {
    std::vector<double> xs, ys;
    for (std::size_t e = 0; e < epsilons.size(); ++e) {
      if (!outcomes[j].m[e].has_value() || *outcomes[j].m[e] <= 0) continue;
      xs.push_back(std::log(1.0 / static_cast<double>(epsilons[e])));
      ys.push_back(std::log(static_cast<double>(*outcomes[j].m[e])));
    }
    result.exponent_fit_per_side.push_back(fit_or_empty(
        xs, ys, "ln M_eps vs ln(1/eps), side=" + std::to_string(sides[j])));
  }
  return result;
}

// ---------------------------------------------------------------------------
// Classical baseline: exact distribution iteration of the symmetric nearest-
// neighbour random walk (probability 1/4 per neighbour). Odd tori are
// aperiodic as-is; even tori are bipartite, so those use the lazy variant
// (stay with probability 1/2). No sampling anywhere.
// ---------------------------------------------------------------------------

struct ClassicalRecord {
  Index side = 0;
  double epsilon = 0;
  Index t_mix = -1;
  bool reached = false;
  bool lazy = false;
};

struct ClassicalBaselineResult {
  std::vector<ClassicalRecord> records;
  FitResult power_fit;  // ln t_mix vs ln N
};

// One application of the exact transition kernel: each vertex sends 1/4 of
// its mass to each torus neighbour; the lazy variant keeps half in place.
template <typename Scalar>
RealArray<Scalar> classical_step(const LatticeGeometry& geometry,
                                 const RealArray<Scalar>& p, bool lazy) {
  const Index side = geometry.side();
  RealArray<Scalar> q(geometry.vertices());
  for (Index x = 0; x < side; ++x) {
    const Index xm = (x == 0) ? side - 1 : x - 1;
    const Index xp = (x + 1 == side) ? 0 : x + 1;
    for (Index y = 0; y < side; ++y) {
      const Index ym = (y == 0) ? side - 1 : y - 1;
      const Index yp = (y + 1 == side) ? 0 : y + 1;
      q(geometry.index(x, y)) =
          Scalar(0.25) * (p(geometry.index(xm, y)) + p(geometry.index(xp, y)) +
                          p(geometry.index(x, ym)) + p(geometry.index(x, yp)));
    }
  }
  if (lazy) return Scalar(0.5) * p + Scalar(0.5) * q;
  return q;
}

// First t with || P(t) - uniform || <= eps, iterating the exact kernel from a
// point mass at the origin.
template <typename Scalar = double>
std::optional<Index> classical_mixing_time(const LatticeGeometry& geometry,
                                           Scalar eps, bool lazy,
                                           Index t_max = 1000000) {
  const Index n = geometry.vertices();
  RealArray<Scalar> p = RealArray<Scalar>::Zero(n);
  p(geometry.index(0, 0)) = Scalar(1);
  const Scalar uniform = Scalar(1) / Scalar(n);
  for (Index t = 1; t <= t_max; ++t) {
    p = classical_step(geometry, p, lazy);
    if ((p - uniform).abs().sum() <= eps) return t;
  }
  return std::nullopt;
}

template <typename Scalar = double>
ClassicalBaselineResult classical_mixing_baseline(
    const std::vector<Index>& sides, Scalar eps, int threads = 1,
    Index t_max = 1000000) {
  if (sides.empty())
    throw std::invalid_argument("classical_mixing_baseline: empty sweep");
  ClassicalBaselineResult result;
  result.records.resize(sides.size());
  parallel_for_index(static_cast<Index>(sides.size()), threads, [&](Index j) {
    const Index side = sides[static_cast<std::size_t>(j)];
    const LatticeGeometry geometry(side);
    const bool lazy = !geometry.odd();
    const auto t = classical_mixing_time(geometry, eps, lazy, t_max);
    ClassicalRecord& rec = result.records[static_cast<std::size_t>(j)];
    rec.side = side;
    rec.epsilon = static_cast<double>(eps);
    rec.lazy = lazy;
    rec.reached = t.has_value();
    rec.t_mix = t.has_value() ? *t : -1;
  });

  std::vector<double> xs, ys;
  for (const auto& rec : result.records) {
    if (!rec.reached) continue;
    xs.push_back(std::log(static_cast<double>(rec.side) *
                          static_cast<double>(rec.side)));
    ys.push_back(std::log(static_cast<double>(rec.t_mix)));
  }
  if (xs.size() >= 2) {
    result.power_fit = ols_fit(xs, ys, "ln t_mix vs ln N (classical)");
  } else {
    result.power_fit.model = "ln t_mix vs ln N (classical)";
    result.power_fit.points = xs.size();
  }
  return result;
}

}  // namespace qwalk

#endif  // QWALK_MIXING_HPP
