// search.hpp -- abstract search: walk with one phase-flipped (marked) vertex.
//
// The walk starts in the global uniform state and uses the standard coin
// everywhere except the marked vertex, whose coin is -I. The probability at
// the marked vertex then grows from 1/N to Theta(1/log N) over
// O(sqrt(N log N)) steps before collapsing again; this module records that
// trace, locates the first confirmed probability maximum, and compares the
// averaged-distribution mixing behaviour of marked and unmarked walks.
#ifndef QWALK_SEARCH_HPP
#define QWALK_SEARCH_HPP

#include <Eigen/Dense>

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qwalk/evolution.hpp"
#include "qwalk/lattice.hpp"
#include "qwalk/limiting.hpp"
#include "qwalk/mixing.hpp"

namespace qwalk {

// Default search horizon: a few oscillation periods past the first hump.
inline Index default_search_horizon(Index side) {
  return static_cast<Index>(4.0 * sqrt_n_log_n(side)) + 30;
}

template <typename Scalar = double>
struct SearchRunResult {
  LatticeGeometry geometry{2};
  Index marked_x = 0;
  Index marked_y = 0;
  bool found = false;    // was the first maximum confirmed by a 10% drop?
  Index t_star = 0;      // step of the first confirmed maximum
  Scalar p_star = 0;     // marked-vertex probability at t_star
  std::vector<Scalar> marked_probability;  // p_marked(t), t = 0..t_max
};

// First confirmed maximum of a probability trace: track the running best and
// declare it final once the trace has fallen `drop` below it -- but only
// after the best has cleared `floor`, so the initial flat region (p ~ 1/N)
// cannot be mistaken for the hump.
template <typename Scalar>
std::optional<Index> first_confirmed_max(const std::vector<Scalar>& trace,
                                         Scalar floor, Scalar drop) {
  if (trace.empty()) return std::nullopt;
  Scalar best = trace[0];
  Index best_t = 0;
  for (std::size_t t = 1; t < trace.size(); ++t) {
    if (trace[t] > best) {
      best = trace[t];
      best_t = static_cast<Index>(t);
    } else if (best > floor && trace[t] < best * (Scalar(1) - drop)) {
      return best_t;
    }
  }
  return std::nullopt;  // never confirmed within the horizon
}

// Run the marked walk from the global uniform state and locate the first
// confirmed maximum of the marked-vertex probability.
template <typename Scalar = double>
SearchRunResult<Scalar> run_search(const LatticeGeometry& geometry,
                                   Index marked_x, Index marked_y,
                                   Index t_max = -1,
                                   Scalar drop = Scalar(0.10)) {
  if (!geometry.contains(marked_x, marked_y))
    throw std::out_of_range("run_search: marked vertex outside lattice");
  if (t_max < 0) t_max = default_search_horizon(geometry.side());

  SearchRunResult<Scalar> result;
  result.geometry = geometry;
  result.marked_x = marked_x;
  result.marked_y = marked_y;

  const Index marked = geometry.index(marked_x, marked_y);
  const MarkedCoinSpec<Scalar> marked_coin{grover_coin<Scalar>(), marked_x, marked_y};
  const WalkState<Scalar> initial = make_global_uniform<Scalar>(geometry);

  result.marked_probability.reserve(static_cast<std::size_t>(t_max) + 1);
  result.marked_probability.push_back(
      measure(initial).probabilities(marked));
  evolve(initial, marked_coin, t_max, [&](Index, const Distribution<Scalar>& p) {
    result.marked_probability.push_back(p.probabilities(marked));
  });

  const Scalar floor =
      Scalar(3) / static_cast<Scalar>(geometry.vertices());
  const auto t_star =
      first_confirmed_max(result.marked_probability, floor, drop);
  result.found = t_star.has_value();
  result.t_star = result.found ? *t_star : 0;
  result.p_star = result.found
                      ? result.marked_probability[static_cast<std::size_t>(
                            result.t_star)]
                      : Scalar(0);
  return result;
}

// Count minima of a distance trace that are prominent on both sides: strict
// local minima from which the trace climbs by a factor (1 + rel) in both
// directions before dipping below the minimum again. Micro-wiggles from the
// even/odd parity saw-tooth fail this test; genuine oscillation troughs pass.
template <typename Scalar>
Index prominent_minima_count(const std::vector<Scalar>& trace,
                             Scalar rel = Scalar(0.2)) {
  const std::size_t n = trace.size();
  Index count = 0;
  for (std::size_t t = 1; t + 1 < n; ++t) {
    if (!(trace[t] < trace[t - 1] && trace[t] <= trace[t + 1])) continue;
    const Scalar rise = (Scalar(1) + rel) * trace[t];

    bool left_ok = false;
    for (std::size_t j = t; j-- > 0;) {
      if (trace[j] >= rise) {
        left_ok = true;
        break;
      }
      if (trace[j] < trace[t]) break;
    }
    if (!left_ok) continue;

    bool right_ok = false;
    for (std::size_t j = t + 1; j < n; ++j) {
      if (trace[j] >= rise) {
        right_ok = true;
        break;
      }
      if (trace[j] < trace[t]) break;
    }
    if (right_ok) ++count;
  }
  return count;
}

// Empirical stationary reference of the marked walk: the averaged
// distribution over `steps` steps from the global uniform state.
template <typename Scalar = double>
Distribution<Scalar> stationary_reference_marked(const LatticeGeometry& geometry,
                                                 Index marked_x, Index marked_y,
                                                 Index steps = 10000) {
  const MarkedCoinSpec<Scalar> marked_coin{grover_coin<Scalar>(), marked_x, marked_y};
  return average_distribution(geometry, marked_coin,
                              make_global_uniform<Scalar>(geometry), steps);
}

// Side-by-side mixing comparison of the marked walk (against its own
// empirical average) and the unmarked walk (against the analytic limiting
// distribution): the marked walk mixes in O(sqrt(N log N)) with persistent
// prominent oscillations, the unmarked walk shows none.
template <typename Scalar = double>
struct SearchMixingReport {
  Index side = 0;
  Scalar epsilon = 0;
  Index m_eps = -1;
  bool reached = false;
  bool found = false;
  Index t_star = 0;
  Scalar p_star = 0;
  Index minima_marked = 0;
  Index minima_grover = 0;
  double m_over_t_star = 0;  // ratio of mixing time to hitting-style t*
};

template <typename Scalar = double>
SearchMixingReport<Scalar> search_mixing_comparison(
    const LatticeGeometry& geometry, Index marked_x, Index marked_y,
    Scalar epsilon, Index t_max = 10000) {
  if (!geometry.odd())
    throw std::domain_error(
        "search_mixing_comparison: analytic reference needs an odd side");

  SearchMixingReport<Scalar> report;
  report.side = geometry.side();
  report.epsilon = epsilon;

  const MarkedCoinSpec<Scalar> marked_coin{grover_coin<Scalar>(), marked_x, marked_y};
  const WalkState<Scalar> uniform_state = make_global_uniform<Scalar>(geometry);
  const Distribution<Scalar> marked_ref =
      average_distribution(geometry, marked_coin, uniform_state, t_max);
  const MixingTrace<Scalar> marked_trace =
      mixing_trace(geometry, marked_coin, uniform_state, marked_ref, t_max);
  const auto m = m_eps_from_trace(marked_trace.avg_to_ref, epsilon);
  report.reached = m.has_value();
  report.m_eps = report.reached ? *m : -1;

  const WalkState<Scalar> localized =
      make_localized_uniform_coin<Scalar>(geometry, 0, 0);
  const Distribution<Scalar> pi = limiting_distribution(geometry, localized);
  const MixingTrace<Scalar> grover_trace = mixing_trace(
      geometry, grover_coin<Scalar>(), localized, pi, t_max);

  const auto to_vec = [](const RealArray<Scalar>& a) {
    return std::vector<Scalar>(a.data(), a.data() + a.size());
  };
  report.minima_marked = prominent_minima_count(to_vec(marked_trace.avg_to_ref));
  report.minima_grover = prominent_minima_count(to_vec(grover_trace.avg_to_ref));

  const SearchRunResult<Scalar> search =
      run_search<Scalar>(geometry, marked_x, marked_y);
  report.found = search.found;
  report.t_star = search.t_star;
  report.p_star = search.p_star;
  if (report.reached && search.found && search.t_star > 0)
    report.m_over_t_star = static_cast<double>(report.m_eps) /
                           static_cast<double>(search.t_star);
  return report;
}

}  // namespace qwalk

#endif  // QWALK_SEARCH_HPP
