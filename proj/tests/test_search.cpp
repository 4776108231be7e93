#include <doctest.h>

#include <cmath>
#include <vector>

#include "qwalk/search.hpp"

using namespace qwalk;

TEST_CASE("first confirmed maximum on synthetic traces") {
  // Rises to 3.0, then falls 10%+ below it: confirmed at index 3.
  const std::vector<double> hump{0.1, 1.0, 2.0, 3.0, 2.6, 2.0};
  CHECK(first_confirmed_max(hump, 0.5, 0.10) == Index(3));

  // Monotone rise: never confirmed.
  const std::vector<double> rising{0.1, 0.2, 0.3, 0.4};
  CHECK_FALSE(first_confirmed_max(rising, 0.05, 0.10).has_value());

  // Peak below the floor is never confirmed (noise guard).
  const std::vector<double> low{0.01, 0.02, 0.015, 0.01, 0.005};
  CHECK_FALSE(first_confirmed_max(low, 0.5, 0.10).has_value());

  // A shallow dip (< drop) does not confirm; the later higher peak does.
  const std::vector<double> double_hump{0.1, 2.0, 1.9, 2.5, 1.0};
  CHECK(first_confirmed_max(double_hump, 0.5, 0.10) == Index(3));
}

TEST_CASE("prominent minima counting") {
  // Deep V-shapes count.
  const std::vector<double> vees{3.0, 1.0, 3.0, 1.0, 3.0};
  CHECK(prominent_minima_count(vees, 0.2) == 2);

  // Micro-wiggle: the rebound never clears (1+rel) * minimum.
  const std::vector<double> wiggle{3.0, 2.99, 3.0, 2.98, 3.0};
  CHECK(prominent_minima_count(wiggle, 0.2) == 0);

  // The trace dips below the candidate minimum before rebounding on the
  // right: not prominent.
  const std::vector<double> undercut{3.0, 1.0, 1.1, 0.5, 0.4};
  CHECK(prominent_minima_count(undercut, 0.2) == 0);

  // Monotone decay has no minima at all.
  const std::vector<double> decay{3.0, 2.0, 1.0, 0.5, 0.25};
  CHECK(prominent_minima_count(decay, 0.2) == 0);
}

TEST_CASE("search run on a small lattice") {
  const LatticeGeometry g(21);
  const SearchRunResult<double> result = run_search<double>(g, 0, 0);

  REQUIRE(result.found);
  CHECK(result.t_star == 30);
  CHECK(result.p_star ==
        result.marked_probability[std::size_t(result.t_star)]);

  // t* is the running maximum of the prefix and strictly above the next step.
  for (Index t = 0; t <= result.t_star; ++t)
    CHECK(result.marked_probability[std::size_t(t)] <= result.p_star);
  CHECK(result.marked_probability[std::size_t(result.t_star + 1)] <
        result.p_star);

  // The trace starts at the uniform value 1/N.
  CHECK(result.marked_probability[0] ==
        doctest::Approx(1.0 / 441.0).epsilon(1e-12));

  CHECK_THROWS_AS(run_search<double>(g, 21, 0), std::out_of_range);
}

TEST_CASE("search is translation covariant") {
  const LatticeGeometry g(11);
  const SearchRunResult<double> origin = run_search<double>(g, 0, 0, 120);
  const SearchRunResult<double> moved = run_search<double>(g, 3, 7, 120);

  REQUIRE(origin.marked_probability.size() == moved.marked_probability.size());
  for (std::size_t t = 0; t < origin.marked_probability.size(); ++t)
    CHECK(origin.marked_probability[t] == moved.marked_probability[t]);
  CHECK(origin.t_star == moved.t_star);
  CHECK(origin.p_star == moved.p_star);
}

TEST_CASE("marked walk conserves norm") {
  const LatticeGeometry g(21);
  const MarkedCoinSpec<double> marked_coin{grover_coin<double>(), 0, 0};
  const WalkState<double> final_state =
      evolve(make_global_uniform<double>(g), marked_coin, 2000);
  CHECK(std::abs(squared_norm(final_state) - 1.0) < 1e-10);
}

TEST_CASE("empirical stationary reference of the marked walk") {
  const LatticeGeometry g(21);

  // T=1 averages only the initial (uniform) distribution.
  const Distribution<double> first =
      stationary_reference_marked<double>(g, 0, 0, 1);
  for (Index v = 0; v < g.vertices(); ++v)
    CHECK(first.probabilities(v) == doctest::Approx(1.0 / 441.0).epsilon(1e-12));

  // At a longer horizon the average concentrates at the marked vertex.
  const Distribution<double> ref =
      stationary_reference_marked<double>(g, 5, 9, 2000);
  Index argmax = 0;
  ref.probabilities.maxCoeff(&argmax);
  CHECK(argmax == g.index(5, 9));

  // Self-consistency: doubling T moves the reference only slightly.
  const Distribution<double> ref2 =
      stationary_reference_marked<double>(g, 5, 9, 4000);
  CHECK(total_variation(ref, ref2) < 1e-1);
}

TEST_CASE("mixing comparison report wiring") {
  const LatticeGeometry g(21);
  const SearchMixingReport<double> report =
      search_mixing_comparison<double>(g, 0, 0, 0.1, 4000);

  CHECK(report.side == 21);
  CHECK(report.reached);
  CHECK(report.m_eps > 0);
  REQUIRE(report.found);
  CHECK(report.t_star == 30);
  CHECK(report.p_star > 1.0 / 441.0);
  CHECK(report.minima_marked > report.minima_grover);
  CHECK(report.m_over_t_star > 0.0);

  CHECK_THROWS_AS(search_mixing_comparison<double>(LatticeGeometry(20), 0, 0,
                                                   0.1, 100),
                  std::domain_error);
}

TEST_CASE("default search horizon formula") {
  const Index side = 41;
  const Index expected =
      Index(4.0 * std::sqrt(1681.0 * std::log(1681.0))) + 30;
  CHECK(default_search_horizon(side) == expected);
}
