#include <doctest.h>

#include <cmath>
#include <cstring>

#include "qwalk/evolution.hpp"
#include "qwalk/limiting.hpp"

using namespace qwalk;

TEST_CASE("closed-form origin value") {
  CHECK(limiting_closed_form_origin(LatticeGeometry(3)) ==
        doctest::Approx(17.0 / 81.0).epsilon(1e-15));
  CHECK(limiting_closed_form_origin(LatticeGeometry(5)) ==
        doctest::Approx(0.104).epsilon(1e-15));
  CHECK_THROWS_AS(limiting_closed_form_origin(LatticeGeometry(4)),
                  std::domain_error);
}

TEST_CASE("spectral decomposition of the localized start") {
  const LatticeGeometry g(5);
  const WalkState<double> s = make_localized_uniform_coin<double>(g, 0, 0);
  const SpectralDecomposition<double> dec = decompose(g, s);

  // Full decomposition: squared coefficients sum to 1.
  CHECK(dec.coefficient_norm == doctest::Approx(1.0).epsilon(1e-12));

  // Coefficient 1/sqrt(N) on the uniform coin state in the zero mode, and
  // 1/sqrt(2N) on each oscillatory mode.
  const double n = double(g.vertices());
  int zero_mode_hits = 0, oscillatory = 0;
  for (const auto& entry : dec.entries) {
    const double mag = std::abs(entry.coefficient);
    if (entry.kx == 0 && entry.ky == 0 && mag > 1e-12) {
      ++zero_mode_hits;
      CHECK(mag == doctest::Approx(1.0 / std::sqrt(n)).epsilon(1e-12));
    }
    if (!(entry.kx == 0 && entry.ky == 0) && mag > 1e-12) {
      // Only the e^{+-i theta} branches overlap the start state; the +-1
      // eigenvectors are orthogonal to the uniform coin state off k = 0.
      ++oscillatory;
      CHECK(mag == doctest::Approx(1.0 / std::sqrt(2.0 * n)).epsilon(1e-10));
    }
  }
  CHECK(zero_mode_hits == 1);            // only |u> survives at k = 0
  CHECK(oscillatory == 2 * (25 - 1));    // two oscillatory branches per mode

  WalkState<double> unnormalized(g);
  unnormalized.amplitudes(0, 0) = Complex<double>(0.3, 0.0);
  CHECK_THROWS_AS(decompose(g, unnormalized), std::invalid_argument);
}

TEST_CASE("limiting distribution: closed-form origin and global structure") {
  for (const Index side : {3, 5, 7, 9}) {
    const LatticeGeometry g(side);
    const WalkState<double> s = make_localized_uniform_coin<double>(g, 0, 0);
    const Distribution<double> pi = limiting_distribution(g, s);

    CHECK(std::abs(pi(0, 0) - limiting_closed_form_origin(g)) < 1e-10);
    CHECK(pi.probabilities.sum() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(pi.probabilities.minCoeff() >= -1e-15);

    // Symmetries fixing the start vertex: x<->y swap and point reflection.
    for (Index x = 0; x < side; ++x)
      for (Index y = 0; y < side; ++y) {
        CHECK(std::abs(pi(x, y) - pi(y, x)) < 1e-10);
        CHECK(std::abs(pi(x, y) - pi(g.wrap(-x), g.wrap(-y))) < 1e-10);
      }
  }

  const LatticeGeometry even(4);
  CHECK_THROWS_AS(
      limiting_distribution(even, make_localized_uniform_coin<double>(even, 0, 0)),
      std::domain_error);
}

TEST_CASE("limiting distribution translates with the start site") {
  const LatticeGeometry g(5);
  const Distribution<double> at_origin =
      limiting_distribution(g, make_localized_uniform_coin<double>(g, 0, 0));
  const Distribution<double> shifted =
      limiting_distribution(g, make_localized_uniform_coin<double>(g, 1, 2));
  for (Index x = 0; x < 5; ++x)
    for (Index y = 0; y < 5; ++y)
      CHECK(std::abs(shifted(g.wrap(x + 1), g.wrap(y + 2)) - at_origin(x, y)) <
            1e-12);
}

TEST_CASE("limiting distribution is bitwise thread-count independent") {
  const LatticeGeometry g(9);
  const WalkState<double> s = make_localized_uniform_coin<double>(g, 0, 0);
  const Distribution<double> one = limiting_distribution(g, s, 1);
  const Distribution<double> four = limiting_distribution(g, s, 4);
  CHECK(std::memcmp(one.probabilities.data(), four.probabilities.data(),
                    sizeof(double) * std::size_t(g.vertices())) == 0);
}

TEST_CASE("limiting matches a long empirical average") {
  const LatticeGeometry g(3);
  const WalkState<double> s = make_localized_uniform_coin<double>(g, 0, 0);
  const Distribution<double> pi = limiting_distribution(g, s);
  const Distribution<double> avg =
      average_distribution(g, grover_coin<double>(), s, 50000);
  CHECK(total_variation(pi, avg) < 1e-3);
}

TEST_CASE("average distribution") {
  const LatticeGeometry g(5);
  const WalkState<double> s = make_localized_uniform_coin<double>(g, 0, 0);

  const Distribution<double> one = average_distribution(g, grover_coin<double>(), s, 1);
  CHECK((one.probabilities - measure(s).probabilities).abs().maxCoeff() == 0.0);

  const Distribution<double> pi = limiting_distribution(g, s);
  const Distribution<double> avg =
      average_distribution(g, grover_coin<double>(), s, 10000);
  CHECK(total_variation(avg, pi) < 0.02);

  CHECK_THROWS_AS(average_distribution(g, grover_coin<double>(), s, 0),
                  std::invalid_argument);
}

TEST_CASE("peak counting") {
  const LatticeGeometry g(6);
  Distribution<double> d = uniform_distribution<double>(g);
  CHECK(peak_count(d) == 0);  // no strict maxima on a flat distribution

  d.probabilities(g.index(1, 1)) = 0.5;
  CHECK(peak_count(d) == 1);
  CHECK(peak_locations(d).size() == 1);
  CHECK(peak_locations(d)[0] == std::pair<Index, Index>(1, 1));

  // A second strict maximum below half of the global one is filtered by
  // default but visible at threshold 0.
  d.probabilities(g.index(4, 4)) = 0.2;
  CHECK(peak_count(d) == 1);
  CHECK(peak_count(d, 0.0) == 2);

  d.probabilities(g.index(4, 4)) = 0.4;
  CHECK(peak_count(d) == 2);
}
