// limiting.hpp -- the limiting (stationary) distribution of the coherent
// walk and empirical time averages.
//
// A unitary walk never converges pointwise, but its time-averaged vertex
// distribution P_bar(T) = (1/T) sum_{t=0}^{T-1} P(t) does converge; the limit
// is obtained spectrally: decompose the initial state over all 4N eigenpairs,
// group eigenpairs into classes of EQUAL eigenvalue (equal across different
// momentum modes, not merely within one), and sum per class
//   pi(v) = sum_class sum_coin | sum_{i in class} a_i * eigvec_i(coin, v) |^2.
// Cross-mode interference inside the degenerate +-1 families and inside
// repeated rotating eigenvalues is what the class grouping captures; a
// per-eigenvector sum without the grouping disagrees with both the closed
// form at the origin and long-run empirical averages (see README).
#ifndef QWALK_LIMITING_HPP
#define QWALK_LIMITING_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qwalk/evolution.hpp"
#include "qwalk/lattice.hpp"
#include "qwalk/parallel.hpp"
#include "qwalk/spectral.hpp"

namespace qwalk {

// One eigen-component of the initial state: eigenvalue angle, momentum mode,
// expansion coefficient and the 4-vector coin part. The full position-space
// eigenvector it stands for is v(coin) * w^{x kx + y ky} / side.
template <typename Scalar = double>
struct SpectralEntry {
  Scalar angle = 0;  // arg(eigenvalue) folded into [0, 2 pi)
  Index kx = 0;
  Index ky = 0;
  Complex<Scalar> coefficient{0, 0};
  CoinVector<Scalar> vector;
};

// The initial state expanded over all 4N eigenpairs, sorted by eigenvalue
// angle and partitioned into classes of equal eigenvalue.
template <typename Scalar = double>
struct SpectralDecomposition {
  LatticeGeometry geometry;
  std::vector<SpectralEntry<Scalar>> entries;
  std::vector<std::size_t> class_offsets;  // class c = [offsets[c], offsets[c+1])
  Scalar coefficient_norm = 0;             // sum |a_i|^2, 1 for a normalized state

  explicit SpectralDecomposition(const LatticeGeometry& g) : geometry(g) {}

  std::size_t class_count() const {
    return class_offsets.empty() ? 0 : class_offsets.size() - 1;
  }
};

// Expand `initial` over the eigenbasis. Classes group eigenvalues within
// `distinct_tol` chord distance on the unit circle; for this walk the
// smallest genuinely distinct separation is ~sqrt(2)*pi/side, many orders
// above the tolerance.
template <typename Scalar>
SpectralDecomposition<Scalar> decompose(const LatticeGeometry& geometry,
                                        const WalkState<Scalar>& initial,
                                        Scalar distinct_tol = Scalar(1e-9)) {
  if (std::abs(squared_norm(initial) - Scalar(1)) > Scalar(1e-10))
    throw std::invalid_argument("decompose: initial state is not normalized");

  const Index side = geometry.side();
  const AmplitudeMatrix<Scalar> hat = fourier_analyze(initial);

  SpectralDecomposition<Scalar> dec(geometry);
  dec.entries.reserve(static_cast<std::size_t>(4 * geometry.vertices()));
  for (Index kx = 0; kx < side; ++kx) {
    for (Index ky = 0; ky < side; ++ky) {
      const ReducedBlock<Scalar> block = reduced_block<Scalar>(geometry, kx, ky);
      const CoinVector<Scalar> column = hat.col(geometry.index(kx, ky));
      for (const auto& pair : block.eigenpairs) {
        SpectralEntry<Scalar> entry;
        entry.angle = detail::angle_in_2pi(pair.value);
        entry.kx = kx;
        entry.ky = ky;
        entry.coefficient = pair.vector.dot(column);  // <v|psi_hat(k)>
        entry.vector = pair.vector;
        dec.coefficient_norm += std::norm(entry.coefficient);
        dec.entries.push_back(std::move(entry));
      }
    }
  }

  // Strict total order => deterministic accumulation order inside classes.
  std::sort(dec.entries.begin(), dec.entries.end(),
            [](const SpectralEntry<Scalar>& a, const SpectralEntry<Scalar>& b) {
              if (a.angle != b.angle) return a.angle < b.angle;
              if (a.kx != b.kx) return a.kx < b.kx;
              return a.ky < b.ky;
            });

  const auto chord = [](Scalar a, Scalar b) {
    return Scalar(2) * std::abs(std::sin((b - a) / Scalar(2)));
  };
  const Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;

  // If the first and last sorted angles denote the same eigenvalue (a cluster
  // straddling angle 0), rotate that tail to the front before partitioning.
  std::size_t tail = dec.entries.size();
  while (tail > 0 &&
         chord(dec.entries[tail - 1].angle, dec.entries.front().angle + two_pi) <=
             distinct_tol)
    --tail;
  if (tail < dec.entries.size())
    std::rotate(dec.entries.begin(), dec.entries.begin() + tail,
                dec.entries.end());

  dec.class_offsets.push_back(0);
  for (std::size_t i = 1; i < dec.entries.size(); ++i) {
    const Scalar prev = dec.entries[i - 1].angle;
    Scalar cur = dec.entries[i].angle;
    if (cur < prev) cur += two_pi;  // rotated tail wraps past 2 pi
    if (chord(prev, cur) > distinct_tol) dec.class_offsets.push_back(i);
  }
  dec.class_offsets.push_back(dec.entries.size());
  return dec;
}

// Exact limiting distribution of the averaged walk for an odd-sided torus.
// Deterministic for any thread count: classes are processed in fixed chunks
// whose partial sums are combined in chunk order.
template <typename Scalar>
Distribution<Scalar> limiting_distribution(const LatticeGeometry& geometry,
                                           const WalkState<Scalar>& initial,
                                           int threads = 1) {
  if (!geometry.odd())
    throw std::domain_error(
        "limiting_distribution: analytic path requires an odd lattice side "
        "(use average_distribution for even sides)");
  if (initial.geometry != geometry)
    throw std::invalid_argument("limiting_distribution: geometry mismatch");

  const SpectralDecomposition<Scalar> dec = decompose(geometry, initial);
  const Index side = geometry.side();
  const Index n = geometry.vertices();
  const auto w = fourier_matrix<Scalar>(geometry);

  const std::size_t classes = dec.class_count();
  const std::size_t chunks = std::min<std::size_t>(64, std::max<std::size_t>(classes, 1));
  std::vector<RealArray<Scalar>> partial(
      chunks, RealArray<Scalar>::Zero(n));

  using Dense = Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;
  parallel_for_index(static_cast<Index>(chunks), threads, [&](Index chunk) {
    const std::size_t begin_class = (classes * static_cast<std::size_t>(chunk)) / chunks;
    const std::size_t end_class =
        (classes * (static_cast<std::size_t>(chunk) + 1)) / chunks;
    // Per-coin accumulators, stored transposed (y rows, x columns) so that
    // column x is the contiguous probability segment [x*side, x*side+side).
    std::array<Dense, 4> amp;
    for (auto& a : amp) a = Dense::Zero(side, side);
    RealArray<Scalar>& out = partial[static_cast<std::size_t>(chunk)];

    for (std::size_t cls = begin_class; cls < end_class; ++cls) {
      for (auto& a : amp) a.setZero();
      for (std::size_t i = dec.class_offsets[cls]; i < dec.class_offsets[cls + 1];
           ++i) {
        const SpectralEntry<Scalar>& entry = dec.entries[i];
        const auto colx = w.col(entry.kx);
        const auto coly = w.col(entry.ky);
        for (int c = 0; c < 4; ++c) {
          const Complex<Scalar> weight =
              entry.coefficient * entry.vector(c) / Scalar(side);
          if (weight == Complex<Scalar>(0, 0)) continue;
          amp[static_cast<std::size_t>(c)].noalias() +=
              weight * (coly * colx.transpose());
        }
      }
      for (int c = 0; c < 4; ++c)
        for (Index x = 0; x < side; ++x)
          out.segment(x * side, side) +=
              amp[static_cast<std::size_t>(c)].col(x).array().abs2();
    }
  });

  Distribution<Scalar> pi(geometry);
  for (const auto& p : partial) pi.probabilities += p;  // fixed chunk order
  return pi;
}

// Arithmetic mean of the measured distributions at steps 0 .. T-1.
template <typename Scalar, typename Coin>
Distribution<Scalar> average_distribution(const LatticeGeometry& geometry,
                                          const Coin& coin,
                                          const WalkState<Scalar>& initial,
                                          Index steps) {
  if (steps < 1)
    throw std::invalid_argument("average_distribution: need at least one step");
  if (initial.geometry != geometry)
    throw std::invalid_argument("average_distribution: geometry mismatch");
  RealArray<Scalar> running = measure(initial).probabilities;  // t = 0
  evolve(initial, coin, steps - 1,
         [&running](Index, const Distribution<Scalar>& dist) {
           running += dist.probabilities;
         });
  Distribution<Scalar> avg(geometry);
  avg.probabilities = running / Scalar(steps);
  return avg;
}

// Closed form of the limiting distribution at the starting vertex for odd
// sides: (4N - 8 sqrt(N) + 5) / N^2.
template <typename Scalar = double>
Scalar limiting_closed_form_origin(const LatticeGeometry& geometry) {
  if (!geometry.odd())
    throw std::domain_error(
        "limiting_closed_form_origin: defined for odd lattice sides only");
  const Scalar n = Scalar(geometry.vertices());
  const Scalar root = Scalar(geometry.side());
  return (Scalar(4) * n - Scalar(8) * root + Scalar(5)) / (n * n);
}

// Vertices that strictly dominate all four torus neighbours AND reach at
// least `min_height_frac` of the global maximum. The height filter separates
// genuine peaks from the O(N) interference ripples every coherent-walk
// distribution carries; pass 0 to count every strict local maximum.
template <typename Scalar>
std::vector<std::pair<Index, Index>> peak_locations(
    const Distribution<Scalar>& dist, Scalar min_height_frac = Scalar(0.5)) {
  const LatticeGeometry& g = dist.geometry;
  const Index side = g.side();
  const Scalar floor = dist.probabilities.maxCoeff() * min_height_frac;
  std::vector<std::pair<Index, Index>> peaks;
  for (Index x = 0; x < side; ++x) {
    const Index xm = (x == 0) ? side - 1 : x - 1;
    const Index xp = (x + 1 == side) ? 0 : x + 1;
    for (Index y = 0; y < side; ++y) {
      const Index ym = (y == 0) ? side - 1 : y - 1;
      const Index yp = (y + 1 == side) ? 0 : y + 1;
      const Scalar v = dist.probabilities(g.index(x, y));
      if (v >= floor && v > dist.probabilities(g.index(xm, y)) &&
          v > dist.probabilities(g.index(xp, y)) &&
          v > dist.probabilities(g.index(x, ym)) &&
          v > dist.probabilities(g.index(x, yp)))
        peaks.emplace_back(x, y);
    }
  }
  return peaks;
}

template <typename Scalar>
Index peak_count(const Distribution<Scalar>& dist,
                 Scalar min_height_frac = Scalar(0.5)) {
  return static_cast<Index>(peak_locations(dist, min_height_frac).size());
}

}  // namespace qwalk

#endif  // QWALK_LIMITING_HPP
