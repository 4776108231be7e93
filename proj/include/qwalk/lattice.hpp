// lattice.hpp -- square-torus geometry, coined walker states, and
// probability distributions extracted from them.
//
// Conventions used throughout the library:
//   * The lattice is a side x side grid with periodic boundaries,
//     N = side^2 vertices, each of degree 4.
//   * A walker state carries one complex amplitude per (coin, vertex) pair.
//     The coin space is 4-dimensional with basis labelled (d, s):
//     d picks the axis (0 -> x, 1 -> y) and s the direction sign (-1)^s.
//     The canonical linear order is (0,0),(0,1),(1,0),(1,1), i.e. c = 2d+s.
//   * Vertices are linearised column-major in y: v = x*side + y, so iterating
//     columns walks the lattice row-major in x then y.
#ifndef QWALK_LATTICE_HPP
#define QWALK_LATTICE_HPP

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>

namespace qwalk {

using Index = Eigen::Index;

template <typename Scalar>
using Complex = std::complex<Scalar>;

// 4 coin rows by N vertex columns; column-major so one vertex's coin
// 4-vector is contiguous.
template <typename Scalar>
using AmplitudeMatrix = Eigen::Matrix<Complex<Scalar>, 4, Eigen::Dynamic>;

template <typename Scalar>
using CoinMatrix = Eigen::Matrix<Complex<Scalar>, 4, 4>;

template <typename Scalar>
using CoinVector = Eigen::Matrix<Complex<Scalar>, 4, 1>;

template <typename Scalar>
using RealArray = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

// Coin basis label (d, s): axis bit and direction bit.
struct CoinIndex {
  int d = 0;  // 0 -> x axis, 1 -> y axis
  int s = 0;  // walker moves by (-1)^s along the chosen axis
};

// Rank of a coin label in the canonical order (0,0),(0,1),(1,0),(1,1).
constexpr int coin_rank(int d, int s) { return 2 * d + s; }
constexpr int coin_rank(const CoinIndex& c) { return coin_rank(c.d, c.s); }

// Square torus geometry. Immutable after construction.
class LatticeGeometry {
 public:
  static constexpr int degree = 4;

  explicit LatticeGeometry(Index side) : side_(side) {
    if (side < 2) throw std::invalid_argument("lattice side must be >= 2");
  }

  Index side() const { return side_; }
  Index vertices() const { return side_ * side_; }
  bool odd() const { return side_ % 2 == 1; }

  // Mathematical (always non-negative) wrap of a coordinate onto [0, side).
  Index wrap(Index a) const {
    Index m = a % side_;
    return m < 0 ? m + side_ : m;
  }

  // Linear vertex index for in-range coordinates.
  Index index(Index x, Index y) const { return x * side_ + y; }
  Index x_of(Index v) const { return v / side_; }
  Index y_of(Index v) const { return v % side_; }

  bool contains(Index x, Index y) const {
    return x >= 0 && x < side_ && y >= 0 && y < side_;
  }

  friend bool operator==(const LatticeGeometry& a, const LatticeGeometry& b) {
    return a.side_ == b.side_;
  }
  friend bool operator!=(const LatticeGeometry& a, const LatticeGeometry& b) {
    return !(a == b);
  }

 private:
  Index side_;
};

// Quantum state of the coined walker: 4 x N complex amplitudes.
template <typename Scalar = double>
struct WalkState {
  LatticeGeometry geometry;
  AmplitudeMatrix<Scalar> amplitudes;

  explicit WalkState(const LatticeGeometry& g)
      : geometry(g),
        amplitudes(AmplitudeMatrix<Scalar>::Zero(4, g.vertices())) {}
};

// Probability distribution over the N vertices.
template <typename Scalar = double>
struct Distribution {
  LatticeGeometry geometry;
  RealArray<Scalar> probabilities;

  explicit Distribution(const LatticeGeometry& g)
      : geometry(g), probabilities(RealArray<Scalar>::Zero(g.vertices())) {}

  Scalar operator()(Index x, Index y) const {
    return probabilities(geometry.index(x, y));
  }
  Scalar& operator()(Index x, Index y) {
    return probabilities(geometry.index(x, y));
  }
};

template <typename Scalar>
Scalar squared_norm(const WalkState<Scalar>& state) {
  return state.amplitudes.squaredNorm();
}

// Walker localized at (x0, y0) with the uniform coin 4-vector (1/2 each).
template <typename Scalar = double>
WalkState<Scalar> make_localized_uniform_coin(const LatticeGeometry& geometry,
                                              Index x0, Index y0) {
  if (!geometry.contains(x0, y0))
    throw std::out_of_range("initial vertex outside the lattice");
  WalkState<Scalar> state(geometry);
  state.amplitudes.col(geometry.index(x0, y0))
      .setConstant(Complex<Scalar>(Scalar(0.5), Scalar(0)));
  return state;
}

// Every amplitude equal to 1/(2 sqrt(N)): uniform over vertices AND coin.
template <typename Scalar = double>
WalkState<Scalar> make_global_uniform(const LatticeGeometry& geometry) {
  WalkState<Scalar> state(geometry);
  const Scalar a = Scalar(1) / (Scalar(2) * Scalar(geometry.side()));
  state.amplitudes.setConstant(Complex<Scalar>(a, Scalar(0)));
  return state;
}

// Vertex probabilities: P(x,y) = sum over coin components of |psi|^2.
template <typename Scalar>
Distribution<Scalar> measure(const WalkState<Scalar>& state) {
  Distribution<Scalar> dist(state.geometry);
  dist.probabilities =
      state.amplitudes.array().abs2().colwise().sum().transpose();
  return dist;
}

// Total variation distance sum_v |a(v) - b(v)|, in [0, 2].
template <typename Scalar>
Scalar total_variation(const Distribution<Scalar>& a,
                       const Distribution<Scalar>& b) {
  if (a.geometry != b.geometry)
    throw std::invalid_argument("total_variation: geometry mismatch");
  return (a.probabilities - b.probabilities).abs().sum();
}

// The exact uniform distribution 1/N per vertex.
template <typename Scalar = double>
Distribution<Scalar> uniform_distribution(const LatticeGeometry& geometry) {
  Distribution<Scalar> dist(geometry);
  dist.probabilities.setConstant(Scalar(1) / Scalar(geometry.vertices()));
  return dist;
}

}  // namespace qwalk

#endif  // QWALK_LATTICE_HPP
