// spectral.hpp -- momentum-space solution of the Grover walk on the torus.
//
// The evolution operator commutes with lattice translations, so the Fourier
// basis |k> = (1/sqrt N) sum_xy w^(x kx + y ky) |x,y>, w = exp(2 pi i / side),
// block-diagonalises it into N reduced 4x4 unitaries, one per momentum mode
// (kx, ky). Each block has eigenvalues {+1, -1, e^{i theta}, e^{-i theta}}
// with cos(theta) = [cos(2 pi kx/side) + cos(2 pi ky/side)] / 2, and
// closed-form eigenvectors; the (0,0) block degenerates to a three-fold +1
// eigenvalue. This module builds the blocks, their eigen-frames, the global
// eigenvalue gap, and exact time evolution carried out in momentum space.
#ifndef QWALK_SPECTRAL_HPP
#define QWALK_SPECTRAL_HPP

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "qwalk/evolution.hpp"
#include "qwalk/lattice.hpp"
#include "qwalk/parallel.hpp"

namespace qwalk {

struct MomentumMode {
  Index kx = 0;
  Index ky = 0;
};

// e^{2 pi i a / side} with the exponent folded into [0, side) first, so equal
// phases are computed from identical arguments (bitwise-reproducible).
template <typename Scalar = double>
Complex<Scalar> unit_phase(const LatticeGeometry& geometry, Index a) {
  const Index folded = geometry.wrap(a);
  const Scalar angle = Scalar(2) * std::numbers::pi_v<Scalar> *
                       Scalar(folded) / Scalar(geometry.side());
  return std::polar(Scalar(1), angle);
}

// Primitive root of unity w = e^{2 pi i / side}.
template <typename Scalar = double>
Complex<Scalar> omega_root(const LatticeGeometry& geometry) {
  return unit_phase<Scalar>(geometry, 1);
}

// theta in (0, pi] from cos(theta) = [cos(2 pi kx/s) + cos(2 pi ky/s)] / 2.
// The (0,0) mode is excluded: its block is handled by a degenerate frame.
template <typename Scalar = double>
Scalar theta_of_mode(const LatticeGeometry& geometry, Index kx, Index ky) {
  if (geometry.wrap(kx) == 0 && geometry.wrap(ky) == 0)
    throw std::domain_error("theta_of_mode: undefined for the (0,0) mode");
  const Scalar s = Scalar(geometry.side());
  const Scalar c =
      (std::cos(Scalar(2) * std::numbers::pi_v<Scalar> * Scalar(kx) / s) +
       std::cos(Scalar(2) * std::numbers::pi_v<Scalar> * Scalar(ky) / s)) /
      Scalar(2);
  return std::acos(std::clamp(c, Scalar(-1), Scalar(1)));
}

template <typename Scalar = double>
struct Eigenpair {
  Complex<Scalar> value;
  CoinVector<Scalar> vector;
};

// One momentum mode's reduced 4x4 operator together with its eigen-frame.
template <typename Scalar = double>
struct ReducedBlock {
  MomentumMode mode;
  CoinMatrix<Scalar> matrix;
  std::array<Eigenpair<Scalar>, 4> eigenpairs;
  bool closed_form = true;  // false when the numeric fallback was used
};

namespace detail {

// Reduced operator: row (d,s) of the block is the Grover-coin row (d, 1-s)
// times the travelling phase w^{(-1)^s (kx if d=0 else ky)}.
template <typename Scalar>
CoinMatrix<Scalar> reduced_matrix(const LatticeGeometry& geometry, Index kx,
                                  Index ky) {
  const CoinMatrix<Scalar> g = grover_coin<Scalar>();
  const Complex<Scalar> wx = unit_phase<Scalar>(geometry, kx);
  const Complex<Scalar> wy = unit_phase<Scalar>(geometry, ky);
  CoinMatrix<Scalar> m;
  m.row(0) = wx * g.row(1);
  m.row(1) = std::conj(wx) * g.row(0);
  m.row(2) = wy * g.row(3);
  m.row(3) = std::conj(wy) * g.row(2);
  return m;
}

// Orthonormal eigen-frame of the (0,0) block: the coin itself survives (the
// mode carries no phase), so +1 is three-fold degenerate and -1 simple.
template <typename Scalar>
std::array<Eigenpair<Scalar>, 4> origin_eigenpairs() {
  const Scalar r = Scalar(1) / std::sqrt(Scalar(2));
  std::array<Eigenpair<Scalar>, 4> pairs;
  pairs[0].value = Complex<Scalar>(1, 0);
  pairs[0].vector << r, -r, 0, 0;
  pairs[1].value = Complex<Scalar>(1, 0);
  pairs[1].vector << 0, 0, r, -r;
  pairs[2].value = Complex<Scalar>(1, 0);
  pairs[2].vector << Scalar(0.5), Scalar(0.5), Scalar(0.5), Scalar(0.5);
  pairs[3].value = Complex<Scalar>(-1, 0);
  pairs[3].vector << Scalar(0.5), Scalar(0.5), Scalar(-0.5), Scalar(-0.5);
  return pairs;
}

// Numeric fallback for modes where a closed-form denominator degenerates
// (e.g. theta = pi at the centre mode of even lattices): diagonalise the 4x4
// block and re-orthonormalise within degenerate eigenvalue groups.
template <typename Scalar>
std::array<Eigenpair<Scalar>, 4> numeric_eigenpairs(
    const CoinMatrix<Scalar>& m) {
  Eigen::ComplexEigenSolver<CoinMatrix<Scalar>> solver(m);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("reduced block eigensolver failed");

  std::array<Eigenpair<Scalar>, 4> pairs;
  std::array<int, 4> order{0, 1, 2, 3};
  const auto angle_of = [&](int i) {
    Scalar a = std::arg(solver.eigenvalues()(i));
    if (a < Scalar(0)) a += Scalar(2) * std::numbers::pi_v<Scalar>;
    return a;
  };
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return angle_of(a) < angle_of(b); });
  for (int i = 0; i < 4; ++i) {
    pairs[i].value = solver.eigenvalues()(order[i]);
    pairs[i].vector = solver.eigenvectors().col(order[i]);
  }

  // Modified Gram-Schmidt inside groups of (numerically) equal eigenvalues;
  // distinct eigenvalues of a unitary are orthogonal already.
  constexpr Scalar group_tol = Scalar(1e-8);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < i; ++j) {
      if (std::abs(pairs[i].value - pairs[j].value) < group_tol) {
        pairs[i].vector -=
            pairs[j].vector.dot(pairs[i].vector) * pairs[j].vector;
      }
    }
    pairs[i].vector.normalize();
  }
  return pairs;
}

}  // namespace detail

// Build one mode's reduced block with its eigen-frame attached. Generic modes
// get closed-form eigenvectors
//   nu^{+1}  ~ [wx(wy-1), 1-wy, wy(1-wx), wx-1]           / (4 sin(theta/2))
//   nu^{-1}  ~ [-wx(1+wy), -(1+wy), wy(1+wx), 1+wx]       / (4 cos(theta/2))
//   nu^{+-theta} ~ i [e-wx, e-wx*, e-wy, e-wy*] / (2 sqrt2 sin(+-theta)),
//                  e = exp(-+ i theta)
// verified against the matrix by residual tests; degenerate denominators
// (|sin| or |cos| of theta/2 below 1e-8) fall back to numeric diagonalisation.
template <typename Scalar = double>
ReducedBlock<Scalar> reduced_block(const LatticeGeometry& geometry, Index kx,
                                   Index ky) {
  ReducedBlock<Scalar> block;
  block.mode = {geometry.wrap(kx), geometry.wrap(ky)};
  block.matrix = detail::reduced_matrix<Scalar>(geometry, kx, ky);

  if (block.mode.kx == 0 && block.mode.ky == 0) {
    block.eigenpairs = detail::origin_eigenpairs<Scalar>();
    return block;
  }

  const Scalar theta = theta_of_mode<Scalar>(geometry, kx, ky);
  const Scalar sh = std::sin(theta / Scalar(2));
  const Scalar ch = std::cos(theta / Scalar(2));
  constexpr Scalar degenerate_tol = Scalar(1e-8);
  if (std::abs(sh) < degenerate_tol || std::abs(ch) < degenerate_tol) {
    block.eigenpairs = detail::numeric_eigenpairs<Scalar>(block.matrix);
    block.closed_form = false;
    return block;
  }

  const Complex<Scalar> wx = unit_phase<Scalar>(geometry, kx);
  const Complex<Scalar> wy = unit_phase<Scalar>(geometry, ky);
  const Complex<Scalar> one(1, 0);

  block.eigenpairs[0].value = Complex<Scalar>(1, 0);
  block.eigenpairs[0].vector << wx * (wy - one), one - wy, wy * (one - wx),
      wx - one;
  block.eigenpairs[0].vector /= Scalar(4) * sh;

  block.eigenpairs[1].value = Complex<Scalar>(-1, 0);
  block.eigenpairs[1].vector << -wx * (one + wy), -(one + wy), wy * (one + wx),
      one + wx;
  block.eigenpairs[1].vector /= Scalar(4) * ch;

  const auto rotating = [&](Scalar t) {
    Eigenpair<Scalar> pair;
    pair.value = std::polar(Scalar(1), t);
    const Complex<Scalar> e = std::polar(Scalar(1), -t);
    pair.vector << e - wx, e - std::conj(wx), e - wy, e - std::conj(wy);
    pair.vector *= Complex<Scalar>(0, 1) /
                   (Scalar(2) * std::sqrt(Scalar(2)) * std::sin(t));
    return pair;
  };
  block.eigenpairs[2] = rotating(theta);
  block.eigenpairs[3] = rotating(-theta);
  return block;
}

// All N reduced blocks plus the global eigenvalue gap.
template <typename Scalar = double>
struct EigenSystem {
  LatticeGeometry geometry;
  std::vector<ReducedBlock<Scalar>> blocks;  // indexed kx*side + ky
  Scalar gap = Scalar(0);

  explicit EigenSystem(const LatticeGeometry& g) : geometry(g) {}

  const ReducedBlock<Scalar>& block(Index kx, Index ky) const {
    return blocks[geometry.index(kx, ky)];
  }
};

namespace detail {

// Minimum unit-circle distance between distinct eigenvalues. Angles are
// sorted, merged into distinct values within `tol` (chord distance), and the
// minimum adjacent chord -- including the wraparound pair -- is returned.
template <typename Scalar>
Scalar spectral_gap_from_angles(std::vector<Scalar> angles, Scalar tol) {
  std::sort(angles.begin(), angles.end());
  const Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
  const auto chord = [](Scalar a, Scalar b) {
    return Scalar(2) * std::abs(std::sin((b - a) / Scalar(2)));
  };
  std::vector<Scalar> distinct;
  distinct.reserve(angles.size());
  distinct.push_back(angles.front());
  for (const Scalar a : angles)
    if (chord(distinct.back(), a) > tol) distinct.push_back(a);
  if (distinct.size() < 2)
    throw std::runtime_error("spectral gap undefined: single eigenvalue");
  // Wraparound: the first and last distinct angles may denote one value.
  if (chord(distinct.back(), distinct.front() + two_pi) <= tol)
    distinct.pop_back();
  Scalar gap = chord(distinct.back(), distinct.front() + two_pi);
  for (std::size_t i = 1; i < distinct.size(); ++i)
    gap = std::min(gap, chord(distinct[i - 1], distinct[i]));
  return gap;
}

template <typename Scalar>
Scalar angle_in_2pi(const Complex<Scalar>& z) {
  Scalar a = std::arg(z);
  if (a < Scalar(0)) a += Scalar(2) * std::numbers::pi_v<Scalar>;
  return a;
}

}  // namespace detail

// Construct every mode's block (parallel over modes; the merge is a plain
// indexed write, so the result is independent of scheduling) and compute the
// global gap over the full eigenvalue multiset, +-1 families included.
template <typename Scalar = double>
EigenSystem<Scalar> build_eigensystem(const LatticeGeometry& geometry,
                                      int threads = 1,
                                      Scalar distinct_tol = Scalar(1e-9)) {
  EigenSystem<Scalar> system(geometry);
  const Index side = geometry.side();
  system.blocks.resize(geometry.vertices());
  parallel_for_index(geometry.vertices(), threads, [&](Index v) {
    system.blocks[v] = reduced_block<Scalar>(geometry, v / side, v % side);
  });

  std::vector<Scalar> angles;
  angles.reserve(4 * geometry.vertices());
  for (const auto& block : system.blocks)
    for (const auto& pair : block.eigenpairs)
      angles.push_back(detail::angle_in_2pi(pair.value));
  system.gap = detail::spectral_gap_from_angles(std::move(angles), distinct_tol);
  return system;
}

// Small-argument estimate of the gap between two rotating eigenvalues:
// |e^{i theta(k)} - e^{i theta(k')}| ~ sqrt(2) pi / side * | |k| - |k'| |.
template <typename Scalar = double>
Scalar asymptotic_gap_estimate(const LatticeGeometry& geometry, Scalar knorm_a,
                               Scalar knorm_b) {
  return std::numbers::sqrt2_v<Scalar> * std::numbers::pi_v<Scalar> /
         Scalar(geometry.side()) * std::abs(knorm_a - knorm_b);
}

// Dense Fourier kernel W(a,b) = w^{a b}; synthesis of a lattice function is
// (1/side) W M W^T and analysis is the conjugate-kernel transform. At the
// target lattice sizes a dense matrix product is fast, exact in shape, and
// keeps the dependency surface to Eigen alone.
template <typename Scalar = double>
Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic> fourier_matrix(
    const LatticeGeometry& geometry) {
  const Index side = geometry.side();
  Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic> w(side, side);
  for (Index a = 0; a < side; ++a)
    for (Index b = 0; b < side; ++b)
      w(a, b) = unit_phase<Scalar>(geometry, a * b);
  return w;
}

// Momentum components psi_hat(c, kx*side+ky) of a position-space state:
// psi_hat(k) = (1/side) sum_xy w^{-(x kx + y ky)} psi(x, y).
template <typename Scalar>
AmplitudeMatrix<Scalar> fourier_analyze(const WalkState<Scalar>& state) {
  const Index side = state.geometry.side();
  const auto w = fourier_matrix<Scalar>(state.geometry);
  using Dense = Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;
  const Dense wc = w.conjugate();
  AmplitudeMatrix<Scalar> hat(4, state.geometry.vertices());
  Dense grid(side, side), transformed(side, side);
  for (int c = 0; c < 4; ++c) {
    for (Index x = 0; x < side; ++x)
      for (Index y = 0; y < side; ++y)
        grid(x, y) = state.amplitudes(c, state.geometry.index(x, y));
    transformed.noalias() = wc * grid * wc.transpose();
    transformed /= Scalar(side);
    for (Index kx = 0; kx < side; ++kx)
      for (Index ky = 0; ky < side; ++ky)
        hat(c, state.geometry.index(kx, ky)) = transformed(kx, ky);
  }
  return hat;
}

// Inverse of fourier_analyze: psi(x,y) = (1/side) sum_k w^{+(x kx + y ky)}
// psi_hat(k).
template <typename Scalar>
WalkState<Scalar> fourier_synthesize(const LatticeGeometry& geometry,
                                     const AmplitudeMatrix<Scalar>& hat) {
  const Index side = geometry.side();
  const auto w = fourier_matrix<Scalar>(geometry);
  using Dense = Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;
  WalkState<Scalar> state(geometry);
  Dense grid(side, side), transformed(side, side);
  for (int c = 0; c < 4; ++c) {
    for (Index kx = 0; kx < side; ++kx)
      for (Index ky = 0; ky < side; ++ky)
        grid(kx, ky) = hat(c, geometry.index(kx, ky));
    transformed.noalias() = w * grid * w.transpose();
    transformed /= Scalar(side);
    for (Index x = 0; x < side; ++x)
      for (Index y = 0; y < side; ++y)
        state.amplitudes(c, geometry.index(x, y)) = transformed(x, y);
  }
  return state;
}

namespace detail {

// lambda^t staying exactly on the unit circle: +-1 are handled as integers,
// rotating eigenvalues through their phase angle.
template <typename Scalar>
Complex<Scalar> unit_eigenvalue_power(const Complex<Scalar>& lambda, Index t) {
  if (lambda.imag() == Scalar(0)) {
    if (lambda.real() == Scalar(1)) return Complex<Scalar>(1, 0);
    if (lambda.real() == Scalar(-1))
      return Complex<Scalar>((t % 2 == 0) ? Scalar(1) : Scalar(-1), 0);
  }
  return std::polar(Scalar(1), Scalar(t) * std::arg(lambda));
}

}  // namespace detail

// Exact evolution of the origin-localized, coin-uniform start, carried out in
// momentum space. That start analyses to psi_hat(k) = u/side at every mode
// (u the uniform coin vector), so
//   psi_hat_t(k) = sum_i lambda_i^t <v_i|u>/side v_i
// and one inverse transform yields the position-space state after t steps.
template <typename Scalar = double>
WalkState<Scalar> fourier_evolve(const LatticeGeometry& geometry, Index t) {
  if (t < 0) throw std::invalid_argument("fourier_evolve: negative step count");
  const Index side = geometry.side();
  CoinVector<Scalar> u;
  u << Scalar(0.5), Scalar(0.5), Scalar(0.5), Scalar(0.5);

  AmplitudeMatrix<Scalar> hat(4, geometry.vertices());
  for (Index kx = 0; kx < side; ++kx) {
    for (Index ky = 0; ky < side; ++ky) {
      const ReducedBlock<Scalar> block = reduced_block<Scalar>(geometry, kx, ky);
      CoinVector<Scalar> column = CoinVector<Scalar>::Zero();
      for (const auto& pair : block.eigenpairs) {
        const Complex<Scalar> coeff = pair.vector.dot(u) / Scalar(side);
        column += detail::unit_eigenvalue_power(pair.value, t) * coeff *
                  pair.vector;
      }
      hat.col(geometry.index(kx, ky)) = column;
    }
  }
  return fourier_synthesize(geometry, hat);
}

}  // namespace qwalk

#endif  // QWALK_SPECTRAL_HPP
