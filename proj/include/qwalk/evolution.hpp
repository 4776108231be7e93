// evolution.hpp -- one walk step in position space: a 4x4 coin applied at
// every vertex, followed by the flip-flop shift (move along the coin's axis
// and flip the direction bit). The shift is a pure index permutation, so a
// full step costs one small matrix product plus one gather, O(N) total.
#ifndef QWALK_EVOLUTION_HPP
#define QWALK_EVOLUTION_HPP

#include <stdexcept>
#include <utility>

#include "qwalk/lattice.hpp"

namespace qwalk {

// The Grover coin: reflection about the uniform coin vector,
// 2|u><u| - I = (diagonal -1/2, off-diagonal +1/2). Real, symmetric,
// involutory, and fixes |u> = (1,1,1,1)/2.
template <typename Scalar = double>
CoinMatrix<Scalar> grover_coin() {
  CoinMatrix<Scalar> g =
      CoinMatrix<Scalar>::Constant(Complex<Scalar>(Scalar(0.5), Scalar(0)));
  g.diagonal().setConstant(Complex<Scalar>(Scalar(-0.5), Scalar(0)));
  return g;
}

// Search coin: -I at one marked vertex, the base (Grover) coin elsewhere.
template <typename Scalar = double>
struct MarkedCoinSpec {
  CoinMatrix<Scalar> base = grover_coin<Scalar>();
  Index x0 = 0;
  Index y0 = 0;
};

namespace detail {

// dst <- flip-flop shift of src on geometry g. Component c = 2d+s at (x,y)
// moves to component 2d+(1-s) at the neighbour one step along axis d in
// direction (-1)^s, with periodic wraparound:
//   dst(1, x, y) = src(0, x-1, y)    dst(0, x, y) = src(1, x+1, y)
//   dst(3, x, y) = src(2, x, y-1)    dst(2, x, y) = src(3, x, y+1)
template <typename Scalar>
void shift_into(const LatticeGeometry& g, const AmplitudeMatrix<Scalar>& src,
                AmplitudeMatrix<Scalar>& dst) {
  const Index side = g.side();
  for (Index x = 0; x < side; ++x) {
    const Index xm = (x == 0) ? side - 1 : x - 1;
    const Index xp = (x + 1 == side) ? 0 : x + 1;
    for (Index y = 0; y < side; ++y) {
      const Index ym = (y == 0) ? side - 1 : y - 1;
      const Index yp = (y + 1 == side) ? 0 : y + 1;
      const Index v = g.index(x, y);
      dst(0, v) = src(1, g.index(xp, y));
      dst(1, v) = src(0, g.index(xm, y));
      dst(2, v) = src(3, g.index(x, yp));
      dst(3, v) = src(2, g.index(x, ym));
    }
  }
}

// In-place step with caller-provided scratch (no allocation per step).
template <typename Scalar>
void step_in_place(WalkState<Scalar>& state, const CoinMatrix<Scalar>& coin,
                   AmplitudeMatrix<Scalar>& scratch) {
  scratch.noalias() = coin * state.amplitudes;
  shift_into(state.geometry, scratch, state.amplitudes);
}

template <typename Scalar>
void step_marked_in_place(WalkState<Scalar>& state,
                          const MarkedCoinSpec<Scalar>& marked_coin,
                          AmplitudeMatrix<Scalar>& scratch) {
  if (!state.geometry.contains(marked_coin.x0, marked_coin.y0))
    throw std::out_of_range("marked vertex outside the lattice");
  const Index m = state.geometry.index(marked_coin.x0, marked_coin.y0);
  scratch.noalias() = marked_coin.base * state.amplitudes;
  scratch.col(m) = -state.amplitudes.col(m);  // coin acts as -I at the mark
  shift_into(state.geometry, scratch, state.amplitudes);
}

}  // namespace detail

// Flip-flop shift alone (an involution: applying it twice is the identity).
template <typename Scalar>
WalkState<Scalar> apply_shift(const WalkState<Scalar>& state) {
  WalkState<Scalar> out(state.geometry);
  detail::shift_into(state.geometry, state.amplitudes, out.amplitudes);
  return out;
}

// One step: coin at every vertex, then the flip-flop shift.
template <typename Scalar>
WalkState<Scalar> step(const WalkState<Scalar>& state,
                       const CoinMatrix<Scalar>& coin) {
  WalkState<Scalar> out = state;
  AmplitudeMatrix<Scalar> scratch(4, state.geometry.vertices());
  detail::step_in_place(out, coin, scratch);
  return out;
}

// One step of the search walk: -I at the marked vertex, base coin elsewhere,
// then the flip-flop shift.
template <typename Scalar>
WalkState<Scalar> step_marked(const WalkState<Scalar>& state,
                              const MarkedCoinSpec<Scalar>& marked_coin) {
  WalkState<Scalar> out = state;
  AmplitudeMatrix<Scalar> scratch(4, state.geometry.vertices());
  detail::step_marked_in_place(out, marked_coin, scratch);
  return out;
}

// Reuse-friendly measurement: overwrite dist with the vertex probabilities.
template <typename Scalar>
void measure_into(const WalkState<Scalar>& state, Distribution<Scalar>& dist) {
  if (dist.geometry != state.geometry)
    throw std::invalid_argument("measure_into: geometry mismatch");
  dist.probabilities =
      state.amplitudes.array().abs2().colwise().sum().transpose();
}

namespace detail {

template <typename Scalar, typename StepFn, typename Observer>
WalkState<Scalar> evolve_impl(WalkState<Scalar> state, Index t, StepFn&& do_step,
                              Observer&& observer) {
  if (t < 0) throw std::invalid_argument("evolve: negative step count");
  AmplitudeMatrix<Scalar> scratch(4, state.geometry.vertices());
  Distribution<Scalar> dist(state.geometry);
  for (Index k = 1; k <= t; ++k) {
    do_step(state, scratch);
    measure_into(state, dist);
    observer(k, dist);  // observers run sequentially, in step order
  }
  return state;
}

}  // namespace detail

// Apply t steps, invoking observer(t', distribution) after each step.
template <typename Scalar, typename Observer>
WalkState<Scalar> evolve(WalkState<Scalar> state, const CoinMatrix<Scalar>& coin,
                         Index t, Observer&& observer) {
  return detail::evolve_impl<Scalar>(
      std::move(state), t,
      [&coin](WalkState<Scalar>& s, AmplitudeMatrix<Scalar>& scratch) {
        detail::step_in_place(s, coin, scratch);
      },
      std::forward<Observer>(observer));
}

template <typename Scalar, typename Observer>
WalkState<Scalar> evolve(WalkState<Scalar> state,
                         const MarkedCoinSpec<Scalar>& marked_coin, Index t,
                         Observer&& observer) {
  return detail::evolve_impl<Scalar>(
      std::move(state), t,
      [&marked_coin](WalkState<Scalar>& s, AmplitudeMatrix<Scalar>& scratch) {
        detail::step_marked_in_place(s, marked_coin, scratch);
      },
      std::forward<Observer>(observer));
}

// Observer-free convenience overloads.
template <typename Scalar>
WalkState<Scalar> evolve(WalkState<Scalar> state, const CoinMatrix<Scalar>& coin,
                         Index t) {
  return evolve(std::move(state), coin, t,
                [](Index, const Distribution<Scalar>&) {});
}

template <typename Scalar>
WalkState<Scalar> evolve(WalkState<Scalar> state,
                         const MarkedCoinSpec<Scalar>& marked_coin, Index t) {
  return evolve(std::move(state), marked_coin, t,
                [](Index, const Distribution<Scalar>&) {});
}

}  // namespace qwalk

#endif  // QWALK_EVOLUTION_HPP
