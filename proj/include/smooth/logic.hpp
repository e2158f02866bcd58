#pragma once

#include <cmath>

#include "smooth/errors.hpp"
#include "smooth/kernel.hpp"

namespace smooth {

/// Kernel parameters needed to turn a comparison into a contribution.
struct Smoothing {
  Sharpness h = Sharpness(1.0);
  KernelKind kernel = KernelKind::Logistic;
};

/// Result of a smoothed comparison or clause: the unperturbed truth value and
/// the expected probability of truth under perturbation. `prob` stays in the
/// program's scalar type so its dependence on the inputs is differentiated.
template <class T>
struct SmoothBool {
  bool discrete = false;
  T prob{};
};

namespace detail {

template <class T>
double checked_distance(const T& a, const T& b) {
  const double pa = primal(a);
  const double pb = primal(b);
  if (std::isnan(pa) || std::isnan(pb)) throw NumericError("comparison with NaN operand");
  return pa - pb;
}

// With infinite sharpness the contribution is the host comparison itself, so
// ties resolve the same way as in the unsmoothed program.
template <class T>
SmoothBool<T> exact(bool truth) {
  return {truth, T(truth ? 1.0 : 0.0)};
}

}  // namespace detail

// Comparisons. The distance is a - b; `<` and `<=` share one contribution,
// `>` and `>=` its complement. At a tie the discrete value follows the host
// comparison while the contribution is exactly 1/2 for finite sharpness.

template <class T>
SmoothBool<T> le(const T& a, const T& b, const Smoothing& s) {
  const double d = detail::checked_distance(a, b);
  if (s.h.is_infinite()) return detail::exact<T>(d <= 0.0);
  return {d <= 0.0, contrib_true(T(a - b), s.h, s.kernel)};
}

template <class T>
SmoothBool<T> lt(const T& a, const T& b, const Smoothing& s) {
  const double d = detail::checked_distance(a, b);
  if (s.h.is_infinite()) return detail::exact<T>(d < 0.0);
  return {d < 0.0, contrib_true(T(a - b), s.h, s.kernel)};
}

template <class T>
SmoothBool<T> ge(const T& a, const T& b, const Smoothing& s) {
  const double d = detail::checked_distance(a, b);
  if (s.h.is_infinite()) return detail::exact<T>(d >= 0.0);
  return {d >= 0.0, T(1.0 - contrib_true(T(a - b), s.h, s.kernel))};
}

template <class T>
SmoothBool<T> gt(const T& a, const T& b, const Smoothing& s) {
  const double d = detail::checked_distance(a, b);
  if (s.h.is_infinite()) return detail::exact<T>(d > 0.0);
  return {d > 0.0, T(1.0 - contrib_true(T(a - b), s.h, s.kernel))};
}

/// Equality as `a <= b && a >= b`: prob = sigma * (1 - sigma), at most 1/4.
/// Unlike the other comparisons, discrete == true does not imply prob >= 1/2.
template <class T>
SmoothBool<T> eq(const T& a, const T& b, const Smoothing& s) {
  const double d = detail::checked_distance(a, b);
  if (s.h.is_infinite()) return detail::exact<T>(d == 0.0);
  const T sigma = contrib_true(T(a - b), s.h, s.kernel);
  return {d == 0.0, T(sigma * (1.0 - sigma))};
}

// Connectives treat the perturbations of their operands as independent. Both
// operands are always evaluated.

template <class T>
SmoothBool<T> conj(const SmoothBool<T>& p, const SmoothBool<T>& q) {
  return {p.discrete && q.discrete, T(p.prob * q.prob)};
}

template <class T>
SmoothBool<T> disj(const SmoothBool<T>& p, const SmoothBool<T>& q) {
  return {p.discrete || q.discrete, T(p.prob + q.prob - p.prob * q.prob)};
}

template <class T>
SmoothBool<T> negate(const SmoothBool<T>& p) {
  return {!p.discrete, T(1.0 - p.prob)};
}

template <class T>
SmoothBool<T> operator&&(const SmoothBool<T>& p, const SmoothBool<T>& q) {
  return conj(p, q);
}

template <class T>
SmoothBool<T> operator||(const SmoothBool<T>& p, const SmoothBool<T>& q) {
  return disj(p, q);
}

template <class T>
SmoothBool<T> operator!(const SmoothBool<T>& p) {
  return negate(p);
}

}  // namespace smooth
