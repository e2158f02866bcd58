#pragma once

// Customization points shared by every numeric type a smoothed program can
// run on. Plain double is the passive type; adjoint.hpp adds the active one.

namespace smooth {

inline double primal(double x) noexcept { return x; }

/// Applies an elementary function whose value and derivative at primal(x)
/// were computed elsewhere.
inline double lift(double /*x*/, double value, double /*derivative*/) noexcept { return value; }

}  // namespace smooth
