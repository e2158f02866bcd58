#pragma once

#include <string>
#include <string_view>

#include "smooth/scalar.hpp"

namespace smooth {

/// Perturbation distribution. Both densities are symmetric about zero,
/// strictly positive and integrate to one.
enum class KernelKind { Logistic, GaussianCdf };

KernelKind parse_kernel(std::string_view name);
std::string to_string(KernelKind kind);

/// Scale on the distance axis. Larger values give sharper transitions; the
/// infinite value selects the unsmoothed program.
class Sharpness {
 public:
  explicit Sharpness(double h);

  static Sharpness infinite() noexcept { return Sharpness(); }
  /// Accepts a positive float or the literal "inf".
  static Sharpness parse(std::string_view text);

  bool is_infinite() const noexcept { return infinite_; }
  /// Only meaningful for finite sharpness.
  double value() const noexcept { return h_; }

  std::string to_string() const;

  friend bool operator==(const Sharpness&, const Sharpness&) = default;

 private:
  Sharpness() noexcept : h_(0.0), infinite_(true) {}

  double h_;
  bool infinite_;
};

/// Increasing CDF of the kernel, evaluated without overflow for any finite x.
double kernel_cdf(double x, KernelKind kind);
/// Density of the kernel at x.
double kernel_pdf(double x, KernelKind kind);

/// Probability that the true branch of `d <= 0` is selected after perturbing d.
/// Equals cdf(-h*d); strictly decreasing in d for finite h, and the exact
/// step 1[d <= 0] when h is infinite. Throws NumericError for NaN.
double contrib_true(double d, Sharpness h, KernelKind kind);

/// Magnitude of d/dd contrib_true, i.e. h * pdf(h*d). Throws ConfigError for
/// infinite sharpness.
double contrib_density(double d, Sharpness h, KernelKind kind);

/// contrib_true over an arbitrary scalar so the dependence on d is recorded
/// by active types.
template <class T>
T contrib_true(const T& d, Sharpness h, KernelKind kind) {
  const double dp = primal(d);
  if (h.is_infinite()) return T(contrib_true(dp, h, kind));
  return lift(d, contrib_true(dp, h, kind), -contrib_density(dp, h, kind));
}

}  // namespace smooth
