#include "smooth/kernel.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

#include "smooth/errors.hpp"

namespace smooth {

KernelKind parse_kernel(std::string_view name) {
  if (name == "logistic") return KernelKind::Logistic;
  if (name == "gauss") return KernelKind::GaussianCdf;
  throw ConfigError("unknown kernel '" + std::string(name) + "' (expected logistic|gauss)");
}

std::string to_string(KernelKind kind) {
  return kind == KernelKind::Logistic ? "logistic" : "gauss";
}

Sharpness::Sharpness(double h) : h_(h), infinite_(false) {
  if (std::isinf(h) && h > 0) {
    infinite_ = true;
    h_ = 0.0;
    return;
  }
  if (!(h > 0.0) || !std::isfinite(h)) throw ConfigError("sharpness must be positive, got " + std::to_string(h));
}

Sharpness Sharpness::parse(std::string_view text) {
  if (text == "inf" || text == "Inf" || text == "infinity") return infinite();
  double h = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, h);
  if (ec != std::errc() || ptr != end) throw ConfigError("invalid sharpness '" + std::string(text) + "'");
  return Sharpness(h);
}

std::string Sharpness::to_string() const {
  if (infinite_) return "inf";
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, h_);
  return std::string(buf, ptr);
}

double kernel_cdf(double x, KernelKind kind) {
  switch (kind) {
    case KernelKind::Logistic:
      // Only exponentiate non-positive arguments.
      if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
      return std::exp(x) / (1.0 + std::exp(x));
    case KernelKind::GaussianCdf:
      return 0.5 * std::erfc(-x / std::numbers::sqrt2);
  }
  return 0.0;
}

double kernel_pdf(double x, KernelKind kind) {
  switch (kind) {
    case KernelKind::Logistic: {
      const double e = std::exp(-std::abs(x));
      return e / ((1.0 + e) * (1.0 + e));
    }
    case KernelKind::GaussianCdf:
      return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
  }
  return 0.0;
}

double contrib_true(double d, Sharpness h, KernelKind kind) {
  if (std::isnan(d)) throw NumericError("distance is NaN");
  if (h.is_infinite()) return d <= 0.0 ? 1.0 : 0.0;
  return kernel_cdf(-h.value() * d, kind);
}

double contrib_density(double d, Sharpness h, KernelKind kind) {
  if (std::isnan(d)) throw NumericError("distance is NaN");
  if (h.is_infinite()) throw ConfigError("kernel density is undefined for infinite sharpness");
  return h.value() * kernel_pdf(h.value() * d, kind);
}

}  // namespace smooth
