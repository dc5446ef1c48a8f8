#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "pdq/error.hpp"
#include "pdq/shape.hpp"

namespace pdq {

namespace {

// Distances from the boundary: 10^-2 down to 10^-kLastDecade.
constexpr int kFirstDecade = 2;
constexpr int kLastDecade = 60;
// Trend checks use the last few terms of the sequence.
constexpr std::size_t kWindow = 4;
constexpr double kZeroMagnitude = 1e-3;
constexpr double kStableRelative = 0.01;
constexpr double kShortThreshold = 1e-6;

bool monotone(std::span<const double> x, bool increasing) {
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (increasing ? !(x[i] > x[i - 1]) : !(x[i] < x[i - 1])) return false;
  }
  return true;
}

}  // namespace

std::string_view to_string(LimitKind k) noexcept {
  switch (k) {
    case LimitKind::Zero: return "zero";
    case LimitKind::Finite: return "finite";
    case LimitKind::PlusInfinity: return "+inf";
    case LimitKind::MinusInfinity: return "-inf";
  }
  return "unknown";
}

std::string_view to_string(TailLabel t) noexcept {
  switch (t) {
    case TailLabel::Short: return "short";
    case TailLabel::Medium: return "medium";
    case TailLabel::Long: return "long";
    case TailLabel::VeryLong: return "very_long";
  }
  return "unknown";
}

std::optional<DerivativeLimit> classify_limit(std::span<const double> sequence, int first_decade) {
  if (sequence.size() < kWindow + 1) return std::nullopt;
  const auto tail = sequence.last(kWindow + 1);
  for (double x : tail) {
    if (std::isnan(x)) return std::nullopt;
  }
  const double last = tail.back();
  if (std::isinf(last)) {
    return DerivativeLimit{last > 0 ? LimitKind::PlusInfinity : LimitKind::MinusInfinity, last};
  }

  std::array<double, kWindow + 1> mag{};
  std::array<double, kWindow> step{};
  for (std::size_t i = 0; i <= kWindow; ++i) mag[i] = std::abs(tail[i]);
  for (std::size_t i = 0; i < kWindow; ++i) step[i] = std::abs(tail[i + 1] - tail[i]);
  const double scale = std::max(1.0, *std::max_element(mag.begin(), mag.end()));

  // Zero: identically zero, or shrinking in magnitude to below the threshold,
  // or shrinking like a power of the distance to the boundary.
  if (std::all_of(mag.begin(), mag.end(), [](double x) { return x == 0.0; })) {
    return DerivativeLimit{LimitKind::Zero, 0.0};
  }
  const bool shrinking = monotone(mag, false) || mag.back() == 0.0;
  if (shrinking && mag.back() < kZeroMagnitude) return DerivativeLimit{LimitKind::Zero, 0.0};
  if (shrinking) {
    bool power_law = true;
    for (std::size_t i = 1; i <= kWindow; ++i) {
      const double r = mag[i] / mag[i - 1];
      if (!(r < 0.99) || std::abs(std::log(r) - std::log(mag[1] / mag[0])) > 0.1 * std::abs(std::log(r))) {
        power_law = false;
      }
    }
    if (power_law) return DerivativeLimit{LimitKind::Zero, 0.0};
  }

  // Finite: last terms agree to 1% and the increments die out geometrically.
  const double change = std::max(step[kWindow - 1], step[kWindow - 2]);
  if (change <= kStableRelative * std::max(mag.back(), 1e-300)) {
    bool geometric = true;
    for (std::size_t i = 1; i < kWindow; ++i) {
      const bool negligible = step[i] <= 1e-9 * scale;
      if (!negligible && !(step[i] <= 0.5 * step[i - 1])) geometric = false;
    }
    if (geometric) return DerivativeLimit{LimitKind::Finite, last};
  }

  // Growth in magnitude with a fixed sign. Increments that fall off like a
  // power k^-p of the decade index k converge when p > 1 (e.g. a correction
  // in 1/ln(1/s)) and diverge otherwise (e.g. sqrt(ln(1/s))).
  const bool same_sign = std::all_of(tail.begin(), tail.end(), [&](double x) { return (x > 0) == (last > 0) && x != 0.0; });
  if (same_sign && monotone(mag, true)) {
    const double inf = std::numeric_limits<double>::infinity();
    const DerivativeLimit infinite{last > 0 ? LimitKind::PlusInfinity : LimitKind::MinusInfinity,
                                   last > 0 ? inf : -inf};
    if (mag.back() > 10.0 * mag[kWindow - 2]) return infinite;
    const double k0 = static_cast<double>(first_decade + sequence.size() - kWindow - 1);
    double p_min = inf;
    double p_max = -inf;
    for (std::size_t i = 1; i < kWindow; ++i) {
      if (!(step[i] > 0.0 && step[i - 1] > 0.0)) return std::nullopt;
      const double p = -std::log(step[i] / step[i - 1]) /
                       std::log((k0 + static_cast<double>(i) + 0.5) / (k0 + static_cast<double>(i) - 0.5));
      p_min = std::min(p_min, p);
      p_max = std::max(p_max, p);
    }
    if (p_max < 1.2) return infinite;
    if (p_min > 1.5) {
      const double k = k0 + static_cast<double>(kWindow) - 0.5;
      const double remainder = step[kWindow - 1] * k / (p_min - 1.0);
      return DerivativeLimit{LimitKind::Finite, last + std::copysign(remainder, last)};
    }
  }
  return std::nullopt;
}

std::vector<double> boundary_derivatives(const ContinuousModel& model, Side side, double s) {
  const double h = s / 8.0;
  auto f = [&](int k) { return model.pdq_near(s + k * h, side); };
  const double fm2 = f(-2);
  const double fm1 = f(-1);
  const double f0 = f(0);
  const double fp1 = f(1);
  const double fp2 = f(2);
  std::vector<double> d(kMaxTailOrder + 1);
  d[0] = f0;
  d[1] = (fp1 - fm1) / (2.0 * h);
  d[2] = (fp1 - 2.0 * f0 + fm1) / (h * h);
  d[3] = (fp2 - 2.0 * fp1 + 2.0 * fm1 - fm2) / (2.0 * h * h * h);
  d[4] = (fp2 - 4.0 * fp1 + 6.0 * f0 - 4.0 * fm1 + fm2) / (h * h * h * h);
  if (side == Side::Right) {
    // s = 1 - u, so odd orders change sign.
    d[1] = -d[1];
    d[3] = -d[3];
  }
  return d;
}

TailReport classify_tail(const ContinuousModel& model, Side side) {
  std::array<std::vector<double>, kMaxTailOrder + 1> seq;
  for (int k = kFirstDecade; k <= kLastDecade; ++k) {
    const auto d = boundary_derivatives(model, side, std::pow(10.0, -k));
    for (int n = 0; n <= kMaxTailOrder; ++n) seq[n].push_back(d[n]);
  }
  const char* side_name = side == Side::Left ? "left" : "right";
  auto limit = [&](int n) {
    const auto l = classify_limit(seq[n], kFirstDecade);
    if (!l) {
      throw Error(ErrorCode::InconclusiveLimit,
                  std::string(side_name) + " limit of derivative of order " + std::to_string(n) +
                      " of the " + model.name() + " pdQ");
    }
    return *l;
  };

  TailReport report{side, {}, std::nullopt, false, TailLabel::Short};
  const DerivativeLimit boundary = limit(0);
  report.derivative_limits.push_back(boundary);
  const bool positive = boundary.kind == LimitKind::PlusInfinity ||
                        (boundary.kind == LimitKind::Finite && boundary.value > kShortThreshold);
  if (positive) return report;
  if (boundary.kind == LimitKind::Finite) report.derivative_limits.back() = {LimitKind::Zero, 0.0};

  for (int n = 1; n <= kMaxTailOrder; ++n) {
    const DerivativeLimit l = limit(n);
    report.derivative_limits.push_back(l);
    if (l.kind != LimitKind::Zero) {
      report.n_star = n;
      break;
    }
  }
  if (!report.n_star) {
    report.n_star = kMaxTailOrder + 1;
    report.n_star_is_lower_bound = true;
  }
  report.label = *report.n_star == 1 ? TailLabel::Medium
                 : *report.n_star == 2 ? TailLabel::Long
                                       : TailLabel::VeryLong;
  return report;
}

}  // namespace pdq
