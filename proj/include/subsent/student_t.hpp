#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "subsent/error.hpp"

namespace subsent::stats {

namespace detail_beta {

inline constexpr int kMaxIterations = 20000;
inline constexpr double kEps = 1e-16;
inline constexpr double kTiny = 1e-300;

// Stirling remainder of lgamma(z) for z >= 10.
inline double stirling_tail(double z) {
  const double z2 = z * z;
  return (1.0 / 12.0 - (1.0 / 360.0 - (1.0 / 1260.0 - 1.0 / (1680.0 * z2)) / z2) / z2) / z;
}

// ln B(a,b). For a large argument, lgamma(big) - lgamma(big + small) is
// taken from the Stirling expansion to avoid cancellation.
inline double log_beta(double a, double b) {
  const double small = std::min(a, b), big = std::max(a, b);
  if (big < 10.0) return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
  const double diff = -(big - 0.5) * std::log1p(small / big) - small * std::log(big + small) + small +
                      stirling_tail(big) - stirling_tail(big + small);
  if (small >= 10.0) {
    // lgamma(small) via Stirling as well
    const double lg_small = (small - 0.5) * std::log(small) - small + 0.918938533204672741780329736406 +
                            stirling_tail(small);
    return lg_small + diff;
  }
  return std::lgamma(small) + diff;
}

// ln of x for x in (0,1], using y = 1 - x when x is close to 1.
inline double log_unit(double x, double y) { return x > 0.5 ? std::log1p(-y) : std::log(x); }

// x^a y^b / B(a,b), with y = 1 - x supplied by the caller for accuracy.
inline double prefactor(double a, double b, double x, double y) {
  return std::exp(a * log_unit(x, y) + b * log_unit(y, x) - log_beta(a, b));
}

// Continued fraction for I_x(a,b) / prefactor, modified Lentz. Returns NaN
// when it fails to converge.
inline double continued_fraction(double a, double b, double x) {
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

// Power series  I_x(a,b) = x^a/(a B(a,b)) * sum_n (1-b)_n / n! * a/(a+n) * x^n.
inline double series(double a, double b, double x, double y) {
  double term = 1.0;
  double sum = 1.0;
  for (int n = 1; n <= kMaxIterations * 10; ++n) {
    term *= (n - b) * x / n;
    const double add = term * a / (a + n);
    sum += add;
    if (std::fabs(add) < kEps * std::fabs(sum)) break;
  }
  return std::exp(a * log_unit(x, y) - log_beta(a, b)) * sum / a;
}

}  // namespace detail_beta

/// Regularized incomplete beta I_x(a, b), given both x and y = 1 - x.
/// Continued fraction on whichever tail converges fastest, power series
/// when the fraction does not converge.
inline double incomplete_beta(double a, double b, double x, double y) {
  if (!(a > 0) || !(b > 0) || !(x >= 0) || !(y >= 0)) {
    throw Error(ErrorKind::InvalidInput, "incomplete beta needs a, b > 0 and x in [0, 1]");
  }
  if (x == 0.0) return 0.0;
  if (y == 0.0) return 1.0;
  using namespace detail_beta;
  if (x < (a + 1.0) / (a + b + 2.0)) {
    double cf = continued_fraction(a, b, x);
    if (std::isnan(cf)) return series(a, b, x, y);
    return prefactor(a, b, x, y) * cf / a;
  }
  double cf = continued_fraction(b, a, y);
  if (std::isnan(cf)) return 1.0 - series(b, a, y, x);
  return 1.0 - prefactor(b, a, y, x) * cf / b;
}

inline double incomplete_beta(double a, double b, double x) { return incomplete_beta(a, b, x, 1.0 - x); }

/// Upper tail P(T > x) of Student's t with `df` degrees of freedom.
inline double student_t_sf(double x, double df) {
  if (!std::isfinite(x)) throw Error(ErrorKind::InvalidInput, "t statistic is not finite");
  if (!(df > 0) || !std::isfinite(df)) throw Error(ErrorKind::InvalidInput, "degrees of freedom must be positive");
  if (x == 0.0) return 0.5;
  const double t2 = x * x;
  const double denom = df + t2;
  const double tail = 0.5 * incomplete_beta(0.5 * df, 0.5, df / denom, t2 / denom);
  return x > 0 ? tail : 1.0 - tail;
}

}  // namespace subsent::stats
