#pragma once

#include <cmath>
#include <functional>
#include <utility>

namespace respond::testing {

/// Maximizes f on [a, b]: a coarse scan of `samples` points brackets the
/// largest sample, then golden-section search refines it. Returns {x, f(x)}.
inline std::pair<double, double> maximize(const std::function<double(double)>& f, double a, double b,
                                          int samples = 400) {
  double best_x = a;
  double best_f = f(a);
  const double h = (b - a) / samples;
  for (int i = 1; i <= samples; ++i) {
    const double x = a + h * i;
    const double v = f(x);
    if (v > best_f) {
      best_f = v;
      best_x = x;
    }
  }
  double lo = std::max(a, best_x - h);
  double hi = std::min(b, best_x + h);
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - g * (hi - lo);
  double x2 = lo + g * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int it = 0; it < 200 && hi - lo > 1e-13 * (1.0 + std::abs(lo)); ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = f(x1);
    }
  }
  const double x = 0.5 * (lo + hi);
  const double fx = f(x);
  return fx >= best_f ? std::pair{x, fx} : std::pair{best_x, best_f};
}

}  // namespace respond::testing
