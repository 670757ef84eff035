#pragma once

// Globally adaptive Gauss-Kronrod (21-point) integration. The panel rule comes
// from Boost.Math; the subdivision strategy is a QUADPACK-style priority queue
// on the per-panel error, which behaves much better than depth-first bisection
// on long oscillatory ranges.

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "fluct/errors.hpp"

namespace fluct {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
  bool converged = false;
};

struct AdaptiveOptions {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  int max_subdivisions = 4000;
};

namespace detail {

struct Panel {
  double a;
  double b;
  double value;
  double error;
};

inline bool panel_less(const Panel& l, const Panel& r) { return l.error < r.error; }

template <class F>
Panel gk21_panel(F& f, double a, double b) {
  double err = 0.0;
  const double v =
      boost::math::quadrature::gauss_kronrod<double, 21>::integrate(f, a, b, 0, 0.0, &err);
  // With max_depth = 0 Boost reports the error on the reference interval
  // [-1, 1]; rescale it to [a, b].
  return {a, b, v, err * 0.5 * (b - a)};
}

}  // namespace detail

/// Integrate f over [a, b]. Interior breakpoints (kinks, known peaks) seed the
/// initial partition. Never evaluates f at the endpoints.
template <class F>
QuadResult integrate_adaptive(F&& f, double a, double b, const AdaptiveOptions& opt,
                              std::span<const double> breakpoints = {}) {
  QuadResult out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  double sign = 1.0;
  if (b < a) {
    std::swap(a, b);
    sign = -1.0;
  }

  std::vector<double> edges{a};
  for (double p : breakpoints)
    if (p > a && p < b) edges.push_back(p);
  edges.push_back(b);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  std::vector<detail::Panel> heap;
  heap.reserve(static_cast<std::size_t>(opt.max_subdivisions) + edges.size());
  for (std::size_t i = 0; i + 1 < edges.size(); ++i)
    heap.push_back(detail::gk21_panel(f, edges[i], edges[i + 1]));
  std::make_heap(heap.begin(), heap.end(), detail::panel_less);

  auto totals = [&heap]() {
    double v = 0.0, e = 0.0;
    for (const auto& p : heap) {
      v += p.value;
      e += p.error;
    }
    return std::pair{v, e};
  };

  auto [value, error] = totals();
  int since_resum = 0;
  while (static_cast<int>(heap.size()) < opt.max_subdivisions) {
    const double target = std::max({opt.abs_tol, opt.rel_tol * std::abs(value),
                                    64.0 * std::numeric_limits<double>::epsilon() * std::abs(value)});
    if (std::isfinite(value) && error <= target) break;
    std::pop_heap(heap.begin(), heap.end(), detail::panel_less);
    const detail::Panel worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // Panel is at the resolution limit; nothing more to gain.
      heap.push_back(worst);
      std::push_heap(heap.begin(), heap.end(), detail::panel_less);
      break;
    }
    const auto left = detail::gk21_panel(f, worst.a, mid);
    const auto right = detail::gk21_panel(f, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), detail::panel_less);
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), detail::panel_less);
    if (++since_resum == 64 || !std::isfinite(worst.value + worst.error)) {
      std::tie(value, error) = totals();
      since_resum = 0;
    }
  }
  std::tie(value, error) = totals();
  out.value = sign * value;
  out.error = error;
  out.intervals = static_cast<int>(heap.size());
  out.converged = std::isfinite(value) && std::isfinite(error) && (error <= std::max(opt.abs_tol, opt.rel_tol * std::abs(value)) ||
                  error <= 64.0 * std::numeric_limits<double>::epsilon() * std::abs(value));
  return out;
}

/// As integrate_adaptive, but throws ConvergenceError (with the best estimate)
/// when the tolerance is not met.
template <class F>
QuadResult integrate_or_throw(F&& f, double a, double b, const AdaptiveOptions& opt,
                              const std::string& where, std::span<const double> breakpoints = {}) {
  QuadResult r = integrate_adaptive(std::forward<F>(f), a, b, opt, breakpoints);
  if (!r.converged)
    throw ConvergenceError("quadrature did not converge: " + where, r.value, r.error, where);
  return r;
}

/// Integral over [a, inf) via x = a + t/(1-t).
template <class F>
QuadResult integrate_to_infinity(F&& f, double a, const AdaptiveOptions& opt) {
  auto g = [&f, a](double t) {
    const double s = 1.0 - t;
    const double x = a + t / s;
    if (!std::isfinite(x)) return 0.0;
    const double v = f(x);
    return v == 0.0 ? 0.0 : v / (s * s);
  };
  return integrate_adaptive(g, 0.0, 1.0, opt);
}

}  // namespace fluct
