#ifndef GAMMASUB_QUADRATURE_HPP
#define GAMMASUB_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "gammasub/common.hpp"

namespace gammasub {

namespace detail {

// 15-point Kronrod / 7-point Gauss pair (QUADPACK dqk15 nodes and weights,
// positive half; node 7 is the midpoint).
inline constexpr double gk15_nodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr double gk15_weights[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

inline constexpr double g7_weights[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelEstimate {
  double integral;
  double error;
};

// One Gauss-Kronrod 15(7) panel with the QUADPACK error heuristic.
template <class F>
PanelEstimate gk15_panel(F&& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  const double fc = f(center);
  double result_gauss = g7_weights[3] * fc;
  double result_kronrod = gk15_weights[7] * fc;
  double resabs = std::abs(result_kronrod);
  double fv[15];
  fv[7] = fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = half * gk15_nodes[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    fv[j] = f1;
    fv[14 - j] = f2;
    result_kronrod += gk15_weights[j] * (f1 + f2);
    resabs += gk15_weights[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) result_gauss += g7_weights[j / 2] * (f1 + f2);
  }

  const double mean = 0.5 * result_kronrod;
  double resasc = gk15_weights[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j)
    resasc += gk15_weights[j] * (std::abs(fv[j] - mean) + std::abs(fv[14 - j] - mean));

  result_kronrod *= half;
  result_gauss *= half;
  resabs *= std::abs(half);
  resasc *= std::abs(half);

  double err = std::abs(result_kronrod - result_gauss);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double eps50 = 50.0 * std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / eps50) err = std::max(err, eps50 * resabs);
  return {result_kronrod, err};
}

struct Interval {
  double a, b, integral, error;
  bool operator<(const Interval& o) const { return error < o.error; }
};

}  // namespace detail

// Globally adaptive Gauss-Kronrod integration of f over the finite interval
// [a, b]. Worst-error intervals are bisected first. Throws numerical_error
// when max_subdivisions is exhausted before the tolerance is met.
template <class F>
double integrate(F&& f, double a, double b, const QuadSpec& spec = {}) {
  spec.validate();
  if (a == b) return 0.0;

  auto first = detail::gk15_panel(f, a, b);
  std::vector<detail::Interval> heap;
  heap.push_back({a, b, first.integral, first.error});

  double total = first.integral;
  double total_err = first.error;
  for (int iter = 0; iter < spec.max_subdivisions; ++iter) {
    if (total_err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) return total;

    std::pop_heap(heap.begin(), heap.end());
    detail::Interval worst = heap.back();
    heap.pop_back();

    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      // interval at rounding resolution; accept its estimate as is
      heap.push_back({worst.a, worst.b, worst.integral, 0.0});
      std::push_heap(heap.begin(), heap.end());
      total_err -= worst.error;
      continue;
    }
    auto left = detail::gk15_panel(f, worst.a, mid);
    auto right = detail::gk15_panel(f, mid, worst.b);
    total += left.integral + right.integral - worst.integral;
    total_err += left.error + right.error - worst.error;
    heap.push_back({worst.a, mid, left.integral, left.error});
    std::push_heap(heap.begin(), heap.end());
    heap.push_back({mid, worst.b, right.integral, right.error});
    std::push_heap(heap.begin(), heap.end());
  }
  if (total_err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) return total;
  throw numerical_error("integrate: adaptive quadrature did not converge within max_subdivisions",
                        total, total_err);
}

// Integrates over consecutive panels [pts[0],pts[1]], [pts[1],pts[2]], ...
template <class F>
double integrate_panels(F&& f, const std::vector<double>& pts, const QuadSpec& spec = {}) {
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) acc += integrate(f, pts[i], pts[i + 1], spec);
  return acc;
}

// Integral over (0, b] of an integrand that may blow up (integrably) at the
// origin. Dyadic panels [b/2^{k+1}, b/2^k] are accumulated from the outside
// in; the geometric tail of the panel contributions is used as the stopping
// bound, so power-law and logarithmic endpoint singularities converge. A
// contribution sequence that refuses to decay (non-integrable or too-slow
// singularity) exhausts max_levels and throws.
template <class F>
double integrate_graded_origin(F&& f, double b, const QuadSpec& spec = {}, int max_levels = 160) {
  spec.validate();
  if (!(b > 0)) throw std::domain_error("integrate_graded_origin: upper limit must be > 0");

  double acc = 0.0;
  double prev = std::numeric_limits<double>::quiet_NaN();
  double right = b;
  for (int k = 0; k < max_levels; ++k) {
    const double left = 0.5 * right;
    const double panel = integrate(f, left, right, spec);
    acc += panel;
    const double tol = 0.5 * (spec.abs_tol + spec.rel_tol * std::abs(acc));
    if (k >= 1) {
      const double r = std::abs(panel) / std::max(std::abs(prev), std::numeric_limits<double>::min());
      if (r < 1.0) {
        const double tail_bound = std::abs(panel) * r / (1.0 - r);
        if (tail_bound < tol && std::abs(panel) < tol) return acc;
      }
    } else if (panel == 0.0 && acc == 0.0) {
      return acc;
    }
    prev = panel;
    right = left;
  }
  throw numerical_error(
      "integrate_graded_origin: endpoint singularity did not resolve within max_levels", acc);
}

// Integral over [a, infinity) by geometric panel marching: panel widths
// double until the integrand magnitude at the frontier T satisfies
// |f(T)| < upper_cutoff_tol * (|partial| + abs_tol) and contributions decay.
// min_extent forces the march past a known interior mode before the
// smallness test may trigger.
template <class F>
double integrate_to_infinity(F&& f, double a, const QuadSpec& spec = {}, double min_extent = 0.0,
                             int max_panels = 400) {
  spec.validate();
  double acc = 0.0;
  double left = a;
  double width = std::max(1.0, 0.5 * std::abs(a));
  double prev_contrib = std::numeric_limits<double>::infinity();
  for (int k = 0; k < max_panels; ++k) {
    const double right = left + width;
    const double panel = integrate(f, left, right, spec);
    acc += panel;
    const bool past_mode = (right - a) >= min_extent && std::abs(panel) <= prev_contrib;
    if (past_mode && std::abs(f(right)) < spec.upper_cutoff_tol * (std::abs(acc) + spec.abs_tol))
      return acc;
    prev_contrib = std::abs(panel);
    left = right;
    width *= 2.0;
  }
  throw numerical_error("integrate_to_infinity: tail truncation point not found", acc);
}

// Integral over (-infinity, b], mirrored geometric marching to the left.
template <class F>
double integrate_to_minus_infinity(F&& f, double b, const QuadSpec& spec = {},
                                   double min_extent = 0.0, int max_panels = 400) {
  auto g = [&f, b](double u) { return f(b - u); };
  return integrate_to_infinity(g, 0.0, spec, min_extent, max_panels);
}

// Integral over (0, infinity) with graded treatment of the origin and
// geometric marching of the tail, split at `split`.
template <class F>
double integrate_zero_to_infinity(F&& f, const QuadSpec& spec = {}, double split = 1.0,
                                  double min_extent = 0.0) {
  return integrate_graded_origin(f, split, spec) +
         integrate_to_infinity(f, split, spec, min_extent);
}

}  // namespace gammasub

#endif
