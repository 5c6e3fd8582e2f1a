#ifndef GAMMASUB_SPECIAL_FUNCTIONS_HPP
#define GAMMASUB_SPECIAL_FUNCTIONS_HPP

#include <cmath>
#include <limits>
#include <stdexcept>

#include "gammasub/common.hpp"
#include "gammasub/quadrature.hpp"

namespace gammasub {

// 1/Gamma(z), entire in z. Reflection takes over left of 0.5 so that zeros
// at the non-positive integers come out exact-ish instead of as 1/inf.
inline double reciprocal_gamma(double z) {
  if (z > 0.5) return std::exp(-std::lgamma(z));
  return std::sin(pi * z) * std::exp(std::lgamma(1.0 - z)) / pi;
}

// Regularized lower incomplete gamma P(a,z) = gamma(a,z)/Gamma(a).
// Series for z < a+1, continued fraction otherwise (Lentz).
inline double regularized_gamma_p(double a, double z) {
  if (!(a > 0)) throw std::domain_error("regularized_gamma_p: a must be > 0");
  if (z < 0) throw std::domain_error("regularized_gamma_p: z must be >= 0");
  if (z == 0) return 0.0;

  const double log_pre = a * std::log(z) - z - std::lgamma(a);
  constexpr int max_iter = 3000;
  constexpr double eps = 1e-16;

  if (z < a + 1.0) {
    double ap = a;
    double del = 1.0 / a;
    double sum = del;
    for (int i = 0; i < max_iter; ++i) {
      ap += 1.0;
      del *= z / ap;
      sum += del;
      if (std::abs(del) < std::abs(sum) * eps) return std::min(1.0, sum * std::exp(log_pre));
    }
    throw numerical_error("regularized_gamma_p: series did not converge");
  }

  constexpr double fpmin = 1e-300;
  double b = z + 1.0 - a;
  double c = 1.0 / fpmin;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < max_iter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < fpmin) d = fpmin;
    c = b + an / c;
    if (std::abs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < eps) return 1.0 - std::exp(log_pre) * h;
  }
  throw numerical_error("regularized_gamma_p: continued fraction did not converge");
}

// Lower incomplete gamma gamma(a,z). Unregularized, so it inherits the
// Gamma(a) overflow ceiling near a ~ 170.
inline double lower_incomplete_gamma(double a, double z) {
  return std::exp(std::lgamma(a)) * regularized_gamma_p(a, z);
}

// Digamma psi_0(z) for z > 0: recurrence up to z >= 10, then the asymptotic
// Bernoulli series.
inline double digamma(double z) {
  if (!(z > 0)) throw std::domain_error("digamma: z must be > 0");
  double acc = 0.0;
  while (z < 10.0) {
    acc -= 1.0 / z;
    z += 1.0;
  }
  const double inv = 1.0 / z;
  const double inv2 = inv * inv;
  const double series =
      inv2 * (1.0 / 12.0 -
              inv2 * (1.0 / 120.0 -
                      inv2 * (1.0 / 252.0 - inv2 * (1.0 / 240.0 - inv2 * (1.0 / 132.0)))));
  return acc + std::log(z) - 0.5 * inv - series;
}

// Exponential integral E_1(x) = int_x^inf e^{-z}/z dz, x > 0.
inline double exp_integral_e1(double x) {
  if (!(x > 0)) throw std::domain_error("exp_integral_e1: x must be > 0 (E1 diverges at 0)");
  if (x <= 1.0) {
    double sum = 0.0;
    double term = 1.0;
    for (int k = 1; k <= 40; ++k) {
      term *= -x / k;
      const double contrib = -term / k;
      sum += contrib;
      if (std::abs(contrib) < 1e-18 * std::abs(sum)) break;
    }
    return -euler_gamma - std::log(x) + sum;
  }
  constexpr double fpmin = 1e-300;
  double b = x + 1.0;
  double c = 1.0 / fpmin;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 200; ++i) {
    const double an = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    const double del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) return h * std::exp(-x);
  }
  throw numerical_error("exp_integral_e1: continued fraction did not converge");
}

namespace detail {

// Scaled weighted tail of the incomplete digamma:
//   W(a,z) = [int_0^z y^{a-1} e^{-y} ln y dy] / Gamma(a)
// computed with y = e^u and the exponent recentred at its maximum, so that
// Psi_0 = W / P(a,z) and the inverse-process density a*(P*psi0 - W) stay
// finite far outside the overflow range of the raw integrals.
inline double incomplete_digamma_weighted(double a, double z, const QuadSpec& spec) {
  const double log_z = std::log(z);
  const double u_star = std::log(a);
  const double peak = std::min(u_star, log_z);
  const double scale = a * peak - std::exp(peak);

  auto integrand = [a, scale](double u) { return std::exp(a * u - std::exp(u) - scale) * u; };
  const double extent = (log_z - peak) + 40.0 / a + 10.0;
  const double scaled = integrate_to_minus_infinity(integrand, log_z, spec, extent);
  return scaled * std::exp(scale - std::lgamma(a));
}

}  // namespace detail

// Incomplete digamma Psi_0(a,z): the gamma(a,.)-weighted mean of ln y over
// (0,z). Tends to psi_0(a) as z -> infinity. z = 0 is a 0/0 form and is
// rejected.
inline double incomplete_digamma(double a, double z, const QuadSpec& spec = {}) {
  if (!(a > 0)) throw std::domain_error("incomplete_digamma: a must be > 0");
  if (!(z > 0)) throw std::domain_error("incomplete_digamma: z must be > 0");
  return detail::incomplete_digamma_weighted(a, z, spec) / regularized_gamma_p(a, z);
}

// Argument bundle for the Volterra functions: x > 0 (branch point at 0),
// order parameter alpha, exponent parameter beta > -1.
struct VolterraArgs {
  double x;
  double alpha = 0.0;
  double beta = 0.0;

  void validate() const {
    if (!(x > 0)) throw std::domain_error("VolterraArgs: x must be > 0");
    if (!(beta > -1)) throw std::domain_error("VolterraArgs: beta must be > -1");
  }
};

namespace detail {

struct VolterraIntegrand {
  double log_x, alpha, beta, lgamma_beta1;

  double operator()(double y) const {
    const double g = alpha + y + 1.0;
    double t = (alpha + y) * log_x - lgamma_beta1;
    if (beta != 0.0) t += beta * std::log(y);
    if (g > 0.5) return std::exp(t - std::lgamma(g));
    return std::exp(t) * reciprocal_gamma(g);
  }
};

}  // namespace detail

// Volterra function mu(x,beta,alpha) = int_0^inf x^{alpha+y} y^beta /
// (Gamma(beta+1) Gamma(alpha+y+1)) dy, evaluated in log space. The integrand
// is truncated on the right where the factorial decay kills it and graded
// toward y = 0 where beta < 0 or small x concentrate the mass.
inline double volterra_mu(const VolterraArgs& args, const QuadSpec& spec = {}) {
  args.validate();
  const detail::VolterraIntegrand f{std::log(args.x), args.alpha, args.beta,
                                    std::lgamma(args.beta + 1.0)};
  // mode of x^{alpha+y}/Gamma(alpha+y+1) sits near y = x - alpha - 1
  const double extent = std::max(8.0, 2.0 * (args.x - args.alpha));
  return integrate_zero_to_infinity(f, spec, 1.0, extent);
}

inline double volterra_mu(double x, double beta, double alpha, const QuadSpec& spec = {}) {
  return volterra_mu(VolterraArgs{x, alpha, beta}, spec);
}

// nu(x,alpha) = mu(x,0,alpha).
inline double volterra_nu(double x, double alpha, const QuadSpec& spec = {}) {
  return volterra_mu(VolterraArgs{x, alpha, 0.0}, spec);
}

// Alternative representation nu(x,alpha) = e^x int_alpha^{alpha+1}
// gamma(y,x)/Gamma(y) dy, regular only for alpha >= 0.
inline double volterra_nu_gammainc(double x, double alpha, const QuadSpec& spec = {}) {
  if (!(x > 0)) throw std::domain_error("volterra_nu_gammainc: x must be > 0");
  if (alpha < 0)
    throw std::domain_error("volterra_nu_gammainc: representation requires alpha >= 0");
  auto f = [x](double y) { return regularized_gamma_p(y, x); };
  return std::exp(x) * integrate(f, alpha, alpha + 1.0, spec);
}

// n-th derivative of mu(.,beta,alpha) at x, which is mu(x,beta,alpha-n).
inline double volterra_mu_derivative(double x, double beta, double alpha, int n,
                                     const QuadSpec& spec = {}) {
  if (n < 0 || n > 3)
    throw std::domain_error("volterra_mu_derivative: order n must be in {0,1,2,3}");
  return volterra_mu(VolterraArgs{x, alpha - n, beta}, spec);
}

// sum_{k>=0} theta^k mu(x,k,alpha), which equals e^{-alpha*theta} *
// nu(x e^theta, alpha).
inline double nu_shift_series(double x, double alpha, double theta, const SeriesSpec& series = {},
                              const QuadSpec& quad = {}) {
  if (!(x > 0)) throw std::domain_error("nu_shift_series: x must be > 0");
  auto term = [&](long k) {
    return std::pow(theta, static_cast<double>(k)) *
           volterra_mu(VolterraArgs{x, alpha, static_cast<double>(k)}, quad);
  };
  return sum_series(term, series, "nu_shift_series");
}

}  // namespace gammasub

#endif
