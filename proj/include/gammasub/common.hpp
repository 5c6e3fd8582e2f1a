#ifndef GAMMASUB_COMMON_HPP
#define GAMMASUB_COMMON_HPP

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace gammasub {

inline constexpr double pi = 3.14159265358979323846264338328;
inline constexpr double euler_gamma = 0.57721566490153286060651209008;

// Thrown when an iterative scheme (quadrature, series, stepping) fails to
// reach its requested accuracy. Carries the best estimate achieved so far.
class numerical_error : public std::runtime_error {
 public:
  numerical_error(const std::string& what, double estimate = std::numeric_limits<double>::quiet_NaN(),
                  double achieved_error = std::numeric_limits<double>::quiet_NaN())
      : std::runtime_error(what), estimate_(estimate), achieved_error_(achieved_error) {}

  double estimate() const noexcept { return estimate_; }
  double achieved_error() const noexcept { return achieved_error_; }

 private:
  double estimate_;
  double achieved_error_;
};

// Tolerances and truncation policy shared by all adaptive quadrature.
struct QuadSpec {
  double abs_tol = 1e-12;
  double rel_tol = 1e-9;
  int max_subdivisions = 200;
  // Integrand-magnitude threshold used to truncate semi-infinite integrals:
  // the integral is cut at T once |f(T)| < upper_cutoff_tol * (|partial| + abs_tol).
  double upper_cutoff_tol = 1e-14;

  void validate() const {
    if (!(abs_tol >= 0)) throw std::invalid_argument("QuadSpec: abs_tol must be >= 0");
    if (!(rel_tol > 0) || !(rel_tol < 1)) throw std::invalid_argument("QuadSpec: rel_tol must be in (0,1)");
    if (max_subdivisions < 1) throw std::invalid_argument("QuadSpec: max_subdivisions must be >= 1");
    if (!(upper_cutoff_tol > 0)) throw std::invalid_argument("QuadSpec: upper_cutoff_tol must be > 0");
  }
};

// Tail tolerance and term cap for all infinite series.
struct SeriesSpec {
  double tail_tol = 1e-12;
  long max_terms = 1000000;

  void validate() const {
    if (!(tail_tol > 0)) throw std::invalid_argument("SeriesSpec: tail_tol must be > 0");
    if (max_terms < 1) throw std::invalid_argument("SeriesSpec: max_terms must be >= 1");
  }
};

// Sums term(0) + term(1) + ... until the current term magnitude drops below
// tail_tol * |partial sum|. Hitting max_terms without convergence is an
// error, never a silent truncation.
template <class TermFn>
double sum_series(TermFn&& term, const SeriesSpec& spec, const char* what) {
  spec.validate();
  double sum = 0.0;
  for (long k = 0; k < spec.max_terms; ++k) {
    const double t = term(k);
    sum += t;
    if (k >= 1 && std::abs(t) < spec.tail_tol * std::abs(sum)) return sum;
  }
  throw numerical_error(std::string(what) + ": series did not converge within max_terms", sum);
}

}  // namespace gammasub

#endif
