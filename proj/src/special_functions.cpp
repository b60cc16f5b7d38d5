#include "bohr/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "bohr/errors.hpp"

namespace bohr {

namespace {

constexpr int kMaxTerms = 1'000'000;

}  // namespace

HypergeometricParams::HypergeometricParams(double a_, double b_, double c_)
    : a(a_), b(b_), c(c_) {
  if (!(a > 0.0) || !(b > 0.0) || !(c > 0.0)) {
    throw std::domain_error("HypergeometricParams: a, b, c must be positive");
  }
}

double pochhammer(double a, int n) {
  if (n < 0) {
    throw std::domain_error("pochhammer: n must be non-negative");
  }
  double product = 1.0;
  for (int j = 0; j < n; ++j) {
    product *= a + j;
  }
  if (!std::isfinite(product)) {
    throw std::overflow_error("pochhammer: product exceeds the double range");
  }
  return product;
}

double polylog(int s, double x) {
  if (s < 1 || s > 3) {
    throw std::domain_error("polylog: s must be 1, 2 or 3");
  }
  if (!(x >= 0.0) || x >= 1.0) {
    throw std::domain_error("polylog: x must lie in [0,1)");
  }
  if (s == 1) {
    return -std::log1p(-x);
  }
  if (x == 0.0) {
    return 0.0;
  }
  double sum = 0.0;
  double xn = 1.0;  // x^n
  for (int n = 1; n <= kMaxTerms; ++n) {
    xn *= x;
    const double denom = (s == 2) ? double(n) * n : double(n) * n * n;
    sum += xn / denom;
    // Remaining terms are bounded by x^(n+1) / ((n+1)^s (1-x)).
    const double np1 = double(n) + 1.0;
    const double tail = xn * x / (((s == 2) ? np1 * np1 : np1 * np1 * np1) * (1.0 - x));
    if (tail <= 1e-15) {
      return sum;
    }
  }
  throw NonConvergenceError("polylog: series did not converge within " +
                            std::to_string(kMaxTerms) + " terms");
}

std::vector<double> hypergeometric_coefficients(const HypergeometricParams& params,
                                                int order) {
  if (order < 0) {
    throw std::domain_error("hypergeometric_coefficients: order must be non-negative");
  }
  std::vector<double> gamma(static_cast<size_t>(order) + 1);
  gamma[0] = 1.0;
  for (int n = 0; n < order; ++n) {
    gamma[n + 1] = gamma[n] * (params.a + n) * (params.b + n) /
                   ((params.c + n) * (1.0 + n));
  }
  return gamma;
}

double gauss_2f1(const HypergeometricParams& params, double z) {
  if (!(z >= 0.0) || z >= 1.0) {
    throw std::domain_error("gauss_2f1: z must lie in [0,1)");
  }
  if (z == 0.0) {
    return 1.0;
  }
  double sum = 1.0;   // gamma_0 z^0
  double term = 1.0;  // gamma_n z^n
  double window[5] = {1.0, 1.0, 1.0, 1.0, 1.0};
  for (int n = 0; n < kMaxTerms; ++n) {
    const double ratio =
        (params.a + n) * (params.b + n) / ((params.c + n) * (1.0 + n)) * z;
    term *= ratio;
    sum += term;
    window[n % 5] = ratio;
    if (n >= 4) {
      // All terms are positive; a geometric bound with the largest recent
      // ratio (never below the limit ratio z) certifies the tail.
      const double q = std::max({window[0], window[1], window[2], window[3],
                                 window[4], z});
      if (q < 1.0) {
        const double tail = term * q / (1.0 - q);
        if (tail <= 1e-14 * sum && term <= 1e-16 * sum) {
          return sum;
        }
      }
    }
  }
  throw NonConvergenceError("gauss_2f1: terms failed to decay within " +
                            std::to_string(kMaxTerms) + " iterations");
}

bool hypergeometric_hypothesis_holds(const HypergeometricParams& params, int n_max) {
  for (int n = 0; n < n_max; ++n) {
    if ((params.a + n) * (params.b + n) > (params.c + n) * (1.0 + n)) {
      return false;
    }
  }
  return true;
}

}  // namespace bohr
