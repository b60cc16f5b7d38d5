#include "bohr/convolution.hpp"

#include <cmath>
#include <stdexcept>

#include "bohr/errors.hpp"

namespace bohr {

ConvolvedMap convolve(const HarmonicMap& map, const HypergeometricParams& params,
                      int order) {
  if (order < 1 || order > map.h.order()) {
    throw std::invalid_argument(
        "convolve: order must lie in [1, map truncation order]");
  }
  ConvolvedMap out;
  out.base = map;
  out.gamma = hypergeometric_coefficients(params, order);
  out.h_coefficients.assign(static_cast<size_t>(order) + 1, 0.0);
  out.g_coefficients.assign(static_cast<size_t>(order) + 1, 0.0);
  for (int n = 0; n <= order; ++n) {
    out.h_coefficients[n] = out.gamma[n] * map.h.coefficients[n];
    if (n >= 1 && n <= map.g.order()) {
      out.g_coefficients[n] = out.gamma[n] * map.g.coefficients[n];
    }
  }
  return out;
}

BohrCheck convolution_bohr_check(const HarmonicMap& map,
                                 const HypergeometricParams& params, double K,
                                 double p, double r) {
  if (!(r >= 0.0) || r >= 1.0) {
    throw std::domain_error("convolution_bohr_check: r must lie in [0,1)");
  }
  if (!(K >= 1.0)) {
    throw std::domain_error("convolution_bohr_check: K must be >= 1");
  }
  if (!(p > 0.0) || !(p <= 2.0)) {
    throw std::domain_error("convolution_bohr_check: p must lie in (0,2]");
  }
  if (!map.h.sup_norm) {
    throw std::invalid_argument("convolution_bohr_check: ||h|| must be known");
  }
  const int order = map.h.order();
  if (!hypergeometric_hypothesis_holds(params, order + 1)) {
    throw HypothesisViolationError(
        "convolution_bohr_check: (a+n)(b+n) <= (c+n)(1+n) fails on [0, order]");
  }
  if (map.k > (K - 1.0) / (K + 1.0) + 1e-12) {
    throw HypothesisViolationError(
        "convolution_bohr_check: map dilatation bound exceeds (K-1)/(K+1)");
  }
  const auto gamma = hypergeometric_coefficients(params, order);
  double lhs = std::pow(std::abs(map.h.coefficients[0]), p);
  double rn = 1.0;
  for (int n = 1; n <= order; ++n) {
    rn *= r;
    double coeff = std::abs(map.h.coefficients[n]);
    if (n <= map.g.order()) {
      coeff += std::abs(map.g.coefficients[n]);
    }
    lhs += gamma[n] * coeff * rn;
  }
  return BohrCheck{lhs, *map.h.sup_norm};
}

}  // namespace bohr
