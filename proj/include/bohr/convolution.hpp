#pragma once

#include <vector>

#include "bohr/function_lab.hpp"
#include "bohr/special_functions.hpp"

namespace bohr {

/// Hadamard convolution of a harmonic map with the Gauss hypergeometric
/// function: termwise coefficients gamma_n a_n and gamma_n b_n.
struct ConvolvedMap {
  HarmonicMap base;
  std::vector<double> gamma;  // gamma_0 .. gamma_order
  Coeffs h_coefficients;      // gamma_n a_n
  Coeffs g_coefficients;      // gamma_n b_n
};

/// order must not exceed the base map's truncation order.
ConvolvedMap convolve(const HarmonicMap& map, const HypergeometricParams& params,
                      int order);

struct BohrCheck {
  double lhs;
  double rhs;
};

/// Both sides of the convolution Bohr inequality
/// |a_0|^p + sum gamma_n |a_n| r^n + sum gamma_n |b_n| r^n <= ||h||.
/// Validates the termwise hypothesis (a+n)(b+n) <= (c+n)(1+n) and the map's
/// dilatation bound against K before evaluating.
BohrCheck convolution_bohr_check(const HarmonicMap& map,
                                 const HypergeometricParams& params, double K,
                                 double p, double r);

}  // namespace bohr
