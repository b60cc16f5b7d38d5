#pragma once

#include <complex>
#include <vector>

namespace bohr {

using Coeffs = std::vector<std::complex<double>>;

/// Cauchy product truncated at `order` (result has order+1 coefficients).
Coeffs series_multiply(const Coeffs& x, const Coeffs& y, int order);

/// Coefficients of num/den through `order`; den must have a nonzero
/// constant term.
Coeffs series_divide(const Coeffs& num, const Coeffs& den, int order);

std::complex<double> series_eval(const Coeffs& c, std::complex<double> z);

std::complex<double> series_eval_derivative(const Coeffs& c, std::complex<double> z);

}  // namespace bohr
