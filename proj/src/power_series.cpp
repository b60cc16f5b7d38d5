#include "bohr/power_series.hpp"

#include <stdexcept>

namespace bohr {

Coeffs series_multiply(const Coeffs& x, const Coeffs& y, int order) {
  if (order < 0) {
    throw std::domain_error("series_multiply: order must be non-negative");
  }
  Coeffs out(static_cast<size_t>(order) + 1, 0.0);
  const int nx = static_cast<int>(x.size());
  const int ny = static_cast<int>(y.size());
  for (int i = 0; i < nx && i <= order; ++i) {
    for (int j = 0; j < ny && i + j <= order; ++j) {
      out[i + j] += x[i] * y[j];
    }
  }
  return out;
}

Coeffs series_divide(const Coeffs& num, const Coeffs& den, int order) {
  if (order < 0) {
    throw std::domain_error("series_divide: order must be non-negative");
  }
  if (den.empty() || den[0] == std::complex<double>(0.0)) {
    throw std::domain_error("series_divide: denominator constant term is zero");
  }
  Coeffs out(static_cast<size_t>(order) + 1, 0.0);
  const int nn = static_cast<int>(num.size());
  const int nd = static_cast<int>(den.size());
  for (int n = 0; n <= order; ++n) {
    std::complex<double> acc = (n < nn) ? num[n] : 0.0;
    for (int j = 1; j < nd && j <= n; ++j) {
      acc -= den[j] * out[n - j];
    }
    out[n] = acc / den[0];
  }
  return out;
}

std::complex<double> series_eval(const Coeffs& c, std::complex<double> z) {
  std::complex<double> acc = 0.0;
  for (size_t i = c.size(); i-- > 0;) {
    acc = acc * z + c[i];
  }
  return acc;
}

std::complex<double> series_eval_derivative(const Coeffs& c, std::complex<double> z) {
  std::complex<double> acc = 0.0;
  for (size_t i = c.size(); i-- > 1;) {
    acc = acc * z + double(i) * c[i];
  }
  return acc;
}

}  // namespace bohr
