#pragma once

#include <vector>

namespace bohr {

/// Parameter triple (a, b, c) of the Gauss hypergeometric series. All three
/// must be positive, so c is never a non-positive integer and every series
/// coefficient gamma_n = (a)_n (b)_n / ((c)_n (1)_n) is finite and positive.
struct HypergeometricParams {
  double a;
  double b;
  double c;

  HypergeometricParams(double a, double b, double c);
};

/// Rising factorial (a)_n = a (a+1) ... (a+n-1), with (a)_0 = 1.
/// Throws std::overflow_error when the product leaves the double range.
double pochhammer(double a, int n);

/// Li_s(x) = sum_{n>=1} x^n / n^s for s in {1, 2, 3} and x in [0, 1).
/// Absolute error at most 1e-14. s = 1 uses the closed form -log(1-x).
double polylog(int s, double x);

/// gamma_n for n = 0..order, computed by the term recurrence
/// gamma_{n+1} = gamma_n (a+n)(b+n) / ((c+n)(1+n)).
std::vector<double> hypergeometric_coefficients(const HypergeometricParams& params,
                                                int order);

/// Gauss series 2F1(a,b;c;z) for z in [0, 1), relative error at most 1e-13.
double gauss_2f1(const HypergeometricParams& params, double z);

/// Termwise check of (a+n)(b+n) <= (c+n)(1+n) for 0 <= n < n_max.
/// This is the r = 1 worst case of the convolution theorem hypothesis
/// (a+n)(b+n) r - (c+n)(1+n) <= 0 for r in [0, 1].
bool hypergeometric_hypothesis_holds(const HypergeometricParams& params, int n_max);

}  // namespace bohr
