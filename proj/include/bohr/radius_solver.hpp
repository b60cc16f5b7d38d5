#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "bohr/psi_family.hpp"

namespace bohr {

enum class Theorem { T1, C1, T2, C2, T3, T4, Convolution };

std::string_view theorem_id(Theorem t);
Theorem theorem_from_id(std::string_view id);

/// G(x) = sum_{t=1}^{N} c_t x^t with non-negative coefficients.
/// An empty coefficient list means G == 0.
class PolynomialG {
 public:
  PolynomialG() = default;
  explicit PolynomialG(std::vector<double> coefficients);

  bool empty() const { return coefficients_.empty(); }
  const std::vector<double>& coefficients() const { return coefficients_; }
  double operator()(double x) const;

 private:
  std::vector<double> coefficients_;  // coefficients_[t-1] = c_t
};

/// One radius computation: a theorem selector plus its parameters.
/// K >= 1 is the quasiconformality constant, p in (0,2] the exponent of the
/// |a_0| term; G enters only the improved forms (T1/T2). Convolution problems
/// must carry a hypergeometric family, whose coefficients define the weights.
struct RadiusProblem {
  Theorem theorem;
  PsiFamily family;
  double K;
  double p;
  PolynomialG G;

  static RadiusProblem make(Theorem theorem, PsiFamily family, double K, double p,
                            PolynomialG G = {});

  /// Dilatation bound k = (K-1)/(K+1).
  double k() const { return (K - 1.0) / (K + 1.0); }
};

struct RadiusResult {
  double radius = 0.0;
  double residual = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  std::optional<double> constraint_radius_R;  // T3/T4 only
  int iterations = 0;                         // functional evaluations
};

/// The radius functional of the selected theorem at r. T1 and T2 share one
/// functional, as do C1 and C2; the convolution problem evaluates
/// 2F1(a,b;c;r) - 1 - p(K+1)/(4K). Throws HypothesisViolationError when the
/// family is not decreasing at r.
double phi(const RadiusProblem& problem, double r);

/// Scans a uniform grid (step 1e-3) from 0 toward 1 for the first sign change
/// of phi, bisects the bracket to width <= tol, then polishes the root. For
/// T3/T4 also solves the constraint equation (2 psi_1 = (1-r^2) psi_0 for T3,
/// psi_1 = (1-r^2) psi_0 for T4) and checks radius <= constraint_radius_R.
/// Throws NoRootError when phi stays negative on all of [0, 1-1e-6].
RadiusResult solve_radius(const RadiusProblem& problem, double tol = 1e-12);

/// Catalogued closed forms (C1/C2 geometric, T1/T2 geometric with G == 0):
/// p(K+1) / (4K + p(K+1)). Returns nullopt for everything else.
std::optional<double> closed_form_radius(const RadiusProblem& problem);

}  // namespace bohr
