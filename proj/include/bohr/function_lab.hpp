#pragma once

#include <complex>
#include <numbers>
#include <optional>
#include <random>
#include <span>

#include "bohr/power_series.hpp"
#include "bohr/psi_family.hpp"
#include "bohr/radius_solver.hpp"

namespace bohr {

/// Default truncation order of constructed test functions. With weights
/// decaying at least geometrically below r ~ 0.99, the certified tail of a
/// 512-term model stays far under the 1e-10 evaluation budget.
inline constexpr int kDefaultOrder = 512;

/// Truncated Taylor model of a function analytic on the unit disk.
struct AnalyticSeries {
  Coeffs coefficients;             // a_0 .. a_M
  std::optional<double> sup_norm;  // exact when known by construction
  bool exact = false;              // the function IS the stored polynomial

  int order() const { return static_cast<int>(coefficients.size()) - 1; }
  std::complex<double> operator()(std::complex<double> z) const {
    return series_eval(coefficients, z);
  }
  std::complex<double> derivative_at(std::complex<double> z) const {
    return series_eval_derivative(coefficients, z);
  }
};

/// f = h + conj(g) with dilatation bound |g'/h'| <= k; g(0) = 0.
struct HarmonicMap {
  AnalyticSeries h;
  AnalyticSeries g;
  double k = 0.0;

  double K() const { return (1.0 + k) / (1.0 - k); }
};

/// Validates g's vanishing constant term and k in [0,1).
HarmonicMap make_harmonic_map(AnalyticSeries h, AnalyticSeries g, double k);

/// g = lambda k (h - h(0)) attached to h; the co-analytic part used by the
/// sharpness and lemma constructions.
HarmonicMap with_scaled_coanalytic(const AnalyticSeries& h,
                                   std::complex<double> lambda, double k);

/// Disk automorphism atom h(z) = (a-z)/(1-az), the extremal function of
/// every sharpness argument.
struct MobiusAtom {
  double a = 0.0;
  std::complex<double> lambda{1.0, 0.0};
  double k = 0.0;
};

/// Exact truncated coefficients A_0 = a, A_n = -(1-a^2) a^(n-1) for n >= 1,
/// with g-coefficients lambda k A_n; sup norm of h is exactly 1.
HarmonicMap mobius_coefficients(const MobiusAtom& atom, int order);

/// Taylor coefficients of prod_j (w_j - z)/(1 - conj(w_j) z) through `order`
/// via power-series multiplication and division; sup norm is exactly 1.
AnalyticSeries blaschke_product(std::span<const std::complex<double>> zeros,
                                int order);

/// Left-hand side of the selected theorem's majorant inequality at radius r.
/// T3/T4 evaluate |h| and |h'| at a point with |z| = r (default z = -r).
/// Throws TruncationError when the certified truncation tail of the stored
/// model exceeds the 1e-10 budget.
double majorant_lhs(const HarmonicMap& map, Theorem theorem, const PsiFamily& family,
                    double r, double p, const PolynomialG& G = {},
                    std::optional<std::complex<double>> z = std::nullopt);

struct SharpnessWitness {
  double a;
  double r;
  double lhs;
  double rhs;
};

/// Evaluates the majorant at r = radius + epsilon on Mobius atoms with a from
/// a_grid, k = (K-1)/(K+1) and lambda = 1. Returns the first (a, r, lhs, rhs)
/// with lhs > rhs = psi_0(r), or nullopt when no grid atom violates.
/// z_angle picks the T3/T4 evaluation direction z = r e^(i angle); the
/// default pi is the direction of the extremal evaluation h(-r).
std::optional<SharpnessWitness> sharpness_probe(const RadiusProblem& problem,
                                                const RadiusResult& solved,
                                                double epsilon,
                                                std::span<const double> a_grid,
                                                double z_angle = std::numbers::pi);

// Coefficient and growth inequalities for unit-norm analytic functions.
// Each returns the minimal slack (bound minus bounded quantity) over the
// checked indices or grid; a negative slack is a violation.

/// |f(z)| <= (|f(0)| + |z|) / (1 + |f(0)||z|) on an internal disk grid.
double lemma1_slack(const AnalyticSeries& f);

/// |a_n| <= 1 - |a_0|^2 for n >= 1.
double lemma2_slack(const AnalyticSeries& f);

/// |a_{2k+1}| <= 1 - sum_{j<=k} |a_j|^2.
double lemma3_odd_slack(const AnalyticSeries& f);

/// |a_{2k}| <= 1 - sum_{j<k} |a_j|^2 - |a_k|^2 / (1 + |a_0|).
double lemma3_even_slack(const AnalyticSeries& f);

/// sum |b_n|^2 psi_n <= k^2 sum |a_n|^2 psi_n at the table's radius.
double lemma4_slack(const HarmonicMap& map, const PsiTable& table);

/// sum_{n>=1} |a_n| psi_n + sum |a_n|^2 (psi_2n/(1+|a_0|) + Psi_{2n+1})
///   <= (1 - |a_0|^2) Psi_1.
double lemma6_slack(const AnalyticSeries& f, const PsiTable& table);

/// Same with the first sum from n = 2 against (1 - |a_0|^2) Psi_2.
double lemma7_slack(const AnalyticSeries& f, const PsiTable& table);

/// Finite Blaschke product with 1..max_zeros zeros drawn from |w| <= 0.9 and
/// a random unimodular front factor. Deterministic for a fixed rng state.
AnalyticSeries random_blaschke(std::mt19937_64& rng, int max_zeros, int order);

}  // namespace bohr
