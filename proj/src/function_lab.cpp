#include "bohr/function_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "bohr/errors.hpp"

namespace bohr {

namespace {

constexpr double kEvalBudget = 1e-10;

void require_unit_norm(const AnalyticSeries& f, const char* where) {
  if (!f.sup_norm || *f.sup_norm != 1.0) {
    throw std::invalid_argument(std::string(where) +
                                ": requires a unit-norm series (sup_norm == 1)");
  }
}

double uniform01(std::mt19937_64& rng) {
  // 53-bit mantissa draw; identical across platforms for a fixed seed,
  // unlike std::uniform_real_distribution
  return double(rng() >> 11) * 0x1.0p-53;
}

std::vector<double> moduli(const Coeffs& c) {
  std::vector<double> out(c.size());
  for (size_t i = 0; i < c.size(); ++i) out[i] = std::abs(c[i]);
  return out;
}

}  // namespace

HarmonicMap make_harmonic_map(AnalyticSeries h, AnalyticSeries g, double k) {
  if (h.coefficients.empty()) {
    throw std::invalid_argument("make_harmonic_map: h must have coefficients");
  }
  if (!g.coefficients.empty() && g.coefficients[0] != std::complex<double>(0.0)) {
    throw std::invalid_argument("make_harmonic_map: g must vanish at 0");
  }
  if (!(k >= 0.0) || k >= 1.0) {
    throw std::domain_error("make_harmonic_map: k must lie in [0,1)");
  }
  return HarmonicMap{std::move(h), std::move(g), k};
}

HarmonicMap with_scaled_coanalytic(const AnalyticSeries& h,
                                   std::complex<double> lambda, double k) {
  if (std::abs(std::abs(lambda) - 1.0) > 1e-12) {
    throw std::domain_error("with_scaled_coanalytic: lambda must be unimodular");
  }
  if (!(k >= 0.0) || k >= 1.0) {
    throw std::domain_error("with_scaled_coanalytic: k must lie in [0,1)");
  }
  AnalyticSeries g;
  g.coefficients.assign(h.coefficients.size(), 0.0);
  for (size_t n = 1; n < h.coefficients.size(); ++n) {
    g.coefficients[n] = lambda * k * h.coefficients[n];
  }
  g.exact = h.exact;
  return HarmonicMap{h, std::move(g), k};
}

HarmonicMap mobius_coefficients(const MobiusAtom& atom, int order) {
  if (order < 1) {
    throw std::domain_error("mobius_coefficients: order must be >= 1");
  }
  if (!(atom.a >= 0.0) || atom.a >= 1.0) {
    throw std::domain_error("mobius_coefficients: a must lie in [0,1)");
  }
  AnalyticSeries h;
  h.coefficients.assign(static_cast<size_t>(order) + 1, 0.0);
  h.coefficients[0] = atom.a;
  const double d = 1.0 - atom.a * atom.a;
  double apow = 1.0;  // a^(n-1)
  for (int n = 1; n <= order; ++n) {
    h.coefficients[n] = -d * apow;
    apow *= atom.a;
  }
  h.sup_norm = 1.0;
  return with_scaled_coanalytic(h, atom.lambda, atom.k);
}

AnalyticSeries blaschke_product(std::span<const std::complex<double>> zeros,
                                int order) {
  if (order < static_cast<int>(zeros.size())) {
    throw std::invalid_argument(
        "blaschke_product: order must be at least the number of zeros");
  }
  const int deg = static_cast<int>(zeros.size());
  Coeffs num{1.0};
  Coeffs den{1.0};
  for (const auto& w : zeros) {
    if (std::abs(w) >= 1.0) {
      throw std::domain_error("blaschke_product: zero on or outside the unit circle");
    }
    num = series_multiply(num, Coeffs{w, -1.0}, deg);
    den = series_multiply(den, Coeffs{1.0, -std::conj(w)}, deg);
  }
  AnalyticSeries out;
  out.coefficients = series_divide(num, den, order);
  out.sup_norm = 1.0;
  return out;
}

double majorant_lhs(const HarmonicMap& map, Theorem theorem, const PsiFamily& family,
                    double r, double p, const PolynomialG& G,
                    std::optional<std::complex<double>> z) {
  if (!(r >= 0.0) || r >= 1.0) {
    throw std::domain_error("majorant_lhs: r must lie in [0,1)");
  }
  if (!(p > 0.0) || !(p <= 2.0)) {
    throw std::domain_error("majorant_lhs: p must lie in (0,2]");
  }
  if (!map.h.sup_norm || !(*map.h.sup_norm > 0.0)) {
    throw std::invalid_argument(
        "majorant_lhs: the map needs a known sup norm for tail certification");
  }
  const double s = *map.h.sup_norm;
  const int mh = map.h.order();
  const int mg = map.g.order();
  const int m = std::max({mh, mg, 1});

  const bool refined = theorem == Theorem::T2 || theorem == Theorem::C2 ||
                       theorem == Theorem::T3 || theorem == Theorem::T4;
  const bool pointwise = theorem == Theorem::T3 || theorem == Theorem::T4;
  const bool with_G = (theorem == Theorem::T1 || theorem == Theorem::T2) && !G.empty();

  const int table_depth = refined ? std::max(2 * mh + 2, m + 1) : m + 1;
  const PsiTable tab(family, r, table_depth);

  const auto am = moduli(map.h.coefficients);
  const auto bm = moduli(map.g.coefficients);
  const double a0 = am[0];

  double coeff_sum = 0.0;  // sum over the theorem's coefficient-modulus terms
  const int a_start = pointwise ? 2 : 1;
  for (int n = a_start; n <= mh; ++n) {
    coeff_sum += am[n] * tab.psi[n];
  }
  for (int n = 1; n <= mg; ++n) {
    coeff_sum += bm[n] * tab.psi[n];
  }

  double refined_sum = 0.0;
  if (refined) {
    for (int n = 1; n <= mh; ++n) {
      refined_sum +=
          am[n] * am[n] * (tab.psi[2 * n] / (1.0 + a0) + tab.tail[2 * n + 1]);
    }
  }

  double g_value = 0.0;
  double area_sum = 0.0;  // sum n |a_n|^2 psi_n^2, the S_r(h)/pi analogue
  if (with_G) {
    for (int n = 1; n <= mh; ++n) {
      area_sum += double(n) * am[n] * am[n] * tab.psi[n] * tab.psi[n];
    }
    g_value = G(area_sum);
  }

  double lhs = 0.0;
  switch (theorem) {
    case Theorem::T1:
    case Theorem::C1:
    case Theorem::Convolution:
      lhs = std::pow(a0, p) * tab.psi[0] + coeff_sum + g_value;
      break;
    case Theorem::T2:
    case Theorem::C2:
      lhs = std::pow(a0, p) * tab.psi[0] + coeff_sum + refined_sum + g_value;
      break;
    case Theorem::T3:
    case Theorem::T4: {
      const std::complex<double> at = z.value_or(std::complex<double>(-r, 0.0));
      if (std::abs(std::abs(at) - r) > 1e-9) {
        throw std::domain_error("majorant_lhs: evaluation point must have |z| = r");
      }
      const double hz = std::abs(map.h(at));
      const double hpz = std::abs(map.h.derivative_at(at));
      const double head = (theorem == Theorem::T3) ? hz : hz * hz;
      lhs = head * tab.psi[0] + hpz * tab.psi[1] + coeff_sum + refined_sum;
      break;
    }
  }

  // Certified bound on everything the truncated model cannot see; exact
  // polynomial models have no unseen tail. Coefficient tails use
  // |a_n| <= s - a0^2/s; the refined tail uses
  // sum_{n>m} Psi_{2n+1} <= (1/2) sum_{j>=2m+3} j psi_j.
  const bool exact_model =
      map.h.exact && (map.g.exact || map.g.coefficients.size() <= 1);
  if (!exact_model) {
    const double bound_a = std::max(0.0, s - a0 * a0 / s);
    double tail = (1.0 + map.k) * bound_a * tab.tail[m + 1];
    if (refined) {
      tail += bound_a * bound_a *
              (tab.tail[std::min<size_t>(2 * mh + 2, tab.tail.size() - 1)] / (1.0 + a0) +
               0.5 * family.weighted_linear_sum_from(2 * mh + 3, r));
    }
    if (with_G) {
      const double ds = bound_a * bound_a * family.weighted_square_sum_from(mh + 1, r);
      tail += G(area_sum + ds) - g_value;
    }
    if (pointwise && r > 0.0) {
      const double th = bound_a * std::pow(r, mh + 1) / (1.0 - r);
      const double thp =
          bound_a * std::pow(r, mh) * ((mh + 1.0) - mh * r) / ((1.0 - r) * (1.0 - r));
      const double head_err = (theorem == Theorem::T4) ? th * (2.0 * s + th) : th;
      tail += head_err * tab.psi[0] + thp * tab.psi[1];
    }
    if (tail > kEvalBudget) {
      throw TruncationError("majorant_lhs: certified truncation tail " +
                            std::to_string(tail) + " exceeds the 1e-10 budget");
    }
  }
  return lhs;
}

std::optional<SharpnessWitness> sharpness_probe(const RadiusProblem& problem,
                                                const RadiusResult& solved,
                                                double epsilon,
                                                std::span<const double> a_grid,
                                                double z_angle) {
  if (!(epsilon > 0.0) || !(epsilon < 1.0 - solved.radius)) {
    throw std::domain_error(
        "sharpness_probe: epsilon must lie in (0, 1 - radius); the probe is "
        "only defined strictly beyond the radius");
  }
  const double r = solved.radius + epsilon;
  // keep the default direction exactly on the negative axis
  const std::complex<double> at = (z_angle == std::numbers::pi)
                                      ? std::complex<double>(-r, 0.0)
                                      : std::polar(r, z_angle);
  const double rhs = problem.family.psi(0, r);  // the atoms have ||h|| = 1
  for (double a : a_grid) {
    const HarmonicMap map =
        mobius_coefficients(MobiusAtom{a, {1.0, 0.0}, problem.k()}, kDefaultOrder);
    const double lhs = majorant_lhs(map, problem.theorem, problem.family, r,
                                    problem.p, problem.G, at);
    if (lhs > rhs) {
      return SharpnessWitness{a, r, lhs, rhs};
    }
  }
  return std::nullopt;
}

double lemma1_slack(const AnalyticSeries& f) {
  require_unit_norm(f, "lemma1_slack");
  const double f0 = std::abs(f.coefficients.empty() ? 0.0 : f.coefficients[0]);
  double worst = std::numeric_limits<double>::infinity();
  for (double rr : {0.2, 0.4, 0.6, 0.8}) {
    for (int j = 0; j < 8; ++j) {
      const double theta = 2.0 * std::numbers::pi * j / 8.0;
      const auto zp = std::polar(rr, theta);
      const double bound = (f0 + rr) / (1.0 + f0 * rr);
      worst = std::min(worst, bound - std::abs(f(zp)));
    }
  }
  return worst;
}

double lemma2_slack(const AnalyticSeries& f) {
  require_unit_norm(f, "lemma2_slack");
  const auto a = moduli(f.coefficients);
  const double bound = 1.0 - a[0] * a[0];
  double worst = std::numeric_limits<double>::infinity();
  for (size_t n = 1; n < a.size(); ++n) {
    worst = std::min(worst, bound - a[n]);
  }
  return worst;
}

double lemma3_odd_slack(const AnalyticSeries& f) {
  require_unit_norm(f, "lemma3_odd_slack");
  const auto a = moduli(f.coefficients);
  const int m = static_cast<int>(a.size()) - 1;
  double partial = 0.0;  // sum_{j<=k} |a_j|^2
  double worst = std::numeric_limits<double>::infinity();
  for (int k = 0; 2 * k + 1 <= m; ++k) {
    partial += a[k] * a[k];
    worst = std::min(worst, (1.0 - partial) - a[2 * k + 1]);
  }
  return worst;
}

double lemma3_even_slack(const AnalyticSeries& f) {
  require_unit_norm(f, "lemma3_even_slack");
  const auto a = moduli(f.coefficients);
  const int m = static_cast<int>(a.size()) - 1;
  double partial = 0.0;  // sum_{j<k} |a_j|^2
  double worst = std::numeric_limits<double>::infinity();
  for (int k = 1; 2 * k <= m; ++k) {
    partial += a[k - 1] * a[k - 1];
    const double bound = 1.0 - partial - a[k] * a[k] / (1.0 + a[0]);
    worst = std::min(worst, bound - a[2 * k]);
  }
  return worst;
}

double lemma4_slack(const HarmonicMap& map, const PsiTable& table) {
  const auto am = moduli(map.h.coefficients);
  const auto bm = moduli(map.g.coefficients);
  const int m = std::max(map.h.order(), map.g.order());
  if (static_cast<int>(table.psi.size()) <= m) {
    throw std::invalid_argument("lemma4_slack: table shorter than the map");
  }
  double lhs = 0.0, rhs = 0.0;
  for (int n = 1; n <= m; ++n) {
    if (n <= map.g.order()) lhs += bm[n] * bm[n] * table.psi[n];
    if (n <= map.h.order()) rhs += am[n] * am[n] * table.psi[n];
  }
  return map.k * map.k * rhs - lhs;
}

namespace {

double refined_coefficient_sum(const std::vector<double>& a, const PsiTable& table) {
  const int m = static_cast<int>(a.size()) - 1;
  if (static_cast<int>(table.psi.size()) <= 2 * m ||
      static_cast<int>(table.tail.size()) <= 2 * m + 1) {
    throw std::invalid_argument("lemma slack: table shorter than 2x the series");
  }
  double sum = 0.0;
  for (int n = 1; n <= m; ++n) {
    sum += a[n] * a[n] * (table.psi[2 * n] / (1.0 + a[0]) + table.tail[2 * n + 1]);
  }
  return sum;
}

}  // namespace

double lemma6_slack(const AnalyticSeries& f, const PsiTable& table) {
  require_unit_norm(f, "lemma6_slack");
  const auto a = moduli(f.coefficients);
  const int m = static_cast<int>(a.size()) - 1;
  double lhs = refined_coefficient_sum(a, table);
  for (int n = 1; n <= m; ++n) {
    lhs += a[n] * table.psi[n];
  }
  return (1.0 - a[0] * a[0]) * table.tail[1] - lhs;
}

double lemma7_slack(const AnalyticSeries& f, const PsiTable& table) {
  require_unit_norm(f, "lemma7_slack");
  const auto a = moduli(f.coefficients);
  const int m = static_cast<int>(a.size()) - 1;
  double lhs = refined_coefficient_sum(a, table);
  for (int n = 2; n <= m; ++n) {
    lhs += a[n] * table.psi[n];
  }
  return (1.0 - a[0] * a[0]) * table.tail[2] - lhs;
}

AnalyticSeries random_blaschke(std::mt19937_64& rng, int max_zeros, int order) {
  if (max_zeros < 1) {
    throw std::domain_error("random_blaschke: max_zeros must be >= 1");
  }
  const int nz = 1 + static_cast<int>(uniform01(rng) * max_zeros);
  std::vector<std::complex<double>> zeros(nz);
  for (auto& w : zeros) {
    const double rho = 0.9 * uniform01(rng);
    const double theta = 2.0 * std::numbers::pi * uniform01(rng);
    w = std::polar(rho, theta);
  }
  AnalyticSeries f = blaschke_product(zeros, order);
  const auto phase = std::polar(1.0, 2.0 * std::numbers::pi * uniform01(rng));
  for (auto& c : f.coefficients) {
    c *= phase;
  }
  return f;
}

}  // namespace bohr
