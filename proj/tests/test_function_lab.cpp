#include "bohr/function_lab.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include "bohr/errors.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace bohr;
using cplx = std::complex<double>;

namespace {

AnalyticSeries minus_z() {
  AnalyticSeries h;
  h.coefficients = {0.0, -1.0};
  h.sup_norm = 1.0;
  h.exact = true;
  return h;
}

HarmonicMap minus_z_map() {
  AnalyticSeries g;
  g.coefficients = {0.0};
  g.exact = true;
  return make_harmonic_map(minus_z(), g, 0.0);
}

Coeffs convolve_full(const Coeffs& x, const Coeffs& y) {
  Coeffs out(x.size() + y.size() - 1, 0.0);
  for (size_t i = 0; i < x.size(); ++i) {
    for (size_t j = 0; j < y.size(); ++j) {
      out[i + j] += x[i] * y[j];
    }
  }
  return out;
}

// closed-form atom expansion for a real zero w: c_0 = w, c_n = -(1-w^2) w^(n-1)
Coeffs atom_series(double w, int order) {
  Coeffs c(static_cast<size_t>(order) + 1, 0.0);
  c[0] = w;
  double wp = 1.0;
  for (int n = 1; n <= order; ++n) {
    c[n] = -(1.0 - w * w) * wp;
    wp *= w;
  }
  return c;
}

}  // namespace

TEST_CASE("mobius coefficients") {
  const HarmonicMap trivial = mobius_coefficients({0.0, {1.0, 0.0}, 0.0}, 3);
  CHECK(trivial.h.coefficients == Coeffs{0.0, -1.0, 0.0, 0.0});
  for (const auto& c : trivial.g.coefficients) CHECK(c == cplx(0.0));
  CHECK(*trivial.h.sup_norm == 1.0);

  const HarmonicMap half = mobius_coefficients({0.5, {1.0, 0.0}, 0.0}, 3);
  CHECK(std::abs(half.h.coefficients[0] - cplx(0.5)) <= 1e-16);
  CHECK(std::abs(half.h.coefficients[1] - cplx(-0.75)) <= 1e-16);
  CHECK(std::abs(half.h.coefficients[2] - cplx(-0.375)) <= 1e-16);
  CHECK(std::abs(half.h.coefficients[3] - cplx(-0.1875)) <= 1e-16);
  // series-division oracle: (a - z) / (1 - a z)
  const Coeffs divided = series_divide({0.5, -1.0}, {1.0, -0.5}, 3);
  for (int n = 0; n <= 3; ++n) {
    CHECK(std::abs(half.h.coefficients[n] - divided[n]) <= 1e-15);
  }

  const HarmonicMap tilted = mobius_coefficients({0.5, {1.0, 0.0}, 1.0 / 3.0}, 2);
  CHECK(std::abs(tilted.g.coefficients[0]) == 0.0);
  CHECK(std::abs(tilted.g.coefficients[1] - cplx(-0.25)) <= 1e-15);
  CHECK(std::abs(tilted.g.coefficients[2] - cplx(-0.125)) <= 1e-15);

  CHECK_THROWS_AS(mobius_coefficients({1.0, {1.0, 0.0}, 0.0}, 3), std::domain_error);
  CHECK_THROWS_AS(mobius_coefficients({0.5, {2.0, 0.0}, 0.0}, 3), std::domain_error);
  CHECK_THROWS_AS(mobius_coefficients({0.5, {1.0, 0.0}, 0.0}, 0), std::domain_error);
}

TEST_CASE("blaschke products") {
  const AnalyticSeries b0 = blaschke_product(std::vector<cplx>{0.0}, 2);
  CHECK(b0.coefficients == Coeffs{0.0, -1.0, 0.0});
  CHECK(*b0.sup_norm == 1.0);

  const AnalyticSeries b1 = blaschke_product(std::vector<cplx>{0.5}, 3);
  const Coeffs atom = atom_series(0.5, 3);
  for (int n = 0; n <= 3; ++n) {
    CHECK(std::abs(b1.coefficients[n] - atom[n]) <= 1e-15);
  }

  // two-atom product against a plain series-multiplication oracle
  const AnalyticSeries b2 = blaschke_product(std::vector<cplx>{0.3, -0.4}, 4);
  const Coeffs expect = convolve_full(atom_series(0.3, 4), atom_series(-0.4, 4));
  for (int n = 0; n <= 4; ++n) {
    CHECK(std::abs(b2.coefficients[n] - expect[n]) <= 1e-14);
  }

  CHECK_THROWS_AS(blaschke_product(std::vector<cplx>{{1.0, 0.0}}, 4),
                  std::domain_error);
  CHECK_THROWS_AS(blaschke_product(std::vector<cplx>{0.3, 0.4}, 1),
                  std::invalid_argument);
}

TEST_CASE("harmonic map validation") {
  AnalyticSeries g_bad;
  g_bad.coefficients = {1.0, 0.5};
  CHECK_THROWS_AS(make_harmonic_map(minus_z(), g_bad, 0.5), std::invalid_argument);
  AnalyticSeries g_ok;
  g_ok.coefficients = {0.0, 0.5};
  CHECK_THROWS_AS(make_harmonic_map(minus_z(), g_ok, 1.0), std::domain_error);
  const HarmonicMap m = make_harmonic_map(minus_z(), g_ok, 0.5);
  CHECK(m.K() == doctest::Approx(3.0));
}

TEST_CASE("scaled co-analytic part keeps the dilatation bound") {
  std::mt19937_64 rng(7);
  const AnalyticSeries h = random_blaschke(rng, 3, 64);
  const double k = 0.4;
  const HarmonicMap map = with_scaled_coanalytic(h, std::polar(1.0, 1.1), k);
  REQUIRE(map.g.coefficients[0] == cplx(0.0));
  for (double r : {0.2, 0.5, 0.8}) {
    for (int j = 0; j < 6; ++j) {
      const auto z = std::polar(r, j * 1.03);
      const double gp = std::abs(map.g.derivative_at(z));
      const double hp = std::abs(map.h.derivative_at(z));
      CHECK(gp <= k * hp + 1e-12);
    }
  }
}

TEST_CASE("majorant examples") {
  const PsiFamily geo = PsiFamily::geometric();

  CHECK(majorant_lhs(minus_z_map(), Theorem::T1, geo, 1.0 / 3.0, 1.0) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-13));

  const HarmonicMap half = mobius_coefficients({0.5, {1.0, 0.0}, 0.0}, kDefaultOrder);
  CHECK(majorant_lhs(half, Theorem::T1, geo, 0.2, 1.0) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-12));

  // h = -z at r = 0.3: |h(-r)|^2 psi_0 + |h'| psi_1 = 0.39 plus the refined
  // term |a_1|^2 (psi_2 + Psi_3) = 0.09 + 0.3^3/0.7
  const double refined = 0.09 + 0.027 / 0.7;
  CHECK(majorant_lhs(minus_z_map(), Theorem::T4, geo, 0.3, 1.0) ==
        doctest::Approx(0.39 + refined).epsilon(1e-13));

  // default evaluation point is z = -r
  CHECK(majorant_lhs(minus_z_map(), Theorem::T4, geo, 0.3, 1.0, {},
                     cplx(-0.3, 0.0)) ==
        doctest::Approx(0.39 + refined).epsilon(1e-13));
  CHECK_THROWS_AS(
      majorant_lhs(minus_z_map(), Theorem::T4, geo, 0.3, 1.0, {}, cplx(0.5, 0.0)),
      std::domain_error);
}

TEST_CASE("majorant flags insufficient truncation") {
  const HarmonicMap stub = mobius_coefficients({0.1, {1.0, 0.0}, 0.0}, 2);
  CHECK_THROWS_AS(majorant_lhs(stub, Theorem::T1, PsiFamily::geometric(), 0.9, 1.0),
                  TruncationError);
}

TEST_CASE("majorant needs a known sup norm") {
  HarmonicMap map = minus_z_map();
  map.h.sup_norm.reset();
  CHECK_THROWS_AS(majorant_lhs(map, Theorem::T1, PsiFamily::geometric(), 0.2, 1.0),
                  std::invalid_argument);
}

TEST_CASE("sharpness probe finds witnesses beyond the radius") {
  const auto c1 = RadiusProblem::make(Theorem::C1, PsiFamily::geometric(), 1.0, 1.0);
  const auto solved = solve_radius(c1);
  CHECK(solved.radius == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  const std::vector<double> close_to_one{0.999};
  const auto witness = sharpness_probe(c1, solved, 0.05, close_to_one);
  REQUIRE(witness.has_value());
  CHECK(witness->lhs > witness->rhs);
  CHECK(witness->a == 0.999);
  CHECK(witness->r == doctest::Approx(solved.radius + 0.05));

  const std::vector<double> grid{0.9, 0.99, 0.999, 0.9999};
  const auto t4 = RadiusProblem::make(Theorem::T4, PsiFamily::geometric(), 1.0, 1.0);
  const auto t4_solved = solve_radius(t4);
  const auto t4_witness = sharpness_probe(t4, t4_solved, 0.02, grid);
  REQUIRE(t4_witness.has_value());
  CHECK(t4_witness->lhs > t4_witness->rhs);

  CHECK_THROWS_AS(sharpness_probe(c1, solved, 0.0, grid), std::domain_error);
  CHECK_THROWS_AS(sharpness_probe(c1, solved, 1.0 - solved.radius, grid),
                  std::domain_error);
}

TEST_CASE("majorant stays below psi_0 under the radius") {
  const std::vector<double> a_grid{0.0, 0.25, 0.5, 0.75, 0.9, 0.99};
  const auto problems = {
      RadiusProblem::make(Theorem::C2, PsiFamily::harmonic_weight(), 2.0, 1.0),
      RadiusProblem::make(Theorem::T2, PsiFamily::zeta_weight(), 5.0, 2.0,
                          PolynomialG({1.0})),
      RadiusProblem::make(Theorem::T3, PsiFamily::geometric(), 2.0, 1.0)};
  for (const auto& pb : problems) {
    const auto solved = solve_radius(pb);
    for (double a : a_grid) {
      const auto map =
          mobius_coefficients(MobiusAtom{a, {1.0, 0.0}, pb.k()}, kDefaultOrder);
      for (int i = 1; i <= 8; ++i) {
        const double r = solved.radius * (0.1 + 0.89 * (i - 1) / 7.0);
        const double lhs = majorant_lhs(map, pb.theorem, pb.family, r, pb.p, pb.G);
        CHECK(lhs <= pb.family.psi(0, r) + 1e-10);
      }
    }
  }
}

TEST_CASE("coefficient lemmas on random Blaschke products") {
  std::mt19937_64 rng(42);
  std::vector<PsiTable> tables;
  for (const auto& fam : {PsiFamily::geometric(), PsiFamily::harmonic_weight(),
                          PsiFamily::zeta_weight()}) {
    for (double r : {0.1, 0.4, 0.8}) {
      tables.emplace_back(fam, r, 2 * 128 + 2);
    }
  }
  for (int i = 0; i < 60; ++i) {
    const AnalyticSeries f = random_blaschke(rng, 4, 128);
    CHECK(lemma1_slack(f) >= -1e-10);
    CHECK(lemma2_slack(f) >= -1e-12);
    CHECK(lemma3_odd_slack(f) >= -1e-12);
    CHECK(lemma3_even_slack(f) >= -1e-12);
    const HarmonicMap map = with_scaled_coanalytic(f, std::polar(1.0, 0.7), 0.6);
    for (const auto& table : tables) {
      CHECK(lemma4_slack(map, table) >= -1e-12);
      CHECK(lemma6_slack(f, table) >= -1e-10);
      CHECK(lemma7_slack(f, table) >= -1e-10);
    }
  }
}

TEST_CASE("lemma equality witnesses") {
  // the atom pins |a_1| = 1 - |a_0|^2 exactly
  const HarmonicMap atom = mobius_coefficients({0.37, {1.0, 0.0}, 0.0}, 4);
  CHECK(std::abs(std::abs(atom.h.coefficients[1]) - (1.0 - 0.37 * 0.37)) <= 1e-16);

  // non-unit-norm input is rejected
  AnalyticSeries f = minus_z();
  f.sup_norm = 2.0;
  CHECK_THROWS_AS(lemma2_slack(f), std::invalid_argument);
  f.sup_norm.reset();
  CHECK_THROWS_AS(lemma1_slack(f), std::invalid_argument);
}

TEST_CASE("random_blaschke is deterministic for a fixed seed") {
  std::mt19937_64 rng_a(2024), rng_b(2024);
  const AnalyticSeries fa = random_blaschke(rng_a, 4, 32);
  const AnalyticSeries fb = random_blaschke(rng_b, 4, 32);
  REQUIRE(fa.coefficients.size() == fb.coefficients.size());
  for (size_t i = 0; i < fa.coefficients.size(); ++i) {
    CHECK(fa.coefficients[i] == fb.coefficients[i]);
  }
}
