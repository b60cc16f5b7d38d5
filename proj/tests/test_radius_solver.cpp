#include "bohr/radius_solver.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "bohr/errors.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace bohr;

namespace {

RadiusProblem geometric_problem(Theorem t, double K, double p, PolynomialG G = {}) {
  return RadiusProblem::make(t, PsiFamily::geometric(), K, p, std::move(G));
}

PsiFamily half_geometric() {
  CustomPsi spec;
  spec.name = "halfgeo";
  spec.term = [](int n, double r) { return std::pow(0.5 * r, n); };
  return PsiFamily::custom(spec);
}

}  // namespace

TEST_CASE("polynomial G") {
  const PolynomialG zero;
  CHECK(zero.empty());
  CHECK(zero(0.7) == 0.0);
  const PolynomialG g({2.0, 0.5});
  CHECK(g(0.5) == doctest::Approx(2.0 * 0.5 + 0.5 * 0.25).epsilon(1e-15));
  CHECK(PolynomialG({0.0}).empty());  // all-zero normalizes to G == 0
  CHECK(PolynomialG({1.0, 0.0}).coefficients().size() == 1);
  CHECK_THROWS_AS(PolynomialG({-1.0}), std::domain_error);
}

TEST_CASE("problem validation") {
  CHECK_THROWS_AS(geometric_problem(Theorem::C1, 0.5, 1.0), std::domain_error);
  CHECK_THROWS_AS(geometric_problem(Theorem::C1, 1.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(geometric_problem(Theorem::C1, 1.0, 2.5), std::domain_error);
  CHECK_THROWS_AS(geometric_problem(Theorem::C1, 1.0, 1.0, PolynomialG({1.0})),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      RadiusProblem::make(Theorem::Convolution, PsiFamily::geometric(), 1.0, 1.0),
      std::invalid_argument);
  CHECK(geometric_problem(Theorem::C1, 3.0, 1.0).k() == doctest::Approx(0.5));
}

TEST_CASE("phi values") {
  // K = 1, p = 1, G == 0: phi = r/(1-r) - 1/2, zero at r = 1/3
  const auto p1 = geometric_problem(Theorem::T1, 1.0, 1.0);
  CHECK(std::abs(phi(p1, 1.0 / 3.0)) <= 1e-15);

  for (Theorem t : {Theorem::T1, Theorem::C1, Theorem::T2, Theorem::C2}) {
    for (double p : {0.5, 1.0, 2.0}) {
      const auto pb = geometric_problem(t, 2.0, p);
      CHECK(phi(pb, 0.0) == doctest::Approx(-0.5 * p).epsilon(1e-15));
    }
  }

  // (1-r) Phi_6(r) = -(1 - 2r - r^2 - r^3 - r^4) for the geometric family, K=1
  const auto p4 = geometric_problem(Theorem::T4, 1.0, 1.0);
  const double expansion = -(1.0 - 2.0 * 0.3 - 0.09 - 0.027 - 0.0081);
  CHECK((1.0 - 0.3) * phi(p4, 0.3) == doctest::Approx(expansion).epsilon(1e-14));
  CHECK(expansion == doctest::Approx(-0.2749).epsilon(1e-12));

  CHECK_THROWS_AS(phi(p1, 1.0), std::domain_error);
}

TEST_CASE("phi rejects non-decreasing families") {
  // psi_1 < psi_2 < ... beyond r = 1/2, with mass too small for an early root,
  // so the scan meets the hypothesis violation before any sign change
  CustomPsi growing;
  growing.name = "slow_n_rn";
  growing.term = [](int n, double r) {
    return n == 0 ? 1.0 : 1e-3 * n * std::pow(r, n);
  };
  const auto pb =
      RadiusProblem::make(Theorem::C1, PsiFamily::custom(growing), 1.0, 1.0);
  CHECK_THROWS_AS(phi(pb, 0.9), HypothesisViolationError);
  CHECK_THROWS_AS(solve_radius(pb), HypothesisViolationError);
}

TEST_CASE("solved radii match catalogued applications") {
  CHECK(solve_radius(geometric_problem(Theorem::C1, 2.0, 1.0)).radius ==
        doctest::Approx(3.0 / 11.0).epsilon(1e-12));
  CHECK(solve_radius(geometric_problem(Theorem::C1, 1.0, 2.0)).radius ==
        doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("T3/T4 radii reproduce the K=1 cross-checks") {
  const auto r3 = solve_radius(geometric_problem(Theorem::T3, 1.0, 1.0));
  CHECK(std::abs(r3.radius - (std::sqrt(17.0) - 3.0) / 4.0) <= 1e-9);

  const auto r4 = solve_radius(geometric_problem(Theorem::T4, 1.0, 1.0));
  const double quartic_root = oracles::bisect(
      [](double r) { return -(1.0 - 2.0 * r - r * r - r * r * r - r * r * r * r); },
      0.0, 0.9);
  CHECK(std::abs(r4.radius - quartic_root) <= 1e-9);
  CHECK(std::abs(r4.radius - 0.385795) <= 1e-6);
}

TEST_CASE("T3/T4 radii solve the per-family application equations") {
  // the displayed equations: q(r) + m (1+r)^2 (lead * W(r) - r) = 0 with
  // m = 2 (T3) or 1 (T4), q(r) = r^2 + m r - 1, lead = 2K/(K+1), and
  // W = r^2/((1-r)... ) per family; pinned by test-local bisection
  for (double K : {1.0, 2.0, 5.0}) {
    const double lead = 2.0 * K / (K + 1.0);
    const double kq = (K - 1.0) / (K + 1.0);
    for (int m : {2, 1}) {
      const Theorem t = (m == 2) ? Theorem::T3 : Theorem::T4;
      auto quad = [&](double r) { return r * r + m * r - 1.0; };

      const double geo = oracles::bisect(
          [&](double r) {
            return (1.0 - r) * quad(r) +
                   m * (1.0 + r) * (1.0 + r) * (r * r + kq * r);
          },
          0.0, 0.9);
      CHECK(std::abs(
                solve_radius(RadiusProblem::make(t, PsiFamily::geometric(), K, 1.0))
                    .radius -
                geo) <= 1e-10);

      const double harm = oracles::bisect(
          [&](double r) {
            return quad(r) -
                   m * (1.0 + r) * (1.0 + r) * (r + lead * std::log(1.0 - r));
          },
          0.0, 0.9);
      CHECK(std::abs(solve_radius(RadiusProblem::make(
                         t, PsiFamily::harmonic_weight(), K, 1.0))
                         .radius -
                     harm) <= 1e-10);

      const double zeta = oracles::bisect(
          [&](double r) {
            return quad(r) + m * (1.0 + r) * (1.0 + r) *
                                 (lead * oracles::polylog_partial(2, r) - r);
          },
          0.01, 0.9);
      CHECK(std::abs(
                solve_radius(RadiusProblem::make(t, PsiFamily::zeta_weight(), K, 1.0))
                    .radius -
                zeta) <= 1e-10);
    }
  }
}

TEST_CASE("T3/T4 constraint radii") {
  for (double K : {1.0, 2.0, 5.0}) {
    const auto r3 = solve_radius(geometric_problem(Theorem::T3, K, 1.0));
    REQUIRE(r3.constraint_radius_R.has_value());
    CHECK(std::abs(*r3.constraint_radius_R - (std::sqrt(2.0) - 1.0)) <= 1e-12);
    CHECK(r3.radius <= *r3.constraint_radius_R + 1e-12);

    const auto r4 = solve_radius(geometric_problem(Theorem::T4, K, 1.0));
    REQUIRE(r4.constraint_radius_R.has_value());
    CHECK(std::abs(*r4.constraint_radius_R - (std::sqrt(5.0) - 1.0) / 2.0) <= 1e-12);
    CHECK(r4.radius <= *r4.constraint_radius_R + 1e-12);
  }
}

TEST_CASE("convolution radius equation") {
  const auto pb = RadiusProblem::make(
      Theorem::Convolution, PsiFamily::hypergeometric(HypergeometricParams(1, 1, 2)),
      1.0, 1.0);
  const auto res = solve_radius(pb);
  const double expect = oracles::bisect(
      [](double r) { return -std::log1p(-r) / r - 1.5; }, 0.1, 0.9);
  CHECK(std::abs(res.radius - expect) <= 1e-10);
  CHECK(res.radius == doctest::Approx(0.583).epsilon(1e-3));
}

TEST_CASE("closed-form catalogue") {
  CHECK(*closed_form_radius(geometric_problem(Theorem::C1, 10.0, 1.0)) ==
        doctest::Approx(11.0 / 51.0).epsilon(1e-15));
  CHECK(*closed_form_radius(geometric_problem(Theorem::C1, 1.0, 2.0)) ==
        doctest::Approx(0.5).epsilon(1e-15));
  CHECK(!closed_form_radius(geometric_problem(Theorem::T1, 3.0, 1.0, PolynomialG({1.0})))
             .has_value());
  CHECK(!closed_form_radius(RadiusProblem::make(Theorem::C1,
                                                PsiFamily::harmonic_weight(), 2.0, 1.0))
             .has_value());
  CHECK(closed_form_radius(geometric_problem(Theorem::T2, 2.0, 1.0)).has_value());
}

TEST_CASE("solver agrees with closed forms across K and p") {
  for (Theorem t : {Theorem::C1, Theorem::C2, Theorem::T1, Theorem::T2}) {
    for (double K : {1.0, 1.5, 2.0, 5.0, 10.0, 100.0}) {
      for (double p : {0.5, 1.0, 2.0}) {
        const auto pb = geometric_problem(t, K, p);
        const auto res = solve_radius(pb);
        const auto closed = closed_form_radius(pb);
        REQUIRE(closed.has_value());
        CHECK(std::abs(res.radius - *closed) <= 1e-10);
        CHECK(res.residual <= 1e-11);
        CHECK(res.bracket_hi - res.bracket_lo <= 1e-12 + 1e-15);
        CHECK(phi(pb, res.bracket_lo) <= 0.0);
        CHECK(phi(pb, res.bracket_hi) >= 0.0);
      }
    }
  }
}

TEST_CASE("radius decreases in K for the corollary") {
  for (double p : {0.5, 1.0, 2.0}) {
    double prev = 2.0;
    for (double K : {1.0, 1.5, 2.0, 5.0, 10.0, 100.0}) {
      const double r = solve_radius(geometric_problem(Theorem::C1, K, p)).radius;
      CHECK(r < prev);
      prev = r;
    }
  }
}

TEST_CASE("T1 with G == 0 reduces to C1") {
  for (const auto& fam :
       {PsiFamily::geometric(), PsiFamily::harmonic_weight(), PsiFamily::zeta_weight()}) {
    for (double K : {1.0, 3.0}) {
      const auto improved = RadiusProblem::make(Theorem::T1, fam, K, 1.0);
      const auto corollary = RadiusProblem::make(Theorem::C1, fam, K, 1.0);
      CHECK(std::abs(solve_radius(improved).radius - solve_radius(corollary).radius) <=
            1e-13);
    }
  }
}

TEST_CASE("phi stays negative left of the returned radius") {
  const auto pb = RadiusProblem::make(Theorem::T2, PsiFamily::zeta_weight(), 2.0, 2.0,
                                      PolynomialG({1.0}));
  const auto res = solve_radius(pb);
  for (int i = 1; i <= 20; ++i) {
    CHECK(phi(pb, res.radius * i / 21.0) < 0.0);
  }
  CHECK(std::abs(phi(pb, res.radius)) <= 1e-11);
}

TEST_CASE("no-root problems throw") {
  const auto pb = RadiusProblem::make(Theorem::C1, half_geometric(), 1.0, 2.0);
  CHECK_THROWS_AS(solve_radius(pb), NoRootError);
}

TEST_CASE("tolerance domain") {
  const auto pb = geometric_problem(Theorem::C1, 1.0, 1.0);
  CHECK_THROWS_AS(solve_radius(pb, 1e-3), std::domain_error);
  CHECK_THROWS_AS(solve_radius(pb, 1e-15), std::domain_error);
}

TEST_CASE("convolution hypothesis validated up front") {
  const auto pb = RadiusProblem::make(
      Theorem::Convolution,
      PsiFamily::hypergeometric(HypergeometricParams(30, 1, 1)), 1.0, 1.0);
  CHECK_THROWS_AS(solve_radius(pb), HypothesisViolationError);
}

TEST_CASE("concurrent sweeps agree with serial results") {
  std::vector<RadiusProblem> problems;
  for (Theorem t : {Theorem::C1, Theorem::T2, Theorem::T3, Theorem::Convolution}) {
    for (double K : {1.0, 2.0, 5.0, 9.0}) {
      PsiFamily fam = (t == Theorem::Convolution)
                          ? PsiFamily::hypergeometric(HypergeometricParams(1, 1, 2))
                          : PsiFamily::zeta_weight();
      problems.push_back(RadiusProblem::make(t, std::move(fam), K, 1.0));
    }
  }
  std::vector<double> serial(problems.size());
  for (size_t i = 0; i < problems.size(); ++i) {
    serial[i] = solve_radius(problems[i]).radius;
  }
  std::vector<double> parallel(problems.size());
  std::vector<std::thread> workers;
  workers.reserve(problems.size());
  for (size_t i = 0; i < problems.size(); ++i) {
    workers.emplace_back(
        [&, i] { parallel[i] = solve_radius(problems[i]).radius; });
  }
  for (auto& w : workers) w.join();
  for (size_t i = 0; i < problems.size(); ++i) {
    CHECK(parallel[i] == serial[i]);
  }
}

TEST_CASE("theorem ids round-trip") {
  for (Theorem t : {Theorem::T1, Theorem::C1, Theorem::T2, Theorem::C2, Theorem::T3,
                    Theorem::T4, Theorem::Convolution}) {
    CHECK(theorem_from_id(theorem_id(t)) == t);
  }
  CHECK(theorem_from_id("convolution") == Theorem::Convolution);
  CHECK_THROWS_AS(theorem_from_id("t9"), std::invalid_argument);
}
