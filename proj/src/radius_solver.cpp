#include "bohr/radius_solver.hpp"

#include <cctype>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bohr/errors.hpp"

namespace bohr {

namespace {

constexpr double kGridStep = 1e-3;
constexpr int kHypothesisCheckDepth = 128;
constexpr int kConvolutionCheckDepth = 512;

struct RootScan {
  double root;
  double residual;
  double lo;
  double hi;
};

// First sign change of f on [0, 1-1e-6]: uniform grid scan, bisection to
// width <= tol, then a guarded false-position polish that keeps the bracket.
// Requires f(0) < 0. Returns nullopt when f stays negative everywhere.
std::optional<RootScan> minimal_root(const std::function<double(double)>& f,
                                     double tol, int& evals) {
  auto eval = [&](double r) {
    ++evals;
    return f(r);
  };

  double lo = 0.0;
  double flo = eval(0.0);
  if (flo >= 0.0) {
    throw std::domain_error("solve_radius: functional is non-negative at r = 0");
  }

  std::vector<double> grid;
  grid.reserve(1004);
  for (int k = 1; k * kGridStep < 0.9995; ++k) {
    grid.push_back(k * kGridStep);
  }
  for (double r : {0.9995, 0.9999, 0.99999, 1.0 - 1e-6}) {
    grid.push_back(r);
  }

  double hi = 0.0, fhi = 0.0;
  bool bracketed = false;
  for (double r : grid) {
    const double fr = eval(r);
    if (fr >= 0.0) {
      hi = r;
      fhi = fr;
      bracketed = true;
      break;
    }
    lo = r;
    flo = fr;
  }
  if (!bracketed) {
    return std::nullopt;
  }

  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double fm = eval(mid);
    if (fm >= 0.0) {
      hi = mid;
      fhi = fm;
    } else {
      lo = mid;
      flo = fm;
    }
  }

  // Illinois false position: drives |f| to rounding level without leaving
  // the bracket, so the reported residual is far below the bracket width.
  double best_x = (std::abs(flo) < std::abs(fhi)) ? lo : hi;
  double best_f = std::min(std::abs(flo), std::abs(fhi));
  double wl = 1.0, wh = 1.0;
  for (int it = 0; it < 60 && hi > lo; ++it) {
    const double denom = wh * fhi - wl * flo;
    double x = (denom != 0.0) ? (lo * wh * fhi - hi * wl * flo) / denom
                              : 0.5 * (lo + hi);
    if (!(x > lo) || !(x < hi)) {
      x = 0.5 * (lo + hi);
    }
    if (x == lo || x == hi) break;
    const double fx = eval(x);
    if (std::abs(fx) < best_f) {
      best_f = std::abs(fx);
      best_x = x;
    }
    if (fx == 0.0) break;
    if (fx > 0.0) {
      hi = x;
      fhi = fx;
      wh = 1.0;
      wl *= 0.5;
    } else {
      lo = x;
      flo = fx;
      wl = 1.0;
      wh *= 0.5;
    }
  }
  return RootScan{best_x, best_f, lo, hi};
}

}  // namespace

std::string_view theorem_id(Theorem t) {
  switch (t) {
    case Theorem::T1: return "t1";
    case Theorem::C1: return "c1";
    case Theorem::T2: return "t2";
    case Theorem::C2: return "c2";
    case Theorem::T3: return "t3";
    case Theorem::T4: return "t4";
    case Theorem::Convolution: return "conv";
  }
  return "?";
}

Theorem theorem_from_id(std::string_view id) {
  std::string s(id);
  for (auto& ch : s) ch = char(std::tolower(static_cast<unsigned char>(ch)));
  if (s == "t1") return Theorem::T1;
  if (s == "c1") return Theorem::C1;
  if (s == "t2") return Theorem::T2;
  if (s == "c2") return Theorem::C2;
  if (s == "t3") return Theorem::T3;
  if (s == "t4") return Theorem::T4;
  if (s == "conv" || s == "convolution") return Theorem::Convolution;
  throw std::invalid_argument("unknown theorem id '" + std::string(id) + "'");
}

PolynomialG::PolynomialG(std::vector<double> coefficients)
    : coefficients_(std::move(coefficients)) {
  for (double c : coefficients_) {
    if (!(c >= 0.0)) {
      throw std::domain_error("PolynomialG: coefficients must be non-negative");
    }
  }
  while (!coefficients_.empty() && coefficients_.back() == 0.0) {
    coefficients_.pop_back();
  }
}

double PolynomialG::operator()(double x) const {
  double acc = 0.0;
  for (size_t t = coefficients_.size(); t-- > 0;) {
    acc = acc * x + coefficients_[t];
  }
  return acc * x;
}

RadiusProblem RadiusProblem::make(Theorem theorem, PsiFamily family, double K,
                                  double p, PolynomialG G) {
  if (!(K >= 1.0)) {
    throw std::domain_error("RadiusProblem: K must be >= 1");
  }
  if (!(p > 0.0) || !(p <= 2.0)) {
    throw std::domain_error("RadiusProblem: p must lie in (0,2]");
  }
  if (!G.empty() && theorem != Theorem::T1 && theorem != Theorem::T2) {
    throw std::invalid_argument(
        "RadiusProblem: G enters only the improved forms (t1/t2)");
  }
  if (theorem == Theorem::Convolution && family.kind() != PsiKind::Hypergeometric) {
    throw std::invalid_argument(
        "RadiusProblem: convolution problems need a hypergeometric family");
  }
  return RadiusProblem{theorem, std::move(family), K, p, std::move(G)};
}

double phi(const RadiusProblem& problem, double r) {
  if (!(r >= 0.0) || r >= 1.0) {
    throw std::domain_error("phi: r must lie in [0,1)");
  }
  if (!problem.family.is_decreasing_at(r, kHypothesisCheckDepth)) {
    throw HypothesisViolationError("phi: family '" + problem.family.id() +
                                   "' is not decreasing at r = " + std::to_string(r));
  }
  const double kq = problem.k();
  const double lead = 1.0 + kq;  // 2K/(K+1)
  switch (problem.theorem) {
    case Theorem::T1:
    case Theorem::T2:
      return lead * problem.family.sum_from(1, r) +
             problem.G(problem.family.weighted_square_sum(r)) -
             0.5 * problem.p * problem.family.psi(0, r);
    case Theorem::C1:
    case Theorem::C2:
      return lead * problem.family.sum_from(1, r) -
             0.5 * problem.p * problem.family.psi(0, r);
    case Theorem::T3: {
      const double psi0 = problem.family.psi(0, r);
      if (psi0 == 0.0) {
        throw std::domain_error("phi: psi_0(r) vanishes");
      }
      const double psi1 = problem.family.psi(1, r);
      const double s = (1.0 + r) * (1.0 + r);
      return 2.0 * psi1 + 2.0 * s * (lead * problem.family.sum_from(2, r) + kq * psi1) -
             (1.0 - r * r) * psi0;
    }
    case Theorem::T4: {
      const double psi0 = problem.family.psi(0, r);
      if (psi0 == 0.0) {
        throw std::domain_error("phi: psi_0(r) vanishes");
      }
      const double psi1 = problem.family.psi(1, r);
      const double s = (1.0 + r) * (1.0 + r);
      return psi1 + s * (lead * problem.family.sum_from(2, r) + kq * psi1) -
             (1.0 - r * r) * psi0;
    }
    case Theorem::Convolution:
      return problem.family.sum_from(1, r) -
             0.25 * problem.p * (problem.K + 1.0) / problem.K;
  }
  return 0.0;
}

RadiusResult solve_radius(const RadiusProblem& problem, double tol) {
  if (!(tol >= 1e-14) || !(tol <= 1e-6)) {
    throw std::domain_error("solve_radius: tol must lie in [1e-14, 1e-6]");
  }
  if (problem.theorem == Theorem::Convolution &&
      !hypergeometric_hypothesis_holds(*problem.family.hyp(),
                                       kConvolutionCheckDepth)) {
    throw HypothesisViolationError(
        "solve_radius: (a+n)(b+n) <= (c+n)(1+n) fails for family " +
        problem.family.id());
  }

  int evals = 0;
  const auto scan =
      minimal_root([&](double r) { return phi(problem, r); }, tol, evals);
  if (!scan) {
    throw NoRootError("solve_radius: phi stays negative on [0, 1-1e-6] for " +
                      std::string(theorem_id(problem.theorem)) + "/" +
                      problem.family.id());
  }

  RadiusResult result;
  result.radius = scan->root;
  result.residual = scan->residual;
  result.bracket_lo = scan->lo;
  result.bracket_hi = scan->hi;

  if (problem.theorem == Theorem::T3 || problem.theorem == Theorem::T4) {
    const double mult = (problem.theorem == Theorem::T3) ? 2.0 : 1.0;
    const auto constraint = minimal_root(
        [&](double r) {
          return mult * problem.family.psi(1, r) -
                 (1.0 - r * r) * problem.family.psi(0, r);
        },
        tol, evals);
    if (!constraint) {
      throw NoRootError("solve_radius: constraint equation has no root in (0,1)");
    }
    result.constraint_radius_R = constraint->root;
    if (result.radius > *result.constraint_radius_R + 1e-12) {
      throw std::logic_error("solve_radius: radius exceeds constraint radius R");
    }
  }

  result.iterations = evals;
  return result;
}

std::optional<double> closed_form_radius(const RadiusProblem& problem) {
  if (problem.family.kind() != PsiKind::Geometric) {
    return std::nullopt;
  }
  const bool corollary =
      problem.theorem == Theorem::C1 || problem.theorem == Theorem::C2;
  const bool improved_without_G =
      (problem.theorem == Theorem::T1 || problem.theorem == Theorem::T2) &&
      problem.G.empty();
  if (!corollary && !improved_without_G) {
    return std::nullopt;
  }
  const double pk = problem.p * (problem.K + 1.0);
  return pk / (4.0 * problem.K + pk);
}

}  // namespace bohr
