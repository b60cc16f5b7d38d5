#include "bohr/psi_family.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <utility>

#include "bohr/errors.hpp"

namespace bohr {

namespace {

constexpr int kMaxTerms = 1'000'000;
constexpr double kTailTol = 1e-14;

void check_radius(double r, const char* where) {
  if (!(r >= 0.0) || r >= 1.0) {
    throw std::domain_error(std::string(where) + ": r must lie in [0,1)");
  }
}

// Yields psi_k(r) for k = first, first+1, ... with multiplicative state, so a
// full sweep over n terms costs O(n) rather than O(n^2).
class TermStream {
 public:
  TermStream(PsiKind kind, const HypergeometricParams* hyp, const CustomPsi* custom,
             int first, double r)
      : kind_(kind), custom_(custom), k_(first), r_(r) {
    if (kind_ != PsiKind::Custom) {
      pow_ = std::pow(r, first);
    }
    if (kind_ == PsiKind::Hypergeometric) {
      a_ = hyp->a;
      b_ = hyp->b;
      c_ = hyp->c;
      for (int j = 0; j < first; ++j) {
        gamma_ *= (a_ + j) * (b_ + j) / ((c_ + j) * (1.0 + j));
      }
    }
  }

  int index() const { return k_; }

  double next() {
    const int k = k_++;
    switch (kind_) {
      case PsiKind::Geometric: {
        const double v = pow_;  // r^0 = 1 at k = 0, also for r = 0
        pow_ *= r_;
        return v;
      }
      case PsiKind::HarmonicWeight: {
        if (k == 0) {
          pow_ = r_;
          return 1.0;
        }
        const double v = pow_ / k;
        pow_ *= r_;
        return v;
      }
      case PsiKind::ZetaWeight: {
        if (k == 0) {
          pow_ = r_;
          return 1.0;
        }
        const double v = pow_ / (double(k) * k);
        pow_ *= r_;
        return v;
      }
      case PsiKind::Hypergeometric: {
        const double v = gamma_ * pow_;
        gamma_ *= (a_ + k) * (b_ + k) / ((c_ + k) * (1.0 + k));
        pow_ *= r_;
        return v;
      }
      case PsiKind::Custom: {
        const double v = custom_->term(k, r_);
        if (!(v >= 0.0)) {
          throw std::domain_error("PsiFamily: custom term is negative at n=" +
                                  std::to_string(k));
        }
        return v;
      }
    }
    return 0.0;
  }

 private:
  PsiKind kind_;
  const CustomPsi* custom_;
  int k_;
  double r_;
  double pow_ = 1.0;
  double gamma_ = 1.0;
  double a_ = 0.0, b_ = 0.0, c_ = 0.0;
};

}  // namespace

PsiFamily::PsiFamily(PsiKind kind, std::string id) : kind_(kind), id_(std::move(id)) {}

PsiFamily PsiFamily::geometric() { return PsiFamily(PsiKind::Geometric, "geometric"); }

PsiFamily PsiFamily::harmonic_weight() {
  return PsiFamily(PsiKind::HarmonicWeight, "harmonic");
}

PsiFamily PsiFamily::zeta_weight() { return PsiFamily(PsiKind::ZetaWeight, "zeta2"); }

PsiFamily PsiFamily::hypergeometric(const HypergeometricParams& params) {
  char id[96];
  std::snprintf(id, sizeof id, "hyp:%.15g,%.15g,%.15g", params.a, params.b,
                params.c);
  PsiFamily f(PsiKind::Hypergeometric, id);
  f.hyp_ = params;
  return f;
}

PsiFamily PsiFamily::custom(CustomPsi spec) {
  if (!spec.term) {
    throw std::invalid_argument("PsiFamily::custom: term evaluator is required");
  }
  PsiFamily f(PsiKind::Custom, spec.name.empty() ? "custom" : spec.name);
  f.custom_ = std::move(spec);
  return f;
}

PsiFamily PsiFamily::from_id(std::string_view id) {
  if (id == "geometric") return geometric();
  if (id == "harmonic") return harmonic_weight();
  if (id == "zeta2") return zeta_weight();
  if (id.rfind("hyp:", 0) == 0) {
    const std::string spec(id.substr(4));
    double v[3];
    size_t pos = 0;
    for (int i = 0; i < 3; ++i) {
      size_t used = 0;
      try {
        v[i] = std::stod(spec.substr(pos), &used);
      } catch (const std::exception&) {
        throw std::invalid_argument("PsiFamily::from_id: expected hyp:a,b,c");
      }
      pos += used;
      if (i < 2) {
        if (pos >= spec.size() || spec[pos] != ',') {
          throw std::invalid_argument("PsiFamily::from_id: expected hyp:a,b,c");
        }
        ++pos;
      }
    }
    if (pos != spec.size()) {
      throw std::invalid_argument("PsiFamily::from_id: trailing characters in '" +
                                  std::string(id) + "'");
    }
    return hypergeometric(HypergeometricParams(v[0], v[1], v[2]));
  }
  throw std::invalid_argument("PsiFamily::from_id: unknown family id '" +
                              std::string(id) + "'");
}

double PsiFamily::psi(int n, double r) const {
  check_radius(r, "PsiFamily::psi");
  if (n < 0) {
    throw std::domain_error("PsiFamily::psi: n must be non-negative");
  }
  switch (kind_) {
    case PsiKind::Geometric:
      return n == 0 ? 1.0 : std::pow(r, n);
    case PsiKind::HarmonicWeight:
      return n == 0 ? 1.0 : std::pow(r, n) / n;
    case PsiKind::ZetaWeight:
      return n == 0 ? 1.0 : std::pow(r, n) / (double(n) * n);
    case PsiKind::Hypergeometric: {
      double gamma = 1.0;
      for (int j = 0; j < n; ++j) {
        gamma *= (hyp_->a + j) * (hyp_->b + j) / ((hyp_->c + j) * (1.0 + j));
      }
      return gamma * std::pow(r, n);
    }
    case PsiKind::Custom: {
      const double v = custom_.term(n, r);
      if (!(v >= 0.0)) {
        throw std::domain_error("PsiFamily: custom term is negative at n=" +
                                std::to_string(n));
      }
      return v;
    }
  }
  return 0.0;
}

double PsiFamily::certified_tail(int first, double r,
                                 const std::function<double(int)>& weight) const {
  // Positive-term accumulation. Stops once the current term is negligible
  // against the sum and a geometric bound with the largest recent ratio
  // (floored at the limit ratio r) certifies the remainder below kTailTol.
  TermStream stream(kind_, hyp(), &custom_, first, r);
  double sum = 0.0;
  double prev = -1.0;
  double window[5] = {0.0, 0.0, 0.0, 0.0, 0.0};
  int zeros_in_a_row = 0;
  for (int i = 0; i < kMaxTerms; ++i) {
    const int k = stream.index();
    const double term = stream.next() * weight(k);
    sum += term;
    if (term == 0.0) {
      if (++zeros_in_a_row >= 8) return sum;
      prev = -1.0;
      continue;
    }
    zeros_in_a_row = 0;
    if (prev > 0.0) {
      window[i % 5] = term / prev;
    }
    prev = term;
    if (i >= 5) {
      const double q = std::max({window[0], window[1], window[2], window[3],
                                 window[4], r});
      if (q < 1.0) {
        const double tail = term * q / (1.0 - q);
        if (tail <= kTailTol && term <= 1e-16 * std::max(sum, 1e-300)) {
          return sum;
        }
      }
    }
  }
  throw NonConvergenceError("PsiFamily: tail sum did not converge for family " + id_);
}

double PsiFamily::sum_from(int t, double r) const {
  check_radius(r, "PsiFamily::sum_from");
  if (t < 1) {
    throw std::domain_error("PsiFamily::sum_from: t must be >= 1");
  }
  switch (kind_) {
    case PsiKind::Geometric:
      return std::pow(r, t) / (1.0 - r);
    case PsiKind::HarmonicWeight:
      if (t == 1) return -std::log1p(-r);
      break;
    case PsiKind::ZetaWeight:
      if (t == 1) return polylog(2, r);
      break;
    case PsiKind::Hypergeometric:
      if (t == 1) return gauss_2f1(*hyp_, r) - 1.0;
      break;
    case PsiKind::Custom:
      if (custom_.tail_sum) return custom_.tail_sum(t, r);
      break;
  }
  return certified_tail(t, r, [](int) { return 1.0; });
}

double PsiFamily::weighted_square_sum(double r) const {
  check_radius(r, "PsiFamily::weighted_square_sum");
  switch (kind_) {
    case PsiKind::Geometric: {
      // sum n r^{2n} = x / (1-x)^2 with x = r^2
      const double x = r * r;
      return x / ((1.0 - x) * (1.0 - x));
    }
    case PsiKind::HarmonicWeight:
      // sum n (r^n/n)^2 = sum r^{2n}/n
      return -std::log1p(-r * r);
    case PsiKind::ZetaWeight:
      // sum n (r^n/n^2)^2 = sum r^{2n}/n^3
      return polylog(3, r * r);
    case PsiKind::Hypergeometric:
      return weighted_square_sum_from(1, r);
    case PsiKind::Custom:
      if (custom_.square_sum) return custom_.square_sum(r);
      return weighted_square_sum_from(1, r);
  }
  return 0.0;
}

double PsiFamily::weighted_square_sum_from(int t, double r) const {
  check_radius(r, "PsiFamily::weighted_square_sum_from");
  if (t < 1) {
    throw std::domain_error("PsiFamily::weighted_square_sum_from: t must be >= 1");
  }
  if (kind_ == PsiKind::Geometric) {
    // sum_{n>=t} n x^n = x^t (t - (t-1) x) / (1-x)^2 with x = r^2
    const double x = r * r;
    return std::pow(x, t) * (t - (t - 1.0) * x) / ((1.0 - x) * (1.0 - x));
  }
  // terms n psi_n^2: accumulate with the same certificate, ratio floor r^2
  TermStream stream(kind_, hyp(), &custom_, t, r);
  double sum = 0.0;
  double prev = -1.0;
  double window[5] = {0.0, 0.0, 0.0, 0.0, 0.0};
  int zeros_in_a_row = 0;
  const double floor_ratio = r * r;
  for (int i = 0; i < kMaxTerms; ++i) {
    const int k = stream.index();
    const double p = stream.next();
    const double term = double(k) * p * p;
    sum += term;
    if (term == 0.0) {
      if (++zeros_in_a_row >= 8) return sum;
      prev = -1.0;
      continue;
    }
    zeros_in_a_row = 0;
    if (prev > 0.0) window[i % 5] = term / prev;
    prev = term;
    if (i >= 5) {
      const double q = std::max({window[0], window[1], window[2], window[3],
                                 window[4], floor_ratio});
      if (q < 1.0 && term * q / (1.0 - q) <= kTailTol &&
          term <= 1e-16 * std::max(sum, 1e-300)) {
        return sum;
      }
    }
  }
  throw NonConvergenceError("PsiFamily: weighted square sum did not converge");
}

double PsiFamily::weighted_linear_sum_from(int t, double r) const {
  check_radius(r, "PsiFamily::weighted_linear_sum_from");
  if (t < 1) {
    throw std::domain_error("PsiFamily::weighted_linear_sum_from: t must be >= 1");
  }
  return certified_tail(t, r, [](int k) { return double(k); });
}

bool PsiFamily::is_decreasing_at(double r, int n_max) const {
  check_radius(r, "PsiFamily::is_decreasing_at");
  if (n_max < 2) {
    throw std::domain_error("PsiFamily::is_decreasing_at: n_max must be >= 2");
  }
  if (kind_ == PsiKind::Hypergeometric) {
    for (int n = 0; n < n_max; ++n) {
      if ((hyp_->a + n) * (hyp_->b + n) * r - (hyp_->c + n) * (1.0 + n) > 0.0) {
        return false;
      }
    }
  }
  TermStream stream(kind_, hyp(), &custom_, 1, r);
  double prev = stream.next();
  for (int n = 2; n <= n_max; ++n) {
    const double cur = stream.next();
    if (cur > prev + 1e-15) {
      return false;
    }
    prev = cur;
  }
  return true;
}

PsiTable::PsiTable(const PsiFamily& family, double r_, int n_max) : r(r_) {
  check_radius(r_, "PsiTable");
  if (n_max < 1) {
    throw std::domain_error("PsiTable: n_max must be >= 1");
  }
  psi.resize(static_cast<size_t>(n_max) + 1);
  double pw = 1.0;
  switch (family.kind()) {
    case PsiKind::Geometric:
      for (int n = 0; n <= n_max; ++n, pw *= r) psi[n] = (n == 0) ? 1.0 : pw;
      break;
    case PsiKind::HarmonicWeight:
      for (int n = 0; n <= n_max; ++n, pw *= r) psi[n] = (n == 0) ? 1.0 : pw / n;
      break;
    case PsiKind::ZetaWeight:
      for (int n = 0; n <= n_max; ++n, pw *= r)
        psi[n] = (n == 0) ? 1.0 : pw / (double(n) * n);
      break;
    case PsiKind::Hypergeometric: {
      const auto gamma = hypergeometric_coefficients(*family.hyp(), n_max);
      for (int n = 0; n <= n_max; ++n, pw *= r) psi[n] = gamma[n] * pw;
      break;
    }
    case PsiKind::Custom:
      for (int n = 0; n <= n_max; ++n) psi[n] = family.psi(n, r);
      break;
  }
  tail.assign(static_cast<size_t>(n_max) + 2, 0.0);
  tail[n_max + 1] = family.sum_from(n_max + 1, r);
  for (int t = n_max; t >= 1; --t) {
    tail[t] = tail[t + 1] + psi[t];
  }
}

}  // namespace bohr
