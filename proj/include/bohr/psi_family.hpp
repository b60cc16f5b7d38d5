#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bohr/special_functions.hpp"

namespace bohr {

enum class PsiKind { Geometric, HarmonicWeight, ZetaWeight, Hypergeometric, Custom };

/// User-supplied weight sequence. `term(n, r)` must be non-negative and
/// continuous in r on [0,1) with a locally uniformly convergent sum.
/// Closed-form hooks are optional; absent ones fall back to certified
/// series truncation with a geometric-ratio tail estimate.
struct CustomPsi {
  std::string name;
  std::function<double(int n, double r)> term;
  std::function<double(int t, double r)> tail_sum;    // optional: sum_{k>=t} psi_k
  std::function<double(double r)> square_sum;         // optional: sum n psi_n^2
};

/// A weight sequence {psi_n(r)} on [0,1) together with the aggregate sums the
/// radius functionals need. Built-ins:
///   Geometric       psi_n = r^n
///   HarmonicWeight  psi_0 = 1, psi_n = r^n / n
///   ZetaWeight      psi_0 = 1, psi_n = r^n / n^2
///   Hypergeometric  psi_n = gamma_n r^n
/// Descriptors are immutable and all queries are pure.
class PsiFamily {
 public:
  static PsiFamily geometric();
  static PsiFamily harmonic_weight();
  static PsiFamily zeta_weight();
  static PsiFamily hypergeometric(const HypergeometricParams& params);
  static PsiFamily custom(CustomPsi spec);

  /// Parses "geometric" | "harmonic" | "zeta2" | "hyp:a,b,c".
  static PsiFamily from_id(std::string_view id);

  PsiKind kind() const { return kind_; }
  const std::string& id() const { return id_; }
  const HypergeometricParams* hyp() const { return hyp_ ? &*hyp_ : nullptr; }

  /// psi_n(r).
  double psi(int n, double r) const;

  /// Tail sum Psi_t(r) = sum_{k>=t} psi_k(r), t >= 1. Absolute error <= 1e-13.
  double sum_from(int t, double r) const;

  /// sum_{n>=1} n psi_n(r)^2. Absolute error <= 1e-13.
  double weighted_square_sum(double r) const;

  /// sum_{n>=t} n psi_n(r)^2, t >= 1.
  double weighted_square_sum_from(int t, double r) const;

  /// sum_{k>=t} k psi_k(r), t >= 1.
  double weighted_linear_sum_from(int t, double r) const;

  /// True iff psi_{n+1}(r) <= psi_n(r) + 1e-15 for 1 <= n < n_max. For the
  /// hypergeometric family the termwise condition
  /// (a+n)(b+n) r - (c+n)(1+n) <= 0 is required as well, for 0 <= n < n_max.
  bool is_decreasing_at(double r, int n_max) const;

 private:
  PsiFamily(PsiKind kind, std::string id);

  double certified_tail(int first, double r,
                        const std::function<double(int)>& weight) const;

  PsiKind kind_;
  std::string id_;
  std::optional<HypergeometricParams> hyp_;
  CustomPsi custom_;
};

/// Dense evaluation of a family at one radius: psi[n] for n = 0..n_max and
/// tail[t] = Psi_t for t = 1..n_max+1. Coefficient sweeps index these arrays
/// instead of issuing one query per term.
struct PsiTable {
  double r = 0.0;
  std::vector<double> psi;
  std::vector<double> tail;

  PsiTable(const PsiFamily& family, double r, int n_max);
};

}  // namespace bohr
