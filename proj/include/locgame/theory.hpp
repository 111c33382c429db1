#pragma once

#include <optional>

namespace locgame {

// Derived scale parameters for the dense random-graph regime. n is a real
// number so the windows can be evaluated on grids far beyond feasible
// simulation sizes. All logarithms are natural; the bound ratios are
// base-independent anyway.
struct TheoryParams {
  double n = 0.0;
  double p = 0.0;
  double q = 0.0;      // 1 - p
  double rho = 0.0;    // p^2 + q^2, the per-probe signature-collision rate
  double eta = 0.0;    // ln(1/p) / ln n
  double omega = 0.0;  // slowly growing auxiliary value, default ln ln n
  double c = 0.0;      // default slack constant, see derive_params
};

// omega_choice defaults to ln ln n and must lie in (0, ln n). The default c
// is 0.9 * min(c_max, 1); when c_max(n, p) <= 0 (tiny n) it falls back to
// 0.9 since the window formulas below remain evaluable for any c in (0, 1].
TheoryParams derive_params(double n, double p,
                           std::optional<double> omega_choice = std::nullopt);

// Largest admissible slack constant at finite scale:
// min( ((ln n - 3 ln ln n) / ln(1/p) - 1) / 2 , 1 ).
// Can be <= 0 for small n; callers treat it as advisory.
double c_max(double n, double p);

struct BoundWindow {
  double lower = 0.0;       // localization-number lower bound (clamped at 0)
  double upper = 0.0;       // localization-number upper bound
  double beta_lower = 0.0;  // one-round (resolving-set) window
  double beta_upper = 0.0;
  bool lower_clamped = false;  // true when the lower factor was non-positive
};

// Two-sided window for the localization number:
//   lower = (1 - 2 eta - 4 ln ln n / ln n) * 2 ln n / ln(1/rho)
//   upper = (1 - c eta) * 2 ln n / ln(1/rho)
// plus the one-round window [2 ln(np), 2 ln n] / ln(1/rho).
// A non-positive lower factor is reported as 0 with lower_clamped set.
// Requires c > 0; values above c_max are accepted (the formula stays
// meaningful at finite n even where the asymptotic guarantee lapses).
BoundWindow zeta_window(const TheoryParams& tp, double c);

// exp(-min(mu^2 / (8 Delta), mu / 2, mu / (6 delta))): upper bound on the
// probability that a sum of weakly dependent indicators is zero.
double suen_bound(double mu, double big_delta, double small_delta);

struct SuenQuantities {
  double mu = 0.0;
  double big_delta = 0.0;
  double small_delta = 0.0;
  double bound = 0.0;
};

inline SuenQuantities make_suen(double mu, double big_delta, double small_delta) {
  return {mu, big_delta, small_delta, suen_bound(mu, big_delta, small_delta)};
}

// Lower-bound certificate quantities at probe-set size
// k = 2 (1 - eps) ln n / ln(1/rho), eps = 2 ln(ln^2 n / p) / ln n, for the
// count of same-signature pairs inside one neighborhood:
//   mu_lower        = (p^2/4) n^{2 eps}   (mean count, from below)
//   delta_upper     = (p^3/2) n^{3 eps}   (sum over dependent pairs)
//   pair_corr_upper = 2 p^2 n^{-1+2 eps}  (max single correlation)
//   suen_exponent   = -(1/64) p n^{eps}   (P(count = 0) <= e^{exponent})
//   union_exponent  = (k+1) ln n - (1/64) p n^{eps}
// Valid for ln^2 n / sqrt(n) < p <= 1 - 1/ln n.
struct CertificateQuantities {
  double epsilon = 0.0;
  double k = 0.0;
  double mu_lower = 0.0;
  double delta_upper = 0.0;
  double pair_corr_upper = 0.0;
  double suen_exponent = 0.0;
  double union_exponent = 0.0;
};

CertificateQuantities certificate_quantities(double n, double p);

// Checks ln(p^3 + q^3) / ln(p^2 + q^2) >= 3/2: three probes distinguish at
// least as sharply as 1.5 exponent units of two-way collision. Equivalent to
// (p^3+q^3)^2 <= (p^2+q^2)^3, i.e. pq <= 3/8, which holds for all p.
struct CubicCollisionCheck {
  bool holds = false;
  double ratio = 0.0;
};
CubicCollisionCheck cubic_collision_check(double p);

// Candidate-set growth cap after i probe rounds of the two-phase strategy:
// 2 (omega^{1/2} p)^{i-1} n^{(i-1) c eta + 1}, with eta = ln(1/p)/ln n.
double candidate_growth_bound(int i, double n, double p, double c, double omega);

// Residual factor after ell rounds:
// omega^{ell-1} exp(-2 (ell - 2 - c (ell - 1)) ln(1/p)); values < 1 signal
// that the recursion has collapsed the candidate set.
double termination_factor(int ell, double p, double c, double omega);

// Localization-number window for p = n^{-alpha}:
//   lower = (1 - 2 alpha) n^alpha ln n
//   upper = (1 - alpha) n^alpha ln n      for alpha < 1/3
//           ((1 + alpha)/2) n^alpha ln n  otherwise
// Valid for 0 < alpha < 1/2.
struct PowerLawWindow {
  double lower = 0.0;
  double upper = 0.0;
};
PowerLawWindow power_law_window(double alpha, double n);

}  // namespace locgame
