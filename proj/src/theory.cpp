#include "locgame/theory.hpp"

#include <algorithm>
#include <cmath>

#include "locgame/errors.hpp"

namespace locgame {

namespace {
void check_probability(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw ParameterError("p must lie strictly in (0,1)");
}
}  // namespace

double c_max(double n, double p) {
  check_probability(p);
  if (!(n > 1.0)) throw ParameterError("c_max: need n > 1");
  const double ln_n = std::log(n);
  const double expr = 0.5 * ((ln_n - 3.0 * std::log(ln_n)) / std::log(1.0 / p) - 1.0);
  return std::min(expr, 1.0);
}

TheoryParams derive_params(double n, double p, std::optional<double> omega_choice) {
  if (!(n >= 3.0)) throw ParameterError("derive_params: need n >= 3");
  check_probability(p);
  TheoryParams tp;
  tp.n = n;
  tp.p = p;
  tp.q = 1.0 - p;
  tp.rho = p * p + tp.q * tp.q;
  const double ln_n = std::log(n);
  tp.eta = std::log(1.0 / p) / ln_n;
  tp.omega = omega_choice.value_or(std::log(ln_n));
  if (!(tp.omega > 0.0 && tp.omega < ln_n))
    throw ParameterError("derive_params: omega must lie in (0, ln n)");
  const double cm = c_max(n, p);
  tp.c = cm > 0.0 ? 0.9 * std::min(cm, 1.0) : 0.9;
  return tp;
}

BoundWindow zeta_window(const TheoryParams& tp, double c) {
  if (!(c > 0.0)) throw ParameterError("zeta_window: c must be positive");
  const double ln_n = std::log(tp.n);
  const double scale = 2.0 * ln_n / std::log(1.0 / tp.rho);
  BoundWindow w;
  const double lower_factor = 1.0 - 2.0 * tp.eta - 4.0 * std::log(ln_n) / ln_n;
  if (lower_factor > 0.0) {
    w.lower = lower_factor * scale;
  } else {
    w.lower = 0.0;
    w.lower_clamped = true;
  }
  w.upper = (1.0 - c * tp.eta) * scale;
  w.beta_lower = 2.0 * std::log(tp.n * tp.p) / std::log(1.0 / tp.rho);
  w.beta_upper = scale;
  return w;
}

double suen_bound(double mu, double big_delta, double small_delta) {
  if (!(mu >= 0.0)) throw ParameterError("suen_bound: mu must be non-negative");
  if (!(big_delta > 0.0) || !(small_delta > 0.0))
    throw ParameterError("suen_bound: Delta and delta must be positive");
  const double e =
      std::min({mu * mu / (8.0 * big_delta), mu / 2.0, mu / (6.0 * small_delta)});
  return std::exp(-e);
}

CertificateQuantities certificate_quantities(double n, double p) {
  check_probability(p);
  if (!(n > 1.0)) throw ParameterError("certificate_quantities: need n > 1");
  const double ln_n = std::log(n);
  if (!(p > ln_n * ln_n / std::sqrt(n)))
    throw ParameterError("certificate_quantities: p below ln^2(n)/sqrt(n)");
  if (!(p <= 1.0 - 1.0 / ln_n))
    throw ParameterError("certificate_quantities: p above 1 - 1/ln n");

  const double q = 1.0 - p;
  const double rho = p * p + q * q;
  CertificateQuantities cq;
  cq.epsilon = 2.0 * std::log(ln_n * ln_n / p) / ln_n;
  cq.k = 2.0 * (1.0 - cq.epsilon) * ln_n / std::log(1.0 / rho);
  const double n_eps = std::exp(cq.epsilon * ln_n);
  cq.mu_lower = (p * p / 4.0) * n_eps * n_eps;
  cq.delta_upper = (p * p * p / 2.0) * n_eps * n_eps * n_eps;
  cq.pair_corr_upper = 2.0 * p * p * n_eps * n_eps / n;
  cq.suen_exponent = -p * n_eps / 64.0;
  cq.union_exponent = (cq.k + 1.0) * ln_n - p * n_eps / 64.0;
  return cq;
}

CubicCollisionCheck cubic_collision_check(double p) {
  check_probability(p);
  const double q = 1.0 - p;
  const double cubic = p * p * p + q * q * q;
  const double rho = p * p + q * q;
  CubicCollisionCheck r;
  r.holds = cubic * cubic <= rho * rho * rho;
  r.ratio = std::log(cubic) / std::log(rho);
  return r;
}

double candidate_growth_bound(int i, double n, double p, double c, double omega) {
  if (i < 1) throw ParameterError("candidate_growth_bound: need i >= 1");
  check_probability(p);
  if (!(n > 1.0)) throw ParameterError("candidate_growth_bound: need n > 1");
  const double eta = std::log(1.0 / p) / std::log(n);
  return 2.0 * std::pow(std::sqrt(omega) * p, i - 1) *
         std::pow(n, (i - 1) * c * eta + 1.0);
}

double termination_factor(int ell, double p, double c, double omega) {
  if (ell < 1) throw ParameterError("termination_factor: need ell >= 1");
  check_probability(p);
  return std::pow(omega, ell - 1) *
         std::exp(-2.0 * (ell - 2.0 - c * (ell - 1.0)) * std::log(1.0 / p));
}

PowerLawWindow power_law_window(double alpha, double n) {
  if (!(alpha > 0.0 && alpha < 0.5))
    throw ParameterError("power_law_window: alpha must lie in (0, 1/2)");
  if (!(n > 1.0)) throw ParameterError("power_law_window: need n > 1");
  const double scale = std::pow(n, alpha) * std::log(n);
  PowerLawWindow w;
  w.lower = (1.0 - 2.0 * alpha) * scale;
  w.upper = (alpha < 1.0 / 3.0 ? 1.0 - alpha : (1.0 + alpha) / 2.0) * scale;
  return w;
}

}  // namespace locgame
