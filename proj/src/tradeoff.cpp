#include "teurkit/tradeoff.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace teurkit {

namespace {

Mat2 require_sym2(const Mat2& m, const char* what) {
  if (!m.allFinite()) throw Error(std::string(what) + ": non-finite entries");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if (std::abs(m(0, 1) - m(1, 0)) > 1e-9 * scale)
    throw Error(std::string(what) + ": matrix is not symmetric");
  return 0.5 * (m + m.transpose());
}

Mat2 checked_spd_qfim(const Mat2& m, const char* what) {
  Mat2 f = require_sym2(m, what);
  if (f(0, 0) <= 0 || f.determinant() <= 1e-12)
    throw SingularQfim(std::string(what) + ": QFIM is not positive definite");
  return f;
}

double checked_gamma(double gamma, const char* what) {
  if (!(gamma >= -1e-9 && gamma <= 1.0 + 1e-9))
    throw Error(std::string(what) + ": gamma " + std::to_string(gamma) + " outside [0, 1]");
  return std::clamp(gamma, 0.0, 1.0);
}

}  // namespace

double teur_lhs(const Mat2& scaled_cov, const Mat2& qfim, double gamma, double det_clamp) {
  const Mat2 c = require_sym2(scaled_cov, "teur_lhs");
  const Mat2 f = checked_spd_qfim(qfim, "teur_lhs");
  const double g = checked_gamma(gamma, "teur_lhs");

  const Mat2 s = sqrt_spd2(f);
  Vec2 lam;
  Mat2 frame;
  eig_sym2(s * c * s, lam, frame);  // spectrum of C*F, symmetrized

  const double scale = std::max(1.0, std::abs(lam(1)));
  if (lam(0) - 1.0 < -det_clamp * scale)
    throw NegativeDeterminant("teur_lhs: covariance sits below the quantum limit (eigenvalue " +
                              std::to_string(lam(0)) + " of C F)");

  const double d1 = std::max(0.0, lam(0) - 1.0) * std::max(0.0, lam(1) - 1.0);
  const double d2 = std::max(0.0, lam(0) * lam(1));
  return std::sqrt(d1) + std::sqrt((1.0 - g) * d2);
}

double teur_extremal_check(const Mat2& scaled_cov, const Mat2& qfim_diag) {
  const Mat2 c = require_sym2(scaled_cov, "teur_extremal_check");
  const Mat2 f = require_sym2(qfim_diag, "teur_extremal_check");
  const double scale = std::max({1.0, std::abs(f(0, 0)), std::abs(f(1, 1))});
  if (std::abs(f(0, 1)) > 1e-12 * scale)
    throw NonDiagonalQfim("teur_extremal_check: QFIM has off-diagonal weight " +
                          std::to_string(f(0, 1)));
  if (f(0, 0) <= 0 || f(1, 1) <= 0)
    throw SingularQfim("teur_extremal_check: QFIM diagonal is not positive");
  return (c(0, 0) - 1.0 / f(0, 0)) * (c(1, 1) - 1.0 / f(1, 1)) - c(0, 1) * c(0, 1);
}

IrtrTerms irtr_check(const Mat2& cfim, const Mat2& qfim, double c) {
  const Mat2 f = require_sym2(cfim, "irtr_check");
  const Mat2 fq = require_sym2(qfim, "irtr_check");
  if (!(c >= -1e-9 && c <= 1.0 + 1e-9))
    throw Error("irtr_check: c " + std::to_string(c) + " outside [0, 1]");
  const double cc = std::clamp(c, 0.0, 1.0);

  double regret[2];
  for (int mu = 0; mu < 2; ++mu) {
    const double fq_mu = fq(mu, mu);
    if (fq_mu <= 0) throw SingularQfim("irtr_check: QFIM diagonal is not positive");
    const double f_mu = std::max(0.0, f(mu, mu));
    if (f_mu > fq_mu + 1e-6)
      throw RegretDomainError("irtr_check: classical information " + std::to_string(f_mu) +
                              " exceeds quantum limit " + std::to_string(fq_mu));
    regret[mu] = std::sqrt(std::max(0.0, fq_mu - f_mu) / fq_mu);
  }

  IrtrTerms out;
  out.regret1 = regret[0];
  out.regret2 = regret[1];
  out.lhs = regret[0] * regret[0] + regret[1] * regret[1] +
            2.0 * std::sqrt(1.0 - cc * cc) * regret[0] * regret[1];
  out.rhs = cc * cc;
  return out;
}

RegularParametrization regular_parametrization(const Mat2& cfim, const Mat2& qfim) {
  const Mat2 f = require_sym2(cfim, "regular_parametrization");
  const Mat2 fq = checked_spd_qfim(qfim, "regular_parametrization");

  const Mat2 w = inv_sqrt_spd2(fq);
  Vec2 lam;
  Mat2 o;
  eig_sym2(w * f * w, lam, o);

  RegularParametrization out;
  out.O = o;
  out.J = w * o;
  out.F_prime = Mat2::Zero();
  out.F_prime(0, 0) = lam(0);
  out.F_prime(1, 1) = lam(1);
  return out;
}

std::vector<ChainLink> derivation_chain(const Mat2& cfim, const Mat2& qfim, double gamma,
                                        double tol_ineq) {
  const Mat2 f = require_sym2(cfim, "derivation_chain");
  const Mat2 fq = checked_spd_qfim(qfim, "derivation_chain");
  const double g = checked_gamma(gamma, "derivation_chain");

  const Mat2 ratio = f * inverse2(fq);
  const double tr_g = ratio.trace();
  const double det_g = ratio.determinant();
  const double det_complement = (Mat2::Identity() - ratio).determinant();
  // G is similar to a symmetric matrix, so its spectrum is real; F <= F_Q
  // requires it to stay within [0, 1].
  const double disc = std::max(0.0, tr_g * tr_g - 4.0 * det_g);
  const double lam_max = 0.5 * (tr_g + std::sqrt(disc));
  if (lam_max > 1.0 + 1e-9 * std::max(1.0, lam_max))
    throw RegretDomainError("derivation_chain: classical information exceeds the quantum limit");

  // 1 - tr G + det G, the complement determinant, clamped against roundoff.
  const double u = std::max(0.0, 1.0 - tr_g + det_g);
  const double root = 2.0 * std::sqrt((1.0 - g) * u);

  auto ge = [tol_ineq](double lhs, double rhs) { return lhs >= rhs - tol_ineq; };

  std::vector<ChainLink> chain;
  chain.push_back({"irtr_regular", 2.0 - tr_g + root, g, false});
  chain.push_back({"irtr_gamma", 2.0 - g + root, tr_g, false});

  const Mat2 f_inv = inverse2(f);
  const Mat2 fq_inv = inverse2(fq);
  const double lhs3 = std::sqrt((1.0 - g) * std::max(0.0, f_inv.determinant())) +
                      std::sqrt(std::max(0.0, (f_inv - fq_inv).determinant()));
  chain.push_back({"cfim_determinant_bound", lhs3, std::sqrt(fq_inv.determinant()), false});
  chain.push_back({"teur_at_cfim", teur_lhs(f_inv, fq, g), 1.0, false});

  for (auto& link : chain) link.satisfied = ge(link.lhs, link.rhs);

  ChainLink identity{"trace_det_identity", tr_g, 1.0 + det_g - det_complement, false};
  identity.satisfied = std::abs(identity.lhs - identity.rhs) <= 1e-12 * std::max(1.0, std::abs(tr_g));
  chain.push_back(identity);
  return chain;
}

TradeoffReport tradeoff_report(const Mat2& scaled_cov, const Mat2& cfim, const Mat2& qfim,
                               double gamma, double tol_ineq) {
  const Mat2 f = require_sym2(cfim, "tradeoff_report");
  const Mat2 fq = checked_spd_qfim(qfim, "tradeoff_report");
  const double g = checked_gamma(gamma, "tradeoff_report");

  TradeoffReport rep;
  rep.gamma = g;
  rep.teur_lhs = teur_lhs(scaled_cov, fq, g);
  rep.teur_satisfied = rep.teur_lhs >= 1.0 - tol_ineq;
  rep.c = std::sqrt(std::clamp(g * fq.determinant() / (fq(0, 0) * fq(1, 1)), 0.0, 1.0));
  const IrtrTerms terms = irtr_check(f, fq, rep.c);
  rep.irtr_lhs = terms.lhs;
  rep.irtr_rhs = terms.rhs;
  rep.regret = Vec2(terms.regret1, terms.regret2);
  rep.G = f * inverse2(fq);
  rep.chain = derivation_chain(f, fq, g, tol_ineq);
  return rep;
}

}  // namespace teurkit
