#pragma once

#include <string>
#include <vector>

#include "teurkit/linalg.hpp"

namespace teurkit {

struct ChainLink {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool satisfied = false;
};

struct TradeoffReport {
  double teur_lhs = 0.0;
  bool teur_satisfied = false;
  double irtr_lhs = 0.0;
  double irtr_rhs = 0.0;
  double gamma = 0.0;
  Vec2 regret = Vec2::Zero();  // per-parameter information regret
  double c = 0.0;              // normalized incompatibility coefficient
  Mat2 G = Mat2::Zero();       // attained-information ratio F * F_Q^{-1}
  std::vector<ChainLink> chain;
};

// Left-hand side of the estimation-error / quantum-information tradeoff:
// sqrt(det(C F - I)) + sqrt((1 - gamma) det(C F)), where C is the scaled
// covariance (n * E) and F the QFIM. The bound demands lhs >= 1. C must sit on
// or above the quantum limit: the eigenvalues of sym(F^{1/2} C F^{1/2}) - I
// may dip below zero only by det_clamp * scale (then they count as zero);
// further below throws NegativeDeterminant.
double teur_lhs(const Mat2& scaled_cov, const Mat2& qfim, double gamma,
                double det_clamp = 1e-10);

// Diagonal-QFIM form of the same bound's critical quantity:
// (C11 - 1/F11)(C22 - 1/F22) - C12^2. Non-negative iff the extremal version
// of the tradeoff holds. Throws NonDiagonalQfim for non-diagonal input.
double teur_extremal_check(const Mat2& scaled_cov, const Mat2& qfim_diag);

struct IrtrTerms {
  double lhs = 0.0;      // r1^2 + r2^2 + 2 sqrt(1 - c^2) r1 r2
  double rhs = 0.0;      // c^2
  double regret1 = 0.0;  // r_mu = sqrt(1 - F_mu_mu / FQ_mu_mu)
  double regret2 = 0.0;
};

// Information-regret tradeoff for one measurement: regrets cannot both vanish
// when c > 0. F_mu_mu may exceed FQ_mu_mu by at most 1e-6 (RegretDomainError
// beyond); small excursions are clamped to zero regret.
IrtrTerms irtr_check(const Mat2& cfim, const Mat2& qfim, double c);

// Reparametrization J with J^T F_Q J = I and J^T F J diagonal, entries in
// [0, 1] ascending. O is the rotation diagonalizing the whitened CFIM with a
// deterministic sign convention (each column's largest-magnitude entry
// positive); J = F_Q^{-1/2} O.
struct RegularParametrization {
  Mat2 J = Mat2::Zero();
  Mat2 O = Mat2::Identity();
  Mat2 F_prime = Mat2::Zero();
};
RegularParametrization regular_parametrization(const Mat2& cfim, const Mat2& qfim);

// The inequality ladder connecting the per-measurement regret bound to the
// covariance bound, each step reported as lhs >= rhs (trace_det_identity is an
// equality, |lhs - rhs| <= 1e-12). Requires invertible cfim for the
// determinant-level links.
std::vector<ChainLink> derivation_chain(const Mat2& cfim, const Mat2& qfim, double gamma,
                                        double tol_ineq = 1e-9);

// Bundle everything for one (covariance, measurement, model) triple.
// scaled_cov = n * E. teur_satisfied uses tol_ineq: lhs >= 1 - tol_ineq.
TradeoffReport tradeoff_report(const Mat2& scaled_cov, const Mat2& cfim, const Mat2& qfim,
                               double gamma, double tol_ineq = 1e-9);

}  // namespace teurkit
