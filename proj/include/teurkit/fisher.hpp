#pragma once

#include <vector>

#include "teurkit/linalg.hpp"
#include "teurkit/model.hpp"

namespace teurkit {

struct SldSet {
  std::vector<CMat> L;  // one symmetric logarithmic derivative per parameter
};

// Quantum geometric tensor of a two-parameter pure family. The full tensor is
// re + i * [[0, q], [-q, 0]]; re is the quantum metric, q the Berry curvature
// density (Im Q_12).
struct Qgt {
  Mat2 re = Mat2::Zero();
  double q = 0.0;
  Eigen::Matrix2cd full() const;
};

struct FinitePOVM {
  std::vector<CMat> elements;
  // Each element Hermitian PSD, all same dimension `dim`, summing to identity
  // within tol (max-abs). Throws on violation.
  void validate(int dim, double tol = 1e-9) const;
};

struct SldOptions {
  // Eigenvalue support threshold, relative to the largest eigenvalue of rho.
  double support_rel = 1e-10;
  // Frobenius weight of drho allowed on the kernel x kernel block before the
  // derivative is declared unreachable (SupportMismatch).
  double kernel_weight_tol = 1e-6;
};

// Solve drho = (L rho + rho L)/2 on the support of rho. Matrix elements of L
// between two kernel directions are set to zero; if drho carries significant
// weight there, no SLD exists and SupportMismatch is thrown.
CMat sld(const Eigen::Ref<const CMat>& rho, const Eigen::Ref<const CMat>& drho,
         const SldOptions& opt = {});

SldSet sld_set(const ParametricModel& model, const RVec& theta, const SldOptions& opt = {});

// F(mu, nu) = Re tr(rho L_mu L_nu); symmetric PSD by construction.
RMat qfim(const Eigen::Ref<const CMat>& rho, const SldSet& slds);

// QGT via state derivatives (gauge-invariant form). Model must have 2 parameters.
Qgt qgt(const PureStateModel& model, const RVec& theta);

// Schatten-1 norm of sqrt(rho) [L1, L2] sqrt(rho).
double sandwiched_commutator_norm(const Eigen::Ref<const CMat>& rho, const CMat& l1,
                                  const CMat& l2);

// Incompatibility factor: ||sqrt(rho)[L1,L2]sqrt(rho)||_1^2 / (4 det F).
// The raw variant reports the unclamped value; incompat_gamma clamps numerical
// excursions into [0, 1]. Throws SingularQfim when det F <= 1e-12.
double incompat_gamma_raw(const Eigen::Ref<const CMat>& rho, const SldSet& slds,
                          const Mat2& qfim_mat);
double incompat_gamma(const Eigen::Ref<const CMat>& rho, const SldSet& slds,
                      const Mat2& qfim_mat);

// c = ||sqrt(rho)[L1,L2]sqrt(rho)||_1 / (2 sqrt(F11 F22)), clamped into [0, 1].
double incompat_c(const Eigen::Ref<const CMat>& rho, const SldSet& slds, const Mat2& qfim_mat);

// Classical Fisher information of the POVM's outcome distribution. Outcomes
// with p < eps_prob are skipped when their probability derivatives also vanish
// (|dp| < deriv_tol); otherwise ZeroProbabilityDerivative is thrown, since the
// Fisher information diverges there.
RMat cfim(const ParametricModel& model, const FinitePOVM& povm, const RVec& theta,
          double eps_prob = 1e-12, double deriv_tol = 1e-9);

}  // namespace teurkit
