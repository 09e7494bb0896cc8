#include "teurkit/fisher.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace teurkit {

Eigen::Matrix2cd Qgt::full() const {
  Eigen::Matrix2cd m = re.cast<Complex>();
  m(0, 1) += Complex(0, q);
  m(1, 0) += Complex(0, -q);
  return m;
}

void FinitePOVM::validate(int dim, double tol) const {
  if (elements.empty()) throw Error("povm: no elements");
  CMat sum = CMat::Zero(dim, dim);
  for (std::size_t x = 0; x < elements.size(); ++x) {
    const CMat& m = elements[x];
    const std::string tag = "povm element " + std::to_string(x);
    if (m.rows() != dim || m.cols() != dim) throw Error(tag + ": wrong dimension");
    if (!m.allFinite()) throw Error(tag + ": non-finite entries");
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > tol * scale)
      throw NonHermitianInput(tag + ": not Hermitian");
    Eigen::SelfAdjointEigenSolver<CMat> solver(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -tol * scale)
      throw NotPSD(tag + ": negative eigenvalue");
    sum += m;
  }
  if ((sum - CMat::Identity(dim, dim)).cwiseAbs().maxCoeff() > tol)
    throw Error("povm: elements do not sum to identity");
}

CMat sld(const Eigen::Ref<const CMat>& rho, const Eigen::Ref<const CMat>& drho,
         const SldOptions& opt) {
  if (rho.rows() != drho.rows() || rho.cols() != drho.cols())
    throw Error("sld: rho and drho shapes differ");
  if (!is_hermitian(drho, 1e-8)) throw NonHermitianInput("sld: drho is not Hermitian");

  HermitianEig eig = eig_hermitian(rho);
  const double p_max = eig.values.maxCoeff();
  if (p_max <= 0) throw NotPSD("sld: rho has no positive eigenvalue");
  const double eps = opt.support_rel * p_max;

  const CMat dt = eig.vectors.adjoint() * (0.5 * (drho + drho.adjoint())) * eig.vectors;
  const Eigen::Index d = rho.rows();
  CMat lt = CMat::Zero(d, d);
  double kernel_weight2 = 0.0;
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index k = 0; k < d; ++k) {
      const double denom = eig.values(j) + eig.values(k);
      if (denom > eps)
        lt(j, k) = 2.0 * dt(j, k) / denom;
      else
        kernel_weight2 += std::norm(dt(j, k));
    }
  }
  if (std::sqrt(kernel_weight2) > opt.kernel_weight_tol)
    throw SupportMismatch("sld: drho has weight " + std::to_string(std::sqrt(kernel_weight2)) +
                          " outside the support of rho");
  CMat l = eig.vectors * lt * eig.vectors.adjoint();
  return 0.5 * (l + l.adjoint());
}

SldSet sld_set(const ParametricModel& model, const RVec& theta, const SldOptions& opt) {
  const CMat rho = model.rho(theta);
  SldSet out;
  out.L.reserve(model.n_params());
  for (int mu = 0; mu < model.n_params(); ++mu) out.L.push_back(sld(rho, model.drho(theta, mu), opt));
  return out;
}

RMat qfim(const Eigen::Ref<const CMat>& rho, const SldSet& slds) {
  const int d = static_cast<int>(slds.L.size());
  if (d == 0) throw Error("qfim: empty SLD set");
  RMat f(d, d);
  for (int mu = 0; mu < d; ++mu) {
    for (int nu = mu; nu < d; ++nu) {
      const Complex t = (rho * (slds.L[mu] * slds.L[nu] + slds.L[nu] * slds.L[mu])).trace();
      f(mu, nu) = 0.5 * t.real();
      f(nu, mu) = f(mu, nu);
    }
  }
  return f;
}

Qgt qgt(const PureStateModel& model, const RVec& theta) {
  if (model.n_params() != 2) throw Error("qgt: model must have exactly 2 parameters");
  const CVec psi = model.psi(theta);
  const CVec d1 = model.dpsi(theta, 0);
  const CVec d2 = model.dpsi(theta, 1);

  Eigen::Matrix2cd q;
  const CVec ds[2] = {d1, d2};
  for (int mu = 0; mu < 2; ++mu)
    for (int nu = 0; nu < 2; ++nu)
      q(mu, nu) = ds[mu].dot(ds[nu]) - ds[mu].dot(psi) * psi.dot(ds[nu]);

  const Eigen::Matrix2cd qh = 0.5 * (q + q.adjoint());
  Qgt out;
  out.re = qh.real();
  out.q = qh(0, 1).imag();
  return out;
}

double sandwiched_commutator_norm(const Eigen::Ref<const CMat>& rho, const CMat& l1,
                                  const CMat& l2) {
  const CMat s = sqrt_psd(rho);
  return schatten1(s * (l1 * l2 - l2 * l1) * s);
}

namespace {

const Mat2& checked_qfim2(const Mat2& f) {
  if (!f.allFinite()) throw Error("qfim matrix has non-finite entries");
  return f;
}

}  // namespace

double incompat_gamma_raw(const Eigen::Ref<const CMat>& rho, const SldSet& slds,
                          const Mat2& qfim_mat) {
  if (slds.L.size() != 2) throw Error("incompat_gamma: need exactly 2 SLDs");
  checked_qfim2(qfim_mat);
  const double det = qfim_mat.determinant();
  if (det <= 1e-12)
    throw SingularQfim("incompat_gamma: det F = " + std::to_string(det));
  const double norm = sandwiched_commutator_norm(rho, slds.L[0], slds.L[1]);
  return norm * norm / (4.0 * det);
}

double incompat_gamma(const Eigen::Ref<const CMat>& rho, const SldSet& slds,
                      const Mat2& qfim_mat) {
  return std::clamp(incompat_gamma_raw(rho, slds, qfim_mat), 0.0, 1.0);
}

double incompat_c(const Eigen::Ref<const CMat>& rho, const SldSet& slds, const Mat2& qfim_mat) {
  if (slds.L.size() != 2) throw Error("incompat_c: need exactly 2 SLDs");
  checked_qfim2(qfim_mat);
  if (qfim_mat(0, 0) <= 0 || qfim_mat(1, 1) <= 0)
    throw SingularQfim("incompat_c: diagonal QFIM entry is not positive");
  const double norm = sandwiched_commutator_norm(rho, slds.L[0], slds.L[1]);
  return std::clamp(norm / (2.0 * std::sqrt(qfim_mat(0, 0) * qfim_mat(1, 1))), 0.0, 1.0);
}

RMat cfim(const ParametricModel& model, const FinitePOVM& povm, const RVec& theta,
          double eps_prob, double deriv_tol) {
  povm.validate(model.dim());
  const CMat rho = model.rho(theta);
  const int d = model.n_params();
  std::vector<CMat> drho(d);
  for (int mu = 0; mu < d; ++mu) drho[mu] = model.drho(theta, mu);

  RMat f = RMat::Zero(d, d);
  for (std::size_t x = 0; x < povm.elements.size(); ++x) {
    const CMat& m = povm.elements[x];
    const double p = (rho * m).trace().real();
    RVec dp(d);
    for (int mu = 0; mu < d; ++mu) dp(mu) = (drho[mu] * m).trace().real();
    if (p < eps_prob) {
      if (dp.cwiseAbs().maxCoeff() >= deriv_tol)
        throw ZeroProbabilityDerivative("cfim: outcome " + std::to_string(x) +
                                        " has vanishing probability but non-vanishing derivative");
      continue;
    }
    f += (dp * dp.transpose()) / p;
  }
  return f;
}

}  // namespace teurkit
