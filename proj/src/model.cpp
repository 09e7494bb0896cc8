#include "teurkit/model.hpp"

#include <cmath>
#include <memory>
#include <string>
#include <utility>

namespace teurkit {

namespace {

void require_theta(const RVec& theta, int n_params) {
  if (theta.size() != n_params)
    throw ModelEvaluationError("theta has " + std::to_string(theta.size()) +
                               " entries, model expects " + std::to_string(n_params));
  if (!theta.allFinite()) throw ModelEvaluationError("theta has non-finite entries");
}

void require_mu(int mu, int n_params) {
  if (mu < 0 || mu >= n_params)
    throw ModelEvaluationError("parameter index " + std::to_string(mu) + " out of range");
}

CMat validated_rho(const CMat& m, int dim) {
  if (m.rows() != dim || m.cols() != dim)
    throw ModelEvaluationError("state has wrong dimension");
  if (!m.allFinite()) throw ModelEvaluationError("state has non-finite entries");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-8 * scale)
    throw ModelEvaluationError("state is not Hermitian");
  CMat rho = 0.5 * (m + m.adjoint());
  const Complex tr = rho.trace();
  if (std::abs(tr - Complex(1.0)) > 1e-9)
    throw ModelEvaluationError("state trace deviates from 1 by " +
                               std::to_string(std::abs(tr - Complex(1.0))));
  Eigen::SelfAdjointEigenSolver<CMat> solver(rho, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw ModelEvaluationError("state eigenvalue check failed to converge");
  const double lam_min = solver.eigenvalues().minCoeff();
  if (lam_min < -1e-9)
    throw ModelEvaluationError("state has negative eigenvalue " + std::to_string(lam_min));
  return rho;
}

CMat checked_traceless(CMat g, double tol) {
  g = 0.5 * (g + g.adjoint()).eval();
  const double tr = std::abs(g.trace());
  if (tr > tol * std::max(1.0, g.cwiseAbs().maxCoeff()))
    throw ModelEvaluationError("state derivative has trace " + std::to_string(tr));
  return g;
}

}  // namespace

ParametricModel ParametricModel::finite_difference(int dim, int n_params, StateFn state,
                                                   double step) {
  if (dim < 1 || n_params < 1 || step <= 0) throw Error("finite_difference: bad model shape");
  ParametricModel m;
  m.dim_ = dim;
  m.n_params_ = n_params;
  m.state_ = std::move(state);
  m.step_ = step;
  m.trace_tol_ = 1e-7;
  return m;
}

ParametricModel ParametricModel::analytic(int dim, int n_params, StateFn state, GradFn grad) {
  if (dim < 1 || n_params < 1) throw Error("analytic: bad model shape");
  ParametricModel m;
  m.dim_ = dim;
  m.n_params_ = n_params;
  m.state_ = std::move(state);
  m.grad_ = std::move(grad);
  m.trace_tol_ = 1e-10;
  return m;
}

CMat ParametricModel::rho(const RVec& theta) const {
  require_theta(theta, n_params_);
  return validated_rho(state_(theta), dim_);
}

CMat ParametricModel::drho(const RVec& theta, int mu) const {
  require_theta(theta, n_params_);
  require_mu(mu, n_params_);
  if (grad_) return checked_traceless(grad_(theta, mu), trace_tol_);
  RVec tp = theta, tm = theta;
  tp(mu) += step_;
  tm(mu) -= step_;
  const CMat diff = (rho(tp) - rho(tm)) / (2.0 * step_);
  return checked_traceless(diff, trace_tol_);
}

PureStateModel PureStateModel::finite_difference(int dim, int n_params, StateFn state,
                                                 double step) {
  if (dim < 1 || n_params < 1 || step <= 0) throw Error("finite_difference: bad model shape");
  PureStateModel m;
  m.dim_ = dim;
  m.n_params_ = n_params;
  m.state_ = std::move(state);
  m.step_ = step;
  return m;
}

PureStateModel PureStateModel::analytic(int dim, int n_params, StateFn state, GradFn grad) {
  if (dim < 1 || n_params < 1) throw Error("analytic: bad model shape");
  PureStateModel m;
  m.dim_ = dim;
  m.n_params_ = n_params;
  m.state_ = std::move(state);
  m.grad_ = std::move(grad);
  return m;
}

CVec PureStateModel::psi(const RVec& theta) const {
  require_theta(theta, n_params_);
  CVec v = state_(theta);
  if (v.size() != dim_) throw ModelEvaluationError("state has wrong dimension");
  if (!v.allFinite()) throw ModelEvaluationError("state has non-finite entries");
  if (std::abs(v.norm() - 1.0) > 1e-10)
    throw ModelEvaluationError("state norm deviates from 1 by " +
                               std::to_string(std::abs(v.norm() - 1.0)));
  return v;
}

CVec PureStateModel::dpsi(const RVec& theta, int mu) const {
  require_theta(theta, n_params_);
  require_mu(mu, n_params_);
  if (grad_) {
    CVec g = grad_(theta, mu);
    if (g.size() != dim_ || !g.allFinite())
      throw ModelEvaluationError("state derivative is malformed");
    return g;
  }
  RVec tp = theta, tm = theta;
  tp(mu) += step_;
  tm(mu) -= step_;
  return (psi(tp) - psi(tm)) / (2.0 * step_);
}

ParametricModel PureStateModel::to_density() const {
  PureStateModel self = *this;
  ParametricModel m;
  m.dim_ = dim_;
  m.n_params_ = n_params_;
  m.step_ = step_;
  m.trace_tol_ = analytic_derivatives() ? 1e-10 : 1e-7;
  m.state_ = [self](const RVec& th) -> CMat {
    CVec p = self.psi(th);
    return p * p.adjoint();
  };
  m.grad_ = [self](const RVec& th, int mu) -> CMat {
    CVec p = self.psi(th);
    CVec dp = self.dpsi(th, mu);
    return dp * p.adjoint() + p * dp.adjoint();
  };
  return m;
}

CMat fock_annihilation(int dim) {
  if (dim < 1) throw Error("fock_annihilation: dim must be >= 1");
  CMat a = CMat::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

namespace {

// exp(X) for anti-Hermitian X, through the spectrum of the Hermitian -iX.
CMat unitary_exp(const CMat& x) {
  HermitianEig eig = eig_hermitian(Complex(0, -1) * x, 1e-9);
  CVec phases(eig.values.size());
  for (Eigen::Index k = 0; k < phases.size(); ++k)
    phases(k) = std::polar(1.0, eig.values(k));
  return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

}  // namespace

CMat fock_displacement(Complex alpha, int dim) {
  const CMat a = fock_annihilation(dim);
  return unitary_exp(alpha * a.adjoint() - std::conj(alpha) * a);
}

CMat fock_squeeze(Complex zeta, int dim) {
  const CMat a = fock_annihilation(dim);
  const CMat a2 = a * a;
  return unitary_exp(0.5 * (std::conj(zeta) * a2 - zeta * a2.adjoint()));
}

namespace {

struct FockWorkspace {
  FockTruncation trunc;
  int pad = 0;
  CMat a;        // annihilation operator in the padded space
  CVec sq_vac;   // S(zeta)|0> in the padded space

  FockWorkspace(Complex zeta, const FockTruncation& t) : trunc(t) {
    if (t.n_max < 1) throw TruncationError("n_max must be >= 1");
    if (!(t.leakage_tol > 0)) throw TruncationError("leakage_tol must be positive");
    if (t.n_max <= 60 && std::abs(zeta) > 1.5)
      throw TruncationError("|zeta| > 1.5 unreliable at n_max <= 60; raise n_max");
    // Padding keeps boundary-truncation error of the padded-space exponentials
    // well below the leakage tolerances we enforce (measured: ~3e-12 head
    // error at n_max = 60, r = 1 with 48 levels of padding).
    pad = std::max(48, t.n_max / 2);
    const int wdim = t.n_max + 1 + pad;
    a = fock_annihilation(wdim);
    CVec vac = CVec::Zero(wdim);
    vac(0) = 1.0;
    const CMat a2 = a * a;
    sq_vac = unitary_exp(0.5 * (std::conj(zeta) * a2 - zeta * a2.adjoint())) * vac;
  }

  CVec displaced(Complex alpha) const {
    if (trunc.n_max <= 60 && std::abs(alpha) > 3.0)
      throw TruncationError("|alpha| > 3 unreliable at n_max <= 60; raise n_max");
    const CVec full =
        unitary_exp(alpha * a.adjoint() - std::conj(alpha) * a) * sq_vac;
    CVec head = full.head(trunc.n_max + 1);
    const double leak = 1.0 - head.squaredNorm();
    if (leak > trunc.leakage_tol)
      throw TruncationError("truncation leakage " + std::to_string(leak) + " exceeds tolerance " +
                            std::to_string(trunc.leakage_tol));
    return head / head.norm();
  }
};

}  // namespace

CVec displaced_squeezed_state(Complex alpha, Complex zeta, const FockTruncation& trunc) {
  return FockWorkspace(zeta, trunc).displaced(alpha);
}

PureStateModel pure_qubit_bloch() {
  auto state = [](const RVec& th) -> CVec {
    CVec v(2);
    v(0) = std::cos(0.5 * th(0));
    v(1) = std::polar(1.0, th(1)) * std::sin(0.5 * th(0));
    return v;
  };
  auto grad = [](const RVec& th, int mu) -> CVec {
    CVec g(2);
    if (mu == 0) {
      g(0) = -0.5 * std::sin(0.5 * th(0));
      g(1) = std::polar(0.5, th(1)) * std::cos(0.5 * th(0));
    } else {
      g(0) = 0.0;
      g(1) = Complex(0, 1) * std::polar(1.0, th(1)) * std::sin(0.5 * th(0));
    }
    return g;
  };
  return PureStateModel::analytic(2, 2, state, grad);
}

ParametricModel mixed_qubit_bloch() {
  auto state = [](const RVec& th) -> CMat {
    CMat rho(2, 2);
    rho(0, 0) = 0.5;
    rho(1, 1) = 0.5;
    rho(0, 1) = 0.5 * Complex(th(0), -th(1));
    rho(1, 0) = 0.5 * Complex(th(0), th(1));
    return rho;
  };
  auto grad = [](const RVec&, int mu) -> CMat {
    CMat g = CMat::Zero(2, 2);
    if (mu == 0) {
      g(0, 1) = 0.5;
      g(1, 0) = 0.5;
    } else {
      g(0, 1) = Complex(0, -0.5);
      g(1, 0) = Complex(0, 0.5);
    }
    return g;
  };
  return ParametricModel::analytic(2, 2, state, grad);
}

PureStateModel displacement_estimation(double r, double phi, const FockTruncation& trunc) {
  auto ws = std::make_shared<FockWorkspace>(std::polar(r, phi), trunc);
  auto state = [ws](const RVec& th) -> CVec { return ws->displaced(Complex(th(0), th(1))); };
  return PureStateModel::finite_difference(trunc.n_max + 1, 2, state);
}

std::vector<std::string> builtin_model_names() {
  return {"pure_qubit_bloch", "mixed_qubit_bloch", "displacement_estimation"};
}

BuiltModel make_model(const std::string& name, const nlohmann::json& params) {
  if (name == "pure_qubit_bloch") {
    PureStateModel pure = pure_qubit_bloch();
    return {pure.to_density(), pure};
  }
  if (name == "mixed_qubit_bloch") return {mixed_qubit_bloch(), std::nullopt};
  if (name == "displacement_estimation") {
    FockTruncation trunc;
    double r = 0.0, phi = 0.0;
    if (params.is_object()) {
      r = params.value("r", 0.0);
      phi = params.value("phi", 0.0);
      trunc.n_max = params.value("n_max", trunc.n_max);
      trunc.leakage_tol = params.value("leakage_tol", trunc.leakage_tol);
    } else if (!params.is_null()) {
      throw UnknownModel("model params must be an object");
    }
    PureStateModel pure = displacement_estimation(r, phi, trunc);
    return {pure.to_density(), pure};
  }
  throw UnknownModel("unknown model '" + name + "'");
}

}  // namespace teurkit
