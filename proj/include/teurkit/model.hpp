#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "teurkit/linalg.hpp"

namespace teurkit {

// Fock-space cutoff policy. Dimension is n_max + 1 (levels 0..n_max); a state
// builder measures how much weight escapes past n_max and refuses to silently
// truncate more than leakage_tol of it.
struct FockTruncation {
  int n_max = 60;
  double leakage_tol = 1e-6;
};

// Differentiable family theta -> rho_theta. Every evaluation is validated
// (Hermitian, unit trace, PSD within tolerance); derivatives come from a
// supplied gradient or central finite differences with absolute step `step`.
class ParametricModel {
 public:
  using StateFn = std::function<CMat(const RVec&)>;
  using GradFn = std::function<CMat(const RVec&, int)>;

  static ParametricModel finite_difference(int dim, int n_params, StateFn state,
                                           double step = 1e-5);
  static ParametricModel analytic(int dim, int n_params, StateFn state, GradFn grad);

  CMat rho(const RVec& theta) const;
  // Hermitized, checked traceless. mu indexes the parameter, 0-based.
  CMat drho(const RVec& theta, int mu) const;

  int dim() const { return dim_; }
  int n_params() const { return n_params_; }
  bool analytic_derivatives() const { return static_cast<bool>(grad_); }
  double fd_step() const { return step_; }

 private:
  ParametricModel() = default;
  friend class PureStateModel;

  int dim_ = 0;
  int n_params_ = 0;
  StateFn state_;
  GradFn grad_;
  double step_ = 1e-5;
  double trace_tol_ = 1e-7;
};

// Same idea for pure states |psi_theta>.
class PureStateModel {
 public:
  using StateFn = std::function<CVec(const RVec&)>;
  using GradFn = std::function<CVec(const RVec&, int)>;

  static PureStateModel finite_difference(int dim, int n_params, StateFn state,
                                          double step = 1e-5);
  static PureStateModel analytic(int dim, int n_params, StateFn state, GradFn grad);

  CVec psi(const RVec& theta) const;  // validated: unit norm within 1e-10
  CVec dpsi(const RVec& theta, int mu) const;

  // Density-matrix view: rho = |psi><psi|, drho = |dpsi><psi| + |psi><dpsi|.
  ParametricModel to_density() const;

  int dim() const { return dim_; }
  int n_params() const { return n_params_; }
  bool analytic_derivatives() const { return static_cast<bool>(grad_); }
  double fd_step() const { return step_; }

 private:
  PureStateModel() = default;

  int dim_ = 0;
  int n_params_ = 0;
  StateFn state_;
  GradFn grad_;
  double step_ = 1e-5;
};

// Truncated ladder operator: a|n> = sqrt(n)|n-1>.
CMat fock_annihilation(int dim);
// exp(alpha a^dag - conj(alpha) a) on the truncated space.
CMat fock_displacement(Complex alpha, int dim);
// exp((conj(zeta) a^2 - zeta a^dag^2) / 2) on the truncated space.
CMat fock_squeeze(Complex zeta, int dim);

// Normalized Fock amplitudes of D(alpha) S(zeta) |0>, length n_max + 1.
// Internally computed in a padded space; throws TruncationError when the
// requested point is outside the reliable range for the cutoff (|zeta| > 1.5
// or |alpha| > 3 at n_max <= 60) or when measured leakage past n_max exceeds
// trunc.leakage_tol.
CVec displaced_squeezed_state(Complex alpha, Complex zeta, const FockTruncation& trunc = {});

// |psi> = (cos(t1/2), e^{i t2} sin(t1/2)), analytic derivatives.
PureStateModel pure_qubit_bloch();
// rho = (I + t1 sigma_x + t2 sigma_y) / 2, analytic derivatives.
ParametricModel mixed_qubit_bloch();
// Displacement estimation on a squeezed probe: theta = (Re alpha, Im alpha),
// |psi_theta> = D(alpha) S(r e^{i phi}) |0>, finite-difference derivatives.
PureStateModel displacement_estimation(double r, double phi, const FockTruncation& trunc = {});

struct BuiltModel {
  ParametricModel density;
  std::optional<PureStateModel> pure;
};

std::vector<std::string> builtin_model_names();
// name in builtin_model_names(); params may carry r, phi, n_max, leakage_tol
// for the displacement model. Throws UnknownModel otherwise.
BuiltModel make_model(const std::string& name, const nlohmann::json& params);

}  // namespace teurkit
