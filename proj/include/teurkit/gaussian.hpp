#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "teurkit/linalg.hpp"

namespace teurkit {

// Joint displacement-sensing scheme: the probe is D(alpha) S(r e^{i phi}) |0>,
// the readout is a conjugate-squeezed heterodyne with ancilla parameters
// (r_anc, phi_anc), and each experiment averages n two-quadrature samples.
// Quadrature convention: vacuum variance 1/4.
struct GaussianScheme {
  double r = 0.0;
  double phi = 0.0;
  Complex alpha = Complex(0.0, 0.0);  // true value; theta = (Re, Im)
  double r_anc = 0.0;
  double phi_anc = 0.0;
  long n = 10000;
};

// QFIM of displacement estimation on the squeezed probe:
// 4 R(phi/2) diag(e^{2r}, e^{-2r}) R(phi/2)^T.
Mat2 qfim_displacement(double r, double phi);

// Probe quadrature covariance; equals the inverse QFIM.
Mat2 system_cov(double r, double phi);

// Ancilla noise added by the readout: (1/4) R(-phi_anc/2) diag(e^{-2 r_anc},
// e^{2 r_anc}) R(-phi_anc/2)^T.
Mat2 ancilla_cov(double r_anc, double phi_anc);

// Per-sample outcome covariance = system_cov + ancilla_cov. This is also the
// scaled estimator covariance n*E of the sample-mean estimator.
Mat2 joint_cov(const GaussianScheme& s);

// Displacement seen through the squeezer: beta = alpha cosh r + conj(alpha)
// e^{i phi} sinh r, zeta = r e^{i phi}.
Complex beta_of_alpha(Complex alpha, Complex zeta);

// Linear map from input quadratures to the squeezed frame, plus the
// displacement offset: outcome quadratures ~ transform * (Q, P) + offset.
struct QuadratureFrame {
  Mat2 transform = Mat2::Identity();
  Vec2 offset = Vec2::Zero();
};
QuadratureFrame heisenberg_quadratures(double r, double phi, Complex alpha);

struct MeasurementRecord {
  std::vector<std::pair<double, double>> samples;
  std::uint64_t seed = 0;
};

// One experiment's raw outcomes (n samples), drawn from stream (seed, trial).
MeasurementRecord sample_outcomes(const GaussianScheme& s, std::uint64_t seed,
                                  std::uint64_t trial = 0);

struct EstimateSummary {
  Vec2 mean = Vec2::Zero();
  // n * (unbiased covariance of the per-experiment sample means); comparable
  // directly with joint_cov. Zero when n_trials == 1.
  Mat2 sample_cov = Mat2::Zero();
  long n_trials = 0;
};

// Per-trial sample-mean estimates. Trial t uses RNG stream (seed, t), so the
// result is bitwise identical for every worker count; workers <= 0 picks a
// default.
std::vector<Vec2> simulate_trials(const GaussianScheme& s, long n_trials, std::uint64_t seed,
                                  int workers = 0);

EstimateSummary summarize(const std::vector<Vec2>& estimates, long n);

EstimateSummary simulate(const GaussianScheme& s, long n_trials, std::uint64_t seed,
                         int workers = 0);

}  // namespace teurkit
