#pragma once

#include <Eigen/Dense>
#include <complex>

#include "teurkit/errors.hpp"

namespace teurkit {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;
using Mat2 = Eigen::Matrix2d;
using Vec2 = Eigen::Vector2d;

bool is_hermitian(const Eigen::Ref<const CMat>& m, double tol = 1e-10);

struct HermitianEig {
  RVec values;   // ascending
  CMat vectors;  // unitary; column k pairs with values(k)
};

// Throws NonHermitianInput if m deviates from m.adjoint() beyond tol_herm
// (max-abs, relative to the largest entry). Input is symmetrized before the
// solve, so roundoff-level asymmetry never leaks into the spectrum.
HermitianEig eig_hermitian(const Eigen::Ref<const CMat>& m, double tol_herm = 1e-10);

// Principal square root of a PSD Hermitian matrix. Eigenvalues in
// [-clamp_tol, 0) count as zero; anything below -clamp_tol throws NotPSD.
CMat sqrt_psd(const Eigen::Ref<const CMat>& m, double tol_herm = 1e-10,
              double clamp_tol = 1e-10);

// Schatten-1 (trace) norm: sum of singular values. Works for any rectangular m.
double schatten1(const Eigen::Ref<const CMat>& m);

// Closed-form 2x2 inverse. Throws SingularMatrix when |det| <= rel_tol * ||m||_F^2.
Mat2 inverse2(const Mat2& m, double rel_tol = 1e-14);

// Rotation by phi: [[cos, -sin], [sin, cos]].
Mat2 rot2(double phi);

// diag(e^r, e^-r).
Mat2 scale2(double r);

inline Mat2 sym2(double a11, double a12, double a22) {
  Mat2 m;
  m << a11, a12, a12, a22;
  return m;
}

// Eigendecomposition of a symmetric 2x2 with deterministic conventions:
// values ascending, each eigenvector column flipped so its largest-magnitude
// entry is positive, and numerically diagonal input keeps the coordinate frame
// (columns stay axis-aligned instead of picking up solver noise).
void eig_sym2(const Mat2& m, Vec2& values, Mat2& vectors);

// Square root / inverse square root of a symmetric positive definite 2x2.
Mat2 sqrt_spd2(const Mat2& m);
Mat2 inv_sqrt_spd2(const Mat2& m);

}  // namespace teurkit
