#include "teurkit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace teurkit {

namespace {

double max_abs(const Eigen::Ref<const CMat>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

void require_finite(const Eigen::Ref<const CMat>& m, const char* what) {
  if (!m.allFinite()) throw Error(std::string(what) + ": non-finite entries");
}

void require_square(const Eigen::Ref<const CMat>& m, const char* what) {
  if (m.rows() != m.cols()) throw Error(std::string(what) + ": matrix is not square");
}

}  // namespace

bool is_hermitian(const Eigen::Ref<const CMat>& m, double tol) {
  if (m.rows() != m.cols() || !m.allFinite()) return false;
  const double dev = max_abs(m - m.adjoint());
  return dev <= tol * std::max(1.0, max_abs(m));
}

HermitianEig eig_hermitian(const Eigen::Ref<const CMat>& m, double tol_herm) {
  require_square(m, "eig_hermitian");
  require_finite(m, "eig_hermitian");
  if (!is_hermitian(m, tol_herm)) throw NonHermitianInput("eig_hermitian: input is not Hermitian");
  Eigen::SelfAdjointEigenSolver<CMat> solver(0.5 * (m + m.adjoint()));
  if (solver.info() != Eigen::Success)
    throw Error("eig_hermitian: eigensolver failed to converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

CMat sqrt_psd(const Eigen::Ref<const CMat>& m, double tol_herm, double clamp_tol) {
  HermitianEig eig = eig_hermitian(m, tol_herm);
  RVec lam = eig.values;
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (lam(i) < -clamp_tol)
      throw NotPSD("sqrt_psd: eigenvalue " + std::to_string(lam(i)) + " below zero");
    lam(i) = std::sqrt(std::max(lam(i), 0.0));
  }
  return eig.vectors * lam.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

double schatten1(const Eigen::Ref<const CMat>& m) {
  require_finite(m, "schatten1");
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMat> svd(m);
  return svd.singularValues().sum();
}

Mat2 inverse2(const Mat2& m, double rel_tol) {
  if (!m.allFinite()) throw Error("inverse2: non-finite entries");
  const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  const double scale = m.squaredNorm();
  if (std::abs(det) <= rel_tol * std::max(scale, 1e-300))
    throw SingularMatrix("inverse2: determinant " + std::to_string(det) + " too small");
  Mat2 inv;
  inv << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
  return inv / det;
}

Mat2 rot2(double phi) {
  const double c = std::cos(phi), s = std::sin(phi);
  Mat2 m;
  m << c, -s, s, c;
  return m;
}

Mat2 scale2(double r) {
  Mat2 m = Mat2::Zero();
  m(0, 0) = std::exp(r);
  m(1, 1) = std::exp(-r);
  return m;
}

void eig_sym2(const Mat2& m, Vec2& values, Mat2& vectors) {
  if (!m.allFinite()) throw Error("eig_sym2: non-finite entries");
  const double scale = std::max({std::abs(m(0, 0)), std::abs(m(1, 1)), 1.0});
  const double off = 0.5 * (m(0, 1) + m(1, 0));
  if (std::abs(m(0, 1) - m(1, 0)) > 1e-9 * scale)
    throw Error("eig_sym2: input is not symmetric");

  if (std::abs(off) <= 1e-15 * scale) {
    // Already diagonal: keep the coordinate frame, just order the axes.
    if (m(0, 0) <= m(1, 1)) {
      values = Vec2(m(0, 0), m(1, 1));
      vectors = Mat2::Identity();
    } else {
      values = Vec2(m(1, 1), m(0, 0));
      vectors << 0, 1, 1, 0;
    }
    return;
  }

  Eigen::SelfAdjointEigenSolver<Mat2> solver(sym2(m(0, 0), off, m(1, 1)));
  values = solver.eigenvalues();
  vectors = solver.eigenvectors();
  for (int j = 0; j < 2; ++j) {
    const int k = std::abs(vectors(0, j)) >= std::abs(vectors(1, j)) ? 0 : 1;
    if (vectors(k, j) < 0) vectors.col(j) *= -1.0;
  }
}

namespace {

Mat2 spd2_power(const Mat2& m, double expo, const char* what) {
  Vec2 lam;
  Mat2 v;
  eig_sym2(m, lam, v);
  if (lam(0) <= 0)
    throw NotPSD(std::string(what) + ": matrix is not positive definite (min eigenvalue " +
                 std::to_string(lam(0)) + ")");
  Vec2 powered(std::pow(lam(0), expo), std::pow(lam(1), expo));
  return v * powered.asDiagonal() * v.transpose();
}

}  // namespace

Mat2 sqrt_spd2(const Mat2& m) { return spd2_power(m, 0.5, "sqrt_spd2"); }

Mat2 inv_sqrt_spd2(const Mat2& m) { return spd2_power(m, -0.5, "inv_sqrt_spd2"); }

}  // namespace teurkit
