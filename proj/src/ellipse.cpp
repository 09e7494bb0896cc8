#include "teurkit/ellipse.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace teurkit {

namespace {

Mat2 checked_shape(const Mat2& a, const char* what) {
  if (!a.allFinite()) throw Error(std::string(what) + ": non-finite entries");
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if (std::abs(a(0, 1) - a(1, 0)) > 1e-9 * scale)
    throw Error(std::string(what) + ": shape matrix is not symmetric");
  Mat2 sym = 0.5 * (a + a.transpose());
  if (sym(0, 0) <= 0 || sym.determinant() <= 0)
    throw NotPSD(std::string(what) + ": shape matrix is not positive definite");
  return sym;
}

void check_ellipse(const Ellipse& e, const char* what) {
  checked_shape(e.A, what);
  if (!(e.kappa > 0) || !std::isfinite(e.kappa))
    throw Error(std::string(what) + ": kappa must be positive");
  if (!e.center.allFinite()) throw Error(std::string(what) + ": center is not finite");
}

}  // namespace

Ellipse error_ellipse(const Mat2& cov, const Vec2& center, double kappa) {
  Ellipse e;
  e.center = center;
  e.A = inverse2(checked_shape(cov, "error_ellipse"));
  e.kappa = kappa;
  check_ellipse(e, "error_ellipse");
  return e;
}

Ellipse quantum_limited_ellipse(const Mat2& qfim, const Vec2& center, double kappa) {
  Ellipse e;
  e.center = center;
  e.A = checked_shape(qfim, "quantum_limited_ellipse");
  e.kappa = kappa;
  check_ellipse(e, "quantum_limited_ellipse");
  return e;
}

EllipseMetrics metrics(const Ellipse& e) {
  check_ellipse(e, "metrics");
  const Mat2 a = 0.5 * (e.A + e.A.transpose());
  const Mat2 a_inv = inverse2(a);

  EllipseMetrics m;
  m.intercepts = Vec2(e.kappa / std::sqrt(a(0, 0)), e.kappa / std::sqrt(a(1, 1)));
  m.maxima = Vec2(e.kappa * std::sqrt(a_inv(0, 0)), e.kappa * std::sqrt(a_inv(1, 1)));

  Vec2 lam;
  Mat2 frame;
  eig_sym2(a, lam, frame);
  m.semi_axes = Vec2(e.kappa / std::sqrt(lam(0)), e.kappa / std::sqrt(lam(1)));

  // Major axis belongs to the smallest eigenvalue; fold the angle into
  // (-pi/2, pi/2].
  double tilt = std::atan2(frame(1, 0), frame(0, 0));
  const double half_pi = 0.5 * std::numbers::pi;
  while (tilt > half_pi) tilt -= std::numbers::pi;
  while (tilt <= -half_pi) tilt += std::numbers::pi;
  m.tilt = tilt;
  return m;
}

bool contains(const Ellipse& outer, const Ellipse& inner, double tol) {
  check_ellipse(outer, "contains");
  check_ellipse(inner, "contains");
  const double center_scale = 1.0 + std::max(outer.center.norm(), inner.center.norm());
  if ((outer.center - inner.center).norm() > 1e-12 * center_scale)
    throw NonConcentric("contains: ellipses are not concentric");

  const Mat2 diff = inner.A / (inner.kappa * inner.kappa) - outer.A / (outer.kappa * outer.kappa);
  Vec2 lam;
  Mat2 frame;
  eig_sym2(0.5 * (diff + diff.transpose()), lam, frame);
  return lam(0) >= -tol;
}

Eigen::MatrixX2d polyline(const Ellipse& e, int n_points) {
  check_ellipse(e, "polyline");
  if (n_points < 2) throw Error("polyline: n_points must be >= 2");

  const Mat2 a = 0.5 * (e.A + e.A.transpose());
  Vec2 lam;
  Mat2 frame;
  eig_sym2(a, lam, frame);
  const double ax_major = e.kappa / std::sqrt(lam(0));
  const double ax_minor = e.kappa / std::sqrt(lam(1));

  Eigen::MatrixX2d pts(n_points + 1, 2);
  for (int i = 0; i < n_points; ++i) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(i) / n_points;
    const Vec2 local(ax_major * std::cos(t), ax_minor * std::sin(t));
    const Vec2 v = e.center + frame * local;
    pts(i, 0) = v(0);
    pts(i, 1) = v(1);
  }
  pts.row(n_points) = pts.row(0);
  return pts;
}

}  // namespace teurkit
