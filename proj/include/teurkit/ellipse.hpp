#pragma once

#include "teurkit/linalg.hpp"

namespace teurkit {

// Region {v : (v - center)^T A (v - center) <= kappa^2}, A symmetric positive
// definite.
struct Ellipse {
  Vec2 center = Vec2::Zero();
  Mat2 A = Mat2::Identity();
  double kappa = 1.0;
};

// Confidence-style ellipse of a covariance: A = E^{-1}.
Ellipse error_ellipse(const Mat2& cov, const Vec2& center = Vec2::Zero(), double kappa = 1.0);

// Quantum-limited ellipse: A = QFIM, so the region is the inverse-QFIM ellipse.
Ellipse quantum_limited_ellipse(const Mat2& qfim, const Vec2& center = Vec2::Zero(),
                                double kappa = 1.0);

struct EllipseMetrics {
  Vec2 intercepts = Vec2::Zero();  // boundary crossings of the axes through center
  Vec2 maxima = Vec2::Zero();      // max |x - cx|, max |y - cy| over the boundary
  Vec2 semi_axes = Vec2::Zero();   // (major, minor)
  double tilt = 0.0;               // major-axis angle, in (-pi/2, pi/2]
};
EllipseMetrics metrics(const Ellipse& e);

// Concentric containment: outer ⊇ inner, up to tol on the eigenvalues of the
// shape-matrix difference. Throws NonConcentric when centers differ.
bool contains(const Ellipse& outer, const Ellipse& inner, double tol = 1e-10);

// Closed boundary polyline: n_points uniform eigen-frame angles plus the first
// point repeated at the end; rows are (x, y). n_points >= 2.
Eigen::MatrixX2d polyline(const Ellipse& e, int n_points);

}  // namespace teurkit
