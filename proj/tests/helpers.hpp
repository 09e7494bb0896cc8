#pragma once

// Seeded generators shared by the test binaries. Everything is driven by
// teurkit's own xoshiro stream so runs are reproducible bit for bit.

#include <cmath>
#include <complex>
#include <numbers>
#include <utility>
#include <vector>

#include "teurkit/fisher.hpp"
#include "teurkit/linalg.hpp"
#include "teurkit/model.hpp"
#include "teurkit/rng.hpp"

namespace testgen {

using teurkit::CMat;
using teurkit::Complex;
using teurkit::CVec;
using teurkit::Mat2;
using teurkit::RVec;
using teurkit::Vec2;
using teurkit::Xoshiro256pp;

inline double normal(Xoshiro256pp& g) { return teurkit::normal_pair(g).first; }

inline Complex cnormal(Xoshiro256pp& g) {
  const auto [a, b] = teurkit::normal_pair(g);
  return Complex(a, b) / std::sqrt(2.0);
}

inline CMat random_complex(Xoshiro256pp& g, int d) {
  CMat m(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) m(r, c) = cnormal(g);
  return m;
}

inline CMat random_hermitian(Xoshiro256pp& g, int d) {
  const CMat m = random_complex(g, d);
  return 0.5 * (m + m.adjoint());
}

inline CMat random_unitary(Xoshiro256pp& g, int d) {
  Eigen::HouseholderQR<CMat> qr(random_complex(g, d));
  return CMat(qr.householderQ());
}

inline CMat random_psd(Xoshiro256pp& g, int d) {
  const CMat m = random_complex(g, d);
  return m * m.adjoint();
}

inline CMat random_density(Xoshiro256pp& g, int d) {
  const CMat m = random_psd(g, d);
  return m / m.trace().real();
}

inline CVec random_pure(Xoshiro256pp& g, int d) {
  CVec v(d);
  for (int i = 0; i < d; ++i) v(i) = cnormal(g);
  return v / v.norm();
}

// exp(-i t h) for Hermitian h
inline CMat unitary_exp(const CMat& h, double t) {
  const teurkit::HermitianEig eig = teurkit::eig_hermitian(h);
  CVec phases(eig.values.size());
  for (Eigen::Index i = 0; i < eig.values.size(); ++i)
    phases(i) = std::polar(1.0, -t * eig.values(i));
  return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

// |psi(theta)> = exp(-i theta1 A) exp(-i theta2 B) |psi0>: a generic smooth
// two-parameter pure family with nothing special about it.
inline teurkit::PureStateModel random_pure_model(Xoshiro256pp& g, int d) {
  const CMat a = random_hermitian(g, d);
  const CMat b = random_hermitian(g, d);
  const CVec psi0 = random_pure(g, d);
  return teurkit::PureStateModel::finite_difference(
      d, 2, [a, b, psi0](const RVec& th) -> CVec {
        return unitary_exp(a, th(0)) * (unitary_exp(b, th(1)) * psi0);
      });
}

// two rank-1 projectors U|x><x|U*
inline teurkit::FinitePOVM random_projective_povm(Xoshiro256pp& g, int d) {
  const CMat u = random_unitary(g, d);
  teurkit::FinitePOVM povm;
  for (int x = 0; x < d; ++x) {
    const CVec col = u.col(x);
    povm.elements.push_back(col * col.adjoint());
  }
  return povm;
}

// k random PSD pieces whitened so they sum to the identity
inline teurkit::FinitePOVM random_povm(Xoshiro256pp& g, int d, int k) {
  std::vector<CMat> raw;
  CMat sum = CMat::Zero(d, d);
  for (int x = 0; x < k; ++x) {
    raw.push_back(random_psd(g, d));
    sum += raw.back();
  }
  const teurkit::HermitianEig eig = teurkit::eig_hermitian(sum);
  CVec inv_sqrt(eig.values.size());
  for (Eigen::Index i = 0; i < eig.values.size(); ++i)
    inv_sqrt(i) = 1.0 / std::sqrt(eig.values(i));
  const CMat w = eig.vectors * inv_sqrt.asDiagonal() * eig.vectors.adjoint();
  teurkit::FinitePOVM povm;
  for (const CMat& m : raw) {
    const CMat e = w * m * w;
    povm.elements.push_back(0.5 * (e + e.adjoint()));
  }
  return povm;
}

inline Mat2 random_spd2(Xoshiro256pp& g, double ridge = 0.05) {
  Mat2 b;
  b << normal(g), normal(g), normal(g), normal(g);
  return b.transpose() * b + ridge * Mat2::Identity();
}

// F = Fq^{1/2} O diag(w) O^T Fq^{1/2} with w in [0,1]^2, so 0 <= F <= Fq
inline Mat2 random_dominated(Xoshiro256pp& g, const Mat2& fq) {
  const double ang = 2.0 * std::numbers::pi * g.uniform01();
  Mat2 o = teurkit::rot2(ang);
  Mat2 w = Mat2::Zero();
  w(0, 0) = g.uniform01();
  w(1, 1) = g.uniform01();
  const Mat2 root = teurkit::sqrt_spd2(fq);
  const Mat2 f = root * o * w * o.transpose() * root;
  return 0.5 * (f + f.transpose());
}

template <typename A, typename B>
double max_abs_diff(const A& a, const B& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace testgen
