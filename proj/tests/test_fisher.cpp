#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "helpers.hpp"
#include "teurkit/fisher.hpp"
#include "teurkit/linalg.hpp"
#include "teurkit/model.hpp"

using namespace teurkit;
using testgen::max_abs_diff;

namespace {

constexpr double pi = std::numbers::pi;

RVec theta2(double a, double b) {
  RVec t(2);
  t << a, b;
  return t;
}

CMat pauli(int k) {
  CMat m(2, 2);
  if (k == 1) m << 0, 1, 1, 0;
  if (k == 2) m << 0, Complex(0, -1), Complex(0, 1), 0;
  if (k == 3) m << 1, 0, 0, -1;
  return m;
}

// Bloch-plane qubit QFIM worked out by hand from the SLD ansatz
// L = c0 I + c.sigma: F(mu,nu) = delta + r_mu r_nu / (1 - |r|^2).
Mat2 bloch_qfim(double r1, double r2) {
  const double d = 1.0 - r1 * r1 - r2 * r2;
  Mat2 f;
  f << 1 + r1 * r1 / d, r1 * r2 / d, r1 * r2 / d, 1 + r2 * r2 / d;
  return f;
}

// rho = diag(t1, t2, 1 - t1 - t2): all SLDs diagonal, so they commute.
ParametricModel diag_qutrit() {
  return ParametricModel::analytic(
      3, 2,
      [](const RVec& th) {
        CMat m = CMat::Zero(3, 3);
        m(0, 0) = th(0);
        m(1, 1) = th(1);
        m(2, 2) = 1.0 - th(0) - th(1);
        return m;
      },
      [](const RVec&, int mu) {
        CMat m = CMat::Zero(3, 3);
        m(mu, mu) = 1.0;
        m(2, 2) = -1.0;
        return m;
      });
}

FinitePOVM basis_povm(int dim) {
  FinitePOVM povm;
  for (int k = 0; k < dim; ++k) {
    CMat m = CMat::Zero(dim, dim);
    m(k, k) = 1.0;
    povm.elements.push_back(m);
  }
  return povm;
}

Mat2 to_mat2(const RMat& m) {
  Mat2 out;
  out << m(0, 0), m(0, 1), m(1, 0), m(1, 1);
  return out;
}

double min_eig2(const Mat2& m) {
  const double tr = m.trace();
  const double gap = std::sqrt(std::max(0.0, tr * tr - 4.0 * m.determinant()));
  return 0.5 * (tr - gap);
}

}  // namespace

TEST_SUITE_BEGIN("fisher");

TEST_CASE("sld at the maximally mixed qubit is twice the derivative") {
  const CMat rho = 0.5 * CMat::Identity(2, 2);
  CHECK(max_abs_diff(sld(rho, 0.5 * pauli(1)), pauli(1)) < 1e-12);
  CHECK(max_abs_diff(sld(rho, 0.5 * pauli(2)), pauli(2)) < 1e-12);
}

TEST_CASE("sld solves its defining equation on random full-rank states") {
  Xoshiro256pp g(301);
  for (int trial = 0; trial < 40; ++trial) {
    const int dim = 2 + static_cast<int>(g.next() % 3);
    const CMat rho = testgen::random_density(g, dim);
    CMat dt = testgen::random_hermitian(g, dim);
    dt -= (dt.trace() / static_cast<double>(dim)) * CMat::Identity(dim, dim);
    const CMat l = sld(rho, dt);
    CHECK(is_hermitian(l, 1e-9));
    CHECK(max_abs_diff(0.5 * (rho * l + l * rho), dt) < 1e-9);
  }
}

TEST_CASE("sld on a pure state leaves the kernel block empty") {
  CMat rho = CMat::Zero(2, 2);
  rho(0, 0) = 1.0;
  CMat dt(2, 2);
  dt << 0, Complex(0.3, 0.1), Complex(0.3, -0.1), 0;
  const CMat l = sld(rho, dt);
  CHECK(std::abs(l(0, 0)) < 1e-14);
  CHECK(std::abs(l(1, 1)) < 1e-14);
  CHECK(std::abs(l(0, 1) - 2.0 * dt(0, 1)) < 1e-12);
}

TEST_CASE("derivatives pointing out of reach raise SupportMismatch") {
  CMat rho = CMat::Zero(3, 3);
  rho(0, 0) = 1.0;
  CMat dt = CMat::Zero(3, 3);
  dt(1, 1) = 1e-3;
  dt(2, 2) = -1e-3;
  CHECK_THROWS_AS(sld(rho, dt), SupportMismatch);

  // weight below the gate is quietly projected away
  dt(1, 1) = 1e-8;
  dt(2, 2) = -1e-8;
  const CMat l = sld(rho, dt);
  CHECK(max_abs_diff(l, CMat::Zero(3, 3)) < 1e-14);
}

TEST_CASE("qfim of the Bloch-sphere pure qubit") {
  const ParametricModel m = pure_qubit_bloch().to_density();
  const RVec th = theta2(pi / 2, 0.0);
  const RMat f = qfim(m.rho(th), sld_set(m, th));
  CHECK(max_abs_diff(f, Mat2::Identity()) < 1e-9);

  const RVec th2 = theta2(pi / 3, 0.4);
  const RMat f2 = qfim(m.rho(th2), sld_set(m, th2));
  Mat2 expect;
  const double s = std::sin(pi / 3);
  expect << 1, 0, 0, s * s;
  CHECK(max_abs_diff(f2, expect) < 1e-9);
}

TEST_CASE("qfim of the Bloch-plane mixed qubit matches the hand formula") {
  const ParametricModel m = mixed_qubit_bloch();
  for (const auto& [r1, r2] : {std::pair{0.0, 0.0}, {0.3, -0.2}, {0.6, 0.5}, {-0.45, -0.45}}) {
    const RVec th = theta2(r1, r2);
    const RMat f = qfim(m.rho(th), sld_set(m, th));
    CHECK(max_abs_diff(f, bloch_qfim(r1, r2)) < 1e-9);
  }
}

TEST_CASE("qfim is symmetric PSD for random pure families") {
  Xoshiro256pp g(302);
  for (int trial = 0; trial < 30; ++trial) {
    const int dim = 2 + static_cast<int>(g.next() % 2);
    const ParametricModel m = testgen::random_pure_model(g, dim).to_density();
    const RVec th = theta2(0.4 * testgen::normal(g), 0.4 * testgen::normal(g));
    const RMat f = qfim(m.rho(th), sld_set(m, th));
    CHECK(max_abs_diff(f, f.transpose()) < 1e-10);
    CHECK(min_eig2(to_mat2(f)) > -1e-8);
  }
}

TEST_CASE("gamma of the Bloch-plane mixed qubit is exactly one") {
  const ParametricModel m = mixed_qubit_bloch();
  for (const auto& [r1, r2] : {std::pair{0.0, 0.0}, {0.3, -0.2}, {0.6, 0.5}}) {
    const RVec th = theta2(r1, r2);
    const CMat rho = m.rho(th);
    const SldSet slds = sld_set(m, th);
    const Mat2 f = to_mat2(qfim(rho, slds));
    CHECK(std::abs(incompat_gamma(rho, slds, f) - 1.0) < 1e-9);
    // c carries the anisotropy of the information matrix on top of gamma
    const double c_expected = std::sqrt(f.determinant() / (f(0, 0) * f(1, 1)));
    CHECK(std::abs(incompat_c(rho, slds, f) - c_expected) < 1e-9);
  }
}

TEST_CASE("commuting SLDs give gamma = 0") {
  const ParametricModel m = diag_qutrit();
  const RVec th = theta2(0.3, 0.4);
  const CMat rho = m.rho(th);
  const SldSet slds = sld_set(m, th);
  CHECK(max_abs_diff(slds.L[0] * slds.L[1], slds.L[1] * slds.L[0]) < 1e-12);
  const Mat2 f = to_mat2(qfim(rho, slds));
  CHECK(incompat_gamma(rho, slds, f) < 1e-12);
  CHECK(incompat_c(rho, slds, f) < 1e-12);
}

TEST_CASE("gamma refuses a singular information matrix") {
  const ParametricModel m = pure_qubit_bloch().to_density();
  const RVec th = theta2(0.0, 0.3);  // second parameter is dead at the pole
  const CMat rho = m.rho(th);
  const SldSet slds = sld_set(m, th);
  const Mat2 f = to_mat2(qfim(rho, slds));
  CHECK_THROWS_AS(incompat_gamma(rho, slds, f), SingularQfim);
}

TEST_CASE("gamma stays in [0, 1] across random families") {
  Xoshiro256pp g(303);
  int used = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int dim = 2 + static_cast<int>(g.next() % 2);
    const ParametricModel m = testgen::random_pure_model(g, dim).to_density();
    const RVec th = theta2(0.4 * testgen::normal(g), 0.4 * testgen::normal(g));
    const CMat rho = m.rho(th);
    const SldSet slds = sld_set(m, th);
    const Mat2 f = to_mat2(qfim(rho, slds));
    if (f.determinant() < 1e-3) continue;  // ill-conditioned draw, gamma is meaningless
    ++used;
    const double gam = incompat_gamma(rho, slds, f);
    CHECK(gam >= 0.0);
    CHECK(gam <= 1.0);
    CHECK(incompat_gamma_raw(rho, slds, f) < 1.0 + 1e-6);
    const double c = incompat_c(rho, slds, f);
    CHECK(c >= 0.0);
    CHECK(c <= 1.0);
  }
  CHECK(used > 250);
}

TEST_CASE("pure-state gamma agrees with the geometric-tensor route") {
  Xoshiro256pp g(304);
  int used = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const int dim = 2 + static_cast<int>(g.next() % 2);
    const PureStateModel m = testgen::random_pure_model(g, dim);
    const RVec th = theta2(0.3 * testgen::normal(g), 0.3 * testgen::normal(g));
    const Qgt q = qgt(m, th);
    const double det_re = q.re.determinant();
    if (det_re < 1e-3) continue;
    ++used;
    const ParametricModel dm = m.to_density();
    const CMat rho = dm.rho(th);
    const SldSet slds = sld_set(dm, th);
    const Mat2 f = to_mat2(qfim(rho, slds));
    CHECK(max_abs_diff(f, Mat2(4.0 * q.re)) < 1e-6);
    CHECK(std::abs(incompat_gamma(rho, slds, f) - q.q * q.q / det_re) < 1e-6);
  }
  CHECK(used > 12);
}

TEST_CASE("geometric tensor of a displaced vacuum") {
  const PureStateModel m = displacement_estimation(0.0, 0.0);
  const Qgt q = qgt(m, theta2(0.3, -0.2));
  CHECK(max_abs_diff(q.re, Mat2::Identity()) < 1e-4);
  CHECK(std::abs(std::abs(q.q) - 1.0) < 1e-4);
  const Eigen::Matrix2cd full = q.full();
  CHECK(std::abs(full(0, 1) - Complex(q.re(0, 1), q.q)) < 1e-15);
  CHECK(std::abs(full(1, 0) - Complex(q.re(0, 1), -q.q)) < 1e-15);
}

TEST_CASE("geometric tensor ignores gauge") {
  Xoshiro256pp g(305);
  const PureStateModel m = testgen::random_pure_model(g, 3);
  const PureStateModel fixed_phase = PureStateModel::finite_difference(
      3, 2, [m](const RVec& th) { return CVec(Complex(std::cos(0.7), std::sin(0.7)) * m.psi(th)); });
  const PureStateModel running_phase = PureStateModel::finite_difference(
      3, 2, [m](const RVec& th) {
        const double f = 0.8 * th(0) - 0.3 * th(1);
        return CVec(Complex(std::cos(f), std::sin(f)) * m.psi(th));
      });
  const RVec th = theta2(0.2, -0.5);
  const Qgt base = qgt(m, th);
  const Qgt fixed = qgt(fixed_phase, th);
  const Qgt running = qgt(running_phase, th);
  CHECK(max_abs_diff(base.re, fixed.re) < 1e-11);
  CHECK(std::abs(base.q - fixed.q) < 1e-11);
  CHECK(max_abs_diff(base.re, running.re) < 1e-6);
  CHECK(std::abs(base.q - running.q) < 1e-6);
}

TEST_CASE("classical information of a trivial measurement vanishes") {
  FinitePOVM trivial;
  trivial.elements.push_back(CMat::Identity(2, 2));
  const RMat f = cfim(mixed_qubit_bloch(), trivial, theta2(0.2, 0.1));
  CHECK(max_abs_diff(f, RMat::Zero(2, 2)) < 1e-12);
}

TEST_CASE("basis measurement on the Bloch equator") {
  const ParametricModel m = pure_qubit_bloch().to_density();
  const RMat f = cfim(m, basis_povm(2), theta2(pi / 2, 0.0));
  Mat2 expect;
  expect << 1, 0, 0, 0;
  CHECK(max_abs_diff(f, expect) < 1e-9);
}

TEST_CASE("outcomes with vanishing probability and derivative are dropped") {
  // sigma_x eigenbasis at the +x pole: the dark port has p = 0 and dp = 0
  FinitePOVM xbasis;
  CMat plus(2, 2), minus(2, 2);
  plus << 0.5, 0.5, 0.5, 0.5;
  minus << 0.5, -0.5, -0.5, 0.5;
  xbasis.elements = {plus, minus};
  const ParametricModel m = pure_qubit_bloch().to_density();
  const RMat f = cfim(m, xbasis, theta2(pi / 2, 0.0));
  CHECK(max_abs_diff(f, RMat::Zero(2, 2)) < 1e-9);
}

TEST_CASE("diverging score raises ZeroProbabilityDerivative") {
  const ParametricModel m = ParametricModel::analytic(
      2, 2,
      [](const RVec& th) {
        CMat r = CMat::Zero(2, 2);
        r(0, 0) = th(0);
        r(1, 1) = 1.0 - th(0);
        return r;
      },
      [](const RVec&, int mu) {
        CMat d = CMat::Zero(2, 2);
        if (mu == 0) {
          d(0, 0) = 1.0;
          d(1, 1) = -1.0;
        }
        return d;
      });
  CHECK_THROWS_AS(cfim(m, basis_povm(2), theta2(0.0, 0.3)), ZeroProbabilityDerivative);
  // away from the boundary the binomial rate comes out
  const RMat f = cfim(m, basis_povm(2), theta2(0.25, 0.3));
  CHECK(std::abs(f(0, 0) - 1.0 / (0.25 * 0.75)) < 1e-8);
  CHECK(std::abs(f(1, 1)) < 1e-12);
}

TEST_CASE("classical information never beats the quantum bound") {
  Xoshiro256pp g(306);
  for (int trial = 0; trial < 30; ++trial) {
    const int dim = 2 + static_cast<int>(g.next() % 2);
    const ParametricModel m = testgen::random_pure_model(g, dim).to_density();
    const RVec th = theta2(0.3 * testgen::normal(g), 0.3 * testgen::normal(g));
    const FinitePOVM povm = (trial % 2 == 0) ? testgen::random_projective_povm(g, dim)
                                             : testgen::random_povm(g, dim, 3);
    povm.validate(dim);
    const RMat fc = cfim(m, povm, th);
    const RMat fq = qfim(m.rho(th), sld_set(m, th));
    const Mat2 gap = to_mat2(fq - fc);
    CHECK(max_abs_diff(gap, gap.transpose()) < 1e-8);
    CHECK(min_eig2(gap) > -1e-6);
  }
}

TEST_CASE("povm validation") {
  Xoshiro256pp g(307);
  CHECK_NOTHROW(testgen::random_projective_povm(g, 3).validate(3));
  CHECK_NOTHROW(testgen::random_povm(g, 3, 4).validate(3));

  FinitePOVM short_sum;
  short_sum.elements.push_back(CMat(0.5 * CMat::Identity(2, 2)));
  CHECK_THROWS_AS(short_sum.validate(2), Error);

  FinitePOVM negative;
  CMat neg(2, 2);
  neg << 1.5, 0, 0, 1;
  CMat rest = CMat::Identity(2, 2) - neg;
  negative.elements = {neg, rest};
  CHECK_THROWS_AS(negative.validate(2), NotPSD);

  FinitePOVM wrong_dim;
  wrong_dim.elements.push_back(CMat::Identity(3, 3));
  CHECK_THROWS_AS(wrong_dim.validate(2), Error);
}

TEST_CASE("linear reparametrization transforms both informations alike") {
  Mat2 j;
  j << 1.2, 0.3, -0.4, 0.9;
  const ParametricModel m = mixed_qubit_bloch();
  const ParametricModel pulled = ParametricModel::analytic(
      2, 2, [j, m](const RVec& tp) { return m.rho(RVec(j * tp)); },
      [j, m](const RVec& tp, int mu) {
        const RVec th = j * tp;
        CMat d = CMat::Zero(2, 2);
        for (int nu = 0; nu < 2; ++nu) d += j(nu, mu) * m.drho(th, nu);
        return d;
      });
  const RVec tp = theta2(0.2, -0.1);
  const RVec th = j * tp;

  const CMat rho = m.rho(th);
  const SldSet slds = sld_set(m, th);
  const Mat2 f = to_mat2(qfim(rho, slds));
  const SldSet slds_p = sld_set(pulled, tp);
  const Mat2 fp = to_mat2(qfim(pulled.rho(tp), slds_p));
  CHECK(max_abs_diff(fp, Mat2(j.transpose() * f * j)) < 1e-9);

  const FinitePOVM povm = basis_povm(2);
  const Mat2 fc = to_mat2(cfim(m, povm, th));
  const Mat2 fcp = to_mat2(cfim(pulled, povm, tp));
  CHECK(max_abs_diff(fcp, Mat2(j.transpose() * fc * j)) < 1e-9);

  CHECK(std::abs(incompat_gamma(rho, slds, f) -
                 incompat_gamma(pulled.rho(tp), slds_p, fp)) < 1e-9);
}

TEST_SUITE_END();
