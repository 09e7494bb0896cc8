#include "teurkit/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "teurkit/rng.hpp"

namespace teurkit {

namespace {

void check_scheme(const GaussianScheme& s) {
  if (!std::isfinite(s.r) || !std::isfinite(s.phi) || !std::isfinite(s.r_anc) ||
      !std::isfinite(s.phi_anc) || !std::isfinite(s.alpha.real()) ||
      !std::isfinite(s.alpha.imag()))
    throw Error("gaussian scheme has non-finite parameters");
  if (s.n < 1) throw Error("gaussian scheme needs n >= 1 samples per experiment");
}

struct Chol2 {
  double l00, l10, l11;
};

Chol2 cholesky2(const Mat2& cov) {
  const double c00 = cov(0, 0);
  const double det = cov.determinant();
  if (c00 <= 0 || det <= 0) throw NotPSD("outcome covariance is not positive definite");
  Chol2 l;
  l.l00 = std::sqrt(c00);
  l.l10 = cov(1, 0) / l.l00;
  l.l11 = std::sqrt(det / c00);
  return l;
}

int pick_workers(int workers, long n_trials) {
  if (workers <= 0) {
    const unsigned hc = std::thread::hardware_concurrency();
    workers = static_cast<int>(std::min(hc == 0 ? 1u : hc, 8u));
  }
  return static_cast<int>(std::min<long>(workers, n_trials));
}

}  // namespace

Mat2 qfim_displacement(double r, double phi) {
  const Mat2 rot = rot2(0.5 * phi);
  return 4.0 * rot * scale2(2.0 * r) * rot.transpose();
}

Mat2 system_cov(double r, double phi) {
  const Mat2 rot = rot2(0.5 * phi);
  return 0.25 * rot * scale2(-2.0 * r) * rot.transpose();
}

Mat2 ancilla_cov(double r_anc, double phi_anc) {
  const Mat2 rot = rot2(-0.5 * phi_anc);
  return 0.25 * rot * scale2(-2.0 * r_anc) * rot.transpose();
}

Mat2 joint_cov(const GaussianScheme& s) {
  check_scheme(s);
  return system_cov(s.r, s.phi) + ancilla_cov(s.r_anc, s.phi_anc);
}

Complex beta_of_alpha(Complex alpha, Complex zeta) {
  const double r = std::abs(zeta);
  const Complex phase = r == 0.0 ? Complex(1.0, 0.0) : zeta / r;
  return alpha * std::cosh(r) + std::conj(alpha) * phase * std::sinh(r);
}

QuadratureFrame heisenberg_quadratures(double r, double phi, Complex alpha) {
  const Mat2 rot = rot2(0.5 * phi);
  QuadratureFrame f;
  f.transform = rot * scale2(-r) * rot.transpose();
  f.offset = Vec2(alpha.real(), alpha.imag());
  return f;
}

MeasurementRecord sample_outcomes(const GaussianScheme& s, std::uint64_t seed,
                                  std::uint64_t trial) {
  const Chol2 l = cholesky2(joint_cov(s));
  const double m0 = s.alpha.real(), m1 = s.alpha.imag();
  MeasurementRecord rec;
  rec.seed = seed;
  rec.samples.reserve(static_cast<std::size_t>(s.n));
  Xoshiro256pp g(seed, trial);
  for (long i = 0; i < s.n; ++i) {
    const auto [z0, z1] = normal_pair(g);
    rec.samples.emplace_back(m0 + l.l00 * z0, m1 + l.l10 * z0 + l.l11 * z1);
  }
  return rec;
}

std::vector<Vec2> simulate_trials(const GaussianScheme& s, long n_trials, std::uint64_t seed,
                                  int workers) {
  if (n_trials < 1) throw Error("simulate needs n_trials >= 1");
  const Chol2 l = cholesky2(joint_cov(s));
  const double m0 = s.alpha.real(), m1 = s.alpha.imag();
  const long n = s.n;

  std::vector<Vec2> estimates(static_cast<std::size_t>(n_trials));
  auto run_range = [&](long lo, long hi) {
    for (long t = lo; t < hi; ++t) {
      Xoshiro256pp g(seed, static_cast<std::uint64_t>(t));
      double sum0 = 0.0, sum1 = 0.0;
      for (long i = 0; i < n; ++i) {
        const auto [z0, z1] = normal_pair(g);
        sum0 += m0 + l.l00 * z0;
        sum1 += m1 + l.l10 * z0 + l.l11 * z1;
      }
      estimates[static_cast<std::size_t>(t)] =
          Vec2(sum0 / static_cast<double>(n), sum1 / static_cast<double>(n));
    }
  };

  const int nw = pick_workers(workers, n_trials);
  if (nw <= 1) {
    run_range(0, n_trials);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nw));
    const long chunk = (n_trials + nw - 1) / nw;
    for (int w = 0; w < nw; ++w) {
      const long lo = static_cast<long>(w) * chunk;
      const long hi = std::min(n_trials, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back(run_range, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  return estimates;
}

EstimateSummary summarize(const std::vector<Vec2>& estimates, long n) {
  if (estimates.empty()) throw Error("summarize: no estimates");
  if (n < 1) throw Error("summarize: n must be >= 1");
  EstimateSummary out;
  out.n_trials = static_cast<long>(estimates.size());

  Vec2 mean = Vec2::Zero();
  for (const Vec2& e : estimates) mean += e;
  mean /= static_cast<double>(out.n_trials);
  out.mean = mean;

  if (out.n_trials > 1) {
    Mat2 acc = Mat2::Zero();
    for (const Vec2& e : estimates) {
      const Vec2 d = e - mean;
      acc += d * d.transpose();
    }
    out.sample_cov = static_cast<double>(n) * acc / static_cast<double>(out.n_trials - 1);
  }
  return out;
}

EstimateSummary simulate(const GaussianScheme& s, long n_trials, std::uint64_t seed,
                         int workers) {
  return summarize(simulate_trials(s, n_trials, seed, workers), s.n);
}

}  // namespace teurkit
