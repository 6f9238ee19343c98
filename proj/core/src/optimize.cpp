#include "strata/optimize.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace strata {

std::uint64_t Rng::nextU64() {
  // splitmix64; stable across platforms.
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double Rng::uniform() { return static_cast<double>(nextU64() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() {
  if (haveSpare_) {
    haveSpare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = uniform(-1.0, 1.0);
    v = uniform(-1.0, 1.0);
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  haveSpare_ = true;
  return u * f;
}

std::vector<double> haltonPoint(int index, int dim) {
  static const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  std::vector<double> p(dim);
  for (int d = 0; d < dim; ++d) {
    const int base = primes[d % 12];
    double f = 1.0, r = 0.0;
    int i = index + 1;
    while (i > 0) {
      f /= base;
      r += f * (i % base);
      i /= base;
    }
    p[d] = r;
  }
  return p;
}

namespace {

void retract(std::vector<double>& x, const Manifold& m) {
  if (m.kind != Manifold::Sphere) return;
  double q = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double w = m.weights.empty() ? 1.0 : m.weights[i];
    q += w * x[i] * x[i];
  }
  if (q <= 0.0) {
    // Degenerate start; nudge off the tip.
    x.assign(x.size(), 0.0);
    x[0] = m.radius / std::sqrt(m.weights.empty() ? 1.0 : m.weights[0]);
    return;
  }
  const double s = m.radius / std::sqrt(q);
  for (auto& xi : x) xi *= s;
}

// Projects g onto the tangent space of the weighted sphere at x.
void projectTangent(std::vector<double>& g, std::span<const double> x, const Manifold& m) {
  if (m.kind != Manifold::Sphere) return;
  std::vector<double> nrm(x.size());
  double gn = 0.0, nn = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double w = m.weights.empty() ? 1.0 : m.weights[i];
    nrm[i] = w * x[i];
    gn += g[i] * nrm[i];
    nn += nrm[i] * nrm[i];
  }
  if (nn <= 0.0) return;
  const double f = gn / nn;
  for (std::size_t i = 0; i < x.size(); ++i) g[i] -= f * nrm[i];
}

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

// Orthonormal basis of the sphere tangent space (or the full space).
Eigen::MatrixXd tangentBasis(std::span<const double> x, const Manifold& m) {
  const int n = static_cast<int>(x.size());
  if (m.kind != Manifold::Sphere) return Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd nrm(n);
  for (int i = 0; i < n; ++i)
    nrm(i) = (m.weights.empty() ? 1.0 : m.weights[i]) * x[i];
  nrm.normalize();
  Eigen::MatrixXd proj = Eigen::MatrixXd::Identity(n, n) - nrm * nrm.transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(proj, Eigen::ComputeFullU);
  return svd.matrixU().leftCols(n - 1);
}

}  // namespace

LocalResult minimizeLocal(const Objective& obj, std::span<const double> x0,
                          const Manifold& m, int maxIter) {
  const int n = obj.dim;
  std::vector<double> x(x0.begin(), x0.end());
  retract(x, m);
  std::vector<double> g(n), xTrial(n);
  double fx = obj.value(x);
  double step = 1.0;
  int iter = 0;
  double gnorm = 0.0;

  for (; iter < maxIter; ++iter) {
    obj.gradient(x, g);
    projectTangent(g, x, m);
    gnorm = norm2(g);
    const double scale = std::max(1.0, std::abs(fx));
    if (gnorm <= 1e-13 * scale) break;

    bool moved = false;
    double eta = std::min(step * 4.0, 1e6);
    for (int bt = 0; bt < 60; ++bt) {
      for (int i = 0; i < n; ++i) xTrial[i] = x[i] - eta * g[i];
      retract(xTrial, m);
      const double ft = obj.value(xTrial);
      if (ft <= fx - 1e-4 * eta * gnorm * gnorm) {
        x = xTrial;
        fx = ft;
        step = eta;
        moved = true;
        break;
      }
      eta *= 0.5;
    }
    if (!moved) break;
  }

  // Damped Newton polish in tangent coordinates; the Hessian comes from
  // central differences of the analytic gradient.
  for (int round = 0; round < 12; ++round) {
    obj.gradient(x, g);
    projectTangent(g, x, m);
    gnorm = norm2(g);
    const double scale = std::max(1.0, std::abs(fx));
    if (gnorm <= 1e-14 * scale) break;
    Eigen::MatrixXd B = tangentBasis(x, m);
    const int t = static_cast<int>(B.cols());
    Eigen::VectorXd gu(t);
    for (int j = 0; j < t; ++j) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += g[i] * B(i, j);
      gu(j) = s;
    }
    const double h = 1e-6 * std::max(1.0, norm2(x));
    Eigen::MatrixXd H(t, t);
    std::vector<double> xp(n), gp(n), gm(n);
    for (int j = 0; j < t; ++j) {
      for (int i = 0; i < n; ++i) xp[i] = x[i] + h * B(i, j);
      retract(xp, m);
      obj.gradient(xp, gp);
      projectTangent(gp, xp, m);
      for (int i = 0; i < n; ++i) xp[i] = x[i] - h * B(i, j);
      retract(xp, m);
      obj.gradient(xp, gm);
      projectTangent(gm, xp, m);
      for (int i2 = 0; i2 < t; ++i2) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += (gp[i] - gm[i]) * B(i, i2);
        H(i2, j) = s / (2.0 * h);
      }
    }
    Eigen::MatrixXd Hs = 0.5 * (H + H.transpose());
    bool improved = false;
    double lambda = 0.0;
    for (int attempt = 0; attempt < 8; ++attempt) {
      Eigen::MatrixXd Hd = Hs + lambda * Eigen::MatrixXd::Identity(t, t);
      Eigen::LDLT<Eigen::MatrixXd> ldlt(Hd);
      if (ldlt.info() == Eigen::Success) {
        Eigen::VectorXd du = ldlt.solve(-gu);
        for (int i = 0; i < n; ++i) {
          double s = 0.0;
          for (int j = 0; j < t; ++j) s += B(i, j) * du(j);
          xTrial[i] = x[i] + s;
        }
        retract(xTrial, m);
        const double ft = obj.value(xTrial);
        if (ft <= fx + 1e-12 * std::max(1.0, std::abs(fx))) {
          x = xTrial;
          fx = ft;
          improved = true;
          break;
        }
      }
      lambda = (lambda == 0.0) ? 1e-8 : lambda * 100.0;
    }
    if (!improved) break;
  }

  obj.gradient(x, g);
  projectTangent(g, x, m);
  LocalResult r;
  r.x = std::move(x);
  r.value = fx;
  r.gradNorm = norm2(g);
  r.iterations = iter;
  return r;
}

}  // namespace strata
