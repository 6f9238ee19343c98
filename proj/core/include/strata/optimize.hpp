#ifndef STRATA_OPTIMIZE_HPP
#define STRATA_OPTIMIZE_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace strata {

/// Deterministic uniform generator (mt19937_64 with an explicit mapping to
/// doubles, so results are reproducible across standard libraries).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}
  std::uint64_t nextU64();
  double uniform();                      // [0, 1)
  double uniform(double lo, double hi);  // [lo, hi)
  double normal();

 private:
  std::uint64_t state_;
  bool haveSpare_ = false;
  double spare_ = 0.0;
};

/// Halton low-discrepancy point, coordinates in (0, 1).
std::vector<double> haltonPoint(int index, int dim);

struct Objective {
  int dim = 0;
  std::function<double(std::span<const double>)> value;
  std::function<void(std::span<const double>, std::span<double>)> gradient;
};

/// Constraint manifold: free space, or the weighted sphere
/// sum_i w_i x_i^2 = r^2 (weights empty means all ones).
struct Manifold {
  enum Kind { Free, Sphere } kind = Free;
  double radius = 1.0;
  std::vector<double> weights;

  static Manifold free() { return {}; }
  static Manifold sphere(double r, std::vector<double> w = {}) {
    Manifold m;
    m.kind = Sphere;
    m.radius = r;
    m.weights = std::move(w);
    return m;
  }
};

struct LocalResult {
  std::vector<double> x;
  double value = 0.0;
  double gradNorm = 0.0;
  int iterations = 0;
};

/// Projected gradient descent with Armijo backtracking, finished by damped
/// Newton steps on a finite-difference Hessian of the analytic gradient.
LocalResult minimizeLocal(const Objective& obj, std::span<const double> x0,
                          const Manifold& m, int maxIter = 600);

}  // namespace strata

#endif  // STRATA_OPTIMIZE_HPP
