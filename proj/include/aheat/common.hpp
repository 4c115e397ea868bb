#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace aheat {

struct SpaceTimePoint {
  Eigen::VectorXd x;
  double t = 0.0;
};

/// Volume of the unit ball in R^n.
double unit_ball_volume(int n);

/// Surface measure of the unit sphere S^{n-1}, i.e. n * omega_n.
double unit_sphere_area(int n);

double binomial(int n, int k);

/// Gauss-Legendre nodes/weights on [a,b]. Cached per order.
struct GaussRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};
GaussRule gauss_legendre(int order, double a, double b);

/// Counter-based RNG: every draw is a pure function of (key, counter),
/// so streams are reproducible and freely parallelizable.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : key_(seed) {}

  /// uniform in [0,1)
  double uniform() { return to_unit(next()); }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  std::uint64_t bits() { return next(); }
  /// integer in [0, n)
  std::uint64_t below(std::uint64_t n) { return next() % n; }
  /// standard normal via Box-Muller
  double normal();

  /// independent draw addressed by counter, without advancing the stream
  double uniform_at(std::uint64_t counter) const {
    return to_unit(mix(key_ + 0x9e3779b97f4a7c15ULL * (counter + 1)));
  }

 private:
  std::uint64_t next() {
    counter_ += 1;
    return mix(key_ + 0x9e3779b97f4a7c15ULL * counter_);
  }
  static std::uint64_t mix(std::uint64_t z);
  static double to_unit(std::uint64_t z) {
    return static_cast<double>(z >> 11) * 0x1.0p-53;
  }

  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
};

}  // namespace aheat
