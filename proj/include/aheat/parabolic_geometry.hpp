#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "aheat/common.hpp"

namespace aheat {

/// Parabolic distance d(x,y) + sqrt(|t-s|).
double dp(const SpaceTimePoint& a, const SpaceTimePoint& b);

/// Truncated backward paraboloid { (y,s) : dp((y,s),(vertex)) <= r, s <= t }.
struct Paraboloid {
  SpaceTimePoint vertex;
  double r = 1.0;

  int dim() const { return static_cast<int>(vertex.x.size()); }
  bool contains(const SpaceTimePoint& p) const;

  static Paraboloid at_origin(int n, double r);
};

/// Parabolic cube { (y,s) : d(x,y) < r, s in [t - r^2, t] }.
struct Cube {
  SpaceTimePoint center;
  double r = 1.0;

  int dim() const { return static_cast<int>(center.x.size()); }
  double volume() const;  // omega_n r^n * r^2
};

/// Closed form 2 omega_n r^{n+2} / ((n+1)(n+2)).
double volume_paraboloid(const Paraboloid& p);

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::int64_t samples = 0;
};
McEstimate volume_mc(const Paraboloid& p, std::int64_t samples, std::uint64_t seed);

struct RatioBounds {
  double ratio = 0.0;  // |P_r| / |Q_r|, independent of r
  double lower = 0.0;  // d0^{-1} 2^{-(eta+2)}, d0 = 2^n, eta = n
  double upper = 1.0;
};
RatioBounds volume_ratio_bounds(int n);

struct DoublingCheck {
  double normalized_ratio = 0.0;  // (|P_{r2}|/r2^{eta+2}) / (|P_{r1}|/r1^{eta+2})
  double ball_ratio = 0.0;        // |B(0,2r)| / |B(0,r)| = 2^n
};
DoublingCheck doubling_check(int n, double r1, double r2);

using SpaceTimeFn = std::function<double(const Eigen::VectorXd&, double)>;

struct QuadratureSpec {
  int radial = 24;
  int sphere = 24;  // ignored for n=1 (two antipodal points)
  int time = 16;
};

struct IntegralEstimate {
  double value = 0.0;
  double error = 0.0;  // |value - half-resolution value|
};

/// Fibered rule: Gauss in radius, uniform/product rule on the sphere, Gauss
/// in time on [t0 - (r-rho)^2, t0] per radius. Exact for polynomial
/// integrands once the orders cover the degree.
IntegralEstimate integrate_over_paraboloid(const SpaceTimeFn& f, const Paraboloid& p,
                                           const QuadratureSpec& spec = {});

struct GramMatrix {
  Eigen::MatrixXd m;
  std::vector<std::string> labels;
  double quad_error = 0.0;

  double min_eigenvalue() const;
  double max_eigenvalue() const;
  double det() const { return m.determinant(); }
  double trace() const { return m.trace(); }
};

GramMatrix gram(const std::vector<SpaceTimeFn>& basis,
                const std::vector<std::string>& labels, const Paraboloid& region,
                const QuadratureSpec& spec = {});

struct Lemma31Result {
  double lhs = 0.0;      // sum_i int_{P_R} u_i^2
  double sup_term = 0.0; // lambda_max of the Gram on P_{(1+eps)R}
  double rhs = 0.0;      // eps^{-(eta+1)} * sup_term
  double ratio = 0.0;    // lhs / rhs
};
Lemma31Result lemma31_check(const std::vector<SpaceTimeFn>& basis,
                            const SpaceTimePoint& vertex, double R, double eps,
                            const QuadratureSpec& spec = {});

struct WeightIntegralResult {
  double value = 0.0;        // I = int_{P_R} [R(1+eps) - dp]^{-(eta+2)}
  double bound_ratio = 0.0;  // I * R^eta / (eps^{-(eta+1)} |B(0,R)|)
};
WeightIntegralResult weight_integral_I(int n, double R, double eps);

struct IterationRow {
  double scale = 0.0;        // R_j = beta^j R0
  double trace_rel = 0.0;    // tr of A_{R_j} wrt A_{beta R_j}
  double det_abs = 0.0;      // det of the Gram at R_j
  double det_rel = 0.0;      // det_{R_0} A_{R_j}
};

struct IterationLog {
  std::vector<IterationRow> rows;
  double fitted_exponent = 0.0;  // log-log slope of det_abs vs scale
  double exponent_cap = 0.0;     // k (2q + eta + 2 + delta) + 0.5
};

IterationLog trace_det_iteration(const std::vector<SpaceTimeFn>& basis,
                                 const SpaceTimePoint& vertex, double R0,
                                 double beta, double q, double delta, int steps,
                                 const QuadratureSpec& spec = {});

}  // namespace aheat
