#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <vector>

#include "aheat/multipoly.hpp"
#include "aheat/parabolic_geometry.hpp"

namespace aheat {

using ScalarFn1 = std::function<double(double)>;                  // u0(x), n=1
using ScalarFn2 = std::function<double(double, double)>;          // u0(x,y) or u(x,t)

/// Uniform grid on [-extent, extent]^n with explicit Euler stepping.
struct GridSpec {
  double extent = 1.0;
  double h = 0.01;
  double tau = 0.0;  // 0: h^2/(4n)

  double stable_tau(int n) const { return h * h / (2.0 * n); }
};

struct FdSolution1 {
  Eigen::VectorXd xs;
  std::vector<double> times;
  std::vector<Eigen::VectorXd> snapshots;
};

struct FdSolution2 {
  Eigen::VectorXd xs;  // same grid per axis
  std::vector<double> times;
  std::vector<Eigen::MatrixXd> snapshots;  // (i,j) -> (x_i, y_j)
};

/// Explicit scheme with Dirichlet boundary values taken from `boundary`
/// (defaults to the kernel-convolution solution of the same data).
FdSolution1 forward_solve(const ScalarFn1& u0, const GridSpec& grid, double T,
                          const std::vector<double>& snapshot_times,
                          const ScalarFn2& boundary = nullptr);
FdSolution2 forward_solve_2d(const std::function<double(double, double)>& u0,
                             const GridSpec& grid, double T,
                             const std::vector<double>& snapshot_times,
                             const std::function<double(double, double, double)>&
                                 boundary = nullptr);

/// Gaussian kernel value for |x-y| = dist.
double heat_kernel(int n, double dist, double t);

/// (G * u0)(x, t), truncating at |y - x| <= 8 sqrt(t). n = 1, 2.
double forward_convolve(const ScalarFn1& u0, double x, double t, int quad = 96);
double forward_convolve_2d(const std::function<double(double, double)>& u0,
                           double x, double y, double t, int quad = 72);

struct KernelSpec {
  int n = 1;
  double c1 = 0.0;  // omega_n (4 pi)^{-n/2}
  double c2 = 0.25;
};
KernelSpec kernel_bound_constants(int n);

/// Quadrature mass of the kernel over the truncated domain plus the analytic
/// Gaussian tail.
double kernel_mass(int n, double t, double truncation = 8.0, int quad = 200);

/// Count of samples where G exceeds (c1/|B(x,sqrt t)|) exp(-c2 d^2/t) by more
/// than a 1e-12 relative roundoff allowance.
std::int64_t kernel_bound_violations(int n, std::int64_t samples, std::uint64_t seed);

/// |grad log G|^2 - dt log G by central differences; equals n/(2t) exactly.
double liyau_kernel_fd(int n, const Eigen::VectorXd& x, double t, double step = 1e-4);
double liyau_kernel_analytic(int n, const Eigen::VectorXd& x, double t);

struct ForwardBoundResult {
  double sup_ratio = 0.0;  // sup |u| / (|x| + sqrt(t) + 1)^q
  double arg_x = 0.0;
  double arg_t = 0.0;
};
ForwardBoundResult check_forward_bound(const ScalarFn1& u0, double q,
                                       double xmax, double tmax, int nx, int nt);

/// Observed mean-value constant |u(center)| |B| r^2 / int_{Q_r} |u| for a
/// solution sampled on the parabolic cube.
double mean_value_check(const SpaceTimeFn& u, const Cube& cube, int panels = 64);

struct CaccioppoliResult {
  double lhs = 0.0;      // int_{Q0_R} (lap u)^2, exact
  double rhs_int = 0.0;  // int_{Q0_{2R}} u^2, exact
  double c0 = 0.0;       // lhs R^4 / rhs_int
};
/// Exact rational integrals over the full cubes centered at the space-time
/// origin; n = 1 only.
CaccioppoliResult caccioppoli_check(const MultiPoly& u, const Rational& R);

struct HighDtRow {
  double radius = 0.0;
  double window_sq = 0.0;  // int_{Q0_{2^k R}} u^2 / (R^{4k} |Q0_R|)
};
struct HighDtResult {
  bool symbolic_zero = false;
  double fd_estimate = 0.0;  // central k-th time difference at (0,0)
  double fd_step = 0.0;
  std::vector<HighDtRow> rows;
  double fitted_slope = 0.0;  // log-log slope of window_sq vs radius
  double slope_cap = 0.0;     // 2q - 4k
};
/// n = 1 caloric polynomial input; k-th time derivative with k > q/2.
HighDtResult high_dt_vanishing(const MultiPoly& u, int k,
                               const std::vector<Rational>& radii);

/// log2(err(2h)/err(h)) regression across a resolution sweep.
double richardson_slope(const std::vector<double>& hs,
                        const std::vector<double>& errors);

}  // namespace aheat
