#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include "aheat/common.hpp"
#include "aheat/spectral_measure.hpp"

namespace aheat {

/// Measure-induced ancient solution
///   u(x,t) = sum_j w_j exp(t*s_j + sqrt(s_j) * x.dot(xi_j)),
/// positive on R^n x (-inf,0] and smooth; forward times are allowed since
/// each atom is an eternal solution.
struct AncientSolution {
  SpectralMeasure measure;
};

/// Largest per-atom exponent allowed before exp() is refused.
inline constexpr double kExpOverflowGuard = 700.0;

namespace detail {
template <typename Scalar>
Scalar atom_exponent(const SpectralAtom& a, const Eigen::VectorXd& x, Scalar t) {
  return t * a.s + std::sqrt(a.s) * x.dot(a.xi);
}
}  // namespace detail

/// Evaluate u(x,t). Scalar may be double or std::complex<double>; complex t
/// is what the Bromwich contour feeds in. Throws std::range_error when an
/// atom exponent exceeds the overflow guard.
template <typename Scalar>
Scalar eval(const AncientSolution& sol, const Eigen::VectorXd& x, Scalar t) {
  Scalar u{};
  for (const auto& a : sol.measure.atoms) {
    const Scalar e = detail::atom_exponent(a, x, t);
    if (std::real(std::complex<double>(e)) > kExpOverflowGuard)
      throw std::range_error("eval: atom exponent exceeds overflow guard");
    u += a.w * std::exp(e);
  }
  return u;
}

double eval(const AncientSolution& sol, const Eigen::VectorXd& x, double t);
Eigen::VectorXd eval_grad(const AncientSolution& sol, const Eigen::VectorXd& x, double t);
/// k-th time derivative, term-wise analytic: sum_j w_j s_j^k exp(...).
double eval_dt(const AncientSolution& sol, const Eigen::VectorXd& x, double t, int k);
/// Laplacian via the per-atom factor s_j * |xi_j|^2.
double eval_lap(const AncientSolution& sol, const Eigen::VectorXd& x, double t);

struct HeatResidual {
  double max_abs = 0.0;
  double max_rel = 0.0;  // |dt u - lap u| / max(|dt u|, 1)
};
HeatResidual heat_residual(const AncientSolution& sol,
                           const std::vector<SpaceTimePoint>& samples);

/// Forward-difference complete-monotonicity report for f(t) = u(x,-t).
struct CmReport {
  int max_order = 0;
  double step = 0.0;
  std::vector<double> t_grid;
  std::vector<double> order_min;    // min over grid of (-1)^k D_h^k f, k=1..K
  double worst_margin = 0.0;        // most negative value of (value + tol); >= 0 iff pass
  bool pass = false;
};

/// Checks (-1)^k D_h^k f >= -tol_scale*|f(t)| at base points t - k*h for
/// every grid t and 1 <= k <= K. Requires t - K*h > 0 on the whole grid.
CmReport check_cm(const std::function<double(double)>& f,
                  const std::vector<double>& t_grid, int max_order, double step,
                  double tol_scale = 1e-10);
CmReport check_cm(const AncientSolution& sol, const Eigen::VectorXd& x,
                  const std::vector<double>& t_grid, int max_order = 8,
                  double step = 0.0 /* 0: min(t)/2K */);

/// alpha*|grad u|^2/u^2 - u_t/u from point values; throws on u <= 0.
double li_yau_quantity(double u, const Eigen::VectorXd& grad_u, double u_t,
                       double alpha);
double li_yau_quantity(const AncientSolution& sol, const Eigen::VectorXd& x,
                       double t, double alpha = 0.5);

}  // namespace aheat
