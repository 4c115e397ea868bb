#include "aheat/ancient_eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace aheat {

namespace {

double guarded_exp(double e) {
  if (e > kExpOverflowGuard)
    throw std::range_error("eval: atom exponent exceeds overflow guard");
  return std::exp(e);
}

}  // namespace

double eval(const AncientSolution& sol, const Eigen::VectorXd& x, double t) {
  return eval<double>(sol, x, t);
}

Eigen::VectorXd eval_grad(const AncientSolution& sol, const Eigen::VectorXd& x,
                          double t) {
  Eigen::VectorXd g = Eigen::VectorXd::Zero(sol.measure.dim);
  for (const auto& a : sol.measure.atoms) {
    const double rs = std::sqrt(a.s);
    g += (a.w * rs * guarded_exp(detail::atom_exponent(a, x, t))) * a.xi;
  }
  return g;
}

double eval_dt(const AncientSolution& sol, const Eigen::VectorXd& x, double t,
               int k) {
  if (k < 0) throw std::invalid_argument("eval_dt: negative order");
  double u = 0.0;
  for (const auto& a : sol.measure.atoms) {
    const double sk = (k == 0) ? 1.0 : std::pow(a.s, k);
    u += a.w * sk * guarded_exp(detail::atom_exponent(a, x, t));
  }
  return u;
}

double eval_lap(const AncientSolution& sol, const Eigen::VectorXd& x, double t) {
  double u = 0.0;
  for (const auto& a : sol.measure.atoms)
    u += a.w * a.s * a.xi.squaredNorm() *
         guarded_exp(detail::atom_exponent(a, x, t));
  return u;
}

HeatResidual heat_residual(const AncientSolution& sol,
                           const std::vector<SpaceTimePoint>& samples) {
  HeatResidual r;
  for (const auto& p : samples) {
    const double ut = eval_dt(sol, p.x, p.t, 1);
    const double lap = eval_lap(sol, p.x, p.t);
    const double abs = std::abs(ut - lap);
    r.max_abs = std::max(r.max_abs, abs);
    r.max_rel = std::max(r.max_rel, abs / std::max(std::abs(ut), 1.0));
  }
  return r;
}

CmReport check_cm(const std::function<double(double)>& f,
                  const std::vector<double>& t_grid, int max_order, double step,
                  double tol_scale) {
  if (max_order < 1) throw std::invalid_argument("check_cm: max_order < 1");
  if (step <= 0.0) throw std::invalid_argument("check_cm: step <= 0");
  for (double t : t_grid)
    if (t - max_order * step <= 0.0)
      throw std::invalid_argument("check_cm: t - K*h <= 0 on grid");

  CmReport rep;
  rep.max_order = max_order;
  rep.step = step;
  rep.t_grid = t_grid;
  rep.order_min.assign(max_order, std::numeric_limits<double>::infinity());
  rep.worst_margin = std::numeric_limits<double>::infinity();
  for (double t : t_grid) {
    const double tol = tol_scale * std::abs(f(t));
    for (int k = 1; k <= max_order; ++k) {
      // (-1)^k D_h^k f at base t - k*h; evaluation points stay in (0, t]
      double v = 0.0;
      for (int i = 0; i <= k; ++i) {
        const double sign = (i % 2 == 0) ? 1.0 : -1.0;
        v += sign * binomial(k, i) * f(t - k * step + i * step);
      }
      rep.order_min[k - 1] = std::min(rep.order_min[k - 1], v);
      rep.worst_margin = std::min(rep.worst_margin, v + tol);
    }
  }
  rep.pass = rep.worst_margin >= 0.0;
  return rep;
}

CmReport check_cm(const AncientSolution& sol, const Eigen::VectorXd& x,
                  const std::vector<double>& t_grid, int max_order,
                  double step) {
  if (t_grid.empty()) throw std::invalid_argument("check_cm: empty grid");
  if (step == 0.0)
    step = *std::min_element(t_grid.begin(), t_grid.end()) / (2.0 * max_order);
  auto f = [&](double t) { return eval(sol, x, -t); };
  return check_cm(f, t_grid, max_order, step);
}

double li_yau_quantity(double u, const Eigen::VectorXd& grad_u, double u_t,
                       double alpha) {
  if (!(u > 0.0)) throw std::domain_error("li_yau_quantity: u <= 0");
  return alpha * grad_u.squaredNorm() / (u * u) - u_t / u;
}

double li_yau_quantity(const AncientSolution& sol, const Eigen::VectorXd& x,
                       double t, double alpha) {
  return li_yau_quantity(eval(sol, x, t), eval_grad(sol, x, t),
                         eval_dt(sol, x, t, 1), alpha);
}

}  // namespace aheat
