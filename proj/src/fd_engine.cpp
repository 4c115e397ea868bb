#include "aheat/fd_engine.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "aheat/common.hpp"

namespace aheat {

namespace {

int grid_points(double extent, double h) {
  const int m = static_cast<int>(std::llround(2.0 * extent / h));
  return m + 1;
}

}  // namespace

double heat_kernel(int n, double dist, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("heat_kernel: t <= 0");
  return std::pow(4.0 * std::numbers::pi * t, -0.5 * n) *
         std::exp(-dist * dist / (4.0 * t));
}

double forward_convolve(const ScalarFn1& u0, double x, double t, int quad) {
  if (t == 0.0) return u0(x);
  const double a = 8.0 * std::sqrt(t);
  const GaussRule rule = gauss_legendre(quad, x - a, x + a);
  double v = 0.0;
  for (int i = 0; i < quad; ++i)
    v += rule.weights[i] * heat_kernel(1, rule.nodes[i] - x, t) * u0(rule.nodes[i]);
  return v;
}

double forward_convolve_2d(const std::function<double(double, double)>& u0,
                           double x, double y, double t, int quad) {
  if (t == 0.0) return u0(x, y);
  const double a = 8.0 * std::sqrt(t);
  const GaussRule rx = gauss_legendre(quad, x - a, x + a);
  const GaussRule ry = gauss_legendre(quad, y - a, y + a);
  double v = 0.0;
  for (int i = 0; i < quad; ++i) {
    double row = 0.0;
    for (int j = 0; j < quad; ++j) {
      const double dx = rx.nodes[i] - x, dy = ry.nodes[j] - y;
      row += ry.weights[j] * heat_kernel(2, std::hypot(dx, dy), t) *
             u0(rx.nodes[i], ry.nodes[j]);
    }
    v += rx.weights[i] * row;
  }
  return v;
}

FdSolution1 forward_solve(const ScalarFn1& u0, const GridSpec& grid, double T,
                          const std::vector<double>& snapshot_times,
                          const ScalarFn2& boundary) {
  const double tau = grid.tau > 0.0 ? grid.tau : grid.h * grid.h / 4.0;
  if (tau > grid.stable_tau(1) * (1.0 + 1e-12))
    throw std::invalid_argument("forward_solve: tau above stability bound h^2/2");
  ScalarFn2 bc = boundary;
  if (!bc) bc = [&u0](double x, double t) { return forward_convolve(u0, x, t); };

  const int m = grid_points(grid.extent, grid.h);
  FdSolution1 sol;
  sol.xs = Eigen::VectorXd::LinSpaced(m, -grid.extent, grid.extent);
  Eigen::VectorXd u(m), next(m);
  for (int i = 0; i < m; ++i) u[i] = u0(sol.xs[i]);

  const int steps = static_cast<int>(std::ceil(T / tau - 1e-12));
  std::vector<int> snap_step;
  for (double st : snapshot_times)
    snap_step.push_back(static_cast<int>(std::llround(st / tau)));

  auto record = [&](int step, const Eigen::VectorXd& v) {
    for (size_t k = 0; k < snap_step.size(); ++k)
      if (snap_step[k] == step) {
        sol.times.push_back(step * tau);
        sol.snapshots.push_back(v);
      }
  };
  record(0, u);
  const double lambda = tau / (grid.h * grid.h);
  for (int s = 1; s <= steps; ++s) {
    const double t = s * tau;
    for (int i = 1; i + 1 < m; ++i)
      next[i] = u[i] + lambda * (u[i + 1] - 2.0 * u[i] + u[i - 1]);
    next[0] = bc(sol.xs[0], t);
    next[m - 1] = bc(sol.xs[m - 1], t);
    u.swap(next);
    record(s, u);
  }
  return sol;
}

FdSolution2 forward_solve_2d(const std::function<double(double, double)>& u0,
                             const GridSpec& grid, double T,
                             const std::vector<double>& snapshot_times,
                             const std::function<double(double, double, double)>&
                                 boundary) {
  const double tau = grid.tau > 0.0 ? grid.tau : grid.h * grid.h / 8.0;
  if (tau > grid.stable_tau(2) * (1.0 + 1e-12))
    throw std::invalid_argument("forward_solve_2d: tau above stability bound h^2/4");
  std::function<double(double, double, double)> bc = boundary;
  if (!bc)
    bc = [&u0](double x, double y, double t) {
      return forward_convolve_2d(u0, x, y, t);
    };

  const int m = grid_points(grid.extent, grid.h);
  FdSolution2 sol;
  sol.xs = Eigen::VectorXd::LinSpaced(m, -grid.extent, grid.extent);
  Eigen::MatrixXd u(m, m), next(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) u(i, j) = u0(sol.xs[i], sol.xs[j]);

  const int steps = static_cast<int>(std::ceil(T / tau - 1e-12));
  std::vector<int> snap_step;
  for (double st : snapshot_times)
    snap_step.push_back(static_cast<int>(std::llround(st / tau)));
  auto record = [&](int step, const Eigen::MatrixXd& v) {
    for (size_t k = 0; k < snap_step.size(); ++k)
      if (snap_step[k] == step) {
        sol.times.push_back(step * tau);
        sol.snapshots.push_back(v);
      }
  };
  record(0, u);
  const double lambda = tau / (grid.h * grid.h);
  for (int s = 1; s <= steps; ++s) {
    const double t = s * tau;
    for (int i = 1; i + 1 < m; ++i)
      for (int j = 1; j + 1 < m; ++j)
        next(i, j) = u(i, j) + lambda * (u(i + 1, j) + u(i - 1, j) + u(i, j + 1) +
                                         u(i, j - 1) - 4.0 * u(i, j));
    for (int i = 0; i < m; ++i) {
      next(i, 0) = bc(sol.xs[i], sol.xs[0], t);
      next(i, m - 1) = bc(sol.xs[i], sol.xs[m - 1], t);
      next(0, i) = bc(sol.xs[0], sol.xs[i], t);
      next(m - 1, i) = bc(sol.xs[m - 1], sol.xs[i], t);
    }
    u.swap(next);
    record(s, u);
  }
  return sol;
}

KernelSpec kernel_bound_constants(int n) {
  KernelSpec ks;
  ks.n = n;
  ks.c1 = unit_ball_volume(n) * std::pow(4.0 * std::numbers::pi, -0.5 * n);
  ks.c2 = 0.25;
  return ks;
}

double kernel_mass(int n, double t, double truncation, int quad) {
  const double a = truncation * std::sqrt(t);
  double inner = 0.0;
  if (n == 1) {
    const GaussRule rule = gauss_legendre(quad, -a, a);
    for (int i = 0; i < quad; ++i)
      inner += rule.weights[i] * heat_kernel(1, rule.nodes[i], t);
  } else if (n == 2) {
    const GaussRule rule = gauss_legendre(quad, 0.0, a);
    for (int i = 0; i < quad; ++i)
      inner += rule.weights[i] * 2.0 * std::numbers::pi * rule.nodes[i] *
               heat_kernel(2, rule.nodes[i], t);
  } else {
    throw std::invalid_argument("kernel_mass: n > 2 not supported");
  }
  // analytic radial tail: 1 - mass(|y| <= a)
  double tail = 0.0;
  if (n == 1)
    tail = std::erfc(truncation / 2.0);
  else
    tail = std::exp(-truncation * truncation / 4.0);
  return inner + tail;
}

std::int64_t kernel_bound_violations(int n, std::int64_t samples, std::uint64_t seed) {
  const KernelSpec ks = kernel_bound_constants(n);
  CounterRng rng(seed);
  std::int64_t bad = 0;
  for (std::int64_t i = 0; i < samples; ++i) {
    const double d = rng.uniform(0.0, 10.0);
    const double t = std::exp(rng.uniform(std::log(1e-3), std::log(1e3)));
    const double lhs = heat_kernel(n, d, t);
    const double ball = unit_ball_volume(n) * std::pow(std::sqrt(t), n);
    const double rhs = ks.c1 / ball * std::exp(-ks.c2 * d * d / t);
    if (lhs > rhs * (1.0 + 1e-12)) ++bad;
  }
  return bad;
}

double liyau_kernel_analytic(int n, const Eigen::VectorXd& x, double t) {
  // |grad log G|^2 - dt log G with grad log G = -x/(2t),
  // dt log G = -n/(2t) + |x|^2/(4t^2)
  const double g2 = x.squaredNorm() / (4.0 * t * t);
  const double dt = -n / (2.0 * t) + x.squaredNorm() / (4.0 * t * t);
  return g2 - dt;
}

double liyau_kernel_fd(int n, const Eigen::VectorXd& x, double t, double step) {
  auto logG = [&](const Eigen::VectorXd& y, double s) {
    return -0.5 * n * std::log(4.0 * std::numbers::pi * s) -
           y.squaredNorm() / (4.0 * s);
  };
  double g2 = 0.0;
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd xp = x, xm = x;
    xp[i] += step;
    xm[i] -= step;
    const double gi = (logG(xp, t) - logG(xm, t)) / (2.0 * step);
    g2 += gi * gi;
  }
  const double dt = (logG(x, t + step) - logG(x, t - step)) / (2.0 * step);
  return g2 - dt;
}

ForwardBoundResult check_forward_bound(const ScalarFn1& u0, double q,
                                       double xmax, double tmax, int nx, int nt) {
  ForwardBoundResult res;
  for (int i = 0; i < nx; ++i) {
    const double x = -xmax + 2.0 * xmax * i / (nx - 1);
    for (int j = 0; j < nt; ++j) {
      const double t = tmax * j / (nt - 1);
      const double u = t == 0.0 ? u0(x) : forward_convolve(u0, x, t);
      const double ratio =
          std::abs(u) / std::pow(std::abs(x) + std::sqrt(t) + 1.0, q);
      if (ratio > res.sup_ratio) {
        res.sup_ratio = ratio;
        res.arg_x = x;
        res.arg_t = t;
      }
    }
  }
  return res;
}

double mean_value_check(const SpaceTimeFn& u, const Cube& cube, int panels) {
  const int n = cube.dim();
  const double r = cube.r;
  // composite Gauss over the ball x time; |u| integrand
  const GaussRule unit = gauss_legendre(4, 0.0, 1.0);
  auto composite = [&](double a, double b, const std::function<double(double)>& f) {
    const double w = (b - a) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p)
      for (int i = 0; i < 4; ++i)
        total += w * unit.weights[i] * f(a + (p + unit.nodes[i]) * w);
    return total;
  };

  double integral = 0.0;
  const double t0 = cube.center.t;
  if (n == 1) {
    const double c = cube.center.x[0];
    integral = composite(c - r, c + r, [&](double x) {
      return composite(t0 - r * r, t0, [&](double t) {
        Eigen::VectorXd xv(1);
        xv << x;
        return std::abs(u(xv, t));
      });
    });
  } else if (n == 2) {
    integral = composite(0.0, r, [&](double rho) {
      return rho * composite(0.0, 2.0 * std::numbers::pi, [&](double th) {
        Eigen::VectorXd xv(2);
        xv << cube.center.x[0] + rho * std::cos(th),
            cube.center.x[1] + rho * std::sin(th);
        return composite(t0 - r * r, t0, [&](double t) { return std::abs(u(xv, t)); });
      });
    });
  } else {
    throw std::invalid_argument("mean_value_check: n > 2 not supported");
  }
  const double ball = unit_ball_volume(n) * std::pow(r, n);
  return std::abs(u(cube.center.x, t0)) * ball * r * r / integral;
}

CaccioppoliResult caccioppoli_check(const MultiPoly& u, const Rational& R) {
  if (u.dim() != 1)
    throw std::invalid_argument("caccioppoli_check: exact route is n = 1 only");
  const MultiPoly lap = laplacian(u);
  const Rational R2 = R * R;
  auto box = [&](const Rational& rad) {
    return std::vector<std::pair<Rational, Rational>>{{-rad, rad}};
  };
  CaccioppoliResult res;
  const Rational lhs = (lap * lap).integrate_box(box(R), {-R2, R2});
  const Rational rhs =
      (u * u).integrate_box(box(2 * R), {-Rational(4) * R2, Rational(4) * R2});
  res.lhs = lhs.get_d();
  res.rhs_int = rhs.get_d();
  const Rational c0 = lhs * R2 * R2 / rhs;
  res.c0 = c0.get_d();
  return res;
}

HighDtResult high_dt_vanishing(const MultiPoly& u, int k,
                               const std::vector<Rational>& radii) {
  if (u.dim() != 1)
    throw std::invalid_argument("high_dt_vanishing: exact route is n = 1 only");
  HighDtResult res;
  MultiPoly dtk = u;
  for (int i = 0; i < k; ++i) dtk = dtk.derivative_t();
  res.symbolic_zero = dtk.is_zero();
  res.slope_cap = 2.0 * u.parabolic_degree() - 4.0 * k;

  // central k-th time difference at (0,0); annihilates t-degree < k exactly
  res.fd_step = std::pow(std::numeric_limits<double>::epsilon(), 1.0 / (k + 2));
  const Eigen::VectorXd origin = Eigen::VectorXd::Zero(1);
  double diff = 0.0;
  for (int i = 0; i <= k; ++i) {
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    diff += sign * binomial(k, i) *
            u.eval_double(origin, (0.5 * k - i) * res.fd_step);
  }
  res.fd_estimate = diff / std::pow(res.fd_step, k);

  const MultiPoly usq = u * u;
  Rational two_k(1);
  for (int i = 0; i < k; ++i) two_k *= 2;
  for (const Rational& R : radii) {
    const Rational big = two_k * R;
    const Rational big2 = big * big, R2 = R * R;
    const Rational window =
        usq.integrate_box({{-big, big}}, {-big2, big2});
    Rational denom = R2 * R2;  // R^4
    for (int i = 1; i < k; ++i) denom *= R2 * R2;
    const Rational cube_vol = 2 * R * 2 * R2;
    HighDtRow row;
    row.radius = R.get_d();
    row.window_sq = (window / (denom * cube_vol)).get_d();
    res.rows.push_back(row);
  }

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& row : res.rows) {
    const double lx = std::log(row.radius), ly = std::log(row.window_sq);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const int cnt = static_cast<int>(res.rows.size());
  res.fitted_slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  return res;
}

double richardson_slope(const std::vector<double>& hs,
                        const std::vector<double>& errors) {
  if (hs.size() != errors.size() || hs.size() < 2)
    throw std::invalid_argument("richardson_slope: need matched sweeps");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < hs.size(); ++i) {
    const double lx = std::log(hs[i]), ly = std::log(errors[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double n = static_cast<double>(hs.size());
  return (n * sxy - sx * sx / n * 0.0 - sx * sy / n * 0.0 - sx * sy) /
         (n * sxx - sx * sx);
}

}  // namespace aheat
