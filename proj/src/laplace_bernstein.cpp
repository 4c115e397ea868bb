#include "aheat/laplace_bernstein.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace aheat {

using cplx = std::complex<double>;

SampledFunction SampledFunction::tabulate(const std::function<double(double)>& fn,
                                          const std::vector<double>& t) {
  SampledFunction s;
  s.t = t;
  s.f.reserve(t.size());
  for (double ti : t) s.f.push_back(fn(ti));
  return s;
}

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double fa, double fm, double fb, double whole,
                        double eps, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * eps)
    return left + right + delta / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double rel_tol, int depth, int panels) {
  // composite pass for the scale, then adaptive refinement per panel
  const double w = (b - a) / panels;
  std::vector<double> coarse(panels);
  double scale = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double pa = a + i * w, pb = pa + w, pm = 0.5 * (pa + pb);
    coarse[i] = w / 6.0 * (f(pa) + 4.0 * f(pm) + f(pb));
    scale += std::abs(coarse[i]);
  }
  const double eps = rel_tol * std::max(scale, 1e-300) / panels;
  double total = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double pa = a + i * w, pb = pa + w, pm = 0.5 * (pa + pb);
    total += adaptive_simpson(f, pa, pb, f(pa), f(pm), f(pb), coarse[i], eps,
                              depth);
  }
  return total;
}

}  // namespace

double laplace_forward(const std::function<double(double)>& g, double t,
                       const ForwardOptions& opt) {
  if (!(t > 0.0)) throw std::invalid_argument("laplace_forward: t <= 0");
  const double cutoff = opt.tail_exponent / t;
  auto integrand = [&](double s) { return std::exp(-t * s) * g(s); };
  const double value =
      integrate_adaptive(integrand, 0.0, cutoff, opt.rel_tol, opt.max_depth, 512);
  // tail sanity: the damped integrand must be negligible at the cutoff
  const double edge = std::abs(integrand(cutoff)) + std::abs(integrand(0.97 * cutoff));
  if (edge > 1e-8 * std::max(std::abs(value), 1.0))
    throw std::runtime_error(
        "laplace_forward: integrand has not decayed at the truncation point "
        "(growth too fast for this t)");
  return value;
}

InvertMethod invert_method_from_name(const std::string& name) {
  if (name == "dehoog") return InvertMethod::DeHoog;
  if (name == "euler") return InvertMethod::Euler;
  if (name == "talbot") return InvertMethod::Talbot;
  throw std::invalid_argument("unknown inversion method: " + name);
}

std::string invert_method_name(InvertMethod m) {
  switch (m) {
    case InvertMethod::DeHoog: return "dehoog";
    case InvertMethod::Euler: return "euler";
    case InvertMethod::Talbot: return "talbot";
  }
  return "?";
}

namespace {

double require_finite(double v, const char* method) {
  if (!std::isfinite(v))
    throw std::runtime_error(std::string(method) +
                             ": transform not evaluable on the contour");
  return v;
}

// de Hoog, Knight & Stokes: Fourier-series Bromwich sum accelerated by the
// quotient-difference continued fraction, evaluated at z = exp(i pi t / T).
double invert_dehoog(const Transform& F, double t, int M, double T, double tol,
                     double shift) {
  const int N = 2 * M + 1;
  const double gamma = shift - std::log(tol) / (2.0 * T);
  std::vector<cplx> a(N);
  for (int k = 0; k < N; ++k)
    a[k] = F(cplx(gamma, k * std::numbers::pi / T));
  a[0] *= 0.5;

  std::vector<std::vector<cplx>> e(N + 1, std::vector<cplx>(M + 1, cplx(0)));
  std::vector<std::vector<cplx>> q(N, std::vector<cplx>(M + 1, cplx(0)));
  for (int k = 0; k + 1 < N; ++k) q[k][1] = a[k + 1] / a[k];
  for (int r = 1; r <= M; ++r) {
    for (int k = 0; k < N - 2 * r; ++k)
      e[k][r] = q[k + 1][r] - q[k][r] + e[k + 1][r - 1];
    if (r < M)
      for (int k = 0; k < N - 2 * r - 1; ++k)
        q[k][r + 1] = q[k + 1][r] * e[k + 1][r] / e[k][r];
  }
  std::vector<cplx> d(N);
  d[0] = a[0];
  for (int r = 1; r <= M; ++r) {
    d[2 * r - 1] = -q[0][r];
    d[2 * r] = -e[0][r];
  }

  const cplx z = std::exp(cplx(0.0, std::numbers::pi * t / T));
  std::vector<cplx> A(N + 1), B(N + 1);
  A[0] = cplx(0);  // A_{-1}
  B[0] = cplx(1);
  A[1] = d[0];     // A_0
  B[1] = cplx(1);
  for (int n = 1; n < N; ++n) {
    A[n + 1] = A[n] + d[n] * z * A[n - 1];
    B[n + 1] = B[n] + d[n] * z * B[n - 1];
  }
  const cplx h2M = 0.5 * (1.0 + (d[N - 2] - d[N - 1]) * z);
  const cplx rem = -h2M * (1.0 - std::sqrt(1.0 + d[N - 1] * z / (h2M * h2M)));
  const cplx A2M = A[N - 1] + rem * A[N - 2];
  const cplx B2M = B[N - 1] + rem * B[N - 2];
  return require_finite(std::exp(gamma * t) / T * (A2M / B2M).real(), "dehoog");
}

// Abate-Whitt Euler algorithm: binomially averaged partial sums of the
// Bromwich series with nodes tied to t.
double invert_euler(const Transform& F, double t, int M, double shift) {
  std::vector<double> xi(2 * M + 1, 0.0);
  xi[0] = 0.5;
  for (int k = 1; k <= M; ++k) xi[k] = 1.0;
  xi[2 * M] = std::pow(2.0, -M);
  for (int k = 1; k < M; ++k)
    xi[2 * M - k] = xi[2 * M - k + 1] + std::pow(2.0, -M) * binomial(M, k);

  const double a = M * std::log(10.0) / 3.0;
  double sum = 0.0;
  for (int k = 0; k <= 2 * M; ++k) {
    const cplx p(shift + a / t, k * std::numbers::pi / t);
    const double eta = ((k % 2 == 0) ? 1.0 : -1.0) * xi[k];
    sum += eta * F(p).real();
  }
  return require_finite(std::exp(shift * t) * std::pow(10.0, M / 3.0) / t * sum,
                        "euler");
}

// Abate-Valko fixed Talbot; the contour's left wings make delayed
// exponentials (exp(-s0 p) factors) blow up, hence secondary status.
double invert_talbot(const Transform& F, double t, int M) {
  const double r = 2.0 * M / (5.0 * t);
  double sum = 0.5 * F(cplx(r, 0.0)).real() * std::exp(r * t);
  for (int k = 1; k < M; ++k) {
    const double th = k * std::numbers::pi / M;
    const double ct = std::cos(th) / std::sin(th);
    const cplx s(r * th * ct, r * th);
    const double sigma = th + (th * ct - 1.0) * ct;
    sum += (std::exp(t * s) * F(s) * cplx(1.0, sigma)).real();
  }
  return require_finite(sum * r / M, "talbot");
}

}  // namespace

double laplace_invert_raw(const Transform& F, double t, const InvertOptions& opt) {
  if (!(t > 0.0)) throw std::invalid_argument("laplace_invert: t <= 0");
  switch (opt.method) {
    case InvertMethod::DeHoog: {
      const double T = opt.horizon > 0.0 ? opt.horizon : 2.0 * std::max(t, 1.0);
      return invert_dehoog(F, t, opt.terms, T, opt.tol, opt.abscissa);
    }
    case InvertMethod::Euler:
      return invert_euler(F, t, std::min(opt.terms, 18), opt.abscissa);
    case InvertMethod::Talbot:
      return invert_talbot(F, t, opt.terms);
  }
  throw std::logic_error("laplace_invert: bad method");
}

InvertResult laplace_invert(const Transform& F, double t, const InvertOptions& opt) {
  InvertResult res;
  res.value = laplace_invert_raw(F, t, opt);
  InvertOptions finer = opt;
  finer.terms = opt.terms + (opt.terms + 1) / 2;
  const double check = laplace_invert_raw(F, t, finer);
  res.consistency = std::abs(res.value - check);
  if (res.consistency > opt.consistency)
    throw std::runtime_error(
        "laplace_invert: two resolutions disagree by " +
        std::to_string(res.consistency) + " (method failure)");
  return res;
}

double CumulativeSpectral::sup() const {
  double m = 0.0;
  for (double v : h) m = std::max(m, v);
  return m;
}

CumulativeSpectral analytic_h(const AncientSolution& sol, const Eigen::VectorXd& x,
                              const std::vector<double>& s_grid) {
  CumulativeSpectral cs;
  cs.x = x;
  cs.s_grid = s_grid;
  cs.provenance = CumulativeSpectral::Provenance::Analytic;
  cs.h.reserve(s_grid.size());
  for (double s : s_grid) {
    double v = 0.0;
    for (const auto& a : sol.measure.atoms)
      if (a.s <= s) v += a.w * std::exp(std::sqrt(a.s) * x.dot(a.xi));
    cs.h.push_back(v);
  }
  cs.confidence.assign(s_grid.size(), 1.0);
  return cs;
}

CumulativeSpectral recover_h(const AncientSolution& sol, const Eigen::VectorXd& x,
                             const std::vector<double>& s_grid,
                             const InvertOptions& opt, double jump_margin) {
  for (double s : s_grid)
    if (!(s > 0.0))
      throw std::invalid_argument("recover_h: s_grid must be positive");
  Transform F = [&](cplx p) { return eval<cplx>(sol, x, -p) / p; };

  InvertOptions o = opt;
  if (o.horizon <= 0.0 && o.method == InvertMethod::DeHoog) {
    const double smax = *std::max_element(s_grid.begin(), s_grid.end());
    o.horizon = 2.0 * std::max(smax, 1.0);
  }

  CumulativeSpectral cs;
  cs.x = x;
  cs.s_grid = s_grid;
  cs.provenance = CumulativeSpectral::Provenance::Inverted;
  cs.h.reserve(s_grid.size());
  cs.confidence.reserve(s_grid.size());
  for (double s : s_grid) {
    cs.h.push_back(laplace_invert_raw(F, s, o));
    double margin = std::numeric_limits<double>::infinity();
    for (const auto& a : sol.measure.atoms)
      margin = std::min(margin, std::abs(s - a.s));
    cs.confidence.push_back(margin < jump_margin ? 0.0 : 1.0);
  }
  return cs;
}

namespace {

// h(x,t) and the exact running integral int_0^t h(x,s) ds for step h
double analytic_h_point(const AncientSolution& sol, const Eigen::VectorXd& x,
                        double t, double* running_integral) {
  double h = 0.0, integral = 0.0;
  for (const auto& a : sol.measure.atoms) {
    if (a.s > t) continue;
    const double c = a.w * std::exp(std::sqrt(a.s) * x.dot(a.xi));
    h += c;
    integral += c * (t - a.s);
  }
  if (running_integral) *running_integral = integral;
  return h;
}

}  // namespace

HIdentityResult verify_h_identity(const AncientSolution& sol,
                                  const Eigen::VectorXd& x, double t, double dx,
                                  CumulativeSpectral::Provenance source,
                                  int s_samples) {
  const int n = sol.measure.dim;
  const bool analytic = source == CumulativeSpectral::Provenance::Analytic;

  std::function<double(const Eigen::VectorXd&)> h_at;
  InvertOptions opt;
  opt.horizon = 2.0 * std::max(t, 1.0);
  if (analytic) {
    h_at = [&](const Eigen::VectorXd& y) {
      return analytic_h_point(sol, y, t, nullptr);
    };
  } else {
    h_at = [&, opt](const Eigen::VectorXd& y) {
      Transform F = [&](cplx p) { return eval<cplx>(sol, y, -p) / p; };
      return laplace_invert_raw(F, t, opt);
    };
  }

  HIdentityResult res;
  const double hc = h_at(x);
  double lap = 0.0;
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd xp = x, xm = x;
    xp[i] += dx;
    xm[i] -= dx;
    lap += (h_at(xp) - 2.0 * hc + h_at(xm)) / (dx * dx);
  }
  res.lhs = lap;

  double integral = 0.0;
  if (analytic) {
    analytic_h_point(sol, x, t, &integral);
  } else {
    // trapezoid over an s-grid; inversion is only defined for s > 0
    Transform F = [&](cplx p) { return eval<cplx>(sol, x, -p) / p; };
    const int m = std::max(s_samples, 16);
    const double s0 = t / m;
    // left end approximated by h(x, 0+)
    double prev = laplace_invert_raw(F, s0 * 1e-3, opt);
    double sprev = 0.0;
    for (int i = 1; i <= m; ++i) {
      const double s = i * s0;
      const double hv = laplace_invert_raw(F, s, opt);
      integral += 0.5 * (prev + hv) * (s - sprev);
      prev = hv;
      sprev = s;
    }
  }
  res.rhs = t * hc - integral;
  res.residual = std::abs(res.lhs - res.rhs);
  return res;
}

Eigen::VectorXd nnls(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                     double* residual_norm) {
  using Eigen::MatrixXd;
  using Eigen::VectorXd;
  const int ncols = static_cast<int>(A.cols());
  VectorXd x = VectorXd::Zero(ncols);
  std::vector<bool> passive(ncols, false);
  const double tol =
      10.0 * std::numeric_limits<double>::epsilon() *
      A.lpNorm<Eigen::Infinity>() * std::max(A.rows(), A.cols());

  auto solve_passive = [&](const std::vector<bool>& set) {
    std::vector<int> idx;
    for (int j = 0; j < ncols; ++j)
      if (set[j]) idx.push_back(j);
    VectorXd z = VectorXd::Zero(ncols);
    if (idx.empty()) return z;
    MatrixXd Ap(A.rows(), idx.size());
    for (size_t k = 0; k < idx.size(); ++k) Ap.col(k) = A.col(idx[k]);
    VectorXd zp = Ap.colPivHouseholderQr().solve(b);
    for (size_t k = 0; k < idx.size(); ++k) z[idx[k]] = zp[k];
    return z;
  };

  const int max_iter = 3 * ncols + 30;
  for (int iter = 0; iter < max_iter; ++iter) {
    const VectorXd w = A.transpose() * (b - A * x);
    int best = -1;
    double wmax = tol;
    for (int j = 0; j < ncols; ++j)
      if (!passive[j] && w[j] > wmax) {
        wmax = w[j];
        best = j;
      }
    if (best < 0) break;
    passive[best] = true;

    VectorXd z = solve_passive(passive);
    while (true) {
      bool feasible = true;
      double alpha = 1.0;
      for (int j = 0; j < ncols; ++j) {
        if (!passive[j] || z[j] > 0.0) continue;
        feasible = false;
        alpha = std::min(alpha, x[j] / (x[j] - z[j]));
      }
      if (feasible) break;
      x += alpha * (z - x);
      for (int j = 0; j < ncols; ++j)
        if (passive[j] && x[j] <= tol) {
          passive[j] = false;
          x[j] = 0.0;
        }
      z = solve_passive(passive);
    }
    x = z;
  }
  if (residual_norm) *residual_norm = (A * x - b).norm();
  return x;
}

BernsteinFit bernstein_fit(const SampledFunction& f,
                           const std::vector<double>& s_grid) {
  if (f.t.size() != f.f.size())
    throw std::invalid_argument("bernstein_fit: sample size mismatch");
  for (size_t i = 1; i < f.t.size(); ++i)
    if (!(f.t[i] > f.t[i - 1]))
      throw std::invalid_argument("bernstein_fit: abscissae not increasing");
  Eigen::MatrixXd A(f.t.size(), s_grid.size());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index k = 0; k < A.cols(); ++k)
      A(i, k) = std::exp(-f.t[i] * s_grid[k]);
  const Eigen::VectorXd b =
      Eigen::Map<const Eigen::VectorXd>(f.f.data(), static_cast<Eigen::Index>(f.f.size()));
  BernsteinFit fit;
  fit.s_grid = s_grid;
  fit.weights = nnls(A, b, &fit.residual_norm);
  return fit;
}

}  // namespace aheat
