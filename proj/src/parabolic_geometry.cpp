#include "aheat/parabolic_geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace aheat {

double dp(const SpaceTimePoint& a, const SpaceTimePoint& b) {
  if (a.x.size() != b.x.size())
    throw std::invalid_argument("dp: dimension mismatch");
  return (a.x - b.x).norm() + std::sqrt(std::abs(a.t - b.t));
}

bool Paraboloid::contains(const SpaceTimePoint& p) const {
  return p.t <= vertex.t && dp(p, vertex) <= r;
}

Paraboloid Paraboloid::at_origin(int n, double r) {
  return Paraboloid{SpaceTimePoint{Eigen::VectorXd::Zero(n), 0.0}, r};
}

double Cube::volume() const {
  const int n = dim();
  return unit_ball_volume(n) * std::pow(r, n) * r * r;
}

double volume_paraboloid(const Paraboloid& p) {
  const int n = p.dim();
  return 2.0 * unit_ball_volume(n) * std::pow(p.r, n + 2) /
         ((n + 1.0) * (n + 2.0));
}

McEstimate volume_mc(const Paraboloid& p, std::int64_t samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("volume_mc: samples < 1");
  const int n = p.dim();
  const double box =
      std::pow(2.0 * p.r, n) * p.r * p.r;  // [x0 +- r]^n x [t0 - r^2, t0]
  CounterRng rng(seed);
  std::int64_t hits = 0;
  SpaceTimePoint q;
  q.x.resize(n);
  for (std::int64_t i = 0; i < samples; ++i) {
    for (int d = 0; d < n; ++d)
      q.x[d] = p.vertex.x[d] + rng.uniform(-p.r, p.r);
    q.t = p.vertex.t - rng.uniform(0.0, p.r * p.r);
    if (p.contains(q)) ++hits;
  }
  const double frac = static_cast<double>(hits) / samples;
  McEstimate est;
  est.samples = samples;
  est.value = box * frac;
  est.std_error = box * std::sqrt(frac * (1.0 - frac) / samples);
  return est;
}

RatioBounds volume_ratio_bounds(int n) {
  RatioBounds rb;
  rb.ratio = 2.0 / ((n + 1.0) * (n + 2.0));
  rb.lower = std::pow(2.0, -n) * std::pow(2.0, -(n + 2.0));
  rb.upper = 1.0;
  return rb;
}

DoublingCheck doubling_check(int n, double r1, double r2) {
  if (!(r2 > r1 && r1 > 0.0))
    throw std::invalid_argument("doubling_check: need r2 > r1 > 0");
  const Paraboloid p1 = Paraboloid::at_origin(n, r1);
  const Paraboloid p2 = Paraboloid::at_origin(n, r2);
  DoublingCheck dc;
  dc.normalized_ratio = (volume_paraboloid(p2) / std::pow(r2, n + 2)) /
                        (volume_paraboloid(p1) / std::pow(r1, n + 2));
  dc.ball_ratio = std::pow(2.0, n);  // |B(0,2r)|/|B(0,r)| on R^n
  return dc;
}

namespace {

struct SphereRule {
  std::vector<Eigen::VectorXd> dirs;
  std::vector<double> weights;  // sum = n * omega_n
};

SphereRule sphere_rule(int n, int order) {
  SphereRule sr;
  if (n == 1) {
    sr.dirs = {Eigen::VectorXd::Constant(1, 1.0), Eigen::VectorXd::Constant(1, -1.0)};
    sr.weights = {1.0, 1.0};
  } else if (n == 2) {
    const int k = std::max(order, 4);
    for (int i = 0; i < k; ++i) {
      const double th = 2.0 * std::numbers::pi * i / k;
      Eigen::VectorXd d(2);
      d << std::cos(th), std::sin(th);
      sr.dirs.push_back(d);
      sr.weights.push_back(2.0 * std::numbers::pi / k);
    }
  } else if (n == 3) {
    const int k = std::max(order, 4);
    const GaussRule polar = gauss_legendre(k, -1.0, 1.0);
    for (int i = 0; i < k; ++i) {
      const double c = polar.nodes[i];
      const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
      for (int j = 0; j < k; ++j) {
        const double th = 2.0 * std::numbers::pi * j / k;
        Eigen::VectorXd d(3);
        d << s * std::cos(th), s * std::sin(th), c;
        sr.dirs.push_back(d);
        sr.weights.push_back(polar.weights[i] * 2.0 * std::numbers::pi / k);
      }
    }
  } else {
    throw std::invalid_argument("paraboloid quadrature: n > 3 not supported");
  }
  return sr;
}

double paraboloid_quad(const SpaceTimeFn& f, const Paraboloid& p,
                       const QuadratureSpec& spec) {
  const int n = p.dim();
  const GaussRule radial = gauss_legendre(spec.radial, 0.0, p.r);
  const SphereRule sphere = sphere_rule(n, spec.sphere);
  double total = 0.0;
  for (int i = 0; i < spec.radial; ++i) {
    const double rho = radial.nodes[i];
    const double depth = (p.r - rho) * (p.r - rho);
    const GaussRule time = gauss_legendre(spec.time, p.vertex.t - depth, p.vertex.t);
    double shell = 0.0;
    for (size_t d = 0; d < sphere.dirs.size(); ++d) {
      const Eigen::VectorXd x = p.vertex.x + rho * sphere.dirs[d];
      double ft = 0.0;
      for (int k = 0; k < spec.time; ++k)
        ft += time.weights[k] * f(x, time.nodes[k]);
      shell += sphere.weights[d] * ft;
    }
    total += radial.weights[i] * std::pow(rho, n - 1) * shell;
  }
  return total;
}

}  // namespace

IntegralEstimate integrate_over_paraboloid(const SpaceTimeFn& f, const Paraboloid& p,
                                           const QuadratureSpec& spec) {
  IntegralEstimate est;
  est.value = paraboloid_quad(f, p, spec);
  QuadratureSpec half;
  half.radial = std::max(spec.radial / 2, 2);
  half.sphere = std::max(spec.sphere / 2, 2);
  half.time = std::max(spec.time / 2, 2);
  est.error = std::abs(est.value - paraboloid_quad(f, p, half));
  return est;
}

double GramMatrix::min_eigenvalue() const {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m).eigenvalues().minCoeff();
}

double GramMatrix::max_eigenvalue() const {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m).eigenvalues().maxCoeff();
}

GramMatrix gram(const std::vector<SpaceTimeFn>& basis,
                const std::vector<std::string>& labels, const Paraboloid& region,
                const QuadratureSpec& spec) {
  if (basis.empty()) throw std::invalid_argument("gram: empty basis");
  const int k = static_cast<int>(basis.size());
  GramMatrix g;
  g.labels = labels;
  g.m.resize(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j) {
      auto prod = [&](const Eigen::VectorXd& x, double t) {
        return basis[i](x, t) * basis[j](x, t);
      };
      const IntegralEstimate e = integrate_over_paraboloid(prod, region, spec);
      g.m(i, j) = e.value;
      g.m(j, i) = e.value;
      g.quad_error = std::max(g.quad_error, e.error);
    }
  return g;
}

Lemma31Result lemma31_check(const std::vector<SpaceTimeFn>& basis,
                            const SpaceTimePoint& vertex, double R, double eps,
                            const QuadratureSpec& spec) {
  const int n = static_cast<int>(vertex.x.size());
  std::vector<std::string> labels(basis.size());
  const GramMatrix inner = gram(basis, labels, Paraboloid{vertex, R}, spec);
  const GramMatrix outer = gram(basis, labels, Paraboloid{vertex, (1.0 + eps) * R}, spec);
  Lemma31Result res;
  res.lhs = inner.trace();
  res.sup_term = outer.max_eigenvalue();
  res.rhs = std::pow(eps, -(n + 1.0)) * res.sup_term;
  res.ratio = res.lhs / res.rhs;
  return res;
}

WeightIntegralResult weight_integral_I(int n, double R, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("weight_integral_I: eps <= 0");
  // time integral in closed form; c = R*eps + (R - rho)
  auto inner = [&](double rho) {
    const double a = R - rho;
    const double c = R * eps + a;
    const double re = R * eps;
    return 2.0 * c / (n + 1.0) *
               (std::pow(re, -(n + 1.0)) - std::pow(c, -(n + 1.0))) -
           2.0 / n * (std::pow(re, -static_cast<double>(n)) -
                      std::pow(c, -static_cast<double>(n)));
  };
  const GaussRule rule = gauss_legendre(128, 0.0, R);
  double integral = 0.0;
  for (int i = 0; i < 128; ++i)
    integral += rule.weights[i] * std::pow(rule.nodes[i], n - 1) *
                inner(rule.nodes[i]);
  WeightIntegralResult res;
  res.value = unit_sphere_area(n) * integral;
  res.bound_ratio = res.value * std::pow(eps, n + 1.0) / unit_ball_volume(n);
  return res;
}

IterationLog trace_det_iteration(const std::vector<SpaceTimeFn>& basis,
                                 const SpaceTimePoint& vertex, double R0,
                                 double beta, double q, double delta, int steps,
                                 const QuadratureSpec& spec) {
  if (!(beta > 1.0)) throw std::invalid_argument("trace_det_iteration: beta <= 1");
  const int n = static_cast<int>(vertex.x.size());
  const int k = static_cast<int>(basis.size());
  std::vector<std::string> labels(basis.size());

  IterationLog log;
  log.exponent_cap = k * (2.0 * q + n + 2.0 + delta) + 0.5;

  std::vector<double> scales;
  for (int j = 0; j <= steps; ++j) {
    const double rj = R0 * std::pow(beta, j);
    if (rj > 1e3) break;  // quadrature degrades past this scale
    scales.push_back(rj);
  }
  std::vector<GramMatrix> grams;
  grams.reserve(scales.size() + 1);
  for (double rj : scales)
    grams.push_back(gram(basis, labels, Paraboloid{vertex, rj}, spec));
  // one extra scale for the last relative trace
  grams.push_back(gram(basis, labels,
                       Paraboloid{vertex, scales.back() * beta}, spec));

  const double det0 = grams[0].det();
  for (size_t j = 0; j < scales.size(); ++j) {
    IterationRow row;
    row.scale = scales[j];
    row.det_abs = grams[j].det();
    row.det_rel = row.det_abs / det0;
    row.trace_rel = grams[j + 1].m.ldlt().solve(grams[j].m).trace();
    log.rows.push_back(row);
  }

  // least-squares slope of log det vs log scale
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int cnt = static_cast<int>(log.rows.size());
  for (const auto& row : log.rows) {
    const double lx = std::log(row.scale), ly = std::log(row.det_abs);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  log.fitted_exponent = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  return log;
}

}  // namespace aheat
