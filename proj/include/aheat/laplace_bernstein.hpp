#pragma once

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "aheat/ancient_eval.hpp"

namespace aheat {

/// Samples of a one-variable function on strictly increasing abscissae.
struct SampledFunction {
  std::vector<double> t;
  std::vector<double> f;

  static SampledFunction tabulate(const std::function<double(double)>& fn,
                                  const std::vector<double>& t);
};

struct ForwardOptions {
  double rel_tol = 1e-10;
  int max_depth = 42;
  double tail_exponent = 60.0;  // integrate s in [0, tail_exponent/t]
};

/// int_0^inf exp(-t s) g(s) ds by adaptive Simpson on [0, tail/t]. Throws
/// when the integrand has not decayed at the truncation point.
double laplace_forward(const std::function<double(double)>& g, double t,
                       const ForwardOptions& opt = {});

enum class InvertMethod { DeHoog, Euler, Talbot };

InvertMethod invert_method_from_name(const std::string& name);
std::string invert_method_name(InvertMethod m);

struct InvertOptions {
  InvertMethod method = InvertMethod::DeHoog;
  int terms = 40;            // half-order M; 2M+1 transform evaluations
  double horizon = 0.0;      // de Hoog series period T; 0: 2*max(t,1)
  double abscissa = 0.0;     // extra shift of the contour, Re p >= abscissa
  double tol = 1e-12;        // de Hoog discretization target
  double consistency = 1e-3; // two-resolution disagreement threshold
};

using Transform = std::function<std::complex<double>(std::complex<double>)>;

/// Single-resolution inversion of F at time t.
double laplace_invert_raw(const Transform& F, double t, const InvertOptions& opt = {});

struct InvertResult {
  double value = 0.0;
  double consistency = 0.0;  // |value(M) - value(3M/2)|
};

/// Inverts and cross-checks against a higher resolution; throws
/// std::runtime_error when the two disagree beyond opt.consistency.
InvertResult laplace_invert(const Transform& F, double t,
                            const InvertOptions& opt = {});

/// Cumulative spectral function h(x, s) on an s-grid.
struct CumulativeSpectral {
  enum class Provenance { Analytic, Inverted };

  Eigen::VectorXd x;
  std::vector<double> s_grid;
  std::vector<double> h;
  std::vector<double> confidence;  // 1: trusted; 0: within the jump margin
  Provenance provenance = Provenance::Analytic;

  double sup() const;
};

/// Step cumulative directly from the atoms:
/// h(x,s) = sum_{s_j <= s} w_j exp(sqrt(s_j) x.xi_j).
CumulativeSpectral analytic_h(const AncientSolution& sol, const Eigen::VectorXd& x,
                              const std::vector<double>& s_grid);

/// h recovered by inverting p -> u(x,-p)/p along a right-half-plane contour.
/// Values within jump_margin of an atom's s are flagged low-confidence.
CumulativeSpectral recover_h(const AncientSolution& sol, const Eigen::VectorXd& x,
                             const std::vector<double>& s_grid,
                             const InvertOptions& opt = {},
                             double jump_margin = 0.5);

struct HIdentityResult {
  double lhs = 0.0;       // finite-difference Laplacian of h(., t) at x
  double rhs = 0.0;       // t h(x,t) - int_0^t h(x,s) ds
  double residual = 0.0;  // |lhs - rhs|
};

/// Residual of lap_x h(x,t) = t h(x,t) - int_0^t h(x,s) ds, with the
/// Laplacian taken by a central stencil of spacing dx and h supplied either
/// analytically or via inversion.
HIdentityResult verify_h_identity(const AncientSolution& sol,
                                  const Eigen::VectorXd& x, double t,
                                  double dx = 1e-3,
                                  CumulativeSpectral::Provenance source =
                                      CumulativeSpectral::Provenance::Analytic,
                                  int s_samples = 4096);

/// Nonnegative least squares min ||A c - b||, c >= 0 (Lawson-Hanson).
Eigen::VectorXd nnls(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                     double* residual_norm = nullptr);

struct BernsteinFit {
  std::vector<double> s_grid;
  Eigen::VectorXd weights;      // >= 0
  double residual_norm = 0.0;   // ||A c - f||_2
};

/// Fits f(t_i) ~ sum_k c_k exp(-t_i s_k) with c >= 0 on a fixed s-grid.
BernsteinFit bernstein_fit(const SampledFunction& f,
                           const std::vector<double>& s_grid);

}  // namespace aheat
