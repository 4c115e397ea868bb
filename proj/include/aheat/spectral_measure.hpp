#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace aheat {

/// One atom (s, xi, w) of a discrete spectral measure: weight w sitting at
/// spectral parameter s >= 0 and direction xi on S^{n-1}. The induced
/// solution term is w * exp(t*s + sqrt(s) * x.dot(xi)).
struct SpectralAtom {
  double s = 0.0;
  Eigen::VectorXd xi;
  double w = 0.0;
};

struct SpectralMeasure {
  int dim = 0;
  std::vector<SpectralAtom> atoms;

  double total_mass() const;
};

/// Atom of the Widder parametrization: w * exp(x.dot(y) + t*|y|^2).
struct WidderAtom {
  Eigen::VectorXd y;
  double w = 0.0;
};

struct MeasureViolation {
  int atom = -1;  // -1: measure-level
  std::string rule;
};

/// Diagnostic check of the type invariants. Empty result iff the measure is
/// valid; violations are returned, never thrown.
std::vector<MeasureViolation> validate(const SpectralMeasure& m);

/// y -> (s=|y|^2, xi=y/|y|); y=0 maps to (s=0, xi=e1).
SpectralMeasure widder_to_spectral(const std::vector<WidderAtom>& atoms, int dim);

/// Inverse map y = sqrt(s) * xi.
std::vector<WidderAtom> spectral_to_widder(const SpectralMeasure& m);

std::string measure_to_json(const SpectralMeasure& m);
SpectralMeasure measure_from_json(const std::string& text);

void save_measure(const std::string& path, const SpectralMeasure& m);
SpectralMeasure load_measure(const std::string& path);

}  // namespace aheat
