#include "aheat/spectral_measure.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace aheat {

namespace {
constexpr double kUnitNormTol = 1e-12;
}

double SpectralMeasure::total_mass() const {
  double w = 0.0;
  for (const auto& a : atoms) w += a.w;
  return w;
}

std::vector<MeasureViolation> validate(const SpectralMeasure& m) {
  std::vector<MeasureViolation> out;
  if (m.dim < 1) out.push_back({-1, "dim < 1"});
  for (int j = 0; j < static_cast<int>(m.atoms.size()); ++j) {
    const auto& a = m.atoms[j];
    if (a.s < 0.0) out.push_back({j, "s < 0"});
    if (!(a.w > 0.0)) out.push_back({j, "w <= 0"});
    if (a.xi.size() != m.dim) {
      out.push_back({j, "xi length != dim"});
      continue;
    }
    if (std::abs(a.xi.norm() - 1.0) > kUnitNormTol) out.push_back({j, "|xi| != 1"});
  }
  return out;
}

SpectralMeasure widder_to_spectral(const std::vector<WidderAtom>& atoms, int dim) {
  SpectralMeasure m;
  m.dim = dim;
  m.atoms.reserve(atoms.size());
  for (const auto& a : atoms) {
    if (a.y.size() != dim)
      throw std::invalid_argument("widder_to_spectral: y length != dim");
    SpectralAtom sa;
    sa.w = a.w;
    const double r = a.y.norm();
    if (r == 0.0) {
      sa.s = 0.0;
      sa.xi = Eigen::VectorXd::Unit(dim, 0);
    } else {
      sa.s = r * r;
      sa.xi = a.y / r;
    }
    m.atoms.push_back(std::move(sa));
  }
  return m;
}

std::vector<WidderAtom> spectral_to_widder(const SpectralMeasure& m) {
  std::vector<WidderAtom> out;
  out.reserve(m.atoms.size());
  for (const auto& a : m.atoms)
    out.push_back({std::sqrt(a.s) * a.xi, a.w});
  return out;
}

std::string measure_to_json(const SpectralMeasure& m) {
  nlohmann::json j;
  j["dim"] = m.dim;
  j["atoms"] = nlohmann::json::array();
  for (const auto& a : m.atoms) {
    nlohmann::json ja;
    ja["s"] = a.s;
    ja["xi"] = std::vector<double>(a.xi.data(), a.xi.data() + a.xi.size());
    ja["w"] = a.w;
    j["atoms"].push_back(std::move(ja));
  }
  return j.dump(2);
}

SpectralMeasure measure_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(std::string("measure: malformed JSON: ") + e.what());
  }
  auto require = [&](const nlohmann::json& node, const char* field) -> const nlohmann::json& {
    if (!node.contains(field))
      throw std::runtime_error(std::string("measure: missing field \"") + field + "\"");
    return node.at(field);
  };
  SpectralMeasure m;
  m.dim = require(j, "dim").get<int>();
  for (const auto& ja : require(j, "atoms")) {
    SpectralAtom a;
    a.s = require(ja, "s").get<double>();
    auto xi = require(ja, "xi").get<std::vector<double>>();
    a.xi = Eigen::Map<Eigen::VectorXd>(xi.data(), static_cast<Eigen::Index>(xi.size()));
    a.w = require(ja, "w").get<double>();
    m.atoms.push_back(std::move(a));
  }
  return m;
}

void save_measure(const std::string& path, const SpectralMeasure& m) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("save_measure: cannot open " + path);
  f << measure_to_json(m) << "\n";
  if (!f) throw std::runtime_error("save_measure: write failed for " + path);
}

SpectralMeasure load_measure(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("load_measure: cannot open " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return measure_from_json(buf.str());
}

}  // namespace aheat
