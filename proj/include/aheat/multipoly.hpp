#pragma once

#include <gmpxx.h>

#include <Eigen/Dense>

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace aheat {

/// Exact arbitrary-precision rational scalar.
using Rational = mpq_class;

/// x^alpha * t^tpow. Parabolic degree |alpha| + 2*tpow.
struct Monomial {
  std::vector<int> alpha;
  int tpow = 0;

  int space_degree() const;
  int parabolic_degree() const { return space_degree() + 2 * tpow; }
};

/// Graded-lex order on (parabolic degree, alpha, tpow); fixes a canonical
/// term order for printing and for the coefficient vectors of the exact
/// linear systems.
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Multivariate polynomial in x_0..x_{n-1} and t with exact rational
/// coefficients. Zero coefficients are never stored.
class MultiPoly {
 public:
  using TermMap = std::map<Monomial, Rational, MonomialOrder>;

  MultiPoly() = default;
  explicit MultiPoly(int dim) : dim_(dim) {}

  static MultiPoly constant(int dim, const Rational& c);
  static MultiPoly variable(int dim, int axis);  // x_axis
  static MultiPoly time_variable(int dim);       // t

  int dim() const { return dim_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  int degree_x() const;          // max |alpha|, -1 when zero
  int degree_t() const;          // max tpow, -1 when zero
  int parabolic_degree() const;  // max |alpha|+2*tpow, -1 when zero

  void add_term(const Monomial& m, const Rational& c);
  Rational coefficient(const Monomial& m) const;

  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  MultiPoly operator-() const;
  MultiPoly operator*(const Rational& c) const;
  bool operator==(const MultiPoly& o) const {
    return dim_ == o.dim_ && terms_ == o.terms_;
  }

  MultiPoly derivative_x(int axis) const;
  MultiPoly derivative_t() const;

  /// coefficient polynomial of t^j, as a polynomial in x only
  MultiPoly t_coefficient(int j) const;

  Rational eval(const std::vector<Rational>& x, const Rational& t) const;
  double eval_double(const Eigen::VectorXd& x, double t) const;

  /// Exact integral over the box prod_i [xb[i].first, xb[i].second] x
  /// [tb.first, tb.second].
  Rational integrate_box(const std::vector<std::pair<Rational, Rational>>& xb,
                         const std::pair<Rational, Rational>& tb) const;

  /// Canonical text form, e.g. "x0^4 + 12*x0^2*t + 12*t^2".
  std::string str() const;

 private:
  int dim_ = 0;
  TermMap terms_;
};

MultiPoly laplacian(const MultiPoly& p);
/// dt P - lap P
MultiPoly heat_op(const MultiPoly& p);

/// Parses the canonical text form: sums/differences of terms, each a product
/// of an optional rational coefficient (p or p/q) and powers of x0..x_{n-1}
/// and t. Throws std::invalid_argument on malformed input.
MultiPoly parse_poly(const std::string& text, int dim);

}  // namespace aheat
