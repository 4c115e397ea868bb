#include "aheat/multipoly.hpp"

#include <cctype>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace aheat {

int Monomial::space_degree() const {
  return std::accumulate(alpha.begin(), alpha.end(), 0);
}

bool MonomialOrder::operator()(const Monomial& a, const Monomial& b) const {
  const int pa = a.parabolic_degree(), pb = b.parabolic_degree();
  if (pa != pb) return pa < pb;
  if (a.alpha != b.alpha) return a.alpha < b.alpha;
  return a.tpow < b.tpow;
}

MultiPoly MultiPoly::constant(int dim, const Rational& c) {
  MultiPoly p(dim);
  p.add_term(Monomial{std::vector<int>(dim, 0), 0}, c);
  return p;
}

MultiPoly MultiPoly::variable(int dim, int axis) {
  if (axis < 0 || axis >= dim) throw std::invalid_argument("variable: bad axis");
  MultiPoly p(dim);
  Monomial m{std::vector<int>(dim, 0), 0};
  m.alpha[axis] = 1;
  p.add_term(m, 1);
  return p;
}

MultiPoly MultiPoly::time_variable(int dim) {
  MultiPoly p(dim);
  p.add_term(Monomial{std::vector<int>(dim, 0), 1}, 1);
  return p;
}

int MultiPoly::degree_x() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.space_degree());
  return d;
}

int MultiPoly::degree_t() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.tpow);
  return d;
}

int MultiPoly::parabolic_degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.parabolic_degree());
  return d;
}

void MultiPoly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  if (static_cast<int>(m.alpha.size()) != dim_)
    throw std::invalid_argument("add_term: monomial dimension mismatch");
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational MultiPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  if (dim_ != o.dim_) throw std::invalid_argument("poly +: dimension mismatch");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  if (dim_ != o.dim_) throw std::invalid_argument("poly -: dimension mismatch");
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  if (a.dim_ != b.dim_) throw std::invalid_argument("poly *: dimension mismatch");
  MultiPoly r(a.dim_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      Monomial m = ma;
      for (int i = 0; i < r.dim_; ++i) m.alpha[i] += mb.alpha[i];
      m.tpow += mb.tpow;
      r.add_term(m, ca * cb);
    }
  return r;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r(dim_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

MultiPoly MultiPoly::operator*(const Rational& c) const {
  MultiPoly r(dim_);
  if (c == 0) return r;
  for (const auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
  return r;
}

MultiPoly MultiPoly::derivative_x(int axis) const {
  MultiPoly r(dim_);
  for (const auto& [m, c] : terms_) {
    if (m.alpha[axis] == 0) continue;
    Monomial d = m;
    d.alpha[axis] -= 1;
    r.add_term(d, c * m.alpha[axis]);
  }
  return r;
}

MultiPoly MultiPoly::derivative_t() const {
  MultiPoly r(dim_);
  for (const auto& [m, c] : terms_) {
    if (m.tpow == 0) continue;
    Monomial d = m;
    d.tpow -= 1;
    r.add_term(d, c * m.tpow);
  }
  return r;
}

MultiPoly MultiPoly::t_coefficient(int j) const {
  MultiPoly r(dim_);
  for (const auto& [m, c] : terms_) {
    if (m.tpow != j) continue;
    Monomial d = m;
    d.tpow = 0;
    r.add_term(d, c);
  }
  return r;
}

namespace {

Rational rational_pow(Rational base, int e) {
  Rational r(1);
  while (e > 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

}  // namespace

Rational MultiPoly::eval(const std::vector<Rational>& x, const Rational& t) const {
  if (static_cast<int>(x.size()) != dim_)
    throw std::invalid_argument("eval: point dimension mismatch");
  Rational r(0);
  for (const auto& [m, c] : terms_) {
    Rational term = c;
    for (int i = 0; i < dim_; ++i)
      if (m.alpha[i] > 0) term *= rational_pow(x[i], m.alpha[i]);
    if (m.tpow > 0) term *= rational_pow(t, m.tpow);
    r += term;
  }
  return r;
}

double MultiPoly::eval_double(const Eigen::VectorXd& x, double t) const {
  if (x.size() != dim_)
    throw std::invalid_argument("eval_double: point dimension mismatch");
  double r = 0.0;
  for (const auto& [m, c] : terms_) {
    double term = c.get_d();
    for (int i = 0; i < dim_; ++i)
      for (int k = 0; k < m.alpha[i]; ++k) term *= x[i];
    for (int k = 0; k < m.tpow; ++k) term *= t;
    r += term;
  }
  return r;
}

Rational MultiPoly::integrate_box(
    const std::vector<std::pair<Rational, Rational>>& xb,
    const std::pair<Rational, Rational>& tb) const {
  if (static_cast<int>(xb.size()) != dim_)
    throw std::invalid_argument("integrate_box: bounds dimension mismatch");
  // power-rule factor per variable
  auto factor = [](const Rational& a, const Rational& b, int e) {
    return (rational_pow(b, e + 1) - rational_pow(a, e + 1)) / Rational(e + 1);
  };
  Rational r(0);
  for (const auto& [m, c] : terms_) {
    Rational term = c;
    for (int i = 0; i < dim_; ++i)
      term *= factor(xb[i].first, xb[i].second, m.alpha[i]);
    term *= factor(tb.first, tb.second, m.tpow);
    r += term;
  }
  return r;
}

std::string MultiPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // print highest graded-lex terms first
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    Rational a = c;
    if (first) {
      if (a < 0) {
        os << "-";
        a = -a;
      }
    } else {
      os << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    first = false;
    std::vector<std::string> factors;
    if (a != 1 || (m.space_degree() == 0 && m.tpow == 0))
      factors.push_back(a.get_str());
    for (int i = 0; i < dim_; ++i) {
      if (m.alpha[i] == 0) continue;
      std::string v = "x" + std::to_string(i);
      if (m.alpha[i] > 1) v += "^" + std::to_string(m.alpha[i]);
      factors.push_back(v);
    }
    if (m.tpow > 0) {
      std::string v = "t";
      if (m.tpow > 1) v += "^" + std::to_string(m.tpow);
      factors.push_back(v);
    }
    for (size_t i = 0; i < factors.size(); ++i) {
      if (i) os << "*";
      os << factors[i];
    }
  }
  return os.str();
}

MultiPoly laplacian(const MultiPoly& p) {
  MultiPoly r(p.dim());
  for (int i = 0; i < p.dim(); ++i) r += p.derivative_x(i).derivative_x(i);
  return r;
}

MultiPoly heat_op(const MultiPoly& p) { return p.derivative_t() - laplacian(p); }

namespace {

struct Lexer {
  const std::string& s;
  size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= s.size();
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  char get() {
    skip_ws();
    return s[pos++];
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("parse_poly: " + what + " at position " +
                                std::to_string(pos));
  }
  long parse_integer() {
    skip_ws();
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) fail("expected integer");
    return std::stol(s.substr(start, pos - start));
  }
};

// term := factor (('*')? factor)* ; factor := rational | var('^'int)?
MultiPoly parse_term(Lexer& lx, int dim) {
  MultiPoly term = MultiPoly::constant(dim, 1);
  bool any = false;
  while (true) {
    char c = lx.peek();
    if (c == '\0' || c == '+' || c == '-') break;
    if (c == '*') {
      if (!any) lx.fail("unexpected '*'");
      lx.get();
      c = lx.peek();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      long num = lx.parse_integer();
      Rational coeff(num);
      if (lx.peek() == '/') {
        lx.get();
        long den = lx.parse_integer();
        if (den == 0) lx.fail("zero denominator");
        coeff = Rational(num, den);
        coeff.canonicalize();
      }
      term = term * coeff;
    } else if (c == 'x' || c == 't') {
      lx.get();
      MultiPoly var(dim);
      if (c == 'x') {
        long axis = lx.parse_integer();
        if (axis < 0 || axis >= dim) lx.fail("variable index out of range");
        var = MultiPoly::variable(dim, static_cast<int>(axis));
      } else {
        var = MultiPoly::time_variable(dim);
      }
      int e = 1;
      if (lx.peek() == '^') {
        lx.get();
        e = static_cast<int>(lx.parse_integer());
        if (e < 0) lx.fail("negative exponent");
      }
      MultiPoly powed = MultiPoly::constant(dim, 1);
      for (int i = 0; i < e; ++i) powed = powed * var;
      term = term * powed;
    } else {
      lx.fail(std::string("unexpected character '") + c + "'");
    }
    any = true;
  }
  if (!any) lx.fail("empty term");
  return term;
}

}  // namespace

MultiPoly parse_poly(const std::string& text, int dim) {
  Lexer lx{text};
  MultiPoly p(dim);
  bool negative = false;
  if (lx.peek() == '-') {
    lx.get();
    negative = true;
  } else if (lx.peek() == '+') {
    lx.get();
  }
  while (true) {
    MultiPoly term = parse_term(lx, dim);
    p += negative ? -term : term;
    if (lx.eof()) break;
    char c = lx.get();
    if (c == '+')
      negative = false;
    else if (c == '-')
      negative = true;
    else
      lx.fail("expected '+' or '-'");
  }
  return p;
}

}  // namespace aheat
