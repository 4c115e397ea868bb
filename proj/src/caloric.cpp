#include "aheat/caloric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aheat {

bool CaloricPolynomial::chain_valid() const {
  if (chain.empty()) return assembled.is_zero();
  const int k = static_cast<int>(chain.size());
  for (int i = 0; i + 1 < k; ++i) {
    if (!(laplacian(chain[i]) - chain[i + 1] * Rational(i + 1)).is_zero())
      return false;
  }
  return laplacian(chain[k - 1]).is_zero();
}

CaloricPolynomial caloric_extend(const MultiPoly& u0) {
  if (u0.degree_t() > 0)
    throw std::invalid_argument("caloric_extend: u0 must not depend on t");
  CaloricPolynomial cp;
  cp.assembled = MultiPoly(u0.dim());
  MultiPoly ui = u0;  // lap^i u0 / i!
  const MultiPoly t = MultiPoly::time_variable(u0.dim());
  MultiPoly tpow = MultiPoly::constant(u0.dim(), 1);
  for (int i = 0; !ui.is_zero(); ++i) {
    cp.chain.push_back(ui);
    cp.assembled += ui * tpow;
    ui = laplacian(ui) * Rational(1, i + 1);
    tpow = tpow * t;
  }
  if (cp.chain.empty()) cp.chain.push_back(MultiPoly(u0.dim()));
  return cp;
}

DecomposeResult decompose(const MultiPoly& p) {
  DecomposeResult res;
  res.residual = heat_op(p);
  if (!res.residual.is_zero()) return res;
  CaloricPolynomial cp;
  cp.assembled = p;
  const int kt = std::max(p.degree_t(), 0);
  for (int j = 0; j <= kt; ++j) cp.chain.push_back(p.t_coefficient(j));
  res.chain = std::move(cp);
  return res;
}

std::int64_t dim_Hq(int n, double q) {
  if (n < 1) throw std::invalid_argument("dim_Hq: n < 1");
  if (q < 1.0) throw std::invalid_argument("dim_Hq: q < 1");
  const int d = static_cast<int>(std::floor(q));
  std::int64_t r = 1;
  for (int i = 1; i <= n; ++i) r = r * (d + i) / i;
  return r;
}

std::vector<Monomial> parabolic_monomials(int n, int pdeg_cap) {
  std::vector<Monomial> out;
  // enumerate alpha by recursion, then tpow
  std::vector<int> alpha(n, 0);
  auto rec = [&](auto&& self, int axis, int budget) -> void {
    if (axis == n) {
      int used = 0;
      for (int v : alpha) used += v;
      for (int j = 0; used + 2 * j <= pdeg_cap; ++j)
        out.push_back(Monomial{alpha, j});
      return;
    }
    for (int v = 0; v <= budget; ++v) {
      alpha[axis] = v;
      self(self, axis + 1, budget - v);
    }
    alpha[axis] = 0;
  };
  rec(rec, 0, pdeg_cap);
  std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) {
    return MonomialOrder{}(a, b);
  });
  return out;
}

RationalMatrix heat_op_matrix(int n, int pdeg_cap) {
  const auto cols = parabolic_monomials(n, pdeg_cap);
  const auto rows = parabolic_monomials(n, std::max(pdeg_cap - 2, -1));
  RationalMatrix m;
  m.rows = static_cast<int>(rows.size());
  m.cols = static_cast<int>(cols.size());
  m.a.assign(static_cast<size_t>(m.rows) * m.cols, Rational(0));

  auto row_index = [&](const Monomial& mm) -> int {
    auto it = std::lower_bound(rows.begin(), rows.end(), mm,
                               [](const Monomial& a, const Monomial& b) {
                                 return MonomialOrder{}(a, b);
                               });
    if (it == rows.end() || it->alpha != mm.alpha || it->tpow != mm.tpow)
      throw std::logic_error("heat_op_matrix: image monomial not indexed");
    return static_cast<int>(it - rows.begin());
  };

  for (int j = 0; j < m.cols; ++j) {
    MultiPoly mono(n);
    mono.add_term(cols[j], 1);
    const MultiPoly image = heat_op(mono);
    for (const auto& [mm, c] : image.terms()) m.at(row_index(mm), j) = c;
  }
  return m;
}

namespace {

// Row echelon; returns pivot columns. Destroys m.
std::vector<int> echelon(RationalMatrix& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int piv = -1;
    for (int i = r; i < m.rows; ++i)
      if (m.at(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = c; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(r, j));
    const Rational inv = m.at(r, c);
    for (int j = c; j < m.cols; ++j) m.at(r, j) /= inv;
    for (int i = 0; i < m.rows; ++i) {
      if (i == r || m.at(i, c) == 0) continue;
      const Rational f = m.at(i, c);
      for (int j = c; j < m.cols; ++j) m.at(i, j) -= f * m.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

int rational_rank(RationalMatrix m) {
  return static_cast<int>(echelon(m).size());
}

std::vector<std::vector<Rational>> rational_nullspace(RationalMatrix m) {
  const int cols = m.cols;
  const auto pivots = echelon(m);
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivots) is_pivot[c] = true;

  std::vector<std::vector<Rational>> basis;
  for (int free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[free] = 1;
    // back-substitute: pivot row r has leading 1 at pivots[r]
    for (int r = static_cast<int>(pivots.size()) - 1; r >= 0; --r)
      v[pivots[r]] = -m.at(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::int64_t dim_Hq_oracle(int n, double q) {
  if (n < 1) throw std::invalid_argument("dim_Hq_oracle: n < 1");
  if (q < 1.0) throw std::invalid_argument("dim_Hq_oracle: q < 1");
  const int cap = static_cast<int>(std::floor(q));
  RationalMatrix m = heat_op_matrix(n, cap);
  return m.cols - rational_rank(std::move(m));
}

std::vector<DimBoundRow> check_dim_bound(int n, int q_max) {
  if (q_max > 20) throw std::invalid_argument("check_dim_bound: q_max > 20");
  std::vector<DimBoundRow> out;
  for (int q = 1; q <= q_max; ++q) {
    DimBoundRow row;
    row.q = q;
    row.dim = dim_Hq(n, q);
    row.q_pow = std::pow(static_cast<double>(q), n + 1);
    row.ratio = static_cast<double>(row.dim) / row.q_pow;
    out.push_back(row);
  }
  return out;
}

BackwardUniqueRecord backward_unique(int n, int q, bool constrain_initial) {
  if (q > 12) throw std::invalid_argument("backward_unique: q > 12");
  const auto cols = parabolic_monomials(n, q);
  RationalMatrix heat = heat_op_matrix(n, q);

  int extra = 0;
  if (constrain_initial)
    for (const auto& m : cols) extra += (m.tpow == 0) ? 1 : 0;

  RationalMatrix sys;
  sys.rows = heat.rows + extra;
  sys.cols = heat.cols;
  sys.a.assign(static_cast<size_t>(sys.rows) * sys.cols, Rational(0));
  std::copy(heat.a.begin(), heat.a.end(), sys.a.begin());
  if (constrain_initial) {
    int r = heat.rows;
    for (int j = 0; j < static_cast<int>(cols.size()); ++j)
      if (cols[j].tpow == 0) sys.at(r++, j) = 1;  // coefficient of t^0 vanishes
  }

  BackwardUniqueRecord rec;
  rec.variables = sys.cols;
  rec.equations = sys.rows;
  rec.nullity = sys.cols - rational_rank(std::move(sys));
  return rec;
}

}  // namespace aheat
