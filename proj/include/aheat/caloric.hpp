#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aheat/multipoly.hpp"

namespace aheat {

/// Space-time polynomial solution u(x,t) = sum_i u_i(x) t^i with the chain
/// lap u_i = (i+1) u_{i+1} and harmonic top element.
struct CaloricPolynomial {
  std::vector<MultiPoly> chain;  // u_0 .. u_{k-1}, polynomials in x only
  MultiPoly assembled;           // sum_i u_i t^i

  int time_degree() const { return static_cast<int>(chain.size()) - 1; }
  /// exact check of lap u_i = (i+1) u_{i+1} and lap u_{k-1} = 0
  bool chain_valid() const;
};

/// u_i = lap^i u0 / i!; terminates at the first harmonic iterate. The result
/// satisfies heat_op == 0 exactly and restricts to u0 at t = 0.
CaloricPolynomial caloric_extend(const MultiPoly& u0);

struct DecomposeResult {
  std::optional<CaloricPolynomial> chain;  // engaged iff accepted
  MultiPoly residual;                      // heat_op(P); zero iff accepted
};

/// Accepts P iff heat_op(P) == 0; the chain is P's t-coefficients.
DecomposeResult decompose(const MultiPoly& p);

/// dim of the caloric polynomials of parabolic degree <= floor(q) on R^n:
/// binom(n + floor(q), n).
std::int64_t dim_Hq(int n, double q);

/// Independent route: nullity of the exact linear system heat_op = 0 on the
/// coefficients of all monomials with parabolic degree <= floor(q).
std::int64_t dim_Hq_oracle(int n, double q);

struct DimBoundRow {
  int q = 0;
  std::int64_t dim = 0;
  double q_pow = 0.0;  // q^(eta+1), eta = n
  double ratio = 0.0;  // dim / q^(eta+1)
};
std::vector<DimBoundRow> check_dim_bound(int n, int q_max);

struct BackwardUniqueRecord {
  int variables = 0;
  int equations = 0;
  std::int64_t nullity = 0;
};

/// Nullity of {heat_op(P) = 0, parabolic degree <= q, and (when
/// constrain_initial) P(x,0) = 0}. Zero nullity in the constrained case is
/// the backward-uniqueness statement.
BackwardUniqueRecord backward_unique(int n, int q, bool constrain_initial = true);

/// Exact rational linear algebra used by the oracle routes.
struct RationalMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<Rational> a;  // row-major

  Rational& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const Rational& at(int i, int j) const {
    return a[static_cast<size_t>(i) * cols + j];
  }
};

int rational_rank(RationalMatrix m);
/// columns span the kernel
std::vector<std::vector<Rational>> rational_nullspace(RationalMatrix m);

/// Monomial basis x^alpha t^j with |alpha| + 2j <= pdeg_cap, in canonical
/// order; shared by the oracle system builders and the nullspace tests.
std::vector<Monomial> parabolic_monomials(int n, int pdeg_cap);

/// Matrix of heat_op on the span of parabolic_monomials(n, pdeg_cap).
RationalMatrix heat_op_matrix(int n, int pdeg_cap);

}  // namespace aheat
