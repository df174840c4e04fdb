#pragma once

#include <string>

#include "lambda_forge/split_element.hpp"

namespace lf {

// CH*(P^{n_1} x ... x P^{n_m}) = B[h_1..h_m]/(h_i^{n_i+1}) is the same
// quotient NilPoly already carries, with u_i read as the hyperplane
// class h_i.
using ChowClass = NilPoly;

// c(sum c_a L_a) = prod (1 + sum_i a_i h_i)^{c_a}; the presentation must
// have integer multiplicities, negative ones invert in the nilpotent ring
ChowClass total_chern(const SplitElement& x);
// graded piece c_i(x)
ChowClass chern_class(unsigned i, const SplitElement& x);
// the Newton-recurrence polynomial in c_1..c_n evaluated on the Chern
// classes of x; chi_0 is the rank.  Additive in x, chi_n(L) = c_1(L)^n.
ChowClass chi_n_class(unsigned n, const SplitElement& x);
// ch(L) = exp(c_1 L) extended additively; lands over Q
ChowClass chern_character(const SplitElement& x);
// td(L) = c_1 L / (1 - exp(-c_1 L)) extended multiplicatively with
// virtual inverses; integer multiplicities required; lands over Q
ChowClass todd_class(const SplitElement& x);

// f: X -> S, either the projection of the whole product to the point or
// the projection forgetting the last projective factor
struct RelativeMap {
  enum class Kind { ProjectionToPoint, ForgetLastFactor };

  Kind kind = Kind::ProjectionToPoint;
  BaseSpace source;

  static RelativeMap projection_to_point(BaseSpace src);
  static RelativeMap forget_last_factor(BaseSpace src);  // needs a factor

  BaseSpace target() const;
  // indices of the source factors collapsed by f
  std::vector<unsigned> relative_factors() const;
  unsigned relative_dim() const;
  std::string str() const;
};

// [T_f] = sum over collapsed factors ((d_i + 1)[O(e_i)] - 1), the Euler
// sequence class; cotangent is its dual with the same rank bookkeeping
SplitElement tangent_class(const RelativeMap& f);
SplitElement cotangent_class(const RelativeMap& f);

// fiberwise Euler characteristic: [O(a, m)] on a last factor P^d maps to
// C(m+d, d) [O(a)], the Hilbert polynomial value, for every m in Z
SplitElement k_pushforward(const RelativeMap& f, const SplitElement& x);
// fiber integration: extracts the top power of each collapsed factor
ChowClass chow_pushforward(const RelativeMap& f, const ChowClass& y);

SplitElement k_pullback(const RelativeMap& f, const SplitElement& y);
ChowClass chow_pullback(const RelativeMap& f, const ChowClass& y);

// C(m+d, d) as the integer-valued polynomial (m+1)...(m+d)/d!, all m in Z
Int euler_characteristic(long m, unsigned d);

}  // namespace lf
