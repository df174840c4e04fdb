#pragma once

#include <string>
#include <vector>

#include "lambda_forge/split_element.hpp"
#include "lambda_forge/trunc_series.hpp"
#include "lambda_forge/weighted_poly.hpp"

namespace lf {

// Additive operation on K_0, stored by its value on a line class:
// f(U) means L |-> f([L]-1), extended additively.  a_0 is the value on
// the unit class.  Results of star composition are trusted mod U^{N+1}.
using AdditiveOpSeries = TruncSeries;

// composition of additive operations: with f = sum alpha_j (1+U)^j and
// g = sum beta_k (1+U)^k in the binomial basis,
//   f * g = sum alpha_j beta_k (1+U)^{jk},
// truncated back to the common order.  (1+U) is the two-sided identity.
// Coefficients must lie in Z or Q.
AdditiveOpSeries star_compose(const AdditiveOpSeries& f, const AdditiveOpSeries& g);

// Unstable operation in gamma-tilde coordinates.  Acting on x of rank r:
//   tau(x) = unitBase^r * poly(gamma^1(x-r), ..., gamma^W(x-r))
//            + rankConstant(r) * 1.
struct GammaSeries {
  WeightedPoly poly;  // variables gamma-tilde_1..W, variable j has weight j
  ScalarDomain dom;
  Rat unitBase;
  std::vector<Rat> rankConstant;  // polynomial in the rank, lowest degree first

  GammaSeries(WeightedPoly p, ScalarDomain d)
      : poly(std::move(p)), dom(std::move(d)), unitBase(1) {}

  unsigned weight_bound() const { return poly.bound(); }
  Rat rank_constant_at(const Int& r) const;
  bool operator==(const GammaSeries& o) const;
  bool operator!=(const GammaSeries& o) const { return !(*this == o); }
  std::string str() const;
};

// reduced additive series rewritten through the elementary-symmetric
// bridge e_j -> gamma-tilde_j, truncated at weight W
GammaSeries additive_to_gamma(const AdditiveOpSeries& f, unsigned W);
// value on a line class: gamma_1 -> U, gamma_j -> 0 for j >= 2; left
// inverse of additive_to_gamma up to min(W, N)
AdditiveOpSeries gamma_to_additive(const GammaSeries& G, int N);
// class with tau(x+y) = tau(x) tau(y); needs a unit constant term
GammaSeries multiplicative_class(const TruncSeries& f, unsigned W);

// termwise action sum c_a f([O(a)]-1); needs order >= total dimension
SplitElement apply_operation(const AdditiveOpSeries& f, const SplitElement& x);
// gamma route; needs weight bound >= total dimension and integer rank
SplitElement apply_operation(const GammaSeries& G, const SplitElement& x);

struct EndoClassification {
  bool is_psi_form = false;
  long exponent = 0;
  // witness data when the functional equation f(U)f(V) = f(U+V+UV) fails:
  // the first bidegree (i, j) with differing coefficients
  bool functional_eq_holds = false;
  unsigned witness_i = 0, witness_j = 0;
  Rat lhs_coeff, rhs_coeff;
  std::string note;
};

// decides whether f, with f(0)=1 and integer coefficients, is (1+U)^k
// mod total degree N in two variables
EndoClassification classify_multiplicative_endo(const TruncSeries& f, unsigned N);

}  // namespace lf
