#pragma once

#include "lambda_forge/trunc_series.hpp"
#include "lambda_forge/weighted_poly.hpp"

namespace lf {

// chi_n as a universal polynomial in c_1..c_n (weight i on c_i), from the
// Newton-type recurrence
//   chi_k - c_1 chi_{k-1} + ... + (-1)^{k-1} c_{k-1} chi_1 + (-1)^k k c_k = 0
WeightedPoly chi_poly(unsigned n);

// p_k expressed in e_1..e_d (e_j = 0 for j > d)
WeightedPoly power_sum_in_elementary(unsigned k, unsigned d);
// e_k expressed in p_1..p_k, over Q
WeightedPoly elementary_in_power_sums(unsigned k);

// sum_k a_k p_k of f = sum a_k U^k, written in e_1..e_W up to weight W.
// Requires f(0) = 0 and order >= W.
WeightedPoly additive_symmetrization(const TruncSeries& f, unsigned W);
// prod_i f(u_i) over W formal roots, written in e_1..e_W up to weight W.
// Requires f(0) = 1 and order >= W.
WeightedPoly multiplicative_symmetrization(const TruncSeries& f, unsigned W);

// P_n with lambda^n(xy) = P_n(lambda^1 x..lambda^n x; lambda^1 y..lambda^n y):
// e-block carries the x side, f-block the y side
WeightedPoly universal_product_poly(unsigned n);
// P_{m,n} with lambda^m(lambda^n x) = P_{m,n}(lambda^1 x..lambda^{mn} x)
WeightedPoly universal_plethysm_poly(unsigned m, unsigned n);

// ---- formal-root engine, exposed for oracle checks ----

// e_k(u_1..u_d) as a root polynomial (all weights 1)
WeightedPoly elementary_in_roots(unsigned k, unsigned d, unsigned bound = WeightedPoly::kNoBound);
// rewrite a polynomial in d1 + d2 formal roots, symmetric in each block,
// as a polynomial in e_1..e_{d1} (block one) and f_1..f_{d2} (block two)
WeightedPoly symmetric_reduce(const WeightedPoly& rootPoly, unsigned d1, unsigned d2 = 0);

}  // namespace lf
