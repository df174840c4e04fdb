#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lambda_forge/rng.hpp"
#include "lambda_forge/symmetric.hpp"

using namespace lf;

namespace {

const ScalarDomain Q = ScalarDomain::rationals();

WeightedPoly root_space(unsigned d, unsigned bound = WeightedPoly::kNoBound) {
  return WeightedPoly::with_weights(std::vector<unsigned>(d, 1), bound);
}

// e_i of a sub-block, placed inside a combined root space
WeightedPoly lifted_elementary(unsigned i, unsigned offset, unsigned d, unsigned vars,
                               unsigned bound = WeightedPoly::kNoBound) {
  WeightedPoly small = elementary_in_roots(i, d);
  WeightedPoly out = root_space(vars, bound);
  for (const auto& [m, c] : small.terms()) {
    Mono big(vars, 0);
    for (unsigned v = 0; v < d; ++v) big[offset + v] = m[v];
    out.add_term(big, c);
  }
  return out;
}

WeightedPoly sum_of_powers(unsigned k, unsigned d) {  // u_1^k + ... + u_d^k
  WeightedPoly p = root_space(d);
  for (unsigned i = 0; i < d; ++i) {
    Mono m(d, 0);
    m[i] = k;
    p.add_term(m, Rat(1));
  }
  return p;
}

TruncSeries random_reduced(Rng& rng, int order, long bound) {
  std::vector<Rat> c(order + 1, Rat(0));
  for (int i = 1; i <= order; ++i) c[i] = Rat(rng.range(-bound, bound));
  return TruncSeries::from_coeffs(Q, std::move(c));
}

}  // namespace

TEST_CASE("chi_poly frozen low cases") {
  WeightedPoly c1 = WeightedPoly::variable(1, 0, WeightedPoly::kNoBound, 0);
  CHECK(chi_poly(1) == c1);

  {
    unsigned n = 2;
    auto c = [&](unsigned i) { return WeightedPoly::variable(n, 0, WeightedPoly::kNoBound, i - 1); };
    CHECK(chi_poly(2) == sub(mul(c(1), c(1)), scalar_mul(Rat(2), c(2))));
  }
  {
    unsigned n = 3;
    auto c = [&](unsigned i) { return WeightedPoly::variable(n, 0, WeightedPoly::kNoBound, i - 1); };
    WeightedPoly expect =
        add(sub(mul(c(1), mul(c(1), c(1))), scalar_mul(Rat(3), mul(c(1), c(2)))), scalar_mul(Rat(3), c(3)));
    CHECK(chi_poly(3) == expect);
  }
  CHECK_THROWS_AS(chi_poly(0), InputError);
}

TEST_CASE("chi_poly is the power sum in Chern roots") {
  for (unsigned n = 1; n <= 6; ++n) CHECK(chi_poly(n) == power_sum_in_elementary(n, n));
}

TEST_CASE("Newton: power sums from elementaries, checked on explicit roots") {
  for (unsigned d = 2; d <= 4; ++d) {
    std::vector<WeightedPoly> evals;
    for (unsigned i = 1; i <= d; ++i) evals.push_back(elementary_in_roots(i, d));
    PolyRing R(root_space(d));
    for (unsigned k = 1; k <= 5; ++k) {
      WeightedPoly pk = evaluate(power_sum_in_elementary(k, d), R, evals);
      CHECK(pk == sum_of_powers(k, d));
    }
  }
}

TEST_CASE("Newton: both directions invert") {
  for (unsigned k = 1; k <= 5; ++k) {
    // e_k(p_1(e), ..., p_k(e)) = e_k inside Q[e_1..e_k]
    std::vector<WeightedPoly> pvals;
    for (unsigned i = 1; i <= k; ++i) pvals.push_back(power_sum_in_elementary(i, k));
    PolyRing R(WeightedPoly(k, 0, WeightedPoly::kNoBound));
    WeightedPoly back = evaluate(elementary_in_power_sums(k), R, pvals);
    CHECK(back == WeightedPoly::variable(k, 0, WeightedPoly::kNoBound, k - 1));
  }
}

TEST_CASE("additive symmetrization") {
  TruncSeries u = TruncSeries::var(Q, 2);
  // f = U gives p_1 = e_1
  CHECK(additive_symmetrization(TruncSeries::from_coeffs(Q, {Rat(0), Rat(1), Rat(0)}), 2) ==
        power_sum_in_elementary(1, 2).truncated(2));
  // f = U^2 gives p_2 = e_1^2 - 2 e_2
  WeightedPoly p2 = additive_symmetrization(TruncSeries::from_coeffs(Q, {Rat(0), Rat(0), Rat(1)}), 2);
  auto e = [](unsigned i) { return WeightedPoly::variable(2, 0, 2, i - 1); };
  CHECK(p2 == sub(mul(e(1), e(1)), scalar_mul(Rat(2), e(2))));

  CHECK_THROWS_AS(additive_symmetrization(TruncSeries::one(Q, 4), 4), InputError);
  CHECK_THROWS_AS(additive_symmetrization(u, 5), OrderError);

  // random series against direct expansion over explicit roots
  Rng rng(97);
  for (int t = 0; t < 5; ++t) {
    unsigned W = 5;
    TruncSeries f = random_reduced(rng, 5, 9);
    WeightedPoly sym = additive_symmetrization(f, W);
    std::vector<WeightedPoly> evals;
    for (unsigned i = 1; i <= W; ++i) evals.push_back(elementary_in_roots(i, W));
    PolyRing R(root_space(W));
    WeightedPoly direct = root_space(W);
    for (unsigned k = 1; k <= W; ++k)
      direct = add(direct, scalar_mul(f.coeff(k), sum_of_powers(k, W)));
    CHECK(evaluate(sym, R, evals) == direct);
  }
}

TEST_CASE("multiplicative symmetrization") {
  // f = 1+U gives 1 + e_1 + e_2 + e_3
  TruncSeries f1 = TruncSeries::from_coeffs(Q, {Rat(1), Rat(1), Rat(0), Rat(0)});
  WeightedPoly m = multiplicative_symmetrization(f1, 3);
  WeightedPoly expect = WeightedPoly::constant(3, 0, 3, Rat(1));
  for (unsigned i = 1; i <= 3; ++i)
    expect = add(expect, WeightedPoly::variable(3, 0, 3, i - 1));
  CHECK(m == expect);

  CHECK_THROWS_AS(multiplicative_symmetrization(TruncSeries::var(Q, 4), 4), InputError);

  Rng rng(101);
  for (int t = 0; t < 5; ++t) {
    unsigned W = 4;
    TruncSeries f = add(TruncSeries::one(Q, W), random_reduced(rng, W, 6));
    WeightedPoly sym = multiplicative_symmetrization(f, W);

    // direct product over 4 explicit roots, truncated at total degree 4
    WeightedPoly direct = root_space(W, W);
    direct.add_term(Mono(W, 0), Rat(1));
    for (unsigned i = 0; i < W; ++i) {
      WeightedPoly fi = root_space(W, W);
      for (int k = 0; k <= static_cast<int>(W); ++k) {
        Mono mono(W, 0);
        mono[i] = k;
        fi.add_term(mono, f.coeff(k));
      }
      direct = mul(direct, fi);
    }
    std::vector<WeightedPoly> evals;
    for (unsigned i = 1; i <= W; ++i) evals.push_back(elementary_in_roots(i, W, W));
    PolyRing R(root_space(W, W));
    CHECK(evaluate(sym, R, evals) == direct);

    // stability: one more root, truncated to the same weight, same answer
    WeightedPoly sym5 = multiplicative_symmetrization(
        TruncSeries::from_coeffs(Q, {f.coeff(0), f.coeff(1), f.coeff(2), f.coeff(3), f.coeff(4), Rat(0)}), W + 1)
                            .truncated(W);
    WeightedPoly trimmed(W, 0, W);
    for (const auto& [mono, c] : sym5.terms()) {
      CHECK(mono[W] == 0);
      trimmed.add_term(Mono(mono.begin(), mono.begin() + W), c);
    }
    CHECK(trimmed == sym);
  }
}

TEST_CASE("universal product polynomial") {
  // n = 1: e1 f1
  WeightedPoly p1 = universal_product_poly(1);
  WeightedPoly expect1 = mul(WeightedPoly::variable(1, 1, WeightedPoly::kNoBound, 0),
                             WeightedPoly::variable(1, 1, WeightedPoly::kNoBound, 1));
  CHECK(p1 == expect1);

  // n = 2: e1^2 f2 + e2 f1^2 - 2 e2 f2
  auto v = [](unsigned idx) { return WeightedPoly::variable(2, 2, WeightedPoly::kNoBound, idx); };
  WeightedPoly expect2 = add(sub(mul(mul(v(0), v(0)), v(3)), scalar_mul(Rat(2), mul(v(1), v(3)))),
                             mul(v(1), mul(v(2), v(2))));
  CHECK(universal_product_poly(2) == expect2);

  // numeric spot check: roots x = {2,3}, y = {5,7}
  RatRing R;
  CHECK(evaluate(universal_product_poly(2), R, {Rat(5), Rat(6), Rat(12), Rat(35)}) == Rat(1319));

  // block swap symmetry
  for (unsigned n = 1; n <= 4; ++n) {
    WeightedPoly p = universal_product_poly(n);
    WeightedPoly swapped(n, n, WeightedPoly::kNoBound);
    for (const auto& [m, c] : p.terms()) {
      Mono s(m.begin() + n, m.end());
      s.insert(s.end(), m.begin(), m.begin() + n);
      swapped.add_term(s, c);
    }
    CHECK(swapped == p);
  }
}

TEST_CASE("universal product against explicit roots") {
  for (unsigned n = 1; n <= 4; ++n) {
    unsigned vars = 2 * n;
    std::vector<WeightedPoly> evals;
    for (unsigned i = 1; i <= n; ++i) evals.push_back(lifted_elementary(i, 0, n, vars));
    for (unsigned j = 1; j <= n; ++j) evals.push_back(lifted_elementary(j, n, n, vars));
    PolyRing R(root_space(vars));
    WeightedPoly lhs = evaluate(universal_product_poly(n), R, evals);

    // e_n of the n^2 pairwise products, assembled directly
    WeightedPoly pairs = root_space(vars);
    {
      std::vector<Mono> ms;
      for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) {
          Mono m(vars, 0);
          m[i] = 1;
          m[n + j] = 1;
          ms.push_back(m);
        }
      // elementary symmetric of the list: iterate subsets via odometer
      std::vector<unsigned> idx(n);
      for (unsigned i = 0; i < n; ++i) idx[i] = i;
      while (true) {
        Mono m(vars, 0);
        for (unsigned t : idx)
          for (unsigned v2 = 0; v2 < vars; ++v2) m[v2] += ms[t][v2];
        pairs.add_term(m, Rat(1));
        int j = static_cast<int>(n) - 1;
        while (j >= 0 && idx[j] == ms.size() - n + j) --j;
        if (j < 0) break;
        ++idx[j];
        for (unsigned i = j + 1; i < n; ++i) idx[i] = idx[i - 1] + 1;
      }
    }
    CHECK(lhs == pairs);
  }
}

TEST_CASE("universal plethysm polynomial") {
  CHECK(universal_plethysm_poly(1, 3) == WeightedPoly::variable(3, 0, WeightedPoly::kNoBound, 2));
  CHECK(universal_plethysm_poly(4, 1) == WeightedPoly::variable(4, 0, WeightedPoly::kNoBound, 3));

  // lambda^2(lambda^2 x) in lambda coordinates, checked over explicit roots
  for (auto [m, n] : std::vector<std::pair<unsigned, unsigned>>{{2, 2}, {2, 3}, {3, 2}, {2, 4}, {4, 2}}) {
    unsigned d = m * n;
    std::vector<WeightedPoly> evals;
    for (unsigned i = 1; i <= d; ++i) evals.push_back(elementary_in_roots(i, d));
    PolyRing R(root_space(d));
    WeightedPoly lhs = evaluate(universal_plethysm_poly(m, n), R, evals);

    // e_m of all n-fold products of distinct roots
    std::vector<Mono> block;
    {
      std::vector<unsigned> idx(n);
      for (unsigned i = 0; i < n; ++i) idx[i] = i;
      while (true) {
        Mono mono(d, 0);
        for (unsigned t : idx) mono[t] = 1;
        block.push_back(mono);
        int j = static_cast<int>(n) - 1;
        while (j >= 0 && idx[j] == d - n + j) --j;
        if (j < 0) break;
        ++idx[j];
        for (unsigned i = j + 1; i < n; ++i) idx[i] = idx[i - 1] + 1;
      }
    }
    WeightedPoly rhs = root_space(d);
    {
      std::vector<unsigned> idx(m);
      for (unsigned i = 0; i < m; ++i) idx[i] = i;
      while (true) {
        Mono mono(d, 0);
        for (unsigned t : idx)
          for (unsigned v = 0; v < d; ++v) mono[v] += block[t][v];
        rhs.add_term(mono, Rat(1));
        int j = static_cast<int>(m) - 1;
        while (j >= 0 && idx[j] == block.size() - m + j) --j;
        if (j < 0) break;
        ++idx[j];
        for (unsigned i = j + 1; i < m; ++i) idx[i] = idx[i - 1] + 1;
      }
    }
    CHECK(lhs == rhs);
  }
}

TEST_CASE("symmetric_reduce rejects asymmetric input") {
  WeightedPoly p = root_space(2);
  Mono m(2, 0);
  m[0] = 1;
  p.add_term(m, Rat(1));  // u_1 alone is not symmetric
  CHECK_THROWS_AS(symmetric_reduce(p, 2, 0), InputError);
}
