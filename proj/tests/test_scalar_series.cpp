#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>

#include "lambda_forge/rng.hpp"
#include "lambda_forge/trunc_series.hpp"

using namespace lf;

namespace {

const ScalarDomain Z = ScalarDomain::integers();
const ScalarDomain Q = ScalarDomain::rationals();

TruncSeries random_series(Rng& rng, const ScalarDomain& dom, int order, long bound,
                          bool unit_constant = false) {
  std::vector<Rat> c(order + 1);
  for (int i = 0; i <= order; ++i) c[i] = Rat(rng.range(-bound, bound));
  if (unit_constant) c[0] = Rat(rng.range(0, 1) ? 1 : -1);
  return TruncSeries::from_coeffs(dom, std::move(c));
}

// oracle: plain convolution of coefficient vectors, no series machinery
std::vector<Rat> convolve(const std::vector<Rat>& a, const std::vector<Rat>& b, size_t n) {
  std::vector<Rat> c(n + 1, Rat(0));
  for (size_t i = 0; i < a.size() && i <= n; ++i)
    for (size_t j = 0; j < b.size() && i + j <= n; ++j) c[i + j] += a[i] * b[j];
  return c;
}

}  // namespace

TEST_CASE("scalar domains: membership, units, division") {
  CHECK(Z.contains(Rat(7)));
  CHECK_FALSE(Z.contains(Rat(1, 2)));
  CHECK(Z.is_unit(Rat(-1)));
  CHECK_FALSE(Z.is_unit(Rat(2)));
  CHECK(Z.divide(Rat(6), Rat(3)) == Rat(2));
  CHECK_THROWS_AS(Z.divide(Rat(7), Rat(3)), DomainError);

  CHECK(Q.is_unit(Rat(-3, 7)));
  CHECK(Q.divide(Rat(1), Rat(3)) == Rat(1, 3));

  ScalarDomain z12 = ScalarDomain::integers_mod(Int(12));
  CHECK(z12.normalize(Rat(-1)) == Rat(11));
  CHECK(z12.is_unit(Rat(5)));
  CHECK_FALSE(z12.is_unit(Rat(4)));
  CHECK(z12.invert(Rat(5)) == Rat(5));
  CHECK_THROWS_AS(z12.invert(Rat(3)), DomainError);
  CHECK_THROWS_AS(z12.normalize(Rat(1, 2)), DomainError);

  ScalarDomain zloc = ScalarDomain::integers_localized({Int(2), Int(3)});
  CHECK(zloc.contains(Rat(5, 12)));
  CHECK_FALSE(zloc.contains(Rat(1, 5)));
  CHECK(zloc.is_unit(Rat(8, 9)));
  CHECK_FALSE(zloc.is_unit(Rat(5, 2)));
  CHECK(zloc.divide(Rat(5), Rat(6)) == Rat(5, 6));
  CHECK_THROWS_AS(zloc.divide(Rat(1), Rat(5)), DomainError);
  CHECK_THROWS_AS(ScalarDomain::integers_localized({Int(4)}), InputError);
}

TEST_CASE("generalized binomial") {
  CHECK(binomial(Int(5), 2) == 10);
  CHECK(binomial(Int(-1), 3) == -1);
  CHECK(binomial(Int(-2), 2) == 3);  // (-2)(-3)/2
  CHECK(binomial(Int(3), 5) == 0);
  CHECK(rat_pow(Rat(2, 3), -2) == Rat(9, 4));
}

TEST_CASE("rational string round trip") {
  CHECK(rat_str(Rat(-22, 7)) == "-22/7");
  CHECK(rat_str(Rat(4)) == "4");
  CHECK(rat_parse("-22/7") == Rat(-22, 7));
  CHECK(rat_parse("6/4") == Rat(3, 2));
  CHECK_THROWS_AS(rat_parse("x"), InputError);
}

TEST_CASE("binomial_power matches direct product") {
  // oracle: multiply (1+U) five times by convolution
  std::vector<Rat> p{Rat(1)};
  for (int k = 0; k < 5; ++k) p = convolve(p, {Rat(1), Rat(1)}, 8);
  TruncSeries f = TruncSeries::binomial_power(Z, Int(5), 8);
  for (int i = 0; i <= 8; ++i) CHECK(f.coeff(i) == p[i]);

  // negative exponent: (1+U)^-1 times (1+U) = 1
  TruncSeries g = TruncSeries::binomial_power(Z, Int(-1), 8);
  CHECK(mul(g, TruncSeries::binomial_power(Z, Int(1), 8)) == TruncSeries::one(Z, 8));
  CHECK(g.coeff(3) == Rat(-1));
}

TEST_CASE("multiplication: min order, truncation coherence") {
  Rng rng(11);
  TruncSeries a = random_series(rng, Q, 8, 9);
  TruncSeries b = random_series(rng, Q, 5, 9);
  TruncSeries p = mul(a, b);
  CHECK(p.order() == 5);
  CHECK_THROWS_AS((void)p.coeff(6), OrderError);

  TruncSeries full = mul(a.truncated(5), b);
  CHECK(p == full);
  // trunc(f*g, 3) = trunc(f,3)*trunc(g,3)
  CHECK(mul(a, b).truncated(3) == mul(a.truncated(3), b.truncated(3)));

  ScalarDomain z9 = ScalarDomain::integers_mod(Int(9));
  CHECK_THROWS_AS(add(a, TruncSeries::one(z9, 8)), DomainError);
}

TEST_CASE("series ring axioms, randomized") {
  Rng rng(23);
  for (int t = 0; t < 20; ++t) {
    TruncSeries a = random_series(rng, Z, 12, 20);
    TruncSeries b = random_series(rng, Z, 12, 20);
    TruncSeries c = random_series(rng, Z, 12, 20);
    CHECK(mul(a, b) == mul(b, a));
    CHECK(mul(mul(a, b), c) == mul(a, mul(b, c)));
    CHECK(mul(a, add(b, c)) == add(mul(a, b), mul(a, c)));
    CHECK(add(a, neg(a)).is_zero());
  }
}

TEST_CASE("inversion") {
  Rng rng(37);
  for (int t = 0; t < 10; ++t) {
    TruncSeries f = random_series(rng, Q, 16, 9);
    if (f.coeff(0) == 0) f = add(f, TruncSeries::one(Q, 16));
    if (f.coeff(0) == 0) continue;
    CHECK(mul(f, series_invert(f)) == TruncSeries::one(Q, 16));
  }
  TruncSeries g = random_series(rng, Z, 12, 7, true);
  CHECK(mul(g, series_invert(g)) == TruncSeries::one(Z, 12));

  ScalarDomain z9 = ScalarDomain::integers_mod(Int(9));
  TruncSeries h = random_series(rng, z9, 10, 8);
  h = add(sub(h, TruncSeries::constant(z9, h.coeff(0), 10)), TruncSeries::constant(z9, Rat(2), 10));
  CHECK(mul(h, series_invert(h)) == TruncSeries::one(z9, 10));

  TruncSeries bad = TruncSeries::constant(Z, Rat(2), 4);
  CHECK_THROWS_AS(series_invert(bad), DomainError);
}

TEST_CASE("exp and log1p") {
  Rng rng(53);
  for (int t = 0; t < 10; ++t) {
    TruncSeries f = random_series(rng, Q, 14, 6);
    f = sub(f, TruncSeries::constant(Q, f.coeff(0), 14));
    TruncSeries e = series_exp(f);
    CHECK(series_log1p(sub(e, TruncSeries::one(Q, 14))) == f);

    TruncSeries g = random_series(rng, Q, 14, 6);
    g = sub(g, TruncSeries::constant(Q, g.coeff(0), 14));
    CHECK(series_exp(add(f, g)) == mul(series_exp(f), series_exp(g)));
  }
  CHECK_THROWS_AS(series_exp(TruncSeries::one(Q, 4)), InputError);

  // log(1+U)^2 / 2 starts U^2/2 - U^3/2 + 11 U^4/24; oracle squares the
  // alternating-harmonic coefficients directly
  std::vector<Rat> mercator{Rat(0), Rat(1), Rat(-1, 2), Rat(1, 3), Rat(-1, 4)};
  std::vector<Rat> sq = convolve(mercator, mercator, 4);
  CHECK(sq[2] / 2 == Rat(1, 2));
  CHECK(sq[3] / 2 == Rat(-1, 2));
  CHECK(sq[4] / 2 == Rat(11, 24));
  TruncSeries u = TruncSeries::var(Q, 4);
  TruncSeries p2 = scalar_mul(Rat(1, 2), mul(series_log1p(u), series_log1p(u)));
  for (int i = 0; i <= 4; ++i) CHECK(p2.coeff(i) == sq[i] / 2);
}

TEST_CASE("derivative") {
  TruncSeries f = TruncSeries::from_coeffs(Z, {Rat(4), Rat(1), Rat(3), Rat(5)});
  TruncSeries d = derivative(f);
  CHECK(d.order() == 2);
  CHECK(d.coeff(0) == Rat(1));
  CHECK(d.coeff(1) == Rat(6));
  CHECK(d.coeff(2) == Rat(15));
}

TEST_CASE("binomial basis") {
  // U^2 = (1+U)^2 - 2(1+U) + 1
  TruncSeries u2 = TruncSeries::from_coeffs(Z, {Rat(0), Rat(0), Rat(1)});
  std::vector<Rat> alpha = to_binomial_basis(u2);
  CHECK(alpha[0] == Rat(1));
  CHECK(alpha[1] == Rat(-2));
  CHECK(alpha[2] == Rat(1));

  // exponent above the order: (1+U)^6 at order 2 is 1 + 6U + 15U^2
  TruncSeries f = from_binomial_basis(Z, {{Int(6), Rat(1)}}, 2);
  CHECK(f.coeff(0) == Rat(1));
  CHECK(f.coeff(1) == Rat(6));
  CHECK(f.coeff(2) == Rat(15));

  CHECK_THROWS_AS(from_binomial_basis(Z, {{Int(-2), Rat(1)}}, 4), InputError);
  TruncSeries g = from_binomial_basis(Z, {{Int(-2), Rat(1)}}, 4, true);
  CHECK(mul(g, TruncSeries::binomial_power(Z, Int(2), 4)) == TruncSeries::one(Z, 4));
}

TEST_CASE("binomial basis round trips, randomized") {
  Rng rng(71);
  for (int t = 0; t < 15; ++t) {
    int n = static_cast<int>(rng.range(1, 20));
    TruncSeries f = random_series(rng, Z, n, 50);
    std::vector<Rat> alpha = to_binomial_basis(f);
    std::map<Int, Rat> amap;
    for (int j = 0; j <= n; ++j) amap[Int(j)] = alpha[j];
    CHECK(from_binomial_basis(Z, amap, n) == f);
  }
  // and the other direction on supported exponents
  for (int t = 0; t < 10; ++t) {
    int n = static_cast<int>(rng.range(2, 16));
    std::map<Int, Rat> amap;
    for (int j = 0; j <= n; ++j) amap[Int(j)] = Rat(rng.range(-9, 9));
    TruncSeries f = from_binomial_basis(Q, amap, n);
    std::vector<Rat> back = to_binomial_basis(f);
    for (int j = 0; j <= n; ++j) CHECK(back[j] == amap[Int(j)]);
  }
}

TEST_CASE("int_pow on series") {
  TruncSeries f = TruncSeries::from_coeffs(Q, {Rat(1), Rat(2), Rat(-1), Rat(0), Rat(3)});
  TruncSeries p3 = int_pow(f, Int(3));
  CHECK(p3 == mul(f, mul(f, f)));
  CHECK(mul(int_pow(f, Int(-2)), mul(f, f)) == TruncSeries::one(Q, 4));
}
