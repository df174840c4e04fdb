#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lambda_forge/lambda_k.hpp"
#include "lambda_forge/rng.hpp"

using namespace lf;

namespace {

SplitElement line_on(const BaseSpace& sp, std::initializer_list<long> a) {
  return SplitElement::line(sp, LineExp(a));
}

}  // namespace

TEST_CASE("normal forms of line classes") {
  BaseSpace p2{{2}};
  NilPoly nf = line_on(p2, {1}).normal_form();
  NilPoly expect(p2, ScalarDomain::integers());
  expect.add_term({0}, Rat(1));
  expect.add_term({1}, Rat(1));
  CHECK(nf == expect);  // 1 + u, with u = [O(1)] - 1

  BaseSpace p1{{1}};
  NilPoly nfm = line_on(p1, {-1}).normal_form();
  NilPoly em(p1, ScalarDomain::integers());
  em.add_term({0}, Rat(1));
  em.add_term({1}, Rat(-1));
  CHECK(nfm == em);  // 1 - u

  BaseSpace p11{{1, 1}};
  NilPoly nf2 = line_on(p11, {1, 1}).normal_form();
  NilPoly e2(p11, ScalarDomain::integers());
  e2.add_term({0, 0}, Rat(1));
  e2.add_term({1, 0}, Rat(1));
  e2.add_term({0, 1}, Rat(1));
  e2.add_term({1, 1}, Rat(1));
  CHECK(nf2 == e2);  // (1+u1)(1+u2)
}

TEST_CASE("equality is decided modulo nilpotence") {
  BaseSpace p1{{1}};
  // [O(2)] = 2[O(1)] - 1 on P^1: (1+u)^2 = 2(1+u) - 1 mod u^2
  SplitElement lhs = line_on(p1, {2});
  SplitElement rhs = sub(scalar_mul(Rat(2), line_on(p1, {1})), SplitElement::unit(p1));
  CHECK(lhs == rhs);
  CHECK(lhs.terms() != rhs.terms());
  CHECK(sub(lhs, rhs).is_zero());
}

TEST_CASE("from_nil_poly inverts normal_form") {
  Rng rng(7);
  BaseSpace sp{{2, 3}};
  for (int t = 0; t < 10; ++t) {
    SplitElement x = random_split_element(rng, sp, 5, 3, 4);
    SplitElement back = SplitElement::from_nil_poly(x.normal_form());
    CHECK(back == x);
  }
  // and on the point
  BaseSpace pt{{}};
  SplitElement c = scalar_mul(Rat(7), SplitElement::unit(pt));
  CHECK(SplitElement::from_nil_poly(c.normal_form()) == c);
  CHECK(c.rank() == Rat(7));
}

TEST_CASE("nil_invert") {
  BaseSpace sp{{2, 1}};
  Rng rng(11);
  for (int t = 0; t < 8; ++t) {
    NilPoly p = random_split_element(rng, sp, 4, 2, 3).normal_form().with_domain(ScalarDomain::rationals());
    if (!p.domain().is_unit(p.constant_term())) continue;
    NilPoly q = nil_invert(p);
    CHECK(mul(p, q) == NilPoly::constant(sp, ScalarDomain::rationals(), Rat(1)));
  }
  NilPoly z(sp, ScalarDomain::integers());
  z.add_term({0, 0}, Rat(2));
  CHECK_THROWS_AS(nil_invert(z), DomainError);
}

TEST_CASE("lambda on split bundles") {
  BaseSpace p2{{2}};
  SplitElement o1 = line_on(p2, {1});
  // lambda^2(O(1) + O(1)) = O(2)
  CHECK(lambda_op(2, add(o1, o1)) == line_on(p2, {2}));
  CHECK(lambda_op(0, o1) == SplitElement::unit(p2));
  CHECK(lambda_op(1, o1) == o1);
  // rank-1: lambda^n vanishes beyond the rank
  CHECK(lambda_op(2, o1).is_zero());
  CHECK(lambda_op(3, add(o1, o1)).is_zero());

  // explicit rank-3 sum: lambda^2 = sum of pairwise products
  SplitElement s = add(add(line_on(p2, {1}), line_on(p2, {2})), line_on(p2, {-1}));
  SplitElement pairs = add(add(line_on(p2, {3}), line_on(p2, {0})), line_on(p2, {1}));
  CHECK(lambda_op(2, s) == pairs);
  CHECK(lambda_op(3, s) == line_on(p2, {2}));
}

TEST_CASE("lambda rejects fractional multiplicities") {
  BaseSpace p1{{1}};
  SplitElement x = scalar_mul(Rat(1, 2), SplitElement::unit(p1).with_domain(ScalarDomain::rationals()));
  CHECK_THROWS_AS(lambda_op(2, x), DomainError);
}

TEST_CASE("gamma kills u beyond degree one") {
  for (unsigned n : {1u, 3u, 6u}) {
    BaseSpace pn{{n}};
    SplitElement u = sub(line_on(pn, {1}), SplitElement::unit(pn));
    CHECK(gamma_op(1, u) == u);
    for (unsigned k = 2; k <= 5; ++k) CHECK(gamma_op(k, u).is_zero());
    // and for other line classes
    SplitElement v = sub(line_on(pn, {-2}), SplitElement::unit(pn));
    for (unsigned k = 2; k <= 4; ++k) CHECK(gamma_op(k, v).is_zero());
  }
}

TEST_CASE("adams operations") {
  BaseSpace p2{{2}};
  SplitElement u = sub(line_on(p2, {1}), SplitElement::unit(p2));
  // Psi^2(u) = (1+u)^2 - 1 = 2u + u^2
  SplitElement expect = sub(line_on(p2, {2}), SplitElement::unit(p2));
  CHECK(adams_op(2, u) == expect);
  NilPoly nf = adams_op(2, u).normal_form();
  NilPoly e(p2, ScalarDomain::integers());
  e.add_term({1}, Rat(2));
  e.add_term({2}, Rat(1));
  CHECK(nf == e);

  CHECK(adams_op(0, u).is_zero());  // rank 0
  SplitElement s = add(line_on(p2, {1}), line_on(p2, {3}));
  CHECK(adams_op(0, s) == scalar_mul(Rat(2), SplitElement::unit(p2)));
  CHECK(adams_op(-1, s) == add(line_on(p2, {-1}), line_on(p2, {-3})));
  CHECK(dual(s) == adams_op(-1, s));
}

TEST_CASE("Newton recurrence reproduces Adams") {
  BaseSpace p2{{2}};
  SplitElement x = add(line_on(p2, {1}), line_on(p2, {2}));
  // Psi^2 = x^2 - 2 lambda^2(x)
  CHECK(adams_from_lambda_newton(1, x) == x);
  CHECK(adams_from_lambda_newton(2, x) == sub(mul(x, x), scalar_mul(Rat(2), lambda_op(2, x))));
  CHECK(adams_from_lambda_newton(2, x) == add(line_on(p2, {2}), line_on(p2, {4})));

  Rng rng(23);
  BaseSpace sp{{2, 2}};
  for (int t = 0; t < 6; ++t) {
    SplitElement z = random_split_element(rng, sp, 4, 2, 3);
    for (unsigned k = 1; k <= 4; ++k)
      CHECK(adams_from_lambda_newton(k, z) == adams_op(static_cast<long>(k), z));
  }
}

TEST_CASE("tau = Psi^2 + 2 lambda^2 squares") {
  Rng rng(31);
  BaseSpace sp{{3}};
  for (int t = 0; t < 10; ++t) {
    SplitElement x = random_split_element(rng, sp, 5, 3, 4);
    CHECK(mul(x, x) == add(adams_op(2, x), scalar_mul(Rat(2), lambda_op(2, x))));
  }
}

TEST_CASE("special lambda-ring axioms hold") {
  BaseSpace p3{{3}};
  AxiomReport rep = verify_special_axioms(line_on(p3, {1}), line_on(p3, {1}), 3);
  CHECK(rep.pass);
  CHECK(rep.failures.empty());
  CHECK(rep.dual_lambda_commutes);

  Rng rng(41);
  for (auto dims : std::vector<std::vector<unsigned>>{{4}, {2, 2}, {1, 3}}) {
    BaseSpace sp{dims};
    SplitElement x = random_split_element(rng, sp, 4, 2, 3);
    SplitElement y = random_split_element(rng, sp, 4, 2, 3);
    AxiomReport r = verify_special_axioms(x, y, 4);
    if (!r.pass) {
      for (const auto& f : r.failures) MESSAGE(f);
    }
    CHECK(r.pass);
    CHECK(r.dual_lambda_commutes);
  }

  // Psi^2 Psi^3 = Psi^6 on u over P^6
  BaseSpace p6{{6}};
  SplitElement u = sub(line_on(p6, {1}), SplitElement::unit(p6));
  CHECK(adams_op(2, adams_op(3, u)) == adams_op(6, u));
}

TEST_CASE("axiom checker flags a corrupted lambda^2") {
  BaseSpace p2{{2}};
  SplitElement x = add(line_on(p2, {1}), line_on(p2, {2}));
  SplitElement y = line_on(p2, {1});
  CHECK(verify_special_axioms(x, y, 2).pass);

  auto corrupted = [&](unsigned n, const SplitElement& z) {
    SplitElement v = lambda_op(n, z);
    if (n == 2) v = add(v, SplitElement::unit(z.space()));
    return v;
  };
  AxiomReport bad = verify_special_axioms(x, y, 2, corrupted);
  CHECK_FALSE(bad.pass);
  CHECK_FALSE(bad.failures.empty());
}
