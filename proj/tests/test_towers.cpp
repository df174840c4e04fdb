#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <vector>

#include "lambda_forge/op_ring.hpp"
#include "lambda_forge/report.hpp"
#include "lambda_forge/rng.hpp"
#include "lambda_forge/towers.hpp"

using namespace lf;

namespace {

const ScalarDomain Z = ScalarDomain::integers();
const ScalarDomain Q = ScalarDomain::rationals();

TruncSeries one_plus_u(const ScalarDomain& dom, int N) {
  return add(TruncSeries::one(dom, N), TruncSeries::var(dom, N));
}

TruncSeries random_series(Rng& rng, const ScalarDomain& dom, int N, long bound) {
  std::vector<Rat> c(N + 1);
  for (int i = 0; i <= N; ++i) {
    if (dom.kind() == DomainKind::Rationals) c[i] = rng.rat(bound, 4);
    else if (dom.kind() == DomainKind::IntegersMod)
      c[i] = Rat(Int(rng.range(0, to_long(dom.modulus()) - 1)));
    else c[i] = Rat(rng.range(-bound, bound));
  }
  return TruncSeries::from_coeffs(dom, std::move(c));
}

}  // namespace

TEST_CASE("omega_apply: binomials are eigenvectors, constants die, p_n shifts down") {
  TruncSeries b3 = TruncSeries::binomial_power(Z, 3, 6);
  CHECK(omega_apply(b3) == scalar_mul(Rat(3), TruncSeries::binomial_power(Z, 3, 5)));

  CHECK(omega_apply(TruncSeries::constant(Z, Rat(9), 5)).is_zero());
  CHECK(omega_apply(TruncSeries::constant(Z, Rat(9), 0)).is_zero());

  std::vector<TruncSeries> P = p_basis(4, 8);
  for (unsigned n = 1; n <= 4; ++n) CHECK(omega_apply(P[n]) == P[n - 1].truncated(7));
}

TEST_CASE("omega_lift over Z: 1+U is a fixed point, U obstructs at b_2") {
  int N = 10;
  OmegaLift fixed = omega_lift(one_plus_u(Z, N));
  REQUIRE(fixed.ok);
  // the lift is shown with b_0 = 0; adding back the free constant 1 gives 1+U
  CHECK(add(fixed.lift, TruncSeries::one(Z, N + 1)) == one_plus_u(Z, N + 1));
  CHECK(omega_apply(fixed.lift) == one_plus_u(Z, N));

  OmegaLift bad = omega_lift(TruncSeries::var(Z, N));
  CHECK_FALSE(bad.ok);
  CHECK(bad.obstruction == 2);
}

TEST_CASE("omega_lift over Z: the lift of 1/(1+U) is -1/(1+U) up to its constant") {
  int N = 12;
  OmegaLift l = omega_lift(TruncSeries::binomial_power(Z, -1, N));
  REQUIRE(l.ok);
  CHECK(l.lift == sub(TruncSeries::one(Z, N + 1), TruncSeries::binomial_power(Z, -1, N + 1)));
  CHECK(omega_apply(l.lift) == TruncSeries::binomial_power(Z, -1, N));
}

TEST_CASE("omega_lift over Q always succeeds; localizing rescues U prime by prime") {
  Rng rng(31);
  for (int t = 0; t < 6; ++t) {
    TruncSeries f = random_series(rng, Q, 9, 8);
    OmegaLift l = omega_lift(f);
    REQUIRE(l.ok);
    CHECK(omega_apply(l.lift) == f);
  }
  // the lift of U is U - log(1+U), so b_n = (-1)^n / n: inverting 2 clears
  // the order-2 obstruction and the next one appears at 3
  ScalarDomain Z2 = ScalarDomain::integers_localized({Int(2)});
  OmegaLift l2 = omega_lift(TruncSeries::var(Z2, 1));
  REQUIRE(l2.ok);
  CHECK(l2.lift.coeff(2) == Rat(1, 2));
  OmegaLift l3 = omega_lift(TruncSeries::var(Z2, 4));
  CHECK_FALSE(l3.ok);
  CHECK(l3.obstruction == 3);
  ScalarDomain Z235 = ScalarDomain::integers_localized({Int(2), Int(3), Int(5)});
  OmegaLift l5 = omega_lift(TruncSeries::var(Z235, 4));
  REQUIRE(l5.ok);
  CHECK(l5.lift.coeff(2) == Rat(1, 2));
  CHECK(l5.lift.coeff(5) == Rat(-1, 5));
  CHECK(omega_apply(l5.lift) == TruncSeries::var(Z235, 4));
}

TEST_CASE("fp membership: block sums with alternating signs") {
  ScalarDomain F2 = ScalarDomain::integers_mod(2);
  CHECK(fp_membership_L(one_plus_u(F2, 5)));
  CHECK_FALSE(fp_membership_L(TruncSeries::one(F2, 5)));

  // (1+U) d(U^2)/dU = 2U + 2U^2 is an Omega image over F_3
  ScalarDomain F3 = ScalarDomain::integers_mod(3);
  TruncSeries u2 = mul(TruncSeries::var(F3, 6), TruncSeries::var(F3, 6));
  CHECK(fp_membership_L(omega_apply(u2)));

  CHECK_THROWS_AS(fp_membership_L(one_plus_u(Z, 5)), InputError);
  CHECK_THROWS_AS(fp_membership_L(one_plus_u(ScalarDomain::integers_mod(4), 5)), InputError);
}

TEST_CASE("fp_canonical_lift: round trip into L for p = 2, 3, 5") {
  for (long p : {2L, 3L, 5L}) {
    ScalarDomain Fp = ScalarDomain::integers_mod(p);
    int N = static_cast<int>(4 * p);
    Rng rng(static_cast<uint64_t>(100 + p));
    for (int t = 0; t < 20; ++t) {
      TruncSeries g = random_series(rng, Fp, N + 1, 0);
      TruncSeries f = omega_apply(g);
      REQUIRE(fp_membership_L(f));
      TruncSeries lift = fp_canonical_lift(f);
      CHECK(omega_apply(lift) == f);
      CHECK(fp_membership_L(lift));
    }
  }
}

TEST_CASE("fp_canonical_lift: unique within L, rejects non-members") {
  ScalarDomain F3 = ScalarDomain::integers_mod(3);
  Rng rng(77);
  TruncSeries g = random_series(rng, F3, 13, 0);
  TruncSeries f = omega_apply(g);
  TruncSeries lift = fp_canonical_lift(f);
  // adding U^3 stays in the kernel of Omega but leaves L
  TruncSeries shifted = add(lift, mul(mul(TruncSeries::var(F3, 13), TruncSeries::var(F3, 13)),
                                      TruncSeries::var(F3, 13)));
  CHECK(omega_apply(shifted) == f);
  CHECK_FALSE(fp_membership_L(shifted));

  CHECK_THROWS_AS(fp_canonical_lift(TruncSeries::one(F3, 8)), InputError);
}

TEST_CASE("tower lift: 1+U climbs to depth 20") {
  TowerLift t = tower_lift_to_depth(one_plus_u(Z, 12), 20);
  REQUIRE(t.ok);
  REQUIRE(t.chain.size() == 21);
  CHECK(t.chain[0] == one_plus_u(Z, 12));
  for (unsigned j = 1; j <= 20; ++j) {
    CHECK(t.chain[j].order() == 12 + static_cast<int>(j));
    CHECK(t.chain[j].domain() == Z);
    CHECK(omega_apply(t.chain[j]) == t.chain[j - 1]);
  }
}

TEST_CASE("tower lift: 1/(1+U) climbs to depth 20; the alternating chain is compatible") {
  TowerLift t = tower_lift_to_depth(TruncSeries::binomial_power(Z, -1, 24), 20);
  REQUIRE(t.ok);
  for (unsigned j = 1; j <= 20; ++j) CHECK(omega_apply(t.chain[j]) == t.chain[j - 1]);

  // the chain g_j = (-1)^j / (1+U) solves the same tower
  for (unsigned j = 0; j < 4; ++j) {
    TruncSeries gj1 = TruncSeries::binomial_power(Z, -1, 25 + static_cast<int>(j));
    if (j % 2 == 0) gj1 = neg(gj1);
    TruncSeries gj = TruncSeries::binomial_power(Z, -1, 24 + static_cast<int>(j));
    if (j % 2 == 1) gj = neg(gj);
    CHECK(omega_apply(gj1) == gj);
  }
}

TEST_CASE("tower lift: U obstructs at depth 1, 2U as well") {
  TowerLift t = tower_lift_to_depth(TruncSeries::var(Z, 8), 3);
  CHECK_FALSE(t.ok);
  CHECK(t.obstructionDepth == 1);

  TowerLift t2 = tower_lift_to_depth(scalar_mul(Rat(2), TruncSeries::var(Z, 8)), 3);
  CHECK_FALSE(t2.ok);
  CHECK(t2.obstructionDepth == 1);

  CHECK_THROWS_AS(tower_lift_to_depth(one_plus_u(Q, 8), 2), InputError);
}

TEST_CASE("sigma: geometric sequences give binomial powers") {
  std::vector<Rat> a;
  for (int n = 0; n <= 8; ++n) a.push_back(rat_pow(Rat(2), n));
  CHECK(sigma(a, 8) == TruncSeries::binomial_power(Q, 2, 8));

  CHECK(sigma({}, 6).is_zero());
  CHECK(sigma({Rat(1)}, 6) == TruncSeries::one(Q, 6));
  CHECK_THROWS_AS(sigma(std::vector<Rat>(9, Rat(1)), 7), InputError);
}

TEST_CASE("sigma_inverse: binomials, basis vectors, U, random round trips") {
  std::vector<Rat> a3 = sigma_inverse(TruncSeries::binomial_power(Q, 3, 10));
  for (int n = 0; n <= 10; ++n) CHECK(a3[n] == rat_pow(Rat(3), n));

  std::vector<TruncSeries> P = p_basis(8, 8);
  std::vector<Rat> e5 = sigma_inverse(P[5]);
  for (int n = 0; n <= 8; ++n) CHECK(e5[n] == (n == 5 ? Rat(1) : Rat(0)));

  std::vector<Rat> au = sigma_inverse(TruncSeries::var(Q, 9));
  CHECK(au[0] == 0);
  for (int n = 1; n <= 9; ++n) CHECK(au[n] == 1);

  Rng rng(5150);
  for (int t = 0; t < 8; ++t) {
    TruncSeries f = random_series(rng, Q, 11, 7);
    CHECK(sigma(sigma_inverse(f), 11) == f);
  }
}

TEST_CASE("sigma intertwines the shift with Omega") {
  Rng rng(62);
  int N = 14;
  for (int t = 0; t < 10; ++t) {
    std::vector<Rat> a;
    for (int n = 0; n <= N; ++n) a.push_back(rng.rat(6, 4));
    std::vector<Rat> sa(a.begin() + 1, a.end());
    CHECK(sigma(sa, N - 1) == omega_apply(sigma(a, N)));
  }
}

TEST_CASE("sigma turns pointwise products into star products") {
  Rng rng(63);
  int N = 16;
  for (int t = 0; t < 30; ++t) {
    std::vector<Rat> a, b, ab;
    for (int n = 0; n <= N; ++n) {
      a.push_back(rng.rat(5, 3));
      b.push_back(rng.rat(5, 3));
      ab.push_back(a.back() * b.back());
    }
    CHECK(sigma(ab, N) == star_compose(sigma(a, N), sigma(b, N)));
  }
}

TEST_CASE("stable elements: projector levels and the stable Adams family") {
  StableElement p0 = pi_n(0, 8, 8);
  CHECK(p0.level(0) == TruncSeries::one(Q, 8));
  CHECK(p0.level(1) == p_basis(1, 8)[1]);
  CHECK(pi_n(-2, 8, 8).level(1).is_zero());
  CHECK(pi_n(-2, 8, 8).level(2) == TruncSeries::one(Q, 8));

  StableElement psi2 = psi_stable(2, 8, 8);
  CHECK(psi2.level(1) == scalar_mul(Rat(1, 2), TruncSeries::binomial_power(Q, 2, 8)));
  CHECK(psi2.level(0) == TruncSeries::binomial_power(Q, 2, 8));

  CHECK_THROWS_AS(psi_stable(0, 4, 8), InputError);
  CHECK_THROWS_AS(StableElement({{5, Rat(1)}}, 3, 8), InputError);
  CHECK_THROWS_AS(StableElement({{0, Rat(1)}}, 9, 8), InputError);
}

TEST_CASE("stable elements: every constructor gives an Omega-compatible family") {
  int W = 5, N = 10;
  std::vector<StableElement> xs = {pi_n(2, W, N), pi_n(-3, W, N), psi_stable(3, W, N),
                                   psi_stable(-2, W, N), chi_interval(2, W, N),
                                   phi_nk(1, 2, W, N), stable_identity(W, N)};
  for (const StableElement& x : xs)
    for (long k = 0; k <= 3; ++k)
      CHECK(omega_apply(x.level(k + 1)) == x.level(k).truncated(N - 1));
}

TEST_CASE("chi_interval is the pointwise sum of projectors") {
  StableElement sum = stable_add(stable_add(pi_n(-1, 4, 8), pi_n(0, 4, 8)), pi_n(1, 4, 8));
  CHECK(chi_interval(1, 4, 8) == sum);
}

TEST_CASE("stable composition: Adams eigenvalues and orthogonal projectors") {
  int W = 6, N = 10;
  StableElement psi3 = psi_stable(3, W, N);
  for (long n = -2; n <= 2; ++n) {
    StableElement lhs = stable_compose(psi3, pi_n(n, W, N));
    CHECK(lhs == stable_scalar(rat_pow(Rat(3), n), pi_n(n, W, N)));
    CHECK(lhs == stable_compose(pi_n(n, W, N), psi3));
  }
  for (long n = -2; n <= 2; ++n)
    for (long m = -2; m <= 2; ++m) {
      StableElement prod = stable_compose(pi_n(n, W, N), pi_n(m, W, N));
      if (n == m) CHECK(prod == pi_n(n, W, N));
      else CHECK(prod.window().empty());
    }
}

TEST_CASE("the interval projectors act as the identity on window-supported elements") {
  int W = 5, N = 9;
  Rng rng(99);
  std::map<long, Rat> w;
  for (long m = -3; m <= 3; ++m) w[m] = rng.rat(7, 3);
  StableElement x(w, W, N);
  CHECK(stable_compose(chi_interval(3, W, N), x) == x);
  CHECK(stable_compose(chi_interval(5, W, N), x) == x);
  CHECK(stable_compose(stable_identity(W, N), x) == x);
}

TEST_CASE("phi_nk inverts Psi^k - k^n away from the n-th eigenspace") {
  int W = 6, N = 10;
  for (long n : {-1L, 0L, 2L}) {
    StableElement gap =
        stable_sub(psi_stable(2, W, N), stable_scalar(rat_pow(Rat(2), n), stable_identity(W, N)));
    StableElement lhs = stable_compose(phi_nk(n, 2, W, N), gap);
    CHECK(lhs == stable_sub(stable_identity(W, N), pi_n(n, W, N)));
  }
  CHECK_THROWS_AS(phi_nk(0, 1, 4, 8), InputError);
}

TEST_CASE("stable composition agrees with star composition level by level") {
  int W = 5, N = 10;
  Rng rng(7001);
  for (int t = 0; t < 4; ++t) {
    std::map<long, Rat> wa, wb;
    for (long m = -W; m <= W; ++m) {
      wa[m] = rng.rat(4, 3);
      wb[m] = rng.rat(4, 3);
    }
    StableElement x(wa, W, N), y(wb, W, N);
    StableElement xy = stable_compose(x, y);
    for (long k = 0; k <= 2; ++k)
      CHECK(xy.level(k) == star_compose(x.level(k), y.level(k)));
  }
}

TEST_CASE("analyze_tower: Omega towers over F_3, Q, Z") {
  LimReport f3 = analyze_tower(TowerDescriptor::omega(GroupDescriptor::fp_vector(3), 12));
  CHECK(f3.ml == MittagLeffler::Yes);
  CHECK(f3.lim.kind == LimClass::Kind::SubgroupOfSeries);
  CHECK(f3.lim.detail.find("L_{F_3}") != std::string::npos);
  CHECK(f3.r1lim.kind == R1Class::Kind::Zero);
  CHECK_FALSE(f3.evidence.empty());

  LimReport q = analyze_tower(TowerDescriptor::omega(GroupDescriptor::rationals(), 10));
  CHECK(q.ml == MittagLeffler::Yes);
  CHECK(q.lim.kind == LimClass::Kind::SequenceSpace);
  CHECK(q.r1lim.kind == R1Class::Kind::Zero);

  LimReport z = analyze_tower(TowerDescriptor::omega(GroupDescriptor::free_abelian(1), 10));
  CHECK(z.ml == MittagLeffler::Unknown);
  CHECK(z.lim.kind == LimClass::Kind::SubgroupOfSeries);
  CHECK(z.r1lim.kind == R1Class::Kind::Unknown);
  CHECK(z.evidence.size() >= 2);
}

TEST_CASE("analyze_tower: factorial towers") {
  LimReport zf = analyze_tower(TowerDescriptor::factorial(GroupDescriptor::free_abelian(1), 10));
  CHECK(zf.ml == MittagLeffler::No);
  CHECK(zf.lim.kind == LimClass::Kind::Zero);
  CHECK(zf.r1lim.kind == R1Class::Kind::HatZModZPower);
  CHECK(zf.r1lim.power == 1);

  LimReport qf = analyze_tower(TowerDescriptor::factorial(GroupDescriptor::rationals(), 10));
  CHECK(qf.ml == MittagLeffler::Yes);
  CHECK(qf.lim.kind == LimClass::Kind::IsomorphicTo);
  CHECK(qf.lim.iso.kind == GroupDescriptor::Kind::Rationals);
  CHECK(qf.r1lim.kind == R1Class::Kind::Zero);

  LimReport ff = analyze_tower(TowerDescriptor::factorial(GroupDescriptor::finite({Int(2)}), 10));
  CHECK(ff.ml == MittagLeffler::Yes);
  CHECK(ff.lim.kind == LimClass::Kind::Zero);
  CHECK(ff.r1lim.kind == R1Class::Kind::Zero);

  LimReport fg = analyze_tower(
      TowerDescriptor::factorial(GroupDescriptor::finitely_generated(2, {Int(3)}), 10));
  CHECK(fg.ml == MittagLeffler::No);
  CHECK(fg.r1lim.kind == R1Class::Kind::HatZModZPower);
  CHECK(fg.r1lim.power == 2);
}

TEST_CASE("analyze_tower: shifts and products") {
  TowerDescriptor inner = TowerDescriptor::factorial(GroupDescriptor::finite({Int(2)}), 8);
  LimReport sh = analyze_tower(TowerDescriptor::shifted(3, inner));
  CHECK(sh.lim.kind == LimClass::Kind::Zero);
  CHECK(sh.r1lim.kind == R1Class::Kind::Zero);
  CHECK(sh.ml == MittagLeffler::Yes);
  CHECK(sh.evidence[0].find("shift") != std::string::npos);

  LimReport prod = analyze_tower(TowerDescriptor::product(
      {TowerDescriptor::factorial(GroupDescriptor::free_abelian(1), 8),
       TowerDescriptor::factorial(GroupDescriptor::finitely_generated(2, {}), 8)}));
  CHECK(prod.components.size() == 2);
  CHECK(prod.ml == MittagLeffler::No);
  CHECK(prod.lim.kind == LimClass::Kind::Zero);
  CHECK(prod.r1lim.kind == R1Class::Kind::HatZModZPower);
  CHECK(prod.r1lim.power == 3);
}

TEST_CASE("hom_q and ext_q closed forms") {
  LimClass h = hom_q(GroupDescriptor::free_abelian(1));
  CHECK(h.kind == LimClass::Kind::Zero);
  R1Class e = ext_q(GroupDescriptor::free_abelian(1));
  CHECK(e.kind == R1Class::Kind::HatZModZPower);
  CHECK(e.power == 1);

  CHECK(hom_q(GroupDescriptor::finite({Int(2)})).kind == LimClass::Kind::Zero);
  CHECK(ext_q(GroupDescriptor::finite({Int(2)})).kind == R1Class::Kind::Zero);

  CHECK(hom_q(GroupDescriptor::rationals()).kind == LimClass::Kind::IsomorphicTo);
  CHECK(ext_q(GroupDescriptor::rationals()).kind == R1Class::Kind::Zero);

  CHECK_THROWS_AS(GroupDescriptor::finite({Int(2), Int(3)}), InputError);
  CHECK_THROWS_AS(GroupDescriptor::finite({Int(1)}), InputError);
  CHECK_THROWS_AS(GroupDescriptor::fp_vector(6), InputError);
}

TEST_CASE("milnor reports") {
  std::map<int, GroupDescriptor> k0z1f = {{0, GroupDescriptor::free_abelian(1)},
                                          {1, GroupDescriptor::finite({Int(2)})}};
  MilnorReport m = milnor_report(0, k0z1f, 10);
  CHECK(m.phantomFree);
  CHECK(m.phantomPart.r1lim.kind == R1Class::Kind::Zero);
  CHECK(m.limPart.lim.kind == LimClass::Kind::SubgroupOfSeries);
  CHECK(m.summary.find("no nonzero phantom maps") != std::string::npos);

  std::map<int, GroupDescriptor> rational = {{0, GroupDescriptor::rationals()},
                                             {1, GroupDescriptor::rationals()}};
  MilnorReport mq = milnor_report(0, rational, 10);
  CHECK(mq.phantomFree);
  CHECK(mq.limPart.lim.kind == LimClass::Kind::SequenceSpace);

  CHECK_THROWS_AS(milnor_report(2, k0z1f, 10), InputError);
}

TEST_CASE("lim report json round trip") {
  std::vector<TowerDescriptor> towers;
  towers.push_back(TowerDescriptor::omega(GroupDescriptor::free_abelian(1), 10));
  towers.push_back(TowerDescriptor::omega(GroupDescriptor::rationals(), 10));
  towers.push_back(TowerDescriptor::omega(GroupDescriptor::fp_vector(3), 12));
  towers.push_back(TowerDescriptor::factorial(GroupDescriptor::free_abelian(2), 8));
  towers.push_back(TowerDescriptor::factorial(GroupDescriptor::finite({Int(4)}), 8));
  towers.push_back(TowerDescriptor::shifted(2, towers[0]));
  towers.push_back(TowerDescriptor::product({towers[3], towers[4]}));
  for (const TowerDescriptor& T : towers) {
    Json doc = to_json(analyze_tower(T));
    CHECK(to_json(lim_report_from_json(doc)) == doc);
  }

  LimReport synthetic;
  synthetic.ml = MittagLeffler::Yes;
  synthetic.lim.kind = LimClass::Kind::IsomorphicTo;
  synthetic.lim.iso = GroupDescriptor::finitely_generated(2, {Int(2), Int(4)});
  synthetic.r1lim.kind = R1Class::Kind::ExtQSymbolic;
  synthetic.r1lim.arg = GroupDescriptor::fp_vector(5, 2);
  synthetic.evidence = {"synthetic"};
  Json doc = to_json(synthetic);
  LimReport back = lim_report_from_json(doc);
  CHECK(back.lim.iso.rank == 2);
  CHECK(back.r1lim.arg.dim == 2);
  CHECK(to_json(back) == doc);

  Json bad = doc;
  bad["lim"]["kind"] = "mystery";
  CHECK_THROWS_AS(lim_report_from_json(bad), InputError);
}
