#include "lambda_forge/suite.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <thread>

#include "lambda_forge/chow.hpp"
#include "lambda_forge/lambda_k.hpp"
#include "lambda_forge/op_ring.hpp"
#include "lambda_forge/riemann_roch.hpp"
#include "lambda_forge/rng.hpp"
#include "lambda_forge/symmetric.hpp"
#include "lambda_forge/towers.hpp"

namespace lf {

namespace {

const ScalarDomain Q = ScalarDomain::rationals();
const ScalarDomain Z = ScalarDomain::integers();

// failure recording: count every check, keep the first witness
struct Recorder {
  bool ok = true;
  long count = 0;
  std::string first;

  void expect(bool cond, const std::string& witness) {
    ++count;
    if (!cond && ok) {
      ok = false;
      first = witness;
    }
  }
};

void fold(const std::vector<Recorder>& cases, Recorder& r) {
  for (const auto& c : cases) {
    r.count += c.count;
    if (!c.ok && r.ok) {
      r.ok = false;
      r.first = c.first;
    }
  }
}

// one recorder slot per case, filled by the worker pool; inputs are
// generated before the pool starts, so results do not depend on scheduling
template <class Fn>
std::vector<Recorder> run_cases(unsigned n, Fn&& fn) {
  std::vector<Recorder> out(n);
  parallel_for(n, [&](unsigned i) {
    try {
      fn(i, out[i]);
    } catch (const std::exception& e) {
      out[i].expect(false, "case " + std::to_string(i) + " threw: " + e.what());
    }
  });
  return out;
}

TruncSeries monomial(const ScalarDomain& dom, int k, int order) {
  std::vector<Rat> c(static_cast<size_t>(order) + 1, Rat(0));
  c[static_cast<size_t>(k)] = 1;
  return TruncSeries::from_coeffs(dom, std::move(c));
}

TruncSeries one_plus_u(const ScalarDomain& dom, int N) {
  return add(TruncSeries::one(dom, N), TruncSeries::var(dom, N));
}

TruncSeries random_rat_series(Rng& rng, int N, long numBound, long denBound) {
  std::vector<Rat> c(static_cast<size_t>(N) + 1);
  for (int i = 0; i <= N; ++i) c[static_cast<size_t>(i)] = rng.rat(numBound, denBound);
  return TruncSeries::from_coeffs(Q, std::move(c));
}

TruncSeries random_int_series(Rng& rng, int N, long bound, bool reduced) {
  std::vector<Rat> c(static_cast<size_t>(N) + 1, Rat(0));
  for (int i = reduced ? 1 : 0; i <= N; ++i) c[static_cast<size_t>(i)] = Rat(rng.range(-bound, bound));
  return TruncSeries::from_coeffs(Q, std::move(c));
}

TruncSeries random_mod_series(Rng& rng, const ScalarDomain& dom, int N) {
  long m = to_long(dom.modulus());
  std::vector<Rat> c(static_cast<size_t>(N) + 1);
  for (int i = 0; i <= N; ++i) c[static_cast<size_t>(i)] = Rat(rng.range(0, m - 1));
  return TruncSeries::from_coeffs(dom, std::move(c));
}

// ---- criterion bodies ----

void c_chi_table(uint64_t, Recorder& r) {
  auto cv = [](unsigned n, unsigned i) {
    return WeightedPoly::variable(n, 0, WeightedPoly::kNoBound, i - 1);
  };
  r.expect(chi_poly(1) == cv(1, 1), "chi_1 != c_1");
  WeightedPoly chi2 = sub(mul(cv(2, 1), cv(2, 1)), scalar_mul(Rat(2), cv(2, 2)));
  r.expect(chi_poly(2) == chi2, "chi_2 != c_1^2 - 2 c_2");
  WeightedPoly c1 = cv(3, 1);
  WeightedPoly chi3 = add(sub(mul(mul(c1, c1), c1), scalar_mul(Rat(3), mul(c1, cv(3, 2)))),
                          scalar_mul(Rat(3), cv(3, 3)));
  r.expect(chi_poly(3) == chi3, "chi_3 != c_1^3 - 3 c_1 c_2 + 3 c_3");
}

void c_star_ring(uint64_t seed, Recorder& r) {
  const int N = 32, M = 16;
  const unsigned triples = 50;
  Rng rng(seed);
  std::vector<TruncSeries> F, G, H;
  for (unsigned t = 0; t < triples; ++t) {
    F.push_back(random_rat_series(rng, N, 9, 4));
    G.push_back(random_rat_series(rng, N, 9, 4));
    H.push_back(random_rat_series(rng, N, 9, 4));
  }
  TruncSeries e = TruncSeries::binomial_power(Q, 1, N);
  auto cases = run_cases(triples, [&](unsigned t, Recorder& o) {
    const std::string tag = " for triple " + std::to_string(t);
    const TruncSeries &f = F[t], &g = G[t], &h = H[t];
    TruncSeries fg = star_compose(f, g);
    TruncSeries gh = star_compose(g, h);
    TruncSeries fh = star_compose(f, h);
    o.expect(star_compose(fg, h) == star_compose(f, gh), "associativity fails" + tag);
    o.expect(star_compose(add(f, g), h) == add(fh, gh), "left additivity fails" + tag);
    o.expect(star_compose(f, add(g, h)) == add(fg, fh), "right additivity fails" + tag);
    o.expect(star_compose(e, f) == f && star_compose(f, e) == f, "(1+U) is not the identity" + tag);
    o.expect(fg.truncated(M) == star_compose(f.truncated(M), g.truncated(M)),
             "truncation coherence fails" + tag);
  });
  fold(cases, r);
  for (long a = -3; a <= 5; ++a)
    for (long b = -3; b <= 5; ++b) {
      if (a == 0 || b == 0) continue;
      TruncSeries lhs = star_compose(TruncSeries::binomial_power(Z, a, N),
                                     TruncSeries::binomial_power(Z, b, N));
      r.expect(lhs == TruncSeries::binomial_power(Z, a * b, N),
               "psi^" + std::to_string(a) + " * psi^" + std::to_string(b) + " != psi^" +
                   std::to_string(a * b));
    }
}

void c_sigma_iso(uint64_t seed, Recorder& r) {
  const int N = 24;
  for (long k = -4; k <= 4; ++k) {
    if (k == 0) continue;
    std::vector<Rat> a(static_cast<size_t>(N) + 1);
    Rat pw(1);
    for (int n = 0; n <= N; ++n) {
      a[static_cast<size_t>(n)] = pw;
      pw *= Rat(k);
    }
    r.expect(sigma(a, N) == TruncSeries::binomial_power(Q, k, N),
             "sigma((k^n)) != (1+U)^k at k = " + std::to_string(k));
  }
  Rng rng(seed);
  const unsigned pairs = 30;
  std::vector<std::vector<Rat>> A, B;
  for (unsigned t = 0; t < pairs; ++t) {
    std::vector<Rat> a(static_cast<size_t>(N) + 1), b(static_cast<size_t>(N) + 1);
    for (int n = 0; n <= N; ++n) {
      a[static_cast<size_t>(n)] = rng.rat(6, 3);
      b[static_cast<size_t>(n)] = rng.rat(6, 3);
    }
    A.push_back(std::move(a));
    B.push_back(std::move(b));
  }
  auto cases = run_cases(pairs, [&](unsigned t, Recorder& o) {
    std::vector<Rat> ab(static_cast<size_t>(N) + 1);
    for (int n = 0; n <= N; ++n) ab[static_cast<size_t>(n)] = A[t][static_cast<size_t>(n)] * B[t][static_cast<size_t>(n)];
    o.expect(sigma(ab, N) == star_compose(sigma(A[t], N), sigma(B[t], N)),
             "sigma(a b) != sigma(a) * sigma(b) for pair " + std::to_string(t));
  });
  fold(cases, r);
  for (unsigned t = 0; t < 10; ++t) {
    std::vector<Rat> a(static_cast<size_t>(N) + 1);
    for (int n = 0; n <= N; ++n) a[static_cast<size_t>(n)] = rng.rat(6, 3);
    std::vector<Rat> shifted(a.begin() + 1, a.end());
    r.expect(sigma(shifted, N - 1) == omega_apply(sigma(a, N)),
             "sigma(shift a) != Omega(sigma(a)) for window " + std::to_string(t));
  }
}

void c_eigenprojectors(uint64_t, Recorder& r) {
  const int W = 8, N = 10;
  StableElement zero(std::map<long, Rat>{}, W, N);
  for (long n = -W; n <= W; ++n)
    for (long m = -W; m <= W; ++m) {
      StableElement prod = stable_compose(pi_n(n, W, N), pi_n(m, W, N));
      bool good = (n == m) ? (prod == pi_n(n, W, N)) : (prod == zero);
      r.expect(good, "pi_" + std::to_string(n) + " pi_" + std::to_string(m) +
                         " is not " + (n == m ? "idempotent" : "zero"));
    }
  StableElement id = stable_identity(W, N);
  for (long k = 2; k <= 3; ++k)
    for (long n = -4; n <= 4; ++n) {
      const std::string tag = " at k = " + std::to_string(k) + ", n = " + std::to_string(n);
      Rat kn = rat_pow(Rat(k), n);
      StableElement pn = pi_n(n, W, N);
      r.expect(stable_compose(psi_stable(k, W, N), pn) == stable_scalar(kn, pn),
               "psi^k pi_n != k^n pi_n" + tag);
      StableElement resolvent = stable_compose(
          phi_nk(n, k, W, N), stable_sub(psi_stable(k, W, N), stable_scalar(kn, id)));
      r.expect(resolvent == stable_sub(id, pn), "phi_{n,k} (psi^k - k^n) != id - pi_n" + tag);
    }
}

void c_towers(uint64_t seed, Recorder& r) {
  Rng rng(seed);
  for (long p : {2L, 3L, 5L}) {
    const int N = 4 * static_cast<int>(p);
    ScalarDomain Fp = ScalarDomain::integers_mod(p);
    for (unsigned t = 0; t < 100; ++t) {
      const std::string tag = " (p = " + std::to_string(p) + ", series " + std::to_string(t) + ")";
      TruncSeries f = random_mod_series(rng, Fp, N);
      bool member = fp_membership_L(f);
      OmegaLift l = omega_lift(f);
      r.expect(l.ok == member, "lift solvability differs from L membership" + tag);
      if (!member) continue;
      TruncSeries lift = fp_canonical_lift(f);
      r.expect(fp_membership_L(lift), "canonical lift leaves L" + tag);
      r.expect(omega_apply(lift) == f, "Omega(canonical lift) != f" + tag);
      for (int k = 1; k <= 3; ++k) {
        TruncSeries pert = add(lift, monomial(Fp, k * static_cast<int>(p), N + 1));
        r.expect(omega_apply(pert) == f, "U^{kp} left the kernel of Omega" + tag);
        r.expect(!fp_membership_L(pert), "a second preimage stays in L" + tag);
      }
    }
  }

  for (int which = 0; which < 2; ++which) {
    TruncSeries f = which == 0 ? one_plus_u(Z, 12) : TruncSeries::binomial_power(Z, -1, 12);
    const std::string tag = which == 0 ? " for 1+U" : " for 1/(1+U)";
    TowerLift t = tower_lift_to_depth(f, 20);
    r.expect(t.ok && t.chain.size() == 21, "depth-20 lift failed" + tag);
    if (t.ok && t.chain.size() == 21) {
      r.expect(t.chain[0] == f, "chain does not start at the input" + tag);
      for (unsigned j = 0; j + 1 < t.chain.size(); ++j)
        r.expect(omega_apply(t.chain[j + 1]) == t.chain[j],
                 "chain breaks at stage " + std::to_string(j) + tag);
    }
  }
  TowerLift u = tower_lift_to_depth(TruncSeries::var(Z, 12), 1);
  r.expect(!u.ok && u.obstructionDepth == 1, "U should be obstructed at depth 1");

  LimReport rep = analyze_tower(TowerDescriptor::factorial(GroupDescriptor::free_abelian(1), 12));
  r.expect(rep.lim.kind == LimClass::Kind::Zero, "factorial tower lim is not 0");
  r.expect(rep.ml == MittagLeffler::No, "factorial tower should fail Mittag-Leffler");
  r.expect(rep.r1lim.kind == R1Class::Kind::HatZModZPower && rep.r1lim.power == 1,
           "factorial tower R^1 lim is not hat Z / Z");
  r.expect(!rep.evidence.empty(), "factorial tower report carries no certificate");
}

// e_k of one root block, placed inside a larger root space
WeightedPoly root_space(unsigned d) {
  return WeightedPoly::with_weights(std::vector<unsigned>(d, 1), WeightedPoly::kNoBound);
}

WeightedPoly lifted_elementary(unsigned i, unsigned offset, unsigned d, unsigned vars) {
  WeightedPoly small = elementary_in_roots(i, d);
  WeightedPoly out = root_space(vars);
  for (const auto& [m, c] : small.terms()) {
    Mono big(vars, 0);
    for (unsigned v = 0; v < d; ++v) big[offset + v] = m[v];
    out.add_term(big, c);
  }
  return out;
}

void for_subsets(unsigned total, unsigned k, const std::function<void(const std::vector<unsigned>&)>& fn) {
  std::vector<unsigned> idx(k);
  for (unsigned i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    fn(idx);
    int j = static_cast<int>(k) - 1;
    while (j >= 0 && idx[static_cast<size_t>(j)] == total - k + static_cast<unsigned>(j)) --j;
    if (j < 0) break;
    ++idx[static_cast<size_t>(j)];
    for (unsigned i = static_cast<unsigned>(j) + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
  }
}

void c_lambda_axioms(uint64_t seed, Recorder& r) {
  Rng rng(seed);
  const unsigned pairs = 25;
  std::vector<SplitElement> X, Y;
  for (unsigned t = 0; t < pairs; ++t) {
    BaseSpace sp{{static_cast<unsigned>(rng.range(1, 5))}};
    X.push_back(random_split_element(rng, sp, 4, 3, 4));
    Y.push_back(random_split_element(rng, sp, 4, 3, 4));
  }
  auto axiomCases = run_cases(pairs, [&](unsigned t, Recorder& o) {
    AxiomReport rep = verify_special_axioms(X[t], Y[t], 4);
    o.expect(rep.pass, rep.pass ? ""
                                : "pair " + std::to_string(t) + " on " + X[t].space().str() +
                                      ": " + rep.failures.front());
  });
  fold(axiomCases, r);

  r.expect(universal_plethysm_poly(1, 3) ==
               WeightedPoly::variable(3, 0, WeightedPoly::kNoBound, 2),
           "P_{1,3} != lambda^3");
  r.expect(universal_plethysm_poly(4, 1) ==
               WeightedPoly::variable(4, 0, WeightedPoly::kNoBound, 3),
           "P_{4,1} != lambda^4");

  // 0..4: P_{m,n} over explicit roots; 5..8: P_n block checks
  const std::vector<std::pair<unsigned, unsigned>> plety = {{2, 2}, {2, 3}, {3, 2}, {2, 4}, {4, 2}};
  auto rootCases = run_cases(9, [&](unsigned c, Recorder& o) {
    if (c < plety.size()) {
      auto [m, n] = plety[c];
      const unsigned d = m * n;
      std::vector<WeightedPoly> evals;
      for (unsigned i = 1; i <= d; ++i) evals.push_back(elementary_in_roots(i, d));
      PolyRing R(root_space(d));
      WeightedPoly lhs = evaluate(universal_plethysm_poly(m, n), R, evals);

      std::vector<Mono> block;
      for_subsets(d, n, [&](const std::vector<unsigned>& idx) {
        Mono mono(d, 0);
        for (unsigned t : idx) mono[t] = 1;
        block.push_back(mono);
      });
      WeightedPoly rhs = root_space(d);
      for_subsets(static_cast<unsigned>(block.size()), m, [&](const std::vector<unsigned>& idx) {
        Mono mono(d, 0);
        for (unsigned t : idx)
          for (unsigned v = 0; v < d; ++v) mono[v] += block[t][v];
        rhs.add_term(mono, Rat(1));
      });
      o.expect(lhs == rhs, "P_{" + std::to_string(m) + "," + std::to_string(n) +
                               "} differs from the root expansion");
    } else {
      const unsigned n = c - static_cast<unsigned>(plety.size()) + 1;
      const unsigned vars = 2 * n;
      std::vector<WeightedPoly> evals;
      for (unsigned i = 1; i <= n; ++i) evals.push_back(lifted_elementary(i, 0, n, vars));
      for (unsigned j = 1; j <= n; ++j) evals.push_back(lifted_elementary(j, n, n, vars));
      PolyRing R(root_space(vars));
      WeightedPoly lhs = evaluate(universal_product_poly(n), R, evals);

      std::vector<Mono> pairsMono;
      for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) {
          Mono m(vars, 0);
          m[i] = 1;
          m[n + j] = 1;
          pairsMono.push_back(m);
        }
      WeightedPoly rhs = root_space(vars);
      for_subsets(static_cast<unsigned>(pairsMono.size()), n, [&](const std::vector<unsigned>& idx) {
        Mono m(vars, 0);
        for (unsigned t : idx)
          for (unsigned v = 0; v < vars; ++v) m[v] += pairsMono[t][v];
        rhs.add_term(m, Rat(1));
      });
      o.expect(lhs == rhs, "P_" + std::to_string(n) + " differs from the root expansion");
    }
  });
  fold(rootCases, r);
}

void c_newton_square(uint64_t seed, Recorder& r) {
  Rng rng(seed);
  for (unsigned t = 0; t < 25; ++t) {
    std::vector<unsigned> dims;
    unsigned factors = static_cast<unsigned>(rng.range(1, 2));
    for (unsigned i = 0; i < factors; ++i) dims.push_back(static_cast<unsigned>(rng.range(1, 3)));
    SplitElement x = random_split_element(rng, BaseSpace{dims}, 4, 3, 4);
    r.expect(mul(x, x) == add(adams_op(2, x), scalar_mul(Rat(2), lambda_op(2, x))),
             "x^2 != psi^2(x) + 2 lambda^2(x) for element " + std::to_string(t) + " on " +
                 x.space().str());
  }
}

void c_hrr(uint64_t, Recorder& r) {
  auto cases = run_cases(126, [&](unsigned c, Recorder& o) {
    unsigned d = 1 + c / 21;
    long m = -10 + static_cast<long>(c % 21);
    CheckReport rep = verify_hrr(d, m);
    o.expect(rep.equal, rep.claim + ": " + rep.lhs + " != " + rep.rhs);
  });
  fold(cases, r);
}

void c_arr(uint64_t, Recorder& r) {
  const std::vector<long> ks = {2, 3, 5};
  auto cases = run_cases(4 * 3 * 13, [&](unsigned c, Recorder& o) {
    unsigned d = 1 + c / 39;
    long k = ks[(c / 13) % 3];
    long m = -6 + static_cast<long>(c % 13);
    BaseSpace sp{{d}};
    RelativeMap f = RelativeMap::projection_to_point(sp);
    CheckReport rep = verify_arr(f, static_cast<unsigned>(k), SplitElement::line(sp, {m}));
    o.expect(rep.equal, rep.claim + ": " + rep.lhs + " != " + rep.rhs);
  });
  fold(cases, r);
}

void c_grr(uint64_t seed, Recorder& r) {
  Rng rng(seed);
  struct Case {
    RelativeMap f;
    SplitElement x;
  };
  std::vector<Case> cases;
  for (unsigned d = 1; d <= 3; ++d)
    for (unsigned e = 1; e <= 3; ++e) {
      BaseSpace source{{e, d}};  // fiber P^d over P^e, forgotten by f
      RelativeMap f = RelativeMap::forget_last_factor(source);
      for (int t = 0; t < 2; ++t) cases.push_back({f, random_split_element(rng, source, 4, 2, 3)});
    }
  auto results = run_cases(static_cast<unsigned>(cases.size()), [&](unsigned c, Recorder& o) {
    CheckReport rep = verify_grr(cases[c].f, cases[c].x);
    o.expect(rep.equal, rep.claim + ": " + rep.lhs + " != " + rep.rhs);
  });
  fold(results, r);
}

void c_omega_chi(uint64_t, Recorder& r) {
  const std::vector<BaseSpace> spaces = {BaseSpace{{2}}, BaseSpace{{3}}, BaseSpace{{1, 1}}};
  auto cases = run_cases(12, [&](unsigned c, Recorder& o) {
    unsigned n = 1 + c / 3;
    const BaseSpace& X = spaces[c % 3];
    CheckReport rep = verify_omega_chi(n, X);
    o.expect(rep.equal, rep.claim + ": " + rep.lhs + " != " + rep.rhs);
  });
  fold(cases, r);
}

void c_endo_classification(uint64_t, Recorder& r) {
  const int ord = 12;
  const unsigned N = 10;
  for (long k = -5; k <= 5; ++k) {
    EndoClassification c = classify_multiplicative_endo(TruncSeries::binomial_power(Z, k, ord), N);
    r.expect(c.is_psi_form && c.exponent == k && c.functional_eq_holds,
             "failed to recover psi^" + std::to_string(k));
  }
  const std::vector<long> ks = {-5, -4, -3, -2, -1, 1, 2, 3, 4, 5};
  for (size_t i = 0; i < ks.size(); ++i) {
    int j = 2 + static_cast<int>(i % 5);
    TruncSeries f = add(TruncSeries::binomial_power(Z, ks[i], ord), monomial(Z, j, ord));
    EndoClassification c = classify_multiplicative_endo(f, N);
    const std::string tag =
        " for (1+U)^" + std::to_string(ks[i]) + " + U^" + std::to_string(j);
    r.expect(!c.is_psi_form, "perturbed series accepted" + tag);
    r.expect(!c.functional_eq_holds && c.lhs_coeff != c.rhs_coeff && !c.note.empty(),
             "perturbed series rejected without a witness" + tag);
  }
}

void c_gamma_round_trip(uint64_t seed, Recorder& r) {
  Rng rng(seed);
  const int N = 10;
  const unsigned W = 10;
  for (unsigned t = 0; t < 20; ++t) {
    TruncSeries f = random_int_series(rng, N, 6, true);
    GammaSeries G = additive_to_gamma(f, W);
    r.expect(gamma_to_additive(G, N) == f,
             "gamma round trip fails for series " + std::to_string(t));
  }
  const std::vector<BaseSpace> spaces = {BaseSpace{{2}}, BaseSpace{{1, 1}}, BaseSpace{{3}},
                                         BaseSpace{{2, 1}}};
  for (unsigned t = 0; t < 10; ++t) {
    const BaseSpace& sp = spaces[t % spaces.size()];
    SplitElement x = random_split_element(rng, sp, 4, 2, 3);
    TruncSeries f = random_int_series(rng, N, 6, true);
    SplitElement viaU = apply_operation(f, x);
    SplitElement viaGamma = apply_operation(additive_to_gamma(f, W), x);
    r.expect(viaU == viaGamma,
             "U-series and gamma routes disagree on " + sp.str() + " (case " + std::to_string(t) + ")");
  }
}

struct Criterion {
  const char* name;
  double budget;
  void (*run)(uint64_t, Recorder&);
};

const Criterion kCriteria[] = {
    {"chi-table", 1.0, c_chi_table},
    {"star-ring", 10.0, c_star_ring},
    {"sigma-iso", 10.0, c_sigma_iso},
    {"eigenprojectors", 5.0, c_eigenprojectors},
    {"towers", 10.0, c_towers},
    {"lambda-axioms", 30.0, c_lambda_axioms},
    {"newton-square", 2.0, c_newton_square},
    {"hrr", 5.0, c_hrr},
    {"arr", 10.0, c_arr},
    {"grr", 10.0, c_grr},
    {"omega-chi", 5.0, c_omega_chi},
    {"endo-classification", 2.0, c_endo_classification},
    {"gamma-round-trip", 5.0, c_gamma_round_trip},
};

constexpr int kCount = static_cast<int>(sizeof(kCriteria) / sizeof(kCriteria[0]));

uint64_t per_criterion_seed(uint64_t seed, int index) {
  Rng r(seed + 0x9e3779b97f4a7c15ull * static_cast<uint64_t>(index));
  return r.next();
}

}  // namespace

bool SuiteResult::all_pass() const {
  for (const auto& c : criteria)
    if (!c.pass) return false;
  return !criteria.empty();
}

int criterion_count() { return kCount; }

std::string criterion_name(int index) {
  if (index < 1 || index > kCount) throw InputError("criterion_name: index out of range");
  return kCriteria[index - 1].name;
}

unsigned worker_threads() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("LAMBDA_FORGE_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v < static_cast<long>(hw))
      hw = static_cast<unsigned>(v);
  }
  return hw;
}

void parallel_for(unsigned n, const std::function<void(unsigned)>& fn) {
  unsigned workers = std::min(worker_threads(), std::max(n, 1u));
  if (workers <= 1) {
    for (unsigned i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<unsigned> next{0};
  std::mutex mu;
  std::string firstError;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (unsigned i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
        try {
          fn(i);
        } catch (const std::exception& e) {
          std::lock_guard<std::mutex> lock(mu);
          if (firstError.empty()) firstError = e.what();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (!firstError.empty()) throw Error("parallel_for: " + firstError);
}

CriterionResult run_criterion(int index, uint64_t seed) {
  if (index < 1 || index > kCount) throw InputError("run_criterion: index out of range");
  const Criterion& c = kCriteria[index - 1];
  CriterionResult res;
  res.index = index;
  res.name = c.name;
  res.budgetSeconds = c.budget;

  Recorder rec;
  auto t0 = std::chrono::steady_clock::now();
  try {
    c.run(per_criterion_seed(seed, index), rec);
  } catch (const std::exception& e) {
    rec.expect(false, std::string("uncaught: ") + e.what());
  }
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  res.checksPass = rec.ok;
  res.checkCount = rec.count;
  res.pass = rec.ok && res.seconds < c.budget;
  if (!rec.ok)
    res.detail = rec.first;
  else if (res.seconds >= c.budget)
    res.detail = "checks pass but the run exceeded the budget";
  else
    res.detail = std::to_string(rec.count) + " exact checks";
  return res;
}

SuiteResult run_acceptance_suite(uint64_t seed) {
  SuiteResult out;
  out.seed = seed;
  for (int i = 1; i <= kCount; ++i) out.criteria.push_back(run_criterion(i, seed));
  return out;
}

}  // namespace lf
