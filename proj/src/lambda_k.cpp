#include "lambda_forge/lambda_k.hpp"

#include "lambda_forge/symmetric.hpp"
#include "lambda_forge/weighted_poly.hpp"

namespace lf {

namespace {

struct SplitRing {
  using Elem = SplitElement;
  BaseSpace space;
  ScalarDomain dom;
  SplitElement zero() const { return SplitElement(space, dom); }
  SplitElement one() const { return SplitElement::unit(space).with_domain(dom); }
  SplitElement add(const SplitElement& a, const SplitElement& b) const { return lf::add(a, b); }
  SplitElement mul(const SplitElement& a, const SplitElement& b) const { return lf::mul(a, b); }
  SplitElement scalar_mul(const Rat& c, const SplitElement& a) const {
    return lf::scalar_mul(c, a);
  }
};

Int integral_coeff(const Rat& c) {
  if (!is_integer(c))
    throw DomainError("lambda operations need integer multiplicities, got " + rat_str(c));
  return Int(c.get_num());
}

// coefficients of lambda_t(x) at t^0..t^n
std::vector<SplitElement> lambda_series(unsigned n, const SplitElement& x) {
  SplitRing R{x.space(), x.domain()};
  std::vector<SplitElement> co(n + 1, R.zero());
  co[0] = R.one();
  for (const auto& [a, c] : x.terms()) {
    Int m = integral_coeff(c);
    std::vector<SplitElement> factor;
    for (unsigned j = 0; j <= n; ++j) {
      Int b = binomial(m, j);
      if (b == 0 && j > 0 && m >= 0) break;  // (1+Lt)^m is a polynomial of degree m
      LineExp e(a.size());
      for (size_t i = 0; i < e.size(); ++i) e[i] = a[i] * static_cast<long>(j);
      SplitElement t(x.space(), x.domain());
      t.add_term(e, Rat(b));
      factor.push_back(std::move(t));
    }
    std::vector<SplitElement> next(n + 1, R.zero());
    for (unsigned i = 0; i <= n; ++i) {
      if (co[i].terms().empty()) continue;
      for (unsigned j = 0; j < factor.size() && i + j <= n; ++j)
        next[i + j] = add(next[i + j], mul(co[i], factor[j]));
    }
    co = std::move(next);
  }
  return co;
}

}  // namespace

SplitElement lambda_op(unsigned n, const SplitElement& x) { return lambda_series(n, x)[n]; }

SplitElement gamma_op(unsigned n, const SplitElement& x) {
  SplitRing R{x.space(), x.domain()};
  if (n == 0) return R.one();
  std::vector<SplitElement> lam = lambda_series(n, x);
  SplitElement out = R.zero();
  for (unsigned k = 1; k <= n; ++k)
    out = add(out, scalar_mul(Rat(binomial(Int(n - 1), k - 1)), lam[k]));
  return out;
}

SplitElement adams_op(long k, const SplitElement& x) {
  if (k == 0) return scalar_mul(x.rank(), SplitElement::unit(x.space()).with_domain(x.domain()));
  SplitElement out(x.space(), x.domain());
  for (const auto& [a, c] : x.terms()) {
    LineExp e(a.size());
    for (size_t i = 0; i < e.size(); ++i) e[i] = k * a[i];
    out.add_term(e, c);
  }
  return out;
}

SplitElement dual(const SplitElement& x) { return adams_op(-1, x); }

namespace {

// psi_k from the values lam[1..k], by the Newton recurrence
SplitElement newton_from_series(const std::vector<SplitElement>& lam, const SplitElement& x,
                                unsigned k) {
  std::vector<SplitElement> psi;
  psi.push_back(x);
  for (unsigned j = 2; j <= k; ++j) {
    Rat lead(j);
    if (j % 2 == 0) lead = -lead;
    SplitElement s = scalar_mul(lead, lam[j]);
    for (unsigned i = 1; i < j; ++i) {
      SplitElement t = mul(lam[i], psi[j - i - 1]);
      s = add(s, i % 2 ? t : neg(t));
    }
    psi.push_back(std::move(s));
  }
  return psi[k - 1];
}

}  // namespace

SplitElement adams_from_lambda_newton(unsigned k, const SplitElement& x) {
  if (k == 0) throw InputError("Newton recurrence starts at k = 1");
  return newton_from_series(lambda_series(k, x), x, k);
}

void AxiomReport::fail(const std::string& witness) {
  pass = false;
  failures.push_back(witness);
}

AxiomReport verify_special_axioms(const SplitElement& x, const SplitElement& y,
                                  unsigned maxDegree) {
  return verify_special_axioms(x, y, maxDegree,
                               [](unsigned n, const SplitElement& z) { return lambda_op(n, z); });
}

AxiomReport verify_special_axioms(const SplitElement& x, const SplitElement& y,
                                  unsigned maxDegree, const LambdaImpl& lam) {
  if (x.space() != y.space()) throw InputError("axiom check needs one common space");
  AxiomReport rep;
  SplitRing R{x.space(), ScalarDomain::join(x.domain(), y.domain())};

  auto series = [&](const SplitElement& z, unsigned top) {
    std::vector<SplitElement> out;
    for (unsigned n = 0; n <= top; ++n) out.push_back(lam(n, z));
    return out;
  };
  std::vector<SplitElement> lx = series(x, maxDegree);
  std::vector<SplitElement> ly = series(y, maxDegree);

  if (lx[0] != R.one()) rep.fail("lambda^0(x) != 1");
  if (maxDegree >= 1 && lx[1] != x) rep.fail("lambda^1(x) != x");

  std::vector<SplitElement> lsum = series(add(x, y), maxDegree);
  for (unsigned n = 0; n <= maxDegree; ++n) {
    SplitElement conv = R.zero();
    for (unsigned i = 0; i <= n; ++i) conv = add(conv, mul(lx[i], ly[n - i]));
    if (lsum[n] != conv) {
      rep.fail("lambda_t not additive at degree " + std::to_string(n) + ": lambda^n(x+y) = " +
               lsum[n].str() + ", convolution = " + conv.str());
      break;
    }
  }

  SplitElement xy = mul(x, y);
  for (unsigned n = 1; n <= maxDegree; ++n) {
    std::vector<SplitElement> vals(lx.begin() + 1, lx.begin() + 1 + n);
    vals.insert(vals.end(), ly.begin() + 1, ly.begin() + 1 + n);
    SplitElement rhs = evaluate(universal_product_poly(n), R, vals);
    SplitElement lhs = lam(n, xy);
    if (lhs != rhs) {
      rep.fail("lambda^" + std::to_string(n) + "(xy) = " + lhs.str() +
               " differs from P_n(lambda x; lambda y) = " + rhs.str());
      break;
    }
  }

  bool plethysm_ok = true;
  for (unsigned m = 1; plethysm_ok && m <= maxDegree; ++m)
    for (unsigned n = 1; plethysm_ok && m * n <= maxDegree; ++n) {
      std::vector<SplitElement> lmn = series(x, m * n);
      std::vector<SplitElement> vals(lmn.begin() + 1, lmn.end());
      SplitElement rhs = evaluate(universal_plethysm_poly(m, n), R, vals);
      SplitElement lhs = lam(m, lam(n, x));
      if (lhs != rhs) {
        rep.fail("lambda^" + std::to_string(m) + "(lambda^" + std::to_string(n) + " x) = " +
                 lhs.str() + " differs from P_{m,n}(lambda x) = " + rhs.str());
        plethysm_ok = false;
      }
    }

  for (long a : {-2L, -1L, 0L, 2L, 3L})
    for (long b : {-2L, 2L, 3L}) {
      if (adams_op(a, adams_op(b, x)) != adams_op(a * b, x)) {
        rep.fail("Psi^" + std::to_string(a) + " Psi^" + std::to_string(b) + " != Psi^" +
                 std::to_string(a * b) + " on x");
        break;
      }
    }
  for (long k : {2L, 3L}) {
    if (adams_op(k, xy) != mul(adams_op(k, x), adams_op(k, y)))
      rep.fail("Psi^" + std::to_string(k) + " not multiplicative");
    if (adams_op(k, add(x, y)) != add(adams_op(k, x), adams_op(k, y)))
      rep.fail("Psi^" + std::to_string(k) + " not additive");
  }

  for (unsigned k = 2; k <= maxDegree; ++k) {
    SplitElement newton = newton_from_series(lx, x, k);
    if (newton != adams_op(static_cast<long>(k), x)) {
      rep.fail("Newton Psi^" + std::to_string(k) + " = " + newton.str() +
               " differs from adams_op = " + adams_op(static_cast<long>(k), x).str());
      break;
    }
  }

  if (dual(dual(x)) != x) rep.fail("dual is not an involution");
  if (dual(xy) != mul(dual(x), dual(y))) rep.fail("dual is not multiplicative");
  if (dual(add(x, y)) != add(dual(x), dual(y))) rep.fail("dual is not additive");
  for (long k : {2L, 3L})
    if (dual(adams_op(k, x)) != adams_op(-k, x))
      rep.fail("dual Psi^" + std::to_string(k) + " != Psi^" + std::to_string(-k));

  SplitElement dx = dual(x);
  for (unsigned n = 1; n <= maxDegree; ++n) {
    if (lam(n, dx) != dual(lx[n])) {
      rep.dual_lambda_commutes = false;
      rep.dual_lambda_note = "lambda^" + std::to_string(n) + " does not commute with dual on x";
      break;
    }
  }
  if (rep.dual_lambda_commutes)
    rep.dual_lambda_note = "dual commutes with lambda^n for n <= " + std::to_string(maxDegree);

  return rep;
}

SplitElement random_split_element(Rng& rng, const BaseSpace& space, unsigned maxTerms,
                                  long expBound, long coefBound) {
  SplitElement x(space, ScalarDomain::integers());
  unsigned terms = static_cast<unsigned>(rng.range(1, maxTerms));
  for (unsigned t = 0; t < terms; ++t) {
    LineExp a(space.dims.size());
    for (auto& e : a) e = rng.range(-expBound, expBound);
    long c = rng.range(-coefBound, coefBound);
    if (c == 0) c = 1;
    x.add_term(a, Rat(c));
  }
  return x;
}

}  // namespace lf
