#include "lambda_forge/riemann_roch.hpp"

#include <sstream>

#include "lambda_forge/lambda_k.hpp"
#include "lambda_forge/trunc_series.hpp"

namespace lf {

namespace {

long int_multiplicity(const Rat& c, const char* who) {
  if (!is_integer(c))
    throw InputError(std::string(who) + ": presentation multiplicity " + rat_str(c) +
                     " is not an integer");
  Rat n = c;
  return to_long(Int(n.get_num()));
}

// (1 - e^{-z})/z truncated at the given order, over Q
TruncSeries one_minus_exp_over_z(int order) {
  std::vector<Rat> g(order + 1);
  for (int j = 0; j <= order; ++j) {
    g[j] = Rat(1) / Rat(factorial(static_cast<unsigned long>(j) + 1));
    if (j % 2) g[j] = -g[j];
  }
  return TruncSeries::from_coeffs(ScalarDomain::rationals(), std::move(g));
}

}  // namespace

ScalarDomain z_localized_at(unsigned long k) {
  if (k < 2) throw InputError("z_localized_at: k must be >= 2");
  std::vector<Int> primes;
  unsigned long n = k;
  for (unsigned long p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      primes.emplace_back(p);
      while (n % p == 0) n /= p;
    }
  if (n > 1) primes.emplace_back(n);
  return ScalarDomain::integers_localized(std::move(primes));
}

SplitElement theta_k(const SplitElement& x, unsigned k) {
  if (k < 2) throw InputError("theta_k: k must be >= 2");
  ScalarDomain dom = ScalarDomain::join(x.domain(), z_localized_at(k));
  const BaseSpace& X = x.space();
  SplitElement out = SplitElement::unit(X).with_domain(dom);
  for (const auto& [a, c] : x.terms()) {
    long e = int_multiplicity(c, "theta_k");
    if (e == 0) continue;
    SplitElement base(X, dom);
    for (long j = 0; j < static_cast<long>(k); ++j) {
      LineExp ja(a.size());
      for (size_t i = 0; i < a.size(); ++i) ja[i] = a[i] * j;
      base.add_term(ja, Rat(1));
    }
    if (e > 0) {
      out = out * pow(base, static_cast<unsigned>(e));
    } else {
      SplitElement inv = SplitElement::from_nil_poly(nil_invert(base.normal_form()));
      out = out * pow(inv, static_cast<unsigned>(-e));
    }
  }
  return out;
}

CheckReport verify_arr(const RelativeMap& f, unsigned k, const SplitElement& x) {
  if (x.space() != f.source) throw InputError("verify_arr: x does not live on the source");
  ScalarDomain dom = ScalarDomain::join(x.domain(), z_localized_at(k));
  SplitElement xk = x.with_domain(dom);
  SplitElement fx = k_pushforward(f, xk);
  SplitElement lhs = adams_op(static_cast<long>(k), fx);
  SplitElement psix = adams_op(static_cast<long>(k), xk);
  SplitElement thInv = theta_k(-cotangent_class(f), k);
  SplitElement inner = psix * thInv;
  SplitElement rhs = k_pushforward(f, inner);

  CheckReport r;
  std::ostringstream claim;
  claim << "Psi^" << k << "(f_* x) = f_*(Psi^" << k << "(x) theta^" << k
        << "(Omega_f)^{-1}) for f: " << f.str() << ", x = " << x.str();
  r.claim = claim.str();
  r.lhs = lhs.normal_form().str();
  r.rhs = rhs.normal_form().str();
  r.equal = (lhs == rhs);
  r.trace = {"f_* x = " + fx.normal_form().str(),
             "Psi^k(f_* x) = " + r.lhs,
             "Psi^k(x) = " + psix.normal_form().str(),
             "theta^k(Omega_f)^{-1} = " + thInv.normal_form().str(),
             "Psi^k(x) theta^k(Omega_f)^{-1} = " + inner.normal_form().str(),
             "f_*(Psi^k(x) theta^k(Omega_f)^{-1}) = " + r.rhs};
  return r;
}

CheckReport verify_grr(const RelativeMap& f, const SplitElement& x) {
  if (x.space() != f.source) throw InputError("verify_grr: x does not live on the source");
  SplitElement fx = k_pushforward(f, x);
  ChowClass lhs = chern_character(fx);
  ChowClass chx = chern_character(x);
  ChowClass td = todd_class(tangent_class(f));
  ChowClass prod = mul(chx, td);
  ChowClass rhs = chow_pushforward(f, prod);

  CheckReport r;
  r.claim = "ch(f_* x) = f_*(ch(x) td(T_f)) for f: " + f.str() + ", x = " + x.str();
  r.lhs = lhs.str();
  r.rhs = rhs.str();
  r.equal = (lhs == rhs);
  r.trace = {"f_* x = " + fx.normal_form().str(), "ch(x) = " + chx.str(),
             "td(T_f) = " + td.str(), "ch(x) td(T_f) = " + prod.str()};
  return r;
}

CheckReport verify_hrr(unsigned d, long m) {
  ScalarDomain Q = ScalarDomain::rationals();
  int ord = static_cast<int>(d);
  TruncSeries E = series_exp(scalar_mul(Rat(m), TruncSeries::var(Q, ord)));
  TruncSeries T = series_invert(one_minus_exp_over_z(ord));
  TruncSeries total = mul(E, int_pow(T, Int(d) + 1));
  Rat got = total.coeff(ord);
  Int expect = euler_characteristic(m, d);

  CheckReport r;
  std::ostringstream claim;
  claim << "chi(P^" << d << ", O(" << m << ")) = [z^" << d << "] e^{" << m
        << "z} (z/(1-e^{-z}))^" << d + 1;
  r.claim = claim.str();
  r.lhs = expect.get_str();
  r.rhs = rat_str(got);
  r.equal = (Rat(expect) == got);
  r.trace = {"e^{mz} (z/(1-e^{-z}))^{d+1} = " + total.str("z")};
  return r;
}

CheckReport verify_omega_chi(unsigned n, const BaseSpace& X) {
  if (n < 1) throw InputError("verify_omega_chi: n must be >= 1");
  ScalarDomain Z = ScalarDomain::integers();
  BaseSpace XP = X;
  XP.dims.push_back(1);
  RelativeMap forget = RelativeMap::forget_last_factor(XP);
  unsigned last = XP.factors() - 1;

  std::vector<LineExp> gens;
  if (X.factors() == 0) {
    gens.push_back(LineExp{});
  } else {
    for (unsigned i = 0; i < X.factors(); ++i) {
      LineExp e(X.factors(), 0);
      e[i] = 1;
      gens.push_back(e);
    }
  }

  CheckReport r;
  std::ostringstream claim;
  claim << "chi_" << n << "(u x L) = [infty] x (" << n << " chi_" << n - 1
        << "(L)) on " << XP.str() << " for every generating line class L";
  r.claim = claim.str();
  r.equal = true;
  std::ostringstream ls, rs;
  for (size_t g = 0; g < gens.size(); ++g) {
    const LineExp& a = gens[g];
    LineExp a1 = a, a0 = a;
    a1.push_back(1);
    a0.push_back(0);
    SplitElement uL = SplitElement::line(XP, a1) - SplitElement::line(XP, a0);
    ChowClass left = chi_n_class(n, uL);
    ChowClass chiL = chi_n_class(n - 1, SplitElement::line(X, a));
    ChowClass right =
        mul(NilPoly::variable(XP, Z, last), chow_pullback(forget, scalar_mul(Rat(n), chiL)));
    bool ok = (left == right);
    r.equal = r.equal && ok;
    ls << (g ? "; " : "") << left.str();
    rs << (g ? "; " : "") << right.str();
    r.trace.push_back("L = " + SplitElement::line(X, a).str() + ": chi_n(u x L) = " + left.str() +
                      ", [infty] x n chi_{n-1}(L) = " + right.str() +
                      (ok ? " (equal)" : " (NOT equal)"));
  }
  r.lhs = ls.str();
  r.rhs = rs.str();
  return r;
}

}  // namespace lf
