#include "lambda_forge/chow.hpp"

#include <sstream>

#include "lambda_forge/symmetric.hpp"
#include "lambda_forge/trunc_series.hpp"
#include "lambda_forge/weighted_poly.hpp"

namespace lf {

namespace {

struct NilRing {
  using Elem = NilPoly;
  BaseSpace space;
  ScalarDomain dom;
  NilPoly zero() const { return NilPoly(space, dom); }
  NilPoly one() const { return NilPoly::constant(space, dom, Rat(1)); }
  NilPoly add(const NilPoly& a, const NilPoly& b) const { return lf::add(a, b); }
  NilPoly mul(const NilPoly& a, const NilPoly& b) const { return lf::mul(a, b); }
  NilPoly scalar_mul(const Rat& c, const NilPoly& a) const { return lf::scalar_mul(c, a); }
};

long int_multiplicity(const Rat& c, const char* who) {
  if (!is_integer(c))
    throw InputError(std::string(who) + ": presentation multiplicity " + rat_str(c) +
                     " is not an integer");
  Rat n = c;
  return to_long(Int(n.get_num()));
}

// c_1 of the line class [O(a)]: sum_i a_i h_i
NilPoly line_c1(const BaseSpace& X, const ScalarDomain& dom, const LineExp& a) {
  NilPoly z(X, dom);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    NilMono m(a.size(), 0);
    m[i] = 1;
    z.add_term(m, Rat(a[i]));
  }
  return z;
}

NilPoly int_power(const NilPoly& base, long e) {
  if (e >= 0) return pow(base, static_cast<unsigned>(e));
  return pow(nil_invert(base), static_cast<unsigned>(-e));
}

// sum_j z^j / j! over the nilpotent z
NilPoly exp_nil(const NilPoly& z) {
  NilPoly out = NilPoly::constant(z.space(), z.domain(), Rat(1));
  NilPoly p = out;
  Rat f(1);
  unsigned cap = z.space().total_dim();
  for (unsigned j = 1; j <= cap; ++j) {
    p = mul(p, z);
    if (p.is_zero()) break;
    f /= Rat(j);
    out = add(out, scalar_mul(f, p));
  }
  return out;
}

// p(z) for a series p and nilpotent z
NilPoly eval_series(const TruncSeries& p, const NilPoly& z) {
  NilPoly out = NilPoly::constant(z.space(), z.domain(), p.coeff(0));
  NilPoly q = NilPoly::constant(z.space(), z.domain(), Rat(1));
  unsigned cap = z.space().total_dim();
  for (unsigned j = 1; j <= cap && static_cast<int>(j) <= p.order(); ++j) {
    q = mul(q, z);
    if (q.is_zero()) break;
    out = add(out, scalar_mul(p.coeff(static_cast<int>(j)), q));
  }
  return out;
}

}  // namespace

ChowClass total_chern(const SplitElement& x) {
  const BaseSpace& X = x.space();
  NilPoly out = NilPoly::constant(X, x.domain(), Rat(1));
  for (const auto& [a, c] : x.terms()) {
    long e = int_multiplicity(c, "total_chern");
    if (e == 0) continue;
    NilPoly base = add(NilPoly::constant(X, x.domain(), Rat(1)), line_c1(X, x.domain(), a));
    out = mul(out, int_power(base, e));
  }
  return out;
}

ChowClass chern_class(unsigned i, const SplitElement& x) { return total_chern(x).graded_part(i); }

ChowClass chi_n_class(unsigned n, const SplitElement& x) {
  const BaseSpace& X = x.space();
  if (n == 0) return NilPoly::constant(X, x.domain(), x.rank());
  WeightedPoly chi = chi_poly(n);
  std::vector<NilPoly> vals;
  vals.reserve(n);
  ChowClass c = total_chern(x);
  for (unsigned i = 1; i <= n; ++i) vals.push_back(c.graded_part(i));
  return evaluate(chi, NilRing{X, x.domain()}, vals);
}

ChowClass chern_character(const SplitElement& x) {
  const BaseSpace& X = x.space();
  ScalarDomain dom = ScalarDomain::rationals();
  NilPoly out(X, dom);
  for (const auto& [a, c] : x.terms()) out = add(out, scalar_mul(c, exp_nil(line_c1(X, dom, a))));
  return out;
}

ChowClass todd_class(const SplitElement& x) {
  const BaseSpace& X = x.space();
  ScalarDomain dom = ScalarDomain::rationals();
  unsigned cap = X.total_dim();
  // z/(1 - e^{-z}) inverts sum_{j>=0} (-z)^j / (j+1)!
  std::vector<Rat> g(cap + 1);
  for (unsigned j = 0; j <= cap; ++j) {
    g[j] = Rat(1) / Rat(factorial(j + 1));
    if (j % 2) g[j] = -g[j];
  }
  TruncSeries T = series_invert(TruncSeries::from_coeffs(dom, std::move(g)));
  NilPoly out = NilPoly::constant(X, dom, Rat(1));
  for (const auto& [a, c] : x.terms()) {
    long e = int_multiplicity(c, "todd_class");
    if (e == 0) continue;
    NilPoly tdL = eval_series(T, line_c1(X, dom, a));
    out = mul(out, int_power(tdL, e));
  }
  return out;
}

RelativeMap RelativeMap::projection_to_point(BaseSpace src) {
  RelativeMap f;
  f.kind = Kind::ProjectionToPoint;
  f.source = std::move(src);
  return f;
}

RelativeMap RelativeMap::forget_last_factor(BaseSpace src) {
  if (src.dims.empty()) throw InputError("forget_last_factor: the source has no factor to forget");
  RelativeMap f;
  f.kind = Kind::ForgetLastFactor;
  f.source = std::move(src);
  return f;
}

BaseSpace RelativeMap::target() const {
  if (kind == Kind::ProjectionToPoint) return BaseSpace{};
  BaseSpace t = source;
  t.dims.pop_back();
  return t;
}

std::vector<unsigned> RelativeMap::relative_factors() const {
  std::vector<unsigned> out;
  if (kind == Kind::ProjectionToPoint) {
    for (unsigned i = 0; i < source.factors(); ++i) out.push_back(i);
  } else {
    out.push_back(source.factors() - 1);
  }
  return out;
}

unsigned RelativeMap::relative_dim() const {
  unsigned d = 0;
  for (unsigned i : relative_factors()) d += source.dims[i];
  return d;
}

std::string RelativeMap::str() const { return source.str() + " -> " + target().str(); }

SplitElement tangent_class(const RelativeMap& f) {
  SplitElement out = SplitElement::zero(f.source);
  size_t m = f.source.dims.size();
  for (unsigned i : f.relative_factors()) {
    LineExp e(m, 0);
    e[i] = 1;
    out.add_term(e, Rat(f.source.dims[i] + 1));
    out.add_term(LineExp(m, 0), Rat(-1));
  }
  return out;
}

SplitElement cotangent_class(const RelativeMap& f) {
  SplitElement out = SplitElement::zero(f.source);
  size_t m = f.source.dims.size();
  for (unsigned i : f.relative_factors()) {
    LineExp e(m, 0);
    e[i] = -1;
    out.add_term(e, Rat(f.source.dims[i] + 1));
    out.add_term(LineExp(m, 0), Rat(-1));
  }
  return out;
}

Int euler_characteristic(long m, unsigned d) { return binomial(Int(m) + Int(d), d); }

SplitElement k_pushforward(const RelativeMap& f, const SplitElement& x) {
  if (x.space() != f.source) throw InputError("k_pushforward: class does not live on the source");
  SplitElement out(f.target(), x.domain());
  for (const auto& [a, c] : x.terms()) {
    if (f.kind == RelativeMap::Kind::ForgetLastFactor) {
      LineExp b(a.begin(), a.end() - 1);
      out.add_term(b, c * Rat(euler_characteristic(a.back(), f.source.dims.back())));
    } else {
      Rat mult(1);
      for (size_t i = 0; i < a.size(); ++i) mult *= Rat(euler_characteristic(a[i], f.source.dims[i]));
      out.add_term(LineExp{}, c * mult);
    }
  }
  return out;
}

ChowClass chow_pushforward(const RelativeMap& f, const ChowClass& y) {
  if (y.space() != f.source) throw InputError("chow_pushforward: class does not live on the source");
  NilPoly out(f.target(), y.domain());
  for (const auto& [b, c] : y.terms()) {
    if (f.kind == RelativeMap::Kind::ForgetLastFactor) {
      if (b.back() != f.source.dims.back()) continue;
      out.add_term(NilMono(b.begin(), b.end() - 1), c);
    } else {
      bool top = true;
      for (size_t i = 0; i < b.size(); ++i)
        if (b[i] != f.source.dims[i]) {
          top = false;
          break;
        }
      if (top) out.add_term(NilMono{}, c);
    }
  }
  return out;
}

SplitElement k_pullback(const RelativeMap& f, const SplitElement& y) {
  if (y.space() != f.target()) throw InputError("k_pullback: class does not live on the target");
  SplitElement out(f.source, y.domain());
  size_t m = f.source.dims.size();
  for (const auto& [a, c] : y.terms()) {
    LineExp b(m, 0);
    std::copy(a.begin(), a.end(), b.begin());
    out.add_term(b, c);
  }
  return out;
}

ChowClass chow_pullback(const RelativeMap& f, const ChowClass& y) {
  if (y.space() != f.target()) throw InputError("chow_pullback: class does not live on the target");
  NilPoly out(f.source, y.domain());
  size_t m = f.source.dims.size();
  for (const auto& [a, c] : y.terms()) {
    NilMono b(m, 0);
    std::copy(a.begin(), a.end(), b.begin());
    out.add_term(b, c);
  }
  return out;
}

}  // namespace lf
