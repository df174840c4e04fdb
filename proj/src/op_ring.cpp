#include "lambda_forge/op_ring.hpp"

#include <map>
#include <sstream>

#include "lambda_forge/lambda_k.hpp"
#include "lambda_forge/symmetric.hpp"

namespace lf {

namespace {

bool star_base(const ScalarDomain& d) {
  return d.kind() == DomainKind::Integers || d.kind() == DomainKind::Rationals;
}

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

}  // namespace

AdditiveOpSeries star_compose(const AdditiveOpSeries& f, const AdditiveOpSeries& g) {
  if (f.order() != g.order()) throw InputError("star needs one common truncation order");
  if (!star_base(f.domain()) || !star_base(g.domain()))
    throw DomainError("star is defined over Z or Q coefficients");
  ScalarDomain dom = ScalarDomain::join(f.domain(), g.domain());
  int N = f.order();
  std::vector<Rat> alpha = to_binomial_basis(f);
  std::vector<Rat> beta = to_binomial_basis(g);
  std::vector<Rat> out(N + 1, Rat(0));
  std::map<long, std::vector<Int>> rows;  // coefficients of (1+U)^{jk}
  for (int j = 0; j <= N; ++j) {
    if (alpha[j] == 0) continue;
    for (int k = 0; k <= N; ++k) {
      if (beta[k] == 0) continue;
      long e = static_cast<long>(j) * k;
      auto it = rows.find(e);
      if (it == rows.end()) {
        std::vector<Int> row(N + 1);
        for (int i = 0; i <= N; ++i) row[i] = binomial(Int(e), i);
        it = rows.emplace(e, std::move(row)).first;
      }
      Rat w = alpha[j] * beta[k];
      for (int i = 0; i <= N; ++i) out[i] += w * Rat(it->second[i]);
    }
  }
  return TruncSeries::from_coeffs(dom, std::move(out));
}

Rat GammaSeries::rank_constant_at(const Int& r) const {
  Rat acc(0);
  Rat p(1);
  for (const Rat& c : rankConstant) {
    acc += c * p;
    p *= Rat(r);
  }
  return acc;
}

bool GammaSeries::operator==(const GammaSeries& o) const {
  auto trimmed = [](const std::vector<Rat>& v) {
    size_t n = v.size();
    while (n > 0 && v[n - 1] == 0) --n;
    return std::vector<Rat>(v.begin(), v.begin() + n);
  };
  return poly == o.poly && unitBase == o.unitBase &&
         trimmed(rankConstant) == trimmed(o.rankConstant);
}

std::string GammaSeries::str() const {
  std::ostringstream os;
  os << poly.str("g");
  if (unitBase != 1) os << ", unit base " << rat_str(unitBase);
  if (!rankConstant.empty()) {
    os << ", rank block";
    for (const Rat& c : rankConstant) os << " " << rat_str(c);
  }
  return os.str();
}

GammaSeries additive_to_gamma(const AdditiveOpSeries& f, unsigned W) {
  if (f.coeff(0) != 0) throw InputError("additive_to_gamma needs a reduced series");
  GammaSeries G(additive_symmetrization(f, W), f.domain());
  return G;
}

AdditiveOpSeries gamma_to_additive(const GammaSeries& G, int N) {
  std::vector<Rat> c(N + 1, Rat(0));
  unsigned vars = G.poly.var_count();
  for (const auto& [m, v] : G.poly.terms()) {
    bool pure = true;
    for (unsigned j = 1; j < vars; ++j)
      if (m[j] != 0) {
        pure = false;
        break;
      }
    if (!pure) continue;
    unsigned k = vars == 0 ? 0 : m[0];
    if (static_cast<int>(k) <= N) c[k] += v;
  }
  for (auto& x : c) x *= G.unitBase;
  c[0] += G.rank_constant_at(1);
  return TruncSeries::from_coeffs(G.dom, std::move(c));
}

GammaSeries multiplicative_class(const TruncSeries& f, unsigned W) {
  Rat a0 = f.coeff(0);
  if (!f.domain().is_unit(a0))
    throw DomainError("constant term " + rat_str(a0) + " is not a unit in " + f.domain().name());
  TruncSeries fn = scalar_mul(f.domain().invert(a0), f);
  GammaSeries G(multiplicative_symmetrization(fn, W), f.domain());
  G.unitBase = a0;
  return G;
}

SplitElement apply_operation(const AdditiveOpSeries& f, const SplitElement& x) {
  unsigned D = x.space().total_dim();
  if (f.order() < static_cast<int>(D))
    throw OrderError("series order " + std::to_string(f.order()) +
                     " cannot act on a space of dimension " + std::to_string(D));
  ScalarDomain dom = ScalarDomain::join(f.domain(), x.domain());
  SplitElement out(x.space(), dom);
  SplitElement unit = SplitElement::unit(x.space());
  for (const auto& [a, c] : x.terms()) {
    SplitElement u = sub(SplitElement::line(x.space(), a), unit);
    SplitElement p = unit;
    SplitElement val = scalar_mul(f.coeff(0), unit);
    for (unsigned k = 1; k <= D; ++k) {
      p = mul(p, u);
      if (p.is_zero()) break;
      val = add(val, scalar_mul(f.coeff(static_cast<int>(k)), p));
    }
    out = add(out, scalar_mul(c, val));
  }
  return out;
}

SplitElement apply_operation(const GammaSeries& G, const SplitElement& x) {
  unsigned D = x.space().total_dim();
  unsigned W = G.weight_bound();
  if (W < D)
    throw OrderError("weight bound " + std::to_string(W) +
                     " cannot act on a space of dimension " + std::to_string(D));
  Rat r = x.rank();
  if (!is_integer(r)) throw InputError("gamma route needs an integer rank");
  Int ri(r.get_num());
  SplitElement xr = sub(x, scalar_mul(r, SplitElement::unit(x.space())));
  SplitRing R{x.space(), ScalarDomain::join(G.dom, x.domain())};
  std::vector<SplitElement> vals;
  for (unsigned j = 1; j <= G.poly.var_count(); ++j) vals.push_back(gamma_op(j, xr));
  SplitElement out = evaluate(G.poly, R, vals);
  out = scalar_mul(rat_pow(G.unitBase, to_long(ri)), out);
  Rat cr = G.rank_constant_at(ri);
  if (cr != 0) out = add(out, scalar_mul(cr, R.one()));
  return out;
}

namespace {

// dense bivariate triangle: t[i][j] with i + j <= N
struct BiSeries {
  unsigned N;
  std::vector<std::vector<Rat>> t;
  explicit BiSeries(unsigned n) : N(n), t(n + 1) {
    for (unsigned i = 0; i <= n; ++i) t[i].assign(n + 1 - i, Rat(0));
  }
};

BiSeries bi_mul(const BiSeries& a, const BiSeries& b) {
  BiSeries out(a.N);
  for (unsigned i = 0; i <= a.N; ++i)
    for (unsigned j = 0; i + j <= a.N; ++j) {
      if (a.t[i][j] == 0) continue;
      for (unsigned k = 0; i + k <= a.N; ++k)
        for (unsigned l = 0; i + j + k + l <= a.N; ++l) {
          if (b.t[k][l] == 0) continue;
          out.t[i + k][j + l] += a.t[i][j] * b.t[k][l];
        }
    }
  return out;
}

}  // namespace

EndoClassification classify_multiplicative_endo(const TruncSeries& f, unsigned N) {
  EndoClassification res;
  if (f.coeff(0) != 1) {
    res.note = "constant term is not 1";
    return res;
  }
  if (f.order() < static_cast<int>(N)) throw OrderError("series shorter than requested degree");
  for (int i = 0; i <= static_cast<int>(N); ++i)
    if (!is_integer(f.coeff(i))) {
      res.note = "coefficient of U^" + std::to_string(i) + " is not an integer";
      return res;
    }

  // lhs = f(U) f(V), rhs = f(U+V+UV), compared on the degree-N triangle
  BiSeries lhs(N), rhs(N), w(N);
  for (unsigned i = 0; i <= N; ++i)
    for (unsigned j = 0; i + j <= N; ++j) lhs.t[i][j] = f.coeff(i) * f.coeff(j);
  if (N >= 1) {
    w.t[1][0] = 1;
    w.t[0][1] = 1;
    if (N >= 2) w.t[1][1] = 1;
  }
  BiSeries p(N);
  p.t[0][0] = 1;
  rhs.t[0][0] = f.coeff(0);
  for (unsigned k = 1; k <= N; ++k) {
    p = bi_mul(p, w);
    Rat fk = f.coeff(k);
    if (fk == 0) continue;
    for (unsigned i = 0; i <= N; ++i)
      for (unsigned j = 0; i + j <= N; ++j) rhs.t[i][j] += fk * p.t[i][j];
  }
  for (unsigned i = 0; i <= N; ++i)
    for (unsigned j = 0; i + j <= N; ++j)
      if (lhs.t[i][j] != rhs.t[i][j]) {
        res.witness_i = i;
        res.witness_j = j;
        res.lhs_coeff = lhs.t[i][j];
        res.rhs_coeff = rhs.t[i][j];
        res.note = "functional equation fails at U^" + std::to_string(i) + " V^" +
                   std::to_string(j);
        return res;
      }
  res.functional_eq_holds = true;

  long k = N >= 1 ? to_long(Int(f.coeff(1).get_num())) : 0;
  for (unsigned i = 0; i <= N; ++i)
    if (f.coeff(i) != Rat(binomial(Int(k), i))) {
      res.note = "coefficients do not match (1+U)^" + std::to_string(k);
      return res;
    }
  res.is_psi_form = true;
  res.exponent = k;
  res.note = "f = (1+U)^" + std::to_string(k);
  return res;
}

}  // namespace lf
