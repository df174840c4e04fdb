#include "lambda_forge/split_element.hpp"

#include <sstream>

namespace lf {

unsigned BaseSpace::total_dim() const {
  unsigned t = 0;
  for (unsigned d : dims) t += d;
  return t;
}

std::string BaseSpace::str() const {
  if (dims.empty()) return "pt";
  std::ostringstream os;
  for (size_t i = 0; i < dims.size(); ++i) {
    if (i) os << " x ";
    os << "P^" << dims[i];
  }
  return os.str();
}

NilPoly::NilPoly(BaseSpace space, ScalarDomain dom)
    : space_(std::move(space)), dom_(std::move(dom)) {}

NilPoly NilPoly::constant(BaseSpace space, ScalarDomain dom, const Rat& c) {
  NilPoly p(std::move(space), std::move(dom));
  p.add_term(NilMono(p.space_.dims.size(), 0), c);
  return p;
}

NilPoly NilPoly::variable(BaseSpace space, ScalarDomain dom, unsigned i) {
  if (i >= space.dims.size()) throw InputError("variable index out of range");
  NilPoly p(std::move(space), std::move(dom));
  NilMono m(p.space_.dims.size(), 0);
  m[i] = 1;
  p.add_term(m, Rat(1));
  return p;
}

Rat NilPoly::coeff(const NilMono& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rat(0) : it->second;
}

void NilPoly::add_term(const NilMono& m, const Rat& c) {
  if (m.size() != space_.dims.size()) throw InputError("exponent arity mismatch");
  for (size_t i = 0; i < m.size(); ++i)
    if (m[i] > space_.dims[i]) return;
  Rat v = dom_.normalize(coeff(m) + c);
  if (v == 0)
    terms_.erase(m);
  else
    terms_[m] = v;
}

NilPoly NilPoly::graded_part(unsigned d) const {
  NilPoly out(space_, dom_);
  for (const auto& [m, c] : terms_) {
    unsigned t = 0;
    for (unsigned e : m) t += e;
    if (t == d) out.add_term(m, c);
  }
  return out;
}

unsigned NilPoly::top_degree() const {
  unsigned best = 0;
  for (const auto& [m, c] : terms_) {
    unsigned t = 0;
    for (unsigned e : m) t += e;
    if (t > best) best = t;
  }
  return best;
}

NilPoly NilPoly::with_domain(const ScalarDomain& dom) const {
  NilPoly out(space_, dom);
  for (const auto& [m, c] : terms_) out.add_term(m, c);
  return out;
}

std::string NilPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    os << (first ? "" : " + ") << rat_str(c);
    for (size_t i = 0; i < m.size(); ++i)
      if (m[i]) {
        os << "*u" << i + 1;
        if (m[i] > 1) os << "^" << m[i];
      }
    first = false;
  }
  return os.str();
}

bool NilPoly::operator==(const NilPoly& o) const {
  return space_ == o.space_ && terms_ == o.terms_;
}

namespace {

std::pair<BaseSpace, ScalarDomain> nil_meet(const NilPoly& a, const NilPoly& b) {
  if (a.space() != b.space()) throw InputError("space mismatch");
  return {a.space(), ScalarDomain::join(a.domain(), b.domain())};
}

}  // namespace

NilPoly add(const NilPoly& a, const NilPoly& b) {
  auto [sp, dom] = nil_meet(a, b);
  NilPoly out(sp, dom);
  for (const auto& [m, c] : a.terms()) out.add_term(m, c);
  for (const auto& [m, c] : b.terms()) out.add_term(m, c);
  return out;
}

NilPoly sub(const NilPoly& a, const NilPoly& b) { return add(a, neg(b)); }

NilPoly neg(const NilPoly& a) { return scalar_mul(Rat(-1), a); }

NilPoly mul(const NilPoly& a, const NilPoly& b) {
  auto [sp, dom] = nil_meet(a, b);
  NilPoly out(sp, dom);
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      NilMono m(ma.size());
      bool alive = true;
      for (size_t i = 0; i < m.size(); ++i) {
        m[i] = ma[i] + mb[i];
        if (m[i] > sp.dims[i]) {
          alive = false;
          break;
        }
      }
      if (alive) out.add_term(m, ca * cb);
    }
  return out;
}

NilPoly scalar_mul(const Rat& c, const NilPoly& a) {
  NilPoly out(a.space(), a.domain());
  for (const auto& [m, v] : a.terms()) out.add_term(m, c * v);
  return out;
}

NilPoly pow(const NilPoly& a, unsigned e) {
  NilPoly acc = NilPoly::constant(a.space(), a.domain(), Rat(1));
  NilPoly base = a;
  while (e) {
    if (e & 1u) acc = mul(acc, base);
    e >>= 1;
    if (e) base = mul(base, base);
  }
  return acc;
}

NilPoly nil_invert(const NilPoly& a) {
  Rat c0 = a.constant_term();
  if (!a.domain().is_unit(c0))
    throw DomainError("constant term " + rat_str(c0) + " is not a unit in " + a.domain().name());
  Rat inv = a.domain().invert(c0);
  NilPoly n = scalar_mul(inv, a);
  n.add_term(NilMono(a.space().dims.size(), 0), Rat(-1));  // n = a/c0 - 1, nilpotent
  NilPoly out = NilPoly::constant(a.space(), a.domain(), Rat(1));
  NilPoly p = out;
  unsigned cap = a.space().total_dim();
  for (unsigned k = 1; k <= cap; ++k) {
    p = mul(p, n);
    if (p.is_zero()) break;
    out = add(out, scalar_mul(k % 2 ? Rat(-1) : Rat(1), p));
  }
  return scalar_mul(inv, out);
}

SplitElement::SplitElement(BaseSpace space, ScalarDomain dom)
    : space_(std::move(space)), dom_(std::move(dom)) {}

SplitElement SplitElement::zero(BaseSpace space) {
  return SplitElement(std::move(space), ScalarDomain::integers());
}

SplitElement SplitElement::unit(BaseSpace space) {
  SplitElement x(std::move(space), ScalarDomain::integers());
  x.add_term(LineExp(x.space_.dims.size(), 0), Rat(1));
  return x;
}

SplitElement SplitElement::line(BaseSpace space, LineExp a) {
  if (a.size() != space.dims.size()) throw InputError("line exponent arity mismatch");
  SplitElement x(std::move(space), ScalarDomain::integers());
  x.add_term(a, Rat(1));
  return x;
}

SplitElement SplitElement::from_nil_poly(const NilPoly& p) {
  // u^b = (L-1)^b expands to sum_j C(b,j) (-1)^(b-j) L^j, factorwise
  SplitElement x(p.space(), p.domain());
  size_t m = p.space().dims.size();
  for (const auto& [b, c] : p.terms()) {
    std::vector<std::vector<std::pair<long, Rat>>> factor(m);
    for (size_t i = 0; i < m; ++i)
      for (unsigned j = 0; j <= b[i]; ++j) {
        Rat w(binomial(Int(b[i]), j));
        if ((b[i] - j) % 2) w = -w;
        factor[i].push_back({static_cast<long>(j), w});
      }
    std::vector<size_t> idx(m, 0);
    while (true) {
      LineExp a(m);
      Rat w = c;
      for (size_t i = 0; i < m; ++i) {
        a[i] = factor[i][idx[i]].first;
        w *= factor[i][idx[i]].second;
      }
      x.add_term(a, w);
      size_t i = 0;
      while (i < m && ++idx[i] == factor[i].size()) idx[i++] = 0;
      if (i == m) break;
    }
  }
  return x;
}

void SplitElement::add_term(const LineExp& a, const Rat& c) {
  if (a.size() != space_.dims.size()) throw InputError("line exponent arity mismatch");
  Rat v = dom_.normalize(coeff(a) + c);
  if (v == 0)
    terms_.erase(a);
  else
    terms_[a] = v;
}

Rat SplitElement::coeff(const LineExp& a) const {
  auto it = terms_.find(a);
  return it == terms_.end() ? Rat(0) : it->second;
}

Rat SplitElement::rank() const {
  Rat r(0);
  for (const auto& [a, c] : terms_) r += c;
  return r;
}

NilPoly SplitElement::normal_form() const {
  NilPoly out(space_, dom_);
  size_t m = space_.dims.size();
  for (const auto& [a, c] : terms_) {
    NilPoly t = NilPoly::constant(space_, dom_, c);
    for (size_t i = 0; i < m; ++i) {
      // (1+u_i)^{a_i} truncated by nilpotence, any integer a_i
      NilPoly f(space_, dom_);
      for (unsigned j = 0; j <= space_.dims[i]; ++j) {
        NilMono mono(m, 0);
        mono[i] = j;
        f.add_term(mono, Rat(binomial(Int(a[i]), j)));
      }
      t = mul(t, f);
    }
    out = add(out, t);
  }
  return out;
}

SplitElement SplitElement::with_domain(const ScalarDomain& dom) const {
  SplitElement out(space_, dom);
  for (const auto& [a, c] : terms_) out.add_term(a, c);
  return out;
}

bool SplitElement::is_zero() const { return normal_form().is_zero(); }

std::string SplitElement::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [a, c] : terms_) {
    os << (first ? "" : " + ") << rat_str(c) << "*O(";
    for (size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
    os << ")";
    first = false;
  }
  return os.str();
}

bool SplitElement::operator==(const SplitElement& o) const {
  if (space_ != o.space_) return false;
  return normal_form().terms() == o.normal_form().terms();
}

namespace {

std::pair<BaseSpace, ScalarDomain> split_meet(const SplitElement& a, const SplitElement& b) {
  if (a.space() != b.space()) throw InputError("space mismatch");
  return {a.space(), ScalarDomain::join(a.domain(), b.domain())};
}

}  // namespace

SplitElement add(const SplitElement& a, const SplitElement& b) {
  auto [sp, dom] = split_meet(a, b);
  SplitElement out(sp, dom);
  for (const auto& [e, c] : a.terms()) out.add_term(e, c);
  for (const auto& [e, c] : b.terms()) out.add_term(e, c);
  return out;
}

SplitElement sub(const SplitElement& a, const SplitElement& b) { return add(a, neg(b)); }

SplitElement neg(const SplitElement& a) { return scalar_mul(Rat(-1), a); }

SplitElement mul(const SplitElement& a, const SplitElement& b) {
  auto [sp, dom] = split_meet(a, b);
  SplitElement out(sp, dom);
  for (const auto& [ea, ca] : a.terms())
    for (const auto& [eb, cb] : b.terms()) {
      LineExp e(ea.size());
      for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  return out;
}

SplitElement scalar_mul(const Rat& c, const SplitElement& a) {
  SplitElement out(a.space(), a.domain());
  for (const auto& [e, v] : a.terms()) out.add_term(e, c * v);
  return out;
}

SplitElement pow(const SplitElement& a, unsigned e) {
  SplitElement acc = SplitElement::unit(a.space()).with_domain(a.domain());
  SplitElement base = a;
  while (e) {
    if (e & 1u) acc = mul(acc, base);
    e >>= 1;
    if (e) base = mul(base, base);
  }
  return acc;
}

}  // namespace lf
