#include "lambda_forge/weighted_poly.hpp"

#include <numeric>
#include <sstream>

namespace lf {

WeightedPoly::WeightedPoly(unsigned ne, unsigned nf, unsigned bound)
    : ne_(ne), nf_(nf), bound_(bound) {
  weights_.reserve(ne + nf);
  for (unsigned i = 1; i <= ne; ++i) weights_.push_back(i);
  for (unsigned j = 1; j <= nf; ++j) weights_.push_back(j);
}

WeightedPoly WeightedPoly::with_weights(std::vector<unsigned> weights, unsigned bound) {
  WeightedPoly p(0, 0, bound);
  p.ne_ = static_cast<unsigned>(weights.size());
  p.weights_ = std::move(weights);
  return p;
}

WeightedPoly WeightedPoly::constant(unsigned ne, unsigned nf, unsigned bound, const Rat& c) {
  WeightedPoly p(ne, nf, bound);
  p.add_term(Mono(ne + nf, 0), c);
  return p;
}

WeightedPoly WeightedPoly::variable(unsigned ne, unsigned nf, unsigned bound, unsigned index) {
  WeightedPoly p(ne, nf, bound);
  if (index >= ne + nf) throw InputError("variable index out of range");
  Mono m(ne + nf, 0);
  m[index] = 1;
  p.add_term(m, Rat(1));
  return p;
}

WeightedPoly zero_like(const WeightedPoly& a, unsigned bound) {
  WeightedPoly p = a;
  return p.clear_to(bound);
}

WeightedPoly& WeightedPoly::clear_to(unsigned bound) {
  bound_ = bound;
  terms_.clear();
  return *this;
}

unsigned WeightedPoly::weight_of(const Mono& m) const {
  if (m.size() != weights_.size()) throw InputError("monomial length mismatch");
  unsigned long w = 0;
  for (size_t i = 0; i < m.size(); ++i) w += static_cast<unsigned long>(m[i]) * weights_[i];
  if (w > kNoBound) throw InputError("monomial weight overflow");
  return static_cast<unsigned>(w);
}

unsigned WeightedPoly::weight() const {
  unsigned w = 0;
  for (const auto& [m, c] : terms_) w = std::max(w, weight_of(m));
  return w;
}

Rat WeightedPoly::coeff(const Mono& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rat(0) : it->second;
}

void WeightedPoly::add_term(const Mono& m, const Rat& c) {
  if (c == 0) return;
  if (weight_of(m) > bound_) return;
  auto [it, fresh] = terms_.emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

WeightedPoly WeightedPoly::truncated(unsigned bound) const {
  WeightedPoly p = *this;
  p.bound_ = bound;
  for (auto it = p.terms_.begin(); it != p.terms_.end();) {
    if (p.weight_of(it->first) > bound) it = p.terms_.erase(it);
    else ++it;
  }
  return p;
}

std::string WeightedPoly::str(const std::string& eName, const std::string& fName) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    os << rat_str(c);
    for (size_t v = 0; v < m.size(); ++v) {
      if (m[v] == 0) continue;
      os << "*" << (v < ne_ ? eName : fName) << (v < ne_ ? v + 1 : v - ne_ + 1);
      if (m[v] > 1) os << "^" << m[v];
    }
    first = false;
  }
  return os.str();
}

bool WeightedPoly::operator==(const WeightedPoly& o) const {
  return ne_ == o.ne_ && nf_ == o.nf_ && weights_ == o.weights_ && terms_ == o.terms_;
}

namespace {
void require_compatible(const WeightedPoly& a, const WeightedPoly& b) {
  if (a.e_count() != b.e_count() || a.f_count() != b.f_count() || a.weights() != b.weights())
    throw InputError("weighted polynomials over different variable sets");
}
}  // namespace

WeightedPoly add(const WeightedPoly& a, const WeightedPoly& b) {
  require_compatible(a, b);
  WeightedPoly r = a.truncated(std::min(a.bound(), b.bound()));
  for (const auto& [m, c] : b.terms()) r.add_term(m, c);
  return r;
}

WeightedPoly sub(const WeightedPoly& a, const WeightedPoly& b) {
  require_compatible(a, b);
  WeightedPoly r = a.truncated(std::min(a.bound(), b.bound()));
  for (const auto& [m, c] : b.terms()) r.add_term(m, -c);
  return r;
}

WeightedPoly neg(const WeightedPoly& a) { return scalar_mul(Rat(-1), a); }

WeightedPoly mul(const WeightedPoly& a, const WeightedPoly& b) {
  require_compatible(a, b);
  WeightedPoly r = zero_like(a, std::min(a.bound(), b.bound()));
  Mono m(a.weights().size());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      for (size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      r.add_term(m, ca * cb);
    }
  }
  return r;
}

WeightedPoly scalar_mul(const Rat& c, const WeightedPoly& a) {
  WeightedPoly r = zero_like(a, a.bound());
  if (c == 0) return r;
  for (const auto& [m, v] : a.terms()) r.add_term(m, c * v);
  return r;
}

WeightedPoly pow(const WeightedPoly& a, unsigned e) {
  WeightedPoly acc = zero_like(a, a.bound());
  acc.add_term(Mono(a.weights().size(), 0), Rat(1));
  WeightedPoly sq = a;
  while (e > 0) {
    if (e & 1u) acc = mul(acc, sq);
    e >>= 1u;
    if (e > 0) sq = mul(sq, sq);
  }
  return acc;
}

}  // namespace lf
