#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lambda_forge/scalar.hpp"

namespace lf {

using Mono = std::vector<uint32_t>;

// Sparse polynomial in two blocks of weighted variables.  Block one
// ("e-vars") has ne variables, block two ("f-vars") nf; by default
// variable i of a block carries weight i+1, matching lambda/gamma
// coordinates where e_i has weight i.  Monomials above the weight
// bound are dropped by every operation.
class WeightedPoly {
 public:
  static constexpr unsigned kNoBound = 0xffffffffu;

  WeightedPoly(unsigned ne, unsigned nf, unsigned bound);
  // single block with explicit per-variable weights (formal roots use weight 1)
  static WeightedPoly with_weights(std::vector<unsigned> weights, unsigned bound);
  static WeightedPoly constant(unsigned ne, unsigned nf, unsigned bound, const Rat& c);
  // the monomial x_index (0-based across both blocks)
  static WeightedPoly variable(unsigned ne, unsigned nf, unsigned bound, unsigned index);

  unsigned e_count() const { return ne_; }
  unsigned f_count() const { return nf_; }
  unsigned var_count() const { return static_cast<unsigned>(weights_.size()); }
  unsigned bound() const { return bound_; }
  const std::vector<unsigned>& weights() const { return weights_; }

  unsigned weight_of(const Mono& m) const;
  unsigned weight() const;  // largest monomial weight present
  bool is_zero() const { return terms_.empty(); }
  const std::map<Mono, Rat>& terms() const { return terms_; }
  Rat coeff(const Mono& m) const;

  // accumulate c * m, dropping it when over the bound
  void add_term(const Mono& m, const Rat& c);

  WeightedPoly truncated(unsigned bound) const;
  std::string str(const std::string& eName = "e", const std::string& fName = "f") const;

  bool operator==(const WeightedPoly& o) const;
  bool operator!=(const WeightedPoly& o) const { return !(*this == o); }

  WeightedPoly& clear_to(unsigned bound);

 private:
  unsigned ne_, nf_;
  unsigned bound_;
  std::vector<unsigned> weights_;
  std::map<Mono, Rat> terms_;
};

// same variable blocks and weights, no terms
WeightedPoly zero_like(const WeightedPoly& a, unsigned bound);

WeightedPoly add(const WeightedPoly& a, const WeightedPoly& b);
WeightedPoly sub(const WeightedPoly& a, const WeightedPoly& b);
WeightedPoly neg(const WeightedPoly& a);
WeightedPoly mul(const WeightedPoly& a, const WeightedPoly& b);
WeightedPoly scalar_mul(const Rat& c, const WeightedPoly& a);
WeightedPoly pow(const WeightedPoly& a, unsigned e);

inline WeightedPoly operator+(const WeightedPoly& a, const WeightedPoly& b) { return add(a, b); }
inline WeightedPoly operator-(const WeightedPoly& a, const WeightedPoly& b) { return sub(a, b); }
inline WeightedPoly operator*(const WeightedPoly& a, const WeightedPoly& b) { return mul(a, b); }

struct RatRing {
  using Elem = Rat;
  Rat zero() const { return Rat(0); }
  Rat one() const { return Rat(1); }
  Rat add(const Rat& a, const Rat& b) const { return a + b; }
  Rat mul(const Rat& a, const Rat& b) const { return a * b; }
  Rat scalar_mul(const Rat& c, const Rat& a) const { return c * a; }
};

// polynomials over a fixed variable set as the coefficient carrier
struct PolyRing {
  using Elem = WeightedPoly;
  WeightedPoly proto;  // shape template: blocks, weights, bound
  explicit PolyRing(WeightedPoly p) : proto(std::move(p)) {}
  WeightedPoly zero() const { return zero_like(proto, proto.bound()); }
  WeightedPoly one() const {
    WeightedPoly p = zero();
    p.add_term(Mono(p.var_count(), 0), Rat(1));
    return p;
  }
  WeightedPoly add(const WeightedPoly& a, const WeightedPoly& b) const { return lf::add(a, b); }
  WeightedPoly mul(const WeightedPoly& a, const WeightedPoly& b) const { return lf::mul(a, b); }
  WeightedPoly scalar_mul(const Rat& c, const WeightedPoly& a) const { return lf::scalar_mul(c, a); }
};

// Evaluation over any commutative ring carrier.  Ring must provide:
//   Elem zero(), Elem one(), Elem add(a,b), Elem mul(a,b), Elem scalar_mul(Rat,a)
template <class Ring>
typename Ring::Elem evaluate(const WeightedPoly& p, const Ring& R,
                             const std::vector<typename Ring::Elem>& vals) {
  if (vals.size() != p.var_count()) throw InputError("evaluate: wrong number of variable values");
  using Elem = typename Ring::Elem;
  std::vector<std::vector<Elem>> pows(vals.size());
  Elem acc = R.zero();
  for (const auto& [mono, c] : p.terms()) {
    Elem t = R.one();
    for (size_t v = 0; v < mono.size(); ++v) {
      uint32_t k = mono[v];
      if (k == 0) continue;
      auto& pv = pows[v];
      if (pv.empty()) pv.push_back(vals[v]);
      while (pv.size() < k) pv.push_back(R.mul(pv.back(), vals[v]));
      t = R.mul(t, pv[k - 1]);
    }
    acc = R.add(acc, R.scalar_mul(c, t));
  }
  return acc;
}

}  // namespace lf
