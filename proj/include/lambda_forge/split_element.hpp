#pragma once

#include <map>
#include <string>
#include <vector>

#include "lambda_forge/scalar.hpp"

namespace lf {

// X = P^{n_1} x ... x P^{n_m} over a point; m = 0 is the point itself.
struct BaseSpace {
  std::vector<unsigned> dims;

  unsigned factors() const { return static_cast<unsigned>(dims.size()); }
  unsigned total_dim() const;
  std::string str() const;  // "P^1 x P^2", "pt"
  bool operator==(const BaseSpace& o) const { return dims == o.dims; }
  bool operator!=(const BaseSpace& o) const { return !(*this == o); }
};

using NilMono = std::vector<unsigned>;

// Element of D[u_1..u_m]/(u_i^{dims_i + 1}): every operation drops the
// monomials killed by nilpotence.  Doubles as the Chow ring of the same
// space under u_i = h_i.
class NilPoly {
 public:
  NilPoly(BaseSpace space, ScalarDomain dom);
  static NilPoly constant(BaseSpace space, ScalarDomain dom, const Rat& c);
  static NilPoly variable(BaseSpace space, ScalarDomain dom, unsigned i);

  const BaseSpace& space() const { return space_; }
  const ScalarDomain& domain() const { return dom_; }
  const std::map<NilMono, Rat>& terms() const { return terms_; }

  Rat coeff(const NilMono& m) const;
  Rat constant_term() const { return coeff(NilMono(space_.dims.size(), 0)); }
  void add_term(const NilMono& m, const Rat& c);
  bool is_zero() const { return terms_.empty(); }

  // sum of the terms of total degree d
  NilPoly graded_part(unsigned d) const;
  unsigned top_degree() const;  // 0 for the zero polynomial

  NilPoly with_domain(const ScalarDomain& dom) const;
  std::string str() const;
  bool operator==(const NilPoly& o) const;
  bool operator!=(const NilPoly& o) const { return !(*this == o); }

 private:
  BaseSpace space_;
  ScalarDomain dom_;
  std::map<NilMono, Rat> terms_;
};

NilPoly add(const NilPoly& a, const NilPoly& b);
NilPoly sub(const NilPoly& a, const NilPoly& b);
NilPoly neg(const NilPoly& a);
NilPoly mul(const NilPoly& a, const NilPoly& b);
NilPoly scalar_mul(const Rat& c, const NilPoly& a);
NilPoly pow(const NilPoly& a, unsigned e);
// inverse of a polynomial with unit constant term, via the finite
// geometric series of its nilpotent part
NilPoly nil_invert(const NilPoly& a);

inline NilPoly operator+(const NilPoly& a, const NilPoly& b) { return add(a, b); }
inline NilPoly operator-(const NilPoly& a, const NilPoly& b) { return sub(a, b); }
inline NilPoly operator-(const NilPoly& a) { return neg(a); }
inline NilPoly operator*(const NilPoly& a, const NilPoly& b) { return mul(a, b); }

using LineExp = std::vector<long>;  // [O(a_1,...,a_m)], a_i in Z

// K_0 class written as a combination of line classes.  The term map is a
// presentation, not a normal form: equality is decided in
// D[u]/(u_i^{dims_i+1}) via [O(a)] -> prod (1+u_i)^{a_i}.
class SplitElement {
 public:
  SplitElement(BaseSpace space, ScalarDomain dom);
  static SplitElement zero(BaseSpace space);
  static SplitElement unit(BaseSpace space);  // [O(0,...,0)]
  static SplitElement line(BaseSpace space, LineExp a);
  static SplitElement from_nil_poly(const NilPoly& p);

  const BaseSpace& space() const { return space_; }
  const ScalarDomain& domain() const { return dom_; }
  const std::map<LineExp, Rat>& terms() const { return terms_; }

  void add_term(const LineExp& a, const Rat& c);
  Rat coeff(const LineExp& a) const;
  bool is_zero() const;  // zero in K_0, not emptiness of the presentation

  Rat rank() const;  // sum of coefficients
  NilPoly normal_form() const;
  SplitElement with_domain(const ScalarDomain& dom) const;

  std::string str() const;
  bool operator==(const SplitElement& o) const;
  bool operator!=(const SplitElement& o) const { return !(*this == o); }

 private:
  BaseSpace space_;
  ScalarDomain dom_;
  std::map<LineExp, Rat> terms_;
};

SplitElement add(const SplitElement& a, const SplitElement& b);
SplitElement sub(const SplitElement& a, const SplitElement& b);
SplitElement neg(const SplitElement& a);
SplitElement mul(const SplitElement& a, const SplitElement& b);
SplitElement scalar_mul(const Rat& c, const SplitElement& a);
SplitElement pow(const SplitElement& a, unsigned e);

inline SplitElement operator+(const SplitElement& a, const SplitElement& b) { return add(a, b); }
inline SplitElement operator-(const SplitElement& a, const SplitElement& b) { return sub(a, b); }
inline SplitElement operator-(const SplitElement& a) { return neg(a); }
inline SplitElement operator*(const SplitElement& a, const SplitElement& b) { return mul(a, b); }

}  // namespace lf
