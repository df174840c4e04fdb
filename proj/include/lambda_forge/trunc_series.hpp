#pragma once

#include <map>
#include <utility>
#include <vector>

#include "lambda_forge/scalar.hpp"

namespace lf {

// Truncated power series in U: coefficients 0..order are trusted, the rest
// of the series is unknown.  Arithmetic never extends the trusted range;
// mixed orders truncate to the minimum.
class TruncSeries {
 public:
  TruncSeries(ScalarDomain dom, int order);
  static TruncSeries from_coeffs(ScalarDomain dom, std::vector<Rat> coeffs);
  static TruncSeries constant(ScalarDomain dom, const Rat& c, int order);
  static TruncSeries one(ScalarDomain dom, int order);
  static TruncSeries var(ScalarDomain dom, int order);
  // (1+U)^j for any integer j
  static TruncSeries binomial_power(ScalarDomain dom, const Int& j, int order);

  const ScalarDomain& domain() const { return dom_; }
  int order() const { return order_; }
  const Rat& coeff(int i) const;
  TruncSeries truncated(int m) const;
  bool is_zero() const;
  std::string str(const std::string& var = "U") const;

  friend bool operator==(const TruncSeries& a, const TruncSeries& b);
  friend bool operator!=(const TruncSeries& a, const TruncSeries& b) { return !(a == b); }

 private:
  ScalarDomain dom_;
  int order_;
  std::vector<Rat> c_;  // size order_+1, domain-normalized
};

TruncSeries add(const TruncSeries& a, const TruncSeries& b);
TruncSeries sub(const TruncSeries& a, const TruncSeries& b);
TruncSeries neg(const TruncSeries& a);
TruncSeries mul(const TruncSeries& a, const TruncSeries& b);
TruncSeries scalar_mul(const Rat& c, const TruncSeries& a);

inline TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) { return add(a, b); }
inline TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) { return sub(a, b); }
inline TruncSeries operator-(const TruncSeries& a) { return neg(a); }
inline TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) { return mul(a, b); }

// 1/f; f(0) must be a unit of the domain
TruncSeries series_invert(const TruncSeries& f);
// exp(f); f(0) = 0, every division by n! must land in the domain
TruncSeries series_exp(const TruncSeries& f);
// log(1+f); f(0) = 0
TruncSeries series_log1p(const TruncSeries& f);
// df/dU; order drops by one
TruncSeries derivative(const TruncSeries& f);
TruncSeries int_pow(const TruncSeries& f, const Int& e);

// f = sum_j alpha_j (1+U)^j; alpha_j = sum_{n>=j} (-1)^{n-j} C(n,j) a_n
std::vector<Rat> to_binomial_basis(const TruncSeries& f);
// exponents may exceed the order; negative exponents only when allowed
TruncSeries from_binomial_basis(const ScalarDomain& dom, const std::map<Int, Rat>& alpha,
                                int order, bool allow_negative = false);

// equality of the first m+1 coefficients
bool agree_to(const TruncSeries& a, const TruncSeries& b, int m);

}  // namespace lf
