#include "lambda_forge/trunc_series.hpp"

#include <sstream>

namespace lf {

TruncSeries::TruncSeries(ScalarDomain dom, int order) : dom_(std::move(dom)), order_(order) {
  if (order < 0) throw InputError("series order must be >= 0");
  c_.assign(order_ + 1, Rat(0));
}

TruncSeries TruncSeries::from_coeffs(ScalarDomain dom, std::vector<Rat> coeffs) {
  if (coeffs.empty()) throw InputError("from_coeffs: need at least the constant term");
  TruncSeries f(dom, static_cast<int>(coeffs.size()) - 1);
  for (size_t i = 0; i < coeffs.size(); ++i) f.c_[i] = dom.normalize(coeffs[i]);
  return f;
}

TruncSeries TruncSeries::constant(ScalarDomain dom, const Rat& c, int order) {
  TruncSeries f(dom, order);
  f.c_[0] = f.dom_.normalize(c);
  return f;
}

TruncSeries TruncSeries::one(ScalarDomain dom, int order) { return constant(std::move(dom), Rat(1), order); }

TruncSeries TruncSeries::var(ScalarDomain dom, int order) {
  TruncSeries f(std::move(dom), order);
  if (order < 1) throw InputError("var: order must be >= 1");
  f.c_[1] = f.dom_.normalize(Rat(1));
  return f;
}

TruncSeries TruncSeries::binomial_power(ScalarDomain dom, const Int& j, int order) {
  TruncSeries f(std::move(dom), order);
  for (int i = 0; i <= order; ++i) f.c_[i] = f.dom_.normalize(Rat(binomial(j, i)));
  return f;
}

const Rat& TruncSeries::coeff(int i) const {
  if (i < 0) throw InputError("negative coefficient index");
  if (i > order_)
    throw OrderError("coefficient " + std::to_string(i) + " beyond trusted order " + std::to_string(order_));
  return c_[i];
}

TruncSeries TruncSeries::truncated(int m) const {
  if (m > order_) throw OrderError("cannot extend a series from order " + std::to_string(order_) +
                                   " to " + std::to_string(m));
  TruncSeries f(dom_, m);
  for (int i = 0; i <= m; ++i) f.c_[i] = c_[i];
  return f;
}

bool TruncSeries::is_zero() const {
  for (const Rat& x : c_)
    if (x != 0) return false;
  return true;
}

std::string TruncSeries::str(const std::string& var) const {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i <= order_; ++i) {
    if (c_[i] == 0) continue;
    if (!first) os << " + ";
    os << rat_str(c_[i]);
    if (i >= 1) os << "*" << var;
    if (i >= 2) os << "^" << i;
    first = false;
  }
  if (first) os << "0";
  os << " + O(" << var << "^" << order_ + 1 << ")";
  return os.str();
}

bool operator==(const TruncSeries& a, const TruncSeries& b) {
  return a.dom_ == b.dom_ && a.order_ == b.order_ && a.c_ == b.c_;
}

namespace {
void require_same_domain(const TruncSeries& a, const TruncSeries& b) {
  if (a.domain() != b.domain())
    throw DomainError("series domain mismatch: " + a.domain().name() + " vs " + b.domain().name());
}
}  // namespace

TruncSeries add(const TruncSeries& a, const TruncSeries& b) {
  require_same_domain(a, b);
  int n = std::min(a.order(), b.order());
  std::vector<Rat> c(n + 1);
  for (int i = 0; i <= n; ++i) c[i] = a.coeff(i) + b.coeff(i);
  return TruncSeries::from_coeffs(a.domain(), std::move(c));
}

TruncSeries sub(const TruncSeries& a, const TruncSeries& b) {
  require_same_domain(a, b);
  int n = std::min(a.order(), b.order());
  std::vector<Rat> c(n + 1);
  for (int i = 0; i <= n; ++i) c[i] = a.coeff(i) - b.coeff(i);
  return TruncSeries::from_coeffs(a.domain(), std::move(c));
}

TruncSeries neg(const TruncSeries& a) {
  std::vector<Rat> c(a.order() + 1);
  for (int i = 0; i <= a.order(); ++i) c[i] = -a.coeff(i);
  return TruncSeries::from_coeffs(a.domain(), std::move(c));
}

TruncSeries mul(const TruncSeries& a, const TruncSeries& b) {
  require_same_domain(a, b);
  int n = std::min(a.order(), b.order());
  std::vector<Rat> c(n + 1, Rat(0));
  for (int i = 0; i <= n; ++i) {
    if (a.coeff(i) == 0) continue;
    for (int j = 0; i + j <= n; ++j) c[i + j] += a.coeff(i) * b.coeff(j);
  }
  return TruncSeries::from_coeffs(a.domain(), std::move(c));
}

TruncSeries scalar_mul(const Rat& s, const TruncSeries& a) {
  std::vector<Rat> c(a.order() + 1);
  for (int i = 0; i <= a.order(); ++i) c[i] = s * a.coeff(i);
  return TruncSeries::from_coeffs(a.domain(), std::move(c));
}

TruncSeries series_invert(const TruncSeries& f) {
  const ScalarDomain& dom = f.domain();
  int n = f.order();
  std::vector<Rat> g(n + 1);
  g[0] = dom.invert(f.coeff(0));
  for (int i = 1; i <= n; ++i) {
    Rat s(0);
    for (int k = 1; k <= i; ++k) s += f.coeff(k) * g[i - k];
    g[i] = dom.normalize(-g[0] * s);
  }
  return TruncSeries::from_coeffs(dom, std::move(g));
}

TruncSeries series_exp(const TruncSeries& f) {
  if (f.coeff(0) != 0) throw InputError("series_exp: constant term must vanish");
  const ScalarDomain& dom = f.domain();
  int n = f.order();
  std::vector<Rat> g(n + 1, Rat(0));
  g[0] = Rat(1);
  // g' = f' g, so n g_n = sum_{k=1..n} k f_k g_{n-k}
  for (int i = 1; i <= n; ++i) {
    Rat s(0);
    for (int k = 1; k <= i; ++k) s += Rat(k) * f.coeff(k) * g[i - k];
    g[i] = dom.divide(s, Rat(i));
  }
  return TruncSeries::from_coeffs(dom, std::move(g));
}

TruncSeries series_log1p(const TruncSeries& f) {
  if (f.coeff(0) != 0) throw InputError("series_log1p: constant term must vanish");
  const ScalarDomain& dom = f.domain();
  int n = f.order();
  std::vector<Rat> h(n + 1, Rat(0));
  // (1+f) h' = f', so n h_n = n f_n - sum_{k=1..n-1} k h_k f_{n-k}
  for (int i = 1; i <= n; ++i) {
    Rat s = Rat(i) * f.coeff(i);
    for (int k = 1; k < i; ++k) s -= Rat(k) * h[k] * f.coeff(i - k);
    h[i] = dom.divide(s, Rat(i));
  }
  return TruncSeries::from_coeffs(dom, std::move(h));
}

TruncSeries derivative(const TruncSeries& f) {
  if (f.order() < 1) throw OrderError("derivative needs order >= 1");
  std::vector<Rat> c(f.order());
  for (int i = 1; i <= f.order(); ++i) c[i - 1] = Rat(i) * f.coeff(i);
  return TruncSeries::from_coeffs(f.domain(), std::move(c));
}

TruncSeries int_pow(const TruncSeries& f, const Int& e) {
  TruncSeries base = e < 0 ? series_invert(f) : f;
  Int k = abs(e);
  TruncSeries acc = TruncSeries::one(f.domain(), f.order());
  TruncSeries sq = base;
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) acc = mul(acc, sq);
    k >>= 1;
    if (k > 0) sq = mul(sq, sq);
  }
  return acc;
}

std::vector<Rat> to_binomial_basis(const TruncSeries& f) {
  int n = f.order();
  std::vector<Rat> alpha(n + 1, Rat(0));
  for (int j = 0; j <= n; ++j) {
    Rat s(0);
    for (int m = j; m <= n; ++m) {
      Rat t = Rat(binomial(Int(m), j)) * f.coeff(m);
      if ((m - j) % 2) s -= t; else s += t;
    }
    alpha[j] = f.domain().normalize(s);
  }
  return alpha;
}

TruncSeries from_binomial_basis(const ScalarDomain& dom, const std::map<Int, Rat>& alpha,
                                int order, bool allow_negative) {
  TruncSeries acc(dom, order);
  for (const auto& [j, a] : alpha) {
    if (j < 0 && !allow_negative)
      throw InputError("from_binomial_basis: negative exponent " + j.get_str() + " not enabled");
    if (a == 0) continue;
    acc = add(acc, scalar_mul(a, TruncSeries::binomial_power(dom, j, order)));
  }
  return acc;
}

bool agree_to(const TruncSeries& a, const TruncSeries& b, int m) {
  if (a.domain() != b.domain()) return false;
  if (m > a.order() || m > b.order())
    throw OrderError("agree_to: comparison beyond trusted order");
  for (int i = 0; i <= m; ++i)
    if (a.coeff(i) != b.coeff(i)) return false;
  return true;
}

}  // namespace lf
