#include "lambda_forge/scalar.hpp"

#include <algorithm>
#include <sstream>

namespace lf {

Int binomial(const Int& n, unsigned long k) {
  Int r;
  mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
  return r;
}

Int factorial(unsigned long n) {
  Int r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

Int int_pow(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

Rat rat_pow(const Rat& base, long e) {
  if (e == 0) return Rat(1);
  if (base == 0) {
    if (e < 0) throw InputError("rat_pow: zero to a negative power");
    return Rat(0);
  }
  Rat b = base;
  if (e < 0) {
    b = Rat(base.get_den(), base.get_num());
    b.canonicalize();
    e = -e;
  }
  Rat r(1);
  for (long i = 0; i < e; ++i) r *= b;
  return r;
}

long to_long(const Int& v) {
  if (!v.fits_slong_p()) throw InputError("integer does not fit a machine long: " + v.get_str());
  return v.get_si();
}

bool is_integer(const Rat& v) { return v.get_den() == 1; }

std::string rat_str(const Rat& v) { return v.get_str(); }

Rat rat_parse(const std::string& s) {
  Rat r;
  if (r.set_str(s, 10) != 0) throw InputError("cannot parse rational: '" + s + "'");
  if (r.get_den() == 0) throw InputError("zero denominator: '" + s + "'");
  r.canonicalize();
  return r;
}

ScalarDomain::ScalarDomain(DomainKind k, Int m, std::vector<Int> primes)
    : kind_(k), modulus_(std::move(m)), primes_(std::move(primes)) {}

ScalarDomain ScalarDomain::integers() { return {DomainKind::Integers, Int(0), {}}; }
ScalarDomain ScalarDomain::rationals() { return {DomainKind::Rationals, Int(0), {}}; }

ScalarDomain ScalarDomain::integers_mod(const Int& m) {
  if (m < 2) throw InputError("integers_mod: modulus must be >= 2");
  return {DomainKind::IntegersMod, m, {}};
}

ScalarDomain ScalarDomain::integers_localized(std::vector<Int> primes) {
  if (primes.empty()) throw InputError("integers_localized: empty prime set");
  for (const Int& p : primes) {
    if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 30) == 0)
      throw InputError("integers_localized: " + p.get_str() + " is not prime");
  }
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  return {DomainKind::IntegersLocalized, Int(0), std::move(primes)};
}

const Int& ScalarDomain::modulus() const {
  if (kind_ != DomainKind::IntegersMod) throw InputError("modulus: not a Z/m domain");
  return modulus_;
}

const std::vector<Int>& ScalarDomain::inverted_primes() const {
  if (kind_ != DomainKind::IntegersLocalized) throw InputError("inverted_primes: not a localized domain");
  return primes_;
}

std::string ScalarDomain::name() const {
  switch (kind_) {
    case DomainKind::Integers: return "Z";
    case DomainKind::Rationals: return "Q";
    case DomainKind::IntegersMod: return "Z/" + modulus_.get_str();
    case DomainKind::IntegersLocalized: {
      std::ostringstream os;
      os << "Z[";
      for (size_t i = 0; i < primes_.size(); ++i) os << (i ? "," : "") << "1/" << primes_[i].get_str();
      os << "]";
      return os.str();
    }
  }
  return "?";
}

bool ScalarDomain::operator==(const ScalarDomain& o) const {
  return kind_ == o.kind_ && modulus_ == o.modulus_ && primes_ == o.primes_;
}

namespace {
// strips every factor of the listed primes from |v|, returns the remainder
Int strip_primes(Int v, const std::vector<Int>& primes) {
  v = abs(v);
  if (v == 0) return v;
  for (const Int& p : primes) {
    while (v % p == 0) v /= p;
  }
  return v;
}
}  // namespace

bool ScalarDomain::contains(const Rat& x) const {
  switch (kind_) {
    case DomainKind::Integers:
    case DomainKind::IntegersMod:
      return x.get_den() == 1;
    case DomainKind::Rationals:
      return true;
    case DomainKind::IntegersLocalized:
      return strip_primes(Int(x.get_den()), primes_) == 1;
  }
  return false;
}

Rat ScalarDomain::normalize(const Rat& x) const {
  if (!contains(x)) throw DomainError("value " + rat_str(x) + " is not in " + name());
  if (kind_ != DomainKind::IntegersMod) return x;
  Int r = x.get_num() % modulus_;
  if (r < 0) r += modulus_;
  return Rat(r);
}

bool ScalarDomain::is_unit(const Rat& x) const {
  if (!contains(x) || x == 0) return false;
  switch (kind_) {
    case DomainKind::Integers:
      return x == 1 || x == -1;
    case DomainKind::Rationals:
      return true;
    case DomainKind::IntegersMod: {
      Int g;
      mpz_gcd(g.get_mpz_t(), Int(x.get_num()).get_mpz_t(), modulus_.get_mpz_t());
      return g == 1;
    }
    case DomainKind::IntegersLocalized:
      return strip_primes(Int(x.get_num()), primes_) == 1;
  }
  return false;
}

Rat ScalarDomain::invert(const Rat& x) const {
  if (kind_ == DomainKind::IntegersMod) {
    Rat v = normalize(x);
    Int inv;
    if (mpz_invert(inv.get_mpz_t(), Int(v.get_num()).get_mpz_t(), modulus_.get_mpz_t()) == 0)
      throw DomainError(rat_str(x) + " is not a unit in " + name());
    return Rat(inv);
  }
  if (!is_unit(x)) throw DomainError(rat_str(x) + " is not a unit in " + name());
  Rat r(x.get_den(), x.get_num());
  r.canonicalize();
  return r;
}

Rat ScalarDomain::divide(const Rat& a, const Rat& b) const {
  if (kind_ == DomainKind::IntegersMod) return normalize(normalize(a) * invert(b));
  if (b == 0) throw DomainError("division by zero in " + name());
  Rat q = a / b;
  if (!contains(q))
    throw DomainError("quotient " + rat_str(a) + " / " + rat_str(b) + " leaves " + name());
  return q;
}

ScalarDomain ScalarDomain::join(const ScalarDomain& a, const ScalarDomain& b) {
  if (a == b) return a;
  if (a.kind_ == DomainKind::IntegersMod || b.kind_ == DomainKind::IntegersMod)
    throw DomainError("no common domain for " + a.name() + " and " + b.name());
  if (a.kind_ == DomainKind::Rationals || b.kind_ == DomainKind::Rationals) return rationals();
  if (a.kind_ == DomainKind::Integers) return b;
  if (b.kind_ == DomainKind::Integers) return a;
  std::vector<Int> ps = a.primes_;
  ps.insert(ps.end(), b.primes_.begin(), b.primes_.end());
  return integers_localized(std::move(ps));
}

}  // namespace lf
