#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace lf {

using Int = mpz_class;
using Rat = mpq_class;

struct Error : std::runtime_error {
  explicit Error(const std::string& m) : std::runtime_error(m) {}
};
// value outside the active scalar domain, or an illegal division there
struct DomainError : Error {
  explicit DomainError(const std::string& m) : Error(m) {}
};
// access beyond the trusted truncation order
struct OrderError : Error {
  explicit OrderError(const std::string& m) : Error(m) {}
};
// malformed arguments (bad exponent range, wrong dimensions, ...)
struct InputError : Error {
  explicit InputError(const std::string& m) : Error(m) {}
};

// binomial(n, k) for any integer n, including negative n
Int binomial(const Int& n, unsigned long k);
Int factorial(unsigned long n);
Int int_pow(const Int& base, unsigned long e);
// rational power with integer exponent; InputError on 0^negative
Rat rat_pow(const Rat& base, long e);
long to_long(const Int& v);
bool is_integer(const Rat& v);

std::string rat_str(const Rat& v);   // "p/q", or "p" when q = 1
Rat rat_parse(const std::string& s);

enum class DomainKind { Integers, Rationals, IntegersMod, IntegersLocalized };

// Exact coefficient domains: Z, Q, Z/m (m >= 2, composite allowed),
// and Z localized at a finite set of primes.  Values are carried as
// canonical mpq; the domain decides membership, units and division.
class ScalarDomain {
 public:
  static ScalarDomain integers();
  static ScalarDomain rationals();
  static ScalarDomain integers_mod(const Int& m);
  static ScalarDomain integers_localized(std::vector<Int> primes);

  DomainKind kind() const { return kind_; }
  const Int& modulus() const;
  const std::vector<Int>& inverted_primes() const;
  std::string name() const;

  bool operator==(const ScalarDomain& o) const;
  bool operator!=(const ScalarDomain& o) const { return !(*this == o); }

  // true when the rational value denotes an element of the domain
  bool contains(const Rat& x) const;
  // canonical representative; DomainError when x is not in the domain
  Rat normalize(const Rat& x) const;
  bool is_unit(const Rat& x) const;
  Rat invert(const Rat& x) const;
  // a/b whenever the quotient exists in the domain
  Rat divide(const Rat& a, const Rat& b) const;
  bool is_zero(const Rat& x) const { return normalize(x) == 0; }

  // smallest common localization of Z containing both domains;
  // DomainError when none exists (modular domains only join with themselves)
  static ScalarDomain join(const ScalarDomain& a, const ScalarDomain& b);

 private:
  ScalarDomain(DomainKind k, Int m, std::vector<Int> primes);
  DomainKind kind_;
  Int modulus_;
  std::vector<Int> primes_;
};

}  // namespace lf
