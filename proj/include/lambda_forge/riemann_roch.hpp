#pragma once

#include <string>
#include <vector>

#include "lambda_forge/chow.hpp"

namespace lf {

// Z with every prime divisor of k inverted
ScalarDomain z_localized_at(unsigned long k);

// Bott class: theta^k(L) = [O] + [L] + ... + [L^(k-1)], extended over the
// presentation multiplicatively, with negative multiplicities inverted in
// the nilpotent ring over Z[1/k].  theta^k is exponential, not additive,
// so the input is the explicit difference presentation as written; the
// multiplicativity laws, not re-presentation, relate different inputs.
SplitElement theta_k(const SplitElement& x, unsigned k);

struct CheckReport {
  std::string claim;
  std::string lhs, rhs;
  bool equal = false;
  std::vector<std::string> trace;
};

// Psi^k(f_* x) against f_*(Psi^k(x) theta^k(Omega_f)^{-1}), over Z[1/k]
CheckReport verify_arr(const RelativeMap& f, unsigned k, const SplitElement& x);
// ch(f_* x) against f_*(ch(x) td(T_f)), over Q
CheckReport verify_grr(const RelativeMap& f, const SplitElement& x);
// C(m+d, d) against the coefficient of z^d in e^{mz} (z/(1-e^{-z}))^{d+1}
CheckReport verify_hrr(unsigned d, long m);
// chi_n(u boxtimes L) against [infty] boxtimes n chi_{n-1}(L) on X x P^1,
// for each generating line class L of X (the trivial class when X = pt)
CheckReport verify_omega_chi(unsigned n, const BaseSpace& X);

}  // namespace lf
