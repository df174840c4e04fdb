#pragma once

#include <functional>
#include <string>
#include <vector>

#include "lambda_forge/rng.hpp"
#include "lambda_forge/split_element.hpp"

namespace lf {

// lambda_t(sum c_a L_a) = prod_a (1 + L_a t)^{c_a}, read off at t^n.
// Negative multiplicities expand the factor as a geometric-type series,
// so the input must have integer coefficients.
SplitElement lambda_op(unsigned n, const SplitElement& x);
// gamma_t = lambda_{t/(1-t)}
SplitElement gamma_op(unsigned n, const SplitElement& x);
// Psi^k(L_a) = L_{ka} extended additively; Psi^0 = rank, Psi^{-1} = dual
SplitElement adams_op(long k, const SplitElement& x);
SplitElement dual(const SplitElement& x);
// Psi^k from lambda^1..lambda^k alone, by the Newton recurrence
SplitElement adams_from_lambda_newton(unsigned k, const SplitElement& x);

struct AxiomReport {
  bool pass = true;
  std::vector<std::string> failures;  // first entry is the first counterexample
  // informational: whether dual commutes with every lambda^n tested
  bool dual_lambda_commutes = true;
  std::string dual_lambda_note;

  void fail(const std::string& witness);
};

using LambdaImpl = std::function<SplitElement(unsigned, const SplitElement&)>;

// Checks on (x, y): lambda_t additivity to maxDegree, lambda^n(xy) against
// the universal product polynomials, lambda^m(lambda^n x) against the
// universal plethysm polynomials (mn <= maxDegree), Psi composition and
// ring-map laws, Newton agreement against adams_op, duality laws.
AxiomReport verify_special_axioms(const SplitElement& x, const SplitElement& y,
                                  unsigned maxDegree);
// same checks run against an arbitrary candidate for the lambda family,
// so a corrupted operation is caught by the report
AxiomReport verify_special_axioms(const SplitElement& x, const SplitElement& y,
                                  unsigned maxDegree, const LambdaImpl& lam);

// presentation with up to maxTerms lines, exponents in [-expBound, expBound],
// coefficients in [-coefBound, coefBound]
SplitElement random_split_element(Rng& rng, const BaseSpace& space, unsigned maxTerms,
                                  long expBound, long coefBound);

}  // namespace lf
