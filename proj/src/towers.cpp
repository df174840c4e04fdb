#include "lambda_forge/towers.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

#include "lambda_forge/rng.hpp"

namespace lf {

namespace {

std::mutex g_pBasisMutex;
std::map<int, std::vector<TruncSeries>> g_pBasis;  // order -> p_0, p_1, ...

bool is_prime(const Int& p) { return mpz_probab_prime_p(p.get_mpz_t(), 32) != 0; }

Int fp_residue(const Rat& c, const Int& p) {
  Int r = c.get_num() % p;
  if (r < 0) r += p;
  return r;
}

const Int& fp_prime_of(const TruncSeries& f, const char* who) {
  if (f.domain().kind() != DomainKind::IntegersMod)
    throw InputError(std::string(who) + ": series must live over Z/p");
  const Int& p = f.domain().modulus();
  if (!is_prime(p)) throw InputError(std::string(who) + ": modulus must be prime");
  return p;
}

}  // namespace

TruncSeries omega_apply(const TruncSeries& f) {
  if (f.order() == 0) return TruncSeries(f.domain(), 0);
  TruncSeries d = derivative(f);
  if (d.order() == 0) return d;
  TruncSeries u = add(TruncSeries::one(f.domain(), d.order()), TruncSeries::var(f.domain(), d.order()));
  return mul(u, d);
}

OmegaLift omega_lift(const TruncSeries& f) {
  const ScalarDomain& dom = f.domain();
  const int N = f.order();
  OmegaLift out;
  if (dom.kind() == DomainKind::IntegersMod) {
    const Int& p = dom.modulus();
    if (!is_prime(p)) throw InputError("omega_lift: modular lifting needs a prime modulus");
    std::vector<Int> b(static_cast<size_t>(N) + 2, Int(0));
    for (int m = 0; m <= N; ++m) {
      Int lhs = Int(m + 1) % p;
      Int rhs = (fp_residue(f.coeff(m), p) - (Int(m) % p) * b[m]) % p;
      if (rhs < 0) rhs += p;
      if (lhs == 0) {
        // p | m+1: the alternating sum over the block ending at a_m must vanish
        if (rhs != 0) {
          out.obstruction = m + 1;
          out.note = "block ending at a_" + std::to_string(m) + " has nonzero alternating sum";
          return out;
        }
        b[m + 1] = 0;  // free coefficient
      } else {
        Int inv;
        mpz_invert(inv.get_mpz_t(), lhs.get_mpz_t(), p.get_mpz_t());
        b[m + 1] = (rhs * inv) % p;
      }
    }
    out.ok = true;
    std::vector<Rat> bc;
    bc.reserve(b.size());
    for (const Int& v : b) bc.emplace_back(v);
    out.lift = TruncSeries::from_coeffs(dom, std::move(bc));
    out.note = "coefficients b_{kp} are free; shown as 0";
    return out;
  }
  // Q, Z, localized Z: run the recurrence in Q and test membership stepwise
  std::vector<Rat> b(static_cast<size_t>(N) + 2, Rat(0));
  for (int m = 0; m <= N; ++m) {
    Rat val = (f.coeff(m) - Rat(Int(m)) * b[m]) / Rat(Int(m + 1));
    if (!dom.contains(val)) {
      out.obstruction = m + 1;
      out.note = "b_" + std::to_string(m + 1) + " = " + rat_str(val) + " leaves " + dom.name();
      return out;
    }
    b[m + 1] = val;
  }
  out.ok = true;
  out.lift = TruncSeries::from_coeffs(dom, std::move(b));
  out.note = "b_0 is a free constant; shown with b_0 = 0";
  return out;
}

bool fp_membership_L(const TruncSeries& f) {
  const Int& p = fp_prime_of(f, "fp_membership_L");
  long pl = to_long(p);
  for (long k = 0; k * pl + pl - 1 <= f.order(); ++k) {
    Int s = 0;
    for (long i = 0; i < pl; ++i) {
      Int t = fp_residue(f.coeff(static_cast<int>(k * pl + i)), p);
      s += (i % 2 == 0) ? t : -t;
    }
    if (s % p != 0) return false;
  }
  return true;
}

TruncSeries fp_canonical_lift(const TruncSeries& f) {
  const Int& p = fp_prime_of(f, "fp_canonical_lift");
  if (!fp_membership_L(f))
    throw InputError("fp_canonical_lift: a complete block has nonzero alternating sum");
  long pl = to_long(p);
  const int N = f.order();
  std::vector<Int> b(static_cast<size_t>(N) + 2, Int(0));
  // the free coefficient of a block never feeds back into the same block,
  // so solve with b_{kp} = 0 first and balance the blocks afterwards
  for (int m = 0; m <= N; ++m) {
    Int lhs = Int(m + 1) % p;
    Int rhs = (fp_residue(f.coeff(m), p) - (Int(m) % p) * b[m]) % p;
    if (rhs < 0) rhs += p;
    if (lhs == 0) {
      if (rhs != 0) throw Error("fp_canonical_lift: consistency lost despite membership");
      b[m + 1] = 0;
    } else {
      Int inv;
      mpz_invert(inv.get_mpz_t(), lhs.get_mpz_t(), p.get_mpz_t());
      b[m + 1] = (rhs * inv) % p;
    }
  }
  for (long k = 0; k * pl + pl - 1 <= N + 1; ++k) {
    Int s = 0;
    for (long i = 1; i < pl; ++i) {
      const Int& t = b[static_cast<size_t>(k * pl + i)];
      s += (i % 2 == 0) ? t : -t;
    }
    Int lead = (-s) % p;
    if (lead < 0) lead += p;
    b[static_cast<size_t>(k * pl)] = lead;  // alternating block sum of the lift vanishes
  }
  std::vector<Rat> bc;
  bc.reserve(b.size());
  for (const Int& v : b) bc.emplace_back(v);
  return TruncSeries::from_coeffs(f.domain(), std::move(bc));
}

// ---- sigma and the p-basis ----

std::vector<TruncSeries> p_basis(unsigned top, int N) {
  if (N < 0) throw InputError("p_basis: negative order");
  std::lock_guard<std::mutex> lock(g_pBasisMutex);
  std::vector<TruncSeries>& cache = g_pBasis.try_emplace(N).first->second;
  if (cache.empty()) cache.push_back(TruncSeries::one(ScalarDomain::rationals(), N));
  if (cache.size() <= top) {
    TruncSeries l = N >= 1 ? series_log1p(TruncSeries::var(ScalarDomain::rationals(), N))
                           : TruncSeries(ScalarDomain::rationals(), 0);
    while (cache.size() <= top) {
      unsigned long n = cache.size();
      cache.push_back(scalar_mul(Rat(Int(1), Int(n)), mul(cache.back(), l)));
    }
  }
  return std::vector<TruncSeries>(cache.begin(), cache.begin() + top + 1);
}

TruncSeries sigma(const std::vector<Rat>& a, int N) {
  if (N < 0) throw InputError("sigma: negative order");
  if (static_cast<int>(a.size()) > N + 1)
    throw InputError("sigma: sequence runs past the truncation order");
  TruncSeries out(ScalarDomain::rationals(), N);
  if (a.empty()) return out;
  std::vector<TruncSeries> P = p_basis(static_cast<unsigned>(a.size()) - 1, N);
  for (size_t n = 0; n < a.size(); ++n)
    if (a[n] != 0) out = add(out, scalar_mul(a[n], P[n]));
  return out;
}

std::vector<Rat> sigma_inverse(const TruncSeries& f) {
  const int N = f.order();
  std::vector<Rat> coeffs;
  coeffs.reserve(static_cast<size_t>(N) + 1);
  for (int i = 0; i <= N; ++i) coeffs.push_back(f.coeff(i));
  TruncSeries r = TruncSeries::from_coeffs(ScalarDomain::rationals(), std::move(coeffs));
  std::vector<TruncSeries> P = p_basis(static_cast<unsigned>(N), N);
  std::vector<Rat> a(static_cast<size_t>(N) + 1, Rat(0));
  for (int n = 0; n <= N; ++n) {
    a[n] = r.coeff(n) * Rat(factorial(static_cast<unsigned long>(n)));
    if (a[n] != 0) r = sub(r, scalar_mul(a[n], P[n]));
  }
  return a;
}

// ---- stable elements ----

StableElement::StableElement(std::map<long, Rat> window, int W, int N) : W_(W), N_(N) {
  if (W < 0 || N < 0) throw InputError("StableElement: window and order must be nonnegative");
  if (W > N) throw InputError("StableElement: window radius exceeds the truncation order");
  for (const auto& [m, c] : window) {
    if (m < -static_cast<long>(W) || m > static_cast<long>(W))
      throw InputError("StableElement: support outside the window");
    if (c != 0) window_[m] = c;
  }
}

Rat StableElement::at(long m) const {
  auto it = window_.find(m);
  return it == window_.end() ? Rat(0) : it->second;
}

TruncSeries StableElement::level(long k) const {
  if (k < 0) throw InputError("StableElement::level: levels are indexed by k >= 0");
  TruncSeries out(ScalarDomain::rationals(), N_);
  long top = std::min<long>(N_, k + W_);
  if (top < 0 || window_.empty()) return out;
  std::vector<TruncSeries> P = p_basis(static_cast<unsigned>(top), N_);
  for (const auto& [m, c] : window_) {
    long j = k + m;
    if (j < 0 || j > top) continue;
    out = add(out, scalar_mul(c, P[static_cast<size_t>(j)]));
  }
  return out;
}

bool StableElement::operator==(const StableElement& o) const {
  return N_ == o.N_ && window_ == o.window_;
}

std::string StableElement::str() const {
  std::ostringstream os;
  os << "window{";
  bool first = true;
  for (const auto& [m, c] : window_) {
    if (!first) os << ", ";
    first = false;
    os << m << " -> " << rat_str(c);
  }
  os << "}";
  return os.str();
}

StableElement pi_n(long n, int W, int N) {
  if (n < -static_cast<long>(W) || n > static_cast<long>(W))
    throw InputError("pi_n: index outside the window");
  return StableElement({{n, Rat(1)}}, W, N);
}

StableElement chi_interval(long n, int W, int N) {
  if (n < 0 || n > static_cast<long>(W)) throw InputError("chi_interval: need 0 <= n <= W");
  std::map<long, Rat> w;
  for (long m = -n; m <= n; ++m) w[m] = Rat(1);
  return StableElement(std::move(w), W, N);
}

StableElement psi_stable(long k, int W, int N) {
  if (k == 0) throw InputError("psi_stable: k must be nonzero");
  std::map<long, Rat> w;
  for (long m = -W; m <= W; ++m) w[m] = rat_pow(Rat(Int(k)), m);
  return StableElement(std::move(w), W, N);
}

StableElement phi_nk(long n, long k, int W, int N) {
  if (k == 0 || k == 1 || k == -1) throw InputError("phi_nk: need |k| >= 2");
  std::map<long, Rat> w;
  Rat kn = rat_pow(Rat(Int(k)), n);
  for (long m = -W; m <= W; ++m) {
    if (m == n) continue;
    w[m] = Rat(1) / (rat_pow(Rat(Int(k)), m) - kn);
  }
  return StableElement(std::move(w), W, N);
}

StableElement stable_identity(int W, int N) { return chi_interval(W, W, N); }

namespace {
void require_same_truncation(const StableElement& a, const StableElement& b, const char* who) {
  if (a.truncation() != b.truncation())
    throw InputError(std::string(who) + ": truncation orders differ");
}
}  // namespace

StableElement stable_add(const StableElement& a, const StableElement& b) {
  require_same_truncation(a, b, "stable_add");
  int W = std::max(a.window_radius(), b.window_radius());
  std::map<long, Rat> w = a.window();
  for (const auto& [m, c] : b.window()) w[m] += c;
  return StableElement(std::move(w), W, a.truncation());
}

StableElement stable_sub(const StableElement& a, const StableElement& b) {
  return stable_add(a, stable_scalar(Rat(-1), b));
}

StableElement stable_scalar(const Rat& c, const StableElement& a) {
  std::map<long, Rat> w;
  for (const auto& [m, v] : a.window()) w[m] = c * v;
  return StableElement(std::move(w), a.window_radius(), a.truncation());
}

StableElement stable_compose(const StableElement& a, const StableElement& b) {
  require_same_truncation(a, b, "stable_compose");
  int W = std::min(a.window_radius(), b.window_radius());
  std::map<long, Rat> w;
  for (const auto& [m, c] : a.window()) {
    if (m < -static_cast<long>(W) || m > static_cast<long>(W)) continue;
    w[m] = c * b.at(m);
  }
  return StableElement(std::move(w), W, a.truncation());
}

// ---- integral lift chains ----

namespace {

// Affine lattice {x0 + B z : z integer} of integer solutions, refined one
// congruence q.x + t in Z at a time.  Every condition modulus divides the
// running lcm, so the lattice always contains Mod * Z^D; renormalizing to a
// column Hermite form against Mod * I after each step keeps entries bounded.
struct AffineSolver {
  unsigned D;
  bool feasible = true;
  Int mod = 1;
  std::vector<Int> x0;
  std::vector<std::vector<Int>> cols;

  explicit AffineSolver(unsigned d) : D(d), x0(d, Int(0)), cols(d, std::vector<Int>(d, Int(0))) {
    for (unsigned i = 0; i < d; ++i) cols[i][i] = 1;
  }

  static Int dot(const std::vector<Int>& a, const std::vector<Int>& b) {
    Int s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
  }

  // lower-triangular column Hermite form; extra generators are absorbed
  void renormalize() {
    for (unsigned i = 0; i < D; ++i) {
      std::vector<Int> extra(D, Int(0));
      extra[i] = mod;
      cols.push_back(std::move(extra));
    }
    for (unsigned i = 0; i < D; ++i) {
      for (size_t j = i + 1; j < cols.size(); ++j) {
        if (cols[j][i] == 0) continue;
        if (cols[i][i] == 0) {
          std::swap(cols[i], cols[j]);
          continue;
        }
        Int g, ac, bc;
        mpz_gcdext(g.get_mpz_t(), ac.get_mpz_t(), bc.get_mpz_t(), cols[i][i].get_mpz_t(),
                   cols[j][i].get_mpz_t());
        Int u0 = cols[i][i] / g, uj = cols[j][i] / g;
        std::vector<Int> ci(D), cj(D);
        for (unsigned k = 0; k < D; ++k) {
          ci[k] = ac * cols[i][k] + bc * cols[j][k];
          cj[k] = -uj * cols[i][k] + u0 * cols[j][k];
        }
        cols[i] = std::move(ci);
        cols[j] = std::move(cj);
      }
      if (cols[i][i] < 0)
        for (Int& e : cols[i]) e = -e;
      for (unsigned j = 0; j < i; ++j) {
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), cols[j][i].get_mpz_t(), cols[i][i].get_mpz_t());
        if (q == 0) continue;
        for (unsigned k = 0; k < D; ++k) cols[j][k] -= q * cols[i][k];
      }
    }
    cols.resize(D);
    // pull the particular solution into the fundamental cell
    for (unsigned ii = D; ii-- > 0;) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), x0[ii].get_mpz_t(), cols[ii][ii].get_mpz_t());
      if (q == 0) continue;
      for (unsigned k = 0; k < D; ++k) x0[k] -= q * cols[ii][k];
    }
  }

  void add(const std::vector<Rat>& q, const Rat& t) {
    if (!feasible) return;
    Int M = t.get_den();
    for (const Rat& qi : q) {
      Int den = qi.get_den();
      mpz_lcm(M.get_mpz_t(), M.get_mpz_t(), den.get_mpz_t());
    }
    std::vector<Int> r(D);
    for (unsigned i = 0; i < D; ++i) {
      Rat scaled = q[i] * Rat(M);
      r[i] = scaled.get_num();
    }
    Rat tm = t * Rat(M);
    Int s = tm.get_num();
    std::vector<Int> v(D);
    for (unsigned j = 0; j < D; ++j) v[j] = dot(r, cols[j]);
    for (unsigned j = 1; j < D; ++j) {
      if (v[j] == 0) continue;
      if (v[0] == 0) {
        std::swap(v[0], v[j]);
        std::swap(cols[0], cols[j]);
        continue;
      }
      Int g, ac, bc;
      mpz_gcdext(g.get_mpz_t(), ac.get_mpz_t(), bc.get_mpz_t(), v[0].get_mpz_t(), v[j].get_mpz_t());
      Int u0 = v[0] / g, uj = v[j] / g;
      std::vector<Int> c0(D), cj(D);
      for (unsigned i = 0; i < D; ++i) {
        c0[i] = ac * cols[0][i] + bc * cols[j][i];
        cj[i] = -uj * cols[0][i] + u0 * cols[j][i];
      }
      cols[0] = std::move(c0);
      cols[j] = std::move(cj);
      v[0] = g;
      v[j] = 0;
    }
    Int g = v.empty() ? Int(0) : v[0];
    if (g < 0) {
      g = -g;
      for (Int& e : cols[0]) e = -e;
    }
    Int c0 = dot(r, x0) + s;
    if (g == 0) {
      if (c0 % M != 0) feasible = false;
      return;
    }
    Int d;
    mpz_gcd(d.get_mpz_t(), g.get_mpz_t(), M.get_mpz_t());
    if (c0 % d != 0) {
      feasible = false;
      return;
    }
    Int Mp = M / d;
    if (Mp != 1) {
      Int gp = (g / d) % Mp;
      if (gp < 0) gp += Mp;
      Int inv;
      mpz_invert(inv.get_mpz_t(), gp.get_mpz_t(), Mp.get_mpz_t());
      Int rhs = (((-c0 / d) % Mp) * inv) % Mp;
      if (rhs < 0) rhs += Mp;
      for (unsigned i = 0; i < D; ++i) x0[i] += rhs * cols[0][i];
      for (unsigned i = 0; i < D; ++i) cols[0][i] *= Mp;
    }
    mpz_lcm(mod.get_mpz_t(), mod.get_mpz_t(), M.get_mpz_t());
    renormalize();
  }

  // Babai-style rounding against the lattice columns, purely cosmetic
  void size_reduce() {
    for (int sweep = 0; sweep < 4; ++sweep) {
      for (unsigned j = 0; j < D; ++j) {
        Int nn = dot(cols[j], cols[j]);
        if (nn == 0) continue;
        Rat ratio(dot(x0, cols[j]), nn);
        ratio.canonicalize();
        ratio += Rat(1, 2);
        Int t;
        mpz_fdiv_q(t.get_mpz_t(), ratio.get_num().get_mpz_t(), ratio.get_den().get_mpz_t());
        if (t == 0) continue;
        for (unsigned i = 0; i < D; ++i) x0[i] -= t * cols[j][i];
      }
    }
  }
};

}  // namespace

TowerLift tower_lift_to_depth(const TruncSeries& f, unsigned depth) {
  if (f.domain().kind() != DomainKind::Integers)
    throw InputError("tower_lift_to_depth: series must live over Z");
  TowerLift out;
  const int N = f.order();
  if (depth == 0) {
    out.ok = true;
    out.chain = {f};
    out.note = "depth 0: nothing to lift";
    return out;
  }
  std::vector<Rat> lambda = sigma_inverse(f);
  const int top = N + static_cast<int>(depth);
  std::vector<TruncSeries> P = p_basis(static_cast<unsigned>(top), top);
  std::vector<Int> sol;
  // stage constants c_1..c_d prepend in sigma coordinates:
  // g_d = sum_j c_j p_{d-j} + sum_n lambda_n p_{n+d}; integrality of the
  // determined coefficients of g_d forces the whole chain below it
  auto solve_at = [&](unsigned d, AffineSolver& solver) {
    for (int m = 0; m <= N + static_cast<int>(d); ++m) {
      std::vector<Rat> q(d, Rat(0));
      for (unsigned j = 1; j <= d; ++j) {
        int idx = static_cast<int>(d - j);
        if (idx <= m) q[j - 1] = P[idx].coeff(m);
      }
      Rat t(0);
      for (int n = 0; n <= N; ++n) {
        int idx = n + static_cast<int>(d);
        if (idx > m) break;
        if (lambda[n] != 0) t += lambda[n] * P[idx].coeff(m);
      }
      solver.add(q, t);
      if (!solver.feasible) return;
    }
  };
  AffineSolver full(depth);
  solve_at(depth, full);
  if (!full.feasible) {
    // feasibility is monotone in depth, so the first failing stage is the
    // obstruction depth
    for (unsigned d = 1; d < depth; ++d) {
      AffineSolver solver(d);
      solve_at(d, solver);
      if (!solver.feasible) {
        out.obstructionDepth = d;
        out.note = "no integral chain of depth " + std::to_string(d);
        return out;
      }
    }
    out.obstructionDepth = depth;
    out.note = "no integral chain of depth " + std::to_string(depth);
    return out;
  }
  full.size_reduce();
  sol = full.x0;
  out.ok = true;
  out.chain.reserve(depth + 1);
  out.chain.push_back(f);
  for (unsigned j = 1; j <= depth; ++j) {
    std::vector<Rat> seq;
    seq.reserve(j + static_cast<size_t>(N) + 1);
    for (unsigned i = j; i >= 1; --i) seq.emplace_back(sol[i - 1]);
    for (int n = 0; n <= N; ++n) seq.push_back(lambda[n]);
    TruncSeries gj = sigma(seq, N + static_cast<int>(j));
    std::vector<Rat> coeffs;
    for (int i = 0; i <= gj.order(); ++i) coeffs.push_back(gj.coeff(i));
    out.chain.push_back(TruncSeries::from_coeffs(ScalarDomain::integers(), std::move(coeffs)));
  }
  out.note = "stage constants solved as linear congruences; one representative chain";
  return out;
}

// ---- descriptors ----

GroupDescriptor GroupDescriptor::free_abelian(unsigned r) {
  GroupDescriptor g;
  g.kind = Kind::FreeAbelian;
  g.rank = r;
  return g;
}

namespace {
void check_factors(const std::vector<Int>& factors, const char* who) {
  for (size_t i = 0; i < factors.size(); ++i) {
    if (factors[i] < 2) throw InputError(std::string(who) + ": invariant factors must be >= 2");
    if (i + 1 < factors.size() && factors[i + 1] % factors[i] != 0)
      throw InputError(std::string(who) + ": invariant factors must be divisibility-chained");
  }
}
}  // namespace

GroupDescriptor GroupDescriptor::finite(std::vector<Int> factors) {
  check_factors(factors, "GroupDescriptor::finite");
  GroupDescriptor g;
  g.kind = Kind::Finite;
  g.invariantFactors = std::move(factors);
  return g;
}

GroupDescriptor GroupDescriptor::rationals() {
  GroupDescriptor g;
  g.kind = Kind::Rationals;
  return g;
}

GroupDescriptor GroupDescriptor::fp_vector(const Int& p, unsigned dim) {
  if (!is_prime(p)) throw InputError("GroupDescriptor::fp_vector: p must be prime");
  if (dim == 0) throw InputError("GroupDescriptor::fp_vector: dimension must be >= 1");
  GroupDescriptor g;
  g.kind = Kind::FpVector;
  g.p = p;
  g.dim = dim;
  return g;
}

GroupDescriptor GroupDescriptor::finitely_generated(unsigned r, std::vector<Int> torsion) {
  check_factors(torsion, "GroupDescriptor::finitely_generated");
  GroupDescriptor g;
  g.kind = Kind::FinitelyGenerated;
  g.rank = r;
  g.invariantFactors = std::move(torsion);
  return g;
}

bool GroupDescriptor::is_trivial() const {
  switch (kind) {
    case Kind::FreeAbelian: return rank == 0;
    case Kind::Finite: return invariantFactors.empty();
    case Kind::FinitelyGenerated: return rank == 0 && invariantFactors.empty();
    default: return false;
  }
}

bool GroupDescriptor::is_finite() const {
  switch (kind) {
    case Kind::Finite:
    case Kind::FpVector: return true;
    case Kind::FreeAbelian: return rank == 0;
    case Kind::FinitelyGenerated: return rank == 0;
    case Kind::Rationals: return false;
  }
  return false;
}

std::string GroupDescriptor::str() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::FreeAbelian:
      if (rank == 0) os << "0";
      else if (rank == 1) os << "Z";
      else os << "Z^" << rank;
      break;
    case Kind::Finite:
      if (invariantFactors.empty()) { os << "0"; break; }
      for (size_t i = 0; i < invariantFactors.size(); ++i) {
        if (i) os << " x ";
        os << "Z/" << invariantFactors[i].get_str();
      }
      break;
    case Kind::Rationals: os << "Q"; break;
    case Kind::FpVector:
      os << "F_" << p.get_str();
      if (dim > 1) os << "^" << dim;
      break;
    case Kind::FinitelyGenerated:
      if (rank == 0 && invariantFactors.empty()) { os << "0"; break; }
      if (rank == 1) os << "Z";
      else if (rank > 1) os << "Z^" << rank;
      for (size_t i = 0; i < invariantFactors.size(); ++i) {
        if (rank > 0 || i) os << " x ";
        os << "Z/" << invariantFactors[i].get_str();
      }
      break;
  }
  return os.str();
}

TowerDescriptor TowerDescriptor::omega(GroupDescriptor A, int N) {
  if (N < 0) throw InputError("TowerDescriptor::omega: negative truncation");
  TowerDescriptor t;
  t.kind = Kind::Omega;
  t.A = std::move(A);
  t.truncation = N;
  return t;
}

TowerDescriptor TowerDescriptor::factorial(GroupDescriptor A, unsigned D) {
  TowerDescriptor t;
  t.kind = Kind::Factorial;
  t.A = std::move(A);
  t.depth = D;
  return t;
}

TowerDescriptor TowerDescriptor::shifted(unsigned j, TowerDescriptor inner) {
  TowerDescriptor t;
  t.kind = Kind::Shift;
  t.shift = j;
  t.inner.push_back(std::move(inner));
  return t;
}

TowerDescriptor TowerDescriptor::product(std::vector<TowerDescriptor> factors) {
  TowerDescriptor t;
  t.kind = Kind::Product;
  t.inner = std::move(factors);
  return t;
}

std::string TowerDescriptor::str() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Omega: os << "Omega(" << A.str() << ", N=" << truncation << ")"; break;
    case Kind::Factorial: os << "Factorial(" << A.str() << ", D=" << depth << ")"; break;
    case Kind::Shift: os << "Shift(" << shift << ", " << inner[0].str() << ")"; break;
    case Kind::Product: {
      os << "Product(";
      for (size_t i = 0; i < inner.size(); ++i) {
        if (i) os << ", ";
        os << inner[i].str();
      }
      os << ")";
      break;
    }
  }
  return os.str();
}

std::string ml_str(MittagLeffler m) {
  switch (m) {
    case MittagLeffler::Yes: return "yes";
    case MittagLeffler::No: return "no";
    case MittagLeffler::Unknown: return "unknown";
  }
  return "unknown";
}

std::string lim_class_str(const LimClass& c) {
  switch (c.kind) {
    case LimClass::Kind::Zero: return "Zero";
    case LimClass::Kind::IsomorphicTo: return "IsomorphicTo(" + c.iso.str() + ")";
    case LimClass::Kind::SubgroupOfSeries: return "SubgroupOfSeries";
    case LimClass::Kind::SequenceSpace: return "SequenceSpace";
    case LimClass::Kind::Unknown: return "Unknown";
  }
  return "Unknown";
}

std::string r1_class_str(const R1Class& c) {
  switch (c.kind) {
    case R1Class::Kind::Zero: return "Zero";
    case R1Class::Kind::HatZModZPower:
      return c.power == 1 ? std::string("HatZ/Z") : "(HatZ/Z)^" + std::to_string(c.power);
    case R1Class::Kind::ExtQSymbolic: return "Ext(Q, " + c.arg.str() + ")";
    case R1Class::Kind::Unknown: return "Unknown";
  }
  return "Unknown";
}

// ---- classification ----

LimClass hom_q(const GroupDescriptor& A) {
  LimClass c;
  if (A.kind == GroupDescriptor::Kind::Rationals) {
    c.kind = LimClass::Kind::IsomorphicTo;
    c.iso = GroupDescriptor::rationals();
    c.detail = "Hom(Q, Q) = Q";
  } else {
    c.kind = LimClass::Kind::Zero;
    c.detail = "Hom(Q, " + A.str() + ") = 0: no divisible subgroup";
  }
  return c;
}

R1Class ext_q(const GroupDescriptor& A) {
  R1Class c;
  switch (A.kind) {
    case GroupDescriptor::Kind::Rationals:
      c.kind = R1Class::Kind::Zero;
      c.detail = "Ext(Q, Q) = 0";
      break;
    case GroupDescriptor::Kind::Finite:
    case GroupDescriptor::Kind::FpVector:
      c.kind = R1Class::Kind::Zero;
      c.detail = "Ext(Q, A) = 0 for finite A";
      break;
    case GroupDescriptor::Kind::FreeAbelian:
    case GroupDescriptor::Kind::FinitelyGenerated:
      if (A.rank == 0) {
        c.kind = R1Class::Kind::Zero;
        c.detail = "Ext(Q, A) = 0 for finite A";
      } else {
        c.kind = R1Class::Kind::HatZModZPower;
        c.power = A.rank;
        c.detail = "Ext(Q, Z^" + std::to_string(A.rank) + "); torsion contributes nothing";
      }
      break;
  }
  return c;
}

namespace {

TruncSeries random_series(Rng& rng, const ScalarDomain& dom, int N) {
  std::vector<Rat> c;
  c.reserve(static_cast<size_t>(N) + 1);
  for (int i = 0; i <= N; ++i) {
    if (dom.kind() == DomainKind::Rationals) c.push_back(rng.rat(9, 6));
    else if (dom.kind() == DomainKind::IntegersMod)
      c.emplace_back(Int(rng.range(0, to_long(dom.modulus()) - 1)));
    else c.emplace_back(Int(rng.range(-9, 9)));
  }
  return TruncSeries::from_coeffs(dom, std::move(c));
}

LimReport trivial_report(const std::string& why) {
  LimReport r;
  r.ml = MittagLeffler::Yes;
  r.lim.kind = LimClass::Kind::Zero;
  r.lim.detail = why;
  r.r1lim.kind = R1Class::Kind::Zero;
  r.r1lim.detail = why;
  r.evidence.push_back(why);
  return r;
}

LimReport analyze_omega(const GroupDescriptor& A, int N, unsigned depth) {
  if (A.is_trivial()) return trivial_report("levels of the trivial group vanish");
  LimReport r;
  switch (A.kind) {
    case GroupDescriptor::Kind::Rationals: {
      r.ml = MittagLeffler::Yes;
      r.lim.kind = LimClass::Kind::SequenceSpace;
      r.lim.detail = "isomorphic to Q^Z through the sigma coordinates";
      r.r1lim.kind = R1Class::Kind::Zero;
      r.r1lim.detail = "every stage lifts: division by m+1 stays in Q";
      Rng rng(0x51u);
      int good = 0;
      for (int t = 0; t < 5; ++t) {
        TruncSeries f = random_series(rng, ScalarDomain::rationals(), N);
        OmegaLift l = omega_lift(f);
        if (l.ok && omega_apply(l.lift) == f) ++good;
      }
      r.evidence.push_back(std::to_string(good) +
                           "/5 random series at order " + std::to_string(N) +
                           " lift exactly; transition maps are surjective");
      if (good < 5) {
        r.ml = MittagLeffler::Unknown;
        r.r1lim.kind = R1Class::Kind::Unknown;
        r.evidence.push_back("surjectivity certificate failed; classification withdrawn");
      }
      return r;
    }
    case GroupDescriptor::Kind::FpVector: {
      ScalarDomain dom = ScalarDomain::integers_mod(A.p);
      r.ml = MittagLeffler::Yes;
      r.lim.kind = LimClass::Kind::SubgroupOfSeries;
      r.lim.detail = "L_{F_" + A.p.get_str() + "}: alternating block sums vanish" +
                     (A.dim > 1 ? ", in each of " + std::to_string(A.dim) + " components" : "");
      r.r1lim.kind = R1Class::Kind::Zero;
      r.r1lim.detail = "images stabilize on L at every level";
      Rng rng(0x52u);
      int good = 0;
      const long pl = to_long(A.p);
      for (int t = 0; t < 5; ++t) {
        TruncSeries g = random_series(rng, dom, N + 1);
        TruncSeries f = omega_apply(g);
        bool member = fp_membership_L(f);
        bool round = false;
        if (member) {
          TruncSeries lift = fp_canonical_lift(f);
          round = (omega_apply(lift) == f) && fp_membership_L(lift);
        }
        if (member && round) ++good;
      }
      r.evidence.push_back(std::to_string(good) +
                           "/5 random image series pass the block test and lift back into L");
      if (N >= pl - 1) {
        TruncSeries g = random_series(rng, dom, N + 1);
        TruncSeries f = omega_apply(g);
        std::vector<Rat> c;
        for (int i = 0; i <= f.order(); ++i) c.push_back(f.coeff(i));
        c[0] += 1;  // breaks the first complete block sum
        TruncSeries bad = TruncSeries::from_coeffs(dom, std::move(c));
        if (!fp_membership_L(bad) && !omega_lift(bad).ok)
          r.evidence.push_back("a perturbed series leaves L and its lift obstructs");
        else {
          r.ml = MittagLeffler::Unknown;
          r.evidence.push_back("perturbation probe failed; classification withdrawn");
        }
      }
      if (good < 5) {
        r.r1lim.kind = R1Class::Kind::Unknown;
        r.evidence.push_back("round-trip certificate failed; classification withdrawn");
      }
      return r;
    }
    case GroupDescriptor::Kind::FreeAbelian:
    case GroupDescriptor::Kind::FinitelyGenerated: {
      if (A.kind == GroupDescriptor::Kind::FinitelyGenerated) {
        if (A.invariantFactors.empty())
          return analyze_omega(GroupDescriptor::free_abelian(A.rank), N, depth);
        if (A.rank == 0)
          return analyze_omega(GroupDescriptor::finite(A.invariantFactors), N, depth);
        throw InputError("analyze_tower: no closed form for Omega towers over mixed groups");
      }
      r.ml = MittagLeffler::Unknown;
      r.lim.kind = LimClass::Kind::SubgroupOfSeries;
      r.lim.detail = "embeds in Z[[U]]" + std::string(A.rank > 1 ? "^" + std::to_string(A.rank) : "") +
                     " through level 0; the image subgroup is not classified";
      r.r1lim.kind = R1Class::Kind::Unknown;
      r.r1lim.detail = "not determined by the finite-depth certificates";
      OmegaLift c1 = omega_lift(TruncSeries::one(ScalarDomain::integers(), N));
      if (!c1.ok && c1.obstruction == 2)
        r.evidence.push_back(
            "injectivity: a chain above 0 has constant level 1, and the constant 1 "
            "obstructs at b_2 (its lift is log(1+U))");
      TruncSeries oneU = add(TruncSeries::one(ScalarDomain::integers(), N),
                             TruncSeries::var(ScalarDomain::integers(), N));
      TowerLift up = tower_lift_to_depth(oneU, depth);
      TowerLift down = tower_lift_to_depth(TruncSeries::var(ScalarDomain::integers(), N), depth);
      r.evidence.push_back("membership probes at depth " + std::to_string(depth) + ": 1+U " +
                           (up.ok ? "lifts" : "fails") + ", U " +
                           (!down.ok ? "obstructs at depth " + std::to_string(down.obstructionDepth)
                                     : "lifts"));
      r.evidence.push_back("Mittag-Leffler state not decided by depth-" + std::to_string(depth) +
                           " images");
      return r;
    }
    case GroupDescriptor::Kind::Finite: {
      r.ml = MittagLeffler::Yes;
      r.lim.kind = LimClass::Kind::SubgroupOfSeries;
      r.lim.detail = "subgroup of (" + A.str() + ")[U] truncations cut out by the lifting congruences";
      r.r1lim.kind = R1Class::Kind::Zero;
      r.r1lim.detail = "towers of finite groups have vanishing R^1 lim";
      Int card = 1;
      for (const Int& d : A.invariantFactors) card *= d;
      r.evidence.push_back("each level is finite (|A| = " + card.get_str() +
                           " per coefficient), so the descending images stabilize");
      return r;
    }
  }
  throw InputError("analyze_tower: unsupported group kind");
}

LimReport analyze_factorial(const GroupDescriptor& A, unsigned depth) {
  if (A.is_trivial()) return trivial_report("levels of the trivial group vanish");
  LimReport r;
  r.lim = hom_q(A);
  r.r1lim = ext_q(A);
  if (A.kind == GroupDescriptor::Kind::Rationals) {
    r.ml = MittagLeffler::Yes;
    r.evidence.push_back("multiplication by n is invertible on Q; the tower is constant");
  } else if (A.is_finite()) {
    r.ml = MittagLeffler::Yes;
    Int e = 1;
    if (A.kind == GroupDescriptor::Kind::FpVector) e = A.p;
    else if (!A.invariantFactors.empty()) e = A.invariantFactors.back();
    Int fact = 1;
    unsigned n0 = 1;
    while (fact % e != 0) {
      ++n0;
      fact *= n0;
    }
    r.evidence.push_back("exponent " + e.get_str() + " divides " + std::to_string(n0) +
                         "!; composite transition maps vanish from level " + std::to_string(n0));
  } else {
    r.ml = MittagLeffler::No;
    r.evidence.push_back("the image of level n in level 0 is n! * A; strictly decreasing");
    r.evidence.push_back("a limit element is divisible by n! for every n <= " +
                         std::to_string(depth) + ", so bounded entries vanish");
  }
  return r;
}

}  // namespace

LimReport analyze_tower(const TowerDescriptor& T) {
  switch (T.kind) {
    case TowerDescriptor::Kind::Omega:
      return analyze_omega(T.A, T.truncation, T.depth);
    case TowerDescriptor::Kind::Factorial:
      return analyze_factorial(T.A, T.depth);
    case TowerDescriptor::Kind::Shift: {
      if (T.inner.size() != 1) throw InputError("analyze_tower: Shift needs exactly one inner tower");
      LimReport r = analyze_tower(T.inner[0]);
      r.evidence.insert(r.evidence.begin(),
                        "shift by " + std::to_string(T.shift) +
                            " prepends zero groups; lim and R^1 lim are unchanged");
      return r;
    }
    case TowerDescriptor::Kind::Product: {
      LimReport r;
      bool allLimZero = true, r1AllKnown = true;
      unsigned hatPower = 0;
      MittagLeffler ml = MittagLeffler::Yes;
      for (const TowerDescriptor& c : T.inner) {
        LimReport cr = analyze_tower(c);
        if (cr.ml == MittagLeffler::No) ml = MittagLeffler::No;
        else if (cr.ml == MittagLeffler::Unknown && ml != MittagLeffler::No)
          ml = MittagLeffler::Unknown;
        if (cr.lim.kind != LimClass::Kind::Zero) allLimZero = false;
        if (cr.r1lim.kind == R1Class::Kind::HatZModZPower) hatPower += cr.r1lim.power;
        else if (cr.r1lim.kind != R1Class::Kind::Zero) r1AllKnown = false;
        r.components.push_back(std::move(cr));
      }
      r.ml = ml;
      if (allLimZero) {
        r.lim.kind = LimClass::Kind::Zero;
        r.lim.detail = "every component limit vanishes";
      } else {
        r.lim.kind = LimClass::Kind::Unknown;
        r.lim.detail = "componentwise; see components";
      }
      if (!r1AllKnown) {
        r.r1lim.kind = R1Class::Kind::Unknown;
        r.r1lim.detail = "componentwise; see components";
      } else if (hatPower == 0) {
        r.r1lim.kind = R1Class::Kind::Zero;
        r.r1lim.detail = "every component R^1 lim vanishes";
      } else {
        r.r1lim.kind = R1Class::Kind::HatZModZPower;
        r.r1lim.power = hatPower;
        r.r1lim.detail = "componentwise sum of HatZ/Z powers";
      }
      r.evidence.push_back("product of " + std::to_string(T.inner.size()) +
                           " towers; lim and R^1 lim computed componentwise");
      return r;
    }
  }
  throw InputError("analyze_tower: unsupported tower kind");
}

MilnorReport milnor_report(int i, const std::map<int, GroupDescriptor>& baseKGroups,
                           int truncation) {
  auto lo = baseKGroups.find(i);
  auto hi = baseKGroups.find(i + 1);
  if (lo == baseKGroups.end() || hi == baseKGroups.end())
    throw InputError("milnor_report: need descriptors for degrees i and i+1");
  MilnorReport rep;
  rep.i = i;
  rep.phantomPart = analyze_tower(TowerDescriptor::omega(hi->second, truncation));
  rep.limPart = analyze_tower(TowerDescriptor::omega(lo->second, truncation));
  rep.phantomFree = rep.phantomPart.r1lim.kind == R1Class::Kind::Zero;
  std::ostringstream os;
  if (rep.phantomFree)
    os << "no nonzero phantom maps (R^1 lim of the degree-" << (i + 1) << " tower vanishes)";
  else
    os << "phantom subgroup " << r1_class_str(rep.phantomPart.r1lim) << " from degree " << (i + 1);
  os << "; the quotient is lim of the degree-" << i << " tower: " << lim_class_str(rep.limPart.lim);
  rep.summary = os.str();
  return rep;
}

}  // namespace lf
