#include "lambda_forge/symmetric.hpp"

#include <mutex>

namespace lf {

namespace {

WeightedPoly cvar(unsigned n, unsigned i) {  // c_i / e_i inside an n-variable block
  return WeightedPoly::variable(n, 0, WeightedPoly::kNoBound, i - 1);
}

std::mutex cache_mu;

}  // namespace

WeightedPoly chi_poly(unsigned n) {
  if (n == 0) throw InputError("chi_poly: n must be >= 1, chi_0 is the rank");
  static std::map<unsigned, WeightedPoly> cache;
  std::lock_guard<std::mutex> lock(cache_mu);
  if (auto it = cache.find(n); it != cache.end()) return it->second;

  std::vector<WeightedPoly> chi;
  chi.push_back(WeightedPoly::constant(n, 0, WeightedPoly::kNoBound, Rat(0)));  // unused slot
  for (unsigned k = 1; k <= n; ++k) {
    WeightedPoly acc = scalar_mul(Rat(k % 2 ? 1 : -1) * Rat(k), cvar(n, k));
    for (unsigned i = 1; i < k; ++i)
      acc = add(acc, scalar_mul(Rat(i % 2 ? 1 : -1), mul(cvar(n, i), chi[k - i])));
    chi.push_back(acc);
  }
  cache.emplace(n, chi[n]);
  return chi[n];
}

WeightedPoly power_sum_in_elementary(unsigned k, unsigned d) {
  if (k == 0 || d == 0) throw InputError("power_sum_in_elementary: k, d must be >= 1");
  auto evar = [&](unsigned i) {  // e_i, zero beyond the variable count
    if (i > d) return WeightedPoly(d, 0, WeightedPoly::kNoBound);
    return cvar(d, i);
  };
  std::vector<WeightedPoly> p;
  p.push_back(WeightedPoly::constant(d, 0, WeightedPoly::kNoBound, Rat(0)));
  for (unsigned j = 1; j <= k; ++j) {
    WeightedPoly acc = scalar_mul(Rat(j % 2 ? 1 : -1) * Rat(j), evar(j));
    for (unsigned i = 1; i < j; ++i)
      acc = add(acc, scalar_mul(Rat(i % 2 ? 1 : -1), mul(evar(i), p[j - i])));
    p.push_back(acc);
  }
  return p[k];
}

WeightedPoly elementary_in_power_sums(unsigned k) {
  if (k == 0) throw InputError("elementary_in_power_sums: k must be >= 1");
  auto pvar = [&](unsigned i) { return cvar(k, i); };
  std::vector<WeightedPoly> e;
  e.push_back(WeightedPoly::constant(k, 0, WeightedPoly::kNoBound, Rat(1)));
  for (unsigned j = 1; j <= k; ++j) {
    WeightedPoly acc(k, 0, WeightedPoly::kNoBound);
    for (unsigned i = 1; i <= j; ++i)
      acc = add(acc, scalar_mul(Rat(i % 2 ? 1 : -1), mul(e[j - i], pvar(i))));
    e.push_back(scalar_mul(Rat(1, j), acc));
  }
  return e[k];
}

WeightedPoly additive_symmetrization(const TruncSeries& f, unsigned W) {
  if (W == 0) throw InputError("additive_symmetrization: weight bound must be >= 1");
  if (f.coeff(0) != 0) throw InputError("additive_symmetrization: constant term must vanish");
  if (f.order() < static_cast<int>(W))
    throw OrderError("additive_symmetrization: series order below the weight bound");
  WeightedPoly acc(W, 0, W);
  for (unsigned k = 1; k <= W; ++k) {
    if (f.coeff(k) == 0) continue;
    acc = add(acc, scalar_mul(f.coeff(k), power_sum_in_elementary(k, W).truncated(W)));
  }
  return acc;
}

WeightedPoly elementary_in_roots(unsigned k, unsigned d, unsigned bound) {
  if (k > d) return WeightedPoly::with_weights(std::vector<unsigned>(d, 1), bound);
  WeightedPoly p = WeightedPoly::with_weights(std::vector<unsigned>(d, 1), bound);
  if (k == 0) {
    p.add_term(Mono(d, 0), Rat(1));
    return p;
  }
  // iterate k-subsets of {0..d-1}
  std::vector<unsigned> idx(k);
  for (unsigned i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    Mono m(d, 0);
    for (unsigned i : idx) m[i] = 1;
    p.add_term(m, Rat(1));
    int j = static_cast<int>(k) - 1;
    while (j >= 0 && idx[j] == d - k + j) --j;
    if (j < 0) break;
    ++idx[j];
    for (unsigned i = j + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
  }
  return p;
}

namespace {

// polynomial in d1+d2 roots with the block-two exponents zeroed out / kept
WeightedPoly root_poly(unsigned vars, unsigned bound) {
  return WeightedPoly::with_weights(std::vector<unsigned>(vars, 1), bound);
}

// lift e_i of block `offset..offset+d-1` into the combined root space
WeightedPoly block_elementary(unsigned i, unsigned offset, unsigned d, unsigned vars, unsigned bound) {
  WeightedPoly small = elementary_in_roots(i, d, WeightedPoly::kNoBound);
  WeightedPoly out = root_poly(vars, bound);
  for (const auto& [m, c] : small.terms()) {
    Mono big(vars, 0);
    for (unsigned v = 0; v < d; ++v) big[offset + v] = m[v];
    out.add_term(big, c);
  }
  return out;
}

bool weakly_decreasing(const Mono& m, unsigned d) {
  for (unsigned i = 0; i + 1 < d; ++i)
    if (m[i] < m[i + 1]) return false;
  return true;
}

}  // namespace

WeightedPoly symmetric_reduce(const WeightedPoly& rootPoly, unsigned d1, unsigned d2) {
  const unsigned vars = d1 + d2;
  if (rootPoly.var_count() != vars) throw InputError("symmetric_reduce: variable count mismatch");
  for (unsigned w : rootPoly.weights())
    if (w != 1) throw InputError("symmetric_reduce: expects weight-1 root variables");

  const unsigned bound = rootPoly.bound();
  WeightedPoly out(d1, d2, bound);
  WeightedPoly work = rootPoly;

  std::vector<WeightedPoly> epowcache;  // block-one elementary polys, built lazily
  auto e1 = [&](unsigned i) -> const WeightedPoly& {
    while (epowcache.size() < i) epowcache.push_back(
        block_elementary(static_cast<unsigned>(epowcache.size()) + 1, 0, d1, vars, bound));
    return epowcache[i - 1];
  };

  while (!work.is_zero()) {
    Mono lead = work.terms().rbegin()->first;
    Mono xpart(lead.begin(), lead.begin() + d1);
    if (!weakly_decreasing(xpart, d1))
      throw InputError("symmetric_reduce: input is not symmetric in block one");

    // collect every term sharing this block-one exponent
    WeightedPoly coefPart = root_poly(vars, bound);  // block-one exponents zero
    Mono lo(lead.size(), 0), hi(lead.size(), 0);
    for (unsigned i = 0; i < d1; ++i) { lo[i] = xpart[i]; hi[i] = xpart[i]; }
    for (unsigned i = d1; i < vars; ++i) hi[i] = 0xffffffffu;
    auto it = work.terms().lower_bound(lo);
    auto end = work.terms().upper_bound(hi);
    for (; it != end; ++it) {
      Mono ypart(vars, 0);
      for (unsigned i = d1; i < vars; ++i) ypart[i] = it->first[i];
      coefPart.add_term(ypart, it->second);
    }

    // e-monomial with exponents given by consecutive differences of the partition
    Mono emono(d1 + d2, 0);
    WeightedPoly expansion = root_poly(vars, bound);
    expansion.add_term(Mono(vars, 0), Rat(1));
    for (unsigned i = 0; i < d1; ++i) {
      unsigned mu = xpart[i] - (i + 1 < d1 ? xpart[i + 1] : 0);
      emono[i] = mu;
      for (unsigned rep = 0; rep < mu; ++rep) expansion = mul(expansion, e1(i + 1));
    }
    work = sub(work, mul(expansion, coefPart));

    // rewrite the block-two coefficient recursively, then emit
    if (d2 == 0) {
      out.add_term(emono, coefPart.coeff(Mono(vars, 0)));
    } else {
      WeightedPoly ypoly = root_poly(d2, bound);
      for (const auto& [m, c] : coefPart.terms()) {
        Mono ym(m.begin() + d1, m.end());
        ypoly.add_term(ym, c);
      }
      WeightedPoly reduced = symmetric_reduce(ypoly, d2, 0);
      for (const auto& [m, c] : reduced.terms()) {
        Mono full = emono;
        for (unsigned j = 0; j < d2; ++j) full[d1 + j] = m[j];
        out.add_term(full, c);
      }
    }
  }
  return out;
}

WeightedPoly multiplicative_symmetrization(const TruncSeries& f, unsigned W) {
  if (W == 0) throw InputError("multiplicative_symmetrization: weight bound must be >= 1");
  if (f.coeff(0) != 1)
    throw InputError("multiplicative_symmetrization: constant term must be 1 (track the unit separately)");
  if (f.order() < static_cast<int>(W))
    throw OrderError("multiplicative_symmetrization: series order below the weight bound");
  WeightedPoly prod = root_poly(W, W);
  prod.add_term(Mono(W, 0), Rat(1));
  for (unsigned i = 0; i < W; ++i) {
    WeightedPoly fi = root_poly(W, W);
    fi.add_term(Mono(W, 0), Rat(1));
    for (unsigned k = 1; k <= W; ++k) {
      if (f.coeff(k) == 0) continue;
      Mono m(W, 0);
      m[i] = k;
      fi.add_term(m, f.coeff(k));
    }
    prod = mul(prod, fi);
  }
  return symmetric_reduce(prod, W, 0);
}

namespace {

// all k-element index subsets of {0..n-1}, streamed to a visitor
template <class F>
void for_subsets(unsigned n, unsigned k, F&& visit) {
  if (k > n) return;
  std::vector<unsigned> idx(k);
  for (unsigned i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    visit(idx);
    int j = static_cast<int>(k) - 1;
    while (j >= 0 && idx[j] == n - k + j) --j;
    if (j < 0) break;
    ++idx[j];
    for (unsigned i = j + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
  }
}

}  // namespace

WeightedPoly universal_product_poly(unsigned n) {
  if (n == 0) throw InputError("universal_product_poly: n must be >= 1");
  static std::map<unsigned, WeightedPoly> cache;
  std::lock_guard<std::mutex> lock(cache_mu);
  if (auto it = cache.find(n); it != cache.end()) return it->second;

  const unsigned vars = 2 * n;
  // pair monomials x_i y_j
  std::vector<Mono> pairs;
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) {
      Mono m(vars, 0);
      m[i] = 1;
      m[n + j] = 1;
      pairs.push_back(m);
    }
  WeightedPoly en = root_poly(vars, WeightedPoly::kNoBound);
  for_subsets(static_cast<unsigned>(pairs.size()), n, [&](const std::vector<unsigned>& idx) {
    Mono m(vars, 0);
    for (unsigned t : idx)
      for (unsigned v = 0; v < vars; ++v) m[v] += pairs[t][v];
    en.add_term(m, Rat(1));
  });
  WeightedPoly p = symmetric_reduce(en, n, n);
  cache.emplace(n, p);
  return p;
}

WeightedPoly universal_plethysm_poly(unsigned m, unsigned n) {
  if (m == 0 || n == 0) throw InputError("universal_plethysm_poly: m, n must be >= 1");
  static std::map<std::pair<unsigned, unsigned>, WeightedPoly> cache;
  std::lock_guard<std::mutex> lock(cache_mu);
  if (auto it = cache.find({m, n}); it != cache.end()) return it->second;

  const unsigned d = m * n;
  std::vector<Mono> block;  // monomials u_S, |S| = n
  for_subsets(d, n, [&](const std::vector<unsigned>& idx) {
    Mono mono(d, 0);
    for (unsigned t : idx) mono[t] = 1;
    block.push_back(mono);
  });
  WeightedPoly em = root_poly(d, WeightedPoly::kNoBound);
  for_subsets(static_cast<unsigned>(block.size()), m, [&](const std::vector<unsigned>& idx) {
    Mono mono(d, 0);
    for (unsigned t : idx)
      for (unsigned v = 0; v < d; ++v) mono[v] += block[t][v];
    em.add_term(mono, Rat(1));
  });
  WeightedPoly p = symmetric_reduce(em, d, 0);
  cache.emplace(std::make_pair(m, n), p);
  return p;
}

}  // namespace lf
