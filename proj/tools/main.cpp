#include <algorithm>
#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "lambda_forge/report.hpp"
#include "lambda_forge/suite.hpp"
#include "lambda_forge/symmetric.hpp"

using namespace lf;

namespace {

enum class Format { Table, JsonOut, CsvOut };

struct RunConfig {
  uint64_t seed = 0;
  int truncation = -1;  // -1: per-command default
  int weight = -1;
  long prime = 0;
  int depth = -1;
  int dMax = -1;
  std::vector<long> kSet;
  std::string mRange;
  Format format = Format::Table;
};

std::string trimmed(const std::string& s) {
  size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trimmed(item));
  return out;
}

std::vector<Rat> parse_rat_list(const std::string& s) {
  std::vector<Rat> out;
  for (const std::string& item : split(s, ',')) {
    if (item.empty()) throw InputError("empty entry in coefficient list");
    out.push_back(rat_parse(item));
  }
  if (out.empty()) throw InputError("empty coefficient list");
  return out;
}

std::pair<long, long> parse_range(const std::string& s, long defLo, long defHi) {
  if (s.empty()) return {defLo, defHi};
  size_t pos = s.find("..");
  if (pos == std::string::npos) throw InputError("range must look like lo..hi");
  long lo = std::stol(s.substr(0, pos));
  long hi = std::stol(s.substr(pos + 2));
  if (hi < lo) throw InputError("empty range " + s);
  return {lo, hi};
}

TruncSeries series_from_list(const std::vector<Rat>& c, const ScalarDomain& dom, int order) {
  if (static_cast<int>(c.size()) > order + 1)
    throw InputError("coefficient list is longer than the truncation holds");
  std::vector<Rat> full(static_cast<size_t>(order) + 1, Rat(0));
  std::copy(c.begin(), c.end(), full.begin());
  return TruncSeries::from_coeffs(dom, std::move(full));
}

ScalarDomain parse_domain(const std::string& s) {
  if (s == "Z") return ScalarDomain::integers();
  if (s == "Q") return ScalarDomain::rationals();
  if (s.rfind("Z/", 0) == 0) return ScalarDomain::integers_mod(Int(s.substr(2)));
  if (s.rfind("Z[", 0) == 0 && s.back() == ']') {
    std::vector<Int> primes;
    for (const std::string& item : split(s.substr(2, s.size() - 3), ',')) {
      if (item.rfind("1/", 0) != 0) throw InputError("localized entries look like 1/p: " + item);
      primes.emplace_back(item.substr(2));
    }
    return ScalarDomain::integers_localized(std::move(primes));
  }
  throw InputError("unrecognized domain " + s + "; use Z, Q, Z/m, or Z[1/p,...]");
}

// invariant-factor form of an arbitrary finite factor list
std::vector<Int> chain_factors(std::vector<Int> fs) {
  for (bool changed = true; changed;) {
    changed = false;
    for (size_t i = 0; i < fs.size(); ++i)
      for (size_t j = i + 1; j < fs.size(); ++j) {
        if (fs[i] % fs[j] == 0 || fs[j] % fs[i] == 0) continue;
        Int g, l;
        mpz_gcd(g.get_mpz_t(), fs[i].get_mpz_t(), fs[j].get_mpz_t());
        mpz_lcm(l.get_mpz_t(), fs[i].get_mpz_t(), fs[j].get_mpz_t());
        fs[i] = g;
        fs[j] = l;
        changed = true;
      }
  }
  fs.erase(std::remove(fs.begin(), fs.end(), Int(1)), fs.end());
  std::sort(fs.begin(), fs.end());
  return fs;
}

GroupDescriptor parse_group(const std::string& s) {
  std::vector<std::string> tokens = split(s, 'x');
  if (tokens.size() == 1) {
    const std::string& t = tokens[0];
    if (t == "Q") return GroupDescriptor::rationals();
    if (t.rfind("F_", 0) == 0) {
      size_t caret = t.find('^');
      Int p(t.substr(2, caret == std::string::npos ? std::string::npos : caret - 2));
      unsigned dim = caret == std::string::npos
                         ? 1
                         : static_cast<unsigned>(std::stoul(t.substr(caret + 1)));
      return GroupDescriptor::fp_vector(p, dim);
    }
  }
  unsigned rank = 0;
  std::vector<Int> torsion;
  for (const std::string& t : tokens) {
    if (t == "Z") {
      ++rank;
    } else if (t.rfind("Z^", 0) == 0) {
      rank += static_cast<unsigned>(std::stoul(t.substr(2)));
    } else if (t.rfind("Z/", 0) == 0) {
      torsion.emplace_back(t.substr(2));
    } else {
      throw InputError("unrecognized group token " + t +
                       "; use Z, Z^r, Q, Z/m, F_p, F_p^d, combined with x");
    }
  }
  torsion = chain_factors(std::move(torsion));
  if (torsion.empty()) return GroupDescriptor::free_abelian(rank);
  if (rank == 0) return GroupDescriptor::finite(std::move(torsion));
  return GroupDescriptor::finitely_generated(rank, std::move(torsion));
}

TowerDescriptor parse_tower_factor(const std::string& s, int N, unsigned D) {
  size_t colon = s.find(':');
  if (colon == std::string::npos)
    throw InputError("tower factor looks like kind:group, got " + s);
  std::string kind = s.substr(0, colon);
  GroupDescriptor A = parse_group(s.substr(colon + 1));
  if (kind == "omega") return TowerDescriptor::omega(A, N);
  if (kind == "factorial") return TowerDescriptor::factorial(A, D);
  throw InputError("product factors are omega:G or factorial:G, got " + kind);
}

std::string mono_str(const Mono& m) {
  std::string out;
  for (size_t i = 0; i < m.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(m[i]);
  }
  return out;
}

// ---- output plumbing ----

struct Emitter {
  const RunConfig& rc;
  std::string command;
  Json env;
  std::vector<std::string> table;
  std::vector<std::string> csvHeader;
  std::vector<std::vector<std::string>> csvRows;
  bool csvSupported = true;

  Emitter(const RunConfig& cfg, std::string cmd) : rc(cfg), command(std::move(cmd)) {
    env["command"] = command;
    env["seed"] = rc.seed;
    env["config"] = Json::object();
  }

  int out(bool pass = true) {
    if (rc.format == Format::JsonOut) {
      std::cout << env.dump(2) << "\n";
    } else if (rc.format == Format::CsvOut) {
      if (!csvSupported) throw InputError("csv output is not available for " + command);
      std::cout << "# seed=" << rc.seed << "\n" << to_csv(csvHeader, csvRows);
    } else {
      std::cout << "# " << command << " seed=" << rc.seed << "\n";
      for (const std::string& line : table) std::cout << line << "\n";
    }
    return pass ? 0 : 1;
  }
};

std::string pass_str(bool b) { return b ? "pass" : "FAIL"; }

// ---- command handlers ----

int cmd_chi_table(const RunConfig& rc, unsigned n) {
  Emitter e(rc, "chi-table");
  e.env["config"]["n"] = n;
  Json list = Json::array();
  for (unsigned k = 1; k <= n; ++k) {
    WeightedPoly p = chi_poly(k);
    Json item;
    item["n"] = k;
    item["poly"] = to_json(p);
    list.push_back(std::move(item));
    e.table.push_back("chi_" + std::to_string(k) + " = " + p.str("c"));
    e.csvRows.push_back({std::to_string(k), p.str("c")});
  }
  e.env["chi"] = std::move(list);
  e.csvHeader = {"n", "polynomial"};
  return e.out();
}

int cmd_universal_poly(const RunConfig& rc, unsigned n, unsigned m, bool plethysm) {
  Emitter e(rc, "universal-poly");
  e.env["config"]["kind"] = plethysm ? "plethysm" : "product";
  if (plethysm) e.env["config"]["m"] = m;
  e.env["config"]["n"] = n;
  WeightedPoly p = plethysm ? universal_plethysm_poly(m, n) : universal_product_poly(n);
  e.env["poly"] = to_json(p);
  if (plethysm) {
    e.table.push_back("P_{" + std::to_string(m) + "," + std::to_string(n) +
                      "} with l_i = lambda^i(x):");
    e.table.push_back(p.str("l"));
  } else {
    e.table.push_back("P_" + std::to_string(n) + " with a_i = lambda^i(x), b_j = lambda^j(y):");
    e.table.push_back(p.str("a", "b"));
  }
  e.csvHeader = {"exponents", "coefficient"};
  for (const auto& [mono, c] : p.terms()) e.csvRows.push_back({mono_str(mono), rat_str(c)});
  return e.out();
}

int cmd_star_compose(const RunConfig& rc, const std::string& fs, const std::string& gs) {
  int N = rc.truncation >= 1 ? rc.truncation : 16;
  Emitter e(rc, "star-compose");
  e.env["config"]["truncation"] = N;
  ScalarDomain Q = ScalarDomain::rationals();
  TruncSeries f = series_from_list(parse_rat_list(fs), Q, N);
  TruncSeries g = series_from_list(parse_rat_list(gs), Q, N);
  TruncSeries r = star_compose(f, g);
  e.env["f"] = to_json(f);
  e.env["g"] = to_json(g);
  e.env["result"] = to_json(r);
  e.table.push_back("f     = " + f.str());
  e.table.push_back("g     = " + g.str());
  e.table.push_back("f * g = " + r.str());
  e.csvHeader = {"i", "coefficient"};
  for (int i = 0; i <= r.order(); ++i) e.csvRows.push_back({std::to_string(i), rat_str(r.coeff(i))});
  return e.out();
}

int cmd_gamma_expand(const RunConfig& rc, const std::string& fs) {
  unsigned W = rc.weight >= 1 ? static_cast<unsigned>(rc.weight) : 10;
  Emitter e(rc, "gamma-expand");
  e.env["config"]["weight"] = W;
  ScalarDomain Q = ScalarDomain::rationals();
  std::vector<Rat> c = parse_rat_list(fs);
  TruncSeries f = series_from_list(c, Q, std::max<int>(static_cast<int>(W), static_cast<int>(c.size()) - 1));
  GammaSeries G = additive_to_gamma(f, W);
  e.env["input"] = to_json(f);
  e.env["gamma"] = to_json(G);
  e.table.push_back("f     = " + f.str());
  e.table.push_back("gamma = " + G.str());
  e.csvHeader = {"kind", "key", "value"};
  e.csvRows.push_back({"unit-base", "", rat_str(G.unitBase)});
  for (size_t j = 0; j < G.rankConstant.size(); ++j)
    e.csvRows.push_back({"rank-constant", std::to_string(j), rat_str(G.rankConstant[j])});
  for (const auto& [mono, coef] : G.poly.terms())
    e.csvRows.push_back({"term", mono_str(mono), rat_str(coef)});
  return e.out();
}

int cmd_sigma(const RunConfig& rc, const std::string& as, long geometric, bool haveGeometric) {
  int N = rc.truncation >= 1 ? rc.truncation : 16;
  Emitter e(rc, "sigma");
  e.env["config"]["truncation"] = N;
  std::vector<Rat> a;
  if (haveGeometric) {
    if (geometric == 0) throw InputError("--geometric needs a nonzero k");
    e.env["config"]["geometric"] = geometric;
    Rat pw(1);
    for (int i = 0; i <= N; ++i) {
      a.push_back(pw);
      pw *= Rat(geometric);
    }
  } else {
    if (as.empty()) throw InputError("sigma needs --a or --geometric");
    a = parse_rat_list(as);
  }
  TruncSeries s = sigma(a, N);
  Json win = Json::array();
  for (const Rat& v : a) win.push_back(rat_str(v));
  e.env["window"] = std::move(win);
  e.env["series"] = to_json(s);
  e.table.push_back("sigma(a) = " + s.str());
  e.csvHeader = {"i", "coefficient"};
  for (int i = 0; i <= s.order(); ++i) e.csvRows.push_back({std::to_string(i), rat_str(s.coeff(i))});
  return e.out();
}

int cmd_tower_analyze(const RunConfig& rc, const std::string& kind, const std::string& group,
                      unsigned shiftBy, const std::string& innerKind,
                      const std::vector<std::string>& factors) {
  int N = rc.truncation >= 1 ? rc.truncation : 12;
  unsigned D = rc.depth >= 1 ? static_cast<unsigned>(rc.depth) : 8;
  Emitter e(rc, "tower-analyze");
  e.env["config"]["kind"] = kind;
  e.env["config"]["truncation"] = N;
  e.env["config"]["depth"] = D;

  TowerDescriptor T = TowerDescriptor::omega(GroupDescriptor::free_abelian(1), N);
  if (kind == "omega") {
    T = TowerDescriptor::omega(parse_group(group), N);
    e.env["config"]["group"] = group;
  } else if (kind == "factorial") {
    T = TowerDescriptor::factorial(parse_group(group), D);
    e.env["config"]["group"] = group;
  } else if (kind == "shift") {
    TowerDescriptor inner = innerKind == "factorial"
                                ? TowerDescriptor::factorial(parse_group(group), D)
                                : TowerDescriptor::omega(parse_group(group), N);
    T = TowerDescriptor::shifted(shiftBy, std::move(inner));
    e.env["config"]["group"] = group;
    e.env["config"]["shift"] = shiftBy;
    e.env["config"]["inner-kind"] = innerKind;
  } else if (kind == "product") {
    if (factors.empty()) throw InputError("product towers need at least one --factor kind:group");
    std::vector<TowerDescriptor> fs;
    for (const std::string& f : factors) fs.push_back(parse_tower_factor(f, N, D));
    T = TowerDescriptor::product(std::move(fs));
    e.env["config"]["factors"] = factors;
  } else {
    throw InputError("unknown tower kind " + kind + "; use omega, factorial, shift, product");
  }

  LimReport rep = analyze_tower(T);
  e.env["descriptor"] = T.str();
  e.env["report"] = to_json(rep);
  e.table.push_back("tower: " + T.str());
  e.table.push_back("Mittag-Leffler: " + ml_str(rep.ml));
  e.table.push_back("lim:    " + lim_class_str(rep.lim));
  e.table.push_back("R^1lim: " + r1_class_str(rep.r1lim));
  for (const std::string& line : rep.evidence) e.table.push_back("  " + line);
  for (size_t i = 0; i < rep.components.size(); ++i) {
    const LimReport& c = rep.components[i];
    e.table.push_back("  component " + std::to_string(i) + ": lim " + lim_class_str(c.lim) +
                      ", R^1lim " + r1_class_str(c.r1lim) + ", Mittag-Leffler " + ml_str(c.ml));
  }
  e.csvHeader = {"descriptor", "mittag_leffler", "lim", "r1lim"};
  e.csvRows.push_back({T.str(), ml_str(rep.ml), lim_class_str(rep.lim), r1_class_str(rep.r1lim)});
  return e.out();
}

int cmd_omega_lift(const RunConfig& rc, const std::string& fs, const std::string& domainStr,
                   bool haveDomain) {
  int N = rc.truncation >= 1 ? rc.truncation : 12;
  int depth = rc.depth >= 0 ? rc.depth : 0;
  Emitter e(rc, "omega-lift");
  if (rc.prime != 0 && haveDomain) throw InputError("give either --prime or --domain, not both");
  ScalarDomain dom = rc.prime != 0 ? ScalarDomain::integers_mod(Int(rc.prime))
                                   : parse_domain(haveDomain ? domainStr : "Z");
  e.env["config"]["truncation"] = N;
  e.env["config"]["depth"] = depth;
  e.env["config"]["domain"] = dom.name();
  TruncSeries f = series_from_list(parse_rat_list(fs), dom, N);
  e.env["input"] = to_json(f);
  e.csvHeader = {"stage", "index", "coefficient"};

  if (depth <= 1 && depth != 0) depth = 1;
  if (depth == 0) {
    OmegaLift l = omega_lift(f);
    e.env["result"] = to_json(l);
    e.table.push_back("f = " + f.str());
    if (l.ok) {
      e.table.push_back("lift = " + l.lift.str());
      for (int i = 0; i <= l.lift.order(); ++i)
        e.csvRows.push_back({"1", std::to_string(i), rat_str(l.lift.coeff(i))});
    } else {
      e.table.push_back("no lift: obstruction at coefficient " + std::to_string(l.obstruction));
      e.csvHeader = {"field", "value"};
      e.csvRows.push_back({"ok", "false"});
      e.csvRows.push_back({"obstruction", std::to_string(l.obstruction)});
    }
    e.table.push_back(l.note);
  } else {
    TowerLift t = tower_lift_to_depth(f, static_cast<unsigned>(depth));
    e.env["result"] = to_json(t);
    e.table.push_back("f = " + f.str());
    if (t.ok) {
      e.table.push_back("integral chain of depth " + std::to_string(depth) + ":");
      for (size_t j = 0; j < t.chain.size(); ++j) {
        e.table.push_back("  g_" + std::to_string(j) + " = " + t.chain[j].str());
        for (int i = 0; i <= t.chain[j].order(); ++i)
          e.csvRows.push_back({std::to_string(j), std::to_string(i), rat_str(t.chain[j].coeff(i))});
      }
    } else {
      e.table.push_back("no chain: obstructed at depth " + std::to_string(t.obstructionDepth));
      e.csvHeader = {"field", "value"};
      e.csvRows.push_back({"ok", "false"});
      e.csvRows.push_back({"obstruction_depth", std::to_string(t.obstructionDepth)});
    }
    e.table.push_back(t.note);
  }
  return e.out();
}

int cmd_stable_projectors(const RunConfig& rc, long nMax, int levels) {
  int W = rc.weight >= 1 ? rc.weight : 8;
  int N = rc.truncation >= 1 ? rc.truncation : 10;
  if (nMax > W) throw InputError("projector index range exceeds the window radius");
  Emitter e(rc, "stable-projectors");
  e.env["config"]["weight"] = W;
  e.env["config"]["truncation"] = N;
  e.env["config"]["n-max"] = nMax;
  e.env["config"]["levels"] = levels;
  Json list = Json::array();
  e.csvHeader = {"n", "m", "coefficient"};
  for (long n = -nMax; n <= nMax; ++n) {
    StableElement p = pi_n(n, W, N);
    Json item;
    item["n"] = n;
    item["element"] = to_json(p);
    Json lv = Json::array();
    for (int k = 0; k <= levels; ++k) lv.push_back(to_json(p.level(k)));
    item["levels"] = std::move(lv);
    list.push_back(std::move(item));
    e.table.push_back("pi_" + std::to_string(n) + ": " + p.str());
    for (int k = 0; k <= levels; ++k)
      e.table.push_back("  level " + std::to_string(k) + ": " + p.level(k).str());
    for (const auto& [m, c] : p.window())
      e.csvRows.push_back({std::to_string(n), std::to_string(m), rat_str(c)});
  }
  e.env["projectors"] = std::move(list);
  return e.out();
}

int cmd_classify_endo(const RunConfig& rc, const std::string& fs) {
  unsigned N = rc.truncation >= 1 ? static_cast<unsigned>(rc.truncation) : 10;
  Emitter e(rc, "classify-endo");
  e.env["config"]["truncation"] = N;
  ScalarDomain Q = ScalarDomain::rationals();
  std::vector<Rat> c = parse_rat_list(fs);
  TruncSeries f = series_from_list(c, Q, std::max<int>(static_cast<int>(N), static_cast<int>(c.size()) - 1));
  EndoClassification cls = classify_multiplicative_endo(f, N);
  e.env["input"] = to_json(f);
  e.env["result"] = to_json(cls);
  e.table.push_back("f = " + f.str());
  e.table.push_back(cls.is_psi_form ? "psi form: yes, exponent " + std::to_string(cls.exponent)
                                    : "psi form: no");
  e.table.push_back(std::string("functional equation: ") + (cls.functional_eq_holds ? "holds" : "fails"));
  if (!cls.functional_eq_holds && !cls.note.empty())
    e.table.push_back("witness: U^" + std::to_string(cls.witness_i) + " V^" +
                      std::to_string(cls.witness_j) + ", " + rat_str(cls.lhs_coeff) + " vs " +
                      rat_str(cls.rhs_coeff));
  e.table.push_back("note: " + cls.note);
  e.csvHeader = {"is_psi_form", "exponent", "functional_eq_holds", "witness_i", "witness_j",
                 "lhs", "rhs", "note"};
  e.csvRows.push_back({cls.is_psi_form ? "true" : "false", std::to_string(cls.exponent),
                       cls.functional_eq_holds ? "true" : "false", std::to_string(cls.witness_i),
                       std::to_string(cls.witness_j), rat_str(cls.lhs_coeff),
                       rat_str(cls.rhs_coeff), cls.note});
  return e.out();
}

// ---- verify family ----

int verify_hrr_cmd(const RunConfig& rc, int dSingle, long mSingle, bool haveD, bool haveM) {
  int dMax = rc.dMax >= 1 ? rc.dMax : 6;
  auto [mLo, mHi] = parse_range(rc.mRange, -10, 10);
  std::vector<std::pair<unsigned, long>> cases;
  for (unsigned d = haveD ? static_cast<unsigned>(dSingle) : 1,
                dEnd = haveD ? static_cast<unsigned>(dSingle) : static_cast<unsigned>(dMax);
       d <= dEnd; ++d)
    for (long m = haveM ? mSingle : mLo, mEnd = haveM ? mSingle : mHi; m <= mEnd; ++m)
      cases.push_back({d, m});

  Emitter e(rc, "verify hrr");
  e.env["config"]["d_max"] = dMax;
  e.env["config"]["m_range"] = std::to_string(mLo) + ".." + std::to_string(mHi);
  if (haveD) e.env["config"]["d"] = dSingle;
  if (haveM) e.env["config"]["m"] = mSingle;

  std::vector<CheckReport> reports(cases.size());
  parallel_for(static_cast<unsigned>(cases.size()),
               [&](unsigned i) { reports[i] = verify_hrr(cases[i].first, cases[i].second); });

  bool all = true;
  Json list = Json::array();
  e.csvHeader = {"d", "m", "lhs", "rhs", "equal"};
  for (size_t i = 0; i < cases.size(); ++i) {
    const CheckReport& r = reports[i];
    all = all && r.equal;
    list.push_back(to_json(r));
    e.table.push_back(pass_str(r.equal) + " d=" + std::to_string(cases[i].first) +
                      " m=" + std::to_string(cases[i].second) + " value " + r.lhs +
                      (r.equal ? "" : " vs " + r.rhs));
    e.csvRows.push_back({std::to_string(cases[i].first), std::to_string(cases[i].second), r.lhs,
                         r.rhs, r.equal ? "true" : "false"});
  }
  e.env["results"] = std::move(list);
  e.env["pass"] = all;
  e.table.push_back(all ? "all " + std::to_string(cases.size()) + " cases pass"
                        : "some cases FAILED");
  return e.out(all);
}

int verify_arr_cmd(const RunConfig& rc, int dSingle, long kSingle, long mSingle, bool haveD,
                   bool haveK, bool haveM) {
  int dMax = rc.dMax >= 1 ? rc.dMax : 4;
  std::vector<long> ks = haveK ? std::vector<long>{kSingle}
                               : (rc.kSet.empty() ? std::vector<long>{2, 3, 5} : rc.kSet);
  auto [mLo, mHi] = parse_range(rc.mRange, -6, 6);
  struct Case {
    unsigned d;
    long k, m;
  };
  std::vector<Case> cases;
  for (unsigned d = haveD ? static_cast<unsigned>(dSingle) : 1,
                dEnd = haveD ? static_cast<unsigned>(dSingle) : static_cast<unsigned>(dMax);
       d <= dEnd; ++d)
    for (long k : ks)
      for (long m = haveM ? mSingle : mLo, mEnd = haveM ? mSingle : mHi; m <= mEnd; ++m)
        cases.push_back({d, k, m});

  Emitter e(rc, "verify arr");
  e.env["config"]["d_max"] = dMax;
  e.env["config"]["k_set"] = ks;
  e.env["config"]["m_range"] = std::to_string(mLo) + ".." + std::to_string(mHi);

  std::vector<CheckReport> reports(cases.size());
  parallel_for(static_cast<unsigned>(cases.size()), [&](unsigned i) {
    BaseSpace sp{{cases[i].d}};
    reports[i] = verify_arr(RelativeMap::projection_to_point(sp),
                            static_cast<unsigned>(cases[i].k), SplitElement::line(sp, {cases[i].m}));
  });

  bool all = true;
  Json list = Json::array();
  e.csvHeader = {"d", "k", "m", "lhs", "rhs", "equal"};
  for (size_t i = 0; i < cases.size(); ++i) {
    const CheckReport& r = reports[i];
    all = all && r.equal;
    list.push_back(to_json(r));
    e.table.push_back(pass_str(r.equal) + " d=" + std::to_string(cases[i].d) +
                      " k=" + std::to_string(cases[i].k) + " m=" + std::to_string(cases[i].m) +
                      (r.equal ? "" : "  " + r.lhs + " vs " + r.rhs));
    e.csvRows.push_back({std::to_string(cases[i].d), std::to_string(cases[i].k),
                         std::to_string(cases[i].m), r.lhs, r.rhs, r.equal ? "true" : "false"});
  }
  e.env["results"] = std::move(list);
  e.env["pass"] = all;
  e.table.push_back(all ? "all " + std::to_string(cases.size()) + " cases pass"
                        : "some cases FAILED");
  return e.out(all);
}

int verify_grr_cmd(const RunConfig& rc, int dSingle, int eSingle, bool haveD, bool haveE) {
  int dMax = rc.dMax >= 1 ? rc.dMax : 3;
  Rng rng(rc.seed);
  struct Case {
    unsigned d, e;
    RelativeMap f;
    SplitElement x;
  };
  std::vector<Case> cases;
  for (unsigned d = haveD ? static_cast<unsigned>(dSingle) : 1,
                dEnd = haveD ? static_cast<unsigned>(dSingle) : static_cast<unsigned>(dMax);
       d <= dEnd; ++d)
    for (unsigned ee = haveE ? static_cast<unsigned>(eSingle) : 1,
                  eEnd = haveE ? static_cast<unsigned>(eSingle) : static_cast<unsigned>(dMax);
         ee <= eEnd; ++ee) {
      BaseSpace source{{ee, d}};  // fiber P^d, base P^e
      cases.push_back({d, ee, RelativeMap::forget_last_factor(source),
                       random_split_element(rng, source, 4, 2, 3)});
    }

  Emitter e(rc, "verify grr");
  e.env["config"]["d_max"] = dMax;
  if (haveD) e.env["config"]["d"] = dSingle;
  if (haveE) e.env["config"]["e"] = eSingle;

  std::vector<CheckReport> reports(cases.size());
  parallel_for(static_cast<unsigned>(cases.size()),
               [&](unsigned i) { reports[i] = verify_grr(cases[i].f, cases[i].x); });

  bool all = true;
  Json list = Json::array();
  e.csvHeader = {"d", "e", "lhs", "rhs", "equal"};
  for (size_t i = 0; i < cases.size(); ++i) {
    const CheckReport& r = reports[i];
    all = all && r.equal;
    list.push_back(to_json(r));
    e.table.push_back(pass_str(r.equal) + " fiber P^" + std::to_string(cases[i].d) + " over P^" +
                      std::to_string(cases[i].e) + (r.equal ? "" : "  " + r.lhs + " vs " + r.rhs));
    e.csvRows.push_back({std::to_string(cases[i].d), std::to_string(cases[i].e), r.lhs, r.rhs,
                         r.equal ? "true" : "false"});
  }
  e.env["results"] = std::move(list);
  e.env["pass"] = all;
  e.table.push_back(all ? "all " + std::to_string(cases.size()) + " cases pass"
                        : "some cases FAILED");
  return e.out(all);
}

int verify_lambda_axioms_cmd(const RunConfig& rc) {
  int dMax = rc.dMax >= 1 ? std::min(rc.dMax, 8) : 5;
  const unsigned pairs = 25;
  Rng rng(rc.seed);
  std::vector<SplitElement> X, Y;
  for (unsigned t = 0; t < pairs; ++t) {
    BaseSpace sp{{static_cast<unsigned>(rng.range(1, dMax))}};
    X.push_back(random_split_element(rng, sp, 4, 3, 4));
    Y.push_back(random_split_element(rng, sp, 4, 3, 4));
  }

  Emitter e(rc, "verify lambda-axioms");
  e.env["config"]["d_max"] = dMax;
  e.env["config"]["pairs"] = pairs;

  std::vector<AxiomReport> reports(pairs);
  parallel_for(pairs, [&](unsigned i) { reports[i] = verify_special_axioms(X[i], Y[i], 4); });

  bool all = true;
  Json list = Json::array();
  e.csvHeader = {"pair", "space", "pass", "first_failure"};
  for (unsigned i = 0; i < pairs; ++i) {
    const AxiomReport& r = reports[i];
    all = all && r.pass;
    Json item;
    item["pair"] = i;
    item["space"] = X[i].space().str();
    item["report"] = to_json(r);
    list.push_back(std::move(item));
    e.table.push_back(pass_str(r.pass) + " pair " + std::to_string(i) + " on " +
                      X[i].space().str() + (r.pass ? "" : ": " + r.failures.front()));
    e.csvRows.push_back({std::to_string(i), X[i].space().str(), r.pass ? "true" : "false",
                         r.pass ? "" : r.failures.front()});
  }
  e.env["results"] = std::move(list);
  e.env["pass"] = all;
  e.table.push_back(all ? "all " + std::to_string(pairs) + " pairs pass" : "some pairs FAILED");
  return e.out(all);
}

int verify_omega_chi_cmd(const RunConfig& rc, unsigned nMax, const std::string& dims) {
  Emitter e(rc, "verify omega-chi");
  std::vector<BaseSpace> spaces;
  if (!dims.empty()) {
    std::vector<unsigned> ds;
    for (const std::string& t : split(dims, ','))
      ds.push_back(static_cast<unsigned>(std::stoul(t)));
    spaces.push_back(BaseSpace{ds});
    e.env["config"]["dims"] = dims;
  } else {
    spaces = {BaseSpace{{2}}, BaseSpace{{3}}, BaseSpace{{1, 1}}};
  }
  e.env["config"]["n_max"] = nMax;

  struct Case {
    unsigned n;
    BaseSpace X;
  };
  std::vector<Case> cases;
  for (unsigned n = 1; n <= nMax; ++n)
    for (const BaseSpace& X : spaces) cases.push_back({n, X});

  std::vector<CheckReport> reports(cases.size());
  parallel_for(static_cast<unsigned>(cases.size()),
               [&](unsigned i) { reports[i] = verify_omega_chi(cases[i].n, cases[i].X); });

  bool all = true;
  Json list = Json::array();
  e.csvHeader = {"n", "space", "lhs", "rhs", "equal"};
  for (size_t i = 0; i < cases.size(); ++i) {
    const CheckReport& r = reports[i];
    all = all && r.equal;
    list.push_back(to_json(r));
    e.table.push_back(pass_str(r.equal) + " n=" + std::to_string(cases[i].n) + " on " +
                      cases[i].X.str());
    e.csvRows.push_back({std::to_string(cases[i].n), cases[i].X.str(), r.lhs, r.rhs,
                         r.equal ? "true" : "false"});
  }
  e.env["results"] = std::move(list);
  e.env["pass"] = all;
  e.table.push_back(all ? "all " + std::to_string(cases.size()) + " cases pass"
                        : "some cases FAILED");
  return e.out(all);
}

int verify_adams_eigen_cmd(const RunConfig& rc, long nMax) {
  int W = rc.weight >= 1 ? rc.weight : 8;
  int N = rc.truncation >= 1 ? rc.truncation : 10;
  std::vector<long> ks = rc.kSet.empty() ? std::vector<long>{2, 3} : rc.kSet;
  if (nMax > W) throw InputError("projector index range exceeds the window radius");

  Emitter e(rc, "verify adams-eigen");
  e.env["config"]["weight"] = W;
  e.env["config"]["truncation"] = N;
  e.env["config"]["k_set"] = ks;
  e.env["config"]["n_max"] = nMax;

  bool all = true;
  Json list = Json::array();
  e.csvHeader = {"relation", "k", "n", "m", "pass"};
  auto record = [&](const std::string& rel, const std::string& k, const std::string& n,
                    const std::string& m, bool ok) {
    all = all && ok;
    Json item;
    item["relation"] = rel;
    if (!k.empty()) item["k"] = std::stol(k);
    if (!n.empty()) item["n"] = std::stol(n);
    if (!m.empty()) item["m"] = std::stol(m);
    item["pass"] = ok;
    list.push_back(std::move(item));
    e.table.push_back(pass_str(ok) + " " + rel + (k.empty() ? "" : " k=" + k) +
                      (n.empty() ? "" : " n=" + n) + (m.empty() ? "" : " m=" + m));
    e.csvRows.push_back({rel, k, n, m, ok ? "true" : "false"});
  };

  StableElement zero(std::map<long, Rat>{}, W, N);
  StableElement id = stable_identity(W, N);
  for (long n = -nMax; n <= nMax; ++n)
    for (long m = -nMax; m <= nMax; ++m) {
      StableElement prod = stable_compose(pi_n(n, W, N), pi_n(m, W, N));
      bool ok = (n == m) ? (prod == pi_n(n, W, N)) : (prod == zero);
      record("orthogonality", "", std::to_string(n), std::to_string(m), ok);
    }
  for (long k : ks) {
    if (k == 0 || k == 1 || k == -1) throw InputError("eigen relations need |k| >= 2");
    for (long n = -nMax; n <= nMax; ++n) {
      Rat kn = rat_pow(Rat(k), n);
      StableElement pn = pi_n(n, W, N);
      bool eig = stable_compose(psi_stable(k, W, N), pn) == stable_scalar(kn, pn);
      record("psi-eigen", std::to_string(k), std::to_string(n), "", eig);
      StableElement res = stable_compose(
          phi_nk(n, k, W, N), stable_sub(psi_stable(k, W, N), stable_scalar(kn, id)));
      bool inv = res == stable_sub(id, pn);
      record("resolvent", std::to_string(k), std::to_string(n), "", inv);
    }
  }
  e.env["results"] = std::move(list);
  e.env["pass"] = all;
  e.table.push_back(all ? "all relations pass" : "some relations FAILED");
  return e.out(all);
}

int cmd_suite_all(const RunConfig& rc) {
  Emitter e(rc, "suite-all");
  SuiteResult res = run_acceptance_suite(rc.seed);
  bool all = res.all_pass();
  Json list = Json::array();
  e.csvHeader = {"index", "name", "pass", "checks", "budget_seconds"};
  for (const CriterionResult& c : res.criteria) {
    Json item;
    item["index"] = c.index;
    item["name"] = c.name;
    item["pass"] = c.pass;
    item["checks"] = c.checkCount;
    item["budget_seconds"] = c.budgetSeconds;
    if (!c.checksPass) item["detail"] = c.detail;
    list.push_back(std::move(item));
    char line[160];
    std::snprintf(line, sizeof(line), "%s %2d %-20s %8.3f s (budget %5.1f s)  %s",
                  c.pass ? "pass" : "FAIL", c.index, c.name.c_str(), c.seconds, c.budgetSeconds,
                  c.detail.c_str());
    e.table.push_back(line);
    e.csvRows.push_back({std::to_string(c.index), c.name, c.pass ? "true" : "false",
                         std::to_string(c.checkCount), std::to_string(c.budgetSeconds)});
  }
  e.env["criteria"] = std::move(list);
  e.env["pass"] = all;
  e.table.push_back(all ? "all criteria pass" : "some criteria FAILED");
  return e.out(all);
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;

  CLI::App app{"lambda-forge: exact lambda-ring and Riemann-Roch calculus on K_0 of products "
               "of projective spaces"};
  app.require_subcommand(1);
  bool wantJson = false, wantCsv = false;
  app.add_option("--seed", cfg.seed, "seed for randomized sweeps (recorded in every output)");
  app.add_option("--truncation", cfg.truncation, "series truncation order");
  app.add_option("--weight", cfg.weight, "gamma weight bound / stable window radius");
  app.add_option("--prime", cfg.prime, "prime p, shorthand for the domain Z/p");
  app.add_option("--depth", cfg.depth, "tower depth");
  app.add_option("--d-max", cfg.dMax, "largest projective dimension in sweeps");
  app.add_option("--k-set", cfg.kSet, "Adams indices, comma separated")->delimiter(',');
  app.add_option("--m-range", cfg.mRange, "twist range lo..hi");
  app.add_flag("--json", wantJson, "emit JSON");
  app.add_flag("--csv", wantCsv, "emit CSV");

  auto* chi = app.add_subcommand("chi-table", "chi_1..chi_n as polynomials in Chern classes");
  chi->fallthrough();
  unsigned chiN = 3;
  chi->add_option("--n", chiN, "largest chi index");

  auto* upoly = app.add_subcommand("universal-poly", "universal product / plethysm polynomials");
  upoly->fallthrough();
  unsigned upolyN = 2, upolyM = 0;
  upoly->add_option("--n", upolyN, "P_n, or the inner index of P_{m,n}");
  auto* upolyMOpt = upoly->add_option("--m", upolyM, "outer index: emit the plethysm P_{m,n}");

  auto* star = app.add_subcommand("star-compose", "compose additive operations");
  star->fallthrough();
  std::string starF, starG;
  star->add_option("--f", starF, "left series, comma separated rationals")->required();
  star->add_option("--g", starG, "right series")->required();

  auto* gamma = app.add_subcommand("gamma-expand", "rewrite a reduced additive series in "
                                                   "gamma-tilde coordinates");
  gamma->fallthrough();
  std::string gammaF;
  gamma->add_option("--f", gammaF, "reduced series, comma separated rationals")->required();

  auto* sig = app.add_subcommand("sigma", "sigma of a window sequence");
  sig->fallthrough();
  std::string sigA;
  long sigK = 0;
  sig->add_option("--a", sigA, "window a_0,a_1,...");
  auto* sigKOpt = sig->add_option("--geometric", sigK, "use the window (k^n)");

  auto* tower = app.add_subcommand("tower-analyze", "classify lim and R^1 lim of a tower");
  tower->fallthrough();
  std::string towerKind = "omega", towerGroup = "Z", towerInner = "omega";
  unsigned towerShift = 1;
  std::vector<std::string> towerFactors;
  tower->add_option("--kind", towerKind, "omega | factorial | shift | product");
  tower->add_option("--group", towerGroup, "base group: Z, Z^r, Q, Z/m, F_p, F_p^d, x-combined");
  tower->add_option("--shift", towerShift, "shift amount for --kind shift");
  tower->add_option("--inner-kind", towerInner, "inner tower for --kind shift");
  tower->add_option("--factor", towerFactors, "product factor kind:group, repeatable");

  auto* olift = app.add_subcommand("omega-lift", "lift a series through Omega, once or to depth");
  olift->fallthrough();
  std::string oliftF, oliftDom;
  olift->add_option("--f", oliftF, "series to lift")->required();
  auto* oliftDomOpt = olift->add_option("--domain", oliftDom, "Z, Q, Z/m, or Z[1/p,...]");

  auto* proj = app.add_subcommand("stable-projectors", "Adams eigenprojector windows");
  proj->fallthrough();
  long projN = 4;
  int projLevels = 2;
  proj->add_option("--n", projN, "largest |n|");
  proj->add_option("--levels", projLevels, "levels to print per projector");

  auto* endo = app.add_subcommand("classify-endo", "is f a power of the line-class identity");
  endo->fallthrough();
  std::string endoF;
  endo->add_option("--f", endoF, "series, comma separated integers")->required();

  auto* verify = app.add_subcommand("verify", "exact verification sweeps");
  verify->require_subcommand(1);
  verify->fallthrough();

  auto* vhrr = verify->add_subcommand("hrr", "chi(P^d, O(m)) against the Todd coefficient");
  vhrr->fallthrough();
  int vhrrD = 0;
  long vhrrM = 0;
  auto* vhrrDOpt = vhrr->add_option("--d", vhrrD, "single dimension");
  auto* vhrrMOpt = vhrr->add_option("--m", vhrrM, "single twist");

  auto* varr = verify->add_subcommand("arr", "Adams Riemann-Roch over Z[1/k]");
  varr->fallthrough();
  int varrD = 0;
  long varrK = 0, varrM = 0;
  auto* varrDOpt = varr->add_option("--d", varrD, "single dimension");
  auto* varrKOpt = varr->add_option("--k", varrK, "single Adams index");
  auto* varrMOpt = varr->add_option("--m", varrM, "single twist");

  auto* vgrr = verify->add_subcommand("grr", "Grothendieck Riemann-Roch for projections");
  vgrr->fallthrough();
  int vgrrD = 0, vgrrE = 0;
  auto* vgrrDOpt = vgrr->add_option("--d", vgrrD, "fiber dimension");
  auto* vgrrEOpt = vgrr->add_option("--e", vgrrE, "base dimension");

  auto* vlam = verify->add_subcommand("lambda-axioms", "special lambda-ring axioms on random "
                                                       "split elements");
  vlam->fallthrough();

  auto* vochi = verify->add_subcommand("omega-chi", "Omega(chi_n) = n chi_{n-1}");
  vochi->fallthrough();
  unsigned vochiN = 4;
  std::string vochiDims;
  vochi->add_option("--n", vochiN, "largest n");
  vochi->add_option("--dims", vochiDims, "custom base space, comma separated dimensions");

  auto* veig = verify->add_subcommand("adams-eigen", "eigenprojector relations");
  veig->fallthrough();
  long veigN = 4;
  veig->add_option("--n", veigN, "largest |n|");

  auto* suite = app.add_subcommand("suite-all", "run the thirteen acceptance criteria");
  suite->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (wantJson && wantCsv) {
    std::cerr << "error: --json and --csv are mutually exclusive\n";
    return 2;
  }
  cfg.format = wantJson ? Format::JsonOut : (wantCsv ? Format::CsvOut : Format::Table);

  try {
    if (chi->parsed()) return cmd_chi_table(cfg, chiN);
    if (upoly->parsed()) return cmd_universal_poly(cfg, upolyN, upolyM, upolyMOpt->count() > 0);
    if (star->parsed()) return cmd_star_compose(cfg, starF, starG);
    if (gamma->parsed()) return cmd_gamma_expand(cfg, gammaF);
    if (sig->parsed()) return cmd_sigma(cfg, sigA, sigK, sigKOpt->count() > 0);
    if (tower->parsed())
      return cmd_tower_analyze(cfg, towerKind, towerGroup, towerShift, towerInner, towerFactors);
    if (olift->parsed()) return cmd_omega_lift(cfg, oliftF, oliftDom, oliftDomOpt->count() > 0);
    if (proj->parsed()) return cmd_stable_projectors(cfg, projN, projLevels);
    if (endo->parsed()) return cmd_classify_endo(cfg, endoF);
    if (verify->parsed()) {
      if (vhrr->parsed())
        return verify_hrr_cmd(cfg, vhrrD, vhrrM, vhrrDOpt->count() > 0, vhrrMOpt->count() > 0);
      if (varr->parsed())
        return verify_arr_cmd(cfg, varrD, varrK, varrM, varrDOpt->count() > 0,
                              varrKOpt->count() > 0, varrMOpt->count() > 0);
      if (vgrr->parsed())
        return verify_grr_cmd(cfg, vgrrD, vgrrE, vgrrDOpt->count() > 0, vgrrEOpt->count() > 0);
      if (vlam->parsed()) return verify_lambda_axioms_cmd(cfg);
      if (vochi->parsed()) return verify_omega_chi_cmd(cfg, vochiN, vochiDims);
      if (veig->parsed()) return verify_adams_eigen_cmd(cfg, veigN);
    }
    if (suite->parsed()) return cmd_suite_all(cfg);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::cerr << "error: no subcommand\n";
  return 2;
}
