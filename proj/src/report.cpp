#include "lambda_forge/report.hpp"

namespace lf {

namespace {

std::string group_kind_tag(GroupDescriptor::Kind k) {
  switch (k) {
    case GroupDescriptor::Kind::FreeAbelian: return "free_abelian";
    case GroupDescriptor::Kind::Finite: return "finite";
    case GroupDescriptor::Kind::Rationals: return "rationals";
    case GroupDescriptor::Kind::FpVector: return "fp_vector";
    case GroupDescriptor::Kind::FinitelyGenerated: return "finitely_generated";
  }
  return "?";
}

std::string lim_kind_tag(LimClass::Kind k) {
  switch (k) {
    case LimClass::Kind::Zero: return "zero";
    case LimClass::Kind::IsomorphicTo: return "isomorphic_to";
    case LimClass::Kind::SubgroupOfSeries: return "subgroup_of_series";
    case LimClass::Kind::SequenceSpace: return "sequence_space";
    case LimClass::Kind::Unknown: return "unknown";
  }
  return "?";
}

std::string r1_kind_tag(R1Class::Kind k) {
  switch (k) {
    case R1Class::Kind::Zero: return "zero";
    case R1Class::Kind::HatZModZPower: return "hat_z_mod_z_power";
    case R1Class::Kind::ExtQSymbolic: return "ext_q";
    case R1Class::Kind::Unknown: return "unknown";
  }
  return "?";
}

Json int_strings(const std::vector<Int>& v) {
  Json arr = Json::array();
  for (const Int& x : v) arr.push_back(x.get_str());
  return arr;
}

Json rat_strings(const std::vector<Rat>& v) {
  Json arr = Json::array();
  for (const Rat& x : v) arr.push_back(rat_str(x));
  return arr;
}

}  // namespace

Json to_json(const TruncSeries& f) {
  Json arr = Json::array();
  for (int i = 0; i <= f.order(); ++i) arr.push_back(rat_str(f.coeff(i)));
  return arr;
}

Json to_json(const WeightedPoly& p) {
  Json arr = Json::array();
  for (const auto& [m, c] : p.terms()) {
    Json t;
    t["exponents"] = m;
    t["coefficient"] = rat_str(c);
    arr.push_back(std::move(t));
  }
  return arr;
}

Json to_json(const NilPoly& p) {
  Json out;
  out["dims"] = p.space().dims;
  Json terms = Json::array();
  for (const auto& [m, c] : p.terms()) {
    Json t;
    t["exponents"] = m;
    t["coefficient"] = rat_str(c);
    terms.push_back(std::move(t));
  }
  out["terms"] = std::move(terms);
  return out;
}

Json to_json(const SplitElement& x) {
  Json out;
  out["dims"] = x.space().dims;
  Json terms = Json::array();
  for (const auto& [a, c] : x.terms()) {
    Json t;
    t["a"] = a;
    t["c"] = rat_str(c);
    terms.push_back(std::move(t));
  }
  out["terms"] = std::move(terms);
  return out;
}

Json to_json(const GammaSeries& g) {
  Json out;
  out["weight_bound"] = g.weight_bound();
  out["domain"] = g.dom.name();
  out["unit_base"] = rat_str(g.unitBase);
  out["rank_constant"] = rat_strings(g.rankConstant);
  out["poly"] = to_json(g.poly);
  return out;
}

Json to_json(const StableElement& e) {
  Json out;
  out["window_radius"] = e.window_radius();
  out["truncation"] = e.truncation();
  Json w = Json::array();
  for (const auto& [m, c] : e.window()) {
    Json t;
    t["m"] = m;
    t["c"] = rat_str(c);
    w.push_back(std::move(t));
  }
  out["window"] = std::move(w);
  return out;
}

Json to_json(const OmegaLift& l) {
  Json out;
  out["ok"] = l.ok;
  if (l.ok)
    out["lift"] = to_json(l.lift);
  else
    out["obstruction"] = l.obstruction;
  out["note"] = l.note;
  return out;
}

Json to_json(const TowerLift& l) {
  Json out;
  out["ok"] = l.ok;
  if (!l.ok) out["obstruction_depth"] = l.obstructionDepth;
  Json chain = Json::array();
  for (const TruncSeries& g : l.chain) chain.push_back(to_json(g));
  out["chain"] = std::move(chain);
  out["note"] = l.note;
  return out;
}

Json to_json(const GroupDescriptor& g) {
  Json out;
  out["kind"] = group_kind_tag(g.kind);
  switch (g.kind) {
    case GroupDescriptor::Kind::FreeAbelian:
      out["rank"] = g.rank;
      break;
    case GroupDescriptor::Kind::Finite:
      out["invariant_factors"] = int_strings(g.invariantFactors);
      break;
    case GroupDescriptor::Kind::Rationals:
      break;
    case GroupDescriptor::Kind::FpVector:
      out["p"] = g.p.get_str();
      out["dim"] = g.dim;
      break;
    case GroupDescriptor::Kind::FinitelyGenerated:
      out["rank"] = g.rank;
      out["invariant_factors"] = int_strings(g.invariantFactors);
      break;
  }
  out["display"] = g.str();
  return out;
}

Json to_json(const LimReport& r) {
  Json out;
  out["mittag_leffler"] = ml_str(r.ml);
  Json lim;
  lim["kind"] = lim_kind_tag(r.lim.kind);
  if (r.lim.kind == LimClass::Kind::IsomorphicTo) lim["group"] = to_json(r.lim.iso);
  if (!r.lim.detail.empty()) lim["detail"] = r.lim.detail;
  lim["display"] = lim_class_str(r.lim);
  out["lim"] = std::move(lim);
  Json r1;
  r1["kind"] = r1_kind_tag(r.r1lim.kind);
  if (r.r1lim.kind == R1Class::Kind::HatZModZPower) r1["power"] = r.r1lim.power;
  if (r.r1lim.kind == R1Class::Kind::ExtQSymbolic) r1["arg"] = to_json(r.r1lim.arg);
  if (!r.r1lim.detail.empty()) r1["detail"] = r.r1lim.detail;
  r1["display"] = r1_class_str(r.r1lim);
  out["r1lim"] = std::move(r1);
  out["evidence"] = r.evidence;
  if (!r.components.empty()) {
    Json comps = Json::array();
    for (const LimReport& c : r.components) comps.push_back(to_json(c));
    out["components"] = std::move(comps);
  }
  return out;
}

namespace {

GroupDescriptor group_from_json(const Json& j) {
  std::string kind = j.at("kind").get<std::string>();
  auto factors = [&j] {
    std::vector<Int> out;
    for (const auto& s : j.at("invariant_factors")) out.emplace_back(s.get<std::string>());
    return out;
  };
  if (kind == "free_abelian") return GroupDescriptor::free_abelian(j.at("rank").get<unsigned>());
  if (kind == "finite") return GroupDescriptor::finite(factors());
  if (kind == "rationals") return GroupDescriptor::rationals();
  if (kind == "fp_vector")
    return GroupDescriptor::fp_vector(Int(j.at("p").get<std::string>()),
                                      j.at("dim").get<unsigned>());
  if (kind == "finitely_generated")
    return GroupDescriptor::finitely_generated(j.at("rank").get<unsigned>(), factors());
  throw InputError("group descriptor JSON has unknown kind " + kind);
}

}  // namespace

LimReport lim_report_from_json(const Json& j) {
  LimReport r;
  std::string ml = j.at("mittag_leffler").get<std::string>();
  r.ml = ml == "yes" ? MittagLeffler::Yes
                     : (ml == "no" ? MittagLeffler::No : MittagLeffler::Unknown);

  const Json& lim = j.at("lim");
  std::string lk = lim.at("kind").get<std::string>();
  if (lk == "zero") r.lim.kind = LimClass::Kind::Zero;
  else if (lk == "isomorphic_to") {
    r.lim.kind = LimClass::Kind::IsomorphicTo;
    r.lim.iso = group_from_json(lim.at("group"));
  } else if (lk == "subgroup_of_series") r.lim.kind = LimClass::Kind::SubgroupOfSeries;
  else if (lk == "sequence_space") r.lim.kind = LimClass::Kind::SequenceSpace;
  else if (lk == "unknown") r.lim.kind = LimClass::Kind::Unknown;
  else throw InputError("lim class JSON has unknown kind " + lk);
  if (lim.contains("detail")) r.lim.detail = lim.at("detail").get<std::string>();

  const Json& r1 = j.at("r1lim");
  std::string rk = r1.at("kind").get<std::string>();
  if (rk == "zero") r.r1lim.kind = R1Class::Kind::Zero;
  else if (rk == "hat_z_mod_z_power") {
    r.r1lim.kind = R1Class::Kind::HatZModZPower;
    r.r1lim.power = r1.at("power").get<unsigned>();
  } else if (rk == "ext_q") {
    r.r1lim.kind = R1Class::Kind::ExtQSymbolic;
    r.r1lim.arg = group_from_json(r1.at("arg"));
  } else if (rk == "unknown") r.r1lim.kind = R1Class::Kind::Unknown;
  else throw InputError("R^1 lim class JSON has unknown kind " + rk);
  if (r1.contains("detail")) r.r1lim.detail = r1.at("detail").get<std::string>();

  r.evidence = j.at("evidence").get<std::vector<std::string>>();
  if (j.contains("components"))
    for (const Json& c : j.at("components")) r.components.push_back(lim_report_from_json(c));
  return r;
}

Json to_json(const MilnorReport& r) {
  Json out;
  out["i"] = r.i;
  out["phantom_free"] = r.phantomFree;
  out["summary"] = r.summary;
  out["phantom_part"] = to_json(r.phantomPart);
  out["lim_part"] = to_json(r.limPart);
  return out;
}

Json to_json(const CheckReport& r) {
  Json out;
  out["claim"] = r.claim;
  out["lhs"] = r.lhs;
  out["rhs"] = r.rhs;
  out["equal"] = r.equal;
  out["trace"] = r.trace;
  return out;
}

Json to_json(const AxiomReport& r) {
  Json out;
  out["pass"] = r.pass;
  out["failures"] = r.failures;
  out["dual_lambda_commutes"] = r.dual_lambda_commutes;
  if (!r.dual_lambda_note.empty()) out["dual_lambda_note"] = r.dual_lambda_note;
  return out;
}

Json to_json(const EndoClassification& c) {
  Json out;
  out["is_psi_form"] = c.is_psi_form;
  if (c.is_psi_form) out["exponent"] = c.exponent;
  out["functional_eq_holds"] = c.functional_eq_holds;
  if (!c.functional_eq_holds) {
    Json w;
    w["i"] = c.witness_i;
    w["j"] = c.witness_j;
    w["lhs"] = rat_str(c.lhs_coeff);
    w["rhs"] = rat_str(c.rhs_coeff);
    out["witness"] = std::move(w);
  }
  out["note"] = c.note;
  return out;
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += "\"\"";
    else out += ch;
  }
  out += "\"";
  return out;
}

}  // namespace

std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ",";
    out += csv_escape(fields[i]);
  }
  out += "\n";
  return out;
}

std::string to_csv(const std::vector<std::string>& header,
                   const std::vector<std::vector<std::string>>& rows) {
  std::string out = csv_row(header);
  for (const auto& r : rows) out += csv_row(r);
  return out;
}

}  // namespace lf
