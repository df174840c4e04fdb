#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "lambda_forge/lambda_k.hpp"
#include "lambda_forge/op_ring.hpp"
#include "lambda_forge/riemann_roch.hpp"
#include "lambda_forge/towers.hpp"

namespace lf {

// ordered_json keeps the field order stable, so identical runs emit
// byte-identical output
using Json = nlohmann::ordered_json;

// exact scalars serialize as decimal strings "p" or "p/q" throughout

Json to_json(const TruncSeries& f);    // array of coefficient strings
Json to_json(const WeightedPoly& p);   // sorted [{exponents, coefficient}]
Json to_json(const NilPoly& p);        // {dims, terms: [{exponents, coefficient}]}
Json to_json(const SplitElement& x);   // {dims, terms: [{a, c}]}
Json to_json(const GammaSeries& g);
Json to_json(const StableElement& e);
Json to_json(const OmegaLift& l);
Json to_json(const TowerLift& l);
Json to_json(const GroupDescriptor& g);
Json to_json(const LimReport& r);
// inverse of to_json(LimReport); "display" fields are recomputed, not read
LimReport lim_report_from_json(const Json& j);
Json to_json(const MilnorReport& r);
Json to_json(const CheckReport& r);    // {claim, lhs, rhs, equal, trace}
Json to_json(const AxiomReport& r);
Json to_json(const EndoClassification& c);

// RFC-style quoting: fields with commas, quotes or newlines are wrapped
std::string csv_row(const std::vector<std::string>& fields);
std::string to_csv(const std::vector<std::string>& header,
                   const std::vector<std::vector<std::string>>& rows);

}  // namespace lf
