#pragma once

#include "padic/dsl.hpp"
#include "padic/hensel.hpp"
#include "padic/padic_int.hpp"
#include "padic/vdp_multi.hpp"
#include "padic/vdp_uni.hpp"

#include <json.hpp>

namespace padic::io {

using Json = nlohmann::ordered_json;

/// Integers below 2^63 become JSON numbers, larger ones decimal strings.
Json to_json(const Natural& value);
Natural natural_from_json(const Json& j);

/// {"p":3,"precision":4,"digits":[1,0,1,0]}
Json to_json(const PadicInt& x);
PadicInt padic_from_json(const Json& j);

Json to_json(const Norm& norm);

/// {"arity":1,"alpha":[0],"body":"..."}
Json to_json(const dsl::FuncDef& def);
dsl::FuncDef funcdef_from_json(const Json& j);

/// {"p":7,"K":2,"N":12,"B":[[digits],...]} indexed by m.
Json to_json(const VdpTable1& table);
VdpTable1 table1_from_json(const Json& j);

/// {"p":3,"n":2,"K":2,"N":8,"A":{"(m1,m2)":[digits],...}}
Json to_json(const VdpTableN& table);
VdpTableN tableN_from_json(const Json& j);

Json to_json(const LiftTrace& trace);

Json to_json(const SampledLipReport& report);
Json to_json(const ProjectionReport& report);
Json to_json(const dsl::WellDefinedReport& report);
Json to_json(const ResidueCheckReport& report);

}  // namespace padic::io
