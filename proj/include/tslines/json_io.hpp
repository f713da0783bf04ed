#pragma once

// JSON encodings shared by the CLI and the Python module.
//
// Field format: {"terms": [{"m":..,"n":..,"re":..,"im":..}, ...], "real": bool}
// or a bare array of term records. Doubles round-trip bit-exactly.

#include <json.hpp>

#include "tslines/blowup.hpp"
#include "tslines/cpoints.hpp"
#include "tslines/euclid.hpp"
#include "tslines/ledger.hpp"
#include "tslines/sections.hpp"

namespace tslines {

using Json = nlohmann::json;

Json to_json(Complex z);
Complex complex_from_json(const Json& j);

Json to_json(const MonomialField& f);
MonomialField field_from_json(const Json& j);

/// {"num": field, "den_power": p}; a bare field means den_power 0.
Json to_json(const RationalField& f);
RationalField rational_from_json(const Json& j);

Json to_json(const ComplexPointReport& r);
Json to_json(const SeamReport& r);
Json to_json(const CertificationReport& r);
Json to_json(const GCriticalReport& r);
Json to_json(const C2Constants& k);
Json to_json(const Poly2& p);
Json to_json(const TopLedger& l);
Json to_json(const ScenarioReport& r);
Json to_json(const UmbilicReport& r);

}  // namespace tslines
