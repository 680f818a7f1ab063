// SPDX-License-Identifier: Apache-2.0
//
// JSON documents exchanged with scripts:
//
//   IntervalSet   {"domain": "segment"|"torus", "L": 12, "intervals": [[l, r], ...]}
//   energies, ground states, excess results and verification records as
//   flat objects with explicit field names.
#pragma once

#include <string_view>

#include <json.hpp>

#include "ldm/exact.hpp"
#include "ldm/model.hpp"
#include "ldm/oracle.hpp"

namespace ldm::io {

using Json = nlohmann::json;

/// Throws ParseError on malformed documents; model errors propagate.
IntervalSet interval_set_from_json(const Json& doc);
IntervalSet parse_interval_set(std::string_view text);
Json to_json(const IntervalSet& set);

Json to_json(const ModelParams& params);
Json to_json(const EnergyBreakdown& e);
Json to_json(const exact::GroundState& gs);
Json to_json(const exact::ExcessResult& r);
Json to_json(const exact::AsymptoticData& a);
Json to_json(const oracle::VerificationRecord& rec);

}  // namespace ldm::io
