#pragma once

#include <json.hpp>

#include "icbargain/aobg.hpp"
#include "icbargain/bargain.hpp"
#include "icbargain/channel.hpp"
#include "icbargain/gdof.hpp"
#include "icbargain/nbs.hpp"
#include "icbargain/regions.hpp"

// JSON views of the result types; field names are documented in
// docs/schema.md.
namespace icbargain {

using Json = nlohmann::ordered_json;

Json to_json(const Payoff& p);
Json to_json(const ChannelParams& ch);
Json to_json(const Regime& r);
Json to_json(const PowerSplit& s);
Json to_json(const Polytope& region);
Json to_json(const Frontier& f);
Json to_json(const Condition& c);
Json to_json(const Phase1Outcome& out);
Json to_json(const RegularityReport& rep);
Json to_json(const NbsResult& res);
Json to_json(const SpePair& spe);
Json to_json(const GameTrace& trace);
Json to_json(const GdofParams& theta);
Json to_json(const GdofRegion& region);

}  // namespace icbargain
