#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "sppe/equilibrium.hpp"
#include "sppe/good_types.hpp"
#include "sppe/instance.hpp"
#include "sppe/solver.hpp"
#include "sppe/verifier.hpp"

namespace sppe::io {

using Json = nlohmann::ordered_json;

// Integers, decimal strings and "p/q" strings. Floating-point JSON numbers
// are rejected because they are not exact.
Rat rat_from_json(const Json& value);
Json rat_to_json(const Rat& value);

// {"n":int,"m":int,"valuations":[[rat,...],...],"budgets":[rat,...]}
RawInstance raw_instance_from_json(const Json& doc);
Instance instance_from_json(const Json& doc);
Json instance_to_json(const Instance& inst);

// {"alpha","x","prices","lambda","payments","zero_value_goods"} with
// rationals as strings and 1-based good indices.
Json equilibrium_to_json(const Equilibrium& eq);
Json stats_to_json(const RunStats& stats);

struct Allocation {
  RatVector alpha;
  RatMatrix x;
};
// Reads "alpha" and "x" from an equilibrium document; other keys ignored.
Allocation allocation_from_json(const Json& doc);

Json report_to_json(const VerificationReport& report);
Json partition_to_json(const TypePartition& part);

Json read_json_file(const std::string& path);

}  // namespace sppe::io
