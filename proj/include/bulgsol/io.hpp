#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "bulgsol/dynamics.hpp"
#include "bulgsol/partition.hpp"
#include "bulgsol/shapes.hpp"
#include "bulgsol/sigma_rule.hpp"

namespace bulgsol {

using Json = nlohmann::json;

// Partition JSON: {"parts":[7,3,2]}
Json partition_to_json(const Partition& p);
Partition partition_from_json(const Json& j);

// Rule JSON: {"type":"q","q":"3/10"} | {"type":"table","sigma":[...]} |
//            {"type":"levels","H":[1,4],"h_max":7}
Json rule_to_json(const SigmaRule& rule);
SigmaRule rule_from_json(const Json& j);

// CycleInfo JSON: {"tail":t,"period":k,"cycle":[[...],...]}
Json cycle_to_json(const CycleInfo& info);

Json shape_to_json(const LimitShape& shape);
LimitShape shape_from_json(const Json& j);

/// Rule literals: "q:3/10", "levels:1,4@7", "table:1,1,2", or a path to a
/// rule JSON file.
SigmaRule parse_rule_spec(const std::string& text);

/// Comma-separated descending pile sizes, e.g. "7,3,2"; empty string is the
/// empty partition.
Partition parse_partition_literal(const std::string& text);

void write_trajectory_jsonl(std::ostream& os, const std::vector<TrajectoryEntry>& trajectory);

// CSV "x,y" boundary samples, ascending in x.
void write_boundary_csv(std::ostream& os, const Partition& p, std::int64_t n,
                        const std::vector<double>& grid);

// CSV "t,surplus,deficit".
void write_trace_csv(std::ostream& os, const std::vector<std::pair<std::int64_t, std::int64_t>>& trace);

// CSV "x,empirical,analytic,abs_error" with a trailing "# sup_error=..." line.
void write_distance_csv(std::ostream& os, const Partition& p, std::int64_t n, const LimitShape& shape,
                        const ShapeDistance& distance);

} // namespace bulgsol
