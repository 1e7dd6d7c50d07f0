#pragma once

#include "json.hpp"

#include "tropkit/closed_subset.hpp"
#include "tropkit/divisor.hpp"
#include "tropkit/tropical.hpp"

#include <map>
#include <string>
#include <vector>

namespace tropkit::cli {

using json = nlohmann::json;

// Graph file: the graph, named divisors and named systems (lists of divisor names).
struct Workspace {
    GraphHandle graph;
    std::map<std::string, Divisor> divisors;
    std::map<std::string, std::vector<std::string>> systems;
};

// Tropical projective space file: ground set, weights, named points and
// named point sets.
struct SpaceFile {
    GroundSpace space{std::vector<std::string>{"e1"}};
    std::map<std::string, TropPoint> points;
    std::map<std::string, std::vector<std::string>> sets;
};

// All parsers throw Error(invalid_input) with a JSON-path location.
json read_json_file(const std::string& path);

Rational rational_from_json(const json& j, const std::string& where);
json rational_to_json(const Rational& r);

GraphPoint point_from_json(const MetricGraph& g, const json& j, const std::string& where);
json point_to_json(const MetricGraph& g, const GraphPoint& p);

// [[point, coefficient], ...] in point order.
Divisor divisor_from_json(const MetricGraph& g, const json& j, const std::string& where);
json divisor_to_json(const MetricGraph& g, const Divisor& d);

json subset_to_json(const MetricGraph& g, const ClosedSubset& s);

TropPoint trop_point_from_json(const json& j, std::size_t size, const std::string& where);
json trop_point_to_json(const TropPoint& p);

Workspace workspace_from_json(const json& j);
json workspace_to_json(const Workspace& w);

SpaceFile space_from_json(const json& j);
json space_to_json(const SpaceFile& s);

} // namespace tropkit::cli
