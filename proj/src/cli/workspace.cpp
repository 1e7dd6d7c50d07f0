#include "tropkit/cli/workspace.hpp"

#include "tropkit/errors.hpp"

#include <fstream>

namespace tropkit::cli {

namespace {

[[noreturn]] void fail(const std::string& message, const std::string& where)
{
    throw Error(ErrorCode::invalid_input, message, where);
}

const json& field(const json& j, const char* key, const std::string& where)
{
    if (!j.is_object() || !j.contains(key)) {
        fail(std::string("missing field '") + key + "'", j.is_object() ? where + "." + key : where);
    }
    return j.at(key);
}

std::string string_at(const json& j, const std::string& where)
{
    if (!j.is_string()) {
        fail("expected a string", where);
    }
    return j.get<std::string>();
}

std::vector<std::string> names_at(const json& j, const std::string& where)
{
    if (!j.is_array()) {
        fail("expected an array of names", where);
    }
    std::vector<std::string> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(string_at(j[i], where + "[" + std::to_string(i) + "]"));
    }
    return out;
}

void check_version(const json& j)
{
    const json& v = field(j, "schema_version", "$");
    if (!v.is_number_integer() || v.get<long>() != 1) {
        fail("unsupported schema_version", "$.schema_version");
    }
}

} // namespace

json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        fail("cannot open file", path);
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        fail(std::string("malformed JSON: ") + e.what(), path);
    }
}

Rational rational_from_json(const json& j, const std::string& where)
{
    if (j.is_number_integer()) {
        return Rational(j.get<long>());
    }
    if (!j.is_string()) {
        fail("expected a rational as an integer or a \"p/q\" string", where);
    }
    try {
        return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
        fail(e.what(), where);
    }
}

json rational_to_json(const Rational& r) { return format_rational(r); }

GraphPoint point_from_json(const MetricGraph& g, const json& j, const std::string& where)
{
    try {
        if (j.is_object() && j.contains("vertex")) {
            return g.vertex_point(string_at(j.at("vertex"), where + ".vertex"));
        }
        if (j.is_object() && j.contains("edge")) {
            return g.edge_point(string_at(j.at("edge"), where + ".edge"),
                                rational_from_json(field(j, "offset", where), where + ".offset"));
        }
    } catch (const Error& e) {
        fail(e.what(), e.location().empty() ? where : e.location());
    }
    fail("a point is {\"vertex\": name} or {\"edge\": id, \"offset\": r}", where);
}

json point_to_json(const MetricGraph& g, const GraphPoint& p)
{
    const PointPosition pos = g.position(p);
    if (pos.is_vertex) {
        return {{"vertex", pos.name}};
    }
    return {{"edge", pos.name}, {"offset", rational_to_json(pos.offset)}};
}

Divisor divisor_from_json(const MetricGraph& g, const json& j, const std::string& where)
{
    if (!j.is_array()) {
        fail("a divisor is an array of [point, coefficient] pairs", where);
    }
    Divisor d;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string at = where + "[" + std::to_string(i) + "]";
        if (!j[i].is_array() || j[i].size() != 2) {
            fail("expected [point, coefficient]", at);
        }
        d.add(point_from_json(g, j[i][0], at + "[0]"), rational_from_json(j[i][1], at + "[1]"));
    }
    return d;
}

json divisor_to_json(const MetricGraph& g, const Divisor& d)
{
    json out = json::array();
    for (const auto& [p, c] : d.terms()) {
        out.push_back(json::array({point_to_json(g, p), rational_to_json(c)}));
    }
    return out;
}

json subset_to_json(const MetricGraph& g, const ClosedSubset& s)
{
    json vertices = json::array();
    for (std::size_t v = 0; v < s.vertex_count(); ++v) {
        if (s.has_vertex(v)) {
            vertices.push_back(g.vertex_name(v));
        }
    }
    json intervals = json::array();
    for (std::size_t e = 0; e < s.edge_count(); ++e) {
        for (const auto& iv : s.intervals(e)) {
            intervals.push_back({{"edge", g.edge(e).id}, {"lo", rational_to_json(iv.lo)}, {"hi", rational_to_json(iv.hi)}});
        }
    }
    return {{"vertices", vertices}, {"intervals", intervals}, {"covers_graph", s.covers(g)}};
}

TropPoint trop_point_from_json(const json& j, std::size_t size, const std::string& where)
{
    if (!j.is_array() || j.size() != size) {
        fail("expected an array of " + std::to_string(size) + " rationals", where);
    }
    std::vector<Rational> raw;
    for (std::size_t i = 0; i < j.size(); ++i) {
        raw.push_back(rational_from_json(j[i], where + "[" + std::to_string(i) + "]"));
    }
    return TropPoint(std::move(raw));
}

json trop_point_to_json(const TropPoint& p)
{
    json out = json::array();
    for (const auto& c : p.coords()) {
        out.push_back(rational_to_json(c));
    }
    return out;
}

Workspace workspace_from_json(const json& j)
{
    check_version(j);
    const auto vertices = names_at(field(j, "vertices", "$"), "$.vertices");
    const json& edges_json = field(j, "edges", "$");
    if (!edges_json.is_array()) {
        fail("expected an array of edges", "$.edges");
    }
    std::vector<EdgeSpec> edges;
    for (std::size_t i = 0; i < edges_json.size(); ++i) {
        const std::string at = "$.edges[" + std::to_string(i) + "]";
        const json& e = edges_json[i];
        edges.push_back({string_at(field(e, "id", at), at + ".id"), string_at(field(e, "tail", at), at + ".tail"),
                         string_at(field(e, "head", at), at + ".head"),
                         rational_from_json(field(e, "length", at), at + ".length")});
    }
    Workspace w;
    try {
        w.graph = std::make_shared<const MetricGraph>(MetricGraph::build(vertices, edges));
    } catch (const Error& e) {
        fail(e.what(), e.location().empty() ? "$" : "$." + e.location());
    }
    if (j.contains("divisors")) {
        const json& ds = j.at("divisors");
        if (!ds.is_object()) {
            fail("expected an object of named divisors", "$.divisors");
        }
        for (const auto& [name, value] : ds.items()) {
            w.divisors[name] = divisor_from_json(*w.graph, value, "$.divisors." + name);
        }
    }
    if (j.contains("systems")) {
        const json& ss = j.at("systems");
        if (!ss.is_object()) {
            fail("expected an object of named systems", "$.systems");
        }
        for (const auto& [name, value] : ss.items()) {
            const std::string at = "$.systems." + name;
            auto members = names_at(value, at);
            for (std::size_t i = 0; i < members.size(); ++i) {
                if (!w.divisors.count(members[i])) {
                    fail("unknown divisor '" + members[i] + "'", at + "[" + std::to_string(i) + "]");
                }
            }
            w.systems[name] = std::move(members);
        }
    }
    return w;
}

json workspace_to_json(const Workspace& w)
{
    const MetricGraph& g = *w.graph;
    json edges = json::array();
    for (const auto& e : g.original_edges()) {
        edges.push_back({{"id", e.id}, {"tail", e.tail}, {"head", e.head}, {"length", rational_to_json(e.length)}});
    }
    json divisors = json::object();
    for (const auto& [name, d] : w.divisors) {
        divisors[name] = divisor_to_json(g, d);
    }
    json systems = json::object();
    for (const auto& [name, members] : w.systems) {
        systems[name] = members;
    }
    return {{"schema_version", 1}, {"vertices", g.original_vertices()}, {"edges", edges},
            {"divisors", divisors}, {"systems", systems}};
}

SpaceFile space_from_json(const json& j)
{
    const auto ground = names_at(field(j, "ground", "$"), "$.ground");
    if (ground.empty()) {
        fail("ground set is empty", "$.ground");
    }
    SpaceFile s;
    try {
        if (j.contains("weights")) {
            const json& wj = j.at("weights");
            if (!wj.is_array() || wj.size() != ground.size()) {
                fail("expected one weight per ground element", "$.weights");
            }
            std::vector<Rational> weights;
            for (std::size_t i = 0; i < wj.size(); ++i) {
                weights.push_back(rational_from_json(wj[i], "$.weights[" + std::to_string(i) + "]"));
            }
            s.space = GroundSpace(ground, weights);
        } else {
            s.space = GroundSpace(ground);
        }
    } catch (const Error& e) {
        fail(e.what(), e.location().empty() ? "$.weights" : e.location());
    }
    if (j.contains("points")) {
        for (const auto& [name, value] : j.at("points").items()) {
            s.points[name] = trop_point_from_json(value, ground.size(), "$.points." + name);
        }
    }
    if (j.contains("sets")) {
        for (const auto& [name, value] : j.at("sets").items()) {
            const std::string at = "$.sets." + name;
            auto members = names_at(value, at);
            for (std::size_t i = 0; i < members.size(); ++i) {
                if (!s.points.count(members[i])) {
                    fail("unknown point '" + members[i] + "'", at + "[" + std::to_string(i) + "]");
                }
            }
            s.sets[name] = std::move(members);
        }
    }
    return s;
}

json space_to_json(const SpaceFile& s)
{
    json weights = json::array();
    for (const auto& w : s.space.weights()) {
        weights.push_back(rational_to_json(w));
    }
    json points = json::object();
    for (const auto& [name, p] : s.points) {
        points[name] = trop_point_to_json(p);
    }
    json sets = json::object();
    for (const auto& [name, members] : s.sets) {
        sets[name] = members;
    }
    return {{"schema_version", 1}, {"ground", s.space.labels()}, {"weights", weights}, {"points", points}, {"sets", sets}};
}

} // namespace tropkit::cli
