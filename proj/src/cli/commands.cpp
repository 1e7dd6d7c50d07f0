#include "tropkit/cli/commands.hpp"

#include "CLI11.hpp"

#include "tropkit/cli/workspace.hpp"
#include "tropkit/dhar.hpp"
#include "tropkit/errors.hpp"
#include "tropkit/harmonic.hpp"
#include "tropkit/independence.hpp"

#include <deque>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

namespace tropkit::cli {

namespace {

struct Options {
    std::string file;
    std::string graph;
    std::string space;
    std::string system;
    std::vector<std::string> divisors;
    std::string at;
    std::string t;
    std::string mode = "lower";
    std::string generators;
    std::string point;
    std::string kind = "tropical";
    std::string exponent = "1";
    std::string degree;
    std::size_t samples = 3;
    std::string out;
    std::string format = "json";
    std::uint64_t seed = 1;
    bool serial = false;
};

// What a command produced. Predicates put their report on stdout; value
// commands print the value and keep the full report for --out.
struct Outcome {
    json printed;
    json report;
    int code = exit_ok;
    std::optional<std::string> text; // csv or dot instead of json
};

Outcome value(json v, json report = nullptr)
{
    Outcome o;
    o.printed = v;
    o.report = report.is_null() ? json{{"value", v}} : std::move(report);
    return o;
}

Outcome predicate(bool holds, json certificate, const std::string& message)
{
    Outcome o;
    o.printed = {{"holds", holds}, {"certificate", std::move(certificate)}, {"message", message}};
    o.report = o.printed;
    o.code = holds ? exit_ok : exit_false;
    return o;
}

[[noreturn]] void usage(const std::string& message, const std::string& where = {})
{
    throw Error(ErrorCode::invalid_input, message, where);
}

Execution policy(const Options& o) { return o.serial ? Execution::serial : Execution::parallel; }

Mode mode_of(const Options& o)
{
    if (o.mode == "lower") {
        return Mode::lower;
    }
    if (o.mode == "upper") {
        return Mode::upper;
    }
    usage("--mode must be lower or upper", "--mode");
}

Rational rational_option(const std::string& text, const std::string& flag)
{
    if (text.empty()) {
        usage(flag + " is required", flag);
    }
    try {
        return parse_rational(text);
    } catch (const Error& e) {
        usage(e.what(), flag);
    }
}

json parse_inline(const std::string& text, const std::string& flag)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error&) {
        usage("malformed inline JSON", flag);
    }
}

// ---- graph workspaces -------------------------------------------------------

Workspace load_workspace(const std::string& path)
{
    if (path.empty()) {
        usage("--graph is required", "--graph");
    }
    return workspace_from_json(read_json_file(path));
}

Divisor resolve_divisor(const Workspace& w, const std::string& text)
{
    if (!text.empty() && text.front() == '[') {
        return divisor_from_json(*w.graph, parse_inline(text, "--divisor"), "--divisor");
    }
    const auto it = w.divisors.find(text);
    if (it == w.divisors.end()) {
        usage("unknown divisor '" + text + "'", "--divisor");
    }
    return it->second;
}

const Divisor& nth_divisor(const Workspace& w, const Options& o, std::size_t n, std::deque<Divisor>& cache)
{
    if (o.divisors.size() <= n) {
        usage("this command needs " + std::to_string(n + 1) + " --divisor option(s)", "--divisor");
    }
    while (cache.size() <= n) {
        cache.push_back(resolve_divisor(w, o.divisors[cache.size()]));
    }
    return cache[n];
}

GraphPoint resolve_point(const MetricGraph& g, const std::string& text)
{
    if (text.empty()) {
        usage("--at is required", "--at");
    }
    if (text.front() == '{') {
        return point_from_json(g, parse_inline(text, "--at"), "--at");
    }
    try {
        return g.vertex_point(text);
    } catch (const Error& e) {
        usage(e.what(), "--at");
    }
}

struct NamedSystem {
    std::vector<std::string> names;
    LinearSystem system;
};

NamedSystem load_system(const Workspace& w, const Options& o)
{
    if (o.system.empty()) {
        usage("--system is required", "--system");
    }
    const auto it = w.systems.find(o.system);
    if (it == w.systems.end()) {
        usage("unknown system '" + o.system + "'", "--system");
    }
    std::vector<Divisor> gens;
    for (const auto& name : it->second) {
        gens.push_back(w.divisors.at(name));
    }
    try {
        return {it->second, LinearSystem::build(w.graph, std::move(gens), policy(o))};
    } catch (const Error& e) {
        throw Error(e.code(), e.what(), "$.systems." + o.system);
    }
}

json subsets_to_json(const MetricGraph& g, const std::vector<ClosedSubset>& sets)
{
    json out = json::array();
    for (const auto& s : sets) {
        out.push_back(subset_to_json(g, s));
    }
    return out;
}

// ---- tropical projective space ---------------------------------------------

SpaceFile load_space(const Options& o)
{
    if (o.space.empty()) {
        usage("--space is required", "--space");
    }
    return space_from_json(read_json_file(o.space));
}

TropPoint resolve_trop_point(const SpaceFile& s, const std::string& text, const std::string& flag)
{
    if (text.empty()) {
        usage(flag + " is required", flag);
    }
    if (text.front() == '[') {
        return trop_point_from_json(parse_inline(text, flag), s.space.size(), flag);
    }
    const auto it = s.points.find(text);
    if (it == s.points.end()) {
        usage("unknown point '" + text + "'", flag);
    }
    return it->second;
}

TropGeneratorSet resolve_generators(const SpaceFile& s, const Options& o)
{
    const std::string& text = o.generators;
    if (text.empty()) {
        usage("--generators is required", "--generators");
    }
    std::vector<TropPoint> points;
    if (text.front() == '[') {
        const json j = parse_inline(text, "--generators");
        if (!j.is_array() || j.empty()) {
            usage("expected a nonempty array of points", "--generators");
        }
        for (std::size_t i = 0; i < j.size(); ++i) {
            points.push_back(trop_point_from_json(j[i], s.space.size(), "--generators[" + std::to_string(i) + "]"));
        }
    } else if (const auto set = s.sets.find(text); set != s.sets.end()) {
        for (const auto& name : set->second) {
            points.push_back(s.points.at(name));
        }
    } else {
        std::stringstream in(text);
        std::string name;
        while (std::getline(in, name, ',')) {
            points.push_back(resolve_trop_point(s, name, "--generators"));
        }
    }
    return TropGeneratorSet(std::move(points), mode_of(o));
}

json labels_of(const GroundSpace& space, const ArgSet& set)
{
    json out = json::array();
    for (std::size_t i : set.indices()) {
        out.push_back(space.labels()[i]);
    }
    return out;
}

json points_json(const std::vector<TropPoint>& points)
{
    json out = json::array();
    for (const auto& p : points) {
        out.push_back(trop_point_to_json(p));
    }
    return out;
}

json rationals_json(const std::vector<Rational>& values)
{
    json out = json::array();
    for (const auto& v : values) {
        out.push_back(rational_to_json(v));
    }
    return out;
}

Outcome tp_project_cmd(const Options& o)
{
    const SpaceFile s = load_space(o);
    const TropGeneratorSet set = resolve_generators(s, o);
    const TropPoint gamma = resolve_trop_point(s, o.point, "--point");
    const Projection pr = tp_project(set, gamma, s.space);
    json cert = json::array();
    for (std::size_t i = 0; i < set.size(); ++i) {
        const auto& c = pr.certificate[i];
        cert.push_back({{"generator", trop_point_to_json(set.points()[i])},
                        {"b1_direct", rational_to_json(c.b1_direct)},
                        {"b1_via_image", rational_to_json(c.b1_via_image)},
                        {"contact", labels_of(s.space, c.contact)},
                        {"holds", c.holds()}});
    }
    const json point = trop_point_to_json(pr.point);
    return value(point, {{"value", point}, {"mode", o.mode}, {"coefficients", rationals_json(pr.coefficients)},
                         {"certificate", cert}});
}

Outcome tp_member_cmd(const Options& o)
{
    const SpaceFile s = load_space(o);
    const TropGeneratorSet set = resolve_generators(s, o);
    const TropPoint gamma = resolve_trop_point(s, o.point, "--point");
    const Membership m = tp_member(set, gamma);
    json cover = json::array();
    for (std::size_t i = 0; i < set.size(); ++i) {
        cover.push_back({{"generator", trop_point_to_json(set.points()[i])}, {"set", labels_of(s.space, m.cover[i])}});
    }
    return predicate(m.member, {{"cover", cover}, {"coefficients", rationals_json(m.coefficients)}},
                     m.member ? "point is in the hull" : "extremal sets miss part of the ground set");
}

Outcome tp_extremals_cmd(const Options& o)
{
    const SpaceFile s = load_space(o);
    return value(points_json(tp_extremals(resolve_generators(s, o))));
}

Outcome tp_independence_cmd(const Options& o)
{
    const SpaceFile s = load_space(o);
    const TropGeneratorSet set = resolve_generators(s, o);
    IndependenceKind kind;
    if (o.kind == "weak") {
        kind = IndependenceKind::weak;
    } else if (o.kind == "gm" || o.kind == "gondran-minoux") {
        kind = IndependenceKind::gondran_minoux;
    } else if (o.kind == "tropical") {
        kind = IndependenceKind::tropical;
    } else {
        usage("--kind must be weak, gm or tropical", "--kind");
    }
    const IndependenceReport r = tp_independence(set, kind);
    json cert = {{"generators", points_json(set.points())}, {"iterations", r.iterations}};
    if (r.redundant) {
        cert["redundant"] = *r.redundant;
    }
    if (!r.partition.empty()) {
        cert["partition"] = r.partition;
    }
    if (r.common_point) {
        cert["common_point"] = trop_point_to_json(*r.common_point);
    }
    if (!r.coefficients.empty()) {
        cert["coefficients"] = rationals_json(r.coefficients);
    }
    const char* status = r.status == IndependenceStatus::independent ? "independent"
                         : r.status == IndependenceStatus::dependent ? "dependent"
                                                                     : "undecided";
    cert["status"] = status;
    return predicate(r.status == IndependenceStatus::independent, cert, status);
}

Outcome tp_norm_cmd(const Options& o)
{
    const SpaceFile s = load_space(o);
    const TropPoint p = resolve_trop_point(s, o.point, "--point");
    Exponent e;
    if (o.exponent == "1") {
        e = Exponent::one;
    } else if (o.exponent == "2") {
        e = Exponent::two;
    } else if (o.exponent == "inf") {
        e = Exponent::infinity;
    } else {
        usage("--p must be 1, 2 or inf", "--p");
    }
    const PseudonormValue v = tp_pseudonorm(p, s.space, e, mode_of(o));
    if (v.exact) {
        return value(rational_to_json(v.value));
    }
    return value(v.approx);
}

// ---- divisors -----------------------------------------------------------------

Outcome div_equiv_cmd(const Options& o)
{
    const Workspace w = load_workspace(o.graph);
    std::deque<Divisor> d;
    const Divisor& a = nth_divisor(w, o, 0, d);
    const Divisor& b = nth_divisor(w, o, 1, d);
    const PLFunction f = mg_potential(*w.graph, a, b);
    const bool holds = pl_has_integral_slopes(f);
    return predicate(holds, {{"integral_slopes", holds}}, holds ? "linearly equivalent" : "a slope is not an integer");
}

Outcome div_rho_cmd(const Options& o)
{
    const Workspace w = load_workspace(o.graph);
    std::deque<Divisor> d;
    return value(rational_to_json(dv_rho(*w.graph, nth_divisor(w, o, 0, d), nth_divisor(w, o, 1, d))));
}

Outcome div_path_cmd(const Options& o)
{
    const Workspace w = load_workspace(o.graph);
    std::deque<Divisor> d;
    const DivisorPath path = dv_path_query(*w.graph, nth_divisor(w, o, 0, d), nth_divisor(w, o, 1, d));
    const json result = divisor_to_json(*w.graph, dv_path(*w.graph, path, rational_option(o.t, "--t")));
    return value(result, {{"value", result}, {"distance", rational_to_json(path.distance)}});
}

Outcome div_b1_cmd(const Options& o)
{
    const Workspace w = load_workspace(o.graph);
    std::deque<Divisor> d;
    const Divisor& from = nth_divisor(w, o, 0, d);
    const Divisor& to = nth_divisor(w, o, 1, d);
    const Rational v = mode_of(o) == Mode::lower ? dv_b1(*w.graph, to, from) : dv_b1_upper(*w.graph, to, from);
    return value(rational_to_json(v));
}

Outcome div_reduce_cmd(const Options& o)
{
    const Workspace w = load_workspace(o.graph);
    std::deque<Divisor> d;
    const GraphPoint q = resolve_point(*w.graph, o.at);
    const DharResult r = dv_dhar(*w.graph, nth_divisor(w, o, 0, d), q);
    const json result = divisor_to_json(*w.graph, r.divisor);
    return value(result, {{"value", result}, {"firings", r.firings}, {"burn_complete", true}});
}

// ---- linear systems -----------------------------------------------------------

Outcome sys_member_cmd(const Options& o)
{
    const Workspace w = load_workspace(o.graph);
    const NamedSystem s = load_system(w, o);
    std::deque<Divisor> d;
    const MembershipReport m = ls_member(s.system, nth_divisor(w, o, 0, d));
    json sets = json::object();
    for (std::size_t i = 0; i < s.names.size(); ++i) {
        sets[s.names[i]] = subset_to_json(*w.graph, m.sets[i]);
    }
    return predicate(m.member, {{"minimizer_sets", sets}, {"union", subset_to_json(*w.graph, m.cover)}},
                     m.member ? "minimizer sets cover the graph" : "minimizer sets miss part of the graph");
}

json projection_report(const Workspace& w, const NamedSystem& s, const DivisorProjection& p)
{
    const MetricGraph& g = *w.graph;
    json checks = json::object();
    for (std::size_t i = 0; i < s.names.size(); ++i) {
        checks[s.names[i]] = {{"intersection", subset_to_json(g, p.witnesses[i])},
                              {"b1_direct", rational_to_json(p.b1[i][0])},
                              {"b1_to_projection", rational_to_json(p.b1[i][1])},
                              {"b1_from_input", rational_to_json(p.b1[i][2])}};
    }
    const json result = divisor_to_json(g, p.result.divisor);
    return {{"value", result}, {"certificate", checks}, {"holds", p.holds()}};
}

Outcome sys_project_cmd(const Options& o)
{
    const Workspace w = load_workspace(o.graph);
    const NamedSystem s = load_system(w, o);
    std::deque<Divisor> d;
    const DivisorProjection p = ls_project(s.system, nth_divisor(w, o, 0, d));
    const json report = projection_report(w, s, p);
    return value(report.at("value"), report);
}

Outcome sys_reduced_cmd(const Options& o)
{
    const Workspace w = load_workspace(o.graph);
    const NamedSystem s = load_system(w, o);
    const GraphPoint q = resolve_point(*w.graph, o.at);
    const DivisorProjection p = ls_project(s.system, Divisor::point(q, s.system.degree()));
    const json report = projection_report(w, s, p);
    return value(report.at("value"), report);
}

Outcome sys_extremals_cmd(const Options& o)
{
    const Workspace w = load_workspace(o.graph);
    const NamedSystem s = load_system(w, o);
    json names = json::array();
    for (std::size_t i : ls_extremal_indices(s.system)) {
        names.push_back(s.names[i]);
    }
    return value(names);
}

// ---- trees ----------------------------------------------------------------------

std::string dot_escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out += '\\';
        }
        out += c;
    }
    return out;
}

std::string skeleton_dot(const MetricGraph& g, const TreeSkeleton& s, const std::vector<std::string>& arc_notes)
{
    std::ostringstream dot;
    dot << "graph skeleton {\n";
    for (std::size_t n = 0; n < s.nodes.size(); ++n) {
        dot << "  n" << n << " [label=\"" << dot_escape(describe(g, s.nodes[n].divisor)) << "\"];\n";
    }
    for (std::size_t k = 0; k < s.arcs.size(); ++k) {
        std::string label = format_rational(s.arcs[k].length);
        if (k < arc_notes.size() && !arc_notes[k].empty()) {
            label += " " + arc_notes[k];
        }
        dot << "  n" << s.arcs[k].a << " -- n" << s.arcs[k].b << " [label=\"" << dot_escape(label) << "\"];\n";
    }
    dot << "}\n";
    return dot.str();
}

json skeleton_json(const MetricGraph& g, const TreeSkeleton& s)
{
    json nodes = json::array();
    for (const auto& n : s.nodes) {
        nodes.push_back(divisor_to_json(g, n.divisor));
    }
    json arcs = json::array();
    for (const auto& a : s.arcs) {
        arcs.push_back({{"a", a.a}, {"b", a.b}, {"length", rational_to_json(a.length)}});
    }
    return {{"nodes", nodes}, {"arcs", arcs}};
}

json tree_certificate(const MetricGraph& g, const TreeReport& r)
{
    json cert = {{"is_tree", r.tree}, {"method", r.method}, {"critical_divisors", r.critical_count}};
    if (r.failing) {
        cert["failing_divisor"] = divisor_to_json(g, *r.failing);
        cert["bases"] = json::array({subset_to_json(g, r.bases->first), subset_to_json(g, r.bases->second)});
    }
    if (r.stray) {
        cert["stray_divisor"] = divisor_to_json(g, *r.stray);
    }
    return cert;
}

Outcome tree_check_cmd(const Options& o)
{
    const Workspace w = load_workspace(o.graph);
    const NamedSystem s = load_system(w, o);
    const TreeReport r = tt_is_tree(s.system, policy(o));
    Outcome out = predicate(r.tree, tree_certificate(*w.graph, r), r.message);
    if (o.format == "dot") {
        out.text = skeleton_dot(*w.graph, tt_skeleton(s.system, policy(o)), {});
    }
    return out;
}

Outcome tree_support_cmd(const Options& o)
{
    const Workspace w = load_workspace(o.graph);
    const NamedSystem s = load_system(w, o);
    return value(subset_to_json(*w.graph, tt_support(s.system)));
}

Outcome tree_dominant_cmd(const Options& o)
{
    const Workspace w = load_workspace(o.graph);
    const NamedSystem s = load_system(w, o);
    const MetricGraph& g = *w.graph;
    const DominanceReport r = tt_is_dominant(s.system, o.seed, 8, policy(o));
    json cert = {{"tree", tree_certificate(g, r.tree)}, {"samples_checked", r.samples_checked}};
    if (r.tree.tree) {
        cert["support"] = subset_to_json(g, r.support);
        json gaps = json::array();
        for (const auto& gap : r.uncovered) {
            json edges = json::array();
            for (std::size_t e : gap.edges) {
                edges.push_back(g.edge(e).id);
            }
            json vertices = json::array();
            for (std::size_t v : gap.vertices) {
                vertices.push_back(g.vertex_name(v));
            }
            gaps.push_back({{"vertices", vertices}, {"edges", edges}});
        }
        cert["uncovered_components"] = gaps;
    }
    if (r.sample_failure) {
        cert["sample_failure"] = point_to_json(g, *r.sample_failure);
    }
    return predicate(r.dominant, cert, r.message);
}

Outcome tree_preimage_cmd(const Options& o)
{
    const Workspace w = load_workspace(o.graph);
    const NamedSystem s = load_system(w, o);
    std::deque<Divisor> d;
    return value(subset_to_json(*w.graph, tt_preimage(s.system, nth_divisor(w, o, 0, d))));
}

std::string csv_quote(const std::string& s)
{
    std::string out = "\"";
    for (char c : s) {
        out += c == '"' ? std::string("\"\"") : std::string(1, c);
    }
    return out + "\"";
}

Outcome tree_redmap_cmd(const Options& o)
{
    const Workspace w = load_workspace(o.graph);
    const NamedSystem s = load_system(w, o);
    const MetricGraph& g = *w.graph;
    const auto images = tt_reduced_map(s.system, sample_points(g, o.samples), policy(o));
    json rows = json::array();
    std::ostringstream csv;
    csv << "point_id,edge,offset,image_divisor\n";
    for (std::size_t k = 0; k < images.size(); ++k) {
        const auto& [p, d] = images[k];
        const json image = divisor_to_json(g, d);
        rows.push_back({{"point", point_to_json(g, p)}, {"image", image}});
        const PointPosition pos = g.position(p);
        csv << k << "," << (pos.is_vertex ? "" : pos.name) << ","
            << (pos.is_vertex ? "" : format_rational(pos.offset)) << "," << csv_quote(image.dump()) << "\n";
    }
    Outcome out = value(rows);
    if (o.format == "csv") {
        out.text = csv.str();
    }
    return out;
}

Outcome tree_morphism_cmd(const Options& o)
{
    const Workspace w = load_workspace(o.graph);
    const NamedSystem s = load_system(w, o);
    const MetricGraph& g = *w.graph;
    const PseudoHarmonicMap m = tt_morphism(s.system, policy(o));
    json pieces = json::array();
    std::vector<std::string> notes(m.skeleton.arcs.size());
    for (const auto& piece : m.pieces) {
        pieces.push_back({{"edge", g.edge(piece.edge).id},
                          {"lo", rational_to_json(piece.lo)},
                          {"hi", rational_to_json(piece.hi)},
                          {"arc", piece.arc},
                          {"factor", rational_to_json(piece.factor)}});
        const std::string tag = "x" + format_rational(piece.factor);
        if (notes[piece.arc].find(tag) == std::string::npos) {
            notes[piece.arc] += (notes[piece.arc].empty() ? "" : ",") + tag;
        }
    }
    json factors = json::object();
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        factors[g.edge(e).id] = m.edge_factors[e] ? rational_to_json(*m.edge_factors[e]) : json(nullptr);
    }
    json degrees = json::array();
    for (const auto& d : m.degrees) {
        degrees.push_back({{"point", point_to_json(g, d.point)}, {"node", d.node}, {"degree", rational_to_json(d.degree)}});
    }
    const json result = {{"skeleton", skeleton_json(g, m.skeleton)},
                         {"pieces", pieces},
                         {"edge_factors", factors},
                         {"local_degrees", degrees}};
    Outcome out = value(result);
    if (o.format == "dot") {
        out.text = skeleton_dot(g, m.skeleton, notes);
    }
    return out;
}

Outcome tree_harmonize_cmd(const Options& o)
{
    const Workspace w = load_workspace(o.graph);
    const NamedSystem s = load_system(w, o);
    const MetricGraph& g = *w.graph;
    const Harmonization h = tt_harmonize(s.system, policy(o));
    json attachments = json::array();
    for (const auto& a : h.attachments) {
        attachments.push_back({{"point", point_to_json(g, a.point)},
                               {"node", divisor_to_json(g, h.map.skeleton.nodes[a.node].divisor)},
                               {"toward", divisor_to_json(g, h.map.skeleton.nodes[a.toward].divisor)},
                               {"multiplicity", rational_to_json(a.multiplicity)}});
    }
    json node_degrees = json::array();
    for (const auto& d : h.node_degrees) {
        node_degrees.push_back(rational_to_json(d));
    }
    return value({{"degree", rational_to_json(h.degree)},
                  {"attachments", attachments},
                  {"node_degrees", node_degrees},
                  {"skeleton", skeleton_json(g, h.map.skeleton)}});
}

Outcome tree_witness_cmd(const Options& o)
{
    const Workspace w = load_workspace(o.graph);
    const NamedSystem s = load_system(w, o);
    const Rational d = o.degree.empty() ? s.system.degree() : rational_option(o.degree, "--degree");
    const WitnessReport r = tt_verify_witness(s.system, d, policy(o));
    json cert = {{"system_degree", rational_to_json(r.system_degree)},
                 {"dominant", r.dominance.dominant},
                 {"tree", tree_certificate(*w.graph, r.dominance.tree)}};
    if (r.harmonic_degree) {
        cert["harmonic_degree"] = rational_to_json(*r.harmonic_degree);
    }
    return predicate(r.holds, cert, r.message);
}

Outcome graph_validate_cmd(const Options& o)
{
    const std::string path = o.file.empty() ? o.graph : o.file;
    if (path.empty()) {
        usage("graph validate needs a FILE", "FILE");
    }
    const Workspace w = workspace_from_json(read_json_file(path));
    const MetricGraph& g = *w.graph;
    json edges = json::array();
    for (const auto& e : g.edges()) {
        edges.push_back({{"id", e.id},
                         {"tail", g.vertex_name(e.tail)},
                         {"head", g.vertex_name(e.head)},
                         {"length", rational_to_json(e.length)}});
    }
    return predicate(true,
                     {{"vertices", g.vertex_names()},
                      {"edges", edges},
                      {"loops_split", g.loops_split()},
                      {"total_length", rational_to_json(g.total_length())}},
                     "valid: " + std::to_string(g.vertex_count()) + " vertices, " + std::to_string(g.edge_count()) +
                         " edges");
}

using Handler = std::function<Outcome(const Options&)>;

const std::map<std::string, std::map<std::string, Handler>>& handlers()
{
    static const std::map<std::string, std::map<std::string, Handler>> table{
        {"graph", {{"validate", graph_validate_cmd}}},
        {"tp",
         {{"project", tp_project_cmd},
          {"member", tp_member_cmd},
          {"extremals", tp_extremals_cmd},
          {"independence", tp_independence_cmd},
          {"norm", tp_norm_cmd}}},
        {"div",
         {{"equiv", div_equiv_cmd},
          {"rho", div_rho_cmd},
          {"path", div_path_cmd},
          {"b1", div_b1_cmd},
          {"reduce", div_reduce_cmd}}},
        {"sys",
         {{"member", sys_member_cmd},
          {"project", sys_project_cmd},
          {"reduced", sys_reduced_cmd},
          {"extremals", sys_extremals_cmd}}},
        {"tree",
         {{"check", tree_check_cmd},
          {"support", tree_support_cmd},
          {"dominant", tree_dominant_cmd},
          {"preimage", tree_preimage_cmd},
          {"redmap", tree_redmap_cmd},
          {"morphism", tree_morphism_cmd},
          {"harmonize", tree_harmonize_cmd},
          {"witness", tree_witness_cmd}}},
    };
    return table;
}

void add_common(CLI::App* cmd, Options& o)
{
    cmd->add_option("--graph", o.graph, "graph workspace file");
    cmd->add_option("--space", o.space, "tropical space file");
    cmd->add_option("--system", o.system, "system name");
    cmd->add_option("--divisor", o.divisors, "divisor name or inline JSON; repeat for a second divisor")
        ->allow_extra_args(false);
    cmd->add_option("--at", o.at, "point: vertex name or inline JSON");
    cmd->add_option("--t", o.t, "path parameter");
    cmd->add_option("--mode", o.mode, "lower or upper");
    cmd->add_option("--generators", o.generators, "set name, comma list of point names or inline JSON");
    cmd->add_option("--point", o.point, "point name or inline JSON");
    cmd->add_option("--kind", o.kind, "independence notion: weak, gm or tropical");
    cmd->add_option("--p", o.exponent, "exponent: 1, 2 or inf");
    cmd->add_option("--degree", o.degree, "expected degree");
    cmd->add_option("--samples", o.samples, "interior samples per edge");
    cmd->add_option("--out", o.out, "write the full report here");
    cmd->add_option("--format", o.format, "json, csv or dot");
    cmd->add_option("--seed", o.seed, "seed for randomized checks");
    cmd->add_flag("--serial", o.serial, "disable parallel kernels");
}

json error_json(const std::string& code, const std::string& message, const std::string& location)
{
    return {{"code", code}, {"message", message}, {"location", location}};
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Options o;
    CLI::App app{"Exact tropical convexity and divisor theory on metric graphs", "tropkit"};
    app.require_subcommand(1);
    std::vector<std::pair<CLI::App*, std::vector<std::pair<CLI::App*, Handler>>>> tree;
    for (const auto& [group, verbs] : handlers()) {
        CLI::App* g = app.add_subcommand(group);
        g->require_subcommand(1);
        std::vector<std::pair<CLI::App*, Handler>> leaves;
        for (const auto& [verb, handler] : verbs) {
            CLI::App* leaf = g->add_subcommand(verb);
            add_common(leaf, o);
            if (group == "graph") {
                leaf->add_option("FILE", o.file, "graph workspace file");
            }
            leaves.emplace_back(leaf, handler);
        }
        tree.emplace_back(g, std::move(leaves));
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        out << error_json("usage", e.what(), "argv").dump() << "\n";
        return exit_input;
    }

    Handler handler;
    for (const auto& [group, leaves] : tree) {
        for (const auto& [leaf, h] : leaves) {
            if (leaf->parsed()) {
                handler = h;
            }
        }
    }
    try {
        if (o.format != "json" && o.format != "csv" && o.format != "dot") {
            usage("--format must be json, csv or dot", "--format");
        }
        const Outcome result = handler(o);
        if (!o.out.empty()) {
            std::ofstream file(o.out);
            if (!file) {
                usage("cannot write file", o.out);
            }
            file << result.report.dump(2) << "\n";
        }
        if (result.text) {
            out << *result.text;
        } else {
            out << result.printed.dump() << "\n";
        }
        return result.code;
    } catch (const Error& e) {
        out << error_json(error_code_name(e.code()), e.what(), e.location()).dump() << "\n";
        err << "tropkit: " << e.what() << "\n";
        return e.code() == ErrorCode::certificate ? exit_certificate : exit_input;
    } catch (const json::exception& e) {
        out << error_json("invalid_input", e.what(), "").dump() << "\n";
        return exit_input;
    }
}

} // namespace tropkit::cli
