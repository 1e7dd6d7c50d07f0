#include "tropkit/linear_system.hpp"

#include "tropkit/errors.hpp"

#include <algorithm>

namespace tropkit {

namespace {

void require_same_degree(const Divisor& a, const Divisor& b)
{
    if (a.degree() != b.degree()) {
        throw Error(ErrorCode::precondition, "divisors have different degrees");
    }
}

// B1 of a potential: integral of its min-normalized form.
Rational b1_of(const PLFunction& f) { return pl_integral(pl_normalized(f)); }

} // namespace

bool dv_lin_equiv(const MetricGraph& g, const Divisor& a, const Divisor& b)
{
    require_same_degree(a, b);
    return pl_has_integral_slopes(mg_potential(g, a, b));
}

DivisorPath dv_path_query(const MetricGraph& g, const Divisor& from, const Divisor& to)
{
    require_same_degree(from, to);
    if (!from.is_effective() && !from.is_zero()) {
        throw Error(ErrorCode::precondition, "path endpoints must be effective");
    }
    if (!to.is_effective() && !to.is_zero()) {
        throw Error(ErrorCode::precondition, "path endpoints must be effective");
    }
    DivisorPath out{from, to, Rational(0), mg_potential(g, from, to)};
    if (!pl_has_integral_slopes(out.function)) {
        throw Error(ErrorCode::precondition, "divisors are not linearly equivalent");
    }
    out.distance = pl_max_value(out.function);
    return out;
}

Rational dv_rho(const MetricGraph& g, const Divisor& from, const Divisor& to)
{
    return dv_path_query(g, from, to).distance;
}

Divisor dv_path(const MetricGraph& g, const DivisorPath& path, const Rational& t)
{
    if (t < 0 || t > path.distance) {
        throw Error(ErrorCode::precondition, "path parameter outside [0, " + format_rational(path.distance) + "]");
    }
    return pl_div(g, pl_clip(g, path.function, t)) + path.from;
}

Divisor dv_path(const MetricGraph& g, const Divisor& from, const Divisor& to, const Rational& t)
{
    return dv_path(g, dv_path_query(g, from, to), t);
}

Rational dv_b1(const MetricGraph& g, const Divisor& d, const Divisor& e)
{
    return pl_integral(mg_potential(g, e, d));
}

Rational dv_b1_upper(const MetricGraph& g, const Divisor& d, const Divisor& e)
{
    const PLFunction f = mg_potential(g, e, d);
    return pl_max_value(f) * g.total_length() - pl_integral(f);
}

LinearSystem LinearSystem::build(GraphHandle graph, std::vector<Divisor> generators, Execution policy)
{
    if (generators.empty()) {
        throw Error(ErrorCode::precondition, "a linear system needs at least one generator");
    }
    LinearSystem t;
    t.graph_ = std::move(graph);
    t.reference_ = generators.front();
    t.degree_ = t.reference_.degree();
    for (std::size_t i = 0; i < generators.size(); ++i) {
        const Divisor& d = generators[i];
        const std::string where = "generator " + std::to_string(i + 1);
        if (!d.is_effective() || !d.is_integral()) {
            throw Error(ErrorCode::precondition, where + " is not effective and integral");
        }
        if (d.degree() != t.degree_) {
            throw Error(ErrorCode::precondition, where + " has degree " + format_rational(d.degree()) +
                                                     ", expected " + format_rational(t.degree_));
        }
    }
    t.generators_.resize(generators.size());
    const MetricGraph& g = *t.graph_;
    for_each_index(generators.size(), policy, [&](std::size_t i) {
        t.generators_[i] = {generators[i], mg_potential(g, t.reference_, generators[i])};
    });
    for (std::size_t i = 0; i < generators.size(); ++i) {
        if (!pl_has_integral_slopes(t.generators_[i].anchor)) {
            throw Error(ErrorCode::precondition,
                        "generator " + std::to_string(i + 1) + " is not linearly equivalent to generator 1");
        }
    }
    return t;
}

std::vector<Divisor> LinearSystem::generators() const
{
    std::vector<Divisor> out;
    for (const auto& a : generators_) {
        out.push_back(a.divisor);
    }
    return out;
}

LinearSystem LinearSystem::subsystem(const std::vector<std::size_t>& indices) const
{
    if (indices.empty()) {
        throw Error(ErrorCode::precondition, "a linear system needs at least one generator");
    }
    LinearSystem t;
    t.graph_ = graph_;
    t.reference_ = reference_;
    t.degree_ = degree_;
    for (std::size_t i : indices) {
        t.generators_.push_back(generators_.at(i));
    }
    return t;
}

Anchored LinearSystem::anchor(const Divisor& e) const
{
    if (e.degree() != degree_) {
        throw Error(ErrorCode::precondition, "divisor has degree " + format_rational(e.degree()) +
                                                 ", the system has degree " + format_rational(degree_));
    }
    return {e, mg_potential(*graph_, reference_, e)};
}

PLFunction anchored_potential(const Anchored& a, const Anchored& b)
{
    return pl_normalized(b.anchor - a.anchor);
}

Anchored anchored_path(const MetricGraph& g, const Anchored& a, const Anchored& b, const Rational& t)
{
    const PLFunction f = anchored_potential(a, b);
    if (t < 0 || t > pl_max_value(f)) {
        throw Error(ErrorCode::precondition, "path parameter out of range");
    }
    const PLFunction h = pl_clip(g, f, t);
    return {pl_div(g, h) + a.divisor, h + a.anchor};
}

MembershipReport ls_member(const LinearSystem& t, const Anchored& e)
{
    const MetricGraph& g = t.graph();
    if (!e.divisor.is_effective() && !e.divisor.is_zero()) {
        throw Error(ErrorCode::precondition, "divisor is not effective");
    }
    MembershipReport out;
    out.cover = ClosedSubset::empty(g);
    for (std::size_t i = 0; i < t.size(); ++i) {
        auto set = pl_extremum_set(g, t.anchored(i).anchor - e.anchor, Extremum::min).set;
        out.cover = out.cover.united(set, g);
        out.sets.push_back(std::move(set));
    }
    out.member = out.cover.covers(g);
    return out;
}

MembershipReport ls_member(const LinearSystem& t, const Divisor& e) { return ls_member(t, t.anchor(e)); }

bool DivisorProjection::holds() const
{
    for (std::size_t i = 0; i < witnesses.size(); ++i) {
        if (witnesses[i].is_empty() || b1[i][0] != b1[i][1] + b1[i][2]) {
            return false;
        }
    }
    return true;
}

DivisorProjection ls_project(const LinearSystem& t, const Anchored& e)
{
    const MetricGraph& g = t.graph();
    if (!e.divisor.is_effective() && !e.divisor.is_zero()) {
        throw Error(ErrorCode::precondition, "divisor is not effective");
    }
    std::vector<PLFunction> lifted;
    lifted.reserve(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        lifted.push_back(pl_normalized(t.anchored(i).anchor - e.anchor));
    }
    const PLFunction f = pl_min(lifted);
    DivisorProjection out;
    out.result = {pl_div(g, f) + e.divisor, f + e.anchor};
    if (!out.result.divisor.is_effective() && !out.result.divisor.is_zero()) {
        throw Error(ErrorCode::certificate, "projection is not effective: " + describe(g, out.result.divisor));
    }
    if (!out.result.divisor.is_integral()) {
        throw Error(ErrorCode::certificate, "projection is not integral: " + describe(g, out.result.divisor));
    }
    const auto contact = pl_extremum_set(g, f, Extremum::min).set;
    const Rational to_e = pl_integral(f);
    for (std::size_t i = 0; i < t.size(); ++i) {
        const PLFunction from_pi = t.anchored(i).anchor - out.result.anchor;
        out.witnesses.push_back(pl_extremum_set(g, from_pi, Extremum::min).set.intersected(contact, g));
        out.b1.push_back({pl_integral(lifted[i]), b1_of(from_pi), to_e});
    }
    if (!out.holds()) {
        throw Error(ErrorCode::certificate, "projection certificate failed for " + describe(g, out.result.divisor));
    }
    return out;
}

DivisorProjection ls_project(const LinearSystem& t, const Divisor& e) { return ls_project(t, t.anchor(e)); }

Anchored ls_reduced_anchored(const LinearSystem& t, const GraphPoint& q)
{
    return ls_project(t, Divisor::point(q, t.degree())).result;
}

Divisor ls_reduced(const LinearSystem& t, const GraphPoint& q) { return ls_reduced_anchored(t, q).divisor; }

std::vector<std::size_t> ls_extremal_indices(const LinearSystem& t)
{
    std::vector<std::size_t> keep(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        keep[i] = i;
    }
    // Drop duplicates first so that a repeated generator does not vouch for itself.
    for (std::size_t i = 0; i < keep.size();) {
        bool repeated = false;
        for (std::size_t j = 0; j < i; ++j) {
            repeated = repeated || t.generator(keep[j]) == t.generator(keep[i]);
        }
        if (repeated) {
            keep.erase(keep.begin() + static_cast<std::ptrdiff_t>(i));
        } else {
            ++i;
        }
    }
    for (std::size_t k = 0; k < keep.size() && keep.size() > 1;) {
        std::vector<std::size_t> others = keep;
        others.erase(others.begin() + static_cast<std::ptrdiff_t>(k));
        if (ls_member(t.subsystem(others), t.anchored(keep[k])).member) {
            keep = std::move(others);
        } else {
            ++k;
        }
    }
    return keep;
}

std::vector<Divisor> ls_extremals(const LinearSystem& t)
{
    std::vector<Divisor> out;
    for (std::size_t i : ls_extremal_indices(t)) {
        out.push_back(t.generator(i));
    }
    return out;
}

std::vector<ClosedSubset> ls_bases(const LinearSystem& t, const Anchored& d)
{
    const MetricGraph& g = t.graph();
    if (!ls_member(t, d).member) {
        throw Error(ErrorCode::precondition, describe(g, d.divisor) + " is not in the system");
    }
    std::vector<ClosedSubset> out;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const PLFunction f = t.anchored(i).anchor - d.anchor;
        if (pl_is_constant(f)) {
            continue;
        }
        auto base = pl_extremum_set(g, f, Extremum::min).set;
        if (std::find(out.begin(), out.end(), base) == out.end()) {
            out.push_back(std::move(base));
        }
    }
    return out;
}

std::vector<ClosedSubset> ls_bases(const LinearSystem& t, const Divisor& d) { return ls_bases(t, t.anchor(d)); }

} // namespace tropkit
