#include "tropkit/dhar.hpp"

#include "tropkit/errors.hpp"

#include <algorithm>

namespace tropkit {

bool Burn::complete() const
{
    return std::all_of(burnt.begin(), burnt.end(), [](bool b) { return b; });
}

Burn dhar_burn(const MetricGraph& g, const Divisor& d, const GraphPoint& q)
{
    std::vector<GraphPoint> cuts = d.support();
    cuts.push_back(q);
    Burn b{refine(g, cuts), {}};
    const Refinement& r = b.refinement;
    b.burnt.assign(r.nodes.size(), false);
    std::vector<Rational> chips(r.nodes.size());
    for (const auto& [p, c] : d.terms()) {
        chips[r.node_of(p)] = c;
    }
    // A segment burns as soon as one of its ends does; a node burns once
    // more segments reach it burning than it holds chips.
    std::vector<std::size_t> hits(r.nodes.size(), 0);
    std::vector<std::size_t> stack{r.node_of(q)};
    b.burnt[stack.back()] = true;
    while (!stack.empty()) {
        const std::size_t n = stack.back();
        stack.pop_back();
        for (std::size_t s : r.touching[n]) {
            const std::size_t m = r.other_end(s, n);
            if (b.burnt[m]) {
                continue;
            }
            ++hits[m];
            if (Rational(static_cast<long>(hits[m])) > chips[m]) {
                b.burnt[m] = true;
                stack.push_back(m);
            }
        }
    }
    return b;
}

DharResult dv_dhar(const MetricGraph& g, const Divisor& d, const GraphPoint& q, std::size_t max_firings)
{
    if ((!d.is_effective() && !d.is_zero()) || !d.is_integral()) {
        throw Error(ErrorCode::precondition, "reduction needs an effective integral divisor");
    }
    DharResult out{d, 0};
    while (true) {
        const Burn b = dhar_burn(g, out.divisor, q);
        if (b.complete()) {
            return out;
        }
        if (out.firings == max_firings) {
            throw Error(ErrorCode::capacity, "reduction did not finish within " + std::to_string(max_firings) +
                                                 " firings");
        }
        const Refinement& r = b.refinement;
        // Segments leaving the unburnt set, as (boundary node, segment).
        std::vector<std::pair<std::size_t, std::size_t>> outgoing;
        for (std::size_t n = 0; n < r.nodes.size(); ++n) {
            if (b.burnt[n]) {
                continue;
            }
            for (std::size_t s : r.touching[n]) {
                if (b.burnt[r.other_end(s, n)]) {
                    outgoing.emplace_back(n, s);
                }
            }
        }
        Rational step = r.segments[outgoing.front().second].length();
        for (const auto& [n, s] : outgoing) {
            step = std::min(step, r.segments[s].length());
        }
        for (const auto& [n, s] : outgoing) {
            const auto& seg = r.segments[s];
            const Rational offset = seg.a == n ? Rational(seg.lo + step) : Rational(seg.hi - step);
            out.divisor.add(r.nodes[n], Rational(-1));
            out.divisor.add(GraphPoint::on_edge(g, seg.edge, offset), Rational(1));
        }
        ++out.firings;
    }
}

} // namespace tropkit
