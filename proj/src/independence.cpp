#include "tropkit/independence.hpp"

#include "tropkit/errors.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tropkit {

namespace {

using Vec = std::vector<Rational>;

// Least element of the lower span above h, without renormalizing.
Vec residuated_raw(const std::vector<Vec>& gens, const Vec& h)
{
    Vec out(h.size());
    for (std::size_t i = 0; i < gens.size(); ++i) {
        Rational shift = h[0] - gens[i][0];
        for (std::size_t x = 1; x < h.size(); ++x) {
            shift = std::max(shift, Rational(h[x] - gens[i][x]));
        }
        for (std::size_t x = 0; x < h.size(); ++x) {
            const Rational v = gens[i][x] + shift;
            if (i == 0 || v < out[x]) {
                out[x] = v;
            }
        }
    }
    return out;
}

Vec normalized(Vec v)
{
    const Rational low = min_of(v);
    for (auto& x : v) {
        x -= low;
    }
    return v;
}

std::vector<Vec> integer_scaled(const TropGeneratorSet& set, Rational& spread)
{
    Vec all;
    for (const auto& p : set.points()) {
        all.insert(all.end(), p.coords().begin(), p.coords().end());
    }
    const Rational scale(lcm_of_denominators(all));
    std::vector<Vec> out;
    for (const auto& p : set.points()) {
        Vec v = p.coords();
        for (auto& x : v) {
            x *= scale;
        }
        out.push_back(std::move(v));
    }
    spread = (max_of(all) - min_of(all)) * scale;
    if (spread < 1) {
        spread = 1;
    }
    return out;
}

enum class PairOutcome { meet, disjoint, undecided };

// Alternating residuated projections. On integer data the unnormalized
// sequence is nondecreasing, bounded above when the hulls meet, and the
// projective classes range over a finite set, so a repeated class without
// a fixed point proves the hulls are disjoint.
PairOutcome alternate(const std::vector<Vec>& first, const std::vector<Vec>& second, std::size_t cap, Vec& common,
                      std::size_t& iterations)
{
    Vec h = normalized(first.front());
    std::set<Vec> seen{h};
    for (std::size_t k = 0; k < cap; ++k) {
        ++iterations;
        const Vec next = residuated_raw(first, residuated_raw(second, h));
        if (next == h) {
            common = h;
            return PairOutcome::meet;
        }
        Vec canonical = normalized(next);
        if (!seen.insert(canonical).second) {
            return PairOutcome::disjoint;
        }
        h = std::move(canonical);
    }
    return PairOutcome::undecided;
}

IndependenceReport gondran_minoux(const TropGeneratorSet& set)
{
    IndependenceReport report;
    Rational spread;
    const std::vector<Vec> data = integer_scaled(set, spread);
    const std::size_t n = data.size();
    const std::size_t cap = Integer(spread.get_num() / spread.get_den()).get_ui() * 10 * data.front().size();
    bool undecided = false;
    // the last generator always sits in the second part, so each split is visited once
    for (std::size_t mask = 1; mask < (std::size_t{1} << (n - 1)); ++mask) {
        std::vector<Vec> first, second;
        std::vector<std::size_t> part;
        for (std::size_t i = 0; i < n; ++i) {
            if (i + 1 < n && (mask >> i) & 1U) {
                first.push_back(data[i]);
                part.push_back(i);
            } else {
                second.push_back(data[i]);
            }
        }
        Vec common;
        const PairOutcome outcome = alternate(first, second, std::max<std::size_t>(cap, 1), common, report.iterations);
        if (outcome == PairOutcome::meet) {
            // undo the integer scaling to report the common point in input units
            Vec all;
            for (const auto& p : set.points()) {
                all.insert(all.end(), p.coords().begin(), p.coords().end());
            }
            const Rational scale(lcm_of_denominators(all));
            for (auto& x : common) {
                x /= scale;
            }
            report.status = IndependenceStatus::dependent;
            report.partition = part;
            report.common_point = TropPoint(common);
            return report;
        }
        undecided = undecided || outcome == PairOutcome::undecided;
    }
    report.status = undecided ? IndependenceStatus::undecided : IndependenceStatus::independent;
    return report;
}

class DependenceSearch {
public:
    explicit DependenceSearch(const TropGeneratorSet& set) : set_(set) {}

    std::optional<Vec> run()
    {
        std::vector<std::optional<Rational>> c(set_.size());
        c[0] = Rational(0);
        return extend(c);
    }

private:
    // Some certificate has a connected tie graph, so every coefficient is
    // reachable from c_0 through ties c_i - c_j = f_j(x) - f_i(x).
    std::optional<Vec> extend(std::vector<std::optional<Rational>>& c)
    {
        if (std::all_of(c.begin(), c.end(), [](const auto& v) { return v.has_value(); })) {
            Vec full;
            for (const auto& v : c) {
                full.push_back(*v);
            }
            if (tp_is_dependence_certificate(set_, full)) {
                return full;
            }
            return std::nullopt;
        }
        if (!visited_.insert(key(c)).second) {
            return std::nullopt;
        }
        const auto& pts = set_.points();
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (c[i]) {
                continue;
            }
            for (std::size_t j = 0; j < c.size(); ++j) {
                if (!c[j]) {
                    continue;
                }
                for (std::size_t x = 0; x < set_.dimension(); ++x) {
                    c[i] = *c[j] + pts[j][x] - pts[i][x];
                    if (auto found = extend(c)) {
                        return found;
                    }
                }
            }
            c[i].reset();
        }
        return std::nullopt;
    }

    static std::string key(const std::vector<std::optional<Rational>>& c)
    {
        std::string out;
        for (const auto& v : c) {
            out += v ? format_rational(*v) : std::string("_");
            out += ';';
        }
        return out;
    }

    const TropGeneratorSet& set_;
    std::set<std::string> visited_;
};

void check_caps(const TropGeneratorSet& set, const IndependenceLimits& limits)
{
    if (set.size() > limits.max_generators || set.dimension() > limits.max_ground) {
        throw Error(ErrorCode::capacity, "independence search limited to " + std::to_string(limits.max_generators) +
                                             " generators over " + std::to_string(limits.max_ground) + " elements");
    }
}

} // namespace

bool tp_is_dependence_certificate(const TropGeneratorSet& set, const std::vector<Rational>& coefficients)
{
    if (coefficients.size() != set.size()) {
        return false;
    }
    const bool lower = set.mode() == Mode::lower;
    for (std::size_t x = 0; x < set.dimension(); ++x) {
        Rational best;
        std::size_t ties = 0;
        for (std::size_t i = 0; i < set.size(); ++i) {
            const Rational v = set.points()[i][x] + coefficients[i];
            if (i == 0 || (lower ? v < best : v > best)) {
                best = v;
                ties = 1;
            } else if (v == best) {
                ++ties;
            }
        }
        if (ties < 2) {
            return false;
        }
    }
    return true;
}

IndependenceReport tp_independence(const TropGeneratorSet& set, IndependenceKind kind, IndependenceLimits limits)
{
    if (set.size() < 2) {
        throw Error(ErrorCode::precondition, "independence needs at least two distinct generators");
    }
    IndependenceReport report;
    switch (kind) {
    case IndependenceKind::weak:
        for (std::size_t i = 0; i < set.size(); ++i) {
            if (tp_member(set.without(i), set.points()[i]).member) {
                report.status = IndependenceStatus::dependent;
                report.redundant = i;
                return report;
            }
        }
        return report;
    case IndependenceKind::gondran_minoux: {
        check_caps(set, limits);
        if (set.mode() == Mode::upper) {
            // hulls of the negated parts meet exactly when the upper hulls do
            IndependenceReport flipped = gondran_minoux(set.negated());
            if (flipped.common_point) {
                flipped.common_point = -*flipped.common_point;
                std::vector<std::size_t> part;
                const auto neg = set.negated().points();
                for (std::size_t i : flipped.partition) {
                    const auto at = std::find(set.points().begin(), set.points().end(), -neg[i]);
                    part.push_back(static_cast<std::size_t>(at - set.points().begin()));
                }
                std::sort(part.begin(), part.end());
                flipped.partition = part;
            }
            return flipped;
        }
        return gondran_minoux(set);
    }
    case IndependenceKind::tropical: {
        check_caps(set, limits);
        const bool upper = set.mode() == Mode::upper;
        const TropGeneratorSet lower = upper ? set.negated() : set;
        DependenceSearch search(lower);
        if (auto found = search.run()) {
            report.status = IndependenceStatus::dependent;
            if (upper) {
                // map coefficients back through the negation, which may reorder points
                Vec mapped(set.size());
                for (std::size_t i = 0; i < set.size(); ++i) {
                    const auto at = std::find(lower.points().begin(), lower.points().end(), -set.points()[i]);
                    mapped[i] = -(*found)[static_cast<std::size_t>(at - lower.points().begin())];
                }
                report.coefficients = mapped;
            } else {
                report.coefficients = *found;
            }
        }
        return report;
    }
    }
    return report;
}

} // namespace tropkit
