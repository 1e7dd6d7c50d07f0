#include "tropkit/tropical.hpp"

#include "tropkit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace tropkit {

namespace {

void require_same_size(std::size_t a, std::size_t b, const char* what)
{
    if (a != b) {
        throw Error(ErrorCode::invalid_input, std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                                                  " vs " + std::to_string(b) + ")");
    }
}

std::vector<Rational> difference(const TropPoint& a, const TropPoint& b)
{
    require_same_size(a.size(), b.size(), "difference");
    std::vector<Rational> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] = a[i] - b[i];
    }
    return out;
}

ArgSet argext_raw(const std::vector<Rational>& values, Extremum which)
{
    const Rational target = which == Extremum::min ? min_of(values) : max_of(values);
    ArgSet out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] == target) {
            out.insert(i);
        }
    }
    return out;
}

// Residuated coefficients for the lower hull: c_i = -min(g_i - h).
std::vector<Rational> residuated_coefficients(const std::vector<TropPoint>& gens, const TropPoint& h)
{
    std::vector<Rational> c;
    c.reserve(gens.size());
    for (const auto& g : gens) {
        c.push_back(-min_of(difference(g, h)));
    }
    return c;
}

std::vector<Rational> negate_all(std::vector<Rational> values)
{
    for (auto& v : values) {
        v = -v;
    }
    return values;
}

Membership member_lower(const std::vector<TropPoint>& gens, const TropPoint& point)
{
    Membership out;
    ArgSet covered(point.size());
    for (const auto& g : gens) {
        out.cover.push_back(argext_raw(difference(g, point), Extremum::min));
        covered |= out.cover.back();
    }
    out.member = covered.is_full();
    out.coefficients = residuated_coefficients(gens, point);
    return out;
}

TropPoint project_lower(const std::vector<TropPoint>& gens, const TropPoint& point, std::vector<Rational>& coeffs)
{
    coeffs = residuated_coefficients(gens, point);
    return tp_combine(gens, coeffs, Mode::lower);
}

} // namespace

Mode opposite(Mode mode) { return mode == Mode::lower ? Mode::upper : Mode::lower; }

GroundSpace::GroundSpace(std::vector<std::string> labels) : GroundSpace(labels, {}) {}

GroundSpace::GroundSpace(std::vector<std::string> labels, std::vector<Rational> weights)
    : labels_(std::move(labels)), weights_(std::move(weights))
{
    if (labels_.empty()) {
        throw Error(ErrorCode::invalid_input, "ground set must have at least one element");
    }
    if (weights_.empty()) {
        weights_.assign(labels_.size(), ratio(1, static_cast<long>(labels_.size())));
    }
    require_same_size(labels_.size(), weights_.size(), "ground weights");
    total_mass_ = 0;
    for (const auto& w : weights_) {
        if (w <= 0) {
            throw Error(ErrorCode::invalid_input, "ground weights must be strictly positive");
        }
        total_mass_ += w;
    }
}

GroundSpace GroundSpace::uniform(std::size_t size)
{
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < size; ++i) {
        labels.push_back("e" + std::to_string(i + 1));
    }
    return GroundSpace(std::move(labels));
}

TropPoint::TropPoint(std::vector<Rational> raw) : coords_(std::move(raw))
{
    if (coords_.empty()) {
        throw Error(ErrorCode::invalid_input, "a tropical point needs at least one coordinate");
    }
    const Rational low = min_of(coords_);
    for (auto& c : coords_) {
        c -= low;
    }
}

std::vector<Rational> TropPoint::top_normalized() const
{
    const Rational high = max_of(coords_);
    std::vector<Rational> out = coords_;
    for (auto& c : out) {
        c -= high;
    }
    return out;
}

TropPoint TropPoint::operator-() const { return TropPoint(negate_all(coords_)); }

TropPoint operator+(const TropPoint& a, const TropPoint& b)
{
    require_same_size(a.size(), b.size(), "sum");
    std::vector<Rational> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] = a[i] + b[i];
    }
    return TropPoint(std::move(out));
}

TropPoint operator-(const TropPoint& a, const TropPoint& b) { return TropPoint(difference(a, b)); }

std::string to_string(const TropPoint& point)
{
    std::string out = "(";
    for (std::size_t i = 0; i < point.size(); ++i) {
        out += (i ? "," : "") + format_rational(point[i]);
    }
    return out + ")";
}

ArgSet ArgSet::full(std::size_t size)
{
    ArgSet out(size);
    out.mask_.assign(size, true);
    return out;
}

bool ArgSet::empty() const { return std::none_of(mask_.begin(), mask_.end(), [](bool b) { return b; }); }
bool ArgSet::is_full() const { return std::all_of(mask_.begin(), mask_.end(), [](bool b) { return b; }); }

std::vector<std::size_t> ArgSet::indices() const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < mask_.size(); ++i) {
        if (mask_[i]) {
            out.push_back(i);
        }
    }
    return out;
}

ArgSet& ArgSet::operator|=(const ArgSet& other)
{
    require_same_size(size(), other.size(), "argset union");
    for (std::size_t i = 0; i < mask_.size(); ++i) {
        mask_[i] = mask_[i] || other.mask_[i];
    }
    return *this;
}

ArgSet& ArgSet::operator&=(const ArgSet& other)
{
    require_same_size(size(), other.size(), "argset intersection");
    for (std::size_t i = 0; i < mask_.size(); ++i) {
        mask_[i] = mask_[i] && other.mask_[i];
    }
    return *this;
}

TropGeneratorSet::TropGeneratorSet(std::vector<TropPoint> points, Mode mode) : points_(std::move(points)), mode_(mode)
{
    if (points_.empty()) {
        throw Error(ErrorCode::invalid_input, "generator set must be nonempty");
    }
    for (const auto& p : points_) {
        require_same_size(p.size(), points_.front().size(), "generator set");
    }
    std::sort(points_.begin(), points_.end());
    points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
}

TropGeneratorSet TropGeneratorSet::without(std::size_t index) const
{
    std::vector<TropPoint> rest;
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (i != index) {
            rest.push_back(points_[i]);
        }
    }
    return TropGeneratorSet(std::move(rest), mode_);
}

TropGeneratorSet TropGeneratorSet::negated() const
{
    std::vector<TropPoint> flipped;
    for (const auto& p : points_) {
        flipped.push_back(-p);
    }
    return TropGeneratorSet(std::move(flipped), opposite(mode_));
}

TropPoint tp_canonical(const std::vector<Rational>& raw) { return TropPoint(raw); }

TropPoint tp_combine(const std::vector<TropPoint>& points, const std::vector<Rational>& coeffs, Mode mode)
{
    if (points.empty()) {
        throw Error(ErrorCode::invalid_input, "tropical combination of an empty list");
    }
    require_same_size(points.size(), coeffs.size(), "combination coefficients");
    std::vector<Rational> acc(points.front().size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        require_same_size(points[i].size(), acc.size(), "combination");
        for (std::size_t x = 0; x < acc.size(); ++x) {
            const Rational v = points[i][x] + coeffs[i];
            if (i == 0 || (mode == Mode::lower ? v < acc[x] : v > acc[x])) {
                acc[x] = v;
            }
        }
    }
    return TropPoint(std::move(acc));
}

Rational tp_norm(const TropPoint& point) { return max_of(point.coords()); }

Rational tp_distance(const TropPoint& a, const TropPoint& b) { return tp_norm(a - b); }

Rational tp_b1(const TropPoint& point, const GroundSpace& space, Mode mode)
{
    require_same_size(point.size(), space.size(), "pseudonorm");
    const TropPoint& p = point;
    const Rational top = max_of(p.coords());
    Rational sum = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        sum += space.weights()[i] * (mode == Mode::lower ? Rational(p[i]) : Rational(top - p[i]));
    }
    return sum;
}

PseudonormValue tp_pseudonorm(const TropPoint& point, const GroundSpace& space, Exponent p, Mode mode)
{
    require_same_size(point.size(), space.size(), "pseudonorm");
    PseudonormValue out;
    switch (p) {
    case Exponent::one:
        out.value = tp_b1(point, space, mode);
        out.approx = to_double(out.value);
        return out;
    case Exponent::infinity:
        out.value = tp_norm(point);
        out.approx = to_double(out.value);
        return out;
    case Exponent::two: {
        const Rational top = tp_norm(point);
        double sum = 0.0;
        for (std::size_t i = 0; i < point.size(); ++i) {
            const double v = to_double(mode == Mode::lower ? Rational(point[i]) : Rational(top - point[i]));
            sum += to_double(space.weights()[i]) * v * v;
        }
        out.exact = false;
        out.approx = std::sqrt(sum);
        return out;
    }
    }
    return out;
}

ArgSet tp_argext(const TropPoint& point, Extremum which) { return argext_raw(point.coords(), which); }

TropPoint tp_path(const TropPoint& from, const TropPoint& to, const Rational& t, Mode mode)
{
    if (mode == Mode::upper) {
        return -tp_path(-from, -to, t, Mode::lower);
    }
    const TropPoint gap = to - from; // canonical: g - f - min(g - f)
    if (t < 0 || t > tp_norm(gap)) {
        throw Error(ErrorCode::precondition, "path parameter " + format_rational(t) + " outside [0, " +
                                                 format_rational(tp_norm(gap)) + "]");
    }
    std::vector<Rational> out(from.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = std::min(t, gap[i]) + from[i];
    }
    return TropPoint(std::move(out));
}

TropPoint tp_meet(const TropPoint& a, const TropPoint& b)
{
    return tp_combine({a, b}, {Rational(0), Rational(0)}, Mode::lower);
}

TropPoint tp_join(const TropPoint& a, const TropPoint& b)
{
    return tp_combine({a, b}, {Rational(0), Rational(0)}, Mode::upper);
}

Membership tp_member(const TropGeneratorSet& set, const TropPoint& point)
{
    require_same_size(set.dimension(), point.size(), "membership");
    if (set.mode() == Mode::lower) {
        return member_lower(set.points(), point);
    }
    // X_max(beta - gamma) = X_min(-beta + gamma): the lower test on negated data
    Membership out;
    ArgSet covered(point.size());
    for (const auto& g : set.points()) {
        out.cover.push_back(argext_raw(difference(g, point), Extremum::max));
        covered |= out.cover.back();
        out.coefficients.push_back(-max_of(difference(g, point)));
    }
    out.member = covered.is_full();
    return out;
}

TropPoint tp_project_unchecked(const TropGeneratorSet& set, const TropPoint& point)
{
    require_same_size(set.dimension(), point.size(), "projection");
    std::vector<Rational> coeffs;
    if (set.mode() == Mode::upper) {
        return -project_lower(set.negated().points(), -point, coeffs);
    }
    return project_lower(set.points(), point, coeffs);
}

ProjectionCheck tp_projection_check(const TropPoint& generator, const TropPoint& image, const TropPoint& point,
                                    const GroundSpace& space, Mode mode)
{
    ProjectionCheck check;
    check.b1_direct = tp_b1(generator - point, space, mode);
    check.b1_via_image = tp_b1(generator - image, space, mode) + tp_b1(image - point, space, mode);
    const Extremum side = mode == Mode::lower ? Extremum::min : Extremum::max;
    check.contact = tp_argext(generator - image, side) & tp_argext(image - point, side);
    return check;
}

Projection tp_project(const TropGeneratorSet& set, const TropPoint& point, const GroundSpace& space)
{
    require_same_size(set.dimension(), point.size(), "projection");
    Projection out;
    if (set.mode() == Mode::upper) {
        std::vector<Rational> coeffs;
        out.point = -project_lower(set.negated().points(), -point, coeffs);
        for (const auto& g : set.points()) {
            out.coefficients.push_back(-max_of(difference(g, point)));
        }
    } else {
        out.point = project_lower(set.points(), point, out.coefficients);
    }
    for (std::size_t i = 0; i < set.size(); ++i) {
        out.certificate.push_back(tp_projection_check(set.points()[i], out.point, point, space, set.mode()));
        if (!out.certificate.back().holds()) {
            throw Error(ErrorCode::certificate, "projection criterion violated at generator " + std::to_string(i) +
                                                    " " + to_string(set.points()[i]));
        }
    }
    // Spot-check the criteria on a few combinations of the generators too.
    if (set.size() > 1) {
        Rational span = 0;
        for (const auto& g : set.points()) {
            span = std::max(span, tp_norm(g));
        }
        std::mt19937_64 rng(0x7f4a7c15u);
        for (int k = 0; k < 4; ++k) {
            std::vector<Rational> coeffs;
            for (std::size_t i = 0; i < set.size(); ++i) {
                coeffs.push_back(span * ratio(static_cast<long>(rng() % 9), 8));
            }
            const TropPoint beta = tp_combine(set.points(), coeffs, set.mode());
            if (!tp_projection_check(beta, out.point, point, space, set.mode()).holds()) {
                throw Error(ErrorCode::certificate, "projection criterion violated at combination " + to_string(beta));
            }
        }
    }
    return out;
}

Projection tp_project(const TropGeneratorSet& set, const TropPoint& point)
{
    return tp_project(set, point, GroundSpace::uniform(point.size()));
}

std::vector<TropPoint> tp_extremals(const TropGeneratorSet& set)
{
    TropGeneratorSet current = set;
    std::size_t i = 0;
    while (i < current.size() && current.size() > 1) {
        const TropGeneratorSet rest = current.without(i);
        if (tp_member(rest, current.points()[i]).member) {
            current = rest;
        } else {
            ++i;
        }
    }
    return current.points();
}

TropPoint tp_retract(const TropGeneratorSet& set, const TropPoint& point, const Rational& t)
{
    if (t < 0 || t > 1) {
        throw Error(ErrorCode::precondition, "retraction time " + format_rational(t) + " outside [0, 1]");
    }
    const TropPoint image = tp_project_unchecked(set, point);
    const Rational gap = tp_distance(point, image);
    // profile phi(s) = 1/(1+s), inverse 1/t - 1
    const Rational start = Rational(1) / (Rational(1) + gap);
    if (t < start) {
        return point;
    }
    const Rational travelled = gap - (Rational(1) / t - 1);
    return tp_path(point, image, travelled, set.mode());
}

BounceTrace tp_fixed_point(const TropGeneratorSet& lower_set, const TropGeneratorSet& upper_set, const TropPoint& point)
{
    if (lower_set.mode() != Mode::lower || upper_set.mode() != Mode::upper) {
        throw Error(ErrorCode::precondition, "fixed-point bounce needs a lower and an upper generator set");
    }
    if (!tp_member(upper_set, point).member) {
        throw Error(ErrorCode::precondition, "start point " + to_string(point) + " is not in the upper hull");
    }
    BounceTrace trace;
    trace.start = point;
    trace.lower_image = tp_project(lower_set, point).point;
    trace.upper_image = tp_project(upper_set, trace.lower_image).point;
    trace.lower_again = tp_project(lower_set, trace.upper_image).point;
    trace.stable = trace.lower_again == trace.lower_image;
    if (!trace.stable) {
        throw Error(ErrorCode::certificate, "bounce did not stabilize: " + to_string(trace.lower_image) + " vs " +
                                                to_string(trace.lower_again));
    }
    return trace;
}

} // namespace tropkit
