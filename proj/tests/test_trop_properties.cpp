#include "doctest.h"

#include "support.hpp"

#include "tropkit/independence.hpp"

#include <cmath>

using namespace tropkit;
using testing::kCases;
using testing::q;

namespace {

Rational max_coord(const TropPoint& a)
{
    Rational m = a[0];
    for (const auto& x : a.coords()) {
        m = std::max(m, x);
    }
    return m;
}

// Minimum of the pointwise maximum of two canonical representatives.
Rational join_offset(const TropPoint& f, const TropPoint& g)
{
    Rational m = std::max(f[0], g[0]);
    for (std::size_t i = 0; i < f.size(); ++i) {
        m = std::min(m, std::max(f[i], g[i]));
    }
    return m;
}

bool meets(const ArgSet& a, const ArgSet& b) { return !(a & b).empty(); }

TropGeneratorSet random_set(testing::Rng& rng, std::size_t n, Mode mode, std::size_t max_gens = 4)
{
    return TropGeneratorSet(rng.trop_points(static_cast<std::size_t>(rng.integer(1, static_cast<long>(max_gens))), n),
                            mode);
}

TropPoint random_member(testing::Rng& rng, const TropGeneratorSet& set)
{
    std::vector<Rational> c;
    for (std::size_t i = 0; i < set.size(); ++i) {
        c.push_back(rng.fraction(-3, 3));
    }
    return tp_combine(set.points(), c, set.mode());
}

bool on_lower_segment(const TropPoint& a, const TropPoint& b, const TropPoint& g)
{
    return (tp_argext(a - g, Extremum::min) | tp_argext(b - g, Extremum::min)).is_full();
}

double b2_direct(const TropPoint& a, const GroundSpace& space)
{
    const auto f = testing::shifted_to_min_zero(a.coords());
    double total = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        total += space.weights()[i].get_d() * f[i].get_d() * f[i].get_d();
    }
    return std::sqrt(total);
}

} // namespace

TEST_CASE("pseudonorm duality between upper and lower")
{
    testing::Rng rng;
    for (int k = 0; k < kCases; ++k) {
        const std::size_t n = static_cast<std::size_t>(rng.integer(1, 6));
        const GroundSpace space = rng.space(n);
        const TropPoint a = rng.trop_point(n);
        for (Exponent p : {Exponent::one, Exponent::infinity}) {
            CHECK(tp_pseudonorm(a, space, p, Mode::upper).value == tp_pseudonorm(-a, space, p, Mode::lower).value);
        }
        CHECK(tp_pseudonorm(a, space, Exponent::two, Mode::upper).approx ==
              doctest::Approx(tp_pseudonorm(-a, space, Exponent::two, Mode::lower).approx).epsilon(1e-12));
    }
}

TEST_CASE("lower and upper B1 add up to mass times norm")
{
    testing::Rng rng;
    for (int k = 0; k < kCases; ++k) {
        const std::size_t n = static_cast<std::size_t>(rng.integer(1, 6));
        const GroundSpace space = rng.space(n);
        const TropPoint a = rng.trop_point(n);
        CHECK(tp_b1(a, space, Mode::lower) + tp_b1(a, space, Mode::upper) == space.total_mass() * tp_norm(a));
    }
}

TEST_CASE("normalized pseudonorms increase with p")
{
    testing::Rng rng;
    for (int k = 0; k < kCases; ++k) {
        const std::size_t n = static_cast<std::size_t>(rng.integer(1, 6));
        const GroundSpace space = rng.space(n);
        const TropPoint a = rng.trop_point(n);
        const double mass = space.total_mass().get_d();
        const double one = tp_b1(a, space).get_d() / mass;
        const auto two_value = tp_pseudonorm(a, space, Exponent::two, Mode::lower);
        const double two = two_value.approx / std::sqrt(mass);
        const double inf = tp_norm(a).get_d();
        CHECK(two_value.approx == doctest::Approx(b2_direct(a, space)).epsilon(1e-12));
        CHECK(one <= two + 1e-9);
        CHECK(two <= inf + 1e-9);
    }
}

TEST_CASE("sup pseudonorms equal the norm")
{
    testing::Rng rng;
    for (int k = 0; k < kCases; ++k) {
        const std::size_t n = static_cast<std::size_t>(rng.integer(1, 6));
        const GroundSpace space = rng.space(n);
        const TropPoint a = rng.trop_point(n);
        const auto f = testing::shifted_to_min_zero(a.coords());
        CHECK(tp_norm(a) == *std::max_element(f.begin(), f.end()));
        CHECK(tp_pseudonorm(a, space, Exponent::infinity, Mode::lower).value == tp_norm(a));
        CHECK(tp_pseudonorm(a, space, Exponent::infinity, Mode::upper).value == tp_norm(a));
    }
}

TEST_CASE("norm triangle equality condition")
{
    testing::Rng rng;
    int equal_cases = 0;
    for (int k = 0; k < kCases; ++k) {
        const std::size_t n = static_cast<std::size_t>(rng.integer(2, 4));
        const TropPoint a = rng.trop_point(n, -2, 2, 1);
        const TropPoint b = rng.trop_point(n, -2, 2, 1);
        const bool equality = tp_norm(a + b) == tp_norm(a) + tp_norm(b);
        const bool condition = meets(tp_argext(a, Extremum::min), tp_argext(b, Extremum::min)) &&
                               meets(tp_argext(a, Extremum::max), tp_argext(b, Extremum::max));
        CHECK(equality == condition);
        CHECK(tp_norm(a + b) <= tp_norm(a) + tp_norm(b));
        equal_cases += equality;
    }
    CHECK(equal_cases > 10);
    CHECK(equal_cases < kCases - 10);
}

TEST_CASE("lattice identities on representatives")
{
    testing::Rng rng;
    for (int k = 0; k < kCases; ++k) {
        const std::size_t n = static_cast<std::size_t>(rng.integer(1, 5));
        const TropPoint f = rng.trop_point(n);
        const TropPoint g = rng.trop_point(n);
        const TropPoint h = rng.trop_point(n);

        // f min (f max g) = f
        const TropPoint fg = tp_join(f, g);
        CHECK(tp_combine({f, fg}, {q(0), join_offset(f, g)}, Mode::lower) == f);

        // f max (g min h) = (f max g) min (f max h); canonical g and h make min(g, h) exact
        const TropPoint fh = tp_join(f, h);
        CHECK(tp_join(f, tp_meet(g, h)) == tp_combine({fg, fh}, {join_offset(f, g), join_offset(f, h)}, Mode::lower));

        // (f min g) + (f max g) = f + g
        CHECK(tp_meet(f, g) + tp_join(f, g) == f + g);

        // (-f) min (-g) = -(f max g)
        CHECK(tp_combine({-f, -g}, {-max_coord(f), -max_coord(g)}, Mode::lower) == -tp_join(f, g));
    }
}

TEST_CASE("segments reverse and are isometric")
{
    testing::Rng rng;
    for (int k = 0; k < kCases; ++k) {
        const std::size_t n = static_cast<std::size_t>(rng.integer(1, 5));
        const TropPoint a = rng.trop_point(n);
        const TropPoint b = rng.trop_point(n);
        const Mode mode = rng.coin() ? Mode::lower : Mode::upper;
        const Rational d = tp_distance(a, b);
        const Rational t1 = d * q(rng.integer(0, 8), 8);
        const Rational t2 = d * q(rng.integer(0, 8), 8);
        CHECK(tp_path(a, b, t1, mode) == tp_path(b, a, d - t1, mode));
        CHECK(tp_distance(tp_path(a, b, t1, mode), tp_path(a, b, t2, mode)) == abs(t1 - t2));
        CHECK(tp_path(a, b, d, mode) == b);
        CHECK(tp_path(a, b, Rational(0), mode) == a);
    }
}

TEST_CASE("three point segment criterion")
{
    testing::Rng rng;
    int hits = 0;
    for (int k = 0; k < kCases; ++k) {
        const std::size_t n = static_cast<std::size_t>(rng.integer(2, 4));
        const TropPoint a = rng.trop_point(n, -2, 2, 1);
        const TropPoint b = rng.trop_point(n, -2, 2, 1);
        const Rational d = tp_distance(a, b);
        CHECK(on_lower_segment(a, b, tp_path(a, b, d * q(rng.integer(0, 4), 4), Mode::lower)));

        const TropPoint g = rng.trop_point(n, -2, 2, 1);
        const bool criterion = on_lower_segment(a, b, g);
        const Rational t = tp_distance(a, g);
        const bool on_path = t <= d && tp_path(a, b, t, Mode::lower) == g;
        CHECK(criterion == on_path);
        hits += criterion;
    }
    CHECK(hits > 0);
}

TEST_CASE("projection fixes members and is nonexpansive")
{
    testing::Rng rng;
    for (int k = 0; k < kCases; ++k) {
        const std::size_t n = static_cast<std::size_t>(rng.integer(2, 4));
        const Mode mode = rng.coin() ? Mode::lower : Mode::upper;
        const TropGeneratorSet set = random_set(rng, n, mode);
        const GroundSpace space = rng.space(n);
        const TropPoint member = random_member(rng, set);
        CHECK(tp_member(set, member).member);
        CHECK(tp_project(set, member, space).point == member);

        const TropPoint a = rng.trop_point(n);
        const TropPoint b = rng.trop_point(n);
        CHECK(tp_distance(tp_project(set, a, space).point, tp_project(set, b, space).point) <= tp_distance(a, b));
    }
}

TEST_CASE("projections nest through generator subsets")
{
    testing::Rng rng;
    for (int k = 0; k < kCases; ++k) {
        const std::size_t n = static_cast<std::size_t>(rng.integer(2, 4));
        const Mode mode = rng.coin() ? Mode::lower : Mode::upper;
        const TropGeneratorSet set = random_set(rng, n, mode, 5);
        std::vector<TropPoint> sub;
        for (const auto& p : set.points()) {
            if (rng.coin()) {
                sub.push_back(p);
            }
        }
        if (sub.empty()) {
            sub.push_back(set.points().front());
        }
        const TropGeneratorSet inner(sub, mode);
        const TropPoint g = rng.trop_point(n);
        CHECK(tp_project(inner, tp_project(set, g).point).point == tp_project(inner, g).point);
    }
}

TEST_CASE("projection criteria hold against random hull members")
{
    testing::Rng rng;
    for (int k = 0; k < kCases; ++k) {
        const std::size_t n = static_cast<std::size_t>(rng.integer(2, 4));
        const Mode mode = rng.coin() ? Mode::lower : Mode::upper;
        const TropGeneratorSet set = random_set(rng, n, mode);
        const GroundSpace space = rng.space(n);
        const TropPoint g = rng.trop_point(n);
        const Projection p = tp_project(set, g, space);
        for (const auto& c : p.certificate) {
            CHECK(c.holds());
        }
        for (int j = 0; j < 100; ++j) {
            const auto check = tp_projection_check(random_member(rng, set), p.point, g, space, mode);
            CHECK(check.holds());
        }
    }
}

TEST_CASE("no sampled hull point beats the projection at p = 1 or 2")
{
    testing::Rng rng;
    for (int k = 0; k < kCases; ++k) {
        const std::size_t n = static_cast<std::size_t>(rng.integer(2, 4));
        const TropGeneratorSet set = random_set(rng, n, Mode::lower, 3);
        const GroundSpace space = rng.space(n);
        const TropPoint g = rng.trop_point(n);
        const TropPoint p = tp_project(set, g, space).point;
        const Rational best1 = tp_b1(p - g, space);
        const double best2 = b2_direct(p - g, space);
        for (int j = 0; j < 60; ++j) {
            const TropPoint x = random_member(rng, set);
            CHECK(tp_b1(x - g, space) >= best1);
            CHECK(b2_direct(x - g, space) >= best2 - 1e-9);
        }
    }
}

TEST_CASE("upper projection is dual to lower projection")
{
    testing::Rng rng;
    for (int k = 0; k < kCases; ++k) {
        const std::size_t n = static_cast<std::size_t>(rng.integer(2, 4));
        const TropGeneratorSet set = random_set(rng, n, Mode::lower);
        std::vector<TropPoint> neg;
        for (const auto& p : set.points()) {
            neg.push_back(-p);
        }
        const TropPoint g = rng.trop_point(n);
        CHECK(tp_project(TropGeneratorSet(neg, Mode::upper), -g).point == -tp_project(set, g).point);
    }
}

TEST_CASE("hull of a union lies on segments between projections")
{
    testing::Rng rng;
    for (int k = 0; k < kCases; ++k) {
        const std::size_t n = static_cast<std::size_t>(rng.integer(2, 4));
        const TropGeneratorSet s1 = random_set(rng, n, Mode::lower, 3);
        const TropGeneratorSet s2 = random_set(rng, n, Mode::lower, 3);
        std::vector<TropPoint> all = s1.points();
        all.insert(all.end(), s2.points().begin(), s2.points().end());
        const TropPoint g = random_member(rng, TropGeneratorSet(all, Mode::lower));
        const TropPoint p1 = tp_project(s1, g).point;
        const TropPoint p2 = tp_project(s2, g).point;
        CHECK(on_lower_segment(p1, p2, g));
        CHECK(tp_path(p1, p2, tp_distance(p1, g), Mode::lower) == g);
    }
}

TEST_CASE("projection distance bound between paired hulls")
{
    testing::Rng rng;
    for (int k = 0; k < kCases; ++k) {
        const std::size_t n = static_cast<std::size_t>(rng.integer(2, 4));
        const std::size_t m = static_cast<std::size_t>(rng.integer(1, 4));
        std::vector<TropPoint> alpha;
        std::vector<TropPoint> beta;
        std::vector<Rational> c;
        Rational bound = 0;
        for (std::size_t i = 0; i < m; ++i) {
            alpha.push_back(rng.trop_point(n));
            beta.push_back(rng.trop_point(n));
            c.push_back(rng.fraction(-3, 3));
            bound = std::max(bound, tp_distance(alpha.back(), beta.back()));
        }
        const TropPoint g = tp_combine(alpha, c, Mode::lower);
        CHECK(tp_distance(tp_project(TropGeneratorSet(beta, Mode::lower), g).point, g) <= bound);
    }
}

TEST_CASE("retraction endpoints and Lipschitz bound")
{
    testing::Rng rng;
    for (int k = 0; k < kCases; ++k) {
        const std::size_t n = static_cast<std::size_t>(rng.integer(2, 4));
        const Mode mode = rng.coin() ? Mode::lower : Mode::upper;
        const TropGeneratorSet set = random_set(rng, n, mode);
        const TropPoint g1 = rng.trop_point(n);
        const TropPoint g2 = rng.trop_point(n);
        const Rational t = q(rng.integer(0, 12), 12);
        CHECK(tp_retract(set, g1, Rational(0)) == g1);
        CHECK(tp_retract(set, g1, Rational(1)) == tp_project(set, g1).point);
        const TropPoint member = random_member(rng, set);
        CHECK(tp_retract(set, member, t) == member);
        CHECK(tp_distance(tp_retract(set, g1, t), tp_retract(set, g2, t)) <= 2 * tp_distance(g1, g2));
    }
}

TEST_CASE("fixed point bounce stabilizes")
{
    testing::Rng rng;
    for (int k = 0; k < kCases; ++k) {
        const std::size_t n = static_cast<std::size_t>(rng.integer(2, 4));
        const TropGeneratorSet low = random_set(rng, n, Mode::lower);
        const TropGeneratorSet up = random_set(rng, n, Mode::upper);
        const TropPoint g = random_member(rng, up);
        const BounceTrace trace = tp_fixed_point(low, up, g);
        CHECK(trace.stable);
        CHECK(trace.lower_again == trace.lower_image);
        CHECK(trace.lower_image == tp_project(low, g).point);
        CHECK(trace.upper_image == tp_project(up, trace.lower_image).point);
    }
}

TEST_CASE("independence notions are consistent and certificates re-verify")
{
    testing::Rng rng;
    int dependent = 0;
    for (int k = 0; k < kCases; ++k) {
        const std::size_t n = static_cast<std::size_t>(rng.integer(2, 3));
        const TropGeneratorSet set(rng.trop_points(static_cast<std::size_t>(rng.integer(2, 4)), n, -2, 2, 1),
                                   Mode::lower);
        if (set.size() < 2) {
            continue;
        }
        const auto weak = tp_independence(set, IndependenceKind::weak);
        const auto gm = tp_independence(set, IndependenceKind::gondran_minoux);
        const auto trop = tp_independence(set, IndependenceKind::tropical);
        REQUIRE(trop.status != IndependenceStatus::undecided);
        if (trop.status == IndependenceStatus::dependent) {
            ++dependent;
            REQUIRE(trop.coefficients.size() == set.size());
            for (std::size_t x = 0; x < n; ++x) {
                std::vector<Rational> values;
                for (std::size_t i = 0; i < set.size(); ++i) {
                    values.push_back(set.points()[i][x] + trop.coefficients[i]);
                }
                const Rational m = *std::min_element(values.begin(), values.end());
                CHECK(std::count(values.begin(), values.end(), m) >= 2);
            }
        }
        if (weak.status == IndependenceStatus::dependent) {
            REQUIRE(weak.redundant);
            CHECK(tp_member(set.without(*weak.redundant), set.points()[*weak.redundant]).member);
            CHECK(gm.status != IndependenceStatus::independent);
        }
        if (gm.status == IndependenceStatus::dependent) {
            REQUIRE(gm.common_point);
            std::vector<TropPoint> side;
            std::vector<TropPoint> rest;
            for (std::size_t i = 0; i < set.size(); ++i) {
                const bool in = std::find(gm.partition.begin(), gm.partition.end(), i) != gm.partition.end();
                (in ? side : rest).push_back(set.points()[i]);
            }
            REQUIRE_FALSE(side.empty());
            REQUIRE_FALSE(rest.empty());
            CHECK(tp_member(TropGeneratorSet(side, Mode::lower), *gm.common_point).member);
            CHECK(tp_member(TropGeneratorSet(rest, Mode::lower), *gm.common_point).member);
            CHECK(trop.status == IndependenceStatus::dependent);
        }
    }
    CHECK(dependent > 0);
}
