#pragma once

#include "tropkit/rational.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace tropkit {

// Min-plus ("lower") or max-plus ("upper") convexity.
enum class Mode { lower, upper };
enum class Extremum { min, max };
enum class Exponent { one, two, infinity };

Mode opposite(Mode mode);

// The finite ground set X with a strictly positive weight per element.
class GroundSpace {
public:
    explicit GroundSpace(std::vector<std::string> labels);
    GroundSpace(std::vector<std::string> labels, std::vector<Rational> weights);

    static GroundSpace uniform(std::size_t size);

    std::size_t size() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<Rational>& weights() const { return weights_; }
    const Rational& total_mass() const { return total_mass_; }

private:
    std::vector<std::string> labels_;
    std::vector<Rational> weights_;
    Rational total_mass_;
};

// A class of functions X -> Q modulo constants, stored with minimum 0.
class TropPoint {
public:
    TropPoint() = default;
    explicit TropPoint(std::vector<Rational> raw);

    std::size_t size() const { return coords_.size(); }
    const std::vector<Rational>& coords() const { return coords_; }
    const Rational& operator[](std::size_t i) const { return coords_[i]; }

    // The representative whose maximum is 0.
    std::vector<Rational> top_normalized() const;

    TropPoint operator-() const;
    friend TropPoint operator+(const TropPoint& a, const TropPoint& b);
    friend TropPoint operator-(const TropPoint& a, const TropPoint& b);

    friend bool operator==(const TropPoint& a, const TropPoint& b) { return a.coords_ == b.coords_; }
    friend bool operator<(const TropPoint& a, const TropPoint& b) { return a.coords_ < b.coords_; }

private:
    std::vector<Rational> coords_;
};

std::string to_string(const TropPoint& point);

// Membership mask over ground elements.
class ArgSet {
public:
    ArgSet() = default;
    explicit ArgSet(std::size_t size) : mask_(size, false) {}

    static ArgSet full(std::size_t size);

    std::size_t size() const { return mask_.size(); }
    bool contains(std::size_t i) const { return mask_[i]; }
    void insert(std::size_t i) { mask_[i] = true; }
    bool empty() const;
    bool is_full() const;
    std::vector<std::size_t> indices() const;

    ArgSet& operator|=(const ArgSet& other);
    ArgSet& operator&=(const ArgSet& other);
    friend ArgSet operator|(ArgSet a, const ArgSet& b) { return a |= b; }
    friend ArgSet operator&(ArgSet a, const ArgSet& b) { return a &= b; }
    friend bool operator==(const ArgSet& a, const ArgSet& b) { return a.mask_ == b.mask_; }

private:
    std::vector<bool> mask_;
};

// Finite generating set; deduplicated and sorted, so order never matters.
class TropGeneratorSet {
public:
    TropGeneratorSet(std::vector<TropPoint> points, Mode mode);

    const std::vector<TropPoint>& points() const { return points_; }
    Mode mode() const { return mode_; }
    std::size_t size() const { return points_.size(); }
    std::size_t dimension() const { return points_.front().size(); }

    TropGeneratorSet without(std::size_t index) const;
    TropGeneratorSet negated() const;

private:
    std::vector<TropPoint> points_;
    Mode mode_;
};

TropPoint tp_canonical(const std::vector<Rational>& raw);

TropPoint tp_combine(const std::vector<TropPoint>& points, const std::vector<Rational>& coeffs, Mode mode);

Rational tp_norm(const TropPoint& point);
Rational tp_distance(const TropPoint& a, const TropPoint& b);

struct PseudonormValue {
    bool exact = true;
    Rational value;      // valid when exact
    double approx = 0.0; // always filled
};

PseudonormValue tp_pseudonorm(const TropPoint& point, const GroundSpace& space, Exponent p, Mode mode);
// Exact B^1 pseudonorm (lower: integral of f - min f, upper: of max f - f).
Rational tp_b1(const TropPoint& point, const GroundSpace& space, Mode mode = Mode::lower);

ArgSet tp_argext(const TropPoint& point, Extremum which);

TropPoint tp_path(const TropPoint& from, const TropPoint& to, const Rational& t, Mode mode);

// Lattice operations on representatives: pointwise min and max.
TropPoint tp_meet(const TropPoint& a, const TropPoint& b);
TropPoint tp_join(const TropPoint& a, const TropPoint& b);

struct Membership {
    bool member = false;
    std::vector<ArgSet> cover;           // per generator: X_min(beta_i - gamma) (X_max in upper mode)
    std::vector<Rational> coefficients;  // residuated coefficients c_i
};

Membership tp_member(const TropGeneratorSet& set, const TropPoint& point);

struct ProjectionCheck {
    Rational b1_direct;     // B1(beta - gamma)
    Rational b1_via_image;  // B1(beta - pi) + B1(pi - gamma)
    ArgSet contact;         // X_min(beta - pi) & X_min(pi - gamma), X_max in upper mode
    bool holds() const { return b1_direct == b1_via_image && !contact.empty(); }
};

struct Projection {
    TropPoint point;
    std::vector<Rational> coefficients;
    std::vector<ProjectionCheck> certificate; // one per generator
};

// Throws Error(certificate) if any generator violates the criteria.
Projection tp_project(const TropGeneratorSet& set, const TropPoint& point, const GroundSpace& space);
Projection tp_project(const TropGeneratorSet& set, const TropPoint& point);

// The residuated formula alone, with no verification.
TropPoint tp_project_unchecked(const TropGeneratorSet& set, const TropPoint& point);

ProjectionCheck tp_projection_check(const TropPoint& generator, const TropPoint& image, const TropPoint& point,
                                    const GroundSpace& space, Mode mode);

std::vector<TropPoint> tp_extremals(const TropGeneratorSet& set);

// h(t, gamma) with profile 1/(1+s).
TropPoint tp_retract(const TropGeneratorSet& set, const TropPoint& point, const Rational& t);

struct BounceTrace {
    TropPoint start;
    TropPoint lower_image;   // alpha
    TropPoint upper_image;   // beta
    TropPoint lower_again;   // alpha'
    bool stable = false;
};

BounceTrace tp_fixed_point(const TropGeneratorSet& lower_set, const TropGeneratorSet& upper_set, const TropPoint& point);

} // namespace tropkit
