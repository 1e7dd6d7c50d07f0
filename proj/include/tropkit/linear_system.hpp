#pragma once

#include "tropkit/exec.hpp"
#include "tropkit/potential.hpp"

#include <array>
#include <vector>

namespace tropkit {

bool dv_lin_equiv(const MetricGraph& g, const Divisor& a, const Divisor& b);

// The pair (from, to) with its distance and min-normalized potential.
struct DivisorPath {
    Divisor from;
    Divisor to;
    Rational distance;
    PLFunction function;
};

// Throws Error(precondition) unless from ~ to, both effective.
DivisorPath dv_path_query(const MetricGraph& g, const Divisor& from, const Divisor& to);
Rational dv_rho(const MetricGraph& g, const Divisor& from, const Divisor& to);
// div(min(t, f)) + from; t must lie in [0, rho].
Divisor dv_path(const MetricGraph& g, const Divisor& from, const Divisor& to, const Rational& t);
Divisor dv_path(const MetricGraph& g, const DivisorPath& path, const Rational& t);

// Integral of the min-normalized f with div(f) = d - e.
Rational dv_b1(const MetricGraph& g, const Divisor& d, const Divisor& e);
// Integral of max f - f for the same f.
Rational dv_b1_upper(const MetricGraph& g, const Divisor& d, const Divisor& e);

// A divisor together with a potential of (divisor - reference), where the
// reference is the first generator of the system it came from. Differences
// of anchors give potentials between divisors without further solves.
struct Anchored {
    Divisor divisor;
    PLFunction anchor;
};

// Tropical convex hull of finitely many linearly equivalent effective
// integral divisors of one degree.
class LinearSystem {
public:
    // Throws Error(precondition) on an empty list, non-effective or
    // non-integral generators, unequal degrees or inequivalent pairs.
    static LinearSystem build(GraphHandle graph, std::vector<Divisor> generators,
                              Execution policy = Execution::parallel);

    const MetricGraph& graph() const { return *graph_; }
    const GraphHandle& handle() const { return graph_; }
    std::size_t size() const { return generators_.size(); }
    const Divisor& generator(std::size_t i) const { return generators_[i].divisor; }
    const Anchored& anchored(std::size_t i) const { return generators_[i]; }
    std::vector<Divisor> generators() const;
    const Rational& degree() const { return degree_; }
    const Divisor& reference() const { return reference_; }

    // The sub-system on the given generator indices, sharing anchors.
    LinearSystem subsystem(const std::vector<std::size_t>& indices) const;

    // One solve against the reference. Requires equal degree.
    Anchored anchor(const Divisor& e) const;

private:
    GraphHandle graph_;
    std::vector<Anchored> generators_;
    Divisor reference_;
    Rational degree_;
};

// Normalized potential f with div(f) = b - a.
PLFunction anchored_potential(const Anchored& a, const Anchored& b);
// Path from a to b at level t, with its anchor.
Anchored anchored_path(const MetricGraph& g, const Anchored& a, const Anchored& b, const Rational& t);

struct MembershipReport {
    bool member = false;
    // Minimizer set of the potential from E to each generator.
    std::vector<ClosedSubset> sets;
    ClosedSubset cover;
};

MembershipReport ls_member(const LinearSystem& t, const Divisor& e);
MembershipReport ls_member(const LinearSystem& t, const Anchored& e);

struct DivisorProjection {
    Anchored result;
    // Per generator D: the minimizer set of f(D - pi) meeting that of f(pi - E).
    std::vector<ClosedSubset> witnesses;
    // Per generator: B1(D - E), B1(D - pi), B1(pi - E).
    std::vector<std::array<Rational, 3>> b1;
    bool holds() const;
};

// Residuated projection. Throws Error(precondition) on a degree mismatch or
// non-effective input and Error(certificate) when a check fails.
DivisorProjection ls_project(const LinearSystem& t, const Divisor& e);
DivisorProjection ls_project(const LinearSystem& t, const Anchored& e);

// Projection of d.(q).
Divisor ls_reduced(const LinearSystem& t, const GraphPoint& q);
Anchored ls_reduced_anchored(const LinearSystem& t, const GraphPoint& q);

// Minimal generating subset, in input order.
std::vector<std::size_t> ls_extremal_indices(const LinearSystem& t);
std::vector<Divisor> ls_extremals(const LinearSystem& t);

// Distinct proper minimizer sets of the potentials from D toward the
// generators. Throws Error(precondition) when D is not in the system.
std::vector<ClosedSubset> ls_bases(const LinearSystem& t, const Divisor& d);
std::vector<ClosedSubset> ls_bases(const LinearSystem& t, const Anchored& d);

} // namespace tropkit
