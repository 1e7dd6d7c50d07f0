#pragma once

#include "tropkit/linear_system.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

namespace tropkit {

// rho between anchored divisors, without a solve.
Rational anchored_rho(const Anchored& a, const Anchored& b);

// Path divisors at every breakpoint level of every generator pair,
// deduplicated and sorted by divisor.
std::vector<Anchored> tt_critical_anchored(const LinearSystem& t, Execution policy = Execution::parallel);
std::vector<Divisor> tt_critical(const LinearSystem& t, Execution policy = Execution::parallel);

struct SkeletonArc {
    std::size_t a = 0;
    std::size_t b = 0;
    Rational length;
};

// Nodes are the critical divisors; arcs join consecutive nodes along each
// generator segment.
struct TreeSkeleton {
    std::vector<Anchored> nodes;
    std::vector<SkeletonArc> arcs;
    // Generator indices whose divisor is each node, if any.
    std::vector<std::vector<std::size_t>> generators_at;

    std::size_t find(const Divisor& d) const;
    std::vector<std::size_t> neighbours(std::size_t node) const;
    bool is_tree() const;
    // Nodes in the component of `start` once `removed` is deleted.
    std::vector<bool> component(std::size_t start, std::size_t removed) const;
    // Arc whose closed segment contains d, if any.
    std::optional<std::size_t> arc_containing(const Anchored& d) const;
};

TreeSkeleton tt_skeleton(const LinearSystem& t, Execution policy = Execution::parallel);

struct TreeReport {
    bool tree = false;
    std::string method = "critical-set verified";
    std::size_t critical_count = 0;
    // Set when a critical divisor has two bases not covering the graph.
    std::optional<Divisor> failing;
    std::optional<std::pair<ClosedSubset, ClosedSubset>> bases;
    // Set when a segment between critical divisors leaves the generator segments.
    std::optional<Divisor> stray;
    std::string message;
};

TreeReport tt_is_tree(const LinearSystem& t, Execution policy = Execution::parallel);

// Swept support of the generator segments; does not check tree-ness.
ClosedSubset tt_support_unchecked(const LinearSystem& t);
// Throws Error(precondition) when t is not a tree.
ClosedSubset tt_support(const LinearSystem& t);

struct DominanceReport {
    TreeReport tree;
    ClosedSubset support;
    std::vector<ClosedSubset::Gap> uncovered;
    std::size_t samples_checked = 0;
    std::optional<GraphPoint> sample_failure;
    bool dominant = false;
    std::string message;
};

// Extra spot-check points beyond the default sampling come from `seed`.
DominanceReport tt_is_dominant(const LinearSystem& t, std::uint64_t seed = 1, std::size_t extra_samples = 8,
                               Execution policy = Execution::parallel);

// Intersection of the bases at d. Throws Error(precondition) for non-members.
ClosedSubset tt_preimage(const LinearSystem& t, const Divisor& d);
ClosedSubset tt_preimage(const LinearSystem& t, const Anchored& d);

std::vector<std::pair<GraphPoint, Divisor>> tt_reduced_map(const LinearSystem& t,
                                                           const std::vector<GraphPoint>& samples,
                                                           Execution policy = Execution::parallel);

} // namespace tropkit
