#pragma once

#include "tropkit/tropical_tree.hpp"

namespace tropkit {

// A piece of an edge mapped linearly onto part of one skeleton arc.
struct SubArc {
    std::size_t edge = 0;
    Rational lo;
    Rational hi;
    std::size_t arc = 0;
    Rational factor;
};

struct LocalDegree {
    GraphPoint point;
    std::size_t node = 0;
    Rational degree;
};

struct PseudoHarmonicMap {
    TreeSkeleton skeleton;
    std::vector<SubArc> pieces;
    // Per skeleton node, its (finite) fiber.
    std::vector<std::vector<GraphPoint>> fibers;
    // Local degree at every fiber point.
    std::vector<LocalDegree> degrees;
    // Per edge, the factor when it is the same on the whole edge.
    std::vector<std::optional<Rational>> edge_factors;
};

// Throws Error(precondition) unless t is dominant and Error(certificate) when
// a factor is not a positive integer or disagrees with the local degree.
PseudoHarmonicMap tt_morphism(const LinearSystem& t, Execution policy = Execution::parallel);

// τ copies of the component of T minus `node` that contains `toward`,
// glued at `point`.
struct Attachment {
    GraphPoint point;
    std::size_t node = 0;
    std::size_t toward = 0;
    Rational multiplicity;
};

struct Harmonization {
    std::vector<Attachment> attachments;
    PseudoHarmonicMap map;
    Rational degree;
    // Fiber weight of every node after attaching; all equal to `degree`.
    std::vector<Rational> node_degrees;
};

Harmonization tt_harmonize(const LinearSystem& t, Execution policy = Execution::parallel);

struct WitnessReport {
    bool holds = false;
    Rational system_degree;
    DominanceReport dominance;
    std::optional<Rational> harmonic_degree;
    std::string message;
};

WitnessReport tt_verify_witness(const LinearSystem& t, const Rational& d, Execution policy = Execution::parallel);

} // namespace tropkit
