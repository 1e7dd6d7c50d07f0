#pragma once

#include "tropkit/tropical.hpp"

#include <optional>
#include <vector>

namespace tropkit {

enum class IndependenceKind { weak, gondran_minoux, tropical };
enum class IndependenceStatus { independent, dependent, undecided };

struct IndependenceLimits {
    std::size_t max_generators = 8;
    std::size_t max_ground = 8;
};

struct IndependenceReport {
    IndependenceStatus status = IndependenceStatus::independent;
    // weak: index of a generator lying in the hull of the others
    std::optional<std::size_t> redundant;
    // gondran_minoux: one side of the partition and a common point of both hulls
    std::vector<std::size_t> partition;
    std::optional<TropPoint> common_point;
    std::size_t iterations = 0;
    // tropical: coefficients c with the extremum of f_i + c_i attained twice everywhere
    std::vector<Rational> coefficients;
};

IndependenceReport tp_independence(const TropGeneratorSet& set, IndependenceKind kind,
                                   IndependenceLimits limits = {});

// Tie count check used for tropical dependence certificates.
bool tp_is_dependence_certificate(const TropGeneratorSet& set, const std::vector<Rational>& coefficients);

} // namespace tropkit
