#pragma once

#include <cstddef>
#include <exception>
#include <functional>

namespace tropkit {

// Kernels that loop over independent items (generators, samples, critical
// divisors) take one of these. The serial path is the reference; both must
// produce identical results.
enum class Execution { serial, parallel };

// Runs body(i) for i in [0, n). Exceptions thrown by any iteration are
// rethrown after the loop, lowest index first.
void for_each_index(std::size_t n, Execution policy, const std::function<void(std::size_t)>& body);

} // namespace tropkit
