#pragma once

#include <cstddef>
#include <span>

#include "smc/formula.hpp"
#include "smc/trace.hpp"

namespace smc {

/// Reference satisfaction relation on a finite trace, evaluated at the suffix
/// starting at `position`. Temporal operators that would need points beyond
/// the end of the trace are false. Until/Finally/Globally measure elapsed time
/// from `position`. Finally and Globally are checked directly, so surface and
/// desugared forms can be compared against each other.
bool check_trace_offline(const Formula& formula, const Trace& trace, std::size_t position,
                         std::span<const double> parameters);

}  // namespace smc
