#pragma once

#include <cstdint>

namespace psat::detail {

// Solver::solve calls made so far on the calling thread. Enumeration reports
// differences of this counter so checks that own private solvers are included.
std::uint64_t thread_solve_calls();

}  // namespace psat::detail
