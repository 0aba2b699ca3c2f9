#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>

#include "psat/satcheck.hpp"

namespace psat_cli {

/// Prints one PASS/FAIL line per fixture and property, then a summary.
/// Output depends only on the arguments. Returns true when everything passed.
bool run_selftest(std::ostream& out, std::uint64_t seed, std::size_t instances, const psat::CheckLimits& limits);

}  // namespace psat_cli
