#pragma once

#include "ccs/instance.hpp"

namespace ccs {

struct OracleResult {
    Rational radius;
    Solution witness;
};

// Exhaustive exact solver: scans candidate radii ascending and, per
// radius, searches facility opening patterns (subsets in hard mode, copy
// counts in soft mode) with an assignment flow per pattern. Guarded to
// 14 facilities / 16 clients. Throws TooLarge or Infeasible.
OracleResult exact_solve(const Instance& inst);

// Maximum achievable coverage at one radius under the instance's mode and
// k constraint (generator support; same search as exact_solve).
long oracle_max_coverage(const Instance& inst, const Rational& r);

inline constexpr int kOracleMaxFacilities = 14;
inline constexpr int kOracleMaxClients = 16;

}  // namespace ccs
