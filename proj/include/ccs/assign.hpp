#pragma once

#include <map>
#include <set>

#include "ccs/induced.hpp"
#include "ccs/instance.hpp"

namespace ccs {

// Turn an integral opening set into an assignment within hop distance
// `radius_bound`, meeting every facility interval and serving at least p.
struct ExtractionProblem {
    const InducedInstance* ind = nullptr;
    std::set<Id> open;
    long radius_bound = 0;  // hops
    std::map<Id, long> lower, upper;  // per open facility
    long p = 0;
};

// Single flow with per-facility service intervals, augmented to maximum
// coverage, then canonicalized to the lexicographically smallest maximal
// assignment by (client id, facility id). Throws ExtractionInfeasible when
// the intervals cannot be met or coverage stays below p.
Solution extract_solution(const ExtractionProblem& ep);

}  // namespace ccs
