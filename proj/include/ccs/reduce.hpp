#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "ccs/induced.hpp"
#include "ccs/instance.hpp"

namespace ccs {

struct ThresholdDecomposition {
    std::vector<InducedInstance> components;
    std::vector<Id> unreachable_clients;  // no facility within r
};

// One InducedInstance per connected component of the threshold graph at r.
// Facility-only components are dropped; clients with no incident edge are
// reported separately.
ThresholdDecomposition build_threshold_graph(const Instance& inst, const Rational& r);

// Per-component feasibility table. Row k' (single row 0 when k is absent),
// column p'. A[k'][p'] = the component solver produced a solution opening
// exactly k' and serving at least p'.
using FeasTable = std::vector<std::vector<char>>;

// Finds per-component (k_i, p_i) with sum k_i = k (when k present),
// sum p_i >= p and every A_i[k_i][p_i] true. k_i is reported as 0 for the
// variant without k.
std::optional<std::vector<std::pair<long, long>>> combine_dp(
    const std::vector<FeasTable>& tables, std::optional<long> k, long p);

// What a component solver hands back: a solution over original ids whose
// distances live in the induced metric.
struct ComponentOutcome {
    Solution solution;   // radius field holds the induced (hop) radius
    long coverage = 0;
};

// Solves one induced component. For the variant without ks it is invoked once per
// component with p' = 0 and must return its maximum-coverage solution; with
// k present it is invoked over the (k', p') grid. Returns nullopt when the
// component admits no solution for the given targets.
using ComponentSolver = std::function<std::optional<ComponentOutcome>(
    const InducedInstance&, std::optional<long> k_target, long p_target)>;

struct GuessedSolution {
    Solution solution;        // radius = exact original-metric radius
    Rational guessed_radius;  // the r that was accepted
};

// Scans candidate radii ascending; at each r decomposes, fills the
// per-component tables, runs the DP, and returns the union solution at the
// first feasible r. `ratio` is the solver's induced-distance guarantee and
// only feeds the infeasibility error message.
GuessedSolution solve_with_guessing(const Instance& inst, const ComponentSolver& solver,
                                    int ratio);

}  // namespace ccs
