#pragma once

#include <functional>
#include <map>
#include <optional>

#include "ccs/greedy.hpp"
#include "ccs/induced.hpp"
#include "ccs/instance.hpp"
#include "ccs/reduce.hpp"

namespace ccs {

enum class Variant {
    SoftUniform,            // uniform [L,U], soft copies, supplier or center
    HardUniformCenter,      // uniform [L,U], hard, center
    HardNonuniformCenter,   // uniform L, per-vertex U, hard, center
    SoftNonuniformSupplier, // uniform L, per-facility U, soft
};

const char* variant_name(Variant v);
int variant_ratio(Variant v);  // induced-distance guarantee: 5, 10, 11, 11
std::optional<Variant> variant_from_name(const std::string& name);

enum class RelocationMode { Matching, Greedy, ClientSubstitution };

// Replacement centers chosen per open copy, parallel to the pass-up list.
struct RelocationPlan {
    RelocationMode mode;
    std::vector<std::pair<Id, Id>> pairs;  // (copy facility, replacement)
};

// Builds the weighted bipartite graph between open copies and candidate
// vertices within six hops (weight = candidate capacity) and extracts a
// maximum-weight maximum matching that saturates the copy side. Throws
// MatchingDeficient when the copies cannot all be matched or the matched
// capacity stays below `p`.
RelocationPlan relocate_matching(const InducedInstance& ind, const PassUpResult& pu,
                                 const std::map<Id, long>& candidate_caps, long p);

FeasibilityReport check_relocation_contract(const InducedInstance& ind,
                                            const RelocationPlan& plan,
                                            const std::map<Id, long>& caps, long p);

// Observation hooks so test suites can audit every pipeline stage without
// re-running it.
struct PipelineTrace {
    std::function<void(const InducedInstance&, const CoreCenterTree&, const XiMap&,
                       const PassUpResult&, long L)>
        on_pass_up;
    std::function<void(const InducedInstance&, const RelocationPlan&,
                       const std::map<Id, long>& caps)>
        on_relocation;
    std::function<void(const InducedInstance&, const PassDownResult&,
                       const std::vector<long>& copy_caps, long L)>
        on_pass_down;
};

// The four end-to-end pipelines over one induced component. `upper` maps
// every id that may host a center to its capacity from the original
// instance (uncapped; preprocessing caps only gate deletion). All return a
// solution in induced hop distances; coverage below p raises
// CoverageShortfall and p = 0 returns the empty solution.
ComponentOutcome solve_soft_uniform(const InducedInstance& ind, long L, long U, long p,
                                    const PipelineTrace* trace = nullptr);
ComponentOutcome solve_hard_uniform_center(const InducedInstance& ind, long L, long U, long p,
                                           const PipelineTrace* trace = nullptr);
ComponentOutcome solve_hard_nonuniform_center(const InducedInstance& ind, long L,
                                              const std::map<Id, long>& upper, long p,
                                              const PipelineTrace* trace = nullptr);
ComponentOutcome solve_soft_nonuniform_supplier(const InducedInstance& ind, long L,
                                                const std::map<Id, long>& upper, long p,
                                                const PipelineTrace* trace = nullptr);

// Maximum-coverage run of the pipeline for the no-k-variant tables.
ComponentOutcome max_coverage_outcome(const InducedInstance& ind, Variant var, long L,
                                      const std::map<Id, long>& upper,
                                      const PipelineTrace* trace = nullptr);

// Instance-level dispatch: gates the variant against kind/mode/uniformity,
// then runs the radius-guessing reduction.
void check_variant_compatible(const Instance& inst, Variant var);
GuessedSolution solve_variant(const Instance& inst, Variant var,
                              const PipelineTrace* trace = nullptr);

}  // namespace ccs
