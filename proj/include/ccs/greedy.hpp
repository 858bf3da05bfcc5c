#pragma once

#include <map>
#include <vector>

#include "ccs/cct.hpp"
#include "ccs/induced.hpp"
#include "ccs/instance.hpp"

namespace ccs {

// Output of the bottom-up phase. Copies are opened on core facilities only,
// each serving exactly L clients; the b = |C| mod L leftovers all sit in
// the root's xi-neighborhood.
struct PassUpResult {
    std::vector<Id> open;        // facility per copy
    std::map<Id, int> phi;       // assigned client -> copy index
    std::vector<Id> unassigned;  // S, sorted
    long a = 0, b = 0;
};

// Walks the tree from the deepest eligible core facility to the root,
// opening centers in batches of exactly L. Throws TooFewClients when
// |C| < L and InvalidArgument when L < 1.
PassUpResult pass_up(const InducedInstance& ind, const CoreCenterTree& cct, const XiMap& xi,
                     long lower_bound);

struct PassDownResult {
    std::vector<Id> open;        // unchanged copy list from pass-up
    std::map<Id, int> phi;       // final assignment
    std::vector<Id> unassigned;  // final S
    long coverage = 0;
};

// Places the leftover clients one by one via exchange routes until either
// S is empty or every copy is at its capacity. `copy_caps` is parallel to
// `pu.open` and may have been remapped by a relocation step.
PassDownResult pass_down(const InducedInstance& ind, const CoreCenterTree& cct, const XiMap& xi,
                         const PassUpResult& pu, const std::vector<long>& copy_caps);

// Contract checks used by the test and acceptance suites.
FeasibilityReport check_pass_up_contract(const InducedInstance& ind, const CoreCenterTree& cct,
                                         const XiMap& xi, const PassUpResult& pu,
                                         long lower_bound);
FeasibilityReport check_pass_down_contract(const InducedInstance& ind, const PassDownResult& res,
                                           const std::vector<long>& copy_caps, long lower_bound,
                                           long coverage_target);

}  // namespace ccs
