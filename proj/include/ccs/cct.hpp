#pragma once

#include <map>
#include <vector>

#include "ccs/induced.hpp"

namespace ccs {

// Rooted tree over the facilities of one induced instance. Tree edges span
// induced distance <= 2; facilities in even layers (the core-center set I)
// are pairwise >= 3 apart.
struct CoreCenterTree {
    Id root = -1;
    std::map<Id, int> layer;
    std::map<Id, Id> parent;  // root absent
    std::map<Id, std::vector<Id>> children;
    std::vector<Id> core;  // sorted

    bool in_core(Id u) const;
    // walks `steps` parent edges; asserts they exist
    Id ancestor(Id u, int steps) const;
};

struct PreprocessResult {
    std::vector<Id> survivors;                 // |N[u]| >= L
    std::map<Id, long> capped_upper;           // min(U_u, |N[u]|) per survivor
    std::vector<InducedInstance> subinstances; // re-split when deletions disconnect
    std::vector<Id> dropped_clients;           // left with no adjacent facility
};

// Deletes facilities that cannot reach L clients, caps the remaining upper
// bounds at |N[u]|, and re-splits the graph if the deletions disconnected
// it. Throws NoFacilitySurvives when nothing is left.
PreprocessResult preprocess_facilities(const InducedInstance& ind, long lower_bound,
                                       const std::map<Id, long>& upper_bounds);

// Modified BFS over G^2 (facility pairs at induced distance <= 2): the root
// is the lowest facility id, children are scanned in ascending id order, and
// every even-layer node absorbs its unscanned G^2 neighbors immediately so
// even layers stay independent in G^2.
CoreCenterTree build_cct(const InducedInstance& ind);

struct XiMap {
    std::map<Id, Id> xi;                   // client -> facility, total
    std::map<Id, std::vector<Id>> inverse; // facility -> sorted clients

    const std::vector<Id>& preimage(Id u) const;
};

// Core facilities claim their whole neighborhood; everything else goes to
// its lowest-id adjacent facility.
XiMap build_xi(const InducedInstance& ind, const CoreCenterTree& cct);

}  // namespace ccs
