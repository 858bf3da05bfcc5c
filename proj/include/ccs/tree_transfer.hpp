#pragma once

#include <map>
#include <set>
#include <vector>

#include "ccs/instance.hpp"
#include "ccs/lp.hpp"

namespace ccs {

// A rooted facility tree with fractional openings: internal nodes fully
// open, leaves fractional, integral total mass.
struct TreeInstance {
    Id root = -1;
    std::map<Id, Id> parent;  // root absent
    std::map<Id, std::vector<Id>> children;
    std::map<Id, long> lower, upper;
    std::map<Id, Rational> y;

    std::vector<Id> nodes() const;  // sorted
    bool is_leaf(Id v) const;
    int tree_dist(Id a, Id b) const;  // hop distance in the tree
    TransferSpace transfer_space() const;
};

FeasibilityReport validate_tree_instance(const TreeInstance& ti);

// Rounds the fractional openings into a set F with |F| = sum(y) whose
// indicator is an integral local distance-2 transfer of y under the tree
// metric. Leaf-splitting recursion: detach a deepest all-leaf-children
// node r, open the Y highest-capacity children, and branch on how U_r
// compares with the Y-th highest child capacity.
std::set<Id> round_tree(const TreeInstance& ti);

}  // namespace ccs
