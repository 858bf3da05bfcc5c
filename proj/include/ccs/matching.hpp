#pragma once

#include <vector>

namespace ccs {

struct BipartiteMatching {
    long long cardinality = 0;
    long long weight = 0;
    std::vector<int> left_to_right;  // -1 unmatched
};

// Maximum-cardinality matching of maximum total weight among those.
// adj[l] lists (right vertex, weight >= 0).
BipartiteMatching max_weight_max_matching(
    int num_left, int num_right,
    const std::vector<std::vector<std::pair<int, long long>>>& adj);

}  // namespace ccs
