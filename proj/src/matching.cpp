#include "ccs/matching.hpp"

#include <algorithm>

#include "ccs/flow.hpp"

namespace ccs {

BipartiteMatching max_weight_max_matching(
    int num_left, int num_right,
    const std::vector<std::vector<std::pair<int, long long>>>& adj) {
    long long wmax = 0;
    for (const auto& row : adj)
        for (auto [r, w] : row) wmax = std::max(wmax, w);

    // Shift edge costs to wmax - w: a min-cost maximum flow then maximizes
    // total weight among maximum-cardinality matchings.
    const int s = 0, t = 1 + num_left + num_right;
    MinCostFlow g(t + 1);
    for (int l = 0; l < num_left; ++l) g.add_edge(s, 1 + l, 1, 0);
    std::vector<std::vector<std::pair<int, int>>> edge_ids(num_left);
    for (int l = 0; l < num_left; ++l)
        for (auto [r, w] : adj[l])
            edge_ids[l].push_back({g.add_edge(1 + l, 1 + num_left + r, 1, wmax - w), r});
    for (int r = 0; r < num_right; ++r) g.add_edge(1 + num_left + r, t, 1, 0);

    auto [flow, cost] = g.run(s, t);

    BipartiteMatching m;
    m.cardinality = flow;
    m.weight = flow * wmax - cost;
    m.left_to_right.assign(num_left, -1);
    for (int l = 0; l < num_left; ++l)
        for (auto [id, r] : edge_ids[l])
            if (g.flow_on(id) > 0) m.left_to_right[l] = r;
    return m;
}

}  // namespace ccs
