#pragma once

#include <map>
#include <string>
#include <vector>

#include "ccs/induced.hpp"
#include "ccs/instance.hpp"

namespace ccs::test {

// Instance over points on a line, distance = absolute difference.
inline Instance line_instance(const std::vector<std::pair<Id, long>>& fac_pos,
                              const std::vector<std::pair<Id, long>>& cli_pos, long L, long U,
                              long p) {
    Instance inst;
    std::map<Id, long> pos;
    for (auto [id, x] : fac_pos) {
        inst.facilities.push_back(id);
        inst.upper_bounds[id] = U;
        pos[id] = x;
    }
    for (auto [id, x] : cli_pos) {
        inst.clients.push_back(id);
        pos.emplace(id, x);
    }
    for (const auto& [id, x] : pos) inst.points.push_back(id);
    const int n = static_cast<int>(inst.points.size());
    inst.metric.assign(n, std::vector<Rational>(n, Rational(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            long d = pos.at(inst.points[i]) - pos.at(inst.points[j]);
            inst.metric[i][j] = Rational(d < 0 ? -d : d);
        }
    inst.lower_bound = L;
    inst.coverage_target = p;
    inst.mode = CapacityMode::Soft;
    inst.kind = ProblemKind::Supplier;
    return inst;
}

// Two facilities at 0 and 10, clients at 0, 1, 9, 10, L = U = 2, p = 4.
// Facility ids 0, 1; client ids 2..5.
inline Instance g1() {
    return line_instance({{0, 0}, {1, 10}}, {{2, 0}, {3, 1}, {4, 9}, {5, 10}}, 2, 2, 4);
}

// Path u1-v1-u2-v2-u3: facilities 1, 2, 3, clients 4, 5.
inline InducedInstance p1() {
    return InducedInstance::from_edges({1, 2, 3}, {4, 5}, {{1, 4}, {2, 4}, {2, 5}, {3, 5}});
}

// Chain of seven facilities 1..7 linked by shared clients, with enough
// private clients to keep every degree >= 2 (used for deep exchange
// routes; see test_greedy).
inline InducedInstance chain7() {
    std::vector<std::pair<Id, Id>> edges;
    for (Id i = 1; i <= 6; ++i) {
        edges.push_back({i, 10 + i});      // m_i between f_i and f_{i+1}
        edges.push_back({i + 1, 10 + i});
    }
    edges.push_back({1, 21});
    edges.push_back({1, 22});
    edges.push_back({1, 27});
    edges.push_back({3, 23});
    edges.push_back({5, 24});
    edges.push_back({7, 25});
    edges.push_back({7, 26});
    return InducedInstance::from_edges({1, 2, 3, 4, 5, 6, 7},
                                       {11, 12, 13, 14, 15, 16, 21, 22, 23, 24, 25, 26, 27},
                                       edges);
}

// Eleven-facility chain in the same pattern (client ids offset past the
// facility range), deep enough for exchange routes with several
// intermediate clients.
inline InducedInstance chain11() {
    std::vector<std::pair<Id, Id>> edges;
    for (Id i = 1; i <= 10; ++i) {
        edges.push_back({i, 100 + i});
        edges.push_back({i + 1, 100 + i});
    }
    for (Id c : {121, 122, 127}) edges.push_back({1, c});
    edges.push_back({3, 123});
    edges.push_back({5, 124});
    edges.push_back({7, 125});
    edges.push_back({9, 126});
    edges.push_back({11, 128});
    edges.push_back({11, 129});
    std::vector<Id> clients;
    for (Id c = 101; c <= 110; ++c) clients.push_back(c);
    for (Id c : {121, 122, 123, 124, 125, 126, 127, 128, 129}) clients.push_back(c);
    return InducedInstance::from_edges({1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}, clients, edges);
}

inline std::map<Id, long> uniform_upper(const InducedInstance& ind, long U) {
    std::map<Id, long> m;
    for (Id u : ind.facilities()) m[u] = U;
    for (Id v : ind.clients()) m.emplace(v, U);
    return m;
}

}  // namespace ccs::test
