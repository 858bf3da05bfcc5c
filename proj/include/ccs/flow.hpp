#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <queue>
#include <vector>

#include "ccs/rational.hpp"

namespace ccs {

// Dinic. Capacity type is a template parameter because transfer checks run
// on scaled GMP integers while everything combinatorial runs on long long.
template <typename Cap>
class MaxFlow {
public:
    explicit MaxFlow(int n) : adj_(n) {}

    int add_node() {
        adj_.emplace_back();
        return static_cast<int>(adj_.size()) - 1;
    }

    int add_edge(int from, int to, Cap cap) {
        int id = static_cast<int>(edges_.size());
        edges_.push_back({from, to, cap, Cap(0)});
        edges_.push_back({to, from, Cap(0), Cap(0)});
        adj_[from].push_back(id);
        adj_[to].push_back(id + 1);
        return id;
    }

    Cap flow_on(int id) const { return edges_[id].flow; }
    Cap residual(int id) const { return edges_[id].cap - edges_[id].flow; }

    void zero_edge(int id) {
        edges_[id].cap = edges_[id].flow = Cap(0);
        edges_[id ^ 1].cap = edges_[id ^ 1].flow = Cap(0);
    }

    Cap run(int s, int t) {
        Cap total(0);
        while (bfs(s, t)) {
            it_.assign(adj_.size(), 0);
            while (true) {
                Cap pushed = dfs(s, t, Cap(-1));
                if (pushed == Cap(0)) break;
                total += pushed;
            }
        }
        return total;
    }

private:
    struct Edge {
        int from, to;
        Cap cap, flow;
    };

    bool bfs(int s, int t) {
        level_.assign(adj_.size(), -1);
        level_[s] = 0;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int id : adj_[v]) {
                const Edge& e = edges_[id];
                if (level_[e.to] < 0 && e.flow < e.cap) {
                    level_[e.to] = level_[v] + 1;
                    q.push(e.to);
                }
            }
        }
        return level_[t] >= 0;
    }

    // limit < 0 means unbounded
    Cap dfs(int v, int t, Cap limit) {
        if (v == t) return limit;
        for (; it_[v] < static_cast<int>(adj_[v].size()); ++it_[v]) {
            int id = adj_[v][it_[v]];
            Edge& e = edges_[id];
            if (level_[e.to] != level_[v] + 1 || e.flow >= e.cap) continue;
            Cap avail = e.cap - e.flow;
            Cap pass = (limit < Cap(0) || avail < limit) ? avail : limit;
            Cap pushed = dfs(e.to, t, pass);
            if (pushed > Cap(0)) {
                e.flow += pushed;
                edges_[id ^ 1].flow -= pushed;
                return pushed;
            }
        }
        level_[v] = -2;  // dead end for this phase
        return Cap(0);
    }

    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adj_;
    std::vector<int> level_;
    std::vector<int> it_;
};

// One-client-one-slot bipartite assignment with per-facility service
// intervals. The shared flow core behind solution extraction, the oracle
// and pass-down coverage accounting.
struct AssignmentProblem {
    int num_clients = 0;
    // [lo, hi] per facility slot
    std::vector<std::pair<long long, long long>> bounds;
    // facility slot -> eligible client indices
    std::vector<std::vector<int>> eligible;
};

struct AssignmentResult {
    bool lower_bounds_met = false;
    long long coverage = 0;
    std::vector<int> client_to_facility;  // -1 = unassigned
};

AssignmentResult solve_assignment(const AssignmentProblem& ap);

// Routes every unit of supply into sinks along the given arcs, exact
// rational amounts. Returns the routing matrix, or nullopt if some supply
// cannot be placed. Weighted-Hall oracle for the transfer conditions.
std::optional<std::vector<std::vector<Rational>>> route_all_supply(
    const std::vector<Rational>& supply, const std::vector<Rational>& sink_cap,
    const std::vector<std::vector<char>>& arc);

// Min-cost max-flow with non-negative costs (successive shortest paths).
class MinCostFlow {
public:
    explicit MinCostFlow(int n) : n_(n), adj_(n) {}

    int add_edge(int from, int to, long long cap, long long cost);
    // Returns (flow, cost) for a maximum flow of minimum cost.
    std::pair<long long, long long> run(int s, int t);
    long long flow_on(int id) const { return edges_[id].flow; }

private:
    struct Edge {
        int from, to;
        long long cap, flow, cost;
    };
    int n_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adj_;
};

}  // namespace ccs
