#include "ccs/flow.hpp"

#include <cassert>
#include <deque>

namespace ccs {

AssignmentResult solve_assignment(const AssignmentProblem& ap) {
    const int nc = ap.num_clients;
    const int nf = static_cast<int>(ap.bounds.size());
    // nodes: 0 = s, 1..nc clients, nc+1..nc+nf facilities, then t, S, T
    const int s = 0, t = nc + nf + 1, super_s = t + 1, super_t = t + 2;
    MaxFlow<long long> g(super_t + 1);

    std::vector<int> client_arc(nc, -1);
    std::vector<std::vector<int>> assign_arc(nf);
    for (int v = 0; v < nc; ++v) client_arc[v] = g.add_edge(s, 1 + v, 1);
    for (int u = 0; u < nf; ++u) {
        assign_arc[u].reserve(ap.eligible[u].size());
        for (int v : ap.eligible[u]) assign_arc[u].push_back(g.add_edge(1 + v, 1 + nc + u, 1));
    }

    // facility -> t carries a lower bound; standard excess transform.
    long long total_lower = 0;
    for (int u = 0; u < nf; ++u) {
        auto [lo, hi] = ap.bounds[u];
        assert(0 <= lo && lo <= hi);
        g.add_edge(1 + nc + u, t, hi - lo);
        if (lo > 0) {
            g.add_edge(super_s, t, lo);
            g.add_edge(1 + nc + u, super_t, lo);
            total_lower += lo;
        }
    }
    const long long inf = static_cast<long long>(nc) + 1;
    int back_arc = g.add_edge(t, s, inf);

    AssignmentResult res;
    res.client_to_facility.assign(nc, -1);
    long long routed = g.run(super_s, super_t);
    res.lower_bounds_met = (routed == total_lower);
    if (!res.lower_bounds_met) return res;

    long long base = g.flow_on(back_arc);
    g.zero_edge(back_arc);
    res.coverage = base + g.run(s, t);

    for (int u = 0; u < nf; ++u)
        for (std::size_t i = 0; i < assign_arc[u].size(); ++i)
            if (g.flow_on(assign_arc[u][i]) > 0)
                res.client_to_facility[ap.eligible[u][i]] = u;
    return res;
}

std::optional<std::vector<std::vector<Rational>>> route_all_supply(
    const std::vector<Rational>& supply, const std::vector<Rational>& sink_cap,
    const std::vector<std::vector<char>>& arc) {
    const int ns = static_cast<int>(supply.size());
    const int nt = static_cast<int>(sink_cap.size());

    BigInt scale(1);
    for (const auto& q : supply) scale = lcm(scale, q.get_den());
    for (const auto& q : sink_cap) scale = lcm(scale, q.get_den());

    auto scaled = [&](const Rational& q) -> BigInt {
        return q.get_num() * (scale / q.get_den());
    };

    const int s = 0, t = 1 + ns + nt;
    MaxFlow<BigInt> g(t + 1);
    BigInt total(0);
    for (int i = 0; i < ns; ++i) {
        g.add_edge(s, 1 + i, scaled(supply[i]));
        total += scaled(supply[i]);
    }
    for (int j = 0; j < nt; ++j) g.add_edge(1 + ns + j, t, scaled(sink_cap[j]));
    std::vector<std::vector<int>> ids(ns, std::vector<int>(nt, -1));
    for (int i = 0; i < ns; ++i)
        for (int j = 0; j < nt; ++j)
            if (arc[i][j]) ids[i][j] = g.add_edge(1 + i, 1 + ns + j, scaled(supply[i]));

    if (g.run(s, t) != total) return std::nullopt;

    std::vector<std::vector<Rational>> out(ns, std::vector<Rational>(nt, Rational(0)));
    for (int i = 0; i < ns; ++i)
        for (int j = 0; j < nt; ++j)
            if (ids[i][j] >= 0 && g.flow_on(ids[i][j]) > 0) {
                Rational q(g.flow_on(ids[i][j]), scale);
                q.canonicalize();
                out[i][j] = q;
            }
    return out;
}

int MinCostFlow::add_edge(int from, int to, long long cap, long long cost) {
    int id = static_cast<int>(edges_.size());
    edges_.push_back({from, to, cap, 0, cost});
    edges_.push_back({to, from, 0, 0, -cost});
    adj_[from].push_back(id);
    adj_[to].push_back(id + 1);
    return id;
}

std::pair<long long, long long> MinCostFlow::run(int s, int t) {
    const long long inf = std::numeric_limits<long long>::max() / 4;
    long long flow = 0, cost = 0;
    while (true) {
        // Bellman-Ford; graphs here are tiny and residual costs can go
        // negative, so no potentials.
        std::vector<long long> dist(n_, inf);
        std::vector<int> via(n_, -1);
        std::vector<char> inq(n_, 0);
        std::deque<int> q;
        dist[s] = 0;
        q.push_back(s);
        inq[s] = 1;
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            inq[v] = 0;
            for (int id : adj_[v]) {
                const Edge& e = edges_[id];
                if (e.flow < e.cap && dist[v] + e.cost < dist[e.to]) {
                    dist[e.to] = dist[v] + e.cost;
                    via[e.to] = id;
                    if (!inq[e.to]) {
                        inq[e.to] = 1;
                        q.push_back(e.to);
                    }
                }
            }
        }
        if (dist[t] >= inf) break;
        long long push = inf;
        for (int v = t; v != s;) {
            const Edge& e = edges_[via[v]];
            push = std::min(push, e.cap - e.flow);
            v = e.from;
        }
        for (int v = t; v != s;) {
            Edge& e = edges_[via[v]];
            e.flow += push;
            edges_[via[v] ^ 1].flow -= push;
            v = e.from;
        }
        flow += push;
        cost += push * dist[t];
    }
    return {flow, cost};
}

}  // namespace ccs
