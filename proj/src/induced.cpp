#include "ccs/induced.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace ccs {

namespace {
const std::vector<Id> kEmpty;
}

InducedInstance InducedInstance::from_parent(const Instance& parent, const Rational& radius,
                                             std::vector<Id> fac_ids, std::vector<Id> cli_ids) {
    InducedInstance ind;
    ind.parent = &parent;
    ind.guessed_radius = radius;
    ind.facilities_ = std::move(fac_ids);
    ind.clients_ = std::move(cli_ids);
    std::sort(ind.facilities_.begin(), ind.facilities_.end());
    std::sort(ind.clients_.begin(), ind.clients_.end());
    for (Id u : ind.facilities_) {
        auto& nu = ind.fac_adj_[u];
        for (Id v : ind.clients_)
            if (parent.dist(u, v) <= radius) nu.push_back(v);
    }
    for (Id v : ind.clients_) {
        auto& nv = ind.cli_adj_[v];
        for (Id u : ind.facilities_)
            if (parent.dist(u, v) <= radius) nv.push_back(u);
    }
    ind.finalize();
    return ind;
}

InducedInstance InducedInstance::from_edges(std::vector<Id> fac_ids, std::vector<Id> cli_ids,
                                            const std::vector<std::pair<Id, Id>>& edges) {
    InducedInstance ind;
    ind.facilities_ = std::move(fac_ids);
    ind.clients_ = std::move(cli_ids);
    std::sort(ind.facilities_.begin(), ind.facilities_.end());
    std::sort(ind.clients_.begin(), ind.clients_.end());
    for (Id u : ind.facilities_) ind.fac_adj_[u];
    for (Id v : ind.clients_) ind.cli_adj_[v];
    for (auto [u, v] : edges) {
        ind.fac_adj_.at(u).push_back(v);
        ind.cli_adj_.at(v).push_back(u);
    }
    // an id that is both roles is its own neighbor by convention
    for (Id u : ind.facilities_)
        if (std::binary_search(ind.clients_.begin(), ind.clients_.end(), u)) {
            auto& nu = ind.fac_adj_.at(u);
            if (std::find(nu.begin(), nu.end(), u) == nu.end()) {
                nu.push_back(u);
                ind.cli_adj_.at(u).push_back(u);
            }
        }
    for (auto& [u, nu] : ind.fac_adj_) {
        std::sort(nu.begin(), nu.end());
        nu.erase(std::unique(nu.begin(), nu.end()), nu.end());
    }
    for (auto& [v, nv] : ind.cli_adj_) {
        std::sort(nv.begin(), nv.end());
        nv.erase(std::unique(nv.begin(), nv.end()), nv.end());
    }
    ind.finalize();
    return ind;
}

void InducedInstance::finalize() {
    std::set<Id> ids(clients_.begin(), clients_.end());
    ids.insert(facilities_.begin(), facilities_.end());
    nodes_.assign(ids.begin(), ids.end());

    const int n = static_cast<int>(nodes_.size());
    // adjacency over node indices; self-edges excluded from the walk
    std::vector<std::vector<int>> adj(n);
    for (const auto& [u, nu] : fac_adj_) {
        int ui = node_index(u);
        for (Id v : nu) {
            if (v == u) continue;
            int vi = node_index(v);
            adj[ui].push_back(vi);
            adj[vi].push_back(ui);
        }
    }
    for (auto& row : adj) {
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
    }

    hop_.assign(n, std::vector<int>(n, -1));
    for (int s = 0; s < n; ++s) {
        auto& d = hop_[s];
        d[s] = 0;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int w : adj[v])
                if (d[w] < 0) {
                    d[w] = d[v] + 1;
                    q.push(w);
                }
        }
    }
}

int InducedInstance::node_index(Id a) const {
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), a);
    return (it != nodes_.end() && *it == a) ? static_cast<int>(it - nodes_.begin()) : -1;
}

bool InducedInstance::has_facility(Id u) const {
    return std::binary_search(facilities_.begin(), facilities_.end(), u);
}

bool InducedInstance::has_client(Id v) const {
    return std::binary_search(clients_.begin(), clients_.end(), v);
}

const std::vector<Id>& InducedInstance::clients_of(Id u) const {
    auto it = fac_adj_.find(u);
    return it == fac_adj_.end() ? kEmpty : it->second;
}

const std::vector<Id>& InducedInstance::facilities_of(Id v) const {
    auto it = cli_adj_.find(v);
    return it == cli_adj_.end() ? kEmpty : it->second;
}

int InducedInstance::hops(Id a, Id b) const {
    int ai = node_index(a), bi = node_index(b);
    if (ai < 0 || bi < 0) return -1;
    return hop_[ai][bi];
}

bool InducedInstance::connected() const {
    for (const auto& row : hop_)
        for (int d : row)
            if (d < 0) return false;
    return true;
}

std::pair<std::vector<InducedInstance>, std::vector<Id>> InducedInstance::restrict_facilities(
    const std::vector<Id>& keep) const {
    std::set<Id> kept(keep.begin(), keep.end());

    std::map<Id, std::vector<Id>> fadj, cadj;
    std::vector<Id> dropped;
    for (Id v : clients_) {
        std::vector<Id> nv;
        for (Id u : facilities_of(v))
            if (kept.count(u)) nv.push_back(u);
        if (nv.empty())
            dropped.push_back(v);
        else
            cadj[v] = std::move(nv);
    }
    for (Id u : keep) {
        std::vector<Id> nu;
        for (Id v : clients_of(u))
            if (cadj.count(v)) nu.push_back(v);
        fadj[u] = std::move(nu);
    }

    // connected components over the surviving bipartite structure
    std::map<Id, int> comp;
    int ncomp = 0;
    for (const auto& [v, nv] : cadj) {
        if (comp.count(v)) continue;
        int c = ncomp++;
        std::queue<Id> q;
        comp[v] = c;
        q.push(v);
        while (!q.empty()) {
            Id a = q.front();
            q.pop();
            auto visit = [&](Id b) {
                if (!comp.count(b)) {
                    comp[b] = c;
                    q.push(b);
                }
            };
            if (auto it = cadj.find(a); it != cadj.end())
                for (Id u : it->second) visit(u);
            if (auto it = fadj.find(a); it != fadj.end())
                for (Id w : it->second) visit(w);
        }
    }

    std::vector<std::vector<Id>> comp_fac(ncomp), comp_cli(ncomp);
    for (const auto& [v, _] : cadj) comp_cli[comp.at(v)].push_back(v);
    for (Id u : keep)
        if (comp.count(u)) comp_fac[comp.at(u)].push_back(u);

    std::vector<InducedInstance> subs;
    for (int c = 0; c < ncomp; ++c) {
        if (comp_fac[c].empty()) {
            // facility-less clients already went to `dropped` above, so a
            // component without facilities cannot occur
            for (Id v : comp_cli[c]) dropped.push_back(v);
            continue;
        }
        std::vector<std::pair<Id, Id>> edges;
        for (Id u : comp_fac[c])
            for (Id v : fadj.at(u))
                if (v != u) edges.emplace_back(u, v);
        InducedInstance sub = from_edges(comp_fac[c], comp_cli[c], edges);
        sub.parent = parent;
        sub.guessed_radius = guessed_radius;
        subs.push_back(std::move(sub));
    }
    std::sort(dropped.begin(), dropped.end());
    return {std::move(subs), std::move(dropped)};
}

}  // namespace ccs
