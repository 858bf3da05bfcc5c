#include "ccs/cct.hpp"

#include <algorithm>
#include <cassert>
#include <set>

#include "ccs/errors.hpp"

namespace ccs {

bool CoreCenterTree::in_core(Id u) const {
    return std::binary_search(core.begin(), core.end(), u);
}

Id CoreCenterTree::ancestor(Id u, int steps) const {
    for (int i = 0; i < steps; ++i) {
        auto it = parent.find(u);
        assert(it != parent.end() && "walked past the root");
        u = it->second;
    }
    return u;
}

PreprocessResult preprocess_facilities(const InducedInstance& ind, long lower_bound,
                                       const std::map<Id, long>& upper_bounds) {
    PreprocessResult res;
    for (Id u : ind.facilities()) {
        long deg = static_cast<long>(ind.clients_of(u).size());
        if (deg < lower_bound) continue;
        res.survivors.push_back(u);
        long ub = upper_bounds.at(u);
        res.capped_upper[u] = std::min(ub, deg);
    }
    if (res.survivors.empty())
        throw SolveError(ErrorKind::NoFacilitySurvives,
                         "every facility has fewer than L=" + std::to_string(lower_bound) +
                             " neighbors at this radius");

    auto [subs, dropped] = ind.restrict_facilities(res.survivors);
    res.subinstances = std::move(subs);
    res.dropped_clients = std::move(dropped);
    return res;
}

CoreCenterTree build_cct(const InducedInstance& ind) {
    const auto& facs = ind.facilities();
    assert(!facs.empty());

    // G^2 adjacency: facilities within two hops share a client or, in
    // center instances, are directly adjacent.
    std::map<Id, std::vector<Id>> g2;
    for (Id u : facs) {
        auto& nu = g2[u];
        for (Id w : facs) {
            if (w == u) continue;
            int d = ind.hops(u, w);
            if (d >= 0 && d <= 2) nu.push_back(w);
        }
    }

    CoreCenterTree t;
    t.root = facs.front();  // lowest id
    std::set<Id> scanned{t.root};
    t.layer[t.root] = 0;

    auto attach = [&](Id child, Id par) {
        t.parent[child] = par;
        t.children[par].push_back(child);
        t.layer[child] = t.layer.at(par) + 1;
        scanned.insert(child);
    };

    std::vector<Id> odd_frontier;
    for (Id w : g2.at(t.root))
        if (!scanned.count(w)) {
            attach(w, t.root);
            odd_frontier.push_back(w);
        }

    while (!odd_frontier.empty()) {
        std::vector<Id> next_odd;
        for (Id w : odd_frontier) {
            for (Id even : g2.at(w)) {
                if (scanned.count(even)) continue;
                attach(even, w);
                // absorb immediately so no later even node can touch it
                for (Id odd : g2.at(even)) {
                    if (scanned.count(odd)) continue;
                    attach(odd, even);
                    next_odd.push_back(odd);
                }
            }
        }
        odd_frontier = std::move(next_odd);
    }
    assert(scanned.size() == facs.size() && "induced instance must be connected");

    for (const auto& [u, layer] : t.layer)
        if (layer % 2 == 0) t.core.push_back(u);
    std::sort(t.core.begin(), t.core.end());
    return t;
}

const std::vector<Id>& XiMap::preimage(Id u) const {
    static const std::vector<Id> empty;
    auto it = inverse.find(u);
    return it == inverse.end() ? empty : it->second;
}

XiMap build_xi(const InducedInstance& ind, const CoreCenterTree& cct) {
    XiMap m;
    for (Id u : cct.core)
        for (Id v : ind.clients_of(u)) {
            assert(!m.xi.count(v) && "core neighborhoods must be disjoint");
            m.xi[v] = u;
        }
    for (Id v : ind.clients()) {
        if (m.xi.count(v)) continue;
        const auto& nv = ind.facilities_of(v);
        assert(!nv.empty() && "client with no adjacent facility in a component");
        m.xi[v] = nv.front();  // lowest id
    }
    for (const auto& [v, u] : m.xi) m.inverse[u].push_back(v);
    return m;
}

}  // namespace ccs
