#include "ccs/greedy.hpp"

#include <algorithm>
#include <cassert>
#include <set>

#include "ccs/errors.hpp"

namespace ccs {

namespace {

// live view of the shrinking tree T'
struct WorkTree {
    std::set<Id> alive;
    std::map<Id, std::vector<Id>> children;  // alive children only

    explicit WorkTree(const CoreCenterTree& cct) {
        for (const auto& [u, _] : cct.layer) alive.insert(u);
        children = cct.children;
    }

    bool leaf(Id u) const {
        auto it = children.find(u);
        return it == children.end() || it->second.empty();
    }

    void collect_subtree(Id u, std::vector<Id>& out) const {
        out.push_back(u);
        if (auto it = children.find(u); it != children.end())
            for (Id c : it->second) collect_subtree(c, out);
    }
};

}  // namespace

PassUpResult pass_up(const InducedInstance& ind, const CoreCenterTree& cct, const XiMap& xi,
                     long lower_bound) {
    const long L = lower_bound;
    if (L < 1) throw SolveError(ErrorKind::InvalidArgument, "pass-up requires L >= 1");
    const long nc = static_cast<long>(ind.clients().size());
    if (nc < L)
        throw SolveError(ErrorKind::TooFewClients,
                         "component has " + std::to_string(nc) + " clients, L=" + std::to_string(L));

    WorkTree t(cct);
    std::set<Id> unassigned(ind.clients().begin(), ind.clients().end());

    PassUpResult res;
    auto open_copies_over = [&](Id u, const std::vector<Id>& block_pool, long copies) {
        // block_pool holds copies*L clients, consumed in order
        assert(static_cast<long>(block_pool.size()) == copies * L);
        std::size_t at = 0;
        for (long c = 0; c < copies; ++c) {
            int slot = static_cast<int>(res.open.size());
            res.open.push_back(u);
            for (long i = 0; i < L; ++i) {
                res.phi[block_pool[at]] = slot;
                unassigned.erase(block_pool[at]);
                ++at;
            }
        }
    };

    while (t.alive.count(cct.root)) {
        Id u = -1;
        if (t.alive.size() == 1) {
            u = cct.root;
        } else {
            // lowest-id core facility that is not a leaf and whose
            // grandchildren (if any) are all leaves
            for (Id cand : cct.core) {
                if (!t.alive.count(cand) || t.leaf(cand)) continue;
                bool ok = true;
                for (Id c : t.children.at(cand))
                    for (Id g : t.children.count(c) ? t.children.at(c) : std::vector<Id>{})
                        if (!t.leaf(g)) ok = false;
                if (ok) {
                    u = cand;
                    break;
                }
            }
        }
        assert(u >= 0 && "an eligible core facility always exists");

        std::vector<Id> subtree;
        t.collect_subtree(u, subtree);

        // pool = xi^{-1}(subtree \ {u}) cap S, ascending
        std::vector<Id> pool;
        for (Id w : subtree) {
            if (w == u) continue;
            for (Id v : xi.preimage(w))
                if (unassigned.count(v)) pool.push_back(v);
        }
        std::sort(pool.begin(), pool.end());

        const long l = static_cast<long>(pool.size());
        const long tq = l / L, q = l % L;

        std::vector<Id> topup;
        for (Id v : xi.preimage(u)) {
            if (static_cast<long>(topup.size()) == L - q) break;
            if (unassigned.count(v)) topup.push_back(v);
        }
        assert(static_cast<long>(topup.size()) == L - q &&
               "xi gives every core facility at least L clients");
        pool.insert(pool.end(), topup.begin(), topup.end());
        open_copies_over(u, pool, tq + 1);

        // delete the subtree, keep u as a leaf
        for (Id w : subtree)
            if (w != u) t.alive.erase(w);
        t.children[u].clear();

        if (u == cct.root) {
            std::vector<Id> rest;
            for (Id v : xi.preimage(u))
                if (unassigned.count(v)) rest.push_back(v);
            const long tr = static_cast<long>(rest.size()) / L;
            rest.resize(tr * L);
            open_copies_over(u, rest, tr);
            t.alive.clear();
        }
    }

    res.unassigned.assign(unassigned.begin(), unassigned.end());
    res.a = static_cast<long>(res.open.size());
    res.b = static_cast<long>(res.unassigned.size());
    assert(nc == res.a * L + res.b && res.b < L);
    return res;
}

PassDownResult pass_down(const InducedInstance& ind, const CoreCenterTree& cct, const XiMap& xi,
                         const PassUpResult& pu, const std::vector<long>& copy_caps) {
    assert(copy_caps.size() == pu.open.size());

    PassDownResult res;
    res.open = pu.open;
    res.phi = pu.phi;

    std::vector<long> load(pu.open.size(), 0);
    for (const auto& [v, slot] : res.phi) load[slot]++;
    for (std::size_t j = 0; j < load.size(); ++j)
        assert(load[j] <= copy_caps[j] && "remapped capacity below the pass-up load");

    std::set<Id> pending(pu.unassigned.begin(), pu.unassigned.end());
    std::set<Id> movable;  // B: assigned clients not yet used on a route
    for (const auto& [v, slot] : res.phi) movable.insert(v);

    // slack copies in (tree depth of facility, facility id, copy index) order
    auto pick_slack = [&]() -> int {
        int best = -1;
        for (std::size_t j = 0; j < res.open.size(); ++j) {
            if (load[j] >= copy_caps[j]) continue;
            if (best < 0) {
                best = static_cast<int>(j);
                continue;
            }
            Id bu = res.open[best], ju = res.open[j];
            auto key_b = std::make_tuple(cct.layer.at(bu), bu, best);
            auto key_j = std::make_tuple(cct.layer.at(ju), ju, static_cast<int>(j));
            if (key_j < key_b) best = static_cast<int>(j);
        }
        return best;
    };

    while (!pending.empty()) {
        int j = pick_slack();
        if (j < 0) break;  // every copy full
        Id v = *pending.begin();
        Id fac = res.open[j];

        if (fac == cct.root) {
            res.phi[v] = j;
            load[j]++;
            pending.erase(v);
            continue;
        }

        int depth = cct.layer.at(fac);
        assert(depth % 2 == 0 && "open copies sit on core facilities");
        const int m = depth / 2;

        // grandparent chain w_1..w_{m-1} strictly between root and fac
        std::vector<Id> route_clients;
        for (int i = 1; i <= m - 1; ++i) {
            Id w = cct.ancestor(fac, 2 * (m - i));
            Id picked = -1;
            for (Id c : xi.preimage(w))
                if (movable.count(c)) {
                    picked = c;
                    break;
                }
            // at most b < L clients are ever removed near any core node, so
            // the route cannot run dry
            assert(picked >= 0 && "exchange route exhausted a core neighborhood");
            if (picked < 0)
                throw SolveError(ErrorKind::InvalidArgument, "exchange route exhausted");
            route_clients.push_back(picked);
        }

        if (route_clients.empty()) {
            res.phi[v] = j;
        } else {
            std::vector<int> slots;
            slots.reserve(route_clients.size());
            for (Id c : route_clients) slots.push_back(res.phi.at(c));
            res.phi[v] = slots.front();
            for (std::size_t i = 0; i + 1 < route_clients.size(); ++i)
                res.phi[route_clients[i]] = slots[i + 1];
            res.phi[route_clients.back()] = j;
            for (Id c : route_clients) movable.erase(c);
        }
        load[j]++;
        pending.erase(v);
    }

    res.unassigned.assign(pending.begin(), pending.end());
    res.coverage = static_cast<long>(res.phi.size());
#ifndef NDEBUG
    for (const auto& [v, slot] : res.phi) {
        int d = ind.hops(v, res.open[slot]);
        assert(d >= 0 && d <= 5);
    }
#endif
    (void)ind;
    return res;
}

FeasibilityReport check_pass_up_contract(const InducedInstance& ind, const CoreCenterTree& cct,
                                         const XiMap& xi, const PassUpResult& pu,
                                         long lower_bound) {
    FeasibilityReport rep;
    const long nc = static_cast<long>(ind.clients().size());

    if (nc != pu.a * lower_bound + pu.b || pu.b < 0 || pu.b >= lower_bound)
        rep.add("pass-up-count", "|C| != aL + b with 0 <= b < L");
    if (static_cast<long>(pu.open.size()) != pu.a)
        rep.add("pass-up-open-count", "|F| != a");
    for (Id u : pu.open)
        if (!cct.in_core(u)) rep.add("pass-up-noncore-open", "facility " + std::to_string(u));

    if (static_cast<long>(pu.unassigned.size()) != pu.b)
        rep.add("pass-up-leftover-count", "|S| != b");
    for (Id v : pu.unassigned)
        if (xi.xi.at(v) != cct.root)
            rep.add("pass-up-leftover-location", "client " + std::to_string(v) +
                                                     " left outside the root neighborhood");

    std::vector<long> load(pu.open.size(), 0);
    for (const auto& [v, slot] : pu.phi) {
        load[slot]++;
        Id target = pu.open[slot];
        Id anchor = xi.xi.at(v);
        bool related = target == anchor;
        if (!related && cct.parent.count(anchor)) {
            Id par = cct.parent.at(anchor);
            related = target == par;
            if (!related && cct.parent.count(par)) related = target == cct.parent.at(par);
        }
        if (!related)
            rep.add("pass-up-placement", "client " + std::to_string(v) +
                                             " not at xi(v), its parent, or grandparent");
        int d = ind.hops(v, target);
        if (d < 0 || d > 5)
            rep.add("pass-up-distance", "client " + std::to_string(v) + " at hop distance " +
                                            std::to_string(d));
    }
    for (std::size_t j = 0; j < load.size(); ++j)
        if (load[j] != lower_bound)
            rep.add("pass-up-load", "copy " + std::to_string(j) + " serves " +
                                        std::to_string(load[j]) + " != L");
    return rep;
}

FeasibilityReport check_pass_down_contract(const InducedInstance& ind, const PassDownResult& res,
                                           const std::vector<long>& copy_caps, long lower_bound,
                                           long coverage_target) {
    FeasibilityReport rep;
    std::vector<long> load(res.open.size(), 0);
    for (const auto& [v, slot] : res.phi) {
        load[slot]++;
        int d = ind.hops(v, res.open[slot]);
        if (d < 0 || d > 5)
            rep.add("pass-down-distance", "client " + std::to_string(v) + " at hop distance " +
                                              std::to_string(d));
    }
    long total_cap = 0;
    for (std::size_t j = 0; j < load.size(); ++j) {
        total_cap += copy_caps[j];
        if (load[j] < lower_bound || load[j] > copy_caps[j])
            rep.add("pass-down-load", "copy " + std::to_string(j) + " serves " +
                                          std::to_string(load[j]) + " outside [L, U]");
    }
    if (total_cap >= coverage_target && res.coverage < coverage_target)
        rep.add("pass-down-coverage", "served " + std::to_string(res.coverage) +
                                          " < p despite sufficient capacity");
    return rep;
}

}  // namespace ccs
