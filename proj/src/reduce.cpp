#include "ccs/reduce.hpp"

#include <algorithm>
#include <map>
#include <queue>

#include "ccs/errors.hpp"

namespace ccs {

ThresholdDecomposition build_threshold_graph(const Instance& inst, const Rational& r) {
    ThresholdDecomposition out;

    // union-find over point ids present in the threshold graph
    std::map<Id, Id> up;
    std::function<Id(Id)> find = [&](Id a) {
        while (up[a] != a) a = up[a] = up[up[a]];
        return a;
    };
    for (Id u : inst.facilities) up[u] = u;
    for (Id v : inst.clients) up.emplace(v, v);

    std::map<Id, bool> client_touched;
    for (Id v : inst.clients) client_touched[v] = false;
    for (Id u : inst.facilities)
        for (Id v : inst.clients)
            if (inst.dist(u, v) <= r) {
                client_touched[v] = true;
                Id a = find(u), b = find(v);
                if (a != b) up[a] = b;
            }

    std::map<Id, std::pair<std::vector<Id>, std::vector<Id>>> groups;  // root -> (fac, cli)
    for (Id u : inst.facilities) {
        bool incident = false;
        for (Id v : inst.clients)
            if (inst.dist(u, v) <= r) {
                incident = true;
                break;
            }
        if (incident) groups[find(u)].first.push_back(u);
        // facilities with no edge form facility-only singletons: dropped
    }
    for (Id v : inst.clients) {
        if (client_touched[v])
            groups[find(v)].second.push_back(v);
        else
            out.unreachable_clients.push_back(v);
    }

    for (auto& [root, g] : groups) {
        if (g.second.empty()) continue;  // facility-only group
        out.components.push_back(
            InducedInstance::from_parent(inst, r, std::move(g.first), std::move(g.second)));
    }
    return out;
}

std::optional<std::vector<std::pair<long, long>>> combine_dp(
    const std::vector<FeasTable>& tables, std::optional<long> k, long p) {
    const int m = static_cast<int>(tables.size());
    const long kdim = k ? *k + 1 : 1;
    const long pdim = p + 1;
    if (m == 0) {
        if (p == 0 && (!k || *k == 0)) return std::vector<std::pair<long, long>>{};
        return std::nullopt;
    }

    // a true cell means "serving at least p'", so close each table downward
    auto cell = [&](int i, long kk, long pp) -> bool {
        const FeasTable& t = tables[i];
        if (kk >= static_cast<long>(t.size())) return false;
        const auto& row = t[kk];
        for (long q = pp; q < static_cast<long>(row.size()); ++q)
            if (row[q]) return true;
        return false;
    };

    // K[i][k'][p'] with backpointers (k*, p*) per cell
    std::vector<std::vector<std::vector<char>>> K(
        m, std::vector<std::vector<char>>(kdim, std::vector<char>(pdim, 0)));
    std::vector<std::vector<std::vector<std::pair<long, long>>>> back(
        m, std::vector<std::vector<std::pair<long, long>>>(
               kdim, std::vector<std::pair<long, long>>(pdim, {-1, -1})));

    for (long kk = 0; kk < kdim; ++kk)
        for (long pp = 0; pp < pdim; ++pp)
            if (cell(0, kk, pp)) {
                K[0][kk][pp] = 1;
                back[0][kk][pp] = {kk, pp};
            }
    for (int i = 1; i < m; ++i)
        for (long kk = 0; kk < kdim; ++kk)
            for (long pp = 0; pp < pdim; ++pp)
                for (long ks = 0; ks <= kk && !K[i][kk][pp]; ++ks)
                    for (long ps = 0; ps <= pp; ++ps)
                        if (K[i - 1][kk - ks][pp - ps] && cell(i, ks, ps)) {
                            K[i][kk][pp] = 1;
                            back[i][kk][pp] = {ks, ps};
                            break;
                        }

    long kfin = k ? *k : 0;
    if (!K[m - 1][kfin][p]) return std::nullopt;

    std::vector<std::pair<long, long>> split(m);
    long kk = kfin, pp = p;
    for (int i = m - 1; i >= 0; --i) {
        auto [ks, ps] = back[i][kk][pp];
        split[i] = {ks, ps};
        kk -= ks;
        pp -= ps;
    }
    return split;
}

GuessedSolution solve_with_guessing(const Instance& inst, const ComponentSolver& solver,
                                    int ratio) {
    if (inst.coverage_target > static_cast<long>(inst.clients.size()))
        throw SolveError(ErrorKind::Infeasible, "coverage target exceeds client count");

    if (inst.coverage_target == 0 && (!inst.open_count || *inst.open_count == 0))
        return {Solution{}, Rational(0)};

    auto radii = candidate_radii(inst);
    for (const Rational& r : radii) {
        ThresholdDecomposition dec = build_threshold_graph(inst, r);
        if (dec.components.empty()) continue;
        const long p = inst.coverage_target;

        std::vector<FeasTable> tables;
        // memoized outcomes: component -> (k', p') -> outcome
        std::vector<std::map<std::pair<long, long>, ComponentOutcome>> memo(
            dec.components.size());

        for (std::size_t i = 0; i < dec.components.size(); ++i) {
            const auto& comp = dec.components[i];
            if (!inst.open_count) {
                // one max-coverage run, then threshold
                long cov = 0;
                auto out = solver(comp, std::nullopt, 0);
                if (out) {
                    cov = out->coverage;
                    memo[i][{0, cov}] = *out;
                }
                FeasTable t(1, std::vector<char>(p + 1, 0));
                for (long q = 0; q <= std::min(cov, p); ++q) t[0][q] = 1;
                tables.push_back(std::move(t));
            } else {
                const long kmax = *inst.open_count;
                FeasTable t(kmax + 1, std::vector<char>(p + 1, 0));
                for (long kk = 0; kk <= kmax; ++kk)
                    for (long pp = 0; pp <= p; ++pp) {
                        auto out = solver(comp, kk, pp);
                        if (out) {
                            t[kk][pp] = 1;
                            memo[i][{kk, pp}] = *out;
                        }
                    }
                tables.push_back(std::move(t));
            }
        }
        auto split = combine_dp(tables, inst.open_count, p);
        if (!split) continue;

        // assemble the union solution
        Solution sol;
        for (std::size_t i = 0; i < dec.components.size(); ++i) {
            auto [ki, pi] = (*split)[i];
            const ComponentOutcome* picked = nullptr;
            if (!inst.open_count) {
                // serving more than the dp asked for is always fine in the
                // variant without k, so include every component that has a solution
                if (!memo[i].empty()) picked = &memo[i].begin()->second;
            } else {
                // first stored outcome with this k' serving >= pi
                auto it = memo[i].lower_bound({ki, pi});
                if (it != memo[i].end() && it->first.first == ki) picked = &it->second;
            }
            if (!picked) {
                if (pi == 0 && ki == 0) continue;
                throw SolveError(ErrorKind::InvalidArgument,
                                 "dp selected a cell with no stored solution");
            }
            int base = static_cast<int>(sol.open.size());
            for (const auto& c : picked->solution.open) sol.open.push_back(c);
            for (const auto& [v, slot] : picked->solution.assignment)
                sol.assignment[v] = base + slot;
        }
        sol.radius = solution_radius(inst, sol);
        return {std::move(sol), r};
    }
    throw SolveError(ErrorKind::Infeasible,
                     "no candidate radius admits a combined solution (ratio " +
                         std::to_string(ratio) + ")");
}

}  // namespace ccs
