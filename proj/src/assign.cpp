#include "ccs/assign.hpp"

#include <algorithm>

#include "ccs/errors.hpp"
#include "ccs/flow.hpp"

namespace ccs {

namespace {

struct Prepared {
    std::vector<Id> open;     // sorted
    std::vector<Id> clients;  // sorted
    AssignmentProblem ap;
};

Prepared prepare(const ExtractionProblem& ep) {
    Prepared pr;
    pr.open.assign(ep.open.begin(), ep.open.end());
    pr.clients = ep.ind->clients();
    pr.ap.num_clients = static_cast<int>(pr.clients.size());
    for (Id u : pr.open) {
        pr.ap.bounds.push_back({ep.lower.at(u), ep.upper.at(u)});
        std::vector<int> elig;
        for (int ci = 0; ci < pr.ap.num_clients; ++ci) {
            int d = ep.ind->hops(u, pr.clients[ci]);
            if (d >= 0 && d <= ep.radius_bound) elig.push_back(ci);
        }
        pr.ap.eligible.push_back(std::move(elig));
    }
    return pr;
}

}  // namespace

Solution extract_solution(const ExtractionProblem& ep) {
    Prepared pr = prepare(ep);
    AssignmentResult base = solve_assignment(pr.ap);
    if (!base.lower_bounds_met)
        throw SolveError(ErrorKind::ExtractionInfeasible,
                         "facility lower bounds cannot all be met within the radius bound");
    if (base.coverage < ep.p)
        throw SolveError(ErrorKind::ExtractionInfeasible,
                         "maximum coverage " + std::to_string(base.coverage) + " below p=" +
                             std::to_string(ep.p));

    // canonicalize: walk clients in id order, pin the smallest facility
    // that still allows a completion with unchanged total coverage
    const long target = base.coverage;
    std::vector<std::pair<long long, long long>> bounds = pr.ap.bounds;
    std::map<Id, Id> fixed;  // client -> facility
    std::vector<char> gone(pr.clients.size(), 0);

    auto completion_ok = [&](long still_needed) {
        AssignmentProblem sub;
        sub.bounds = bounds;
        std::vector<int> keep;
        for (int ci = 0; ci < static_cast<int>(pr.clients.size()); ++ci)
            if (!gone[ci]) keep.push_back(ci);
        sub.num_clients = static_cast<int>(keep.size());
        std::map<int, int> renumber;
        for (int i = 0; i < sub.num_clients; ++i) renumber[keep[i]] = i;
        for (std::size_t ui = 0; ui < pr.open.size(); ++ui) {
            std::vector<int> elig;
            for (int ci : pr.ap.eligible[ui])
                if (!gone[ci]) elig.push_back(renumber[ci]);
            sub.eligible.push_back(std::move(elig));
        }
        AssignmentResult res = solve_assignment(sub);
        return res.lower_bounds_met && res.coverage >= still_needed;
    };

    long fixed_served = 0;
    for (int ci = 0; ci < static_cast<int>(pr.clients.size()); ++ci) {
        for (std::size_t ui = 0; ui < pr.open.size(); ++ui) {
            if (bounds[ui].second == 0) continue;
            if (!std::binary_search(pr.ap.eligible[ui].begin(), pr.ap.eligible[ui].end(),
                                    ci))
                continue;
            auto saved = bounds[ui];
            bounds[ui] = {std::max(0LL, saved.first - 1), saved.second - 1};
            gone[ci] = 1;
            if (completion_ok(target - fixed_served - 1)) {
                fixed[pr.clients[ci]] = pr.open[ui];
                ++fixed_served;
                break;
            }
            bounds[ui] = saved;
            gone[ci] = 0;
        }
        // leaving ci unserved is the fallback when no facility keeps the
        // maximum reachable
        if (!gone[ci]) gone[ci] = 1;
    }

    Solution sol;
    std::map<Id, int> slot_of;
    for (Id u : pr.open) {
        slot_of[u] = static_cast<int>(sol.open.size());
        sol.open.push_back({u, 0});
    }
    for (const auto& [v, u] : fixed) sol.assignment[v] = slot_of.at(u);

    Rational radius(0);
    for (const auto& [v, slot] : sol.assignment) {
        Rational d(ep.ind->hops(v, sol.open[slot].facility));
        if (d > radius) radius = d;
    }
    sol.radius = radius;
    return sol;
}

}  // namespace ccs
