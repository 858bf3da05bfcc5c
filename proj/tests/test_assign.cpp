#include <doctest.h>

#include <functional>

#include "ccs/assign.hpp"
#include "ccs/errors.hpp"
#include "ccs/rng.hpp"
#include "support.hpp"

using namespace ccs;

namespace {

// reference: enumerate client -> (facility | none) maps, maximize coverage
// subject to the service intervals and radius bound
long brute_best_coverage(const ExtractionProblem& ep) {
    std::vector<Id> clients = ep.ind->clients();
    std::vector<Id> open(ep.open.begin(), ep.open.end());
    long best = -1;
    std::function<void(std::size_t, std::map<Id, long>&, long)> go =
        [&](std::size_t i, std::map<Id, long>& served, long covered) {
            if (i == clients.size()) {
                for (Id u : open) {
                    long s = served.count(u) ? served.at(u) : 0;
                    if (s < ep.lower.at(u) || s > ep.upper.at(u)) return;
                }
                best = std::max(best, covered);
                return;
            }
            go(i + 1, served, covered);  // unserved
            for (Id u : open) {
                int d = ep.ind->hops(u, clients[i]);
                if (d < 0 || d > ep.radius_bound) continue;
                served[u]++;
                go(i + 1, served, covered + 1);
                if (--served[u] == 0) served.erase(u);
            }
        };
    std::map<Id, long> served;
    go(0, served, 0);
    return best;
}

}  // namespace

TEST_CASE("extraction reproduces the forced two-cluster assignment") {
    InducedInstance ind = InducedInstance::from_edges(
        {0, 1}, {2, 3, 4, 5}, {{0, 2}, {0, 3}, {1, 4}, {1, 5}});
    ExtractionProblem ep;
    ep.ind = &ind;
    ep.open = {0, 1};
    ep.radius_bound = 1;
    ep.lower = {{0, 2}, {1, 2}};
    ep.upper = {{0, 2}, {1, 2}};
    ep.p = 4;
    Solution sol = extract_solution(ep);
    CHECK(sol.assignment.size() == 4);
    CHECK(sol.open.size() == 2);
    CHECK(sol.assignment.at(2) == 0);
    CHECK(sol.assignment.at(3) == 0);
    CHECK(sol.assignment.at(4) == 1);
    CHECK(sol.assignment.at(5) == 1);
    CHECK(sol.radius == Rational(1));
}

TEST_CASE("extraction fails on a Hall deficiency") {
    InducedInstance ind =
        InducedInstance::from_edges({0}, {1, 2}, {{0, 1}, {0, 2}});
    ExtractionProblem ep;
    ep.ind = &ind;
    ep.open = {0};
    ep.radius_bound = 1;
    ep.lower = {{0, 3}};
    ep.upper = {{0, 3}};
    ep.p = 0;
    CHECK_THROWS_AS(extract_solution(ep), SolveError);
}

TEST_CASE("zero targets stay feasible") {
    InducedInstance ind = InducedInstance::from_edges({0}, {1}, {{0, 1}});
    ExtractionProblem ep;
    ep.ind = &ind;
    ep.open = {0};
    ep.radius_bound = 1;
    ep.lower = {{0, 0}};
    ep.upper = {{0, 1}};
    ep.p = 0;
    Solution sol = extract_solution(ep);
    CHECK(sol.assignment.size() <= 1);
}

TEST_CASE("flow extraction matches brute force on random problems") {
    Rng rng(808);
    for (int trial = 0; trial < 50; ++trial) {
        int nf = 1 + static_cast<int>(rng.below(3));
        int ncl = 1 + static_cast<int>(rng.below(8));
        std::vector<Id> facs, clis;
        for (int i = 0; i < nf; ++i) facs.push_back(i);
        for (int i = 0; i < ncl; ++i) clis.push_back(100 + i);
        std::vector<std::pair<Id, Id>> edges;
        for (Id u : facs)
            for (Id v : clis)
                if (rng.chance(3, 5)) edges.push_back({u, v});
        InducedInstance ind = InducedInstance::from_edges(facs, clis, edges);

        ExtractionProblem ep;
        ep.ind = &ind;
        for (Id u : facs) {
            ep.open.insert(u);
            long lo = static_cast<long>(rng.below(3));
            ep.lower[u] = lo;
            ep.upper[u] = lo + static_cast<long>(rng.below(3));
        }
        ep.radius_bound = 1 + static_cast<long>(rng.below(3));
        ep.p = 0;

        long want = brute_best_coverage(ep);
        if (want < 0) {
            CHECK_THROWS_AS(extract_solution(ep), SolveError);
            continue;
        }
        Solution sol = extract_solution(ep);
        CHECK(static_cast<long>(sol.assignment.size()) == want);
        // interval recheck
        std::map<Id, long> served;
        for (const auto& [v, slot] : sol.assignment) served[sol.open[slot].facility]++;
        for (Id u : facs) {
            long s = served.count(u) ? served.at(u) : 0;
            CHECK(s >= ep.lower.at(u));
            CHECK(s <= ep.upper.at(u));
        }
        for (const auto& [v, slot] : sol.assignment) {
            int d = ind.hops(v, sol.open[slot].facility);
            CHECK(d >= 0);
            CHECK(d <= ep.radius_bound);
        }
    }
}

TEST_CASE("ties break to the lexicographically smallest assignment") {
    // two symmetric facilities, one client each required; the client ids
    // decide who goes where
    InducedInstance ind = InducedInstance::from_edges(
        {0, 1}, {5, 6}, {{0, 5}, {0, 6}, {1, 5}, {1, 6}});
    ExtractionProblem ep;
    ep.ind = &ind;
    ep.open = {0, 1};
    ep.radius_bound = 1;
    ep.lower = {{0, 1}, {1, 1}};
    ep.upper = {{0, 1}, {1, 1}};
    ep.p = 2;
    Solution sol = extract_solution(ep);
    CHECK(sol.assignment.at(5) == 0);  // smallest client takes the smallest facility
    CHECK(sol.assignment.at(6) == 1);
}
