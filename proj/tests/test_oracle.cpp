#include <doctest.h>

#include <functional>

#include "ccs/errors.hpp"
#include "ccs/gen.hpp"
#include "ccs/oracle.hpp"
#include "ccs/rng.hpp"
#include "support.hpp"

using namespace ccs;

namespace {

// fully independent reference for variants without k: enumerate every
// client -> (facility | none) map and accept loads a copy pattern can carry
std::optional<Rational> tiny_reference(const Instance& inst) {
    std::vector<Id> clients = inst.clients;
    std::optional<Rational> best;
    std::vector<int> pick(clients.size(), -1);
    const long L = inst.lower_bound;

    auto load_fits = [&](long s, long U) {
        if (s == 0) return true;
        if (inst.mode == CapacityMode::Hard) return L <= s && s <= U;
        if (U == 0) return false;
        long cmin = (s + U - 1) / U;  // fewest copies that respect U
        return cmin * L <= s;
    };

    std::function<void(std::size_t)> go = [&](std::size_t i) {
        if (i < clients.size()) {
            for (int f = -1; f < static_cast<int>(inst.facilities.size()); ++f) {
                pick[i] = f;
                go(i + 1);
            }
            pick[i] = -1;
            return;
        }
        long covered = 0;
        std::map<Id, long> served;
        Rational radius(0);
        for (std::size_t c = 0; c < clients.size(); ++c) {
            if (pick[c] < 0) continue;
            ++covered;
            Id u = inst.facilities[pick[c]];
            served[u]++;
            if (inst.dist(u, clients[c]) > radius) radius = inst.dist(u, clients[c]);
        }
        if (covered < inst.coverage_target) return;
        for (const auto& [u, s] : served)
            if (!load_fits(s, inst.upper(u))) return;
        if (!best || radius < *best) best = radius;
    };
    go(0);
    return best;
}

}  // namespace

TEST_CASE("oracle solves the two-cluster line instance") {
    Instance inst = test::g1();
    OracleResult res = exact_solve(inst);
    CHECK(res.radius == Rational(1));
    CHECK(check_feasible(inst, res.witness).ok);
    CHECK(res.witness.radius == res.radius);
}

TEST_CASE("oracle on a single forced pair") {
    Instance inst = test::line_instance({{0, 0}}, {{1, 7}}, 1, 1, 1);
    OracleResult res = exact_solve(inst);
    CHECK(res.radius == Rational(7));
}

TEST_CASE("oracle reports infeasibility when p exceeds the client count") {
    Instance inst = test::g1();
    inst.coverage_target = 5;
    CHECK_THROWS_AS(exact_solve(inst), SolveError);
}

TEST_CASE("oracle rejects oversized instances") {
    GenSpec spec;
    spec.num_facilities = 15;
    spec.num_clients = 4;
    spec.p = 0;
    Instance inst = generate_instance(spec);
    CHECK_THROWS_AS(exact_solve(inst), SolveError);
}

TEST_CASE("zero coverage target needs radius zero") {
    Instance inst = test::g1();
    inst.coverage_target = 0;
    OracleResult res = exact_solve(inst);
    CHECK(res.radius == Rational(0));
    CHECK(res.witness.open.empty());
}

TEST_CASE("oracle radius is monotone in the coverage target") {
    for (std::uint64_t seed = 10; seed < 25; ++seed) {
        Instance inst = random_suite_instance(seed, Variant::SoftNonuniformSupplier, 5, 7);
        Rational prev(0);
        for (long p = 0; p <= inst.coverage_target; ++p) {
            Instance sub = inst;
            sub.coverage_target = p;
            OracleResult res = exact_solve(sub);
            CHECK(res.radius >= prev);
            prev = res.radius;
        }
    }
}

TEST_CASE("oracle agrees with an independent enumeration on tiny instances") {
    Rng rng(66);
    int done = 0;
    for (std::uint64_t seed = 300; done < 30; ++seed) {
        GenSpec spec;
        spec.seed = seed;
        spec.family = rng.chance(1, 2) ? "grid" : "graph";
        spec.kind = rng.chance(1, 2) ? ProblemKind::Center : ProblemKind::Supplier;
        spec.mode = rng.chance(1, 2) ? CapacityMode::Soft : CapacityMode::Hard;
        spec.uniform_upper = rng.chance(1, 2);
        spec.num_facilities = 1 + static_cast<int>(rng.below(3));
        spec.num_clients = 1 + static_cast<int>(rng.below(5));
        spec.lower_min = 0;
        spec.lower_max = 2;
        spec.upper_spread = 2;
        Instance inst = generate_instance(spec);
        if (inst.kind == ProblemKind::Center &&
            static_cast<int>(inst.clients.size()) > 5)
            continue;

        auto want = tiny_reference(inst);
        if (!want) {
            CHECK_THROWS_AS(exact_solve(inst), SolveError);
        } else {
            OracleResult res = exact_solve(inst);
            CHECK(res.radius == *want);
        }
        ++done;
    }
}
