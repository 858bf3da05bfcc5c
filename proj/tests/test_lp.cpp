#include <doctest.h>

#include <functional>

#include "ccs/errors.hpp"
#include "ccs/gen.hpp"
#include "ccs/lp.hpp"
#include "ccs/oracle.hpp"
#include "ccs/rng.hpp"
#include "support.hpp"

using namespace ccs;

namespace {

Instance one_cluster() {
    // facility 0 at the origin, clients at 0 and 1, L = U = 2, k = 1, p = 2
    Instance inst = ccs::test::line_instance({{0, 0}}, {{1, 0}, {2, 1}}, 2, 2, 2);
    inst.open_count = 1;
    return inst;
}

std::map<Id, Rational> rvec(std::initializer_list<std::pair<Id, Rational>> init) {
    std::map<Id, Rational> m;
    for (const auto& [k, v] : init) m[k] = v;
    return m;
}

}  // namespace

TEST_CASE("relaxation is feasible at the covering radius and infeasible below") {
    Instance inst = one_cluster();
    LpRelaxation lp1 = build_lp_r(inst, Rational(1));
    auto pt = solve_feasibility(lp1);
    REQUIRE(pt.has_value());
    CHECK(lp_point_feasible(lp1, *pt).ok);
    CHECK(pt->y[0] == Rational(1));

    LpRelaxation lp0 = build_lp_r(inst, Rational(0));
    CHECK(!solve_feasibility(lp0).has_value());
}

TEST_CASE("the all-zero point solves the trivial relaxation") {
    Instance inst = one_cluster();
    inst.open_count = 0;
    inst.coverage_target = 0;
    LpRelaxation lp = build_lp_r(inst, Rational(0));
    auto pt = solve_feasibility(lp);
    REQUIRE(pt.has_value());
    for (const auto& v : pt->y) CHECK(v == Rational(0));
}

TEST_CASE("integral oracle solutions satisfy the relaxation") {
    for (std::uint64_t seed = 40; seed < 55; ++seed) {
        Instance inst = random_suite_instance(seed, Variant::HardNonuniformCenter, 6, 6);
        OracleResult opt = exact_solve(inst);
        LpRelaxation lp = build_lp_r(inst, opt.radius);
        LpPoint pt;
        pt.x.assign(lp.pairs.size(), Rational(0));
        pt.y.assign(lp.facilities.size(), Rational(0));
        std::map<Id, int> fidx;
        for (int i = 0; i < static_cast<int>(lp.facilities.size()); ++i)
            fidx[lp.facilities[i]] = i;
        std::map<Id, int> cidx;
        for (int i = 0; i < static_cast<int>(lp.clients.size()); ++i)
            cidx[lp.clients[i]] = i;
        for (const auto& c : opt.witness.open) pt.y[fidx.at(c.facility)] = Rational(1);
        for (const auto& [v, slot] : opt.witness.assignment) {
            int e = lp.pair_index(fidx.at(opt.witness.open[slot].facility), cidx.at(v));
            REQUIRE(e >= 0);
            pt.x[e] = Rational(1);
        }
        // the relaxation has no k row here (suite instances carry none)
        CHECK(lp_point_feasible(lp, pt).ok);
        // and the solver must find some feasible point as well
        CHECK(solve_feasibility(lp).has_value());
    }
}

TEST_CASE("regression: degenerate pivots must not fake infeasibility") {
    // this seed once drove an artificial variable back into the basis and
    // the solver declared a feasible relaxation infeasible
    Instance inst = random_suite_instance(1000189ull, Variant::HardUniformCenter, 10, 14);
    OracleResult opt = exact_solve(inst);
    LpRelaxation lp = build_lp_r(inst, opt.radius);
    auto pt = solve_feasibility(lp);
    REQUIRE(pt.has_value());
    CHECK(lp_point_feasible(lp, *pt).ok);
}

TEST_CASE("relaxation feasibility is monotone in the radius") {
    // a feasible point at radius r extends by zeros to any larger radius,
    // so once the scan turns feasible it must stay feasible
    for (std::uint64_t seed = 200; seed < 215; ++seed) {
        Instance inst = random_suite_instance(seed, Variant::HardNonuniformCenter, 6, 6);
        bool seen_feasible = false;
        for (const auto& r : candidate_radii(inst)) {
            LpRelaxation lp = build_lp_r(inst, r);
            auto pt = solve_feasibility(lp);
            if (pt) CHECK(lp_point_feasible(lp, *pt).ok);
            if (seen_feasible) CHECK(pt.has_value());
            if (pt) seen_feasible = true;
        }
        CHECK(seen_feasible);  // the largest radius admits the hard optimum
    }
}

TEST_CASE("identity transfers verify at radius zero") {
    Instance inst = ccs::test::g1();
    TransferSpace sp = TransferSpace::from_instance(inst);
    auto y = rvec({{0, Rational(1)}, {1, Rational(1, 2)}});
    std::map<Id, long> lower{{0, 2}, {1, 2}}, upper{{0, 2}, {1, 2}};
    CHECK(verify_transfer(sp, y, y, lower, upper, Rational(0), TransferCheckMode::Flow));
    CHECK(verify_transfer(sp, y, y, lower, upper, Rational(0),
                          TransferCheckMode::Exhaustive));
}

TEST_CASE("a unit move needs radius at least the travel distance") {
    // three facilities on a line at 0, 2, 5
    Instance inst = ccs::test::line_instance({{0, 0}, {1, 2}, {2, 5}},
                                             {{3, 0}, {4, 2}, {5, 5}}, 1, 2, 3);
    TransferSpace sp = TransferSpace::from_instance(inst);
    auto y = rvec({{0, Rational(1)}});
    auto yp = rvec({{1, Rational(1)}});
    std::map<Id, long> lower{{0, 1}, {1, 1}, {2, 1}}, upper{{0, 2}, {1, 2}, {2, 2}};
    CHECK(verify_transfer(sp, y, yp, lower, upper, Rational(2), TransferCheckMode::Flow));
    CHECK(verify_transfer(sp, y, yp, lower, upper, Rational(2),
                          TransferCheckMode::Exhaustive));
    CHECK(!verify_transfer(sp, y, yp, lower, upper, Rational(1), TransferCheckMode::Flow));
    CHECK(!verify_transfer(sp, y, yp, lower, upper, Rational(1),
                           TransferCheckMode::Exhaustive));
}

TEST_CASE("flow and exhaustive transfer checks agree on random data") {
    Rng rng(5);
    for (int trial = 0; trial < 60; ++trial) {
        Instance inst = random_suite_instance(1000 + trial, Variant::SoftNonuniformSupplier,
                                              6, 8);
        TransferSpace sp = TransferSpace::from_instance(inst);
        std::map<Id, Rational> y, yp;
        Rational total(0);
        for (Id u : inst.facilities) {
            Rational q(rng.below(4), 1 + rng.below(3));
            q.canonicalize();
            y[u] = q;
            total += q;
        }
        // split the same mass randomly for y'
        Rational left = total;
        for (Id u : inst.facilities) {
            if (u == inst.facilities.back()) {
                yp[u] = left;
                break;
            }
            Rational q = left * Rational(rng.below(5), 4);
            if (q > left) q = left;
            q.canonicalize();
            yp[u] = q;
            left -= q;
        }
        std::map<Id, long> lower, upper;
        for (Id u : inst.facilities) {
            lower[u] = inst.lower_bound;
            upper[u] = inst.upper(u);
        }
        Rational r(rng.below(12));
        bool flow = verify_transfer(sp, y, yp, lower, upper, r, TransferCheckMode::Flow);
        bool exh =
            verify_transfer(sp, y, yp, lower, upper, r, TransferCheckMode::Exhaustive);
        CHECK(flow == exh);
    }
}

TEST_CASE("local transfer produces a witness and certification") {
    Instance inst = ccs::test::line_instance({{0, 0}, {1, 2}, {2, 5}},
                                             {{3, 0}, {4, 2}, {5, 5}}, 1, 2, 3);
    TransferSpace sp = TransferSpace::from_instance(inst);
    std::map<Id, long> lower{{0, 1}, {1, 1}, {2, 1}}, upper{{0, 2}, {1, 3}, {2, 2}};

    auto y = rvec({{0, Rational(1)}, {2, Rational(1, 2)}});
    auto check = verify_local_transfer(sp, y, y, lower, upper, Rational(0),
                                       UniformSide::LowerUniform);
    REQUIRE(check.witness.has_value());
    CHECK(check.certified);
    CHECK(check_witness(sp, y, y, Rational(0), *check.witness).ok);

    auto yp = rvec({{1, Rational(1)}, {2, Rational(1, 2)}});
    auto moved = verify_local_transfer(sp, y, yp, lower, upper, Rational(2),
                                       UniformSide::LowerUniform);
    REQUIRE(moved.witness.has_value());
    CHECK(moved.certified);
    CHECK(check_witness(sp, y, yp, Rational(2), *moved.witness).ok);
    // certification implies the full transfer conditions
    CHECK(verify_transfer(sp, y, yp, lower, upper, Rational(2),
                          TransferCheckMode::Exhaustive));

    auto tight = verify_local_transfer(sp, y, yp, lower, upper, Rational(1),
                                       UniformSide::LowerUniform);
    CHECK(!tight.witness.has_value());

    auto zero_sum = rvec({{0, Rational(1)}});
    CHECK_THROWS_AS(verify_local_transfer(sp, y, zero_sum, lower, upper, Rational(2),
                                          UniformSide::LowerUniform),
                    SolveError);
}

TEST_CASE("witness rechecks catch bad flows") {
    Instance inst = ccs::test::line_instance({{0, 0}, {1, 2}, {2, 5}},
                                             {{3, 0}, {4, 2}, {5, 5}}, 1, 2, 3);
    TransferSpace sp = TransferSpace::from_instance(inst);
    auto y = rvec({{0, Rational(1)}});
    auto yp = rvec({{1, Rational(1)}});

    TransferWitness too_far{{{0, 2}, Rational(1)}};  // moves mass 5 away
    auto rep = check_witness(sp, y, rvec({{2, Rational(1)}}), Rational(2), too_far);
    CHECK(!rep.ok);

    TransferWitness short_row{{{0, 1}, Rational(1, 2)}};
    auto rep2 = check_witness(sp, y, yp, Rational(2), short_row);
    CHECK(!rep2.ok);
}

TEST_CASE("mass mismatch fails the transfer check in both modes") {
    Instance inst = ccs::test::g1();
    TransferSpace sp = TransferSpace::from_instance(inst);
    std::map<Id, long> lower{{0, 2}, {1, 2}}, upper{{0, 2}, {1, 2}};
    auto y = rvec({{0, Rational(1)}});
    auto yp = rvec({{0, Rational(1, 2)}});
    CHECK(!verify_transfer(sp, y, yp, lower, upper, Rational(10), TransferCheckMode::Flow));
    CHECK(!verify_transfer(sp, y, yp, lower, upper, Rational(10),
                           TransferCheckMode::Exhaustive));
}

TEST_CASE("witness composition spans the summed radius") {
    Instance inst = ccs::test::line_instance({{0, 0}, {1, 2}, {2, 4}},
                                             {{3, 0}, {4, 2}, {5, 4}}, 1, 2, 3);
    TransferSpace sp = TransferSpace::from_instance(inst);
    std::map<Id, long> lower{{0, 1}, {1, 1}, {2, 1}}, upper{{0, 2}, {1, 2}, {2, 2}};

    auto y0 = rvec({{0, Rational(1)}});
    auto y1 = rvec({{1, Rational(1, 2)}, {0, Rational(1, 2)}});
    auto y2 = rvec({{2, Rational(1, 2)}, {1, Rational(1, 2)}});

    auto c1 = verify_local_transfer(sp, y0, y1, lower, upper, Rational(2),
                                    UniformSide::LowerUniform);
    auto c2 = verify_local_transfer(sp, y1, y2, lower, upper, Rational(2),
                                    UniformSide::LowerUniform);
    REQUIRE(c1.witness.has_value());
    REQUIRE(c2.witness.has_value());
    TransferWitness joint = compose_witnesses(y1, *c1.witness, *c2.witness);
    CHECK(check_witness(sp, y0, y2, Rational(4), joint).ok);
}

TEST_CASE("the constraint dump lists every family") {
    Instance inst = one_cluster();
    LpRelaxation lp = build_lp_r(inst, Rational(1));
    std::string text = dump_lp(lp);
    CHECK(text.find("x_0_1 - y_0 <= 0") != std::string::npos);
    CHECK(text.find(">= 2") != std::string::npos);  // coverage row
    CHECK(text.find("= 1") != std::string::npos);   // k row
}
