#include <doctest.h>

#include <set>

#include "ccs/rng.hpp"
#include "ccs/tree_transfer.hpp"

using namespace ccs;

namespace {

TreeInstance three_nodes(long u_root, long u_a, long u_b) {
    TreeInstance ti;
    ti.root = 0;
    ti.children[0] = {1, 2};
    ti.parent[1] = 0;
    ti.parent[2] = 0;
    ti.lower = {{0, 0}, {1, 0}, {2, 0}};
    ti.upper = {{0, u_root}, {1, u_a}, {2, u_b}};
    ti.y = {{0, Rational(1)}, {1, Rational(1, 2)}, {2, Rational(1, 2)}};
    return ti;
}

std::map<Id, Rational> indicator(const TreeInstance& ti, const std::set<Id>& f) {
    std::map<Id, Rational> m;
    for (Id v : ti.nodes()) m[v] = Rational(f.count(v) ? 1 : 0);
    return m;
}

// full certification: count, witness, and both exhaustive subset conditions
void certify(const TreeInstance& ti, const std::set<Id>& f) {
    Rational total(0);
    for (const auto& [v, q] : ti.y) total += q;
    CHECK(Rational(static_cast<long>(f.size())) == total);

    TransferSpace sp = ti.transfer_space();
    auto ind = indicator(ti, f);
    CHECK(verify_transfer(sp, ti.y, ind, ti.lower, ti.upper, Rational(2),
                          TransferCheckMode::Exhaustive));
    auto local = verify_local_transfer(sp, ti.y, ind, ti.lower, ti.upper, Rational(2),
                                       UniformSide::LowerUniform);
    CHECK(local.witness.has_value());
    CHECK(local.certified);
    if (local.witness) CHECK(check_witness(sp, ti.y, ind, Rational(2), *local.witness).ok);
}

}  // namespace

TEST_CASE("tree instance validation") {
    TreeInstance single;
    single.root = 0;
    single.lower = {{0, 0}};
    single.upper = {{0, 1}};
    single.y = {{0, Rational(1)}};
    CHECK(validate_tree_instance(single).ok);

    TreeInstance ok = three_nodes(1, 4, 2);
    CHECK(validate_tree_instance(ok).ok);

    TreeInstance bad = three_nodes(1, 4, 2);
    bad.y[0] = Rational(7, 10);
    auto rep = validate_tree_instance(bad);
    CHECK(!rep.ok);
}

TEST_CASE("single node rounds to itself") {
    TreeInstance single;
    single.root = 5;
    single.lower = {{5, 0}};
    single.upper = {{5, 3}};
    single.y = {{5, Rational(1)}};
    CHECK(round_tree(single) == std::set<Id>{5});
    certify(single, {5});
}

TEST_CASE("root weaker than the pivot child keeps both open") {
    // U_r = 1 < U_a = 4: the child wins its slot and the root keeps its own
    TreeInstance ti = three_nodes(1, 4, 2);
    std::set<Id> f = round_tree(ti);
    CHECK(f == std::set<Id>{0, 1});
    certify(ti, f);
}

TEST_CASE("root tied with the pivot keeps the root open") {
    TreeInstance ti = three_nodes(4, 4, 2);
    std::set<Id> f = round_tree(ti);
    CHECK(f == std::set<Id>{0, 1});
    certify(ti, f);
}

TEST_CASE("random tree instances always round to certified transfers") {
    Rng rng(2024);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 2 + static_cast<int>(rng.below(11));  // up to 12 nodes
        TreeInstance ti;
        ti.root = 0;
        for (int v = 1; v < n; ++v) {
            Id par = static_cast<Id>(rng.below(v));
            ti.parent[v] = par;
            ti.children[par].push_back(v);
        }
        long lcap = 6;
        for (int v = 0; v < n; ++v) {
            ti.upper[v] = 1 + static_cast<long>(rng.below(6));
            lcap = std::min(lcap, ti.upper[v]);
        }
        long lower = static_cast<long>(rng.below(lcap + 1));
        for (int v = 0; v < n; ++v) ti.lower[v] = lower;

        // internal nodes fully open, leaves random fractions patched to an
        // integral total
        Rational total(0);
        std::vector<Id> leaves;
        for (int v = 0; v < n; ++v) {
            if (ti.children.count(v) && !ti.children[v].empty()) {
                ti.y[v] = Rational(1);
                total += 1;
            } else {
                leaves.push_back(v);
            }
        }
        for (std::size_t i = 0; i < leaves.size(); ++i) {
            Rational q(rng.below(5), 4);
            q.canonicalize();
            ti.y[leaves[i]] = q;
            total += q;
        }
        // patch the last leaf so the sum is integral
        Rational frac = total - Rational(floor_long(total));
        if (frac != 0) {
            Id fix = leaves.back();
            Rational adjusted = ti.y[fix] + (Rational(1) - frac);
            if (adjusted > 1) adjusted -= 1;
            ti.y[fix] = adjusted;
        }
        REQUIRE(validate_tree_instance(ti).ok);

        std::set<Id> f = round_tree(ti);
        certify(ti, f);
    }
}
