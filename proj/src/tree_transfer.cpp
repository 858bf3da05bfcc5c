#include "ccs/tree_transfer.hpp"

#include <algorithm>
#include <cassert>

namespace ccs {

std::vector<Id> TreeInstance::nodes() const {
    std::vector<Id> out;
    for (const auto& [v, _] : y) out.push_back(v);
    return out;  // map order is already sorted
}

bool TreeInstance::is_leaf(Id v) const {
    auto it = children.find(v);
    return it == children.end() || it->second.empty();
}

int TreeInstance::tree_dist(Id a, Id b) const {
    // walk both nodes up to the root, then offset
    std::map<Id, int> up_a;
    int d = 0;
    for (Id v = a;; ++d) {
        up_a[v] = d;
        auto it = parent.find(v);
        if (it == parent.end()) break;
        v = it->second;
    }
    d = 0;
    for (Id v = b;; ++d) {
        if (auto it = up_a.find(v); it != up_a.end()) return it->second + d;
        auto it = parent.find(v);
        if (it == parent.end()) break;
        v = it->second;
    }
    return -1;
}

TransferSpace TreeInstance::transfer_space() const {
    TransferSpace sp;
    sp.ids = nodes();
    const int n = static_cast<int>(sp.ids.size());
    sp.d.assign(n, std::vector<Rational>(n, Rational(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) sp.d[i][j] = Rational(tree_dist(sp.ids[i], sp.ids[j]));
    return sp;
}

FeasibilityReport validate_tree_instance(const TreeInstance& ti) {
    FeasibilityReport rep;
    Rational total(0);
    for (const auto& [v, q] : ti.y) {
        total += q;
        if (q < 0 || q > 1)
            rep.add("tree-opening-bounds", "node " + std::to_string(v) + " outside [0,1]");
        if (!ti.is_leaf(v) && q != 1)
            rep.add("tree-internal-fractional",
                    "non-leaf node " + std::to_string(v) + " has y != 1");
    }
    if (total.get_den() != 1) rep.add("tree-total-fractional", "sum of y is not an integer");
    for (const auto& [v, lo] : ti.lower)
        if (lo > ti.upper.at(v))
            rep.add("capacity-interval-inverted", "node " + std::to_string(v));
    return rep;
}

namespace {

struct Rounder {
    // mutable working copies; the recursion trims leaves and rescales U
    std::map<Id, std::vector<Id>> children;
    std::map<Id, Id> parent;
    std::map<Id, long> upper;
    std::map<Id, Rational> y;
    std::map<Id, int> depth;

    void compute_depth(Id v, int d) {
        depth[v] = d;
        if (auto it = children.find(v); it != children.end())
            for (Id c : it->second) compute_depth(c, d + 1);
    }

    bool leaf(Id v) const {
        auto it = children.find(v);
        return it == children.end() || it->second.empty();
    }

    std::set<Id> run(Id root) {
        // base: a single node carries an integral opening
        bool single = y.size() == 1;
        if (single) {
            std::set<Id> out;
            assert(y.begin()->second == 0 || y.begin()->second == 1);
            if (y.begin()->second == 1) out.insert(y.begin()->first);
            return out;
        }

        // deepest node whose children are all leaves, ties to lowest id
        Id r = -1;
        for (const auto& [v, kids] : children) {
            if (kids.empty()) continue;
            bool all_leaves = true;
            for (Id c : kids)
                if (!leaf(c)) all_leaves = false;
            if (!all_leaves) continue;
            if (r < 0 || depth.at(v) > depth.at(r) || (depth.at(v) == depth.at(r) && v < r))
                r = v;
        }
        assert(r >= 0);

        // split y_r so the bottom part sums to an integer Y
        std::vector<Id> kids = children.at(r);
        Rational kid_sum(0);
        for (Id c : kids) kid_sum += y.at(c);
        Rational y1_r = Rational(0);
        {
            Rational frac = kid_sum - Rational(floor_long(kid_sum));
            if (frac != 0) y1_r = Rational(1) - frac;
        }
        Rational y2_r = y.at(r) - y1_r;  // in (0, 1] since y_r = 1
        long Y = floor_long(kid_sum + y1_r);
        assert(Rational(Y) == kid_sum + y1_r);

        // children by capacity descending, id ascending
        std::sort(kids.begin(), kids.end(), [&](Id a, Id b) {
            if (upper.at(a) != upper.at(b)) return upper.at(a) > upper.at(b);
            return a < b;
        });
        std::set<Id> f1(kids.begin(), kids.begin() + Y);

        // the rest of the tree keeps r as a (possibly fractional) leaf
        auto recurse = [&]() {
            for (Id c : children.at(r)) {
                y.erase(c);
                upper.erase(c);
                parent.erase(c);
                depth.erase(c);
                children.erase(c);
            }
            children.at(r).clear();
            y.at(r) = y2_r;
            return run(root);
        };

        if (Y == 0) return recurse();  // no child opened

        Id pivot = kids[Y - 1];  // Y-th highest capacity
        if (upper.at(r) < upper.at(pivot)) {
            std::set<Id> f2 = recurse();
            f2.insert(f1.begin(), f1.end());
            return f2;
        }
        // U_r >= U_pivot: lowering U_r to U_pivot keeps the upper-side
        // condition valid for the original capacity because r itself is
        // always opened on this branch
        upper.at(r) = upper.at(pivot);
        std::set<Id> f2 = recurse();
        if (!f2.count(r)) {
            f1.erase(pivot);
            f1.insert(r);
        }
        f2.insert(f1.begin(), f1.end());
        assert(f2.count(r));
        return f2;
    }
};

}  // namespace

std::set<Id> round_tree(const TreeInstance& ti) {
    Rounder w;
    w.children = ti.children;
    w.parent = ti.parent;
    w.upper = ti.upper;
    w.y = ti.y;
    w.compute_depth(ti.root, 0);
    // nodes untouched by children map entries still need empty slots
    for (const auto& [v, _] : w.y) w.children.try_emplace(v);
    return w.run(ti.root);
}

}  // namespace ccs
