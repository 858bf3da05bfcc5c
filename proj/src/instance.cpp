#include "ccs/instance.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace ccs {

namespace {

std::string id_str(Id a) { return std::to_string(a); }

}  // namespace

int Instance::point_index(Id a) const {
    auto it = std::lower_bound(points.begin(), points.end(), a);
    if (it == points.end() || *it != a) return -1;
    return static_cast<int>(it - points.begin());
}

const Rational& Instance::dist(Id a, Id b) const {
    return metric[point_index(a)][point_index(b)];
}

bool Instance::is_client(Id a) const {
    return std::binary_search(clients.begin(), clients.end(), a);
}

bool Instance::is_facility(Id a) const {
    return std::binary_search(facilities.begin(), facilities.end(), a);
}

bool Instance::uniform_upper() const {
    if (upper_bounds.empty()) return true;
    long u = upper_bounds.begin()->second;
    for (const auto& [id, ub] : upper_bounds)
        if (ub != u) return false;
    return true;
}

std::vector<Id> Solution::served() const {
    std::vector<Id> out;
    out.reserve(assignment.size());
    for (const auto& [v, slot] : assignment) out.push_back(v);
    return out;
}

std::map<Id, long> Solution::multiplicities() const {
    std::map<Id, long> m;
    for (const auto& c : open) m[c.facility]++;
    return m;
}

std::vector<long> Solution::slot_loads() const {
    std::vector<long> loads(open.size(), 0);
    for (const auto& [v, slot] : assignment)
        if (slot >= 0 && slot < static_cast<int>(open.size())) loads[slot]++;
    return loads;
}

FeasibilityReport validate_instance(const Instance& inst) {
    FeasibilityReport rep;
    const int n = static_cast<int>(inst.points.size());

    if (!std::is_sorted(inst.points.begin(), inst.points.end()) ||
        std::adjacent_find(inst.points.begin(), inst.points.end()) != inst.points.end())
        rep.add("points-not-sorted-unique", "point id list must be sorted and unique");

    {
        std::set<Id> want(inst.clients.begin(), inst.clients.end());
        want.insert(inst.facilities.begin(), inst.facilities.end());
        std::set<Id> have(inst.points.begin(), inst.points.end());
        if (want != have) rep.add("points-mismatch", "points must equal clients + facilities");
    }

    if (static_cast<int>(inst.metric.size()) != n)
        rep.add("metric-shape", "metric row count != point count");
    for (const auto& row : inst.metric)
        if (static_cast<int>(row.size()) != n) {
            rep.add("metric-shape", "metric column count != point count");
            break;
        }
    if (!rep.ok) return rep;

    for (int i = 0; i < n; ++i) {
        if (inst.metric[i][i] != 0)
            rep.add("metric-diagonal", "d(" + id_str(inst.points[i]) + ",.) nonzero on diagonal");
        for (int j = i + 1; j < n; ++j) {
            if (inst.metric[i][j] < 0)
                rep.add("metric-negative",
                        "d(" + id_str(inst.points[i]) + "," + id_str(inst.points[j]) + ") < 0");
            if (inst.metric[i][j] != inst.metric[j][i])
                rep.add("metric-asymmetric",
                        "d(" + id_str(inst.points[i]) + "," + id_str(inst.points[j]) + ") != transpose");
        }
    }
    if (!rep.ok) return rep;

    // report the first offending triple only; a broken metric tends to
    // break many triples at once. A double-precision screen settles the
    // vast majority of triples; only the ambiguous band near equality is
    // re-decided in exact arithmetic.
    [&] {
        std::vector<std::vector<double>> approx(n, std::vector<double>(n, 0.0));
        // integers below 2^50 stay exact through a double add, so those
        // triples never need the big-number fallback
        std::vector<std::vector<char>> exact(n, std::vector<char>(n, 0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const Rational& q = inst.metric[i][j];
                approx[i][j] = q.get_d();
                exact[i][j] = q.get_den() == 1 && q.get_num() < (BigInt(1) << 50);
            }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    double lhs = approx[i][j];
                    double rhs = approx[i][k] + approx[k][j];
                    if (exact[i][j] && exact[i][k] && exact[k][j]) {
                        if (lhs <= rhs) continue;
                    } else {
                        double margin = 1e-9 * (lhs + rhs) + 1e-300;
                        if (lhs + margin < rhs) continue;  // certainly fine
                    }
                    if (inst.metric[i][j] > inst.metric[i][k] + inst.metric[k][j]) {
                        rep.add("triangle-inequality",
                                "(" + id_str(inst.points[i]) + "," + id_str(inst.points[j]) +
                                    "," + id_str(inst.points[k]) + ")");
                        return;
                    }
                }
    }();

    if (inst.lower_bound < 0) rep.add("lower-bound-negative", "L < 0");
    for (Id u : inst.facilities) {
        auto it = inst.upper_bounds.find(u);
        if (it == inst.upper_bounds.end()) {
            rep.add("upper-bound-missing", "facility " + id_str(u));
        } else if (it->second < inst.lower_bound) {
            rep.add("capacity-interval-inverted",
                    "facility " + id_str(u) + ": L=" + std::to_string(inst.lower_bound) +
                        " > U=" + std::to_string(it->second));
        }
    }

    if (inst.coverage_target < 0) rep.add("coverage-negative", "p < 0");
    if (inst.coverage_target > static_cast<long>(inst.clients.size()))
        rep.add("coverage-exceeds-clients",
                "p=" + std::to_string(inst.coverage_target) + " > |clients|=" +
                    std::to_string(inst.clients.size()));
    if (inst.open_count && *inst.open_count < 0) rep.add("open-count-negative", "k < 0");

    if (inst.kind == ProblemKind::Center && inst.clients != inst.facilities)
        rep.add("center-sets-differ", "center instances require clients = facilities as id sets");

    return rep;
}

Rational solution_radius(const Instance& inst, const Solution& sol) {
    Rational r(0);
    for (const auto& [v, slot] : sol.assignment) {
        if (slot < 0 || slot >= static_cast<int>(sol.open.size())) continue;
        const Rational& d = inst.dist(v, sol.open[slot].facility);
        if (d > r) r = d;
    }
    return r;
}

FeasibilityReport check_feasible(const Instance& inst, const Solution& sol) {
    FeasibilityReport rep;

    for (const auto& [v, slot] : sol.assignment) {
        if (!inst.is_client(v)) rep.add("assigned-nonclient", "id " + id_str(v));
        if (slot < 0 || slot >= static_cast<int>(sol.open.size()))
            rep.add("assignment-target-not-open", "client " + id_str(v));
    }
    for (const auto& c : sol.open)
        if (!inst.is_facility(c.facility))
            rep.add("open-nonfacility", "id " + id_str(c.facility));
    if (!rep.ok) return rep;

    long served = static_cast<long>(sol.assignment.size());
    if (served < inst.coverage_target)
        rep.add("coverage-shortfall", std::to_string(served) + " served, p=" +
                                          std::to_string(inst.coverage_target));

    auto loads = sol.slot_loads();
    for (std::size_t i = 0; i < sol.open.size(); ++i) {
        Id u = sol.open[i].facility;
        if (loads[i] < inst.lower_bound)
            rep.add("capacity-lower-violation",
                    "facility " + id_str(u) + " copy " + std::to_string(sol.open[i].copy_index) +
                        " serves " + std::to_string(loads[i]) + " < L");
        if (loads[i] > inst.upper(u))
            rep.add("capacity-upper-violation",
                    "facility " + id_str(u) + " copy " + std::to_string(sol.open[i].copy_index) +
                        " serves " + std::to_string(loads[i]) + " > U");
    }

    if (inst.open_count && static_cast<long>(sol.open.size()) != *inst.open_count)
        rep.add("open-count-mismatch", std::to_string(sol.open.size()) + " open, k=" +
                                           std::to_string(*inst.open_count));

    if (inst.mode == CapacityMode::Hard)
        for (const auto& [u, mult] : sol.multiplicities())
            if (mult > 1)
                rep.add("soft-multiplicity-in-hard-mode",
                        "facility " + id_str(u) + " opened " + std::to_string(mult) + " times");

    if (solution_radius(inst, sol) != sol.radius)
        rep.add("radius-mismatch", "stored radius != recomputed max assigned distance");

    return rep;
}

std::vector<Rational> candidate_radii(const Instance& inst) {
    std::vector<Rational> out;
    out.reserve(inst.facilities.size() * inst.clients.size());
    for (Id u : inst.facilities)
        for (Id v : inst.clients) out.push_back(inst.dist(u, v));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace ccs
