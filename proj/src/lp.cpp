#include "ccs/lp.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

#include "ccs/errors.hpp"
#include "ccs/flow.hpp"

namespace ccs {

int LpRelaxation::pair_index(int fac, int cli) const {
    for (int e = 0; e < static_cast<int>(pairs.size()); ++e)
        if (pairs[e].first == fac && pairs[e].second == cli) return e;
    return -1;
}

LpRelaxation build_lp_r(const Instance& inst, const Rational& r) {
    LpRelaxation lp;
    lp.facilities = inst.facilities;
    lp.clients = inst.clients;
    lp.k = inst.open_count;
    lp.p = inst.coverage_target;
    lp.r = r;
    for (Id u : inst.facilities) {
        lp.lower.push_back(inst.lower_bound);
        lp.upper.push_back(inst.upper(u));
    }
    for (int fi = 0; fi < static_cast<int>(lp.facilities.size()); ++fi)
        for (int ci = 0; ci < static_cast<int>(lp.clients.size()); ++ci)
            if (inst.dist(lp.facilities[fi], lp.clients[ci]) <= r) lp.pairs.push_back({fi, ci});
    return lp;
}

LpRelaxation build_lp_r(const InducedInstance& ind, long lower_bound,
                        const std::map<Id, long>& upper, std::optional<long> k, long p,
                        long r_hops) {
    LpRelaxation lp;
    lp.facilities = ind.facilities();
    lp.clients = ind.clients();
    lp.k = k;
    lp.p = p;
    lp.r = Rational(r_hops);
    for (Id u : lp.facilities) {
        lp.lower.push_back(lower_bound);
        lp.upper.push_back(upper.at(u));
    }
    for (int fi = 0; fi < static_cast<int>(lp.facilities.size()); ++fi)
        for (int ci = 0; ci < static_cast<int>(lp.clients.size()); ++ci) {
            int d = ind.hops(lp.facilities[fi], lp.clients[ci]);
            if (d >= 0 && d <= r_hops) lp.pairs.push_back({fi, ci});
        }
    return lp;
}

namespace {

// Dense exact phase-1 simplex. Rows are <=, >= or = with nonnegative
// right-hand sides; slack columns seed the basis where possible and
// artificials cover the rest. Dantzig pricing with a Bland fallback after
// an iteration threshold, so it cannot cycle.
class Phase1 {
public:
    explicit Phase1(int nvars) : nvars_(nvars) {}

    void add_row(std::vector<std::pair<int, Rational>> coeffs, char rel, Rational rhs) {
        rows_.push_back({std::move(coeffs), rel, std::move(rhs)});
    }

    std::optional<std::vector<Rational>> solve() {
        const int m = static_cast<int>(rows_.size());
        if (m == 0) return std::vector<Rational>(nvars_, Rational(0));

        // normalize to rhs >= 0
        for (auto& row : rows_)
            if (row.rhs < 0) {
                for (auto& [j, c] : row.coeffs) c = -c;
                row.rhs = -row.rhs;
                if (row.rel == '<')
                    row.rel = '>';
                else if (row.rel == '>')
                    row.rel = '<';
            }

        int ncols = nvars_;
        std::vector<int> slack_col(m, -1), artif_col(m, -1);
        for (int i = 0; i < m; ++i) {
            if (rows_[i].rel == '<') slack_col[i] = ncols++;
            if (rows_[i].rel == '>') slack_col[i] = ncols++;  // surplus
        }
        for (int i = 0; i < m; ++i)
            if (rows_[i].rel != '<') artif_col[i] = ncols++;

        std::vector<std::vector<Rational>> t(m, std::vector<Rational>(ncols + 1, Rational(0)));
        std::vector<int> basis(m, -1);
        for (int i = 0; i < m; ++i) {
            for (const auto& [j, c] : rows_[i].coeffs) t[i][j] += c;
            t[i][ncols] = rows_[i].rhs;
            if (rows_[i].rel == '<') {
                t[i][slack_col[i]] = 1;
                basis[i] = slack_col[i];
            } else if (rows_[i].rel == '>') {
                t[i][slack_col[i]] = -1;
            }
            if (artif_col[i] >= 0) {
                t[i][artif_col[i]] = 1;
                basis[i] = artif_col[i];
            }
        }

        // reduced costs of "minimize sum of artificials"; artificial
        // columns price at zero initially (cost 1 minus their own row) and
        // never re-enter the basis
        std::vector<char> is_artif(ncols, 0);
        std::vector<Rational> z(ncols + 1, Rational(0));
        for (int i = 0; i < m; ++i)
            if (artif_col[i] >= 0) {
                is_artif[artif_col[i]] = 1;
                for (int j = 0; j <= ncols; ++j) z[j] -= t[i][j];
            }
        for (int j = 0; j < ncols; ++j)
            if (is_artif[j]) z[j] += 1;

        const long bland_after = 4L * (m + ncols);
        for (long iter = 0;; ++iter) {
            int enter = -1;
            if (iter < bland_after) {
                for (int j = 0; j < ncols; ++j)
                    if (!is_artif[j] && z[j] < 0 && (enter < 0 || z[j] < z[enter])) enter = j;
            } else {
                for (int j = 0; j < ncols; ++j)
                    if (!is_artif[j] && z[j] < 0) {
                        enter = j;
                        break;
                    }
            }
            if (enter < 0) break;

            int leave = -1;
            Rational best;
            for (int i = 0; i < m; ++i) {
                if (t[i][enter] <= 0) continue;
                Rational ratio = t[i][ncols] / t[i][enter];
                if (leave < 0 || ratio < best ||
                    (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave < 0) break;  // unbounded; cannot happen for a sum of artificials

            // pivot
            Rational piv = t[leave][enter];
            for (int j = 0; j <= ncols; ++j) t[leave][j] /= piv;
            for (int i = 0; i < m; ++i) {
                if (i == leave || t[i][enter] == 0) continue;
                Rational f = t[i][enter];
                for (int j = 0; j <= ncols; ++j) t[i][j] -= f * t[leave][j];
            }
            if (z[enter] != 0) {
                Rational f = z[enter];
                for (int j = 0; j <= ncols; ++j) z[j] -= f * t[leave][j];
            }
            basis[leave] = enter;
        }

        // feasible iff every artificial sits at zero
        Rational infeas(0);
        for (int i = 0; i < m; ++i)
            if (artif_col[i] >= 0 && basis[i] == artif_col[i]) infeas += t[i][ncols];
        if (infeas != 0) return std::nullopt;

        std::vector<Rational> sol(nvars_, Rational(0));
        for (int i = 0; i < m; ++i)
            if (basis[i] < nvars_) sol[basis[i]] = t[i][ncols];
        return sol;
    }

private:
    struct Row {
        std::vector<std::pair<int, Rational>> coeffs;
        char rel;
        Rational rhs;
    };
    int nvars_;
    std::vector<Row> rows_;
};

}  // namespace

std::optional<std::vector<Rational>> solve_linear_feasibility(int nvars,
                                                              std::vector<LinearRow> rows) {
    Phase1 sx(nvars);
    for (auto& row : rows) sx.add_row(std::move(row.coeffs), row.rel, std::move(row.rhs));
    return sx.solve();
}

std::optional<LpPoint> solve_feasibility(const LpRelaxation& lp) {
    const int ne = static_cast<int>(lp.pairs.size());
    const int nf = static_cast<int>(lp.facilities.size());
    Phase1 sx(ne + nf);
    auto yvar = [&](int fi) { return ne + fi; };

    for (int e = 0; e < ne; ++e)
        sx.add_row({{e, Rational(1)}, {yvar(lp.pairs[e].first), Rational(-1)}}, '<', Rational(0));
    for (int fi = 0; fi < nf; ++fi) sx.add_row({{yvar(fi), Rational(1)}}, '<', Rational(1));
    if (lp.k) {
        std::vector<std::pair<int, Rational>> row;
        for (int fi = 0; fi < nf; ++fi) row.push_back({yvar(fi), Rational(1)});
        sx.add_row(std::move(row), '=', Rational(*lp.k));
    }
    if (lp.p > 0) {
        std::vector<std::pair<int, Rational>> row;
        for (int e = 0; e < ne; ++e) row.push_back({e, Rational(1)});
        sx.add_row(std::move(row), '>', Rational(lp.p));
    }
    for (int ci = 0; ci < static_cast<int>(lp.clients.size()); ++ci) {
        std::vector<std::pair<int, Rational>> row;
        for (int e = 0; e < ne; ++e)
            if (lp.pairs[e].second == ci) row.push_back({e, Rational(1)});
        if (!row.empty()) sx.add_row(std::move(row), '<', Rational(1));
    }
    for (int fi = 0; fi < nf; ++fi) {
        std::vector<std::pair<int, Rational>> lo{{yvar(fi), Rational(lp.lower[fi])}};
        std::vector<std::pair<int, Rational>> hi{{yvar(fi), Rational(-lp.upper[fi])}};
        for (int e = 0; e < ne; ++e)
            if (lp.pairs[e].first == fi) {
                lo.push_back({e, Rational(-1)});
                hi.push_back({e, Rational(1)});
            }
        sx.add_row(std::move(lo), '<', Rational(0));  // L_u y_u <= sum x
        sx.add_row(std::move(hi), '<', Rational(0));  // sum x <= U_u y_u
    }

    auto sol = sx.solve();
    if (!sol) return std::nullopt;
    LpPoint pt;
    pt.x.assign(sol->begin(), sol->begin() + ne);
    pt.y.assign(sol->begin() + ne, sol->end());
    return pt;
}

FeasibilityReport lp_point_feasible(const LpRelaxation& lp, const LpPoint& pt) {
    FeasibilityReport rep;
    const int ne = static_cast<int>(lp.pairs.size());
    const int nf = static_cast<int>(lp.facilities.size());
    if (static_cast<int>(pt.x.size()) != ne || static_cast<int>(pt.y.size()) != nf) {
        rep.add("lp-point-shape", "variable vector sizes do not match the relaxation");
        return rep;
    }
    for (int e = 0; e < ne; ++e)
        if (pt.x[e] < 0 || pt.x[e] > 1) rep.add("lp-x-bounds", "pair " + std::to_string(e));
    for (int fi = 0; fi < nf; ++fi)
        if (pt.y[fi] < 0 || pt.y[fi] > 1)
            rep.add("lp-y-bounds", "facility " + std::to_string(lp.facilities[fi]));
    for (int e = 0; e < ne; ++e)
        if (pt.x[e] > pt.y[lp.pairs[e].first])
            rep.add("lp-x-over-y", "pair " + std::to_string(e));
    if (lp.k) {
        Rational sum(0);
        for (const auto& v : pt.y) sum += v;
        if (sum != Rational(*lp.k)) rep.add("lp-open-count", "sum y != k");
    }
    Rational total(0);
    for (const auto& v : pt.x) total += v;
    if (total < Rational(lp.p)) rep.add("lp-coverage", "sum x < p");
    for (int ci = 0; ci < static_cast<int>(lp.clients.size()); ++ci) {
        Rational sum(0);
        for (int e = 0; e < ne; ++e)
            if (lp.pairs[e].second == ci) sum += pt.x[e];
        if (sum > 1)
            rep.add("lp-client-over-served", "client " + std::to_string(lp.clients[ci]));
    }
    for (int fi = 0; fi < nf; ++fi) {
        Rational sum(0);
        for (int e = 0; e < ne; ++e)
            if (lp.pairs[e].first == fi) sum += pt.x[e];
        if (sum < Rational(lp.lower[fi]) * pt.y[fi] || sum > Rational(lp.upper[fi]) * pt.y[fi])
            rep.add("lp-facility-interval", "facility " + std::to_string(lp.facilities[fi]));
    }
    return rep;
}

std::string dump_lp(const LpRelaxation& lp) {
    std::ostringstream os;
    os << "# distance-r relaxation, r = " << to_string(lp.r) << "\n";
    os << "# variables: x_u_v per eligible pair, y_u per facility; all in [0,1]\n";
    auto xname = [&](int e) {
        return "x_" + std::to_string(lp.facilities[lp.pairs[e].first]) + "_" +
               std::to_string(lp.clients[lp.pairs[e].second]);
    };
    for (int e = 0; e < static_cast<int>(lp.pairs.size()); ++e)
        os << xname(e) << " - y_" << lp.facilities[lp.pairs[e].first] << " <= 0\n";
    if (lp.k) {
        for (std::size_t fi = 0; fi < lp.facilities.size(); ++fi)
            os << (fi ? " + " : "") << "y_" << lp.facilities[fi];
        os << " = " << *lp.k << "\n";
    }
    for (std::size_t e = 0; e < lp.pairs.size(); ++e) os << (e ? " + " : "") << xname(e);
    if (!lp.pairs.empty()) os << " >= " << lp.p << "\n";
    for (std::size_t ci = 0; ci < lp.clients.size(); ++ci) {
        bool any = false;
        for (std::size_t e = 0; e < lp.pairs.size(); ++e)
            if (lp.pairs[e].second == static_cast<int>(ci)) {
                os << (any ? " + " : "") << xname(e);
                any = true;
            }
        if (any) os << " <= 1\n";
    }
    for (std::size_t fi = 0; fi < lp.facilities.size(); ++fi) {
        os << lp.lower[fi] << " y_" << lp.facilities[fi];
        for (std::size_t e = 0; e < lp.pairs.size(); ++e)
            if (lp.pairs[e].first == static_cast<int>(fi)) os << " - " << xname(e);
        os << " <= 0\n";
        bool any = false;
        for (std::size_t e = 0; e < lp.pairs.size(); ++e)
            if (lp.pairs[e].first == static_cast<int>(fi)) {
                os << (any ? " + " : "") << xname(e);
                any = true;
            }
        if (any) os << " - ";
        os << lp.upper[fi] << " y_" << lp.facilities[fi];
        if (!any) os << " >= 0\n";
        else os << " <= 0\n";
    }
    return os.str();
}

// ---- transfers ----

TransferSpace TransferSpace::from_induced(const InducedInstance& ind) {
    TransferSpace sp;
    sp.ids = ind.facilities();
    const int n = static_cast<int>(sp.ids.size());
    sp.d.assign(n, std::vector<Rational>(n, Rational(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) sp.d[i][j] = Rational(ind.hops(sp.ids[i], sp.ids[j]));
    return sp;
}

TransferSpace TransferSpace::from_instance(const Instance& inst) {
    TransferSpace sp;
    sp.ids = inst.facilities;
    const int n = static_cast<int>(sp.ids.size());
    sp.d.assign(n, std::vector<Rational>(n, Rational(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) sp.d[i][j] = inst.dist(sp.ids[i], sp.ids[j]);
    return sp;
}

int TransferSpace::index(Id u) const {
    auto it = std::lower_bound(ids.begin(), ids.end(), u);
    return (it != ids.end() && *it == u) ? static_cast<int>(it - ids.begin()) : -1;
}

namespace {

std::vector<Rational> vec_of(const TransferSpace& sp, const std::map<Id, Rational>& m) {
    std::vector<Rational> out(sp.ids.size(), Rational(0));
    for (const auto& [u, q] : m) {
        int i = sp.index(u);
        if (i < 0) throw SolveError(ErrorKind::InvalidArgument,
                                    "vector names unknown facility " + std::to_string(u));
        out[i] = q;
    }
    return out;
}

std::vector<Rational> weight_vec(const TransferSpace& sp, const std::map<Id, long>& m) {
    std::vector<Rational> out(sp.ids.size(), Rational(0));
    for (std::size_t i = 0; i < sp.ids.size(); ++i) out[i] = Rational(m.at(sp.ids[i]));
    return out;
}

// condition: for all W, sum_{w: d(w,W)<=r} to[w] >= sum_{u in W} from[u],
// decided as a transportation problem (weighted Hall).
bool subset_condition_flow(const TransferSpace& sp, const std::vector<Rational>& from,
                           const std::vector<Rational>& to, const Rational& r) {
    const int n = static_cast<int>(sp.ids.size());
    std::vector<std::vector<char>> arc(n, std::vector<char>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) arc[i][j] = sp.d[i][j] <= r;
    return route_all_supply(from, to, arc).has_value();
}

bool subset_condition_exhaustive(const TransferSpace& sp, const std::vector<Rational>& from,
                                 const std::vector<Rational>& to, const Rational& r) {
    const int n = static_cast<int>(sp.ids.size());
    if (n > 20)
        throw SolveError(ErrorKind::TooLarge, "exhaustive transfer check is guarded to 20 facilities");
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        Rational need(0), have(0);
        for (int u = 0; u < n; ++u)
            if (mask & (1u << u)) need += from[u];
        for (int w = 0; w < n; ++w) {
            bool close = false;
            for (int u = 0; u < n && !close; ++u)
                if ((mask & (1u << u)) && sp.d[w][u] <= r) close = true;
            if (close) have += to[w];
        }
        if (have < need) return false;
    }
    return true;
}

}  // namespace

bool verify_transfer(const TransferSpace& sp, const std::map<Id, Rational>& y,
                     const std::map<Id, Rational>& yp, const std::map<Id, long>& lower,
                     const std::map<Id, long>& upper, const Rational& r,
                     TransferCheckMode mode) {
    auto yv = vec_of(sp, y), ypv = vec_of(sp, yp);
    auto lw = weight_vec(sp, lower), uw = weight_vec(sp, upper);

    Rational sy(0), syp(0);
    for (const auto& q : yv) sy += q;
    for (const auto& q : ypv) syp += q;
    if (sy != syp) return false;

    const int n = static_cast<int>(sp.ids.size());
    std::vector<Rational> u_from(n), u_to(n), l_from(n), l_to(n);
    for (int i = 0; i < n; ++i) {
        u_from[i] = uw[i] * yv[i];
        u_to[i] = uw[i] * ypv[i];
        l_from[i] = lw[i] * ypv[i];
        l_to[i] = lw[i] * yv[i];
    }
    if (mode == TransferCheckMode::Flow)
        return subset_condition_flow(sp, u_from, u_to, r) &&
               subset_condition_flow(sp, l_from, l_to, r);
    return subset_condition_exhaustive(sp, u_from, u_to, r) &&
           subset_condition_exhaustive(sp, l_from, l_to, r);
}

LocalTransferCheck verify_local_transfer(const TransferSpace& sp,
                                         const std::map<Id, Rational>& y,
                                         const std::map<Id, Rational>& yp,
                                         const std::map<Id, long>& lower,
                                         const std::map<Id, long>& upper, const Rational& r,
                                         UniformSide side) {
    auto yv = vec_of(sp, y), ypv = vec_of(sp, yp);
    Rational sy(0), syp(0);
    for (const auto& q : yv) sy += q;
    for (const auto& q : ypv) syp += q;
    if (sy != syp)
        throw SolveError(ErrorKind::SumMismatch, "transfer vectors carry different total mass");

    const int n = static_cast<int>(sp.ids.size());
    std::vector<std::vector<char>> arc(n, std::vector<char>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) arc[i][j] = sp.d[i][j] <= r;

    LocalTransferCheck out;
    auto routed = route_all_supply(yv, ypv, arc);
    if (!routed) return out;

    TransferWitness g;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if ((*routed)[i][j] != 0) g[{sp.ids[i], sp.ids[j]}] = (*routed)[i][j];
    out.witness = std::move(g);

    auto lw = weight_vec(sp, lower), uw = weight_vec(sp, upper);
    std::vector<Rational> from(n), to(n);
    if (side == UniformSide::LowerUniform) {
        for (int i = 0; i < n; ++i) {
            from[i] = uw[i] * yv[i];
            to[i] = uw[i] * ypv[i];
        }
    } else {
        for (int i = 0; i < n; ++i) {
            from[i] = lw[i] * ypv[i];
            to[i] = lw[i] * yv[i];
        }
    }
    out.certified = subset_condition_flow(sp, from, to, r);
    return out;
}

FeasibilityReport check_witness(const TransferSpace& sp, const std::map<Id, Rational>& y,
                                const std::map<Id, Rational>& yp, const Rational& r,
                                const TransferWitness& g) {
    FeasibilityReport rep;
    std::map<Id, Rational> row, col;
    for (Id u : sp.ids) row[u] = col[u] = Rational(0);
    for (const auto& [uw, q] : g) {
        auto [u, w] = uw;
        if (q < 0) rep.add("witness-negative", "g < 0");
        int i = sp.index(u), j = sp.index(w);
        if (i < 0 || j < 0) {
            rep.add("witness-unknown-id", "pair outside the facility set");
            continue;
        }
        if (q != 0 && sp.d[i][j] > r)
            rep.add("witness-too-far", std::to_string(u) + " -> " + std::to_string(w));
        row[u] += q;
        col[w] += q;
    }
    for (Id u : sp.ids) {
        Rational want_row = y.count(u) ? y.at(u) : Rational(0);
        Rational want_col = yp.count(u) ? yp.at(u) : Rational(0);
        if (row[u] != want_row) rep.add("witness-row-sum", "facility " + std::to_string(u));
        if (col[u] != want_col) rep.add("witness-col-sum", "facility " + std::to_string(u));
    }
    return rep;
}

TransferWitness compose_witnesses(const std::map<Id, Rational>& mid,
                                  const TransferWitness& first, const TransferWitness& second) {
    // route u -> z -> w proportionally through the middle vector
    TransferWitness out;
    for (const auto& [uz, g1] : first) {
        auto [u, z] = uz;
        auto mz = mid.find(z);
        if (mz == mid.end() || mz->second == 0) continue;
        for (const auto& [zw, g2] : second) {
            if (zw.first != z) continue;
            Rational share = g1 * g2 / mz->second;
            if (share != 0) out[{u, zw.second}] += share;
        }
    }
    return out;
}

}  // namespace ccs
