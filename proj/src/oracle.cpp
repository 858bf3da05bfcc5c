#include "ccs/oracle.hpp"

#include <algorithm>
#include <cassert>

#include "ccs/errors.hpp"
#include "ccs/flow.hpp"

namespace ccs {

namespace {

// one way of opening a facility: between copies_lo and copies_hi centers
// serving a total in [lo, hi]; soft no-k runs of consecutive copy counts
// whose service intervals touch are merged into one option
struct OpenOption {
    long copies_lo, copies_hi;
    long lo, hi;
};

struct Searcher {
    const Instance& inst;
    std::vector<std::vector<int>> eligible;  // facility -> client indices
    std::vector<std::vector<OpenOption>> opts;
    std::optional<long> k;
    long nc;

    long best_coverage = -1;
    std::vector<int> best_choice;
    std::vector<int> best_assign;  // client -> facility index (-1 unserved)
    long stop_at = -1;             // stop once coverage reaches this (-1 = maximize)

    std::vector<int> choice;
    std::vector<long> suffix_hi;

    Searcher(const Instance& i, const Rational& r) : inst(i) {
        nc = static_cast<long>(inst.clients.size());
        k = inst.open_count;
        const long L = inst.lower_bound;
        for (Id u : inst.facilities) {
            std::vector<int> elig;
            for (long ci = 0; ci < nc; ++ci)
                if (inst.dist(u, inst.clients[ci]) <= r) elig.push_back(static_cast<int>(ci));
            const long deg = static_cast<long>(elig.size());
            eligible.push_back(std::move(elig));

            const long U = inst.upper(u);
            std::vector<OpenOption> o{{0, 0, 0, 0}};
            if (inst.mode == CapacityMode::Hard) {
                if (L <= deg) o.push_back({1, 1, L, std::min(U, deg)});
            } else {
                long cmax = L >= 1 ? nc / L : nc;
                if (k) cmax = std::min(cmax, *k);
                if (!k) {
                    long c = 1;
                    while (c <= cmax && c * L <= deg) {
                        long clo = c, lo = c * L, hi = std::min(c * U, deg);
                        while (c + 1 <= cmax && (c + 1) * L <= hi + 1 &&
                               (c + 1) * L <= deg) {
                            ++c;
                            hi = std::min(c * U, deg);
                        }
                        o.push_back({clo, c, lo, hi});
                        ++c;
                    }
                } else {
                    for (long c = 1; c <= cmax && c * L <= deg; ++c)
                        o.push_back({c, c, c * L, std::min(c * U, deg)});
                }
            }
            opts.push_back(std::move(o));
        }

        const int nf = static_cast<int>(inst.facilities.size());
        suffix_hi.assign(nf + 1, 0);
        for (int i = nf - 1; i >= 0; --i) {
            long m = 0;
            for (const auto& o : opts[i]) m = std::max(m, o.hi);
            suffix_hi[i] = suffix_hi[i + 1] + m;
        }
        choice.assign(nf, 0);
    }

    void search() { dfs(0, 0, 0, 0, 0); }

    void dfs(int i, long lo_sum, long hi_sum, long copies_lo_sum, long copies_hi_sum) {
        if (stop_at >= 0 && best_coverage >= stop_at) return;
        if (lo_sum > nc) return;
        if (k && copies_lo_sum > *k) return;
        const long reachable = std::min(nc, hi_sum + suffix_hi[i]);
        if (stop_at >= 0 && reachable < stop_at) return;
        if (stop_at < 0 && reachable <= best_coverage) return;

        const int nf = static_cast<int>(inst.facilities.size());
        if (i == nf) {
            if (k && !(copies_lo_sum <= *k && *k <= copies_hi_sum)) return;
            evaluate();
            return;
        }
        for (int oi = 0; oi < static_cast<int>(opts[i].size()); ++oi) {
            choice[i] = oi;
            const auto& o = opts[i][oi];
            dfs(i + 1, lo_sum + o.lo, hi_sum + o.hi, copies_lo_sum + o.copies_lo,
                copies_hi_sum + o.copies_hi);
        }
        choice[i] = 0;
    }

    void evaluate() {
        AssignmentProblem ap;
        ap.num_clients = static_cast<int>(nc);
        std::vector<int> fac_of_slot;
        for (int i = 0; i < static_cast<int>(opts.size()); ++i) {
            const auto& o = opts[i][choice[i]];
            if (o.copies_hi == 0) continue;
            ap.bounds.push_back({o.lo, o.hi});
            ap.eligible.push_back(eligible[i]);
            fac_of_slot.push_back(i);
        }
        AssignmentResult res = solve_assignment(ap);
        if (!res.lower_bounds_met || res.coverage <= best_coverage) return;

        best_coverage = res.coverage;
        best_choice = choice;
        best_assign.assign(nc, -1);
        for (long ci = 0; ci < nc; ++ci)
            if (res.client_to_facility[ci] >= 0)
                best_assign[ci] = fac_of_slot[res.client_to_facility[ci]];
    }

    // copy counts realized at the best leaf
    std::vector<long> copies_at_best(const std::vector<long>& served) const {
        std::vector<long> copies(opts.size(), 0);
        const long L = inst.lower_bound;
        for (std::size_t i = 0; i < opts.size(); ++i) {
            const auto& o = opts[i][best_choice[i]];
            if (o.copies_hi == 0) continue;
            const long U = inst.upper(inst.facilities[i]);
            long c;
            if (k) {
                c = o.copies_lo;  // options are exact under a k constraint
            } else if (served[i] == 0) {
                c = 0;  // only reachable when the option's lo is 0
            } else {
                c = U > 0 ? (served[i] + U - 1) / U : o.copies_lo;
                c = std::max(c, o.copies_lo);
            }
            if (c > 0) {
                assert(c * L <= served[i]);
                assert(served[i] <= c * U);
            }
            copies[i] = c;
        }
        return copies;
    }

    Solution witness() const {
        std::vector<std::vector<Id>> mine(opts.size());
        std::vector<long> served(opts.size(), 0);
        for (long ci = 0; ci < nc; ++ci)
            if (best_assign[ci] >= 0) {
                mine[best_assign[ci]].push_back(inst.clients[ci]);
                served[best_assign[ci]]++;
            }
        std::vector<long> copies = copies_at_best(served);

        Solution sol;
        for (std::size_t i = 0; i < opts.size(); ++i) {
            const long c = copies[i];
            if (c == 0) continue;
            const long s = served[i];
            long at = 0;
            for (long j = 0; j < c; ++j) {
                int slot = static_cast<int>(sol.open.size());
                sol.open.push_back({inst.facilities[i], static_cast<int>(j)});
                long take = s / c + (j < s % c ? 1 : 0);
                for (long t = 0; t < take; ++t) sol.assignment[mine[i][at++]] = slot;
            }
        }
        sol.radius = solution_radius(inst, sol);
        return sol;
    }
};

void guard(const Instance& inst) {
    if (static_cast<int>(inst.facilities.size()) > kOracleMaxFacilities ||
        static_cast<int>(inst.clients.size()) > kOracleMaxClients)
        throw SolveError(ErrorKind::TooLarge,
                         "oracle guard: at most " + std::to_string(kOracleMaxFacilities) +
                             " facilities and " + std::to_string(kOracleMaxClients) +
                             " clients");
}

}  // namespace

OracleResult exact_solve(const Instance& inst) {
    guard(inst);
    if (inst.coverage_target > static_cast<long>(inst.clients.size()))
        throw SolveError(ErrorKind::Infeasible, "p exceeds the number of clients");

    std::vector<Rational> radii = candidate_radii(inst);
    if (radii.empty() || radii.front() != 0) radii.insert(radii.begin(), Rational(0));

    for (const Rational& r : radii) {
        Searcher s(inst, r);
        s.stop_at = inst.coverage_target;
        s.search();
        if (s.best_coverage >= inst.coverage_target) return {r, s.witness()};
    }
    throw SolveError(ErrorKind::Infeasible, "no radius admits a feasible solution");
}

long oracle_max_coverage(const Instance& inst, const Rational& r) {
    guard(inst);
    Searcher s(inst, r);
    s.search();
    return std::max(s.best_coverage, 0L);
}

}  // namespace ccs
