#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ccs/induced.hpp"
#include "ccs/instance.hpp"

namespace ccs {

// The distance-r feasibility relaxation. Assignment variables exist only
// for pairs within r; everything else is pinned to zero by omission.
struct LpRelaxation {
    std::vector<Id> facilities;
    std::vector<Id> clients;
    std::vector<std::pair<int, int>> pairs;  // (facility index, client index)
    std::vector<long> lower, upper;          // per facility
    std::optional<long> k;
    long p = 0;
    Rational r;

    int pair_index(int fac, int cli) const;  // -1 when ineligible
};

struct LpPoint {
    std::vector<Rational> x;  // per pair
    std::vector<Rational> y;  // per facility
};

// Original-metric relaxation of a full instance (k, p taken from it).
LpRelaxation build_lp_r(const Instance& inst, const Rational& r);
// Induced-metric relaxation of one component.
LpRelaxation build_lp_r(const InducedInstance& ind, long lower_bound,
                        const std::map<Id, long>& upper, std::optional<long> k, long p,
                        long r_hops);

// Generic exact feasibility over nonnegative variables: one row per
// constraint, rel is '<', '>' or '='. Shared by the relaxation solver and
// by test harnesses that pin variables.
struct LinearRow {
    std::vector<std::pair<int, Rational>> coeffs;
    char rel;
    Rational rhs;
};
std::optional<std::vector<Rational>> solve_linear_feasibility(int nvars,
                                                              std::vector<LinearRow> rows);

// Exact rational feasibility via a dense phase-1 pivot method.
std::optional<LpPoint> solve_feasibility(const LpRelaxation& lp);

// Constraint-by-constraint recheck of a candidate point.
FeasibilityReport lp_point_feasible(const LpRelaxation& lp, const LpPoint& pt);

// One constraint per line, exact rationals.
std::string dump_lp(const LpRelaxation& lp);

// ---- distance-r transfers ----

// The facility set plus the metric the transfer is checked in (induced
// hops, original distances, or a tree metric; the caller names which).
struct TransferSpace {
    std::vector<Id> ids;  // sorted
    std::vector<std::vector<Rational>> d;

    static TransferSpace from_induced(const InducedInstance& ind);
    static TransferSpace from_instance(const Instance& inst);

    int index(Id u) const;
};

enum class TransferCheckMode { Flow, Exhaustive };

// Decides whether y' is a distance-r transfer of y: equal mass, and the
// two all-subsets capacity conditions (upper-weighted from y to y', and
// lower-weighted back). Flow mode decides each condition by transportation
// feasibility; exhaustive mode enumerates subsets and is guarded to
// |F| <= 20.
bool verify_transfer(const TransferSpace& sp, const std::map<Id, Rational>& y,
                     const std::map<Id, Rational>& yp, const std::map<Id, long>& lower,
                     const std::map<Id, long>& upper, const Rational& r,
                     TransferCheckMode mode);

using TransferWitness = std::map<std::pair<Id, Id>, Rational>;

enum class UniformSide { LowerUniform, UpperUniform };

struct LocalTransferCheck {
    std::optional<TransferWitness> witness;  // moves mass only within r
    bool certified = false;                  // witness + side condition hold
};

// Searches for a witness flow g with row sums y and column sums y' along
// arcs within r. With a uniform lower bound the upper-weighted subset
// condition then certifies a distance-r transfer (and symmetrically for a
// uniform upper bound). Throws SumMismatch when the masses differ.
LocalTransferCheck verify_local_transfer(const TransferSpace& sp,
                                         const std::map<Id, Rational>& y,
                                         const std::map<Id, Rational>& yp,
                                         const std::map<Id, long>& lower,
                                         const std::map<Id, long>& upper, const Rational& r,
                                         UniformSide side);

// 3a/3b recheck of an explicit witness.
FeasibilityReport check_witness(const TransferSpace& sp, const std::map<Id, Rational>& y,
                                const std::map<Id, Rational>& yp, const Rational& r,
                                const TransferWitness& g);

// Composition of witnesses at r and r' into one at r + r'. `mid` is the
// shared middle vector (column sums of `first`, row sums of `second`).
TransferWitness compose_witnesses(const std::map<Id, Rational>& mid,
                                  const TransferWitness& first, const TransferWitness& second);

}  // namespace ccs
