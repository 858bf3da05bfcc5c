#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ccs/rational.hpp"

namespace ccs {

using Id = int;

enum class CapacityMode { Soft, Hard };
enum class ProblemKind { Center, Supplier };

// A full problem statement. Immutable after construction; all operations
// on it are pure.
struct Instance {
    std::vector<Id> clients;     // sorted, unique
    std::vector<Id> facilities;  // sorted, unique
    // dense symmetric table over all points (clients + facilities)
    std::vector<Id> points;  // sorted union
    std::vector<std::vector<Rational>> metric;

    long lower_bound = 0;                // uniform L
    std::map<Id, long> upper_bounds;     // per facility
    std::optional<long> open_count;      // k; absent = variant without k
    long coverage_target = 0;            // p
    CapacityMode mode = CapacityMode::Hard;
    ProblemKind kind = ProblemKind::Supplier;

    const Rational& dist(Id a, Id b) const;
    int point_index(Id a) const;
    long upper(Id u) const { return upper_bounds.at(u); }
    bool is_client(Id a) const;
    bool is_facility(Id a) const;
    bool uniform_upper() const;
};

struct Violation {
    std::string code;  // stable identifier, e.g. "triangle-inequality"
    std::string detail;
};

struct FeasibilityReport {
    bool ok = true;
    std::vector<Violation> violations;

    void add(const std::string& code, const std::string& detail) {
        ok = false;
        violations.push_back({code, detail});
    }
};

// An open facility copy. copy_index > 0 only in soft mode.
struct OpenCopy {
    Id facility;
    int copy_index;
    auto operator<=>(const OpenCopy&) const = default;
};

struct Solution {
    std::vector<OpenCopy> open;       // multiset of open copies
    std::map<Id, int> assignment;     // served client -> index into open
    Rational radius = Rational(0);    // max assigned distance; 0 if empty

    std::vector<Id> served() const;
    std::map<Id, long> multiplicities() const;
    // served count per open slot
    std::vector<long> slot_loads() const;
};

FeasibilityReport validate_instance(const Instance& inst);

// Checks coverage, per-copy capacity interval, k (if present), hard-mode
// multiplicity, and that assignment targets are open copies. Also recomputes
// the radius and flags a mismatch with the stored one.
FeasibilityReport check_feasible(const Instance& inst, const Solution& sol);

// Sorted, deduplicated facility-client distances. The optimal radius is
// always in this list (or 0 when p = 0).
std::vector<Rational> candidate_radii(const Instance& inst);

// Recomputed max assigned distance, independent of sol.radius.
Rational solution_radius(const Instance& inst, const Solution& sol);

}  // namespace ccs
