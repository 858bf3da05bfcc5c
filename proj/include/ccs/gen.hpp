#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ccs/instance.hpp"
#include "ccs/solvers.hpp"

namespace ccs {

// Seeded instance generator. Two families: "grid" draws integer plane
// coordinates and takes exact ceiling-scaled Euclidean distances (rounding
// up preserves the triangle inequality); "graph" draws a random connected
// bipartite threshold graph and uses its hop metric.
struct GenSpec {
    std::uint64_t seed = 1;
    std::string family = "grid";  // grid | graph
    ProblemKind kind = ProblemKind::Supplier;
    CapacityMode mode = CapacityMode::Soft;
    bool uniform_upper = true;
    int num_facilities = 5;
    int num_clients = 8;  // ignored for center instances
    long lower_min = 1, lower_max = 3;
    long upper_spread = 3;  // U drawn from [L, L + spread]
    long coord_range = 20;
    std::optional<long> k;
    std::optional<long> p;  // absent: uniform in [0, achievable coverage]
    long euclid_denominator = 1;
};

Instance generate_instance(const GenSpec& spec);

// A ratio-suite instance for one variant: sizes drawn within the caps,
// L in [1,3], U in [L, L+3], p never above what the variant's mode can
// actually cover.
Instance random_suite_instance(std::uint64_t seed, Variant variant, int max_facilities,
                               int max_clients);

}  // namespace ccs
