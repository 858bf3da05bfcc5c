#include "ccs/gen.hpp"

#include <algorithm>
#include <cassert>
#include <queue>

#include "ccs/errors.hpp"
#include "ccs/oracle.hpp"
#include "ccs/rng.hpp"

namespace ccs {

namespace {

Rational euclid_ceil(long dx, long dy, long denom) {
    BigInt s = BigInt(dx) * dx + BigInt(dy) * dy;
    BigInt num = ceil_sqrt(s * denom * denom);
    Rational q(num, denom);
    q.canonicalize();
    return q;
}

std::vector<std::vector<Rational>> grid_metric(Rng& rng, int n, long range, long denom) {
    std::vector<std::pair<long, long>> pts(n);
    for (auto& [x, y] : pts) {
        x = rng.range(0, range);
        y = rng.range(0, range);
    }
    std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n, Rational(0)));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            d[i][j] = d[j][i] =
                euclid_ceil(pts[i].first - pts[j].first, pts[i].second - pts[j].second, denom);
    return d;
}

// hop metric of a random connected graph; edges only facility-client when
// the roles are split (first nf nodes are facilities)
std::vector<std::vector<Rational>> graph_metric(Rng& rng, int nf, int n, bool bipartite) {
    std::vector<std::vector<int>> adj(n);
    auto connect = [&](int a, int b) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    };
    // spanning backbone
    if (!bipartite) {
        for (int v = 1; v < n; ++v) connect(v, static_cast<int>(rng.below(v)));
    } else {
        assert(nf >= 1 && n > nf);
        connect(0, nf);
        std::vector<int> placed_fac{0}, placed_cli{nf};
        for (int v = 1; v < n; ++v) {
            if (v == nf) continue;
            auto& pool = v < nf ? placed_cli : placed_fac;
            connect(v, pool[rng.below(pool.size())]);
            (v < nf ? placed_fac : placed_cli).push_back(v);
        }
    }
    // extra edges
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            if (bipartite && ((a < nf) == (b < nf))) continue;
            if (rng.chance(1, 4)) connect(a, b);
        }

    std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n, Rational(0)));
    for (int s = 0; s < n; ++s) {
        std::vector<int> hop(n, -1);
        hop[s] = 0;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int w : adj[v])
                if (hop[w] < 0) {
                    hop[w] = hop[v] + 1;
                    q.push(w);
                }
        }
        for (int t = 0; t < n; ++t) {
            assert(hop[t] >= 0);
            d[s][t] = Rational(hop[t]);
        }
    }
    return d;
}

}  // namespace

Instance generate_instance(const GenSpec& spec) {
    Rng rng(spec.seed);
    Instance inst;
    inst.kind = spec.kind;
    inst.mode = spec.mode;

    const bool center = spec.kind == ProblemKind::Center;
    const int nf = spec.num_facilities;
    const int n = center ? nf : nf + spec.num_clients;

    for (int i = 0; i < nf; ++i) inst.facilities.push_back(i);
    if (center)
        inst.clients = inst.facilities;
    else
        for (int i = nf; i < n; ++i) inst.clients.push_back(i);
    inst.points.resize(n);
    for (int i = 0; i < n; ++i) inst.points[i] = i;

    if (spec.family == "grid")
        inst.metric = grid_metric(rng, n, spec.coord_range, spec.euclid_denominator);
    else if (spec.family == "graph")
        inst.metric = graph_metric(rng, nf, n, !center);
    else
        throw SolveError(ErrorKind::InvalidArgument, "unknown generator family " + spec.family);

    inst.lower_bound = rng.range(spec.lower_min, spec.lower_max);
    long uniform_u = inst.lower_bound + rng.range(0, spec.upper_spread);
    for (Id u : inst.facilities)
        inst.upper_bounds[u] =
            spec.uniform_upper ? uniform_u : inst.lower_bound + rng.range(0, spec.upper_spread);

    inst.open_count = spec.k;

    if (spec.p) {
        inst.coverage_target = *spec.p;
    } else {
        Rational rmax(0);
        for (Id u : inst.facilities)
            for (Id v : inst.clients)
                if (inst.dist(u, v) > rmax) rmax = inst.dist(u, v);
        long achievable = oracle_max_coverage(inst, rmax);
        inst.coverage_target = static_cast<long>(rng.below(achievable + 1));
    }
    return inst;
}

Instance random_suite_instance(std::uint64_t seed, Variant variant, int max_facilities,
                               int max_clients) {
    Rng rng(seed);
    GenSpec spec;
    spec.seed = rng.next();
    spec.family = rng.chance(1, 3) ? "graph" : "grid";
    switch (variant) {
        case Variant::SoftUniform:
            spec.kind = ProblemKind::Supplier;
            spec.mode = CapacityMode::Soft;
            spec.uniform_upper = true;
            break;
        case Variant::HardUniformCenter:
            spec.kind = ProblemKind::Center;
            spec.mode = CapacityMode::Hard;
            spec.uniform_upper = true;
            break;
        case Variant::HardNonuniformCenter:
            spec.kind = ProblemKind::Center;
            spec.mode = CapacityMode::Hard;
            spec.uniform_upper = false;
            break;
        case Variant::SoftNonuniformSupplier:
            spec.kind = ProblemKind::Supplier;
            spec.mode = CapacityMode::Soft;
            spec.uniform_upper = false;
            break;
    }
    spec.num_facilities = static_cast<int>(rng.range(2, max_facilities));
    spec.num_clients = static_cast<int>(rng.range(3, max_clients));
    return generate_instance(spec);
}

}  // namespace ccs
