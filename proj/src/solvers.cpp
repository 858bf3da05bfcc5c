#include "ccs/solvers.hpp"

#include <algorithm>
#include <cassert>
#include <set>

#include "ccs/errors.hpp"
#include "ccs/matching.hpp"

namespace ccs {

const char* variant_name(Variant v) {
    switch (v) {
        case Variant::SoftUniform: return "soft-uniform";
        case Variant::HardUniformCenter: return "hard-uniform-center";
        case Variant::HardNonuniformCenter: return "hard-nonuniform-center";
        case Variant::SoftNonuniformSupplier: return "soft-nonuniform-supplier";
    }
    return "?";
}

int variant_ratio(Variant v) {
    switch (v) {
        case Variant::SoftUniform: return 5;
        case Variant::HardUniformCenter: return 10;
        case Variant::HardNonuniformCenter: return 11;
        case Variant::SoftNonuniformSupplier: return 11;
    }
    return 0;
}

std::optional<Variant> variant_from_name(const std::string& name) {
    for (Variant v : {Variant::SoftUniform, Variant::HardUniformCenter,
                      Variant::HardNonuniformCenter, Variant::SoftNonuniformSupplier})
        if (name == variant_name(v)) return v;
    return std::nullopt;
}

RelocationPlan relocate_matching(const InducedInstance& ind, const PassUpResult& pu,
                                 const std::map<Id, long>& candidate_caps, long p) {
    const int a = static_cast<int>(pu.open.size());
    std::vector<Id> cands;
    for (const auto& [v, cap] : candidate_caps)
        if (ind.has_client(v)) cands.push_back(v);

    std::vector<std::vector<std::pair<int, long long>>> adj(a);
    for (int i = 0; i < a; ++i)
        for (int c = 0; c < static_cast<int>(cands.size()); ++c) {
            int d = ind.hops(pu.open[i], cands[c]);
            if (d >= 0 && d <= 6) adj[i].push_back({c, candidate_caps.at(cands[c])});
        }

    BipartiteMatching m = max_weight_max_matching(a, static_cast<int>(cands.size()), adj);
    if (m.cardinality < a)
        throw SolveError(ErrorKind::MatchingDeficient,
                         "only " + std::to_string(m.cardinality) + " of " + std::to_string(a) +
                             " copies can be rehomed within six hops");
    if (m.weight < p)
        throw SolveError(ErrorKind::MatchingDeficient,
                         "rehomed capacity " + std::to_string(m.weight) + " below p=" +
                             std::to_string(p));

    RelocationPlan plan;
    plan.mode = RelocationMode::Matching;
    for (int i = 0; i < a; ++i) plan.pairs.push_back({pu.open[i], cands[m.left_to_right[i]]});
    return plan;
}

FeasibilityReport check_relocation_contract(const InducedInstance& ind,
                                            const RelocationPlan& plan,
                                            const std::map<Id, long>& caps, long p) {
    FeasibilityReport rep;
    const int limit = plan.mode == RelocationMode::ClientSubstitution ? 5 : 6;
    long long total = 0;
    std::set<Id> seen;
    for (auto [from, to] : plan.pairs) {
        int d = ind.hops(from, to);
        if (d < 0 || d > limit)
            rep.add("relocation-distance", std::to_string(from) + " -> " + std::to_string(to) +
                                               " at hop distance " + std::to_string(d));
        if (plan.mode != RelocationMode::Greedy && !seen.insert(to).second)
            rep.add("relocation-duplicate", "target " + std::to_string(to) + " reused");
        total += caps.at(to);
    }
    if (total < p)
        rep.add("relocation-capacity", "total " + std::to_string(total) + " < p=" +
                                           std::to_string(p));
    return rep;
}

namespace {

struct PipelineConfig {
    Variant var;
    long lower_bound;              // instance L (may be 0)
    std::map<Id, long> upper;      // original capacities by id
    long p;                        // error threshold for relocation
    const PipelineTrace* trace;
};

long upper_of(const PipelineConfig& cfg, Id u) { return cfg.upper.at(u); }

// Runs one preprocessed connected piece through cct / xi / pass-up /
// relocation / pass-down. Returns (open facilities, phi, induced loads),
// appended into `out`.
void run_piece(const InducedInstance& sub, const PipelineConfig& cfg, ComponentOutcome& out) {
    const long L = std::max(cfg.lower_bound, 1L);
    if (static_cast<long>(sub.clients().size()) < L) return;  // nothing can open here

    CoreCenterTree cct = build_cct(sub);
    XiMap xi = build_xi(sub, cct);
    PassUpResult pu = pass_up(sub, cct, xi, L);
    if (cfg.trace && cfg.trace->on_pass_up) cfg.trace->on_pass_up(sub, cct, xi, pu, L);

    // relocation decides the final facility and capacity of every copy
    std::vector<Id> final_fac = pu.open;
    std::vector<long> caps(pu.open.size(), 0);
    std::optional<RelocationPlan> plan;

    switch (cfg.var) {
        case Variant::SoftUniform:
        case Variant::HardUniformCenter:
            for (std::size_t i = 0; i < pu.open.size(); ++i) caps[i] = upper_of(cfg, pu.open[i]);
            break;
        case Variant::HardNonuniformCenter: {
            std::map<Id, long> cand;
            for (Id v : sub.clients()) cand[v] = upper_of(cfg, v);
            // the coverage target is enforced per component, not per piece,
            // so the matching itself only needs to saturate the copies
            plan = relocate_matching(sub, pu, cand, 0);
            for (std::size_t i = 0; i < pu.open.size(); ++i) {
                final_fac[i] = plan->pairs[i].second;
                caps[i] = upper_of(cfg, final_fac[i]);
            }
            if (cfg.trace && cfg.trace->on_relocation) cfg.trace->on_relocation(sub, *plan, cand);
            break;
        }
        case Variant::SoftNonuniformSupplier: {
            plan = RelocationPlan{RelocationMode::Greedy, {}};
            for (std::size_t i = 0; i < pu.open.size(); ++i) {
                Id best = -1;
                long best_cap = -1;
                for (Id w : sub.facilities()) {
                    int d = sub.hops(pu.open[i], w);
                    if (d < 0 || d > 6) continue;
                    long cap = upper_of(cfg, w);
                    if (cap > best_cap) {
                        best_cap = cap;
                        best = w;
                    }
                }
                assert(best >= 0 && "a copy is always within six hops of itself");
                plan->pairs.push_back({pu.open[i], best});
                final_fac[i] = best;
                caps[i] = best_cap;
            }
            if (cfg.trace && cfg.trace->on_relocation) {
                std::map<Id, long> cand;
                for (Id w : sub.facilities()) cand[w] = upper_of(cfg, w);
                cfg.trace->on_relocation(sub, *plan, cand);
            }
            break;
        }
    }

    PassDownResult pd = pass_down(sub, cct, xi, pu, caps);
    if (cfg.trace && cfg.trace->on_pass_down) cfg.trace->on_pass_down(sub, pd, caps, L);

    // hard uniform: substitute each copy by its lowest served client
    if (cfg.var == Variant::HardUniformCenter) {
        std::vector<Id> lowest(pd.open.size(), -1);
        for (const auto& [v, slot] : pd.phi)
            if (lowest[slot] < 0 || v < lowest[slot]) lowest[slot] = v;
        RelocationPlan subst{RelocationMode::ClientSubstitution, {}};
        for (std::size_t i = 0; i < pd.open.size(); ++i) {
            assert(lowest[i] >= 0 && "every copy serves at least L >= 1 clients");
            subst.pairs.push_back({pd.open[i], lowest[i]});
            final_fac[i] = lowest[i];
        }
        if (cfg.trace && cfg.trace->on_relocation) {
            std::map<Id, long> cand;
            for (Id v : sub.clients()) cand[v] = upper_of(cfg, v);
            cfg.trace->on_relocation(sub, subst, cand);
        }
    }

    const int base = static_cast<int>(out.solution.open.size());
    std::map<Id, int> copy_counter;
    for (Id f : final_fac) {
        int idx = copy_counter[f]++;
        out.solution.open.push_back({f, idx});
    }
    for (const auto& [v, slot] : pd.phi) out.solution.assignment[v] = base + slot;
    out.coverage += pd.coverage;
}

ComponentOutcome run_component(const InducedInstance& ind, const PipelineConfig& cfg) {
    ComponentOutcome out;
    const long L = std::max(cfg.lower_bound, 1L);
    if (static_cast<long>(ind.clients().size()) < L) {
        if (cfg.p == 0) return out;
        throw SolveError(ErrorKind::TooFewClients, "component below the lower bound");
    }

    PreprocessResult pre = preprocess_facilities(ind, L, cfg.upper);
    for (const auto& sub : pre.subinstances) run_piece(sub, cfg, out);

    // induced radius, recomputed; the pipeline guarantee holds at every
    // guessed radius, not just the accepted one
    Rational radius(0);
    for (const auto& [v, slot] : out.solution.assignment) {
        int d = ind.hops(v, out.solution.open[slot].facility);
        assert(d >= 0);
        if (Rational(d) > radius) radius = Rational(d);
    }
    assert(radius <= Rational(variant_ratio(cfg.var)));
    out.solution.radius = radius;

    if (out.coverage < cfg.p)
        throw SolveError(ErrorKind::CoverageShortfall,
                         "coverage " + std::to_string(out.coverage) + " < p=" +
                             std::to_string(cfg.p));
    return out;
}

std::map<Id, long> uniform_caps(const InducedInstance& ind, long U, bool include_clients) {
    std::map<Id, long> m;
    for (Id u : ind.facilities()) m[u] = U;
    if (include_clients)
        for (Id v : ind.clients()) m[v] = U;
    return m;
}

}  // namespace

ComponentOutcome solve_soft_uniform(const InducedInstance& ind, long L, long U, long p,
                                    const PipelineTrace* trace) {
    if (p == 0) return {};
    return run_component(ind, {Variant::SoftUniform, L, uniform_caps(ind, U, false), p, trace});
}

ComponentOutcome solve_hard_uniform_center(const InducedInstance& ind, long L, long U, long p,
                                           const PipelineTrace* trace) {
    if (p == 0) return {};
    return run_component(ind,
                         {Variant::HardUniformCenter, L, uniform_caps(ind, U, true), p, trace});
}

ComponentOutcome solve_hard_nonuniform_center(const InducedInstance& ind, long L,
                                              const std::map<Id, long>& upper, long p,
                                              const PipelineTrace* trace) {
    if (p == 0) return {};
    return run_component(ind, {Variant::HardNonuniformCenter, L, upper, p, trace});
}

ComponentOutcome solve_soft_nonuniform_supplier(const InducedInstance& ind, long L,
                                                const std::map<Id, long>& upper, long p,
                                                const PipelineTrace* trace) {
    if (p == 0) return {};
    return run_component(ind, {Variant::SoftNonuniformSupplier, L, upper, p, trace});
}

ComponentOutcome max_coverage_outcome(const InducedInstance& ind, Variant var, long L,
                                      const std::map<Id, long>& upper,
                                      const PipelineTrace* trace) {
    return run_component(ind, {var, L, upper, 0, trace});
}

void check_variant_compatible(const Instance& inst, Variant var) {
    auto fail = [&](const std::string& why) {
        throw SolveError(ErrorKind::InvalidArgument,
                         std::string(variant_name(var)) + ": " + why);
    };
    if (inst.open_count) fail("the combinatorial variants have no k constraint");
    switch (var) {
        case Variant::SoftUniform:
            if (inst.mode != CapacityMode::Soft) fail("requires soft capacities");
            if (!inst.uniform_upper()) fail("requires a uniform upper bound");
            break;
        case Variant::HardUniformCenter:
            if (inst.mode != CapacityMode::Hard) fail("requires hard capacities");
            if (inst.kind != ProblemKind::Center) fail("requires a center instance");
            if (!inst.uniform_upper()) fail("requires a uniform upper bound");
            break;
        case Variant::HardNonuniformCenter:
            if (inst.mode != CapacityMode::Hard) fail("requires hard capacities");
            if (inst.kind != ProblemKind::Center) fail("requires a center instance");
            break;
        case Variant::SoftNonuniformSupplier:
            if (inst.mode != CapacityMode::Soft) fail("requires soft capacities");
            break;
    }
}

GuessedSolution solve_variant(const Instance& inst, Variant var, const PipelineTrace* trace) {
    check_variant_compatible(inst, var);

    std::map<Id, long> upper = inst.upper_bounds;
    ComponentSolver solver = [&inst, var, upper, trace](const InducedInstance& comp,
                                                        std::optional<long> k_target,
                                                        long p_target) -> std::optional<ComponentOutcome> {
        if (k_target) return std::nullopt;  // variant without ks only
        try {
            ComponentOutcome out = max_coverage_outcome(comp, var, inst.lower_bound, upper, trace);
            if (out.coverage < p_target) return std::nullopt;
            return out;
        } catch (const SolveError&) {
            return std::nullopt;
        }
    };
    return solve_with_guessing(inst, solver, variant_ratio(var));
}

}  // namespace ccs
