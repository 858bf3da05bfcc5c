#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ccs/errors.hpp"
#include "ccs/gen.hpp"
#include "ccs/instance.hpp"
#include "ccs/io.hpp"
#include "ccs/lp.hpp"
#include "ccs/oracle.hpp"
#include "ccs/solvers.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 2;
constexpr int kExitTooLarge = 3;
constexpr int kExitUsage = 64;
constexpr int kExitParse = 65;

using nlohmann::json;

int parse_exit(const ccs::ParseError& err, const std::string& path) {
    if (err.line > 0)
        std::cerr << path << ":" << err.line << ":" << err.column << ": " << err.message
                  << "\n";
    else
        std::cerr << path << ": " << err.message << "\n";
    return kExitParse;
}

int error_exit(const ccs::SolveError& e) {
    std::cerr << "error: " << ccs::error_kind_name(e.kind()) << ": " << e.what() << "\n";
    switch (e.kind()) {
        case ccs::ErrorKind::TooLarge: return kExitTooLarge;
        case ccs::ErrorKind::InvalidArgument: return kExitUsage;
        default: return kExitInfeasible;
    }
}

std::optional<ccs::Instance> load_checked(const std::string& path, int* rc) {
    ccs::ParseError err;
    auto inst = ccs::load_instance(path, &err);
    if (!inst) {
        *rc = parse_exit(err, path);
        return std::nullopt;
    }
    auto rep = ccs::validate_instance(*inst);
    // an oversized coverage target is an infeasible problem, not a broken
    // file; the solver and oracle both report it as such
    bool structural = false;
    for (const auto& v : rep.violations)
        if (v.code != "coverage-exceeds-clients") structural = true;
    if (structural) {
        std::cerr << path << ": invalid instance\n";
        for (const auto& v : rep.violations)
            std::cerr << "  " << v.code << ": " << v.detail << "\n";
        *rc = kExitParse;
        return std::nullopt;
    }
    return inst;
}

std::string read_file(const std::string& path, int* rc) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "cannot open " << path << "\n";
        *rc = kExitParse;
        return {};
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json solution_json(const ccs::Instance& inst, const ccs::Solution& sol) {
    return json::parse(ccs::print_solution(inst, sol));
}

void print_solution_text(const ccs::Instance& inst, const ccs::Solution& sol) {
    std::cout << "radius " << ccs::to_string(sol.radius) << "\n";
    std::cout << "served " << sol.assignment.size() << " of " << inst.clients.size()
              << " (p=" << inst.coverage_target << ")\n";
    std::cout << "open";
    for (const auto& c : sol.open) {
        std::cout << " " << c.facility;
        if (c.copy_index > 0) std::cout << "#" << c.copy_index;
    }
    std::cout << "\n";
    for (const auto& [v, slot] : sol.assignment)
        std::cout << "  " << v << " -> " << sol.open[slot].facility << " (d="
                  << ccs::to_string(inst.dist(v, sol.open[slot].facility)) << ")\n";
}

int cmd_solve(const std::string& path, const std::string& variant_name, bool as_json) {
    int rc = 0;
    auto inst = load_checked(path, &rc);
    if (!inst) return rc;
    auto var = ccs::variant_from_name(variant_name);
    if (!var) {
        std::cerr << "unknown variant " << variant_name << "\n";
        return kExitUsage;
    }
    try {
        ccs::GuessedSolution out = ccs::solve_variant(*inst, *var);
        auto rep = ccs::check_feasible(*inst, out.solution);
        if (!rep.ok) {
            std::cerr << "internal error: produced solution failed verification\n";
            for (const auto& v : rep.violations) std::cerr << "  " << v.code << "\n";
            return 1;
        }
        if (as_json) {
            json doc;
            doc["variant"] = variant_name;
            doc["guessed-radius"] = ccs::to_string(out.guessed_radius);
            doc["solution"] = solution_json(*inst, out.solution);
            std::cout << doc.dump(2) << "\n";
        } else {
            std::cout << "variant " << variant_name << ", accepted guess r = "
                      << ccs::to_string(out.guessed_radius) << "\n";
            print_solution_text(*inst, out.solution);
        }
        return kExitOk;
    } catch (const ccs::SolveError& e) {
        return error_exit(e);
    }
}

int cmd_oracle(const std::string& path, bool as_json) {
    int rc = 0;
    auto inst = load_checked(path, &rc);
    if (!inst) return rc;
    try {
        ccs::OracleResult res = ccs::exact_solve(*inst);
        if (as_json) {
            json doc;
            doc["optimal-radius"] = ccs::to_string(res.radius);
            doc["witness"] = solution_json(*inst, res.witness);
            std::cout << doc.dump(2) << "\n";
        } else {
            std::cout << "optimal radius " << ccs::to_string(res.radius) << "\n";
            print_solution_text(*inst, res.witness);
        }
        return kExitOk;
    } catch (const ccs::SolveError& e) {
        return error_exit(e);
    }
}

int cmd_verify(const std::string& path, const std::string& sol_path, bool as_json) {
    int rc = 0;
    auto inst = load_checked(path, &rc);
    if (!inst) return rc;
    std::string text = read_file(sol_path, &rc);
    if (rc) return rc;
    ccs::ParseError err;
    auto sol = ccs::parse_solution(*inst, text, &err);
    if (!sol) return parse_exit(err, sol_path);

    auto rep = ccs::check_feasible(*inst, *sol);
    if (as_json) {
        json doc;
        doc["ok"] = rep.ok;
        json vio = json::array();
        for (const auto& v : rep.violations) vio.push_back({{"code", v.code}, {"detail", v.detail}});
        doc["violations"] = vio;
        std::cout << doc.dump(2) << "\n";
    } else if (rep.ok) {
        std::cout << "ok: feasible, radius " << ccs::to_string(solution_radius(*inst, *sol))
                  << ", served " << sol->assignment.size() << "\n";
    } else {
        std::cout << "infeasible:\n";
        for (const auto& v : rep.violations)
            std::cout << "  " << v.code << ": " << v.detail << "\n";
    }
    return rep.ok ? kExitOk : kExitInfeasible;
}

int cmd_lp(const std::string& path, const std::string& r_str, const std::string& dump_path,
           bool as_json) {
    int rc = 0;
    auto inst = load_checked(path, &rc);
    if (!inst) return rc;
    auto r = ccs::parse_rational(r_str);
    if (!r || *r < 0) {
        std::cerr << "bad radius " << r_str << "\n";
        return kExitUsage;
    }
    ccs::LpRelaxation lp = ccs::build_lp_r(*inst, *r);
    if (!dump_path.empty()) {
        std::ofstream out(dump_path);
        out << ccs::dump_lp(lp);
    }
    auto pt = ccs::solve_feasibility(lp);
    if (pt) {
        auto rep = ccs::lp_point_feasible(lp, *pt);
        if (!rep.ok) {
            std::cerr << "internal error: solver point failed the exact recheck\n";
            return 1;
        }
    }
    if (as_json) {
        json doc;
        doc["r"] = ccs::to_string(*r);
        doc["feasible"] = pt.has_value();
        if (pt) {
            json ys = json::object();
            for (std::size_t fi = 0; fi < lp.facilities.size(); ++fi)
                ys[std::to_string(lp.facilities[fi])] = ccs::to_string(pt->y[fi]);
            doc["y"] = ys;
            json xs = json::array();
            for (std::size_t e = 0; e < lp.pairs.size(); ++e)
                if (pt->x[e] != 0)
                    xs.push_back({{"facility", lp.facilities[lp.pairs[e].first]},
                                  {"client", lp.clients[lp.pairs[e].second]},
                                  {"x", ccs::to_string(pt->x[e])}});
            doc["x"] = xs;
        }
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << "relaxation at r = " << ccs::to_string(*r) << ": "
                  << (pt ? "feasible" : "infeasible") << "\n";
        if (pt)
            for (std::size_t fi = 0; fi < lp.facilities.size(); ++fi)
                if (pt->y[fi] != 0)
                    std::cout << "  y_" << lp.facilities[fi] << " = "
                              << ccs::to_string(pt->y[fi]) << "\n";
    }
    return pt ? kExitOk : kExitInfeasible;
}

int cmd_transfer(const std::string& path, const std::string& y_path, const std::string& yp_path,
                 const std::string& r_str, const std::string& mode_name,
                 const std::string& local_side, bool as_json) {
    int rc = 0;
    auto inst = load_checked(path, &rc);
    if (!inst) return rc;
    auto r = ccs::parse_rational(r_str);
    if (!r || *r < 0) {
        std::cerr << "bad radius " << r_str << "\n";
        return kExitUsage;
    }
    ccs::ParseError err;
    std::string ytext = read_file(y_path, &rc);
    if (rc) return rc;
    auto y = ccs::parse_vector(ytext, &err);
    if (!y) return parse_exit(err, y_path);
    std::string yptext = read_file(yp_path, &rc);
    if (rc) return rc;
    auto yp = ccs::parse_vector(yptext, &err);
    if (!yp) return parse_exit(err, yp_path);

    ccs::TransferCheckMode mode = ccs::TransferCheckMode::Flow;
    if (mode_name == "exhaustive") mode = ccs::TransferCheckMode::Exhaustive;
    else if (mode_name != "flow") {
        std::cerr << "mode must be flow or exhaustive\n";
        return kExitUsage;
    }

    ccs::TransferSpace sp = ccs::TransferSpace::from_instance(*inst);
    std::map<ccs::Id, long> lower, upper;
    for (ccs::Id u : inst->facilities) {
        lower[u] = inst->lower_bound;
        upper[u] = inst->upper(u);
    }
    try {
        bool valid = ccs::verify_transfer(sp, *y, *yp, lower, upper, *r, mode);
        json doc;
        doc["r"] = ccs::to_string(*r);
        doc["valid-transfer"] = valid;
        if (!local_side.empty()) {
            ccs::UniformSide side;
            if (local_side == "L-uniform") side = ccs::UniformSide::LowerUniform;
            else if (local_side == "U-uniform") side = ccs::UniformSide::UpperUniform;
            else {
                std::cerr << "local side must be L-uniform or U-uniform\n";
                return kExitUsage;
            }
            auto local = ccs::verify_local_transfer(sp, *y, *yp, lower, upper, *r, side);
            doc["witness-found"] = local.witness.has_value();
            doc["certified-local"] = local.certified;
            if (local.witness) {
                json g = json::array();
                for (const auto& [uw, q] : *local.witness)
                    g.push_back({{"from", uw.first}, {"to", uw.second},
                                 {"amount", ccs::to_string(q)}});
                doc["witness"] = g;
            }
        }
        if (as_json) {
            std::cout << doc.dump(2) << "\n";
        } else {
            std::cout << (valid ? "valid transfer" : "not a valid transfer") << " at r = "
                      << ccs::to_string(*r) << "\n";
            if (doc.contains("witness-found"))
                std::cout << "local witness " << (doc["witness-found"].get<bool>() ? "found" : "absent")
                          << ", certified " << (doc["certified-local"].get<bool>() ? "yes" : "no")
                          << "\n";
        }
        return kExitOk;
    } catch (const ccs::SolveError& e) {
        return error_exit(e);
    }
}

int cmd_gen(const ccs::GenSpec& spec, const std::string& out_path) {
    try {
        ccs::Instance inst = ccs::generate_instance(spec);
        std::string text = ccs::print_instance(inst);
        if (out_path.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(out_path);
            out << text;
        }
        return kExitOk;
    } catch (const ccs::SolveError& e) {
        return error_exit(e);
    }
}

int cmd_bench(const std::string& variants_arg, int count, std::uint64_t seed, int fmax, int cmax,
              bool timing, const std::string& plot_path, bool as_json) {
    std::vector<ccs::Variant> variants;
    if (variants_arg == "all") {
        variants = {ccs::Variant::SoftUniform, ccs::Variant::HardUniformCenter,
                    ccs::Variant::HardNonuniformCenter, ccs::Variant::SoftNonuniformSupplier};
    } else {
        std::stringstream ss(variants_arg);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            auto v = ccs::variant_from_name(tok);
            if (!v) {
                std::cerr << "unknown variant " << tok << "\n";
                return kExitUsage;
            }
            variants.push_back(*v);
        }
    }

    std::ofstream plot;
    if (!plot_path.empty()) {
        plot.open(plot_path);
        plot << "variant\tseed\topt\talg\tratio\n";
    }

    json table = json::array();
    bool all_pass = true;
    for (std::size_t vi = 0; vi < variants.size(); ++vi) {
        ccs::Variant var = variants[vi];
        ccs::Rational max_ratio(0);
        long zero_opt = 0;
        bool pass = true;
        auto t0 = std::chrono::steady_clock::now();
        for (int i = 0; i < count; ++i) {
            std::uint64_t s = seed + 1000003ull * static_cast<std::uint64_t>(vi) +
                              static_cast<std::uint64_t>(i);
            ccs::Instance inst = ccs::random_suite_instance(s, var, fmax, cmax);
            ccs::OracleResult opt = ccs::exact_solve(inst);
            ccs::GuessedSolution alg = ccs::solve_variant(inst, var);
            auto rep = ccs::check_feasible(inst, alg.solution);
            if (!rep.ok) pass = false;
            ccs::Rational ratio(0);
            if (opt.radius == 0) {
                ++zero_opt;
                if (alg.solution.radius != 0) pass = false;
            } else {
                ratio = alg.solution.radius / opt.radius;
                if (ratio > max_ratio) max_ratio = ratio;
            }
            if (alg.solution.radius > ccs::Rational(ccs::variant_ratio(var)) * opt.radius)
                pass = false;
            if (plot.is_open())
                plot << ccs::variant_name(var) << "\t" << s << "\t"
                     << ccs::to_string(opt.radius) << "\t" << ccs::to_string(alg.solution.radius)
                     << "\t" << ccs::to_string(ratio) << "\n";
        }
        auto t1 = std::chrono::steady_clock::now();
        if (timing)
            std::cerr << ccs::variant_name(var) << ": "
                      << std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count()
                      << " ms\n";
        all_pass = all_pass && pass;
        table.push_back({{"variant", ccs::variant_name(var)},
                         {"instances", count},
                         {"max-ratio", ccs::to_string(max_ratio)},
                         {"zero-opt-instances", zero_opt},
                         {"bound", ccs::variant_ratio(var)},
                         {"pass", pass}});
    }

    if (as_json) {
        std::cout << table.dump(2) << "\n";
    } else {
        std::cout << "variant                    n     max-ratio  bound  result\n";
        for (const auto& row : table) {
            char buf[128];
            std::snprintf(buf, sizeof(buf), "%-25s %4d  %10s  %5d  %s",
                          row["variant"].get<std::string>().c_str(),
                          row["instances"].get<int>(),
                          row["max-ratio"].get<std::string>().c_str(),
                          row["bound"].get<int>(),
                          row["pass"].get<bool>() ? "pass" : "FAIL");
            std::cout << buf << "\n";
        }
    }
    return all_pass ? kExitOk : kExitInfeasible;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"capacitated center/supplier solvers with lower and upper bounds"};
    app.require_subcommand(1);

    std::string path, variant, sol_path, r_str, dump_path, y_path, yp_path;
    std::string mode_name = "flow", local_side, out_path, plot_path;
    std::string variants_arg = "all";
    bool as_json = false, timing = false;
    int count = 20, fmax = 8, cmax = 12;
    std::uint64_t seed = 1;
    ccs::GenSpec spec;
    std::string gen_kind = "supplier", gen_mode = "soft";
    bool nonuniform = false;
    long kval = -1, pval = -1;

    auto* solve = app.add_subcommand("solve", "run an approximation pipeline on an instance");
    solve->add_option("path", path)->required();
    solve->add_option("--variant", variant,
                      "soft-uniform | hard-uniform-center | hard-nonuniform-center | "
                      "soft-nonuniform-supplier")
        ->required();
    solve->add_flag("--json", as_json);

    auto* oracle = app.add_subcommand("oracle", "exact optimum by exhaustive search");
    oracle->add_option("path", path)->required();
    oracle->add_flag("--json", as_json);

    auto* verify = app.add_subcommand("verify", "check a solution file against an instance");
    verify->add_option("path", path)->required();
    verify->add_option("solution", sol_path)->required();
    verify->add_flag("--json", as_json);

    auto* lp = app.add_subcommand("lp", "build and solve the distance-r relaxation");
    lp->add_option("path", path)->required();
    lp->add_option("--r", r_str)->required();
    lp->add_option("--dump", dump_path, "write the constraint system to a file");
    lp->add_flag("--json", as_json);

    auto* transfer = app.add_subcommand("transfer", "check a distance-r transfer");
    transfer->add_option("path", path)->required();
    transfer->add_option("--y", y_path)->required();
    transfer->add_option("--yprime", yp_path)->required();
    transfer->add_option("--r", r_str)->required();
    transfer->add_option("--mode", mode_name, "flow | exhaustive");
    transfer->add_option("--local", local_side, "also search a witness: L-uniform | U-uniform");
    transfer->add_flag("--json", as_json);

    auto* gen = app.add_subcommand("gen", "emit a seeded random instance");
    gen->add_option("--seed", spec.seed);
    gen->add_option("--family", spec.family, "grid | graph");
    gen->add_option("--kind", gen_kind, "center | supplier");
    gen->add_option("--mode", gen_mode, "soft | hard");
    gen->add_flag("--nonuniform", nonuniform, "draw per-facility upper bounds");
    gen->add_option("--facilities", spec.num_facilities);
    gen->add_option("--clients", spec.num_clients);
    gen->add_option("--k", kval, "open exactly k centers");
    gen->add_option("--p", pval, "coverage target (default: random achievable)");
    gen->add_option("--out", out_path, "output file (default stdout)");

    auto* bench = app.add_subcommand("bench", "ratio suite against the oracle");
    bench->add_option("--variants", variants_arg, "all or comma-separated names");
    bench->add_option("--count", count);
    bench->add_option("--seed", seed);
    bench->add_option("--max-facilities", fmax);
    bench->add_option("--max-clients", cmax);
    bench->add_flag("--timing", timing, "wall-clock per variant on stderr");
    bench->add_option("--plot-data", plot_path, "per-instance data as tab-separated text");
    bench->add_flag("--json", as_json);

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return cmd_solve(path, variant, as_json);
        if (oracle->parsed()) return cmd_oracle(path, as_json);
        if (verify->parsed()) return cmd_verify(path, sol_path, as_json);
        if (lp->parsed()) return cmd_lp(path, r_str, dump_path, as_json);
        if (transfer->parsed())
            return cmd_transfer(path, y_path, yp_path, r_str, mode_name, local_side, as_json);
        if (gen->parsed()) {
            spec.kind = gen_kind == "center" ? ccs::ProblemKind::Center
                                             : ccs::ProblemKind::Supplier;
            spec.mode = gen_mode == "hard" ? ccs::CapacityMode::Hard : ccs::CapacityMode::Soft;
            spec.uniform_upper = !nonuniform;
            if (kval >= 0) spec.k = kval;
            if (pval >= 0) spec.p = pval;
            return cmd_gen(spec, out_path);
        }
        if (bench->parsed())
            return cmd_bench(variants_arg, count, seed, fmax, cmax, timing, plot_path, as_json);
    } catch (const ccs::SolveError& e) {
        return error_exit(e);
    }
    return kExitUsage;
}
