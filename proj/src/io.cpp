#include "ccs/io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace ccs {

using nlohmann::json;

namespace {

void offset_to_line_col(const std::string& text, std::size_t offset, ParseError* err) {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    err->line = line;
    err->column = col;
}

bool fail(ParseError* err, const std::string& msg) {
    if (err) {
        err->line = err->column = 0;
        err->message = msg;
    }
    return false;
}

std::optional<Rational> rational_field(const json& j) {
    if (j.is_number_integer()) return Rational(static_cast<long>(j.get<long long>()));
    if (j.is_string()) return parse_rational(j.get<std::string>());
    return std::nullopt;
}

Rational euclid_ceil(const std::vector<long>& a, const std::vector<long>& b, long denom) {
    BigInt s(0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        BigInt d = BigInt(a[i]) - BigInt(b[i]);
        s += d * d;
    }
    Rational q(ceil_sqrt(s * denom * denom), denom);
    q.canonicalize();
    return q;
}

}  // namespace

std::optional<Instance> parse_instance(const std::string& text, ParseError* err) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        if (err) {
            offset_to_line_col(text, e.byte > 0 ? e.byte - 1 : 0, err);
            err->message = e.what();
        }
        return std::nullopt;
    }

    auto bad = [&](const std::string& msg) -> std::optional<Instance> {
        fail(err, msg);
        return std::nullopt;
    };

    if (!doc.is_object()) return bad("top level must be an object");
    if (!doc.contains("version") || doc["version"] != 1) return bad("version must be 1");

    Instance inst;
    std::string kind = doc.value("kind", "");
    if (kind == "center")
        inst.kind = ProblemKind::Center;
    else if (kind == "supplier")
        inst.kind = ProblemKind::Supplier;
    else
        return bad("kind must be \"center\" or \"supplier\"");

    std::string mode = doc.value("mode", "");
    if (mode == "soft")
        inst.mode = CapacityMode::Soft;
    else if (mode == "hard")
        inst.mode = CapacityMode::Hard;
    else
        return bad("mode must be \"soft\" or \"hard\"");

    if (!doc.contains("L") || !doc["L"].is_number_integer()) return bad("L must be an integer");
    inst.lower_bound = doc["L"].get<long>();
    if (!doc.contains("p") || !doc["p"].is_number_integer()) return bad("p must be an integer");
    inst.coverage_target = doc["p"].get<long>();
    if (doc.contains("k")) {
        if (!doc["k"].is_number_integer()) return bad("k must be an integer when present");
        inst.open_count = doc["k"].get<long>();
    }

    if (!doc.contains("facilities") || !doc["facilities"].is_array())
        return bad("facilities must be an array");

    std::vector<Id> order;  // point order: facilities, then new clients
    std::set<Id> seen;
    std::map<Id, std::vector<long>> coords;
    auto read_coords = [&](const json& item, Id id) -> bool {
        if (!item.contains("coords")) return true;
        if (!item["coords"].is_array()) return false;
        std::vector<long> c;
        for (const auto& v : item["coords"]) {
            if (!v.is_number_integer()) return false;
            c.push_back(v.get<long>());
        }
        coords[id] = std::move(c);
        return true;
    };

    for (const auto& item : doc["facilities"]) {
        if (!item.is_object() || !item.contains("id") || !item["id"].is_number_integer())
            return bad("each facility needs an integer id");
        Id id = item["id"].get<Id>();
        if (!seen.insert(id).second) return bad("duplicate id " + std::to_string(id));
        if (!item.contains("U") || !item["U"].is_number_integer())
            return bad("facility " + std::to_string(id) + " needs an integer U");
        inst.facilities.push_back(id);
        inst.upper_bounds[id] = item["U"].get<long>();
        if (!read_coords(item, id))
            return bad("facility " + std::to_string(id) + " has malformed coords");
        order.push_back(id);
    }

    if (doc.contains("clients")) {
        if (!doc["clients"].is_array()) return bad("clients must be an array");
        for (const auto& item : doc["clients"]) {
            if (!item.is_object() || !item.contains("id") || !item["id"].is_number_integer())
                return bad("each client needs an integer id");
            Id id = item["id"].get<Id>();
            inst.clients.push_back(id);
            if (seen.insert(id).second) order.push_back(id);
            if (!read_coords(item, id))
                return bad("client " + std::to_string(id) + " has malformed coords");
        }
        std::set<Id> cs(inst.clients.begin(), inst.clients.end());
        if (cs.size() != inst.clients.size()) return bad("duplicate client id");
    } else if (inst.kind == ProblemKind::Center) {
        inst.clients = inst.facilities;  // center: clients default to the vertex set
    } else {
        return bad("supplier instances must list clients");
    }

    const int n = static_cast<int>(order.size());
    std::map<Id, int> pos;
    for (int i = 0; i < n; ++i) pos[order[i]] = i;

    if (!doc.contains("metric") || !doc["metric"].is_object())
        return bad("metric must be an object");
    const json& metric = doc["metric"];
    std::string mtype = metric.value("type", "");

    std::vector<std::vector<Rational>> table(n, std::vector<Rational>(n, Rational(0)));
    if (mtype == "table") {
        if (!metric.contains("lower") || !metric["lower"].is_array() ||
            static_cast<int>(metric["lower"].size()) != n - (n > 0 ? 1 : 0))
            return bad("metric.lower must have one row per point after the first");
        for (int i = 1; i < n; ++i) {
            const json& row = metric["lower"][i - 1];
            if (!row.is_array() || static_cast<int>(row.size()) != i)
                return bad("metric.lower row " + std::to_string(i - 1) + " must have " +
                           std::to_string(i) + " entries");
            for (int j = 0; j < i; ++j) {
                auto q = rational_field(row[j]);
                if (!q || *q < 0)
                    return bad("metric.lower[" + std::to_string(i - 1) + "][" +
                               std::to_string(j) + "] is not a non-negative rational");
                table[i][j] = table[j][i] = *q;
            }
        }
    } else if (mtype == "euclidean") {
        long denom = 1;
        if (metric.contains("denominator")) {
            if (!metric["denominator"].is_number_integer() ||
                metric["denominator"].get<long>() <= 0)
                return bad("metric.denominator must be a positive integer");
            denom = metric["denominator"].get<long>();
        }
        std::size_t dim = 0;
        for (Id id : order) {
            auto it = coords.find(id);
            if (it == coords.end())
                return bad("euclidean metric requires coords on every point (missing on " +
                           std::to_string(id) + ")");
            if (dim == 0) dim = it->second.size();
            if (it->second.size() != dim || dim == 0)
                return bad("all coords must share one nonzero dimension");
        }
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                table[i][j] = table[j][i] =
                    euclid_ceil(coords.at(order[i]), coords.at(order[j]), denom);
    } else {
        return bad("metric.type must be \"table\" or \"euclidean\"");
    }

    // reorder into sorted point order
    std::vector<Id> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    inst.points = sorted;
    inst.metric.assign(n, std::vector<Rational>(n, Rational(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            inst.metric[i][j] = table[pos.at(sorted[i])][pos.at(sorted[j])];

    std::sort(inst.facilities.begin(), inst.facilities.end());
    std::sort(inst.clients.begin(), inst.clients.end());
    return inst;
}

std::optional<Instance> load_instance(const std::string& path, ParseError* err) {
    std::ifstream in(path);
    if (!in) {
        fail(err, "cannot open " + path);
        return std::nullopt;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_instance(ss.str(), err);
}

std::string print_instance(const Instance& inst) {
    json doc;
    doc["version"] = 1;
    doc["kind"] = inst.kind == ProblemKind::Center ? "center" : "supplier";
    doc["mode"] = inst.mode == CapacityMode::Soft ? "soft" : "hard";
    doc["L"] = inst.lower_bound;
    doc["p"] = inst.coverage_target;
    if (inst.open_count) doc["k"] = *inst.open_count;

    json facs = json::array();
    for (Id u : inst.facilities) facs.push_back({{"id", u}, {"U", inst.upper(u)}});
    doc["facilities"] = facs;
    json clis = json::array();
    for (Id v : inst.clients) clis.push_back({{"id", v}});
    doc["clients"] = clis;

    // point order: facilities ascending, then clients not already among them
    std::vector<Id> order = inst.facilities;
    for (Id v : inst.clients)
        if (!inst.is_facility(v)) order.push_back(v);
    json lower = json::array();
    for (std::size_t i = 1; i < order.size(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < i; ++j)
            row.push_back(to_string(inst.dist(order[i], order[j])));
        lower.push_back(row);
    }
    doc["metric"] = {{"type", "table"}, {"lower", lower}};
    return doc.dump(2) + "\n";
}

std::optional<Solution> parse_solution(const Instance& inst, const std::string& text,
                                       ParseError* err) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        if (err) {
            offset_to_line_col(text, e.byte > 0 ? e.byte - 1 : 0, err);
            err->message = e.what();
        }
        return std::nullopt;
    }
    auto bad = [&](const std::string& msg) -> std::optional<Solution> {
        fail(err, msg);
        return std::nullopt;
    };
    // accept both the bare solution object and the wrapper solve --json emits
    if (doc.is_object() && doc.contains("solution") && doc["solution"].is_object())
        doc = doc["solution"];
    if (!doc.is_object() || !doc.contains("open") || !doc["open"].is_array())
        return bad("solution needs an open array");

    Solution sol;
    std::map<std::pair<Id, int>, int> slot_of;
    for (const auto& item : doc["open"]) {
        if (!item.is_object() || !item.contains("facility")) return bad("malformed open entry");
        Id f = item["facility"].get<Id>();
        int copy = item.value("copy", 0);
        slot_of[{f, copy}] = static_cast<int>(sol.open.size());
        sol.open.push_back({f, copy});
    }
    if (doc.contains("assignment")) {
        if (!doc["assignment"].is_array()) return bad("assignment must be an array");
        for (const auto& item : doc["assignment"]) {
            if (!item.is_object() || !item.contains("client") || !item.contains("facility"))
                return bad("malformed assignment entry");
            Id v = item["client"].get<Id>();
            Id f = item["facility"].get<Id>();
            int copy = item.value("copy", 0);
            auto it = slot_of.find({f, copy});
            if (it == slot_of.end())
                return bad("assignment targets a copy that is not open: " + std::to_string(f) +
                           "#" + std::to_string(copy));
            sol.assignment[v] = it->second;
        }
    }
    if (doc.contains("radius")) {
        auto q = rational_field(doc["radius"]);
        if (!q) return bad("radius must be a rational");
        sol.radius = *q;
    } else {
        sol.radius = solution_radius(inst, sol);
    }
    return sol;
}

std::string print_solution(const Instance& inst, const Solution& sol) {
    (void)inst;
    json doc;
    json open = json::array();
    for (const auto& c : sol.open)
        open.push_back({{"facility", c.facility}, {"copy", c.copy_index}});
    doc["open"] = open;
    json assign = json::array();
    for (const auto& [v, slot] : sol.assignment)
        assign.push_back({{"client", v},
                          {"facility", sol.open[slot].facility},
                          {"copy", sol.open[slot].copy_index}});
    doc["assignment"] = assign;
    doc["radius"] = to_string(sol.radius);
    doc["served"] = sol.assignment.size();
    return doc.dump(2) + "\n";
}

std::optional<std::map<Id, Rational>> parse_vector(const std::string& text, ParseError* err) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        if (err) {
            offset_to_line_col(text, e.byte > 0 ? e.byte - 1 : 0, err);
            err->message = e.what();
        }
        return std::nullopt;
    }
    if (!doc.is_object()) {
        fail(err, "vector file must be an object of id -> rational");
        return std::nullopt;
    }
    std::map<Id, Rational> out;
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        auto q = rational_field(it.value());
        char* end = nullptr;
        long id = std::strtol(it.key().c_str(), &end, 10);
        if (!q || *q < 0 || end == it.key().c_str() || *end != '\0') {
            fail(err, "bad vector entry for key " + it.key());
            return std::nullopt;
        }
        out[static_cast<Id>(id)] = *q;
    }
    return out;
}

}  // namespace ccs
