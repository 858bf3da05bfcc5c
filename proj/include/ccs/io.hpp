#pragma once

#include <map>
#include <optional>
#include <string>

#include "ccs/instance.hpp"

namespace ccs {

struct ParseError {
    int line = 0, column = 0;  // 0 when unknown (semantic errors)
    std::string message;
};

// Instance files are versioned JSON documents; the README carries the
// grammar. Metric is either an explicit strict-lower-triangular rational
// table over the point order (facilities first, then new clients) or
// integer plane coordinates with exact ceiling-scaled Euclidean distances.
std::optional<Instance> parse_instance(const std::string& text, ParseError* err);
std::optional<Instance> load_instance(const std::string& path, ParseError* err);

// Canonical table form; parse(print(inst)) reproduces every field.
std::string print_instance(const Instance& inst);

std::optional<Solution> parse_solution(const Instance& inst, const std::string& text,
                                       ParseError* err);
std::string print_solution(const Instance& inst, const Solution& sol);

// facility id -> rational, e.g. {"0": "1/2", "3": 1}
std::optional<std::map<Id, Rational>> parse_vector(const std::string& text, ParseError* err);

}  // namespace ccs
