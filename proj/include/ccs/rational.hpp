#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace ccs {

// All correctness-bearing arithmetic is exact. Distances, radii and LP
// values are GMP rationals; counts and capacities are plain ints.
using Rational = mpq_class;
using BigInt = mpz_class;

inline std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// Accepts "3", "-3", "3/4". Returns nullopt on malformed input.
inline std::optional<Rational> parse_rational(const std::string& s) {
    if (s.empty()) return std::nullopt;
    auto bad = [&](const std::string& part) {
        if (part.empty()) return true;
        std::size_t i = (part[0] == '-' || part[0] == '+') ? 1 : 0;
        if (i == part.size()) return true;
        for (; i < part.size(); ++i)
            if (part[i] < '0' || part[i] > '9') return true;
        return false;
    };
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            if (bad(s)) return std::nullopt;
            return Rational(BigInt(s));
        }
        std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (bad(num) || bad(den)) return std::nullopt;
        BigInt d(den);
        if (d == 0) return std::nullopt;
        Rational q(BigInt(num), d);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
}

// Floor of a non-negative rational as long.
inline long floor_long(const Rational& q) {
    BigInt z = q.get_num() / q.get_den();
    if (q < 0 && z * q.get_den() != q.get_num()) z -= 1;
    return z.get_si();
}

// Smallest integer m >= 0 with m*m >= v (v >= 0).
inline BigInt ceil_sqrt(const BigInt& v) {
    BigInt r = sqrt(v);  // floor sqrt
    if (r * r < v) r += 1;
    return r;
}

}  // namespace ccs
