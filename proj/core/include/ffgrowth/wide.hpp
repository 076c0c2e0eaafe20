#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ffgrowth {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// All counting in this library is exact. Values that can exceed 64 bits
// (energies, certificate sides, products of set sizes) are carried as u128
// with overflow-checked arithmetic; anything larger is a hard error rather
// than a silently wrapped number.

inline u128 checked_add(u128 a, u128 b) {
    u128 r;
    if (__builtin_add_overflow(a, b, &r)) {
        throw std::overflow_error("128-bit addition overflow");
    }
    return r;
}

inline u128 checked_mul(u128 a, u128 b) {
    u128 r;
    if (__builtin_mul_overflow(a, b, &r)) {
        throw std::overflow_error("128-bit multiplication overflow");
    }
    return r;
}

// base^exp with overflow checking. 0^0 = 1.
inline u128 checked_pow(u128 base, unsigned exp) {
    u128 r = 1;
    while (exp > 0) {
        if (exp & 1u) r = checked_mul(r, base);
        exp >>= 1u;
        if (exp > 0) base = checked_mul(base, base);
    }
    return r;
}

inline std::string to_decimal(u128 v) {
    if (v == 0) return "0";
    char buf[40];
    int i = 40;
    while (v > 0) {
        buf[--i] = static_cast<char>('0' + static_cast<unsigned>(v % 10));
        v /= 10;
    }
    return std::string(buf + i, buf + 40);
}

inline u128 parse_decimal_u128(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty decimal string");
    u128 v = 0;
    for (char c : s) {
        if (c < '0' || c > '9') throw std::invalid_argument("bad decimal digit");
        v = checked_add(checked_mul(v, 10), static_cast<u128>(c - '0'));
    }
    return v;
}

// Nonnegative rational, kept exact. Used for certificate right-hand sides
// of the form numerator/denominator; comparisons against integers are done
// by cross-multiplication, never through floating point.
struct UFraction {
    u128 num = 0;
    u128 den = 1;

    // num/den <= v, decided exactly.
    bool leq(u128 v) const { return num <= checked_mul(v, den); }

    // num/den >= v, decided exactly.
    bool geq(u128 v) const { return num >= checked_mul(v, den); }

    double approx() const {
        return static_cast<double>(num) / static_cast<double>(den);
    }

    std::string str() const { return to_decimal(num) + "/" + to_decimal(den); }
};

} // namespace ffgrowth
