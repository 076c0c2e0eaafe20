#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ffgrowth/wide.hpp"

namespace ffgrowth {

// Canonical code of a field element. For F_{p^n} an element with coordinates
// (c_0, c_1, ..., c_{n-1}) in the power basis 1, x, ..., x^{n-1} is encoded
// as sum c_i * p^i, so the constant coefficient is the least significant
// base-p digit. For prime fields the code is the residue itself.
using Elem = u64;

struct SubfieldDescriptor {
    unsigned degree = 1;        // d with the subfield isomorphic to F_{p^d}
    u64 size = 0;               // p^d
    std::vector<Elem> elements; // sorted element codes
};

// Worst coset overlap of a set A: over every proper subfield F and every
// nonzero lambda, the pair maximizing |A intersect lambda*F| relative to
// sqrt(|F|). Violation is decided exactly via overlap^2 vs |F|.
struct SubfieldConditionReport {
    bool ok = true;           // every overlap satisfies overlap^2 <= |F|
    bool vacuous = false;     // prime field: no proper subfield to check
    unsigned worst_degree = 0;
    u64 worst_subfield_size = 0;
    Elem worst_lambda = 0;
    u64 worst_overlap = 0;
};

// Arithmetic context for F_{p^n}. Immutable after construction; cheap to
// copy (the modulus is at most n+1 words). All element-level operations
// take and return canonical codes.
class FieldCtx {
public:
    static constexpr u64 kDefaultCap = u64(1) << 20;

    // F_p for prime p.
    static FieldCtx make_prime(u64 p, u64 cap = kDefaultCap);

    // F_{p^n} using the lexicographically smallest monic irreducible of
    // degree n, where polynomials are compared coefficient-by-coefficient
    // starting from the constant term.
    static FieldCtx make(u64 p, unsigned n, u64 cap = kDefaultCap);

    // F_{p^n} with an explicit monic modulus, coefficients constant-first,
    // modulus.size() == n+1 and modulus.back() == 1. The polynomial must be
    // irreducible over F_p.
    static FieldCtx make_with_modulus(u64 p, std::vector<u64> modulus,
                                      u64 cap = kDefaultCap);

    u64 p() const { return p_; }
    unsigned n() const { return n_; }
    u64 q() const { return q_; }

    // Monic modulus, constant-first, length n+1. For n == 1 this is {0, 1},
    // i.e. the polynomial x.
    const std::vector<u64>& modulus() const { return modulus_; }
    std::string modulus_str() const;

    bool element_ok(Elem a) const { return a < q_; }

    Elem add(Elem a, Elem b) const;
    Elem sub(Elem a, Elem b) const;
    Elem neg(Elem a) const;
    Elem mul(Elem a, Elem b) const;
    Elem inv(Elem a) const; // throws std::domain_error on 0
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, u64 e) const;
    Elem frobenius(Elem a) const { return pow(a, p_); }

    // Image of an integer under the ring map Z -> F_{p^n}.
    Elem from_int(long long v) const;

    // Power-basis coordinates, constant-first, length n.
    std::vector<u64> coeffs(Elem a) const;
    Elem from_coeffs(const std::vector<u64>& c) const;

    bool operator==(const FieldCtx& o) const {
        return p_ == o.p_ && modulus_ == o.modulus_;
    }
    bool operator!=(const FieldCtx& o) const { return !(*this == o); }

private:
    FieldCtx() = default;

    u64 p_ = 0;
    unsigned n_ = 1;
    u64 q_ = 0;
    std::vector<u64> modulus_;
};

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
bool is_prime_u64(u64 m);

// Smallest element code that generates the multiplicative group F_q^*.
Elem primitive_root(const FieldCtx& ctx);

// One descriptor per divisor d of n (including d == n, the field itself),
// sorted by degree. The degree-d subfield is the fixed set of the d-th
// Frobenius power.
std::vector<SubfieldDescriptor> list_subfields(const FieldCtx& ctx);

// Smallest subfield containing every element of gens: the F_p-span of a
// multiplicatively closed basis grown from {1} and gens.
SubfieldDescriptor generated_subfield(const FieldCtx& ctx,
                                      const std::vector<Elem>& gens);

// Exhaustive scan over every proper subfield F (degree d < n) and every
// nonzero lambda of |A intersect lambda*F| against sqrt(|F|). For prime
// fields the condition is vacuous and ok = true.
SubfieldConditionReport check_subfield_condition(const FieldCtx& ctx,
                                                 const std::vector<Elem>& A);

} // namespace ffgrowth
