#pragma once

#include <utility>
#include <vector>

#include "ffgrowth/errors.hpp"
#include "ffgrowth/fset.hpp"
#include "ffgrowth/wide.hpp"

namespace ffgrowth {

// Determinant-one 2x2 matrix over a prime field. Construction goes through
// make_sl2 so the determinant is checked exactly once per source of values.
struct MatSL2 {
    Elem a11 = 1, a12 = 0, a21 = 0, a22 = 1;
    bool operator==(const MatSL2& o) const = default;
};

MatSL2 make_sl2(const FieldCtx& ctx, Elem a11, Elem a12, Elem a21, Elem a22);
MatSL2 sl2_identity();
MatSL2 mat_mul(const FieldCtx& ctx, const MatSL2& m1, const MatSL2& m2);
MatSL2 mat_inverse(const FieldCtx& ctx, const MatSL2& m);

// Duplicate-free matrix set, keyed by the base-p packing of the entry
// 4-tuple. Requires p < 2^16 so keys fit u64.
class MatSet {
public:
    MatSet(const FieldCtx& ctx, std::vector<u64> keys);

    static u64 key_of(const FieldCtx& ctx, const MatSL2& m);
    static MatSL2 mat_of(const FieldCtx& ctx, u64 key);

    const FieldCtx& ctx() const { return ctx_; }
    u64 size() const { return keys_.size(); }
    const std::vector<u64>& keys() const { return keys_; }
    bool contains(const MatSL2& m) const;
    MatSL2 at(size_t i) const { return mat_of(ctx_, keys_.at(i)); }

private:
    FieldCtx ctx_;
    std::vector<u64> keys_; // strictly sorted
};

// R(A): matrices with a11, a12, a21 drawn from A. For a11 != 0 the fourth
// entry is forced to (1 + a12*a21)/a11; when 0 lies in A, each pair with
// a12*a21 = -1 contributes p matrices with a22 free.
MatSet build_R(const FSet& A);

inline constexpr u64 kDefaultPairBudget = 200000000;

// Distinct pairwise products of two matrix sets. Walks |S1||S2| ordered
// pairs, guarded by the budget.
MatSet product_set(const MatSet& S1, const MatSet& S2,
                   u64 pair_budget = kDefaultPairBudget);

// Bucket statistics of the parametrization of products M1*M2 by
// (t, alpha, beta): t = a11*b11 + a12*b21, alpha = (b12*t + a12)/b11,
// beta = (a21*t + b21)/a11, with the fourth entry (1 + alpha*beta)/t
// forced for t != 0. Requires 0 not in A so the divisions are total.
struct NuStats {
    // (key, count) with key = (t*p + alpha)*p + beta, t != 0; sorted by key.
    std::vector<std::pair<u64, u64>> nu;
    u64 zero_t_total = 0;             // 6-tuples landing in the t = 0 bucket
    u64 zero_t_distinct_products = 0; // distinct full products among those
    u128 T = 0;                       // sum of nu^2 over t != 0
    std::vector<std::pair<Elem, u128>> omega; // per-t sum of nu^2, sorted by t
    u64 sum_nu_nonzero_t = 0;

    u64 distinct_nonzero_t() const { return nu.size(); }
};
NuStats nu_statistics(const FSet& A);

// Cauchy-Schwarz lower bound on the number of distinct products with
// t != 0: lhs * T >= (sum nu)^2, exact with constant 1.
struct SL2CsCertificate {
    u64 lhs = 0;     // distinct (t, alpha, beta) with t != 0
    u128 sum_nu = 0; // sum of nu over t != 0
    u128 T = 0;
    UFraction rhs;   // sum_nu^2 / T
    bool ok = false;
};
SL2CsCertificate cs_lower_bound_certificate(const FSet& A);

// |R(A)*R(A)| >= |(AA+AA) minus {0}| * |A|^2: for each nonzero t in AA+AA,
// distinct (b12, a21) pairs give distinct products, so the inequality holds
// with constant exactly 1.
struct SL2ContainmentCertificate {
    u64 lhs = 0;           // |R(A)*R(A)|, t = 0 products included
    u64 image_nonzero = 0; // |(AA+AA) minus {0}|
    u128 rhs = 0;          // image_nonzero * |A|^2
    bool ok = false;
};
SL2ContainmentCertificate containment_certificate(const FSet& A);

} // namespace ffgrowth
