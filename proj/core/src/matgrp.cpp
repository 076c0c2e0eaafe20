#include "ffgrowth/matgrp.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "ffgrowth/setalg.hpp"

namespace ffgrowth {

namespace {

void require_prime_ctx(const FieldCtx& ctx) {
    if (ctx.n() != 1) {
        throw std::invalid_argument("matrix group ops need a prime field");
    }
    if (ctx.p() >= (u64(1) << 16)) {
        throw std::invalid_argument("p too large for 4-tuple matrix keys");
    }
}

void require_zero_free(const FSet& A) {
    if (A.contains(0)) {
        throw std::invalid_argument("0 in A: the (t, alpha, beta) "
                                    "parametrization divides by a11 and b11");
    }
}

} // namespace

MatSL2 make_sl2(const FieldCtx& ctx, Elem a11, Elem a12, Elem a21, Elem a22) {
    Elem det = ctx.sub(ctx.mul(a11, a22), ctx.mul(a12, a21));
    if (det != 1) throw std::invalid_argument("determinant is not 1");
    return MatSL2{a11, a12, a21, a22};
}

MatSL2 sl2_identity() { return MatSL2{1, 0, 0, 1}; }

MatSL2 mat_mul(const FieldCtx& ctx, const MatSL2& m1, const MatSL2& m2) {
    return make_sl2(
        ctx,
        ctx.add(ctx.mul(m1.a11, m2.a11), ctx.mul(m1.a12, m2.a21)),
        ctx.add(ctx.mul(m1.a11, m2.a12), ctx.mul(m1.a12, m2.a22)),
        ctx.add(ctx.mul(m1.a21, m2.a11), ctx.mul(m1.a22, m2.a21)),
        ctx.add(ctx.mul(m1.a21, m2.a12), ctx.mul(m1.a22, m2.a22)));
}

MatSL2 mat_inverse(const FieldCtx& ctx, const MatSL2& m) {
    return make_sl2(ctx, m.a22, ctx.neg(m.a12), ctx.neg(m.a21), m.a11);
}

MatSet::MatSet(const FieldCtx& ctx, std::vector<u64> keys)
    : ctx_(ctx), keys_(std::move(keys)) {
    require_prime_ctx(ctx_);
    std::sort(keys_.begin(), keys_.end());
    keys_.erase(std::unique(keys_.begin(), keys_.end()), keys_.end());
}

u64 MatSet::key_of(const FieldCtx& ctx, const MatSL2& m) {
    const u64 p = ctx.p();
    return ((m.a11 * p + m.a12) * p + m.a21) * p + m.a22;
}

MatSL2 MatSet::mat_of(const FieldCtx& ctx, u64 key) {
    const u64 p = ctx.p();
    Elem a22 = key % p;
    key /= p;
    Elem a21 = key % p;
    key /= p;
    Elem a12 = key % p;
    key /= p;
    return make_sl2(ctx, key, a12, a21, a22);
}

bool MatSet::contains(const MatSL2& m) const {
    return std::binary_search(keys_.begin(), keys_.end(), key_of(ctx_, m));
}

MatSet build_R(const FSet& A) {
    const FieldCtx& ctx = A.ctx();
    require_prime_ctx(ctx);
    const u64 p = ctx.p();

    std::vector<u64> keys;
    for (Elem a11 : A) {
        if (a11 != 0) {
            Elem inv11 = ctx.inv(a11);
            for (Elem a12 : A) {
                for (Elem a21 : A) {
                    Elem a22 = ctx.mul(ctx.add(1, ctx.mul(a12, a21)), inv11);
                    keys.push_back(((a11 * p + a12) * p + a21) * p + a22);
                }
            }
        } else {
            Elem minus_one = ctx.neg(1);
            for (Elem a12 : A) {
                for (Elem a21 : A) {
                    if (ctx.mul(a12, a21) != minus_one) continue;
                    for (Elem a22 = 0; a22 < p; ++a22) {
                        keys.push_back(((a12)*p + a21) * p + a22);
                    }
                }
            }
        }
    }
    return MatSet(ctx, std::move(keys));
}

MatSet product_set(const MatSet& S1, const MatSet& S2, u64 pair_budget) {
    if (S1.ctx() != S2.ctx()) {
        throw std::invalid_argument("matrix sets live in different fields");
    }
    const FieldCtx& ctx = S1.ctx();
    u128 pairs = checked_mul(static_cast<u128>(S1.size()), S2.size());
    if (pairs > pair_budget) {
        throw budget_error("matrix product pair count exceeds budget");
    }
    std::vector<u64> keys;
    keys.reserve(static_cast<size_t>(pairs));
    for (size_t i = 0; i < S1.size(); ++i) {
        MatSL2 m1 = S1.at(i);
        for (size_t j = 0; j < S2.size(); ++j) {
            keys.push_back(MatSet::key_of(ctx, mat_mul(ctx, m1, S2.at(j))));
        }
    }
    return MatSet(ctx, std::move(keys));
}

NuStats nu_statistics(const FSet& A) {
    const FieldCtx& ctx = A.ctx();
    require_prime_ctx(ctx);
    require_zero_free(A);
    const u64 p = ctx.p();
    const std::vector<Elem>& as = A.elements();

    std::vector<Elem> inv(as.size());
    for (size_t i = 0; i < as.size(); ++i) inv[i] = ctx.inv(as[i]);

    // Dense nu buckets while p^3 stays small, hashed above that.
    const u64 key_space = p * p * p;
    const bool dense = key_space <= (u64(1) << 24);
    std::vector<u64> dense_nu;
    if (dense) dense_nu.assign(key_space, 0);
    std::unordered_map<u64, u64> sparse_nu;

    std::unordered_set<u64> zero_products;
    u64 zero_total = 0;

    for (size_t i11 = 0; i11 < as.size(); ++i11) {
        Elem a11 = as[i11], inv_a11 = inv[i11];
        for (size_t j11 = 0; j11 < as.size(); ++j11) {
            Elem b11 = as[j11], inv_b11 = inv[j11];
            Elem t0 = ctx.mul(a11, b11);
            for (Elem a12 : as) {
                for (Elem b21 : as) {
                    Elem t = ctx.add(t0, ctx.mul(a12, b21));
                    if (t == 0) {
                        // No (t, alpha, beta) bucket: record the actual
                        // products so distinct-count cross-checks still work.
                        zero_total += A.size() * A.size();
                        for (Elem b12 : as) {
                            for (Elem a21 : as) {
                                Elem ia22 = ctx.mul(ctx.add(1, ctx.mul(a12, a21)), inv_a11);
                                Elem ib22 = ctx.mul(ctx.add(1, ctx.mul(b12, b21)), inv_b11);
                                MatSL2 m1{a11, a12, a21, ia22};
                                MatSL2 m2{b11, b12, b21, ib22};
                                MatSL2 prod = mat_mul(ctx, m1, m2);
                                zero_products.insert(MatSet::key_of(ctx, prod));
                            }
                        }
                        continue;
                    }
                    for (Elem b12 : as) {
                        Elem alpha = ctx.mul(ctx.add(ctx.mul(b12, t), a12), inv_b11);
                        u64 base = (t * p + alpha) * p;
                        for (Elem a21 : as) {
                            Elem beta = ctx.mul(ctx.add(ctx.mul(a21, t), b21), inv_a11);
                            u64 key = base + beta;
                            if (dense) ++dense_nu[key];
                            else ++sparse_nu[key];
                        }
                    }
                }
            }
        }
    }

    NuStats st;
    st.zero_t_total = zero_total;
    st.zero_t_distinct_products = zero_products.size();
    if (dense) {
        for (u64 key = 0; key < key_space; ++key) {
            if (dense_nu[key]) st.nu.emplace_back(key, dense_nu[key]);
        }
    } else {
        st.nu.assign(sparse_nu.begin(), sparse_nu.end());
        std::sort(st.nu.begin(), st.nu.end());
    }

    Elem cur_t = 0;
    u128 cur_omega = 0;
    for (const auto& [key, count] : st.nu) {
        Elem t = static_cast<Elem>(key / (p * p));
        if (t != cur_t) {
            if (cur_omega > 0) st.omega.emplace_back(cur_t, cur_omega);
            cur_t = t;
            cur_omega = 0;
        }
        cur_omega = checked_add(cur_omega, checked_mul(count, count));
        st.T = checked_add(st.T, checked_mul(count, count));
        st.sum_nu_nonzero_t += count;
    }
    if (cur_omega > 0) st.omega.emplace_back(cur_t, cur_omega);
    return st;
}

SL2CsCertificate cs_lower_bound_certificate(const FSet& A) {
    NuStats st = nu_statistics(A);
    SL2CsCertificate cert;
    cert.lhs = st.distinct_nonzero_t();
    cert.sum_nu = st.sum_nu_nonzero_t;
    cert.T = st.T;
    cert.rhs.num = checked_mul(cert.sum_nu, cert.sum_nu);
    cert.rhs.den = st.T == 0 ? 1 : st.T;
    cert.ok = checked_mul(static_cast<u128>(cert.lhs), cert.T) >= cert.rhs.num;
    return cert;
}

SL2ContainmentCertificate containment_certificate(const FSet& A) {
    NuStats st = nu_statistics(A);
    SL2ContainmentCertificate cert;
    cert.lhs = st.distinct_nonzero_t() + st.zero_t_distinct_products;

    FSet AA = product_set(A, A);
    FSet image = sumset(AA, AA);
    cert.image_nonzero = image.size() - (image.contains(0) ? 1 : 0);
    cert.rhs = checked_mul(static_cast<u128>(cert.image_nonzero),
                           checked_mul(static_cast<u128>(A.size()), A.size()));
    cert.ok = static_cast<u128>(cert.lhs) >= cert.rhs;
    return cert;
}

} // namespace ffgrowth
