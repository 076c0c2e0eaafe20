#include "ffgrowth/setalg.hpp"

#include <algorithm>
#include <cmath>

namespace ffgrowth {

namespace {

// Collects results of a pairwise operation into a sorted duplicate-free
// vector. A byte mask over the field is used while it fits the dense cap;
// otherwise the pairs are materialized and sorted.
template <typename Op>
FSet collect_pairs(const FSet& A, const FSet& B, Op op, bool skip_zero_b) {
    require_same_field(A, B);
    const FieldCtx& ctx = A.ctx();
    std::vector<Elem> out;
    if (ctx.q() <= RepFunction::kDenseCap) {
        std::vector<std::uint8_t> seen(ctx.q(), 0);
        for (Elem a : A) {
            for (Elem b : B) {
                if (skip_zero_b && b == 0) continue;
                seen[op(a, b)] = 1;
            }
        }
        for (Elem e = 0; e < ctx.q(); ++e) {
            if (seen[e]) out.push_back(e);
        }
    } else {
        out.reserve(A.size() * B.size());
        for (Elem a : A) {
            for (Elem b : B) {
                if (skip_zero_b && b == 0) continue;
                out.push_back(op(a, b));
            }
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
    }
    return FSet(ctx, std::move(out));
}

} // namespace

FSet sumset(const FSet& A, const FSet& B) {
    const FieldCtx& ctx = A.ctx();
    return collect_pairs(A, B, [&](Elem a, Elem b) { return ctx.add(a, b); },
                         false);
}

FSet difference_set(const FSet& A, const FSet& B) {
    const FieldCtx& ctx = A.ctx();
    return collect_pairs(A, B, [&](Elem a, Elem b) { return ctx.sub(a, b); },
                         false);
}

FSet product_set(const FSet& A, const FSet& B) {
    const FieldCtx& ctx = A.ctx();
    return collect_pairs(A, B, [&](Elem a, Elem b) { return ctx.mul(a, b); },
                         false);
}

FSet quotient_set(const FSet& A, const FSet& B) {
    const FieldCtx& ctx = A.ctx();
    // Inverting inside the pair loop would redo the same inversions |A|
    // times over; precompute them instead.
    std::vector<Elem> binv;
    binv.reserve(B.size());
    for (Elem b : B) {
        if (b != 0) binv.push_back(ctx.inv(b));
    }
    FSet Binv(ctx, std::move(binv));
    return collect_pairs(A, Binv, [&](Elem a, Elem b) { return ctx.mul(a, b); },
                         false);
}

FSet dilate(const FSet& A, Elem lambda) {
    const FieldCtx& ctx = A.ctx();
    if (lambda == 0) throw std::invalid_argument("dilation by zero");
    std::vector<Elem> out;
    out.reserve(A.size());
    for (Elem a : A) out.push_back(ctx.mul(lambda, a));
    return FSet(ctx, std::move(out));
}

FSet translate(const FSet& A, Elem s) {
    const FieldCtx& ctx = A.ctx();
    std::vector<Elem> out;
    out.reserve(A.size());
    for (Elem a : A) out.push_back(ctx.add(a, s));
    return FSet(ctx, std::move(out));
}

FSet fiber_set(const FSet& A, Elem s) {
    const FieldCtx& ctx = A.ctx();
    std::vector<Elem> out;
    for (Elem a : A) {
        if (A.contains(ctx.sub(s, a))) out.push_back(a);
    }
    return FSet(ctx, std::move(out));
}

FSet ratio_set(const FSet& A, const FSet& B) {
    require_same_field(A, B);
    if (B.size() < 2) throw std::invalid_argument("ratio set needs |B| >= 2");
    FSet diffA = difference_set(A, A);
    FSet diffB = difference_set(B, B);
    return quotient_set(diffA, diffB);
}

RatioClosureReport ratio_closure_probe(const FSet& A, const FSet& B) {
    const FieldCtx& ctx = A.ctx();
    FSet R = ratio_set(A, B);
    RatioClosureReport rep;
    rep.case1 = true;
    for (Elem r : R) {
        if (!R.contains(ctx.add(1, r))) {
            rep.case1 = false;
            break;
        }
    }
    rep.case2 = true;
    for (Elem b : B) {
        for (Elem r : R) {
            if (!R.contains(ctx.mul(b, r))) {
                rep.case2 = false;
                break;
            }
        }
        if (!rep.case2) break;
    }
    rep.case3 = true;
    for (Elem b : B) {
        if (b == 0) continue;
        Elem bi = ctx.inv(b);
        for (Elem r : R) {
            if (!R.contains(ctx.mul(bi, r))) {
                rep.case3 = false;
                break;
            }
        }
        if (!rep.case3) break;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// RepFunction
// ---------------------------------------------------------------------------

RepFunction::RepFunction(const FieldCtx& ctx)
    : ctx_(ctx), dense_(ctx.q() <= kDenseCap) {
    if (dense_) counts_.assign(ctx_.q(), 0);
}

void RepFunction::bump(Elem x, u64 c) {
    if (!ctx_.element_ok(x)) throw std::invalid_argument("element out of range");
    if (dense_) counts_[x] += c;
    else sparse_[x] += c;
    total_ += c;
}

u64 RepFunction::at(Elem x) const {
    if (!ctx_.element_ok(x)) throw std::invalid_argument("element out of range");
    if (dense_) return counts_[x];
    auto it = sparse_.find(x);
    return it == sparse_.end() ? 0 : it->second;
}

std::vector<std::pair<Elem, u64>> RepFunction::support() const {
    std::vector<std::pair<Elem, u64>> out;
    if (dense_) {
        for (Elem x = 0; x < ctx_.q(); ++x) {
            if (counts_[x] > 0) out.emplace_back(x, counts_[x]);
        }
    } else {
        out.assign(sparse_.begin(), sparse_.end());
    }
    return out;
}

u128 RepFunction::sum_squares() const {
    u128 s = 0;
    if (dense_) {
        for (u64 c : counts_) {
            if (c) s = checked_add(s, checked_mul(c, c));
        }
    } else {
        for (const auto& [x, c] : sparse_) {
            s = checked_add(s, checked_mul(c, c));
        }
    }
    return s;
}

RepFunction rep_add(const FSet& A, const FSet& B) {
    require_same_field(A, B);
    RepFunction r(A.ctx());
    for (Elem a : A) {
        for (Elem b : B) r.bump(A.ctx().add(a, b));
    }
    return r;
}

RepFunction rep_sub(const FSet& A, const FSet& B) {
    require_same_field(A, B);
    RepFunction r(A.ctx());
    for (Elem a : A) {
        for (Elem b : B) r.bump(A.ctx().sub(a, b));
    }
    return r;
}

RepFunction rep_mul(const FSet& A, const FSet& B) {
    require_same_field(A, B);
    RepFunction r(A.ctx());
    for (Elem a : A) {
        for (Elem b : B) r.bump(A.ctx().mul(a, b));
    }
    return r;
}

// ---------------------------------------------------------------------------
// Energies
// ---------------------------------------------------------------------------

EnergyReport additive_energy(const FSet& A) {
    EnergyReport rep;
    rep.operand_sizes = {A.size()};
    rep.value = A.empty() ? 0 : rep_add(A, A).sum_squares();
    return rep;
}

EnergyReport mult_energy(const FSet& A, const FSet& B) {
    require_same_field(A, B);
    EnergyReport rep;
    rep.operand_sizes = {A.size(), B.size()};
    rep.value = (A.empty() || B.empty()) ? 0 : rep_mul(A, B).sum_squares();
    return rep;
}

namespace {

u128 q_by_convolution(const FSet& A, const FSet& B, const FSet& C,
                      const FSet& D) {
    const FieldCtx& ctx = A.ctx();
    auto r1 = rep_mul(A, B).support();
    auto r2 = rep_mul(C, D).support();
    // Pair counts stay within u64 as long as the full tuple count does.
    u128 tuples = checked_mul(checked_mul(static_cast<u128>(A.size()), B.size()),
                              checked_mul(static_cast<u128>(C.size()), D.size()));
    if (tuples >= (u128(1) << 63)) {
        throw budget_error("convolution count exceeds 63-bit accumulator");
    }

    RepFunction conv(ctx);
    for (const auto& [u, cu] : r1) {
        for (const auto& [v, cv] : r2) {
            conv.bump(ctx.add(u, v), cu * cv);
        }
    }
    return conv.sum_squares();
}

u128 q_by_brute_force(const FSet& A, const FSet& B, const FSet& C,
                      const FSet& D) {
    const FieldCtx& ctx = A.ctx();
    u128 tuples = checked_mul(checked_mul(static_cast<u128>(A.size()), B.size()),
                              checked_mul(static_cast<u128>(C.size()), D.size()));
    // The pair walk visits tuples^2 combinations; 10^8 of those is the cap.
    if (tuples > 10000) {
        throw budget_error("brute-force tuple-pair count exceeds 10^8");
    }
    std::vector<Elem> vals;
    vals.reserve(static_cast<size_t>(tuples));
    for (Elem a : A) {
        for (Elem b : B) {
            Elem ab = ctx.mul(a, b);
            for (Elem c : C) {
                for (Elem d : D) {
                    vals.push_back(ctx.add(ab, ctx.mul(c, d)));
                }
            }
        }
    }
    u128 q = 0;
    for (Elem v1 : vals) {
        for (Elem v2 : vals) {
            if (v1 == v2) ++q;
        }
    }
    return q;
}

} // namespace

EnergyReport bilinear_energy_Q(const FSet& A, const FSet& B, const FSet& C,
                               const FSet& D, EnergyMethod method) {
    require_same_field(A, B);
    require_same_field(A, C);
    require_same_field(A, D);
    EnergyReport rep;
    rep.method = method;
    rep.operand_sizes = {A.size(), B.size(), C.size(), D.size()};
    if (A.empty() || B.empty() || C.empty() || D.empty()) {
        rep.value = 0;
        return rep;
    }
    rep.value = method == EnergyMethod::convolution
                    ? q_by_convolution(A, B, C, D)
                    : q_by_brute_force(A, B, C, D);
    return rep;
}

EnergyReport lemma22_count(const FSet& A, EnergyMethod method) {
    EnergyReport rep = bilinear_energy_Q(A, A, A, A, method);
    rep.operand_sizes = {A.size()};
    return rep;
}

// ---------------------------------------------------------------------------
// Shifted intersections, iterated-sumset inequality
// ---------------------------------------------------------------------------

ShiftedIntersectionReport max_shifted_intersection(const FSet& A, const FSet& B) {
    require_same_field(A, B);
    if (A.empty() || B.empty()) {
        throw std::invalid_argument("shifted intersection needs nonempty sets");
    }
    ShiftedIntersectionReport rep;
    // |A intersect (B+x)| counts pairs with a-b = x, so the difference
    // representation function holds every shift at once.
    for (const auto& [x, c] : rep_sub(A, B).support()) {
        if (x == 0) continue;
        if (c > rep.max) {
            rep.max = c;
            rep.argmax = x;
        }
    }
    FSet AB = product_set(A, B);
    rep.lhs_pow4 = checked_mul(checked_pow(rep.max, 4),
                               checked_mul(static_cast<u128>(A.size()), A.size()));
    rep.rhs_pow4 = checked_pow(AB.size(), 5);
    double asz = static_cast<double>(A.size());
    double absz = static_cast<double>(AB.size());
    rep.rhs_ratio = static_cast<double>(rep.max) * std::sqrt(asz) /
                    std::pow(absz, 1.25);
    double p = static_cast<double>(A.ctx().p());
    rep.hyp_ratio = asz * asz * absz / (p * p);
    return rep;
}

PRReport pr_inequality_check(const FSet& X, const std::vector<FSet>& Bs) {
    if (X.empty()) throw std::invalid_argument("X must be nonempty");
    if (Bs.empty()) throw std::invalid_argument("need at least one summand");
    for (const auto& B : Bs) require_same_field(X, B);

    PRReport rep;
    FSet total = Bs[0];
    u128 num = 1;
    for (size_t i = 0; i < Bs.size(); ++i) {
        if (i > 0) total = sumset(total, Bs[i]);
        num = checked_mul(num, sumset(X, Bs[i]).size());
    }
    rep.sum_lhs = total.size();
    rep.sum_rhs.num = num;
    rep.sum_rhs.den = checked_pow(X.size(), static_cast<unsigned>(Bs.size() - 1));
    rep.sum_ok = rep.sum_rhs.geq(rep.sum_lhs);

    if (Bs.size() == 2) {
        rep.has_diff = true;
        rep.diff_lhs = difference_set(Bs[0], Bs[1]).size();
        rep.diff_rhs.num = checked_mul(
            static_cast<u128>(sumset(X, Bs[0]).size()), sumset(X, Bs[1]).size());
        rep.diff_rhs.den = X.size();
        rep.diff_ok = rep.diff_rhs.geq(rep.diff_lhs);
    }
    rep.ok = rep.sum_ok && rep.diff_ok;
    return rep;
}

} // namespace ffgrowth
