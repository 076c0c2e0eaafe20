#include "ffgrowth/heis.hpp"

#include <algorithm>
#include <cmath>

#include "ffgrowth/setalg.hpp"

namespace ffgrowth {

namespace {

void require_same_shape(const HeisCube& K1, const HeisCube& K2) {
    if (K1.A.ctx() != K2.A.ctx()) {
        throw std::invalid_argument("cubes live in different fields");
    }
    if (K1.deg != K2.deg) {
        throw std::invalid_argument("cube degrees differ");
    }
}

u64 key_capacity_guard(const FieldCtx& ctx, unsigned deg) {
    u128 cap = 1;
    for (unsigned i = 0; i < 2 * deg + 1; ++i) {
        cap = checked_mul(cap, ctx.q());
        if (cap >= (u128(1) << 63)) {
            throw std::invalid_argument("q^(2*deg+1) too large for element keys");
        }
    }
    return static_cast<u64>(cap);
}

std::vector<HeisElem> enumerate_cube(const HeisCube& K) {
    std::vector<HeisElem> out;
    if (K.A.empty() || K.B.empty() || K.C.empty()) return out;
    const unsigned deg = K.deg;
    out.reserve(static_cast<size_t>(K.size()));

    std::vector<size_t> ix(deg, 0), iy(deg, 0);
    const auto& as = K.A.elements();
    const auto& bs = K.B.elements();
    HeisElem g;
    g.x.resize(deg);
    g.y.resize(deg);
    for (;;) {
        for (unsigned i = 0; i < deg; ++i) g.x[i] = as[ix[i]];
        for (;;) {
            for (unsigned i = 0; i < deg; ++i) g.y[i] = bs[iy[i]];
            for (Elem c : K.C) {
                g.z = c;
                out.push_back(g);
            }
            unsigned j = deg;
            while (j > 0 && ++iy[j - 1] == bs.size()) iy[--j] = 0;
            if (j == 0) break;
        }
        unsigned j = deg;
        while (j > 0 && ++ix[j - 1] == as.size()) ix[--j] = 0;
        if (j == 0) break;
    }
    return out;
}

// --- cell decomposition machinery -----------------------------------------

// Attainable z-values of one (u, v) cell coordinate: the product set of
// F(u) = A1 ∩ (u - A2) and G(v) = B2 ∩ (v - B1).
std::vector<std::vector<Elem>> cell_product_sets(const FieldCtx& ctx,
                                                 const FSet& A1, const FSet& A2,
                                                 const FSet& B1, const FSet& B2,
                                                 const std::vector<Elem>& U,
                                                 const std::vector<Elem>& V) {
    std::vector<std::vector<Elem>> fibF(U.size()), fibG(V.size());
    for (size_t i = 0; i < U.size(); ++i) {
        for (Elem a : A1) {
            if (A2.contains(ctx.sub(U[i], a))) fibF[i].push_back(a);
        }
    }
    for (size_t j = 0; j < V.size(); ++j) {
        for (Elem b : B2) {
            if (B1.contains(ctx.sub(V[j], b))) fibG[j].push_back(b);
        }
    }
    std::vector<std::vector<Elem>> cells;
    cells.reserve(U.size() * V.size());
    std::vector<std::uint8_t> seen(ctx.q(), 0);
    for (size_t i = 0; i < U.size(); ++i) {
        for (size_t j = 0; j < V.size(); ++j) {
            std::vector<Elem> prod;
            for (Elem a : fibF[i]) {
                for (Elem b : fibG[j]) {
                    Elem m = ctx.mul(a, b);
                    if (!seen[m]) {
                        seen[m] = 1;
                        prod.push_back(m);
                    }
                }
            }
            for (Elem m : prod) seen[m] = 0;
            std::sort(prod.begin(), prod.end());
            cells.push_back(std::move(prod));
        }
    }
    return cells;
}

// Prime-field path: z-value sets as p-bit vectors; adding a constant is a
// bit rotation, so composing a cell into an accumulator costs
// |cell| * words(p) word operations.
class PrimeBits {
public:
    PrimeBits(u64 p) : p_(static_cast<unsigned>(p)), words_((p_ + 63) / 64) {}

    unsigned words() const { return words_; }

    std::vector<u64> zero() const { return std::vector<u64>(words_, 0); }

    std::vector<u64> from_set(const std::vector<Elem>& es) const {
        std::vector<u64> b = zero();
        for (Elem e : es) b[e / 64] |= u64(1) << (e % 64);
        return b;
    }

    // dst |= rotate(src, a): bit j of src lands at (j + a) mod p.
    void or_rot(u64* dst, const u64* src, u64 a) const {
        if (a == 0) {
            for (unsigned i = 0; i < words_; ++i) dst[i] |= src[i];
            return;
        }
        or_shl(dst, src, static_cast<unsigned>(a));
        or_shr(dst, src, p_ - static_cast<unsigned>(a));
    }

    u64 popcount(const u64* v) const {
        u64 c = 0;
        for (unsigned i = 0; i < words_; ++i) c += __builtin_popcountll(v[i]);
        return c;
    }

private:
    void or_shl(u64* dst, const u64* src, unsigned k) const {
        unsigned wq = k / 64, r = k % 64;
        for (unsigned i = words_; i-- > 0;) {
            u64 v = 0;
            if (i >= wq) {
                v = src[i - wq] << r;
                if (r && i > wq) v |= src[i - wq - 1] >> (64 - r);
            }
            dst[i] |= v;
        }
        unsigned top = p_ % 64;
        if (top) dst[words_ - 1] &= (u64(1) << top) - 1;
    }

    void or_shr(u64* dst, const u64* src, unsigned k) const {
        unsigned wq = k / 64, r = k % 64;
        for (unsigned i = 0; i + wq < words_; ++i) {
            u64 v = src[i + wq] >> r;
            if (r && i + wq + 1 < words_) v |= src[i + wq + 1] << (64 - r);
            dst[i] |= v;
        }
    }

    unsigned p_;
    unsigned words_;
};

u128 cell_total_prime(const FieldCtx& ctx,
                      const std::vector<std::vector<Elem>>& cells,
                      const std::vector<Elem>& D, unsigned deg) {
    PrimeBits bits(ctx.p());
    std::vector<u64> bitD = bits.from_set(D);

    // First-level accumulators D + cell are shared across deeper levels.
    std::vector<std::vector<u64>> first;
    first.reserve(cells.size());
    for (const auto& cell : cells) {
        std::vector<u64> w = bits.zero();
        for (Elem e : cell) bits.or_rot(w.data(), bitD.data(), e);
        first.push_back(std::move(w));
    }

    u128 total = 0;
    std::vector<std::vector<u64>> scratch(deg, bits.zero());

    // Depth-first over the remaining deg-1 coordinates.
    auto rec = [&](auto&& self, unsigned level, const std::vector<u64>& acc) -> void {
        if (level == deg) {
            total = checked_add(total, bits.popcount(acc.data()));
            return;
        }
        for (const auto& cell : cells) {
            std::vector<u64>& next = scratch[level];
            std::fill(next.begin(), next.end(), 0);
            for (Elem e : cell) bits.or_rot(next.data(), acc.data(), e);
            self(self, level + 1, next);
        }
    };
    for (const auto& acc : first) rec(rec, 1, acc);
    return total;
}

u128 cell_total_generic(const FieldCtx& ctx,
                        const std::vector<std::vector<Elem>>& cells,
                        const std::vector<Elem>& D, unsigned deg) {
    std::vector<std::uint8_t> seen(ctx.q(), 0);
    u128 total = 0;

    auto rec = [&](auto&& self, unsigned level, const std::vector<Elem>& acc) -> void {
        if (level == deg) {
            total = checked_add(total, acc.size());
            return;
        }
        for (const auto& cell : cells) {
            std::vector<Elem> next;
            for (Elem w : acc) {
                for (Elem e : cell) {
                    Elem s = ctx.add(w, e);
                    if (!seen[s]) {
                        seen[s] = 1;
                        next.push_back(s);
                    }
                }
            }
            for (Elem s : next) seen[s] = 0;
            std::sort(next.begin(), next.end());
            self(self, level + 1, next);
        }
    };

    // First level: D + cell.
    for (const auto& cell : cells) {
        std::vector<Elem> w;
        for (Elem d : D) {
            for (Elem e : cell) {
                Elem s = ctx.add(d, e);
                if (!seen[s]) {
                    seen[s] = 1;
                    w.push_back(s);
                }
            }
        }
        for (Elem s : w) seen[s] = 0;
        std::sort(w.begin(), w.end());
        rec(rec, 1, w);
    }
    return total;
}

// Scratch for exact convolution over supports: value array plus epoch marks
// so clears cost nothing between cells.
struct ConvScratch {
    std::vector<u64> value;
    std::vector<std::uint32_t> epoch;
    std::vector<Elem> touched;
    std::uint32_t now = 0;

    explicit ConvScratch(u64 q) : value(q, 0), epoch(q, 0) {}

    void begin() {
        ++now;
        touched.clear();
    }

    void add(Elem s, u64 c) {
        if (epoch[s] != now) {
            epoch[s] = now;
            value[s] = 0;
            touched.push_back(s);
        }
        value[s] += c;
    }

    u128 sum_squares() const {
        u128 t = 0;
        for (Elem s : touched) {
            t = checked_add(t, checked_mul(value[s], value[s]));
        }
        return t;
    }
};

} // namespace

HeisElem heis_identity(unsigned deg) {
    HeisElem g;
    g.x.assign(deg, 0);
    g.y.assign(deg, 0);
    g.z = 0;
    return g;
}

HeisElem heis_mul(const FieldCtx& ctx, const HeisElem& g, const HeisElem& h) {
    if (g.deg() != h.deg() || g.y.size() != g.x.size() ||
        h.y.size() != h.x.size()) {
        throw std::invalid_argument("degree mismatch");
    }
    HeisElem r;
    r.x.resize(g.deg());
    r.y.resize(g.deg());
    r.z = ctx.add(g.z, h.z);
    for (unsigned i = 0; i < g.deg(); ++i) {
        r.x[i] = ctx.add(g.x[i], h.x[i]);
        r.y[i] = ctx.add(g.y[i], h.y[i]);
        r.z = ctx.add(r.z, ctx.mul(g.x[i], h.y[i]));
    }
    return r;
}

HeisElem heis_inverse(const FieldCtx& ctx, const HeisElem& g) {
    HeisElem r;
    r.x.resize(g.deg());
    r.y.resize(g.deg());
    r.z = ctx.neg(g.z);
    for (unsigned i = 0; i < g.deg(); ++i) {
        r.x[i] = ctx.neg(g.x[i]);
        r.y[i] = ctx.neg(g.y[i]);
        r.z = ctx.add(r.z, ctx.mul(g.x[i], g.y[i]));
    }
    return r;
}

HeisCube make_cube(const FSet& A, const FSet& B, const FSet& C, unsigned deg) {
    require_same_field(A, B);
    require_same_field(A, C);
    if (deg == 0) throw std::invalid_argument("cube degree must be >= 1");
    return HeisCube{A, B, C, deg};
}

HeisSet::HeisSet(const FieldCtx& ctx, unsigned deg, std::vector<u64> keys)
    : ctx_(ctx), deg_(deg), keys_(std::move(keys)) {
    key_capacity_guard(ctx_, deg_);
    std::sort(keys_.begin(), keys_.end());
    keys_.erase(std::unique(keys_.begin(), keys_.end()), keys_.end());
}

u64 HeisSet::key_of(const FieldCtx& ctx, const HeisElem& g) {
    u64 key = 0;
    for (Elem xi : g.x) key = key * ctx.q() + xi;
    for (Elem yi : g.y) key = key * ctx.q() + yi;
    return key * ctx.q() + g.z;
}

HeisElem HeisSet::elem_of(const FieldCtx& ctx, unsigned deg, u64 key) {
    HeisElem g;
    g.x.resize(deg);
    g.y.resize(deg);
    g.z = key % ctx.q();
    key /= ctx.q();
    for (unsigned i = deg; i-- > 0;) {
        g.y[i] = key % ctx.q();
        key /= ctx.q();
    }
    for (unsigned i = deg; i-- > 0;) {
        g.x[i] = key % ctx.q();
        key /= ctx.q();
    }
    return g;
}

bool HeisSet::contains(const HeisElem& g) const {
    return std::binary_search(keys_.begin(), keys_.end(), key_of(ctx_, g));
}

HeisSet cube_product_set(const HeisCube& K1, const HeisCube& K2,
                         u64 pair_budget) {
    require_same_shape(K1, K2);
    const FieldCtx& ctx = K1.A.ctx();
    key_capacity_guard(ctx, K1.deg);

    u128 pairs = checked_mul(K1.size(), K2.size());
    if (pairs > pair_budget) {
        throw budget_error("cube product pair count exceeds budget");
    }
    std::vector<HeisElem> left = enumerate_cube(K1);
    std::vector<HeisElem> right = enumerate_cube(K2);
    std::vector<u64> keys;
    keys.reserve(static_cast<size_t>(pairs));
    for (const HeisElem& g : left) {
        for (const HeisElem& h : right) {
            keys.push_back(HeisSet::key_of(ctx, heis_mul(ctx, g, h)));
        }
    }
    return HeisSet(ctx, K1.deg, std::move(keys));
}

u128 cube_product_size(const HeisCube& K1, const HeisCube& K2) {
    require_same_shape(K1, K2);
    const FieldCtx& ctx = K1.A.ctx();
    if (K1.size() == 0 || K2.size() == 0) return 0;

    FSet U = sumset(K1.A, K2.A);
    FSet V = sumset(K1.B, K2.B);
    FSet D = sumset(K1.C, K2.C);
    auto cells = cell_product_sets(ctx, K1.A, K2.A, K1.B, K2.B, U.elements(),
                                   V.elements());
    if (ctx.n() == 1) {
        return cell_total_prime(ctx, cells, D.elements(), K1.deg);
    }
    return cell_total_generic(ctx, cells, D.elements(), K1.deg);
}

CollisionReport collision_count_direct(const FSet& A, u64 tuple_budget) {
    const FieldCtx& ctx = A.ctx();
    const u64 q = ctx.q();
    if (checked_pow(q, 5) >= (u128(1) << 63)) {
        throw std::invalid_argument("q^5 too large for join keys");
    }
    u128 tuples = checked_pow(A.size(), 8);
    if (tuples > tuple_budget) {
        throw budget_error("direct collision count exceeds tuple budget");
    }

    CollisionReport rep;
    rep.method = CollisionReport::Method::direct;
    if (A.empty()) return rep;

    std::vector<u64> keys;
    keys.reserve(static_cast<size_t>(tuples));
    for (Elem x1 : A) {
        for (Elem t1 : A) {
            Elem c1 = ctx.mul(x1, t1);
            for (Elem x2 : A) {
                for (Elem t2 : A) {
                    Elem bil = ctx.add(c1, ctx.mul(x2, t2));
                    for (Elem z1 : A) {
                        u64 k1 = ctx.add(x1, z1);
                        for (Elem z2 : A) {
                            u64 k2 = k1 * q + ctx.add(x2, z2);
                            for (Elem y1 : A) {
                                u64 k3 = k2 * q + ctx.add(y1, t1);
                                for (Elem y2 : A) {
                                    u64 key = (k3 * q + ctx.add(y2, t2)) * q + bil;
                                    keys.push_back(key);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    std::sort(keys.begin(), keys.end());
    for (size_t i = 0; i < keys.size();) {
        size_t j = i;
        while (j < keys.size() && keys[j] == keys[i]) ++j;
        u128 m = j - i;
        rep.N = checked_add(rep.N, checked_mul(m, m));
        i = j;
    }
    return rep;
}

CollisionReport collision_count_fiber(const FSet& A) {
    const FieldCtx& ctx = A.ctx();
    if (ctx.q() > RepFunction::kDenseCap) {
        throw std::invalid_argument("field too large for dense convolution");
    }
    CollisionReport rep;
    rep.method = CollisionReport::Method::fiber_decomposition;
    if (A.empty()) return rep;

    FSet S = sumset(A, A);
    const auto& ss = S.elements();
    const size_t m = ss.size();

    std::vector<FSet> fibers;
    fibers.reserve(m);
    for (Elem s : ss) fibers.push_back(fiber_set(A, s));

    // Supports of r_{A_i * A_j} for every ordered fiber pair; the quadruple
    // sum is then a sum over ordered pairs of these supports.
    std::vector<std::vector<std::pair<Elem, u64>>> reps(m * m);
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = 0; j < m; ++j) {
            reps[i * m + j] = rep_mul(fibers[i], fibers[j]).support();
        }
    }

    ConvScratch scratch(ctx.q());
    for (size_t a = 0; a < reps.size(); ++a) {
        for (size_t b = a; b < reps.size(); ++b) {
            scratch.begin();
            for (const auto& [u, cu] : reps[a]) {
                for (const auto& [v, cv] : reps[b]) {
                    scratch.add(ctx.add(u, v), cu * cv);
                }
            }
            u128 qq = scratch.sum_squares();
            rep.N = checked_add(rep.N, a == b ? qq : checked_mul(2, qq));
        }
    }
    return rep;
}

HeisCsCertificate cs_certificate_heis(const FSet& A) {
    const FieldCtx& ctx = A.ctx();
    if (A.empty()) throw std::invalid_argument("A must be nonempty");
    FSet zero(ctx, {0});
    HeisCube K = make_cube(A, A, zero, 2);

    HeisCsCertificate cert;
    cert.lhs = static_cast<u64>(cube_product_size(K, K));
    CollisionReport col = collision_count_fiber(A);
    cert.N = col.N;
    cert.rhs_num = checked_pow(A.size(), 16);
    cert.ok = checked_mul(static_cast<u128>(cert.lhs), cert.N) >= cert.rhs_num;
    return cert;
}

BilinearImageCertificate bilinear_image_certificate(const FSet& A) {
    const FieldCtx& ctx = A.ctx();
    if (A.empty()) throw std::invalid_argument("A must be nonempty");
    FSet zero(ctx, {0});
    HeisCube K = make_cube(A, A, zero, 2);

    BilinearImageCertificate cert;
    cert.lhs = static_cast<u64>(cube_product_size(K, K));
    FSet AA = product_set(A, A);
    cert.image_size = sumset(AA, AA).size();
    cert.rhs = checked_mul(static_cast<u128>(cert.image_size),
                           checked_pow(A.size(), 4));
    cert.ok = static_cast<u128>(cert.lhs) >= cert.rhs;
    return cert;
}

Thm4Certificate thm4_certificate(const FSet& A) {
    if (A.empty()) throw std::invalid_argument("A must be nonempty");
    HeisCube K = make_cube(A, A, A, 2);

    Thm4Certificate cert;
    cert.lhs = static_cast<u64>(cube_product_size(K, K));
    FSet AA = product_set(A, A);
    FSet W = sumset(sumset(AA, AA), sumset(A, A));
    cert.w_size = W.size();
    cert.rhs = checked_mul(static_cast<u128>(cert.w_size),
                           checked_pow(A.size(), 4));
    cert.ok = static_cast<u128>(cert.lhs) >= cert.rhs;
    return cert;
}

Degree1Report hh_degree1_quantities(const FSet& A) {
    const FieldCtx& ctx = A.ctx();
    if (A.empty()) throw std::invalid_argument("A must be nonempty");
    FSet zero(ctx, {0});
    HeisCube K = make_cube(A, A, zero, 1);

    Degree1Report rep;
    rep.size_sq = static_cast<u64>(cube_product_size(K, K));
    FSet AA = product_set(A, A);
    rep.sum_size = sumset(A, A).size();
    rep.prod_size = AA.size();
    rep.max_sum_prod = std::max(rep.sum_size, rep.prod_size);
    rep.aa_plus_aa = sumset(AA, AA).size();

    double a = static_cast<double>(A.size());
    double p = static_cast<double>(ctx.p());
    double bench_main =
        std::min(std::sqrt(p) * std::pow(a, 2.5), std::pow(a, 4.0) / std::sqrt(p));
    rep.ratio_main = static_cast<double>(rep.size_sq) / bench_main;
    rep.ratio_7_2 = static_cast<double>(rep.size_sq) / std::pow(a, 3.5);
    rep.ratio_3_1_11 = static_cast<double>(rep.size_sq) / std::pow(a, 3.0 + 1.0 / 11.0);
    rep.ratio_sum_prod =
        static_cast<double>(rep.max_sum_prod) / std::pow(a, 12.0 / 11.0);
    rep.ratio_aa_aa = static_cast<double>(rep.aa_plus_aa) / std::pow(a, 1.2);
    return rep;
}

} // namespace ffgrowth
