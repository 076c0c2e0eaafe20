#include "ffgrowth/incidence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ffgrowth {

namespace {

void require_prime_plane(const FieldCtx& ctx) {
    if (ctx.n() != 1) {
        throw std::invalid_argument("incidence geometry wants a prime field");
    }
}

void require_same_ctx(const FieldCtx& a, const FieldCtx& b) {
    if (!(a == b)) throw std::invalid_argument("mixed fields");
}

} // namespace

PointSet::PointSet(const FieldCtx& ctx, unsigned dim,
                   std::vector<std::array<Elem, 3>> pts)
    : ctx_(ctx), dim_(dim), pts_(std::move(pts)) {
    require_prime_plane(ctx_);
    if (dim_ != 2 && dim_ != 3) {
        throw std::invalid_argument("dimension must be 2 or 3");
    }
    for (auto& pt : pts_) {
        if (dim_ == 2) pt[2] = 0;
        for (unsigned i = 0; i < dim_; ++i) {
            if (!ctx_.element_ok(pt[i])) {
                throw std::invalid_argument("coordinate out of range");
            }
        }
    }
    std::sort(pts_.begin(), pts_.end());
    pts_.erase(std::unique(pts_.begin(), pts_.end()), pts_.end());
}

LineSet::LineSet(const FieldCtx& ctx, std::vector<std::array<Elem, 3>> lines)
    : ctx_(ctx), lines_(std::move(lines)) {
    require_prime_plane(ctx_);
    for (auto& ln : lines_) {
        for (Elem c : ln) {
            if (!ctx_.element_ok(c)) {
                throw std::invalid_argument("coefficient out of range");
            }
        }
        auto [u, v, w] = ln;
        if (u != 0) {
            Elem s = ctx_.inv(u);
            ln = {1, ctx_.mul(v, s), ctx_.mul(w, s)};
        } else if (v != 0) {
            Elem s = ctx_.inv(v);
            ln = {0, 1, ctx_.mul(w, s)};
        } else {
            throw std::invalid_argument("line needs (u,v) != (0,0)");
        }
    }
    std::sort(lines_.begin(), lines_.end());
    lines_.erase(std::unique(lines_.begin(), lines_.end()), lines_.end());
}

PlaneSet::PlaneSet(const FieldCtx& ctx, std::vector<std::array<Elem, 4>> planes)
    : ctx_(ctx), planes_(std::move(planes)) {
    require_prime_plane(ctx_);
    for (auto& pl : planes_) {
        for (Elem c : pl) {
            if (!ctx_.element_ok(c)) {
                throw std::invalid_argument("coefficient out of range");
            }
        }
        unsigned lead = 0;
        while (lead < 3 && pl[lead] == 0) ++lead;
        if (lead == 3) {
            throw std::invalid_argument("plane needs (u,v,w) != (0,0,0)");
        }
        Elem s = ctx_.inv(pl[lead]);
        for (unsigned i = 0; i < 4; ++i) pl[i] = ctx_.mul(pl[i], s);
    }
    std::sort(planes_.begin(), planes_.end());
    planes_.erase(std::unique(planes_.begin(), planes_.end()), planes_.end());
}

u64 count_incidences(const PointSet& P, const LineSet& L) {
    require_same_ctx(P.ctx(), L.ctx());
    if (P.dim() != 2) throw std::invalid_argument("line incidences want dim 2");
    const FieldCtx& ctx = P.ctx();
    u64 count = 0;
    for (const auto& [u, v, w] : L.lines()) {
        for (const auto& pt : P.points()) {
            Elem lhs = ctx.add(ctx.mul(u, pt[0]), ctx.mul(v, pt[1]));
            if (lhs == w) ++count;
        }
    }
    return count;
}

u64 count_incidences(const PointSet& P, const PlaneSet& Pi) {
    require_same_ctx(P.ctx(), Pi.ctx());
    if (P.dim() != 3) throw std::invalid_argument("plane incidences want dim 3");
    const FieldCtx& ctx = P.ctx();
    u64 count = 0;
    for (const auto& [u, v, w, c] : Pi.planes()) {
        for (const auto& pt : P.points()) {
            Elem lhs = ctx.add(ctx.add(ctx.mul(u, pt[0]), ctx.mul(v, pt[1])),
                               ctx.mul(w, pt[2]));
            if (lhs == c) ++count;
        }
    }
    return count;
}

u64 max_collinear(const PointSet& P) {
    const u64 n = P.size();
    if (n < 2) return n;
    const FieldCtx& ctx = P.ctx();
    const u64 p = ctx.p();
    const auto& pts = P.points();

    u64 best = 2;
    std::vector<u64> dirs;
    dirs.reserve(n - 1);
    for (size_t i = 0; i < pts.size(); ++i) {
        dirs.clear();
        for (size_t j = 0; j < pts.size(); ++j) {
            if (j == i) continue;
            std::array<Elem, 3> d = {ctx.sub(pts[j][0], pts[i][0]),
                                     ctx.sub(pts[j][1], pts[i][1]),
                                     ctx.sub(pts[j][2], pts[i][2])};
            unsigned lead = 0;
            while (d[lead] == 0) ++lead; // distinct points, some entry nonzero
            Elem s = ctx.inv(d[lead]);
            for (auto& c : d) c = ctx.mul(c, s);
            dirs.push_back((d[0] * p + d[1]) * p + d[2]);
        }
        std::sort(dirs.begin(), dirs.end());
        for (size_t a = 0; a < dirs.size();) {
            size_t b = a;
            while (b < dirs.size() && dirs[b] == dirs[a]) ++b;
            best = std::max(best, static_cast<u64>(b - a) + 1);
            a = b;
        }
    }
    return best;
}

SdzReport sdz_bound_report(const FSet& A, const FSet& B, const LineSet& L) {
    require_same_ctx(A.ctx(), B.ctx());
    require_same_ctx(A.ctx(), L.ctx());
    if (A.size() > B.size()) {
        throw std::invalid_argument("sdz bound wants |A| <= |B|");
    }
    const FieldCtx& ctx = A.ctx();

    std::vector<std::array<Elem, 3>> pts;
    pts.reserve(static_cast<size_t>(A.size() * B.size()));
    for (Elem a : A) {
        for (Elem b : B) pts.push_back({a, b, 0});
    }
    PointSet grid(ctx, 2, std::move(pts));

    SdzReport rep;
    rep.I = count_incidences(grid, L);

    const u64 na = A.size(), nb = B.size(), nl = L.size();
    rep.bound_hyp1 =
        checked_mul(static_cast<u128>(na), checked_mul(nb, nb)) <=
        checked_pow(nl, 3);
    double p = static_cast<double>(ctx.p());
    rep.bound_hyp2 = static_cast<double>(na) * static_cast<double>(nl) / (p * p);
    rep.bound_main = std::pow(static_cast<double>(na), 0.75) *
                         std::sqrt(static_cast<double>(nb)) *
                         std::pow(static_cast<double>(nl), 0.75) +
                     static_cast<double>(nl);
    rep.ratio = rep.bound_main > 0.0 ? static_cast<double>(rep.I) / rep.bound_main
                                     : 0.0;
    if (rep.I <= nl) {
        rep.within_unit_constant = true;
    } else {
        u128 excess = rep.I - nl;
        rep.within_unit_constant =
            checked_pow(excess, 4) <=
            checked_mul(checked_pow(na, 3),
                        checked_mul(checked_pow(nb, 2), checked_pow(nl, 3)));
    }
    return rep;
}

RudnevReport rudnev_bound_report(const PointSet& P, const PlaneSet& Pi) {
    require_same_ctx(P.ctx(), Pi.ctx());
    if (P.dim() != 3) throw std::invalid_argument("rudnev bound wants dim 3");
    if (P.size() > Pi.size()) {
        throw std::invalid_argument("rudnev bound wants |P| <= |Pi|");
    }
    const u64 p = P.ctx().p();
    const u64 np = P.size(), npi = Pi.size();

    RudnevReport rep;
    rep.I = count_incidences(P, Pi);
    rep.k = max_collinear(P);

    double bound = static_cast<double>(np) * static_cast<double>(npi) /
                       static_cast<double>(p) +
                   std::sqrt(static_cast<double>(np)) * static_cast<double>(npi) +
                   static_cast<double>(rep.k) * static_cast<double>(np);
    rep.bound = bound;
    rep.ratio = bound > 0.0 ? static_cast<double>(rep.I) / bound : 0.0;

    // I <= |P||Pi|/p + sqrt(|P|)|Pi| + k|P|, decided exactly: multiply by p,
    // move the rational terms left, square to clear the root.
    u128 lhs = checked_mul(static_cast<u128>(p), rep.I);
    u128 flat = checked_add(checked_mul(static_cast<u128>(np), npi),
                            checked_mul(static_cast<u128>(p),
                                        checked_mul(rep.k, np)));
    if (lhs <= flat) {
        rep.ok = true;
    } else {
        u128 excess = lhs - flat;
        u128 root_sq = checked_mul(checked_mul(static_cast<u128>(p), p),
                                   checked_mul(checked_mul(static_cast<u128>(np), npi), npi));
        rep.ok = checked_mul(excess, excess) <= root_sq;
    }
    return rep;
}

} // namespace ffgrowth
