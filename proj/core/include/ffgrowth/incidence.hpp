#pragma once

#include <array>
#include <vector>

#include "ffgrowth/fset.hpp"
#include "ffgrowth/wide.hpp"

namespace ffgrowth {

// Point-line incidences in F_p^2 and point-plane incidences in F_p^3.
// Prime fields only; every count is an exact pair scan.

// Duplicate-free point set in dimension 2 or 3. For dim 2 the third
// coordinate is stored as 0 and ignored.
class PointSet {
public:
    PointSet(const FieldCtx& ctx, unsigned dim,
             std::vector<std::array<Elem, 3>> pts);

    const FieldCtx& ctx() const { return ctx_; }
    unsigned dim() const { return dim_; }
    u64 size() const { return pts_.size(); }
    const std::vector<std::array<Elem, 3>>& points() const { return pts_; }

private:
    FieldCtx ctx_;
    unsigned dim_;
    std::vector<std::array<Elem, 3>> pts_; // sorted, duplicate free
};

// Lines u*X + v*Y = w with (u,v) != (0,0), stored with the first nonzero
// coefficient scaled to 1 so each geometric line has one key.
class LineSet {
public:
    LineSet(const FieldCtx& ctx, std::vector<std::array<Elem, 3>> lines);

    const FieldCtx& ctx() const { return ctx_; }
    u64 size() const { return lines_.size(); }
    const std::vector<std::array<Elem, 3>>& lines() const { return lines_; }

private:
    FieldCtx ctx_;
    std::vector<std::array<Elem, 3>> lines_; // canonical, sorted, unique
};

// Planes u*X + v*Y + w*Z = c with (u,v,w) != (0,0,0), canonicalized the
// same way.
class PlaneSet {
public:
    PlaneSet(const FieldCtx& ctx, std::vector<std::array<Elem, 4>> planes);

    const FieldCtx& ctx() const { return ctx_; }
    u64 size() const { return planes_.size(); }
    const std::vector<std::array<Elem, 4>>& planes() const { return planes_; }

private:
    FieldCtx ctx_;
    std::vector<std::array<Elem, 4>> planes_; // canonical, sorted, unique
};

u64 count_incidences(const PointSet& P, const LineSet& L);
u64 count_incidences(const PointSet& P, const PlaneSet& Pi);

// Largest number of points of P on one line, by bucketing the pairs
// through each base point into canonical directions. |P| < 2 gives |P|.
u64 max_collinear(const PointSet& P);

// Incidences of the grid A x B against L, measured against
// |A|^{3/4} |B|^{1/2} |L|^{3/4} + |L|. The verdict avoids fractional
// powers: I <= |L|, or (I - |L|)^4 <= |A|^3 |B|^2 |L|^3.
struct SdzReport {
    u64 I = 0;
    double bound_main = 0.0; // |A|^{3/4}|B|^{1/2}|L|^{3/4} + |L|
    bool bound_hyp1 = false; // |A||B|^2 <= |L|^3, exact
    double bound_hyp2 = 0.0; // |A||L| / p^2, small when the bound applies
    double ratio = 0.0;      // I / bound_main, 0 for empty L
    bool within_unit_constant = false;
};
SdzReport sdz_bound_report(const FSet& A, const FSet& B, const LineSet& L);

// Point-plane bound I <= |P||Pi|/p + |P|^{1/2}|Pi| + k|P| with
// k = max_collinear(P). The verdict ok is exact: multiply through by p
// and square the lone root term.
struct RudnevReport {
    u64 I = 0;
    u64 k = 0;
    double bound = 0.0;
    double ratio = 0.0;
    bool ok = false;
};
RudnevReport rudnev_bound_report(const PointSet& P, const PlaneSet& Pi);

} // namespace ffgrowth
