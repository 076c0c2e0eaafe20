#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "ffgrowth/errors.hpp"
#include "ffgrowth/fset.hpp"
#include "ffgrowth/wide.hpp"

namespace ffgrowth {

// ---------------------------------------------------------------------------
// Pointwise set operations
// ---------------------------------------------------------------------------

FSet sumset(const FSet& A, const FSet& B);        // {a+b}
FSet difference_set(const FSet& A, const FSet& B); // {a-b}
FSet product_set(const FSet& A, const FSet& B);    // {a*b}
FSet quotient_set(const FSet& A, const FSet& B);   // {a/b : b != 0}

FSet dilate(const FSet& A, Elem lambda); // {lambda*a}; lambda != 0 required
FSet translate(const FSet& A, Elem s);   // {a+s}

// A intersect (s - A). Symmetric: x belongs iff s-x belongs.
FSet fiber_set(const FSet& A, Elem s);

// All (a1-a2)/(b1-b2) with a1,a2 in A and b1 != b2 in B; requires |B| >= 2.
// Contains 0 whenever A is nonempty.
FSet ratio_set(const FSet& A, const FSet& B);

// Closure probes on R = ratio_set(A,B). Each flag is the literal subset
// test; downstream growth arguments branch on the tests failing.
struct RatioClosureReport {
    bool case1 = false; // 1 + R contained in R
    bool case2 = false; // B * R contained in R
    bool case3 = false; // B^{-1} * R contained in R
};
RatioClosureReport ratio_closure_probe(const FSet& A, const FSet& B);

// ---------------------------------------------------------------------------
// Representation functions and energies
// ---------------------------------------------------------------------------

// Exact multiset of counts r(x) over the field: array-backed while q stays
// within the dense cap, ordered-map-backed above it. Counts fit in u64
// (each is at most |A||B| <= q^2 at desk scale); sums of squares are u128.
class RepFunction {
public:
    static constexpr u64 kDenseCap = u64(1) << 20;

    explicit RepFunction(const FieldCtx& ctx);

    const FieldCtx& ctx() const { return ctx_; }
    void bump(Elem x, u64 c = 1);
    u64 at(Elem x) const;
    u64 total() const { return total_; }

    // (element, count) pairs with count > 0, sorted by element code.
    std::vector<std::pair<Elem, u64>> support() const;

    u128 sum_squares() const;

private:
    FieldCtx ctx_;
    bool dense_;
    std::vector<u64> counts_;
    std::map<Elem, u64> sparse_;
    u64 total_ = 0;
};

RepFunction rep_add(const FSet& A, const FSet& B); // r(x) = #{(a,b): a+b = x}
RepFunction rep_sub(const FSet& A, const FSet& B); // r(x) = #{(a,b): a-b = x}
RepFunction rep_mul(const FSet& A, const FSet& B); // r(x) = #{(a,b): a*b = x}

enum class EnergyMethod { convolution, brute_force };

struct EnergyReport {
    u128 value = 0;
    EnergyMethod method = EnergyMethod::convolution;
    std::vector<u64> operand_sizes;
};

// E+(A): quadruples (a,b,c,d) in A^4 with a+b = c+d.
EnergyReport additive_energy(const FSet& A);

// E×(A,B): quadruples (a1,a2,b1,b2) in A^2 x B^2 with a1*b1 = a2*b2.
EnergyReport mult_energy(const FSet& A, const FSet& B);

// Q(A,B,C,D): 8-tuples with a1*b1 + c1*d1 = a2*b2 + c2*d2. The convolution
// route squares the additive convolution of r_AB and r_CD; the brute-force
// route walks all (|A||B||C||D|)^2 tuple pairs and is guarded at 10^8
// iterations.
EnergyReport bilinear_energy_Q(const FSet& A, const FSet& B, const FSet& C,
                               const FSet& D,
                               EnergyMethod method = EnergyMethod::convolution);

// Q(A,A,A,A) under its own name: the count of a1*a2 + a3*a4 collisions.
EnergyReport lemma22_count(const FSet& A,
                           EnergyMethod method = EnergyMethod::convolution);

// ---------------------------------------------------------------------------
// Shifted intersections and the iterated-sumset inequality
// ---------------------------------------------------------------------------

// max over x != 0 of |A intersect (B+x)|, with the exact fourth-power
// comparison max^4*|A|^2 vs |AB|^5 alongside display-only ratios.
struct ShiftedIntersectionReport {
    u64 max = 0;
    Elem argmax = 0;        // smallest nonzero x attaining the max
    u128 lhs_pow4 = 0;      // max^4 * |A|^2
    u128 rhs_pow4 = 0;      // |AB|^5
    double rhs_ratio = 0.0; // max / (|A|^{-1/2} |AB|^{5/4})
    double hyp_ratio = 0.0; // |A|^2 |AB| / p^2
};
ShiftedIntersectionReport max_shifted_intersection(const FSet& A, const FSet& B);

// |B1+...+Bk| <= prod |X+Bi| / |X|^{k-1}, decided exactly by cross-
// multiplication; for k = 2 the difference form |B1-B2| <= |X+B1||X+B2|/|X|
// is checked as well. Both are unconditional, so ok is expected true.
struct PRReport {
    u64 sum_lhs = 0;
    UFraction sum_rhs;
    bool sum_ok = false;
    bool has_diff = false;
    u64 diff_lhs = 0;
    UFraction diff_rhs;
    bool diff_ok = true;
    bool ok = false; // sum_ok && diff_ok
};
PRReport pr_inequality_check(const FSet& X, const std::vector<FSet>& Bs);

} // namespace ffgrowth
