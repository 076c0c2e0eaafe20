#pragma once

#include <optional>
#include <vector>

#include "ffgrowth/errors.hpp"
#include "ffgrowth/fset.hpp"
#include "ffgrowth/wide.hpp"

namespace ffgrowth {

// Element [x, y, z] of the degree-n Heisenberg group over the field:
// the upper unitriangular (n+2)x(n+2) matrix with x as the top row block,
// y as the last column block, and z in the corner. The law multiplies out
// to x+x', y+y', z+z'+x.y' (dot product).
struct HeisElem {
    std::vector<Elem> x;
    std::vector<Elem> y;
    Elem z = 0;

    unsigned deg() const { return static_cast<unsigned>(x.size()); }
    bool operator==(const HeisElem& o) const = default;
};

HeisElem heis_identity(unsigned deg);
HeisElem heis_mul(const FieldCtx& ctx, const HeisElem& g, const HeisElem& h);
HeisElem heis_inverse(const FieldCtx& ctx, const HeisElem& g); // [-x,-y,-z+x.y]

// Cube [A^deg, B^deg, C]: x coordinates from A, y from B, z from C.
// |cube| = |A|^deg * |B|^deg * |C| by construction.
struct HeisCube {
    FSet A;
    FSet B;
    FSet C;
    unsigned deg = 1;

    u128 size() const {
        u128 s = checked_mul(checked_pow(A.size(), deg),
                             checked_pow(B.size(), deg));
        return checked_mul(s, C.size());
    }
};
HeisCube make_cube(const FSet& A, const FSet& B, const FSet& C, unsigned deg);

// Duplicate-free set of group elements, keyed by the base-q packing of
// (x_1..x_deg, y_1..y_deg, z). Requires q^{2*deg+1} < 2^63.
class HeisSet {
public:
    HeisSet(const FieldCtx& ctx, unsigned deg, std::vector<u64> keys);

    static u64 key_of(const FieldCtx& ctx, const HeisElem& g);
    static HeisElem elem_of(const FieldCtx& ctx, unsigned deg, u64 key);

    const FieldCtx& ctx() const { return ctx_; }
    unsigned deg() const { return deg_; }
    u64 size() const { return keys_.size(); }
    const std::vector<u64>& keys() const { return keys_; }
    bool contains(const HeisElem& g) const;
    HeisElem at(size_t i) const { return elem_of(ctx_, deg_, keys_.at(i)); }

private:
    FieldCtx ctx_;
    unsigned deg_;
    std::vector<u64> keys_; // strictly sorted
};

inline constexpr u64 kDefaultHeisPairBudget = 200000000;

// Literal product set: every ordered pair of cube elements multiplied out.
HeisSet cube_product_set(const HeisCube& K1, const HeisCube& K2,
                         u64 pair_budget = kDefaultHeisPairBudget);

// |K1 * K2| without materializing elements. Products are grouped into
// cells by the sums u = x+x', v = y+y': within a cell the attainable
// z-components are (C1+C2) + sum_i F(u_i)*G(v_i) with F(u) = A1 ∩ (u-A2)
// and G(v) = B2 ∩ (v-B1), so the size is a sum of per-cell sumset sizes.
// Exact, and far cheaper than pair enumeration for structured cubes.
u128 cube_product_size(const HeisCube& K1, const HeisCube& K2);

// 16-tuple collision count for the degree-2, C = {0} cube: the number of
// pairs of left/right 8-tuples matched on the five keys
// (x1+z1, x2+z2, y1+t1, y2+t2, x1*t1+x2*t2).
struct CollisionReport {
    u128 N = 0;
    enum class Method { direct, fiber_decomposition } method = Method::direct;
    std::optional<u64> product_set_size; // |[A^2,A^2,0]^2| when computed
};

inline constexpr u64 kDefaultCollisionBudget = 20000000;

// Sorted join over the |A|^8 key tuples; N = sum of squared run lengths.
// Guarded by budget on |A|^8.
CollisionReport collision_count_direct(const FSet& A,
                                       u64 tuple_budget = kDefaultCollisionBudget);

// The same count through the fiber decomposition
// N = sum over (s1,s2,s3,s4) in (A+A)^4 of Q(A_{s1}, A_{s3}, A_{s2}, A_{s4}),
// where A_s = A ∩ (s-A). The x variables of the bilinear equation run over
// A_{s1}, A_{s2} and the t variables over A_{s3}, A_{s4}; slotting them into
// Q's (a, b, c, d) positions in that interleaved order is exactly what the
// matching equations force. Agrees with the direct join on every input.
CollisionReport collision_count_fiber(const FSet& A);

// |[A^2,A^2,0]^2| * N >= |A|^16, exact with constant 1.
struct HeisCsCertificate {
    u64 lhs = 0;      // |[A^2,A^2,0]^2|
    u128 N = 0;
    u128 rhs_num = 0; // |A|^16
    bool ok = false;
};
HeisCsCertificate cs_certificate_heis(const FSet& A);

// |[A^2,A^2,0]^2| >= |A|^4 * |AA+AA|: the image of the bilinear form
// x1*t1 + x2*t2 on A^4 is exactly AA+AA.
struct BilinearImageCertificate {
    u64 lhs = 0;
    u64 image_size = 0; // |AA+AA|
    u128 rhs = 0;       // |A|^4 * image_size
    bool ok = false;
};
BilinearImageCertificate bilinear_image_certificate(const FSet& A);

// |[A^2,A^2,A]^2| >= |A|^4 * |AA+AA+A+A|: fixing one representation of
// each w in AA+AA+A+A leaves x' and y free, injectively.
struct Thm4Certificate {
    u64 lhs = 0;
    u64 w_size = 0; // |AA+AA+A+A|
    u128 rhs = 0;   // |A|^4 * w_size
    bool ok = false;
};
Thm4Certificate thm4_certificate(const FSet& A);

// Degree-1 measurements: |[A,A,0]^2| against its three benchmark growth
// rates, plus max{|A+A|, |AA|} and |AA+AA|. Ratios are descriptive floats;
// the sizes are exact.
struct Degree1Report {
    u64 size_sq = 0;      // |[A,A,0]^2|
    u64 sum_size = 0;     // |A+A|
    u64 prod_size = 0;    // |AA|
    u64 max_sum_prod = 0; // max{|A+A|, |AA|}
    u64 aa_plus_aa = 0;   // |AA+AA|
    double ratio_main = 0.0;     // size_sq / min(p^{1/2}|A|^{5/2}, p^{-1/2}|A|^4)
    double ratio_7_2 = 0.0;      // size_sq / |A|^{7/2}
    double ratio_3_1_11 = 0.0;   // size_sq / |A|^{3+1/11}
    double ratio_sum_prod = 0.0; // max_sum_prod / |A|^{12/11}
    double ratio_aa_aa = 0.0;    // aa_plus_aa / |A|^{6/5}
};
Degree1Report hh_degree1_quantities(const FSet& A);

} // namespace ffgrowth
