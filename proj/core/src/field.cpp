#include "ffgrowth/field.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ffgrowth {

namespace {

u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>((static_cast<u128>(a) * b) % m);
}

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e > 0) {
        if (e & 1u) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1u;
    }
    return r;
}

// --- dense polynomial arithmetic over F_p, coefficients constant-first ---

using Poly = std::vector<u64>;

void poly_trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b, u64 p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
        }
    }
    poly_trim(r);
    return r;
}

// a mod f for monic f.
Poly poly_mod(Poly a, const Poly& f, u64 p) {
    const size_t df = f.size() - 1;
    while (a.size() > df) {
        u64 lead = a.back();
        size_t shift = a.size() - 1 - df;
        if (lead != 0) {
            for (size_t i = 0; i < df; ++i) {
                u64 t = mulmod(lead, f[i], p);
                a[shift + i] = (a[shift + i] + p - t) % p;
            }
        }
        a.pop_back();
        poly_trim(a);
        if (a.size() <= df) break;
    }
    poly_trim(a);
    return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, u64 p) {
    return poly_mod(poly_mul(a, b, p), f, p);
}

Poly poly_powmod(Poly base, u64 e, const Poly& f, u64 p) {
    Poly r = {1};
    base = poly_mod(std::move(base), f, p);
    while (e > 0) {
        if (e & 1u) r = poly_mulmod(r, base, f, p);
        base = poly_mulmod(base, base, f, p);
        e >>= 1u;
    }
    return r;
}

Poly poly_gcd(Poly a, Poly b, u64 p) {
    poly_trim(a);
    poly_trim(b);
    while (!b.empty()) {
        u64 lead_inv = powmod(b.back(), p - 2, p);
        Poly bm = b;
        for (auto& c : bm) c = mulmod(c, lead_inv, p);
        a = poly_mod(std::move(a), bm, p);
        std::swap(a, b);
    }
    return a;
}

// Monic f of degree n >= 1 is irreducible over F_p iff no factor of degree
// <= n/2 exists, i.e. gcd(x^{p^k} - x mod f, f) == 1 for k = 1..n/2.
bool poly_irreducible(const Poly& f, u64 p) {
    const size_t n = f.size() - 1;
    if (n == 1) return true;
    Poly xp = {0, 1}; // running x^{p^k} mod f
    for (size_t k = 1; k + k <= n; ++k) {
        xp = poly_powmod(std::move(xp), p, f, p);
        Poly diff = xp;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = (diff[1] + p - 1) % p;
        poly_trim(diff);
        Poly g = poly_gcd(f, diff, p);
        if (g.size() != 1) return false;
    }
    return true;
}

std::vector<u64> prime_factors(u64 m) {
    std::vector<u64> fs;
    for (u64 d = 2; d * d <= m; d += (d == 2 ? 1 : 2)) {
        if (m % d == 0) {
            fs.push_back(d);
            while (m % d == 0) m /= d;
        }
    }
    if (m > 1) fs.push_back(m);
    return fs;
}

std::vector<unsigned> divisors_of(unsigned n) {
    std::vector<unsigned> ds;
    for (unsigned d = 1; d <= n; ++d) {
        if (n % d == 0) ds.push_back(d);
    }
    return ds;
}

} // namespace

bool is_prime_u64(u64 m) {
    if (m < 2) return false;
    for (u64 sp : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                   23ull, 29ull, 31ull, 37ull}) {
        if (m % sp == 0) return m == sp;
    }
    u64 d = m - 1;
    unsigned r = 0;
    while ((d & 1u) == 0) {
        d >>= 1u;
        ++r;
    }
    // This base set decides primality for every 64-bit integer.
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                  23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, m);
        if (x == 1 || x == m - 1) continue;
        bool composite = true;
        for (unsigned i = 1; i < r; ++i) {
            x = mulmod(x, x, m);
            if (x == m - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

FieldCtx FieldCtx::make_prime(u64 p, u64 cap) {
    return make(p, 1, cap);
}

FieldCtx FieldCtx::make(u64 p, unsigned n, u64 cap) {
    if (n == 0) throw std::invalid_argument("extension degree must be >= 1");
    if (!is_prime_u64(p)) throw std::invalid_argument("p is not prime");
    if (n == 1) {
        return make_with_modulus(p, {0, 1}, cap);
    }
    // Walk monic degree-n polynomials in lexicographic order of
    // (c_0, c_1, ..., c_{n-1}), constant term most significant, and take
    // the first irreducible one.
    std::vector<u64> c(n, 0);
    for (;;) {
        Poly f(c.begin(), c.end());
        f.push_back(1);
        if (poly_irreducible(f, p)) {
            return make_with_modulus(p, std::move(f), cap);
        }
        int i = static_cast<int>(n) - 1;
        while (i >= 0 && c[static_cast<size_t>(i)] == p - 1) {
            c[static_cast<size_t>(i)] = 0;
            --i;
        }
        if (i < 0) throw std::logic_error("no irreducible polynomial found");
        ++c[static_cast<size_t>(i)];
    }
}

FieldCtx FieldCtx::make_with_modulus(u64 p, std::vector<u64> modulus, u64 cap) {
    if (!is_prime_u64(p)) throw std::invalid_argument("p is not prime");
    if (modulus.size() < 2 || modulus.back() != 1) {
        throw std::invalid_argument("modulus must be monic of degree >= 1");
    }
    for (u64 c : modulus) {
        if (c >= p) throw std::invalid_argument("modulus coefficient out of range");
    }
    const unsigned n = static_cast<unsigned>(modulus.size() - 1);
    if (n > 1 && !poly_irreducible(modulus, p)) {
        throw std::invalid_argument("modulus is reducible");
    }
    u128 q = 1;
    for (unsigned i = 0; i < n; ++i) {
        q = checked_mul(q, p);
        if (q > cap) throw std::invalid_argument("field size exceeds cap");
    }
    FieldCtx ctx;
    ctx.p_ = p;
    ctx.n_ = n;
    ctx.q_ = static_cast<u64>(q);
    ctx.modulus_ = std::move(modulus);
    return ctx;
}

std::string FieldCtx::modulus_str() const {
    std::string s;
    for (unsigned i = n_ + 1; i-- > 0;) {
        u64 c = modulus_[i];
        if (c == 0 && !(i == 0 && s.empty())) continue;
        if (!s.empty()) s += " + ";
        if (i == 0) {
            s += std::to_string(c);
        } else {
            if (c != 1) s += std::to_string(c) + "*";
            s += (i == 1) ? "x" : "x^" + std::to_string(i);
        }
    }
    return s;
}

Elem FieldCtx::add(Elem a, Elem b) const {
    if (!element_ok(a) || !element_ok(b)) throw std::invalid_argument("element out of range");
    if (n_ == 1) {
        Elem s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Elem r = 0;
    u64 scale = 1;
    for (unsigned i = 0; i < n_; ++i) {
        u64 ca = a % p_, cb = b % p_;
        a /= p_;
        b /= p_;
        u64 cs = ca + cb;
        if (cs >= p_) cs -= p_;
        r += cs * scale;
        scale *= p_;
    }
    return r;
}

Elem FieldCtx::neg(Elem a) const {
    if (!element_ok(a)) throw std::invalid_argument("element out of range");
    if (n_ == 1) return a == 0 ? 0 : p_ - a;
    Elem r = 0;
    u64 scale = 1;
    for (unsigned i = 0; i < n_; ++i) {
        u64 c = a % p_;
        a /= p_;
        r += (c == 0 ? 0 : p_ - c) * scale;
        scale *= p_;
    }
    return r;
}

Elem FieldCtx::sub(Elem a, Elem b) const {
    return add(a, neg(b));
}

Elem FieldCtx::mul(Elem a, Elem b) const {
    if (!element_ok(a) || !element_ok(b)) throw std::invalid_argument("element out of range");
    if (n_ == 1) return mulmod(a, b, p_);
    Poly fa = coeffs(a);
    Poly fb = coeffs(b);
    poly_trim(fa);
    poly_trim(fb);
    Poly fr = poly_mulmod(fa, fb, modulus_, p_);
    fr.resize(n_, 0);
    return from_coeffs(fr);
}

Elem FieldCtx::pow(Elem a, u64 e) const {
    if (!element_ok(a)) throw std::invalid_argument("element out of range");
    Elem r = 1;
    while (e > 0) {
        if (e & 1u) r = mul(r, a);
        a = mul(a, a);
        e >>= 1u;
    }
    return r;
}

Elem FieldCtx::inv(Elem a) const {
    if (!element_ok(a)) throw std::invalid_argument("element out of range");
    if (a == 0) throw std::domain_error("inverse of zero");
    if (n_ == 1) return powmod(a, p_ - 2, p_);
    return pow(a, q_ - 2);
}

Elem FieldCtx::from_int(long long v) const {
    long long m = static_cast<long long>(p_);
    long long r = v % m;
    if (r < 0) r += m;
    return static_cast<Elem>(r);
}

std::vector<u64> FieldCtx::coeffs(Elem a) const {
    if (!element_ok(a)) throw std::invalid_argument("element out of range");
    std::vector<u64> c(n_, 0);
    for (unsigned i = 0; i < n_; ++i) {
        c[i] = a % p_;
        a /= p_;
    }
    return c;
}

Elem FieldCtx::from_coeffs(const std::vector<u64>& c) const {
    if (c.size() > n_) throw std::invalid_argument("too many coefficients");
    Elem r = 0;
    u64 scale = 1;
    for (unsigned i = 0; i < n_; ++i) {
        u64 ci = i < c.size() ? c[i] : 0;
        if (ci >= p_) throw std::invalid_argument("coefficient out of range");
        r += ci * scale;
        scale *= p_;
    }
    return r;
}

Elem primitive_root(const FieldCtx& ctx) {
    const u64 ord = ctx.q() - 1;
    auto rs = prime_factors(ord);
    for (Elem g = 1; g < ctx.q(); ++g) {
        bool good = true;
        for (u64 r : rs) {
            if (ctx.pow(g, ord / r) == 1) {
                good = false;
                break;
            }
        }
        if (good && ctx.pow(g, ord) == 1) return g;
    }
    throw std::logic_error("no generator found");
}

std::vector<SubfieldDescriptor> list_subfields(const FieldCtx& ctx) {
    const u64 q = ctx.q();
    std::vector<Elem> frob(q);
    for (Elem a = 0; a < q; ++a) frob[a] = ctx.frobenius(a);

    std::vector<SubfieldDescriptor> out;
    for (unsigned d : divisors_of(ctx.n())) {
        SubfieldDescriptor sd;
        sd.degree = d;
        sd.size = 1;
        for (unsigned i = 0; i < d; ++i) sd.size *= ctx.p();
        for (Elem a = 0; a < q; ++a) {
            Elem b = a;
            for (unsigned i = 0; i < d; ++i) b = frob[b];
            if (b == a) sd.elements.push_back(a);
        }
        if (sd.elements.size() != sd.size) {
            throw std::logic_error("Frobenius fixed set has wrong size");
        }
        out.push_back(std::move(sd));
    }
    return out;
}

namespace {

// Row echelon basis for an F_p-subspace of F_{p^n}, rows stored as
// coefficient vectors with a normalized leading pivot.
class SpanBasis {
public:
    SpanBasis(const FieldCtx& ctx) : ctx_(&ctx) {}

    // Returns true when v was independent of the current span.
    bool insert(Elem v) {
        std::vector<u64> row = ctx_->coeffs(v);
        reduce(row);
        auto piv = pivot(row);
        if (piv < 0) return false;
        u64 inv = powmod(row[static_cast<size_t>(piv)], ctx_->p() - 2, ctx_->p());
        for (auto& c : row) c = mulmod(c, inv, ctx_->p());
        rows_.push_back(std::move(row));
        std::sort(rows_.begin(), rows_.end(),
                  [this](const auto& a, const auto& b) { return pivot(a) > pivot(b); });
        return true;
    }

    size_t dim() const { return rows_.size(); }

    std::vector<Elem> basis_elems() const {
        std::vector<Elem> out;
        out.reserve(rows_.size());
        for (const auto& r : rows_) out.push_back(ctx_->from_coeffs(r));
        return out;
    }

    // Enumerates all p^dim span elements.
    std::vector<Elem> enumerate() const {
        std::vector<Elem> span = {0};
        for (const auto& r : rows_) {
            Elem b = ctx_->from_coeffs(r);
            std::vector<Elem> next;
            next.reserve(span.size() * ctx_->p());
            Elem step = 0;
            for (u64 k = 0; k < ctx_->p(); ++k) {
                for (Elem s : span) next.push_back(ctx_->add(s, step));
                step = ctx_->add(step, b);
            }
            span = std::move(next);
        }
        std::sort(span.begin(), span.end());
        return span;
    }

private:
    static int pivot(const std::vector<u64>& row) {
        for (int i = static_cast<int>(row.size()) - 1; i >= 0; --i) {
            if (row[static_cast<size_t>(i)] != 0) return i;
        }
        return -1;
    }

    void reduce(std::vector<u64>& row) const {
        const u64 p = ctx_->p();
        for (const auto& r : rows_) {
            int pi = pivot(r);
            if (pi < 0) continue;
            u64 c = row[static_cast<size_t>(pi)];
            if (c == 0) continue;
            for (size_t i = 0; i < row.size(); ++i) {
                row[i] = (row[i] + p - mulmod(c, r[i], p)) % p;
            }
        }
    }

    const FieldCtx* ctx_;
    std::vector<std::vector<u64>> rows_;
};

} // namespace

SubfieldDescriptor generated_subfield(const FieldCtx& ctx,
                                      const std::vector<Elem>& gens) {
    SpanBasis basis(ctx);
    basis.insert(1);
    for (Elem g : gens) {
        if (!ctx.element_ok(g)) throw std::invalid_argument("element out of range");
        basis.insert(g);
    }
    // Close the span under multiplication: a subspace containing 1 whose
    // basis products stay inside is a subring, and a finite subring of a
    // field containing 1 is a subfield.
    for (;;) {
        bool grew = false;
        auto bs = basis.basis_elems();
        for (Elem a : bs) {
            for (Elem b : bs) {
                if (basis.insert(ctx.mul(a, b))) grew = true;
            }
        }
        if (!grew) break;
    }

    SubfieldDescriptor sd;
    sd.degree = static_cast<unsigned>(basis.dim());
    if (ctx.n() % sd.degree != 0) {
        throw std::logic_error("generated subfield has non-divisor dimension");
    }
    sd.elements = basis.enumerate();
    sd.size = sd.elements.size();
    return sd;
}

SubfieldConditionReport check_subfield_condition(const FieldCtx& ctx,
                                                 const std::vector<Elem>& A) {
    std::vector<Elem> a_sorted(A);
    std::sort(a_sorted.begin(), a_sorted.end());
    a_sorted.erase(std::unique(a_sorted.begin(), a_sorted.end()), a_sorted.end());
    for (Elem a : a_sorted) {
        if (!ctx.element_ok(a)) throw std::invalid_argument("element out of range");
    }

    SubfieldConditionReport rep;
    if (ctx.n() == 1) {
        rep.vacuous = true;
        return rep;
    }

    const Elem g = primitive_root(ctx);
    bool first = true;
    for (const auto& sd : list_subfields(ctx)) {
        if (sd.degree == ctx.n()) continue;

        // lambda*F = lambda'*F iff lambda/lambda' lies in F^*, so the powers
        // g^0 .. g^{m-1} with m = (q-1)/(|F|-1) cover every coset once.
        const u64 m = (ctx.q() - 1) / (sd.size - 1);
        Elem lambda = 1;
        for (u64 j = 0; j < m; ++j) {
            std::vector<Elem> coset;
            coset.reserve(sd.elements.size());
            for (Elem f : sd.elements) coset.push_back(ctx.mul(lambda, f));
            std::sort(coset.begin(), coset.end());
            u64 overlap = 0;
            size_t ia = 0, ic = 0;
            while (ia < a_sorted.size() && ic < coset.size()) {
                if (a_sorted[ia] < coset[ic]) ++ia;
                else if (coset[ic] < a_sorted[ia]) ++ic;
                else { ++overlap; ++ia; ++ic; }
            }
            // Worst pair maximizes overlap^2/|F|; comparison by
            // cross-multiplication, first hit wins ties (degrees ascend,
            // lambda walks the coset representatives g^0, g^1, ...).
            u128 cand = checked_mul(checked_mul(overlap, overlap),
                                    rep.worst_subfield_size == 0 ? 1 : rep.worst_subfield_size);
            u128 best = checked_mul(checked_mul(rep.worst_overlap, rep.worst_overlap),
                                    sd.size);
            if (first || cand > best) {
                rep.worst_degree = sd.degree;
                rep.worst_subfield_size = sd.size;
                rep.worst_lambda = lambda;
                rep.worst_overlap = overlap;
                first = false;
            }
            lambda = ctx.mul(lambda, g);
        }
    }
    rep.ok = checked_mul(rep.worst_overlap, rep.worst_overlap) <=
             static_cast<u128>(rep.worst_subfield_size);
    return rep;
}

} // namespace ffgrowth
