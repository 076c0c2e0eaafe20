#pragma once

#include <algorithm>
#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "ffgrowth/field.hpp"

namespace ffgrowth {

// A finite subset of one field, held as a strictly increasing vector of
// element codes. Carries its own copy of the (small, immutable) context so
// a set can outlive the context it was built from.
class FSet {
public:
    FSet(const FieldCtx& ctx, std::vector<Elem> elems)
        : ctx_(ctx), elems_(std::move(elems)) {
        for (Elem e : elems_) {
            if (!ctx_.element_ok(e)) {
                throw std::invalid_argument("set element out of range");
            }
        }
        std::sort(elems_.begin(), elems_.end());
        elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
    }

    // Convenience for integer literals; each value is mapped through the
    // ring map Z -> F_{p^n} (i.e. reduced mod p into the prime subfield).
    static FSet of_ints(const FieldCtx& ctx, std::initializer_list<long long> vs) {
        std::vector<Elem> es;
        es.reserve(vs.size());
        for (long long v : vs) es.push_back(ctx.from_int(v));
        return FSet(ctx, std::move(es));
    }

    const FieldCtx& ctx() const { return ctx_; }
    const std::vector<Elem>& elements() const { return elems_; }
    u64 size() const { return elems_.size(); }
    bool empty() const { return elems_.empty(); }

    bool contains(Elem e) const {
        return std::binary_search(elems_.begin(), elems_.end(), e);
    }

    auto begin() const { return elems_.begin(); }
    auto end() const { return elems_.end(); }

    bool operator==(const FSet& o) const {
        return ctx_ == o.ctx_ && elems_ == o.elems_;
    }

private:
    FieldCtx ctx_;
    std::vector<Elem> elems_;
};

inline void require_same_field(const FSet& a, const FSet& b) {
    if (a.ctx() != b.ctx()) {
        throw std::invalid_argument("sets live in different fields");
    }
}

} // namespace ffgrowth
