#pragma once

#include <cstdint>
#include <type_traits>
#include <vector>

#include "walkprove/bigint.hpp"
#include "walkprove/fp.hpp"
#include "walkprove/multipoly.hpp"
#include "walkprove/walks.hpp"

namespace walkprove {

// --- coefficient rings ------------------------------------------------------

struct RingZ {
    using Elem = Int;
    Elem zero() const { return Int(0); }
    Elem one() const { return Int(1); }
    bool is_zero(const Elem& e) const { return e.is_zero(); }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    bool invert(const Elem& a, Elem& out) const {
        if (a == Int(1) || a == Int(-1)) {
            out = a;
            return true;
        }
        return false;
    }
    Elem from_int(const Int& v) const { return v; }
};

struct RingQ {
    using Elem = Rat;
    Elem zero() const { return Rat(); }
    Elem one() const { return Rat(1); }
    bool is_zero(const Elem& e) const { return e.is_zero(); }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    bool invert(const Elem& a, Elem& out) const {
        if (a.is_zero()) return false;
        out = Rat(1) / a;
        return true;
    }
    Elem from_int(const Int& v) const { return Rat(v); }
};

struct RingFp {
    uint64_t p;
    using Elem = uint64_t;
    explicit RingFp(uint64_t prime) : p(prime) {}
    Elem zero() const { return 0; }
    Elem one() const { return 1 % p; }
    bool is_zero(const Elem& e) const { return e == 0; }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    Elem add(const Elem& a, const Elem& b) const { return addmod(a, b, p); }
    Elem sub(const Elem& a, const Elem& b) const { return submod(a, b, p); }
    Elem neg(const Elem& a) const { return a ? p - a : 0; }
    Elem mul(const Elem& a, const Elem& b) const { return mulmod(a, b, p); }
    bool invert(const Elem& a, Elem& out) const {
        if (a == 0) return false;
        out = invmod(a, p);
        return true;
    }
    Elem from_int(const Int& v) const { return mod_u64(v, p); }
};

// --- Laurent polynomials in one variable -------------------------------------

// Value x^off · Σ c[k]·x^k; empty c means zero (off irrelevant).
template <class R>
struct Laurent {
    int off = 0;
    std::vector<typename R::Elem> c;

    bool is_zero() const { return c.empty(); }
    int lo() const { return off; }
    int hi() const { return off + (int)c.size() - 1; }
};

template <class R>
void l_normalize(Laurent<R>& a, const R& ring) {
    size_t lead = 0;
    while (lead < a.c.size() && ring.is_zero(a.c[lead])) ++lead;
    size_t tail = a.c.size();
    while (tail > lead && ring.is_zero(a.c[tail - 1])) --tail;
    if (lead == tail) {
        a.c.clear();
        a.off = 0;
        return;
    }
    if (lead > 0) a.c.erase(a.c.begin(), a.c.begin() + (long)lead);
    a.c.resize(tail - lead);
    a.off += (int)lead;
}

template <class R>
Laurent<R> l_monomial(int e, typename R::Elem v, const R& ring) {
    Laurent<R> r;
    if (ring.is_zero(v)) return r;
    r.off = e;
    r.c.push_back(std::move(v));
    return r;
}

template <class R>
typename R::Elem l_get(const Laurent<R>& a, int e, const R& ring) {
    if (a.is_zero() || e < a.lo() || e > a.hi()) return ring.zero();
    return a.c[(size_t)(e - a.off)];
}

template <class R>
Laurent<R> l_add(const Laurent<R>& a, const Laurent<R>& b, const R& ring) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    int lo = std::min(a.lo(), b.lo()), hi = std::max(a.hi(), b.hi());
    Laurent<R> r;
    r.off = lo;
    r.c.reserve((size_t)(hi - lo + 1));
    for (int e = lo; e <= hi; ++e) r.c.push_back(ring.add(l_get(a, e, ring), l_get(b, e, ring)));
    l_normalize(r, ring);
    return r;
}

template <class R>
Laurent<R> l_neg(const Laurent<R>& a, const R& ring) {
    Laurent<R> r = a;
    for (auto& v : r.c) v = ring.neg(v);
    return r;
}

template <class R>
Laurent<R> l_sub(const Laurent<R>& a, const Laurent<R>& b, const R& ring) {
    return l_add(a, l_neg(b, ring), ring);
}

template <class R>
Laurent<R> l_scale(const Laurent<R>& a, const typename R::Elem& k, const R& ring) {
    if (ring.is_zero(k)) return Laurent<R>{};
    Laurent<R> r = a;
    for (auto& v : r.c) v = ring.mul(v, k);
    l_normalize(r, ring);
    return r;
}

template <class R>
Laurent<R> l_mul(const Laurent<R>& a, const Laurent<R>& b, const R& ring) {
    Laurent<R> r;
    if (a.is_zero() || b.is_zero()) return r;
    r.off = a.off + b.off;
    r.c.assign(a.c.size() + b.c.size() - 1, ring.zero());
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (ring.is_zero(a.c[i])) continue;
        for (size_t j = 0; j < b.c.size(); ++j) {
            if (ring.is_zero(b.c[j])) continue;
            r.c[i + j] = ring.add(r.c[i + j], ring.mul(a.c[i], b.c[j]));
        }
    }
    l_normalize(r, ring);
    return r;
}

// x^k · a
template <class R>
Laurent<R> l_shift(Laurent<R> a, int k) {
    if (!a.is_zero()) a.off += k;
    return a;
}

template <class R>
bool l_eq(const Laurent<R>& a, const Laurent<R>& b, const R& ring) {
    int lo = std::min(a.is_zero() ? 0 : a.lo(), b.is_zero() ? 0 : b.lo());
    int hi = std::max(a.is_zero() ? 0 : a.hi(), b.is_zero() ? 0 : b.hi());
    for (int e = lo; e <= hi; ++e)
        if (!ring.eq(l_get(a, e, ring), l_get(b, e, ring))) return false;
    return true;
}

// --- truncated series in t with Laurent coefficients -------------------------

// Σ_{n<N} coeff[n]·t^n, exact for all retained orders; coeff may be shorter
// than N (missing orders are zero).
template <class R>
struct Series {
    size_t N = 0;
    std::vector<Laurent<R>> coeff;

    Laurent<R> at(size_t n) const { return n < coeff.size() ? coeff[n] : Laurent<R>{}; }
    void set(size_t n, Laurent<R> v) {
        if (n >= N) throw error("Series: order beyond truncation");
        if (coeff.size() <= n) coeff.resize(n + 1);
        coeff[n] = std::move(v);
    }
    void trim() {
        while (!coeff.empty() && coeff.back().is_zero()) coeff.pop_back();
    }
};

template <class R>
Series<R> s_zero(size_t N) {
    Series<R> r;
    r.N = N;
    return r;
}

template <class R>
Series<R> s_const(Laurent<R> v, size_t N) {
    Series<R> r;
    r.N = N;
    if (N > 0 && !v.is_zero()) r.coeff.push_back(std::move(v));
    return r;
}

// First order with a nonzero retained coefficient; N if none.
template <class R>
size_t s_tval(const Series<R>& a) {
    for (size_t n = 0; n < a.coeff.size(); ++n)
        if (!a.coeff[n].is_zero()) return n;
    return a.N;
}

// Smallest x-exponent over all retained coefficients (0 for the zero series).
template <class R>
int s_min_x(const Series<R>& a) {
    int m = 0;
    bool any = false;
    for (const auto& l : a.coeff)
        if (!l.is_zero()) {
            m = any ? std::min(m, l.lo()) : l.lo();
            any = true;
        }
    return any ? m : 0;
}

template <class R>
Series<R> s_truncate(Series<R> a, size_t n) {
    a.N = std::min(a.N, n);
    if (a.coeff.size() > a.N) a.coeff.resize(a.N);
    return a;
}

template <class R>
Series<R> s_add(const Series<R>& a, const Series<R>& b, const R& ring) {
    Series<R> r;
    r.N = std::min(a.N, b.N);
    size_t m = std::min(std::max(a.coeff.size(), b.coeff.size()), r.N);
    r.coeff.resize(m);
    for (size_t n = 0; n < m; ++n) r.coeff[n] = l_add(a.at(n), b.at(n), ring);
    r.trim();
    return r;
}

template <class R>
Series<R> s_neg(Series<R> a, const R& ring) {
    for (auto& l : a.coeff) l = l_neg(l, ring);
    return a;
}

template <class R>
Series<R> s_sub(const Series<R>& a, const Series<R>& b, const R& ring) {
    return s_add(a, s_neg(b, ring), ring);
}

template <class R>
Series<R> s_scale(const Series<R>& a, const Laurent<R>& k, const R& ring) {
    Series<R> r;
    r.N = a.N;
    if (k.is_zero()) return r;
    r.coeff.resize(std::min(a.coeff.size(), a.N));
    for (size_t n = 0; n < r.coeff.size(); ++n) r.coeff[n] = l_mul(a.at(n), k, ring);
    r.trim();
    return r;
}

// t^k · a (precision grows with the shift).
template <class R>
Series<R> s_shift_t(const Series<R>& a, size_t k) {
    Series<R> r;
    r.N = a.N + k;
    r.coeff.resize(a.coeff.size() + k);
    for (size_t n = 0; n < a.coeff.size(); ++n) r.coeff[n + k] = a.coeff[n];
    return r;
}

// a / t^k; requires the first k coefficients to vanish.
template <class R>
Series<R> s_div_t(const Series<R>& a, size_t k) {
    for (size_t n = 0; n < k && n < a.coeff.size(); ++n)
        if (!a.coeff[n].is_zero()) throw error("series: division by t^k with nonzero low coefficient");
    if (a.N < k) throw error("series: truncation too small for division by t^k");
    Series<R> r;
    r.N = a.N - k;
    if (a.coeff.size() > k) r.coeff.assign(a.coeff.begin() + (long)k, a.coeff.end());
    return r;
}

Series<RingFp> series_mul_fp(const Series<RingFp>& a, const Series<RingFp>& b, const RingFp& ring,
                             size_t cap);

template <class R>
Series<R> s_mul(const Series<R>& a, const Series<R>& b, const R& ring, size_t cap = SIZE_MAX) {
    if constexpr (std::is_same_v<R, RingFp>) {
        return series_mul_fp(a, b, ring, cap);
    } else {
        size_t va = s_tval(a), vb = s_tval(b);
        Series<R> r;
        r.N = std::min({a.N + vb, b.N + va, cap});
        if (va >= a.N || vb >= b.N) return r;  // a or b is zero to its precision
        size_t hi = std::min(r.N, a.coeff.size() + b.coeff.size());
        r.coeff.resize(hi > va + vb ? hi : 0);
        for (size_t n = va + vb; n < r.coeff.size(); ++n) {
            Laurent<R> acc;
            size_t kmin = n >= b.coeff.size() ? n - b.coeff.size() + 1 : 0;
            kmin = std::max(kmin, va);
            for (size_t k = kmin; k < std::min(a.coeff.size(), n - vb + 1); ++k) {
                const auto& ak = a.coeff[k];
                if (ak.is_zero()) continue;
                const auto bn = b.at(n - k);
                if (bn.is_zero()) continue;
                acc = l_add(acc, l_mul(ak, bn, ring), ring);
            }
            r.coeff[n] = std::move(acc);
        }
        r.trim();
        return r;
    }
}

// First order n < upto where a and b differ; returns upto when equal.
template <class R>
size_t s_agree_order(const Series<R>& a, const Series<R>& b, size_t upto, const R& ring) {
    upto = std::min({upto, a.N, b.N});
    for (size_t n = 0; n < upto; ++n)
        if (!l_eq(a.at(n), b.at(n), ring)) return n;
    return upto;
}

// 1/a mod t^n; the t⁰ coefficient must be a single invertible monomial.
template <class R>
Series<R> s_inverse(const Series<R>& a, const R& ring, size_t n) {
    Laurent<R> lead = a.at(0);
    l_normalize(lead, ring);
    typename R::Elem cinv = ring.zero();
    if (lead.c.size() != 1 || !ring.invert(lead.c[0], cinv))
        throw error(
            "series inverse: constant-in-t coefficient is not an invertible monomial; "
            "supply a parameterization or deflate");
    n = std::min(n, a.N);
    if (n == 0) return s_zero<R>(0);
    Series<R> b = s_const(l_monomial(-lead.off, cinv, ring), 1);
    size_t k = 1;
    while (k < n) {
        k = std::min(2 * k, n);
        b.N = k;  // orders beyond the settled prefix read as zero; the update fills them
        // b ← b·(2 − a·b) mod t^k
        Series<R> ab = s_mul(s_truncate(a, k), b, ring, k);
        Series<R> two = s_const(l_monomial(0, ring.add(ring.one(), ring.one()), ring), k);
        b = s_mul(b, s_sub(two, ab, ring), ring, k);
    }
    b.N = n;
    return b;
}

// Polynomial in (t, xvar) → series; other variables must not occur.
template <class R>
Series<R> series_from_poly(const MultiPoly& q, const R& ring, size_t N, int xvar = VAR_x) {
    Series<R> r = s_zero<R>(N);
    for (const auto& [m, c] : q.terms) {
        for (int v = 0; v < 4; ++v)
            if (v != VAR_t && v != xvar && m.e[(size_t)v] != 0)
                throw error("series_from_poly: unexpected variable in polynomial");
        size_t n = (size_t)m.e[VAR_t];
        if (n >= N) continue;
        auto cur = r.at(n);
        cur = l_add(cur, l_monomial((int)m.e[(size_t)xvar], ring.from_int(c), ring), ring);
        r.set(n, std::move(cur));
    }
    r.trim();
    return r;
}

// P(f, t, x): Horner in T; P's t and xvar become series data.
template <class R>
Series<R> poly_eval_series(const MultiPoly& P, const Series<R>& f, const R& ring,
                           int xvar = VAR_x) {
    auto cs = coeffs_in(P, VAR_T);
    Series<R> r = s_zero<R>(f.N);
    for (size_t i = cs.size(); i-- > 0;) {
        r = s_mul(r, f, ring, f.N);
        r = s_add(r, series_from_poly(cs[i], ring, f.N, xvar), ring);
    }
    return r;
}

// Substitute inner for the Laurent variable of outer.  outer must have
// non-negative x-exponents; inner must have positive t-valuation.
template <class R>
Series<R> compose(const Series<R>& outer, const Series<R>& inner, const R& ring, size_t N) {
    if (s_tval(inner) == 0) throw error("compose: inner series has t-valuation 0");
    if (s_min_x(outer) < 0)
        throw error("compose: outer series has negative x-exponents; substitution would leave "
                    "the power-series ring");
    if (outer.N < N || inner.N < N) throw error("compose: inputs truncated below requested order");
    int D = 0;
    for (const auto& l : outer.coeff)
        if (!l.is_zero()) D = std::max(D, l.hi());
    Series<R> res = s_zero<R>(N);
    Series<R> in_trunc = s_truncate(inner, N);
    for (int i = D; i >= 0; --i) {
        res = s_mul(res, in_trunc, ring, N);
        // add c_i(t)·x^0 where c_i is the x^i slice of outer
        Series<R> ci = s_zero<R>(N);
        for (size_t n = 0; n < std::min(outer.coeff.size(), N); ++n) {
            auto v = l_get(outer.coeff[n], i, ring);
            if (!ring.is_zero(v)) ci.set(n, l_monomial(0, v, ring));
        }
        ci.trim();
        res = s_add(res, ci, ring);
    }
    res.N = N;
    return res;
}

// --- series roots -------------------------------------------------------------

// Unique series root f of P(T,t,x) with f ≡ seed (mod t); the t=0 Jacobian
// ∂P/∂T(seed, 0, x) must be an invertible monomial.
template <class R>
Series<R> newton_lift(const MultiPoly& P, const Laurent<R>& seed, const R& ring, size_t N) {
    if (P.is_zero() || degree(P, VAR_T) < 1) throw error("newton_lift: polynomial is constant in T");
    if (degree(P, VAR_y) > 0) throw error("newton_lift: unexpected variable y");
    // Residual and Jacobian at t = 0.
    {
        auto cs = coeffs_in(specialize(P, VAR_t, Int(0)), VAR_T);
        Laurent<R> val, jac;
        for (size_t i = cs.size(); i-- > 0;) {
            Laurent<R> ci;
            for (const auto& [m, c] : cs[i].terms)
                ci = l_add(ci, l_monomial((int)m.e[VAR_x], ring.from_int(c), ring), ring);
            jac = l_add(l_mul(jac, seed, ring), val, ring);
            val = l_add(l_mul(val, seed, ring), ci, ring);
        }
        if (!val.is_zero()) throw error("newton_lift: seed is not a root of P(T,0,x)");
        l_normalize(jac, ring);
        typename R::Elem tmp = ring.zero();
        if (jac.c.size() != 1 || !ring.invert(jac.c[0], tmp))
            throw error(
                "newton_lift: dP/dT at the seed is zero or not an invertible monomial at t=0; "
                "supply a parameterization or deflate");
    }
    MultiPoly Pd = derivative(P, VAR_T);
    Series<R> f = s_const(seed, 1);
    size_t k = 1;
    while (k < N) {
        k = std::min(2 * k, N);
        f.N = k;
        Series<R> pf = poly_eval_series(P, f, ring);
        Series<R> pd = poly_eval_series(Pd, f, ring);
        Series<R> upd = s_mul(pf, s_inverse(pd, ring, k), ring, k);
        f = s_sub(f, upd, ring);
        f.N = k;
    }
    return f;
}

// Branch data for newton_lift: the polynomial plus the t=0 value that
// identifies the root.
template <class R>
struct AlgebraicSeriesSpec {
    MultiPoly poly;
    Laurent<R> seed;
};

template <class R>
Series<R> newton_lift(const AlgebraicSeriesSpec<R>& spec, const R& ring, size_t N) {
    return newton_lift(spec.poly, spec.seed, ring, N);
}

// Power-series root of the kernel in y (or in x when solve_y is false): the
// unique branch with positive t-valuation.  The Laurent variable of the result
// is the surviving one.
template <class R>
Series<R> kernel_root(const StepSet& s, bool solve_y, const R& ring, size_t N) {
    // xy·S(x,y) = Σ x^{1+dx} y^{1+dy}; solving xY = t·Σ A_j(x)·Y^j.
    std::array<Laurent<R>, 3> A;
    for (const auto& [dx, dy] : s.steps) {
        int j = solve_y ? 1 + dy : 1 + dx;
        int e = solve_y ? 1 + dx : 1 + dy;
        A[(size_t)j] = l_add(A[(size_t)j], l_monomial(e, ring.one(), ring), ring);
    }
    Series<R> Y = s_zero<R>(1);
    for (size_t k = 1; k < N; ++k) {
        size_t trunc = k + 1;
        Y.N = trunc - 1;
        // B = A0 + A1·Y + A2·Y² mod t^{trunc−1}
        Series<R> B = s_scale(Y, A[2], ring);
        B = s_add(B, s_const(A[1], trunc - 1), ring);
        B = s_mul(B, Y, ring, trunc - 1);
        B = s_add(B, s_const(A[0], trunc - 1), ring);
        // Y = (t/x)·B
        Series<R> nxt = s_shift_t(B, 1);
        for (auto& l : nxt.coeff) l = l_shift(l, -1);
        Y = s_truncate(nxt, trunc);
    }
    Y.N = N;
    return Y;
}

// Exact check of the Gessel root compatibility X(t, Y(t,x)) = x to order N,
// over the integers.
bool kernel_roots_inverse_identity(int N);

// Rational function of (U, x); U lives in the T slot of MultiPoly.
struct RatBivar {
    MultiPoly num, den;
};

// True iff P(R2(U,x), R1(U,x), x) = 0 as an exact rational identity and the
// denominators carry the expected h-structure (R1.den = h, h | R2.num).
bool verify_parameterization(const RatBivar& R1, const RatBivar& R2, const MultiPoly& h,
                             const MultiPoly& P);

using LaurentZ = Laurent<RingZ>;
using LaurentQ = Laurent<RingQ>;
using LaurentFp = Laurent<RingFp>;
using SeriesZ = Series<RingZ>;
using SeriesQ = Series<RingQ>;
using SeriesFp = Series<RingFp>;

// Section series as bivariate data (integer or modular).
SeriesZ section_to_series_z(const std::vector<std::vector<Int>>& rows, size_t N);
SeriesFp section_to_series_fp(const std::vector<std::vector<uint64_t>>& rows, size_t N, uint64_t p);

}  // namespace walkprove
