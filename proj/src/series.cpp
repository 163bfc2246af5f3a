#include "walkprove/series.hpp"

#include <algorithm>

#include "walkprove/fppoly.hpp"

namespace walkprove {

// Bivariate product via Kronecker packing: rows of x-coefficients laid out at
// a stride wide enough that t-orders never overlap, multiplied as univariate
// polynomials mod p (NTT when large).
Series<RingFp> series_mul_fp(const Series<RingFp>& a, const Series<RingFp>& b, const RingFp& ring,
                             size_t cap) {
    size_t va = s_tval(a), vb = s_tval(b);
    Series<RingFp> r;
    r.N = std::min({a.N + vb, b.N + va, cap});
    if (va >= a.N || vb >= b.N || r.N <= va + vb) {
        r.N = std::min(r.N, cap);
        return r;
    }
    size_t rows_out = r.N - va - vb;
    size_t ha = std::min(a.coeff.size(), va + rows_out);
    size_t hb = std::min(b.coeff.size(), vb + rows_out);
    int alo = 0, ahi = -1, blo = 0, bhi = -1;
    for (size_t n = va; n < ha; ++n)
        if (!a.coeff[n].is_zero()) {
            if (ahi < alo) { alo = a.coeff[n].lo(); ahi = a.coeff[n].hi(); }
            alo = std::min(alo, a.coeff[n].lo());
            ahi = std::max(ahi, a.coeff[n].hi());
        }
    for (size_t n = vb; n < hb; ++n)
        if (!b.coeff[n].is_zero()) {
            if (bhi < blo) { blo = b.coeff[n].lo(); bhi = b.coeff[n].hi(); }
            blo = std::min(blo, b.coeff[n].lo());
            bhi = std::max(bhi, b.coeff[n].hi());
        }
    if (ahi < alo || bhi < blo) return r;
    size_t sa = (size_t)(ahi - alo + 1), sb = (size_t)(bhi - blo + 1);
    size_t stride = sa + sb - 1;
    size_t la = (ha - va) * stride, lb = (hb - vb) * stride;
    if ((double)la + (double)lb > 1e8) throw error("series multiply: operands too large");

    FpPoly A(ring.p), B(ring.p);
    A.c.assign(la, 0);
    B.c.assign(lb, 0);
    for (size_t n = va; n < ha; ++n) {
        const auto& l = a.coeff[n];
        for (size_t i = 0; i < l.c.size(); ++i)
            A.c[(n - va) * stride + (size_t)(l.lo() - alo) + i] = l.c[i];
    }
    for (size_t n = vb; n < hb; ++n) {
        const auto& l = b.coeff[n];
        for (size_t i = 0; i < l.c.size(); ++i)
            B.c[(n - vb) * stride + (size_t)(l.lo() - blo) + i] = l.c[i];
    }
    A.normalize();
    B.normalize();
    FpPoly C = mul_trunc(A, B, rows_out * stride);

    r.coeff.resize(r.N);
    for (size_t row = 0; row < rows_out; ++row) {
        LaurentFp l;
        l.off = alo + blo;
        size_t base = row * stride;
        size_t len = C.c.size() > base ? std::min(stride, C.c.size() - base) : 0;
        if (len) l.c.assign(C.c.begin() + (long)base, C.c.begin() + (long)(base + len));
        l_normalize(l, ring);
        r.coeff[va + vb + row] = std::move(l);
    }
    r.trim();
    return r;
}

SeriesZ section_to_series_z(const std::vector<std::vector<Int>>& rows, size_t N) {
    RingZ R;
    SeriesZ r = s_zero<RingZ>(std::min(N, rows.size()));
    r.coeff.resize(r.N);
    for (size_t n = 0; n < r.N; ++n) {
        LaurentZ l;
        l.off = 0;
        l.c = rows[n];
        l_normalize(l, R);
        r.coeff[n] = std::move(l);
    }
    r.trim();
    return r;
}

SeriesFp section_to_series_fp(const std::vector<std::vector<uint64_t>>& rows, size_t N,
                              uint64_t p) {
    RingFp R(p);
    SeriesFp r = s_zero<RingFp>(std::min(N, rows.size()));
    r.coeff.resize(r.N);
    for (size_t n = 0; n < r.N; ++n) {
        LaurentFp l;
        l.off = 0;
        l.c = rows[n];
        l_normalize(l, R);
        r.coeff[n] = std::move(l);
    }
    r.trim();
    return r;
}

// X(t,y) = Σ_k Cat_k · t^{2k+1} (1+y)^{2k+1} / y^{k+1}, so with y → Y = tW
// (W a unit) each term is Cat_k·t^k·A·B^k for A = (1+Y)/W, B = (1+Y)²/W —
// plain power series whose k-th term has t-valuation exactly k.
bool kernel_roots_inverse_identity(int N) {
    if (N < 2) throw error("kernel_roots_inverse_identity: order too small");
    RingZ R;
    size_t n = (size_t)N;
    SeriesZ Y = kernel_root(StepSet::gessel(), true, R, n + 1);
    SeriesZ W = s_div_t(Y, 1);
    SeriesZ Winv = s_inverse(W, R, n);
    SeriesZ onePlusY = s_add(s_const(l_monomial(0, Int(1), R), n), s_truncate(Y, n), R);
    SeriesZ A = s_mul(onePlusY, Winv, R, n);
    SeriesZ B = s_mul(s_mul(onePlusY, onePlusY, R, n), Winv, R, n);

    SeriesZ acc = s_zero<RingZ>(n);
    SeriesZ cur = A;  // A·B^k, truncated as the t-shift spends precision
    Int cat(1);
    for (size_t k = 0; k < n; ++k) {
        SeriesZ term = s_shift_t(s_scale(cur, l_monomial(0, cat, R), R), k);
        acc = s_add(s_truncate(acc, n), s_truncate(term, n), R);
        acc.N = n;
        if (k + 1 < n) {
            cur = s_mul(cur, B, R, n - (k + 1));
            cat = divexact(cat * Int(2) * Int((long)(2 * k + 1)), Int((long)(k + 2)));
        }
    }
    SeriesZ x = s_const(l_monomial(1, Int(1), R), n);
    return s_agree_order(acc, x, n, R) == n;
}

bool verify_parameterization(const RatBivar& R1, const RatBivar& R2, const MultiPoly& h,
                             const MultiPoly& P) {
    if (R1.den.is_zero() || R2.den.is_zero() || P.is_zero()) return false;
    for (const auto& rf : {R1, R2})
        for (const auto& mp : {rf.num, rf.den})
            if (degree(mp, VAR_t) > 0 || degree(mp, VAR_y) > 0) return false;
    if (degree(P, VAR_y) > 0) return false;
    // denominator structure: R1 = ·/h and h divides the numerator of R2
    if (!sub(R1.den, h).is_zero()) return false;
    if (!divides(h, R2.num, nullptr)) return false;

    int dT = degree(P, VAR_T), dt = degree(P, VAR_t);
    if (dT < 0 || dt < 0) return false;
    // PW2[i] = num2^i·den2^{dT−i},  PW1[j] = num1^j·den1^{dt−j}
    std::vector<MultiPoly> pw2((size_t)dT + 1), pw1((size_t)dt + 1);
    {
        std::vector<MultiPoly> npow((size_t)dT + 1), dpow((size_t)dT + 1);
        npow[0] = MultiPoly(Int(1));
        dpow[0] = MultiPoly(Int(1));
        for (size_t i = 1; i <= (size_t)dT; ++i) {
            npow[i] = mul(npow[i - 1], R2.num);
            dpow[i] = mul(dpow[i - 1], R2.den);
        }
        for (size_t i = 0; i <= (size_t)dT; ++i) pw2[i] = mul(npow[i], dpow[(size_t)dT - i]);
    }
    {
        std::vector<MultiPoly> npow((size_t)dt + 1), dpow((size_t)dt + 1);
        npow[0] = MultiPoly(Int(1));
        dpow[0] = MultiPoly(Int(1));
        for (size_t j = 1; j <= (size_t)dt; ++j) {
            npow[j] = mul(npow[j - 1], R1.num);
            dpow[j] = mul(dpow[j - 1], R1.den);
        }
        for (size_t j = 0; j <= (size_t)dt; ++j) pw1[j] = mul(npow[j], dpow[(size_t)dt - j]);
    }

    auto cT = coeffs_in(P, VAR_T);  // each entry is a polynomial in (t, x)
    MultiPoly acc;
    for (size_t i = 0; i < cT.size(); ++i) {
        if (cT[i].is_zero()) continue;
        auto ct = coeffs_in(cT[i], VAR_t);  // entries in x only
        MultiPoly inner;
        for (size_t j = 0; j < ct.size(); ++j) {
            if (ct[j].is_zero()) continue;
            inner = add(inner, mul(ct[j], pw1[j]));
        }
        acc = add(acc, mul(inner, pw2[i]));
    }
    return acc.is_zero();
}

}  // namespace walkprove
