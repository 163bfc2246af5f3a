#include "walkprove/fppoly.hpp"

#include <algorithm>
#include <map>

namespace walkprove {

namespace {

void check_same_field(const FpPoly& a, const FpPoly& b) {
    if (a.p && b.p && a.p != b.p) throw error("FpPoly: mixed moduli");
}

// field cache: NTT setup per modulus is not free, reuse it
const FpField& field_for(uint64_t p) {
    static std::map<uint64_t, FpField> cache;
    auto it = cache.find(p);
    if (it == cache.end()) it = cache.emplace(p, FpField(p)).first;
    return it->second;
}

FpPoly mul_schoolbook(const FpPoly& a, const FpPoly& b, size_t trunc) {
    uint64_t p = a.p ? a.p : b.p;
    if (a.is_zero() || b.is_zero()) return FpPoly(p);
    size_t n = std::min(a.c.size() + b.c.size() - 1, trunc);
    std::vector<uint64_t> out(n, 0);
    for (size_t i = 0; i < a.c.size() && i < n; ++i) {
        if (!a.c[i]) continue;
        uint64_t ai = a.c[i];
        size_t jmax = std::min(b.c.size(), n - i);
        for (size_t j = 0; j < jmax; ++j) {
            if (!b.c[j]) continue;
            out[i + j] = addmod(out[i + j], mulmod(ai, b.c[j], p), p);
        }
    }
    return FpPoly(p, std::move(out));
}

}  // namespace

void ntt(std::vector<uint64_t>& a, bool inverse, const FpField& F) {
    size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0) throw error("ntt: size must be a power of two");
    int lg = 0;
    while ((1u << lg) < n) ++lg;
    if (lg > F.two_adicity) throw error("ntt: size exceeds two-adicity of modulus");
    uint64_t p = F.p;
    // bit-reversal permutation
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (int len = 1, s = 1; (size_t)(len << 1) <= n; len <<= 1, ++s) {
        uint64_t w = powmod(F.root, 1ULL << (F.two_adicity - s), p);
        if (inverse) w = invmod(w, p);
        // per-block twiddles with Shoup precomputation
        std::vector<uint64_t> ws((size_t)len), wsp((size_t)len);
        uint64_t cur = 1;
        for (int k = 0; k < len; ++k) {
            ws[k] = cur;
            wsp[k] = shoup_precompute(cur, p);
            cur = mulmod(cur, w, p);
        }
        for (size_t i = 0; i < n; i += (size_t)len << 1) {
            for (int k = 0; k < len; ++k) {
                uint64_t u = a[i + k];
                uint64_t v = mulmod_shoup(a[i + k + len], ws[k], wsp[k], p);
                a[i + k] = addmod(u, v, p);
                a[i + k + len] = submod(u, v, p);
            }
        }
    }
    if (inverse) {
        uint64_t ninv = invmod(n % p, p);
        for (auto& x : a) x = mulmod(x, ninv, p);
    }
}

FpPoly add(const FpPoly& a, const FpPoly& b) {
    check_same_field(a, b);
    uint64_t p = a.p ? a.p : b.p;
    FpPoly r(p);
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = addmod(a.at(i), b.at(i), p);
    r.normalize();
    return r;
}

FpPoly sub(const FpPoly& a, const FpPoly& b) {
    check_same_field(a, b);
    uint64_t p = a.p ? a.p : b.p;
    FpPoly r(p);
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = submod(a.at(i), b.at(i), p);
    r.normalize();
    return r;
}

FpPoly neg(const FpPoly& a) {
    FpPoly r(a.p);
    r.c.resize(a.c.size());
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i] ? a.p - a.c[i] : 0;
    return r;
}

FpPoly scale(const FpPoly& a, uint64_t k) {
    k %= a.p;
    if (!k) return FpPoly(a.p);
    FpPoly r(a.p);
    r.c.resize(a.c.size());
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = mulmod(a.c[i], k, a.p);
    return r;
}

FpPoly mul_trunc(const FpPoly& a, const FpPoly& b, size_t n) {
    check_same_field(a, b);
    uint64_t p = a.p ? a.p : b.p;
    if (a.is_zero() || b.is_zero() || n == 0) return FpPoly(p);
    size_t full = a.c.size() + b.c.size() - 1;
    size_t want = std::min(full, n);
    const FpField& F = field_for(p);
    // schoolbook below the NTT break-even or when the modulus cannot host it
    if (want < 64 || (size_t)a.c.size() * b.c.size() < 4096 || !F.ntt_ready(full)) {
        return mul_schoolbook(a, b, n);
    }
    size_t len = 1;
    while (len < full) len <<= 1;
    std::vector<uint64_t> fa(a.c.begin(), a.c.end()), fb(b.c.begin(), b.c.end());
    fa.resize(len, 0);
    fb.resize(len, 0);
    ntt(fa, false, F);
    ntt(fb, false, F);
    for (size_t i = 0; i < len; ++i) fa[i] = mulmod(fa[i], fb[i], p);
    ntt(fa, true, F);
    fa.resize(want);
    return FpPoly(p, std::move(fa));
}

FpPoly mul(const FpPoly& a, const FpPoly& b) { return mul_trunc(a, b, SIZE_MAX); }

FpPoly shift(const FpPoly& a, int k) {
    if (a.is_zero()) return a;
    FpPoly r(a.p);
    r.c.assign(a.c.size() + (size_t)k, 0);
    std::copy(a.c.begin(), a.c.end(), r.c.begin() + k);
    return r;
}

FpPoly derivative(const FpPoly& a) {
    FpPoly r(a.p);
    if (a.c.size() <= 1) return r;
    r.c.resize(a.c.size() - 1);
    for (size_t i = 1; i < a.c.size(); ++i) r.c[i - 1] = mulmod(a.c[i], i % a.p, a.p);
    r.normalize();
    return r;
}

uint64_t eval(const FpPoly& a, uint64_t x) {
    uint64_t r = 0;
    for (size_t i = a.c.size(); i-- > 0;) r = addmod(mulmod(r, x, a.p), a.c[i], a.p);
    return r;
}

std::pair<FpPoly, FpPoly> divrem(const FpPoly& a, const FpPoly& b) {
    check_same_field(a, b);
    if (b.is_zero()) throw error("FpPoly divrem: division by zero");
    uint64_t p = a.p ? a.p : b.p;
    if (a.deg() < b.deg()) return {FpPoly(p), a};
    FpPoly q(p), r = a;
    q.c.assign((size_t)(a.deg() - b.deg() + 1), 0);
    uint64_t binv = invmod(b.lc(), p);
    for (int k = a.deg() - b.deg(); k >= 0; --k) {
        if ((int)r.c.size() - 1 < k + b.deg()) continue;
        uint64_t coef = mulmod(r.c[(size_t)(k + b.deg())], binv, p);
        if (!coef) continue;
        q.c[(size_t)k] = coef;
        for (int i = 0; i <= b.deg(); ++i) {
            auto& slot = r.c[(size_t)(k + i)];
            slot = submod(slot, mulmod(coef, b.c[(size_t)i], p), p);
        }
    }
    r.normalize();
    q.normalize();
    return {q, r};
}

FpPoly monic(const FpPoly& a) {
    if (a.is_zero() || a.lc() == 1) return a;
    return scale(a, invmod(a.lc(), a.p));
}

FpPoly gcd(FpPoly a, FpPoly b) {
    check_same_field(a, b);
    while (!b.is_zero()) {
        FpPoly r = divrem(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

void xgcd(const FpPoly& a, const FpPoly& b, FpPoly& g, FpPoly& s, FpPoly& t) {
    check_same_field(a, b);
    uint64_t p = a.p ? a.p : b.p;
    FpPoly r0 = a, r1 = b;
    FpPoly s0 = FpPoly::constant(p, 1), s1(p);
    FpPoly t0(p), t1 = FpPoly::constant(p, 1);
    while (!r1.is_zero()) {
        auto [q, r2] = divrem(r0, r1);
        FpPoly s2 = sub(s0, mul(q, s1));
        FpPoly t2 = sub(t0, mul(q, t1));
        r0 = std::move(r1); r1 = std::move(r2);
        s0 = std::move(s1); s1 = std::move(s2);
        t0 = std::move(t1); t1 = std::move(t2);
    }
    if (!r0.is_zero() && r0.lc() != 1) {
        uint64_t k = invmod(r0.lc(), p);
        r0 = scale(r0, k);
        s0 = scale(s0, k);
        t0 = scale(t0, k);
    }
    g = std::move(r0);
    s = std::move(s0);
    t = std::move(t0);
}

FpPoly series_inverse(const FpPoly& a, size_t n) {
    if (a.is_zero() || a.c[0] == 0) throw error("series_inverse: constant term is zero");
    uint64_t p = a.p;
    FpPoly r = FpPoly::constant(p, invmod(a.c[0], p));
    size_t k = 1;
    while (k < n) {
        k = std::min(2 * k, n);
        // r <- r * (2 - a*r) mod t^k
        FpPoly ar = mul_trunc(a, r, k);
        FpPoly two_minus = neg(ar);
        two_minus.c.resize(std::max<size_t>(two_minus.c.size(), 1), 0);
        two_minus.c[0] = addmod(two_minus.c[0], 2 % p, p);
        two_minus.normalize();
        r = mul_trunc(r, two_minus, k);
    }
    r.c.resize(n, 0);
    r.normalize();
    return r;
}

FpPoly interpolate(uint64_t p, const std::vector<uint64_t>& xs, const std::vector<uint64_t>& ys) {
    if (xs.size() != ys.size()) throw error("interpolate: size mismatch");
    size_t n = xs.size();
    // Newton form
    std::vector<uint64_t> dd = ys;
    for (size_t j = 1; j < n; ++j) {
        for (size_t i = n; i-- > j;) {
            uint64_t dx = submod(xs[i], xs[i - j], p);
            if (!dx) throw error("interpolate: duplicate evaluation point");
            dd[i] = mulmod(submod(dd[i], dd[i - 1], p), invmod(dx, p), p);
        }
    }
    FpPoly r(p), base = FpPoly::constant(p, 1);
    for (size_t i = 0; i < n; ++i) {
        r = add(r, scale(base, dd[i]));
        FpPoly lin(p, {submod(0, xs[i], p), 1});
        base = mul(base, lin);
    }
    return r;
}

uint64_t resultant(FpPoly a, FpPoly b) {
    check_same_field(a, b);
    uint64_t p = a.p ? a.p : b.p;
    if (a.is_zero() || b.is_zero()) return 0;
    uint64_t res = 1;
    while (true) {
        if (b.deg() == 0) {
            res = mulmod(res, powmod(b.c[0], (uint64_t)a.deg(), p), p);
            return res;
        }
        FpPoly r = divrem(a, b).second;
        if (r.is_zero()) return 0;
        // res(a,b) = (-1)^(da*db) lc(b)^(da-dr) res(b,r)
        uint64_t sign = ((uint64_t)a.deg() * (uint64_t)b.deg()) & 1 ? p - 1 : 1;
        res = mulmod(res, sign, p);
        res = mulmod(res, powmod(b.lc(), (uint64_t)(a.deg() - r.deg()), p), p);
        a = std::move(b);
        b = std::move(r);
    }
}

bool rat_interp(uint64_t p, const std::vector<uint64_t>& xs, const std::vector<uint64_t>& ys,
                int dn, int dd, FpPoly& num, FpPoly& den) {
    size_t n = xs.size();
    if (dn < 0 || dd < 0 || (size_t)(dn + dd + 1) > n) throw error("rat_interp: too few points");
    // EEA on (prod (t - x_i), interpolant), stop when remainder degree <= dn
    FpPoly M = FpPoly::constant(p, 1);
    for (uint64_t x : xs) M = mul(M, FpPoly(p, {submod(0, x, p), 1}));
    FpPoly I = interpolate(p, xs, ys);
    FpPoly r0 = M, r1 = I;
    FpPoly t0(p), t1 = FpPoly::constant(p, 1);
    while (!r1.is_zero() && r1.deg() > dn) {
        auto [q, r2] = divrem(r0, r1);
        FpPoly t2 = sub(t0, mul(q, t1));
        r0 = std::move(r1); r1 = std::move(r2);
        t0 = std::move(t1); t1 = std::move(t2);
    }
    if (t1.is_zero() || t1.deg() > dd) return false;
    // require gcd(r1, t1) trivial, else points are inconsistent with bounds
    FpPoly g = gcd(r1, t1);
    if (g.deg() > 0) return false;
    // denominator must not vanish at any node
    for (uint64_t x : xs)
        if (eval(t1, x) == 0) return false;
    uint64_t k = invmod(t1.lc(), p);
    num = scale(r1, k);
    den = scale(t1, k);
    return true;
}

}  // namespace walkprove
