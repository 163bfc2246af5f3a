#pragma once

#include <string>
#include <utility>
#include <vector>

#include "walkprove/fppoly.hpp"
#include "walkprove/multipoly.hpp"
#include "walkprove/qpoly.hpp"

namespace walkprove {

// --- coefficient-field contexts ----------------------------------------------

struct QCtx {
    using Poly = QPoly;
    Poly zero() const { return QPoly(); }
    Poly one() const { return QPoly::constant(Rat(1)); }
    Poly from_long(long v) const { return QPoly::constant(Rat(v)); }
    bool is_zero(const Poly& a) const { return a.is_zero(); }
    Poly add(const Poly& a, const Poly& b) const { return walkprove::add(a, b); }
    Poly sub(const Poly& a, const Poly& b) const { return walkprove::sub(a, b); }
    Poly neg(const Poly& a) const { return walkprove::neg(a); }
    Poly mul(const Poly& a, const Poly& b) const { return walkprove::mul(a, b); }
    Poly derivative(const Poly& a) const { return walkprove::derivative(a); }
    std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b) const {
        return walkprove::divrem(a, b);
    }
    Poly gcd(const Poly& a, const Poly& b) const { return walkprove::gcd(a, b); }
    void make_monic(Poly& n, Poly& d) const {
        Rat inv = Rat(1) / d.lc();
        n = scale(n, inv);
        d = scale(d, inv);
    }
};

struct FpCtx {
    uint64_t p;
    explicit FpCtx(uint64_t prime) : p(prime) {}
    using Poly = FpPoly;
    Poly zero() const { return FpPoly(p); }
    Poly one() const { return FpPoly::constant(p, 1); }
    Poly from_long(long v) const {
        long long r = v % (long long)p;
        if (r < 0) r += (long long)p;
        return FpPoly::constant(p, (uint64_t)r);
    }
    bool is_zero(const Poly& a) const { return a.is_zero(); }
    Poly add(const Poly& a, const Poly& b) const { return walkprove::add(a, b); }
    Poly sub(const Poly& a, const Poly& b) const { return walkprove::sub(a, b); }
    Poly neg(const Poly& a) const { return walkprove::neg(a); }
    Poly mul(const Poly& a, const Poly& b) const { return walkprove::mul(a, b); }
    Poly derivative(const Poly& a) const { return walkprove::derivative(a); }
    std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b) const {
        return walkprove::divrem(a, b);
    }
    Poly gcd(const Poly& a, const Poly& b) const { return walkprove::gcd(a, b); }
    void make_monic(Poly& n, Poly& d) const {
        uint64_t inv = invmod(d.lc(), p);
        n = scale(n, inv);
        d = scale(d, inv);
    }
};

// --- rational functions over a context's polynomial ring -----------------------

// Canonical form: gcd(num, den) = 1, den monic; zero is {0, 1}.
template <class Ctx>
struct RatF {
    typename Ctx::Poly num, den;
};

template <class Ctx>
RatF<Ctx> rf_make(const Ctx& C, typename Ctx::Poly n, typename Ctx::Poly d) {
    if (C.is_zero(d)) throw error("rational function: zero denominator");
    if (C.is_zero(n)) return {C.zero(), C.one()};
    auto g = C.gcd(n, d);
    n = C.divrem(n, g).first;
    d = C.divrem(d, g).first;
    C.make_monic(n, d);
    return {std::move(n), std::move(d)};
}

template <class Ctx>
RatF<Ctx> rf_zero(const Ctx& C) {
    return {C.zero(), C.one()};
}
template <class Ctx>
RatF<Ctx> rf_one(const Ctx& C) {
    return {C.one(), C.one()};
}
template <class Ctx>
RatF<Ctx> rf_from_poly(const Ctx& C, typename Ctx::Poly a) {
    return {std::move(a), C.one()};
}
template <class Ctx>
bool rf_is_zero(const Ctx& C, const RatF<Ctx>& a) {
    return C.is_zero(a.num);
}
template <class Ctx>
bool rf_eq(const Ctx& C, const RatF<Ctx>& a, const RatF<Ctx>& b) {
    return C.is_zero(C.sub(C.mul(a.num, b.den), C.mul(b.num, a.den)));
}
template <class Ctx>
RatF<Ctx> rf_add(const Ctx& C, const RatF<Ctx>& a, const RatF<Ctx>& b) {
    return rf_make(C, C.add(C.mul(a.num, b.den), C.mul(b.num, a.den)), C.mul(a.den, b.den));
}
template <class Ctx>
RatF<Ctx> rf_neg(const Ctx& C, const RatF<Ctx>& a) {
    return {C.neg(a.num), a.den};
}
template <class Ctx>
RatF<Ctx> rf_sub(const Ctx& C, const RatF<Ctx>& a, const RatF<Ctx>& b) {
    return rf_add(C, a, rf_neg(C, b));
}
template <class Ctx>
RatF<Ctx> rf_mul(const Ctx& C, const RatF<Ctx>& a, const RatF<Ctx>& b) {
    return rf_make(C, C.mul(a.num, b.num), C.mul(a.den, b.den));
}
template <class Ctx>
RatF<Ctx> rf_div(const Ctx& C, const RatF<Ctx>& a, const RatF<Ctx>& b) {
    if (rf_is_zero(C, b)) throw error("rational function: division by zero");
    return rf_make(C, C.mul(a.num, b.den), C.mul(a.den, b.num));
}
template <class Ctx>
RatF<Ctx> rf_derivative(const Ctx& C, const RatF<Ctx>& a) {
    auto n = C.sub(C.mul(C.derivative(a.num), a.den), C.mul(a.num, C.derivative(a.den)));
    return rf_make(C, std::move(n), C.mul(a.den, a.den));
}

// --- Ore operators Σ aᵢ(t)·D_t^i ----------------------------------------------

// The commutation rule is D_t·a(t) = a(t)·D_t + a'(t).
template <class Ctx>
struct OreOp {
    std::vector<RatF<Ctx>> a;  // a[i] multiplies D_t^i; empty = zero operator

    int order() const { return (int)a.size() - 1; }
    bool is_zero() const { return a.empty(); }
};

template <class Ctx>
void ore_trim(const Ctx& C, OreOp<Ctx>& L) {
    while (!L.a.empty() && rf_is_zero(C, L.a.back())) L.a.pop_back();
}

template <class Ctx>
OreOp<Ctx> ore_from_polys(const Ctx& C, const std::vector<typename Ctx::Poly>& coeffs) {
    OreOp<Ctx> L;
    for (const auto& c : coeffs) L.a.push_back(rf_from_poly(C, c));
    ore_trim(C, L);
    return L;
}

template <class Ctx>
OreOp<Ctx> ore_monomial(const Ctx& C, RatF<Ctx> c, size_t k) {
    OreOp<Ctx> L;
    if (rf_is_zero(C, c)) return L;
    L.a.assign(k + 1, rf_zero(C));
    L.a[k] = std::move(c);
    return L;
}

template <class Ctx>
bool ore_eq(const Ctx& C, const OreOp<Ctx>& A, const OreOp<Ctx>& B) {
    if (A.a.size() != B.a.size()) return false;
    for (size_t i = 0; i < A.a.size(); ++i)
        if (!rf_eq(C, A.a[i], B.a[i])) return false;
    return true;
}

template <class Ctx>
OreOp<Ctx> ore_add(const Ctx& C, const OreOp<Ctx>& A, const OreOp<Ctx>& B) {
    OreOp<Ctx> R;
    size_t n = std::max(A.a.size(), B.a.size());
    R.a.assign(n, rf_zero(C));
    for (size_t i = 0; i < n; ++i) {
        if (i < A.a.size()) R.a[i] = A.a[i];
        if (i < B.a.size()) R.a[i] = rf_add(C, R.a[i], B.a[i]);
    }
    ore_trim(C, R);
    return R;
}

template <class Ctx>
OreOp<Ctx> ore_neg(const Ctx& C, OreOp<Ctx> A) {
    for (auto& c : A.a) c = rf_neg(C, c);
    return A;
}

template <class Ctx>
OreOp<Ctx> ore_sub(const Ctx& C, const OreOp<Ctx>& A, const OreOp<Ctx>& B) {
    return ore_add(C, A, ore_neg(C, B));
}

template <class Ctx>
OreOp<Ctx> ore_scale(const Ctx& C, const OreOp<Ctx>& A, const RatF<Ctx>& c) {
    if (rf_is_zero(C, c)) return OreOp<Ctx>{};
    OreOp<Ctx> R = A;
    for (auto& v : R.a) v = rf_mul(C, v, c);
    ore_trim(C, R);
    return R;
}

// left-compose with D_t: D·(Σ aᵢDⁱ) = Σ (aᵢ'·Dⁱ + aᵢ·D^{i+1})
template <class Ctx>
OreOp<Ctx> ore_D_compose(const Ctx& C, const OreOp<Ctx>& A) {
    OreOp<Ctx> R;
    if (A.is_zero()) return R;
    R.a.assign(A.a.size() + 1, rf_zero(C));
    for (size_t i = 0; i < A.a.size(); ++i) {
        R.a[i] = rf_add(C, R.a[i], rf_derivative(C, A.a[i]));
        R.a[i + 1] = rf_add(C, R.a[i + 1], A.a[i]);
    }
    ore_trim(C, R);
    return R;
}

template <class Ctx>
OreOp<Ctx> ore_mul(const Ctx& C, const OreOp<Ctx>& A, const OreOp<Ctx>& B) {
    OreOp<Ctx> R;
    OreOp<Ctx> cur = B;  // D^i ∘ B
    for (size_t i = 0; i < A.a.size(); ++i) {
        if (!rf_is_zero(C, A.a[i])) R = ore_add(C, R, ore_scale(C, cur, A.a[i]));
        if (i + 1 < A.a.size()) cur = ore_D_compose(C, cur);
    }
    return R;
}

// L = Q·M + R with order(R) < order(M); unique over the rational-function field.
template <class Ctx>
std::pair<OreOp<Ctx>, OreOp<Ctx>> right_divide(const Ctx& C, const OreOp<Ctx>& L,
                                               const OreOp<Ctx>& M) {
    if (M.is_zero()) throw error("right_divide: zero divisor");
    OreOp<Ctx> Q, R = L;
    while (!R.is_zero() && R.order() >= M.order()) {
        size_t k = (size_t)(R.order() - M.order());
        RatF<Ctx> c = rf_div(C, R.a.back(), M.a.back());
        OreOp<Ctx> mono = ore_monomial(C, c, k);
        R = ore_sub(C, R, ore_mul(C, mono, M));
        Q = ore_add(C, Q, mono);
        if (!R.is_zero() && (size_t)R.order() >= k + M.a.size())
            throw error("right_divide: order did not drop");
    }
    return {Q, R};
}

template <class Ctx>
OreOp<Ctx> ore_monic(const Ctx& C, const OreOp<Ctx>& L) {
    if (L.is_zero()) return L;
    OreOp<Ctx> R = L;
    RatF<Ctx> inv = rf_div(C, rf_one(C), L.a.back());
    for (auto& v : R.a) v = rf_mul(C, v, inv);
    return R;
}

// monic greatest common right divisor
template <class Ctx>
OreOp<Ctx> gcrd(const Ctx& C, OreOp<Ctx> A, OreOp<Ctx> B) {
    if (A.is_zero() || B.is_zero()) throw error("gcrd: zero operator");
    while (!B.is_zero()) {
        OreOp<Ctx> R = right_divide(C, A, B).second;
        A = std::move(B);
        B = std::move(R);
    }
    return ore_monic(C, A);
}

// --- P-recurrences --------------------------------------------------------------

// Σ c[k](n)·u_{n+k} = 0, guaranteed for n ≥ first_valid; initial_values counts
// how many leading terms are needed before forward iteration can take over
// (vanishing points of the leading coefficient included).
struct PRecurrence {
    std::vector<QPoly> c;
    size_t first_valid = 0;
    size_t initial_values = 0;
    // indices ≥ first_valid where the normalized relation is not implied by the
    // source operator (common polynomial content vanished there)
    std::vector<size_t> invalid_at;

    int order() const { return (int)c.size() - 1; }
};

// Coefficient extraction t^j·D_t^i ↦ falling-factorial multipliers and shifts;
// output is content-free with a sign-normalized leading coefficient.
PRecurrence diffeq_to_rec(const OreOp<QCtx>& L);

// u_0 … u_n by forward iteration; needs rec.initial_values starting values.
std::vector<Rat> recurrence_unroll(const PRecurrence& rec, const std::vector<Rat>& initial,
                                   size_t n);

// --- conversions and curvature ---------------------------------------------------

// Operator annihilating every series root of the squarefree-in-T bivariate
// polynomial P(T, t); order ≤ deg_T P.
OreOp<QCtx> algeq_to_diffeq(const MultiPoly& P);

OreOp<FpCtx> reduce_op_mod(const OreOp<QCtx>& L, uint64_t p);

// true iff L right-divides D_t^e over F_p(t)
bool right_divides_power(const FpCtx& C, const OreOp<FpCtx>& L, uint64_t e);

// zero p-curvature: L right-divides D_t^p (only possible once p ≥ order)
bool p_curvature_zero(const FpCtx& C, const OreOp<FpCtx>& L);

// independent cross-check via Frobenius-linear matrix powering; dims r·p
bool p_curvature_zero_binary(const FpCtx& C, const OreOp<FpCtx>& L);

// L right-divides D_t^{r·p} (global nilpotency surrogate at one prime)
bool global_nilpotency_check(const FpCtx& C, const OreOp<FpCtx>& L);

// apply L (coefficients cleared to polynomials) to a truncated series mod p;
// result is valid to N − order(L) − max t-degree of the cleared coefficients
std::vector<uint64_t> ore_apply_fp(const FpCtx& C, const OreOp<FpCtx>& L,
                                   const std::vector<uint64_t>& f);

// canonical text form `a0(t) + a1(t)*Dt + ... + ar(t)*Dt^r`, integer-polynomial
// coefficients
std::string print_operator(const OreOp<QCtx>& L);
OreOp<QCtx> parse_operator(const std::string& text);

}  // namespace walkprove
