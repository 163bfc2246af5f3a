#include "walkprove/ore.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "walkprove/util.hpp"

namespace walkprove {

namespace {

QPoly qp_lcm(const QPoly& a, const QPoly& b) {
    if (a.is_zero() || b.is_zero()) return QPoly();
    return divrem(mul(a, b), gcd(a, b)).first;
}

// Common scale making every coefficient of every polynomial an integer, with
// unit gcd across the whole family.
Rat family_scale(const std::vector<QPoly>& ps) {
    Int g(0), l(1);
    for (const auto& q : ps)
        for (const auto& x : q.c) {
            if (x.is_zero()) continue;
            g = gcd(g, abs(x.num()));
            l = divexact(l * x.den(), gcd(l, x.den()));
        }
    if (g.is_zero()) return Rat(1);
    return Rat(l.str()) / Rat(g.str());
}

// Denominator-cleared, content-free, sign-normalized polynomial coefficients of
// a nonzero operator (scaling by a unit of Q(t) keeps the same left ideal).
std::vector<QPoly> cleared_coeffs(const OreOp<QCtx>& L) {
    if (L.is_zero()) return {};
    QCtx C;
    QPoly den = C.one();
    for (const auto& a : L.a) den = qp_lcm(den, a.den);
    std::vector<QPoly> out;
    out.reserve(L.a.size());
    for (const auto& a : L.a) out.push_back(mul(a.num, divrem(den, a.den).first));
    QPoly g;
    for (const auto& q : out) g = gcd(g, q);
    if (g.deg() > 0)
        for (auto& q : out) q = divrem(q, g).first;
    Rat s = family_scale(out);
    if (out.back().lc().sgn() < 0) s = -s;
    for (auto& q : out) q = scale(q, s);
    return out;
}

// Nonnegative integer roots, bounded scan behind the classical root bound.
std::vector<long> integer_roots_nonneg(const QPoly& q) {
    std::vector<long> roots;
    if (q.is_zero() || q.deg() == 0) return roots;
    QPoly w = primitive_part(q).first;
    size_t v = 0;
    while (v < w.c.size() && w.c[v].is_zero()) ++v;
    if (v > 0) {
        roots.push_back(0);
        w.c.erase(w.c.begin(), w.c.begin() + (long)v);
    }
    if (w.deg() == 0) return roots;
    Int lead = abs(w.lc().num());
    Int big(0);
    for (const auto& x : w.c) {
        Int ax = abs(x.num());
        if (big < ax) big = ax;
    }
    Int bound(1);
    while (lead * bound < lead + big) {
        bound = bound * Int(2);
        if (bound > Int(1L << 22)) throw error("integer root scan: bound too large");
    }
    long B = bound.to_long();
    for (long n = 1; n <= B; ++n)
        if (eval(w, Rat(n)).is_zero()) roots.push_back(n);
    return roots;
}

}  // namespace

// --- recurrences ----------------------------------------------------------------

PRecurrence diffeq_to_rec(const OreOp<QCtx>& L) {
    if (L.is_zero()) throw error("diffeq_to_rec: zero operator");
    std::vector<QPoly> A = cleared_coeffs(L);

    // t^j·D^i contributes coeff·(n+σ)(n+σ-1)…(n+σ-i+1)·u_{n+σ} with σ = i-j.
    std::map<int, QPoly> R;
    for (size_t i = 0; i < A.size(); ++i)
        for (int j = 0; j <= A[i].deg(); ++j) {
            Rat q = A[i].at((size_t)j);
            if (q.is_zero()) continue;
            int sigma = (int)i - j;
            QPoly f = QPoly::constant(q);
            for (size_t u = 0; u < i; ++u)
                f = mul(f, QPoly({Rat(sigma - (long)u), Rat(1)}));
            auto it = R.find(sigma);
            if (it == R.end())
                R.emplace(sigma, f);
            else
                it->second = add(it->second, f);
        }
    for (auto it = R.begin(); it != R.end();)
        it = it->second.is_zero() ? R.erase(it) : std::next(it);
    if (R.empty()) throw error("diffeq_to_rec: relation collapsed");

    int smin = R.begin()->first, smax = R.rbegin()->first;
    size_t s = (size_t)(smax - smin);
    size_t first_valid = (size_t)std::max(smin, 0);

    // c[k](n) = R_{smin+k}(n - smin)
    std::vector<QPoly> c(s + 1);
    for (auto& [sigma, f] : R) {
        QPoly shifted;
        for (size_t i = f.c.size(); i-- > 0;)
            shifted = add(mul(shifted, QPoly({Rat(-smin), Rat(1)})), QPoly::constant(f.c[i]));
        c[(size_t)(sigma - smin)] = shifted;
    }
    for (auto& q : c)
        if (q.c.empty()) q = QPoly();

    QPoly g;
    for (const auto& q : c) g = gcd(g, q);
    std::vector<long> lost;  // indices where removed content vanished: relation not implied there
    if (g.deg() > 0) {
        lost = integer_roots_nonneg(g);
        for (auto& q : c) q = divrem(q, g).first;
    }
    Rat sc = family_scale(c);
    if (c[s].lc().sgn() < 0) sc = -sc;
    for (auto& q : c) q = scale(q, sc);

    PRecurrence rec;
    rec.c = std::move(c);
    rec.first_valid = first_valid;
    rec.initial_values = first_valid + s;
    auto bump = [&](const std::vector<long>& rs) {
        for (long n : rs)
            if (n >= (long)first_valid)
                rec.initial_values = std::max(rec.initial_values, (size_t)n + s + 1);
    };
    bump(lost);
    bump(integer_roots_nonneg(rec.c[s]));
    for (long n : lost)
        if (n >= (long)first_valid) rec.invalid_at.push_back((size_t)n);
    return rec;
}

std::vector<Rat> recurrence_unroll(const PRecurrence& rec, const std::vector<Rat>& initial,
                                   size_t n) {
    size_t s = rec.c.size() - 1;
    if (rec.c.back().is_zero()) throw error("recurrence_unroll: zero leading coefficient");
    std::vector<Rat> u(initial.begin(), initial.end());
    if (u.size() >= n + 1) {
        u.resize(n + 1);
        return u;
    }
    if (u.size() < rec.initial_values)
        throw error("recurrence_unroll: need " + std::to_string(rec.initial_values) +
                    " initial values, got " + std::to_string(u.size()));
    // supplied values must satisfy the relation wherever it is fully covered
    for (size_t m = rec.first_valid; m + s + 1 <= u.size(); ++m) {
        if (std::find(rec.invalid_at.begin(), rec.invalid_at.end(), m) != rec.invalid_at.end())
            continue;
        Rat acc;
        for (size_t k = 0; k <= s; ++k) acc = acc + eval(rec.c[k], Rat((long)m)) * u[m + k];
        if (!acc.is_zero())
            throw error("recurrence_unroll: initial values violate the recurrence at n = " +
                        std::to_string(m));
    }
    while (u.size() <= n) {
        size_t m = u.size() - s;  // relation index producing u_{m+s}
        Rat lead = eval(rec.c[s], Rat((long)m));
        if (lead.is_zero())
            throw error("recurrence_unroll: leading coefficient vanishes at n = " +
                        std::to_string(m));
        Rat acc;
        for (size_t k = 0; k < s; ++k) acc = acc + eval(rec.c[k], Rat((long)m)) * u[m + k];
        u.push_back(-acc / lead);
    }
    return u;
}

// --- algebraic -> differential ----------------------------------------------------

namespace {

using RF = RatF<QCtx>;
using MP = std::vector<RF>;  // dense in T, ascending

void mp_trim(const QCtx& C, MP& a) {
    while (!a.empty() && rf_is_zero(C, a.back())) a.pop_back();
}
int mp_deg(const MP& a) { return (int)a.size() - 1; }

MP mp_add(const QCtx& C, const MP& a, const MP& b) {
    MP r(std::max(a.size(), b.size()), rf_zero(C));
    for (size_t i = 0; i < r.size(); ++i) {
        if (i < a.size()) r[i] = a[i];
        if (i < b.size()) r[i] = rf_add(C, r[i], b[i]);
    }
    mp_trim(C, r);
    return r;
}

MP mp_scale(const QCtx& C, const MP& a, const RF& k) {
    if (rf_is_zero(C, k)) return {};
    MP r = a;
    for (auto& x : r) x = rf_mul(C, x, k);
    mp_trim(C, r);
    return r;
}

MP mp_sub(const QCtx& C, const MP& a, const MP& b) {
    return mp_add(C, a, mp_scale(C, b, rf_from_poly(C, C.from_long(-1))));
}

MP mp_mul(const QCtx& C, const MP& a, const MP& b) {
    if (a.empty() || b.empty()) return {};
    MP r(a.size() + b.size() - 1, rf_zero(C));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = rf_add(C, r[i + j], rf_mul(C, a[i], b[j]));
    mp_trim(C, r);
    return r;
}

std::pair<MP, MP> mp_divrem(const QCtx& C, MP a, const MP& b) {
    if (b.empty()) throw error("polynomial division by zero");
    MP q;
    if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, rf_zero(C));
    while (a.size() >= b.size()) {
        RF f = rf_div(C, a.back(), b.back());
        size_t k = a.size() - b.size();
        q[k] = f;
        for (size_t i = 0; i < b.size(); ++i)
            a[k + i] = rf_sub(C, a[k + i], rf_mul(C, f, b[i]));
        a.pop_back();
        mp_trim(C, a);
    }
    mp_trim(C, q);
    return {q, a};
}

MP mp_monic(const QCtx& C, MP a) {
    if (a.empty()) return a;
    RF inv = rf_div(C, rf_one(C), a.back());
    for (auto& x : a) x = rf_mul(C, x, inv);
    return a;
}

MP mp_gcd(const QCtx& C, MP a, MP b) {
    while (!b.empty()) {
        MP r = mp_divrem(C, a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return mp_monic(C, std::move(a));
}

// u with u·a ≡ 1 (mod m); requires gcd(a, m) constant
MP mp_invert_mod(const QCtx& C, const MP& a, const MP& m) {
    MP r0 = a, r1 = m;
    MP s0 = {rf_one(C)}, s1 = {};
    while (!r1.empty()) {
        auto [q, r2] = mp_divrem(C, r0, r1);
        MP s2 = mp_sub(C, s0, mp_mul(C, q, s1));
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (mp_deg(r0) != 0) throw error("modular inverse: arguments share a factor");
    return mp_scale(C, s0, rf_div(C, rf_one(C), r0[0]));
}

MP mp_derivative_T(const QCtx& C, const MP& a) {
    MP r;
    for (size_t i = 1; i < a.size(); ++i)
        r.push_back(rf_mul(C, a[i], rf_from_poly(C, C.from_long((long)i))));
    mp_trim(C, r);
    return r;
}

MP mp_derivative_t(const QCtx& C, const MP& a) {
    MP r;
    for (const auto& x : a) r.push_back(rf_derivative(C, x));
    mp_trim(C, r);
    return r;
}

}  // namespace

OreOp<QCtx> algeq_to_diffeq(const MultiPoly& P) {
    QCtx C;
    for (const auto& [m, coef] : P.terms)
        if (m.e[VAR_x] != 0 || m.e[VAR_y] != 0)
            throw error("algeq_to_diffeq: polynomial must involve only T and t; specialize x and y first");
    int d = degree(P, VAR_T);
    if (d < 1) throw error("algeq_to_diffeq: polynomial does not depend on T");

    auto cs = coeffs_in(P, VAR_T);
    MP Pm;
    for (const auto& cpoly : cs) Pm.push_back(rf_from_poly(C, to_qpoly(cpoly, VAR_t)));
    mp_trim(C, Pm);

    if (mp_deg(mp_gcd(C, Pm, mp_derivative_T(C, Pm))) > 0)
        throw error("algeq_to_diffeq: polynomial is not squarefree in T; pass its squarefree part");

    Pm = mp_monic(C, std::move(Pm));
    MP PT = mp_derivative_T(C, Pm);
    MP Pt = mp_derivative_t(C, Pm);
    MP f1 = mp_divrem(C, mp_mul(C, mp_scale(C, Pt, rf_from_poly(C, C.from_long(-1))),
                                mp_invert_mod(C, PT, Pm)),
                      Pm)
                .second;

    // Der(Σ vᵢTⁱ) = Σ vᵢ'Tⁱ + (Σ i·vᵢT^{i-1})·f1, reduced mod Pm: the image of
    // d/dt on residue classes once T is pinned to a root of Pm.
    auto Der = [&](const MP& v) {
        MP r = mp_add(C, mp_derivative_t(C, v), mp_mul(C, mp_derivative_T(C, v), f1));
        return mp_divrem(C, r, Pm).second;
    };

    // successive derivative classes, eliminated incrementally; first null
    // combination gives the minimal-order annihilating operator
    struct Row {
        std::vector<RF> v;      // reduced vector, coefficients of T^0..T^{d-1}
        size_t piv;             // highest nonzero index (normalized to 1 there)
        std::vector<RF> combo;  // expression in the derivative classes
    };
    std::vector<Row> rows;
    MP w = {rf_zero(C), rf_one(C)};  // class of T, i.e. the root itself
    if (d == 1) w = mp_divrem(C, w, Pm).second;
    for (int i = 0; i <= d; ++i) {
        std::vector<RF> cur(static_cast<size_t>(d), rf_zero(C));
        for (size_t j = 0; j < w.size(); ++j) cur[j] = w[j];
        std::vector<RF> combo(static_cast<size_t>(i) + 1, rf_zero(C));
        combo[(size_t)i] = rf_one(C);
        for (const auto& row : rows) {
            RF f = cur[row.piv];
            if (rf_is_zero(C, f)) continue;
            for (size_t j = 0; j < cur.size(); ++j)
                cur[j] = rf_sub(C, cur[j], rf_mul(C, f, row.v[j]));
            for (size_t j = 0; j < row.combo.size(); ++j)
                combo[j] = rf_sub(C, combo[j], rf_mul(C, f, row.combo[j]));
        }
        size_t piv = cur.size();
        for (size_t j = cur.size(); j-- > 0;)
            if (!rf_is_zero(C, cur[j])) {
                piv = j;
                break;
            }
        if (piv == cur.size()) {
            OreOp<QCtx> L;
            L.a = std::move(combo);
            ore_trim(C, L);
            std::vector<QPoly> ints = cleared_coeffs(L);
            OreOp<QCtx> R;
            for (auto& q : ints) R.a.push_back(rf_from_poly(C, q));
            return R;
        }
        RF inv = rf_div(C, rf_one(C), cur[piv]);
        for (auto& x : cur) x = rf_mul(C, x, inv);
        for (auto& x : combo) x = rf_mul(C, x, inv);
        rows.push_back({std::move(cur), piv, std::move(combo)});
        if (i < d) w = Der(w);
    }
    throw error("algeq_to_diffeq: no dependency found");  // unreachable: d+1 vectors in dim d
}

// --- reductions and curvature ------------------------------------------------------

OreOp<FpCtx> reduce_op_mod(const OreOp<QCtx>& L, uint64_t p) {
    FpCtx C(p);
    OreOp<FpCtx> R;
    for (const auto& a : L.a) {
        FpPoly nn = reduce_mod(a.num, p);
        FpPoly dd = reduce_mod(a.den, p);
        if (dd.deg() != a.den.deg())
            throw error("reduce_op_mod: denominator degenerates at this prime");
        R.a.push_back(rf_make(C, nn, dd));
    }
    if (!L.is_zero() &&
        (R.a.empty() || R.a.size() != L.a.size() || C.is_zero(R.a.back().num)))
        throw error("reduce_op_mod: operator order drops at this prime");
    ore_trim(C, R);
    return R;
}

namespace {

// denominator-cleared coefficients with common factor removed
std::vector<FpPoly> cleared_coeffs_fp(const FpCtx& C, const OreOp<FpCtx>& L) {
    FpPoly den = C.one();
    for (const auto& a : L.a) den = divrem(mul(den, a.den), gcd(den, a.den)).first;
    std::vector<FpPoly> A;
    A.reserve(L.a.size());
    for (const auto& a : L.a) A.push_back(mul(a.num, divrem(den, a.den).first));
    FpPoly g = C.zero();
    for (const auto& q : A) g = gcd(g, q);
    if (g.deg() > 0)
        for (auto& q : A) q = divrem(q, g).first;
    return A;
}

FpPoly fp_pow(const FpPoly& a, uint64_t e, const FpCtx& C) {
    FpPoly r = C.one(), b = a;
    while (e) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

}  // namespace

bool right_divides_power(const FpCtx& C, const OreOp<FpCtx>& L, uint64_t e) {
    if (L.is_zero()) throw error("right_divides_power: zero operator");
    size_t r = (size_t)L.order();
    if (r == 0) return true;
    if (e < r) return false;

    std::vector<FpPoly> A = cleared_coeffs_fp(C, L);
    const FpPoly& Ar = A[r];
    FpPoly Arp = derivative(Ar);

    // rem(D^k, L) = Ar^{-(k-r+1)}·Σ V[i]·D^i, tracked without fractions
    std::vector<FpPoly> V(r, C.zero());
    for (size_t i = 0; i < r; ++i) V[i] = neg(A[i]);
    uint64_t exp = 1;
    for (uint64_t k = r; k < e; ++k, ++exp) {
        uint64_t es = exp % C.p;
        std::vector<FpPoly> W(r, C.zero());
        for (size_t i = 0; i < r; ++i) {
            FpPoly t1 = sub(mul(derivative(V[i]), Ar), scale(mul(V[i], Arp), es));
            if (i > 0) t1 = add(t1, mul(V[i - 1], Ar));
            W[i] = sub(t1, mul(V[r - 1], A[i]));
        }
        V = std::move(W);
    }
    for (const auto& v : V)
        if (!v.is_zero()) return false;
    return true;
}

bool p_curvature_zero(const FpCtx& C, const OreOp<FpCtx>& L) {
    return right_divides_power(C, L, C.p);
}

bool global_nilpotency_check(const FpCtx& C, const OreOp<FpCtx>& L) {
    if (L.is_zero()) throw error("global_nilpotency_check: zero operator");
    if (L.order() == 0) return true;
    return right_divides_power(C, L, (uint64_t)L.order() * C.p);
}

// Matrix of t^p-linear map a_r(s)·(d/dt) on F_p[t,D]/(ideal), basis t^i·D^j with
// i < p, j < r, entries in F_p[s] for s = t^p; its p-th power kills the class of
// 1 exactly when L right-divides D^p.
bool p_curvature_zero_binary(const FpCtx& C, const OreOp<FpCtx>& L) {
    if (L.is_zero()) throw error("p_curvature_zero_binary: zero operator");
    size_t r = (size_t)L.order();
    if (r == 0) return true;
    uint64_t p = C.p;
    if (r * p > 128) throw error("p_curvature_zero_binary: instance too large");
    size_t dim = r * (size_t)p;
    auto idx = [&](uint64_t i, size_t j) { return j * (size_t)p + (size_t)i; };

    std::vector<FpPoly> A = cleared_coeffs_fp(C, L);
    FpPoly ar_pm1 = fp_pow(A[r], p - 1, C);

    std::vector<std::vector<FpPoly>> M(dim, std::vector<FpPoly>(dim, C.zero()));
    for (size_t j = 0; j < r; ++j)
        for (uint64_t i = 0; i < p; ++i) {
            size_t col = idx(i, j);
            if (i > 0)
                M[idx(i - 1, j)][col] =
                    add(M[idx(i - 1, j)][col], scale(A[r], i % p));
            if (j + 1 < r) {
                M[idx(i, j + 1)][col] = add(M[idx(i, j + 1)][col], A[r]);
            } else {
                // t^i·D^r ≡ -Σ_m t^i·A_m/A_r·D^m; fold a_r(t)^{p-1}/a_r(t^p)
                for (size_t m = 0; m < r; ++m) {
                    FpPoly Q = mul(A[m], ar_pm1);
                    for (size_t E = 0; E < Q.c.size(); ++E) {
                        if (Q.c[E] == 0) continue;
                        uint64_t Ei = (uint64_t)E + i;  // extra t^i
                        size_t row = idx(Ei % p, m);
                        size_t sdeg = (size_t)(Ei / p);
                        FpPoly& cell = M[row][col];
                        if (cell.c.size() <= sdeg) cell.c.resize(sdeg + 1, 0);
                        cell.c[sdeg] = submod(cell.c[sdeg], Q.c[E], p);
                        cell.normalize();
                    }
                }
            }
        }

    auto mat_mul = [&](const std::vector<std::vector<FpPoly>>& X,
                       const std::vector<std::vector<FpPoly>>& Y) {
        std::vector<std::vector<FpPoly>> Z(dim, std::vector<FpPoly>(dim, C.zero()));
        for (size_t a = 0; a < dim; ++a)
            for (size_t b = 0; b < dim; ++b) {
                FpPoly acc = C.zero();
                for (size_t k = 0; k < dim; ++k) {
                    if (X[a][k].is_zero() || Y[k][b].is_zero()) continue;
                    acc = add(acc, mul(X[a][k], Y[k][b]));
                }
                Z[a][b] = std::move(acc);
            }
        return Z;
    };

    // M^p by repeated squaring
    std::vector<std::vector<FpPoly>> base = M, acc;
    bool have = false;
    uint64_t e = p;
    while (e) {
        if (e & 1) {
            acc = have ? mat_mul(acc, base) : base;
            have = true;
        }
        e >>= 1;
        if (e) base = mat_mul(base, base);
    }
    for (size_t row = 0; row < dim; ++row)
        if (!acc[row][idx(0, 0)].is_zero()) return false;
    return true;
}

std::vector<uint64_t> ore_apply_fp(const FpCtx& C, const OreOp<FpCtx>& L,
                                   const std::vector<uint64_t>& f) {
    if (L.is_zero()) throw error("ore_apply_fp: zero operator");
    size_t r = (size_t)L.order();
    if (f.size() < r + 1) throw error("ore_apply_fp: series too short");
    std::vector<FpPoly> A = cleared_coeffs_fp(C, L);
    size_t out_n = f.size() - r;
    std::vector<uint64_t> out(out_n, 0);
    std::vector<uint64_t> der = f;  // i-th pass holds f^{(i)}
    for (size_t i = 0; i <= r; ++i) {
        for (size_t m = 0; m < out_n; ++m) {
            uint64_t acc = 0;
            size_t jmax = std::min((size_t)std::max(A[i].deg(), -1), m);
            if (A[i].deg() >= 0)
                for (size_t j = 0; j <= jmax; ++j)
                    acc = addmod(acc, mulmod(A[i].at(j), der[m - j], C.p), C.p);
            out[m] = addmod(out[m], acc, C.p);
        }
        if (i < r) {
            for (size_t n2 = 0; n2 + 1 < der.size(); ++n2)
                der[n2] = mulmod(der[n2 + 1], (n2 + 1) % C.p, C.p);
            der.pop_back();
        }
    }
    return out;
}

// --- text form -----------------------------------------------------------------

std::string print_operator(const OreOp<QCtx>& L) {
    if (L.is_zero()) return "0";
    std::vector<QPoly> A = cleared_coeffs(L);
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < A.size(); ++i) {
        if (A[i].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << to_string(A[i], "t") << ")";
        if (i == 1)
            os << "*Dt";
        else if (i > 1)
            os << "*Dt^" << i;
    }
    return os.str();
}

OreOp<QCtx> parse_operator(const std::string& text) {
    QCtx C;
    OreOp<QCtx> L;
    std::string body = trim(text);
    if (body.empty()) throw error("parse_operator: empty input");
    if (body == "0") return L;

    // split at '+' outside parentheses
    std::vector<std::string> chunks;
    int depth = 0;
    size_t start = 0;
    for (size_t i = 0; i < body.size(); ++i) {
        char ch = body[i];
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (ch == '+' && depth == 0) {
            chunks.push_back(body.substr(start, i - start));
            start = i + 1;
        }
    }
    chunks.push_back(body.substr(start));

    for (auto& raw : chunks) {
        std::string term = trim(raw);
        if (term.empty() || term[0] != '(')
            throw error("parse_operator: expected parenthesized coefficient in '" + term + "'");
        int dep = 0;
        size_t close = std::string::npos;
        for (size_t i = 0; i < term.size(); ++i) {
            if (term[i] == '(') ++dep;
            if (term[i] == ')' && --dep == 0) {
                close = i;
                break;
            }
        }
        if (close == std::string::npos) throw error("parse_operator: unbalanced parentheses");
        std::string inner = term.substr(1, close - 1);
        std::string rest = trim(term.substr(close + 1));
        size_t k = 0;
        if (!rest.empty()) {
            if (rest.rfind("*Dt", 0) != 0)
                throw error("parse_operator: expected '*Dt' after coefficient, got '" + rest + "'");
            std::string tail = rest.substr(3);
            if (tail.empty()) {
                k = 1;
            } else {
                if (tail[0] != '^') throw error("parse_operator: malformed power '" + rest + "'");
                try {
                    k = (size_t)std::stoul(tail.substr(1));
                } catch (const std::exception&) {
                    throw error("parse_operator: malformed power '" + rest + "'");
                }
            }
        }
        MultiPoly mp = parse_multipoly(inner);
        for (const auto& [m, coef] : mp.terms)
            if (m.e[VAR_T] != 0 || m.e[VAR_x] != 0 || m.e[VAR_y] != 0)
                throw error("parse_operator: coefficient must be a polynomial in t");
        QPoly q = to_qpoly(mp, VAR_t);
        if (L.a.size() < k + 1) L.a.resize(k + 1, rf_zero(C));
        L.a[k] = rf_add(C, L.a[k], rf_from_poly(C, q));
    }
    ore_trim(C, L);
    return L;
}

}  // namespace walkprove
