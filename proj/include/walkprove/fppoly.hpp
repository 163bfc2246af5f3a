#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "walkprove/fp.hpp"

namespace walkprove {

// Dense univariate polynomials over Z/pZ, coefficients ascending. The zero
// polynomial is the empty vector; nonzero polynomials keep a nonzero top
// coefficient (normalize() trims).
struct FpPoly {
    uint64_t p = 0;
    std::vector<uint64_t> c;

    FpPoly() = default;
    explicit FpPoly(uint64_t prime) : p(prime) {}
    FpPoly(uint64_t prime, std::vector<uint64_t> coeffs) : p(prime), c(std::move(coeffs)) { normalize(); }

    int deg() const { return (int)c.size() - 1; }  // -1 for zero
    bool is_zero() const { return c.empty(); }
    uint64_t lc() const { return c.empty() ? 0 : c.back(); }
    uint64_t at(size_t i) const { return i < c.size() ? c[i] : 0; }
    void normalize() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    static FpPoly monomial(uint64_t p, size_t n, uint64_t coef = 1) {
        FpPoly r(p);
        if (coef % p) {
            r.c.assign(n + 1, 0);
            r.c[n] = coef % p;
        }
        return r;
    }
    static FpPoly constant(uint64_t p, uint64_t v) { return monomial(p, 0, v); }
};

FpPoly add(const FpPoly& a, const FpPoly& b);
FpPoly sub(const FpPoly& a, const FpPoly& b);
FpPoly neg(const FpPoly& a);
FpPoly scale(const FpPoly& a, uint64_t k);
FpPoly mul(const FpPoly& a, const FpPoly& b);          // dispatches NTT/schoolbook
FpPoly mul_trunc(const FpPoly& a, const FpPoly& b, size_t n);
FpPoly shift(const FpPoly& a, int k);                  // times t^k, k >= 0
FpPoly derivative(const FpPoly& a);
uint64_t eval(const FpPoly& a, uint64_t x);
std::pair<FpPoly, FpPoly> divrem(const FpPoly& a, const FpPoly& b);
FpPoly gcd(FpPoly a, FpPoly b);                        // monic
// g = gcd(a, b) monic with g = s*a + t*b
void xgcd(const FpPoly& a, const FpPoly& b, FpPoly& g, FpPoly& s, FpPoly& t);
FpPoly series_inverse(const FpPoly& a, size_t n);      // 1/a mod t^n, a(0) != 0
FpPoly monic(const FpPoly& a);

// Lagrange interpolation through (xs[i], ys[i]), distinct xs.
FpPoly interpolate(uint64_t p, const std::vector<uint64_t>& xs, const std::vector<uint64_t>& ys);

// Resultant of a and b, matching the Sylvester determinant convention.
uint64_t resultant(FpPoly a, FpPoly b);

// Cauchy interpolation: the rational function n/d with deg n <= dn,
// deg d <= dd, d monic, d(xs[i]) != 0, matching all points. Returns false if
// no such function exists. Needs dn + dd + 1 <= #points.
bool rat_interp(uint64_t p, const std::vector<uint64_t>& xs, const std::vector<uint64_t>& ys,
                int dn, int dd, FpPoly& num, FpPoly& den);

// raw in-place power-of-two NTT helpers (size a power of two <= 2^two_adicity)
void ntt(std::vector<uint64_t>& a, bool inverse, const FpField& F);

}  // namespace walkprove
