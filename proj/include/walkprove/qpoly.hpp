#pragma once

#include <string>
#include <utility>
#include <vector>

#include "walkprove/bigint.hpp"
#include "walkprove/fppoly.hpp"

namespace walkprove {

// Dense univariate polynomial over Q, ascending coefficients; empty = zero.
struct QPoly {
    std::vector<Rat> c;

    QPoly() = default;
    explicit QPoly(std::vector<Rat> coeffs) : c(std::move(coeffs)) { normalize(); }

    void normalize() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int deg() const { return (int)c.size() - 1; }
    const Rat& lc() const {
        static const Rat zero;
        return c.empty() ? zero : c.back();
    }
    Rat at(size_t i) const { return i < c.size() ? c[i] : Rat(); }

    static QPoly constant(const Rat& v) {
        QPoly r;
        if (!v.is_zero()) r.c.push_back(v);
        return r;
    }
    static QPoly monomial(int d, const Rat& v = Rat(1));
};

QPoly add(const QPoly& a, const QPoly& b);
QPoly sub(const QPoly& a, const QPoly& b);
QPoly neg(const QPoly& a);
QPoly mul(const QPoly& a, const QPoly& b);
QPoly scale(const QPoly& a, const Rat& k);
QPoly derivative(const QPoly& a);
Rat eval(const QPoly& a, const Rat& x);
std::pair<QPoly, QPoly> divrem(const QPoly& a, const QPoly& b);
QPoly gcd(QPoly a, QPoly b);  // monic
// Primitive integer part: smallest positive multiple with integer coprime coefficients.
// Returns (primitive poly, scalar) with a = scalar * primitive.
std::pair<QPoly, Rat> primitive_part(const QPoly& a);
FpPoly reduce_mod(const QPoly& a, uint64_t p);
std::string to_string(const QPoly& a, const std::string& var = "t");

}  // namespace walkprove
