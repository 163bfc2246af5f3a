#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "walkprove/bigint.hpp"

namespace walkprove {

// Variable slots, in lexicographic precedence order.
enum : int { VAR_T = 0, VAR_t = 1, VAR_x = 2, VAR_y = 3 };
inline constexpr std::array<const char*, 4> kVarNames = {"T", "t", "x", "y"};

struct Mono {
    std::array<int16_t, 4> e{0, 0, 0, 0};

    friend bool operator<(const Mono& a, const Mono& b) { return a.e < b.e; }
    friend bool operator==(const Mono& a, const Mono& b) { return a.e == b.e; }
    Mono operator+(const Mono& o) const {
        Mono r;
        for (int i = 0; i < 4; ++i) r.e[i] = (int16_t)(e[i] + o.e[i]);
        return r;
    }
};

// Sparse polynomial in Z[T,t,x,y]; terms holds nonzero coefficients only.
struct MultiPoly {
    std::map<Mono, Int> terms;

    MultiPoly() = default;
    explicit MultiPoly(const Int& c) {
        if (!c.is_zero()) terms.emplace(Mono{}, c);
    }
    static MultiPoly var(int v, int e = 1) {
        MultiPoly r;
        Mono m;
        m.e[(size_t)v] = (int16_t)e;
        r.terms.emplace(m, Int(1));
        return r;
    }
    static MultiPoly term(const Int& c, const Mono& m) {
        MultiPoly r;
        if (!c.is_zero()) r.terms.emplace(m, c);
        return r;
    }

    bool is_zero() const { return terms.empty(); }
    size_t n_terms() const { return terms.size(); }
    void prune() {
        for (auto it = terms.begin(); it != terms.end();)
            it = it->second.is_zero() ? terms.erase(it) : std::next(it);
    }
    // Lex-leading term (T > t > x > y).
    const std::pair<const Mono, Int>& lead() const {
        if (terms.empty()) throw error("MultiPoly: leading term of zero");
        return *terms.rbegin();
    }
};

MultiPoly add(const MultiPoly& a, const MultiPoly& b);
MultiPoly sub(const MultiPoly& a, const MultiPoly& b);
MultiPoly neg(const MultiPoly& a);
MultiPoly mul(const MultiPoly& a, const MultiPoly& b);
MultiPoly mul_term(const MultiPoly& a, const Int& c, const Mono& m);
MultiPoly scale(const MultiPoly& a, const Int& k);
MultiPoly pow(const MultiPoly& a, int e);
MultiPoly derivative(const MultiPoly& a, int var);

int degree(const MultiPoly& a, int var);
int total_degree(const MultiPoly& a);
// Coefficient of var^k, as a polynomial in the remaining variables.
MultiPoly coeff_of(const MultiPoly& a, int var, int k);
// All coefficients [0..deg] in var.
std::vector<MultiPoly> coeffs_in(const MultiPoly& a, int var);
// Substitute a polynomial for a variable (Horner evaluation).
MultiPoly subst(const MultiPoly& a, int var, const MultiPoly& value);
// Substitute an integer for a variable.
MultiPoly specialize(const MultiPoly& a, int var, const Int& value);
// Exchange two variable slots.
MultiPoly swap_vars(const MultiPoly& a, int v1, int v2);
Int eval(const MultiPoly& a, const std::array<Int, 4>& point);
uint64_t eval_mod(const MultiPoly& a, const std::array<uint64_t, 4>& point, uint64_t p);

// Integer content (gcd of coefficients), zero polynomial -> 0.
Int content(const MultiPoly& a);
// Divide by integer content and by the common monomial factor; flip sign so the
// lex-leading coefficient is positive.
MultiPoly canonicalize(const MultiPoly& a);
// Exact division test: does d divide a in Z[T,t,x,y]?  On success writes a/d.
bool divides(const MultiPoly& d, const MultiPoly& a, MultiPoly* quotient = nullptr);

std::string to_string(const MultiPoly& a,
                      const std::array<const char*, 4>& names = kVarNames);
MultiPoly parse_multipoly(const std::string& text,
                          const std::array<const char*, 4>& names = kVarNames);

// Conversions for polynomials supported on a single variable.  from_qpoly
// requires integer coefficients (clear denominators first).
struct QPoly;
QPoly to_qpoly(const MultiPoly& a, int var);
MultiPoly from_qpoly(const QPoly& a, int var);

struct ResultantOptions {
    int max_primes = 24;       // give up past this many moduli
    int stable_needed = 2;     // CRT result must repeat this many times
    int verify_primes = 1;     // fresh moduli used for a final check
    int threads = 1;
};

// Resultant of a and b with respect to `var`, eliminating it.  Computed by
// evaluation/interpolation over word-size prime fields with CRT stabilization
// and an independent final check at fresh moduli.
MultiPoly resultant(const MultiPoly& a, const MultiPoly& b, int var,
                    const ResultantOptions& opt = {});

}  // namespace walkprove
