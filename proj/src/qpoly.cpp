#include "walkprove/qpoly.hpp"

#include <algorithm>
#include <sstream>

namespace walkprove {

QPoly QPoly::monomial(int d, const Rat& v) {
    QPoly r;
    if (v.is_zero()) return r;
    r.c.assign((size_t)d + 1, Rat());
    r.c.back() = v;
    return r;
}

QPoly add(const QPoly& a, const QPoly& b) {
    QPoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()));
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.at(i) + b.at(i);
    r.normalize();
    return r;
}

QPoly sub(const QPoly& a, const QPoly& b) {
    QPoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()));
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.at(i) - b.at(i);
    r.normalize();
    return r;
}

QPoly neg(const QPoly& a) {
    QPoly r = a;
    for (auto& x : r.c) x = -x;
    return r;
}

QPoly mul(const QPoly& a, const QPoly& b) {
    if (a.is_zero() || b.is_zero()) return QPoly();
    QPoly r;
    r.c.assign(a.c.size() + b.c.size() - 1, Rat());
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i].is_zero()) continue;
        for (size_t j = 0; j < b.c.size(); ++j) {
            if (b.c[j].is_zero()) continue;
            r.c[i + j] += a.c[i] * b.c[j];
        }
    }
    r.normalize();
    return r;
}

QPoly scale(const QPoly& a, const Rat& k) {
    if (k.is_zero()) return QPoly();
    QPoly r = a;
    for (auto& x : r.c) x *= k;
    return r;
}

QPoly derivative(const QPoly& a) {
    QPoly r;
    if (a.c.size() <= 1) return r;
    r.c.resize(a.c.size() - 1);
    for (size_t i = 1; i < a.c.size(); ++i) r.c[i - 1] = a.c[i] * Rat((long)i);
    r.normalize();
    return r;
}

Rat eval(const QPoly& a, const Rat& x) {
    Rat r;
    for (size_t i = a.c.size(); i-- > 0;) r = r * x + a.c[i];
    return r;
}

std::pair<QPoly, QPoly> divrem(const QPoly& a, const QPoly& b) {
    if (b.is_zero()) throw error("QPoly divrem: division by zero");
    if (a.deg() < b.deg()) return {QPoly(), a};
    QPoly q, r = a;
    q.c.assign((size_t)(a.deg() - b.deg() + 1), Rat());
    Rat binv = Rat(1) / b.lc();
    for (int k = a.deg() - b.deg(); k >= 0; --k) {
        if ((int)r.c.size() - 1 < k + b.deg()) continue;
        Rat coef = r.c[(size_t)(k + b.deg())] * binv;
        if (coef.is_zero()) continue;
        q.c[(size_t)k] = coef;
        for (int i = 0; i <= b.deg(); ++i) r.c[(size_t)(k + i)] -= coef * b.c[(size_t)i];
    }
    r.normalize();
    q.normalize();
    return {q, r};
}

QPoly gcd(QPoly a, QPoly b) {
    while (!b.is_zero()) {
        // keep coefficients small: work with the primitive part at each step
        b = primitive_part(b).first;
        QPoly r = divrem(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return scale(a, Rat(1) / a.lc());
}

std::pair<QPoly, Rat> primitive_part(const QPoly& a) {
    if (a.is_zero()) return {a, Rat(1)};
    // lcm of denominators, then gcd of numerators
    Int l(1), g(0);
    for (const auto& x : a.c) {
        if (x.is_zero()) continue;
        Int d = x.den();
        l = divexact(l * d, gcd(l, d));
    }
    QPoly prim = a;
    for (auto& x : prim.c) x *= Rat(l);
    for (const auto& x : prim.c) {
        if (x.is_zero()) continue;
        g = gcd(g, x.num());
    }
    if (g.is_zero()) g = Int(1);
    if (prim.lc().sgn() < 0) g = -g;
    Rat scalar = Rat(g, l);
    for (auto& x : prim.c) x /= Rat(g);
    return {std::move(prim), std::move(scalar)};
}

FpPoly reduce_mod(const QPoly& a, uint64_t p) {
    FpPoly r(p);
    r.c.resize(a.c.size(), 0);
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i].is_zero() ? 0 : mod_u64(a.c[i], p);
    r.normalize();
    return r;
}

std::string to_string(const QPoly& a, const std::string& var) {
    if (a.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = a.c.size(); i-- > 0;) {
        const Rat& x = a.c[i];
        if (x.is_zero()) continue;
        Rat ax = x.sgn() < 0 ? -x : x;
        if (first) {
            if (x.sgn() < 0) os << "-";
            first = false;
        } else {
            os << (x.sgn() < 0 ? " - " : " + ");
        }
        bool unit = ax == Rat(1);
        if (i == 0) {
            os << ax.str();
        } else {
            if (!unit) os << ax.str() << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

}  // namespace walkprove
