#include "walkprove/multipoly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "walkprove/fp.hpp"
#include "walkprove/fppoly.hpp"
#include "walkprove/qpoly.hpp"
#include "walkprove/util.hpp"

namespace walkprove {

MultiPoly add(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly r = a;
    for (const auto& [m, c] : b.terms) {
        auto it = r.terms.find(m);
        if (it == r.terms.end()) {
            r.terms.emplace(m, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) r.terms.erase(it);
        }
    }
    return r;
}

MultiPoly sub(const MultiPoly& a, const MultiPoly& b) { return add(a, neg(b)); }

MultiPoly neg(const MultiPoly& a) {
    MultiPoly r = a;
    for (auto& [m, c] : r.terms) c = -c;
    return r;
}

MultiPoly mul(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly r;
    if (a.is_zero() || b.is_zero()) return r;
    const MultiPoly& small = a.n_terms() <= b.n_terms() ? a : b;
    const MultiPoly& big = a.n_terms() <= b.n_terms() ? b : a;
    for (const auto& [ms, cs] : small.terms) {
        for (const auto& [mb, cb] : big.terms) {
            Mono m = ms + mb;
            auto it = r.terms.find(m);
            if (it == r.terms.end()) {
                r.terms.emplace(m, cs * cb);
            } else {
                it->second += cs * cb;
            }
        }
    }
    r.prune();
    return r;
}

MultiPoly mul_term(const MultiPoly& a, const Int& c, const Mono& m) {
    MultiPoly r;
    if (c.is_zero()) return r;
    for (const auto& [ma, ca] : a.terms) r.terms.emplace(ma + m, ca * c);
    return r;
}

MultiPoly scale(const MultiPoly& a, const Int& k) { return mul_term(a, k, Mono{}); }

MultiPoly pow(const MultiPoly& a, int e) {
    if (e < 0) throw error("MultiPoly pow: negative exponent");
    MultiPoly r(Int(1));
    MultiPoly base = a;
    while (e) {
        if (e & 1) r = mul(r, base);
        e >>= 1;
        if (e) base = mul(base, base);
    }
    return r;
}

MultiPoly derivative(const MultiPoly& a, int var) {
    MultiPoly r;
    for (const auto& [m, c] : a.terms) {
        int e = m.e[(size_t)var];
        if (e == 0) continue;
        Mono m2 = m;
        m2.e[(size_t)var] = (int16_t)(e - 1);
        r.terms.emplace(m2, c * Int((long)e));
    }
    return r;
}

int degree(const MultiPoly& a, int var) {
    int d = -1;
    for (const auto& [m, c] : a.terms) d = std::max(d, (int)m.e[(size_t)var]);
    return d;
}

int total_degree(const MultiPoly& a) {
    int d = -1;
    for (const auto& [m, c] : a.terms)
        d = std::max(d, (int)m.e[0] + m.e[1] + m.e[2] + m.e[3]);
    return d;
}

MultiPoly coeff_of(const MultiPoly& a, int var, int k) {
    MultiPoly r;
    for (const auto& [m, c] : a.terms) {
        if (m.e[(size_t)var] != k) continue;
        Mono m2 = m;
        m2.e[(size_t)var] = 0;
        r.terms.emplace(m2, c);
    }
    return r;
}

std::vector<MultiPoly> coeffs_in(const MultiPoly& a, int var) {
    int d = degree(a, var);
    std::vector<MultiPoly> out((size_t)std::max(d + 1, 1));
    for (const auto& [m, c] : a.terms) {
        Mono m2 = m;
        m2.e[(size_t)var] = 0;
        out[(size_t)m.e[(size_t)var]].terms.emplace(m2, c);
    }
    return out;
}

MultiPoly subst(const MultiPoly& a, int var, const MultiPoly& value) {
    auto cs = coeffs_in(a, var);
    MultiPoly r;
    for (size_t i = cs.size(); i-- > 0;) r = add(mul(r, value), cs[i]);
    return r;
}

MultiPoly specialize(const MultiPoly& a, int var, const Int& value) {
    MultiPoly r;
    for (const auto& [m, c] : a.terms) {
        Mono m2 = m;
        m2.e[(size_t)var] = 0;
        Int v = c * pow(value, (unsigned long)m.e[(size_t)var]);
        if (v.is_zero()) continue;
        auto it = r.terms.find(m2);
        if (it == r.terms.end()) {
            r.terms.emplace(m2, std::move(v));
        } else {
            it->second += v;
        }
    }
    r.prune();
    return r;
}

MultiPoly swap_vars(const MultiPoly& a, int v1, int v2) {
    MultiPoly r;
    for (const auto& [m, c] : a.terms) {
        Mono m2 = m;
        std::swap(m2.e[(size_t)v1], m2.e[(size_t)v2]);
        r.terms.emplace(m2, c);
    }
    return r;
}

Int eval(const MultiPoly& a, const std::array<Int, 4>& point) {
    Int r;
    for (const auto& [m, c] : a.terms) {
        Int v = c;
        for (int i = 0; i < 4; ++i)
            if (m.e[(size_t)i]) v *= pow(point[(size_t)i], (unsigned long)m.e[(size_t)i]);
        r += v;
    }
    return r;
}

uint64_t eval_mod(const MultiPoly& a, const std::array<uint64_t, 4>& point, uint64_t p) {
    std::array<std::vector<uint64_t>, 4> pows;
    for (int i = 0; i < 4; ++i) {
        int d = degree(a, i);
        pows[(size_t)i].assign((size_t)std::max(d + 1, 1), 1);
        for (int e = 1; e <= d; ++e)
            pows[(size_t)i][(size_t)e] = mulmod(pows[(size_t)i][(size_t)e - 1], point[(size_t)i] % p, p);
    }
    uint64_t r = 0;
    for (const auto& [m, c] : a.terms) {
        uint64_t v = mod_u64(c, p);
        for (int i = 0; i < 4; ++i)
            if (m.e[(size_t)i]) v = mulmod(v, pows[(size_t)i][(size_t)m.e[(size_t)i]], p);
        r = addmod(r, v, p);
    }
    return r;
}

Int content(const MultiPoly& a) {
    Int g(0);
    for (const auto& [m, c] : a.terms) {
        g = gcd(g, c);
        if (g.is_one()) break;
    }
    return g;
}

MultiPoly canonicalize(const MultiPoly& a) {
    if (a.is_zero()) return a;
    Int g = content(a);
    Mono shift;
    shift.e = {INT16_MAX, INT16_MAX, INT16_MAX, INT16_MAX};
    for (const auto& [m, c] : a.terms)
        for (int i = 0; i < 4; ++i) shift.e[(size_t)i] = std::min(shift.e[(size_t)i], m.e[(size_t)i]);
    if (a.terms.rbegin()->second.sgn() < 0) g = -g;
    MultiPoly r;
    for (const auto& [m, c] : a.terms) {
        Mono m2;
        for (int i = 0; i < 4; ++i) m2.e[(size_t)i] = (int16_t)(m.e[(size_t)i] - shift.e[(size_t)i]);
        r.terms.emplace(m2, divexact(c, g));
    }
    return r;
}

bool divides(const MultiPoly& d, const MultiPoly& a, MultiPoly* quotient) {
    if (d.is_zero()) return a.is_zero();
    MultiPoly rem = a, q;
    const auto& [dm, dc] = d.lead();
    while (!rem.is_zero()) {
        const auto& [rm, rc] = rem.lead();
        Mono qm;
        for (int i = 0; i < 4; ++i) {
            int e = rm.e[(size_t)i] - dm.e[(size_t)i];
            if (e < 0) return false;
            qm.e[(size_t)i] = (int16_t)e;
        }
        if (!divides(dc, rc)) return false;
        Int qc = divexact(rc, dc);
        q.terms.emplace(qm, qc);
        rem = sub(rem, mul_term(d, qc, qm));
    }
    if (quotient) *quotient = std::move(q);
    return true;
}

std::string to_string(const MultiPoly& a, const std::array<const char*, 4>& names) {
    if (a.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = a.terms.rbegin(); it != a.terms.rend(); ++it) {
        const auto& [m, c] = *it;
        Int ac = abs(c);
        if (first) {
            if (c.sgn() < 0) os << "-";
            first = false;
        } else {
            os << (c.sgn() < 0 ? " - " : " + ");
        }
        bool constant = m == Mono{};
        bool wrote = false;
        if (!ac.is_one() || constant) {
            os << ac.str();
            wrote = true;
        }
        for (int i = 0; i < 4; ++i) {
            int e = m.e[(size_t)i];
            if (!e) continue;
            if (wrote) os << "*";
            os << names[(size_t)i];
            if (e > 1) os << "^" << e;
            wrote = true;
        }
    }
    return os.str();
}

namespace {

// sums of '*'-joined factors; a factor is an integer, a named variable with an
// optional '^e', or a parenthesized subexpression with an optional '^e'
struct PolyParser {
    const std::string& text;
    const std::array<const char*, 4>& names;
    size_t i = 0;

    void ws() {
        while (i < text.size() && std::isspace((unsigned char)text[i])) ++i;
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw error("parse_multipoly: " + what + " near position " + std::to_string(i));
    }
    int read_exponent() {
        ws();
        if (i >= text.size() || text[i] != '^') return 1;
        ++i;
        ws();
        size_t j = i;
        while (j < text.size() && std::isdigit((unsigned char)text[j])) ++j;
        if (j == i) throw error("parse_multipoly: missing exponent");
        int e = std::stoi(text.substr(i, j - i));
        i = j;
        return e;
    }
    MultiPoly factor() {
        ws();
        if (i >= text.size()) fail("cannot read term");
        if (text[i] == '(') {
            ++i;
            MultiPoly inner = expr();
            ws();
            if (i >= text.size() || text[i] != ')') fail("missing ')'");
            ++i;
            return pow(inner, read_exponent());
        }
        if (std::isdigit((unsigned char)text[i])) {
            size_t j = i;
            while (j < text.size() && std::isdigit((unsigned char)text[j])) ++j;
            MultiPoly r{Int(text.substr(i, j - i))};
            i = j;
            return r;
        }
        int var = -1;
        for (int v = 0; v < 4; ++v) {
            size_t len = std::string(names[(size_t)v]).size();
            if (text.compare(i, len, names[(size_t)v]) == 0) {
                // longest match wins, guards against one name prefixing another
                if (var < 0 || len > std::string(names[(size_t)var]).size()) var = v;
            }
        }
        if (var < 0) fail("cannot read term");
        i += std::string(names[(size_t)var]).size();
        return MultiPoly::var(var, read_exponent());
    }
    MultiPoly term() {
        MultiPoly out = factor();
        while (true) {
            ws();
            if (i < text.size() && text[i] == '*') {
                ++i;
                out = mul(out, factor());
                continue;
            }
            break;
        }
        return out;
    }
    MultiPoly expr() {
        MultiPoly out;
        bool first = true;
        while (true) {
            ws();
            if (i >= text.size()) break;
            int sign = 1;
            bool saw_sign = false;
            while (i < text.size() && (text[i] == '+' || text[i] == '-')) {
                if (text[i] == '-') sign = -sign;
                saw_sign = true;
                ++i;
                ws();
            }
            if (!first && !saw_sign) break;  // caller's ')' or junk; expr ends here
            out = add(out, scale(term(), Int((long)sign)));
            first = false;
        }
        return out;
    }
};

}  // namespace

MultiPoly parse_multipoly(const std::string& text, const std::array<const char*, 4>& names) {
    PolyParser p{text, names};
    MultiPoly out = p.expr();
    p.ws();
    if (p.i < text.size())
        throw error("parse_multipoly: expected '+' or '-' near position " + std::to_string(p.i));
    return out;
}

QPoly to_qpoly(const MultiPoly& a, int var) {
    QPoly r;
    for (const auto& [m, c] : a.terms) {
        for (int i = 0; i < 4; ++i)
            if (i != var && m.e[(size_t)i] != 0)
                throw error("to_qpoly: polynomial involves more than one variable");
        size_t e = (size_t)m.e[(size_t)var];
        if (r.c.size() <= e) r.c.resize(e + 1, Rat());
        r.c[e] = Rat(c);
    }
    r.normalize();
    return r;
}

MultiPoly from_qpoly(const QPoly& a, int var) {
    MultiPoly r;
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i].is_zero()) continue;
        if (!a.c[i].is_integer()) throw error("from_qpoly: non-integer coefficient");
        Mono m;
        m.e[(size_t)var] = (int16_t)i;
        r.terms.emplace(m, a.c[i].num());
    }
    return r;
}

// ---------------------------------------------------------------------------
// Resultant by evaluation/interpolation over word-size prime fields.

namespace {

struct ModTerm {
    Mono m;
    uint64_t c;
};

std::vector<ModTerm> reduce_terms(const MultiPoly& a, uint64_t p) {
    std::vector<ModTerm> out;
    out.reserve(a.n_terms());
    for (const auto& [m, c] : a.terms) {
        uint64_t v = mod_u64(c, p);
        if (v) out.push_back({m, v});
    }
    return out;
}

// Partial evaluation of the `others` axes one dimension at a time, keeping the
// eliminated variable symbolic.  Returns, for each tensor grid point, a dense
// coefficient vector in the eliminated variable.
std::vector<std::vector<uint64_t>> eval_grid(const std::vector<ModTerm>& terms, int var, int dvar,
                                             const std::array<int, 3>& others,
                                             const std::array<std::vector<uint64_t>, 3>& pts,
                                             uint64_t p) {
    // key (encoded remaining exponents) -> dense vector in `var`
    struct Node {
        std::array<int16_t, 3> e;
        std::vector<uint64_t> v;
    };
    std::vector<Node> cur;
    {
        std::map<std::array<int16_t, 3>, std::vector<uint64_t>> acc;
        for (const auto& t : terms) {
            std::array<int16_t, 3> key{};
            for (int i = 0; i < 3; ++i) key[(size_t)i] = t.m.e[(size_t)others[(size_t)i]];
            auto& vec = acc[key];
            if (vec.empty()) vec.assign((size_t)dvar + 1, 0);
            size_t e = (size_t)t.m.e[(size_t)var];
            vec[e] = addmod(vec[e], t.c, p);
        }
        for (auto& [k, v] : acc) cur.push_back({k, std::move(v)});
    }
    // Collapse axis 0, then 1, then 2; after axis k, nodes are indexed by the
    // grid position along collapsed axes plus remaining symbolic exponents.
    size_t npts_total = 1;
    for (int ax = 0; ax < 3; ++ax) {
        const auto& xs = pts[(size_t)ax];
        size_t npts = xs.size();
        // group nodes by exponents of the not-yet-collapsed axes
        std::map<std::array<int16_t, 3>, std::vector<const Node*>> groups;
        for (const auto& nd : cur) {
            auto key = nd.e;
            key[(size_t)ax] = 0;
            groups[key].push_back(&nd);
        }
        std::vector<Node> next;
        next.reserve(groups.size() * npts * npts_total);
        for (auto& [key, nodes] : groups) {
            int maxe = 0;
            for (const Node* nd : nodes) maxe = std::max(maxe, (int)nd->e[(size_t)ax]);
            for (size_t pi = 0; pi < npts; ++pi) {
                std::vector<uint64_t> pw((size_t)maxe + 1, 1);
                for (int e = 1; e <= maxe; ++e) pw[(size_t)e] = mulmod(pw[(size_t)e - 1], xs[pi], p);
                Node out;
                out.e = key;
                out.e[(size_t)ax] = (int16_t)pi;  // repurpose slot as grid index
                out.v.assign((size_t)dvar + 1, 0);
                for (const Node* nd : nodes) {
                    uint64_t w = pw[(size_t)nd->e[(size_t)ax]];
                    for (size_t j = 0; j < out.v.size(); ++j)
                        if (nd->v[j]) out.v[j] = addmod(out.v[j], mulmod(nd->v[j], w, p), p);
                }
                next.push_back(std::move(out));
            }
        }
        cur = std::move(next);
        npts_total *= npts;
    }
    // order results by grid index (i0, i1, i2) row-major
    size_t n1 = pts[1].size(), n2 = pts[2].size();
    std::vector<std::vector<uint64_t>> out(npts_total);
    for (auto& nd : cur) {
        size_t idx = ((size_t)nd.e[0] * n1 + (size_t)nd.e[1]) * n2 + (size_t)nd.e[2];
        out[idx] = std::move(nd.v);
    }
    return out;
}

// Newton interpolation through (xs, ys) -> monomial coefficients (size xs.size()).
std::vector<uint64_t> interp_line(const std::vector<uint64_t>& xs, const std::vector<uint64_t>& ys,
                                  const std::vector<std::vector<uint64_t>>& invdiff, uint64_t p) {
    size_t n = xs.size();
    std::vector<uint64_t> dd = ys;
    for (size_t j = 1; j < n; ++j)
        for (size_t i = n; i-- > j;)
            dd[i] = mulmod(submod(dd[i], dd[i - 1], p), invdiff[i][j], p);
    std::vector<uint64_t> poly((size_t)n, 0);
    poly[0] = dd[n - 1];
    size_t len = 1;
    for (size_t i = n - 1; i-- > 0;) {
        // poly <- poly * (X - xs[i]) + dd[i]
        for (size_t k = len; k-- > 0;) {
            uint64_t v = poly[k];
            poly[k + 1] = addmod(poly[k + 1], v, p);
            poly[k] = mulmod(v, submod(0, xs[i] % p, p), p);
        }
        ++len;
        poly[0] = addmod(poly[0], dd[i], p);
    }
    return poly;
}

struct GridResult {
    bool ok = false;
    std::map<Mono, uint64_t> coeffs;  // exponents on `others` axes, var slot zero
};

// Full modular resultant for one prime; fails (ok=false) if the prime is
// unlucky (leading coefficient drop) or no grid avoiding lc zeros was found.
GridResult resultant_mod(const MultiPoly& A, const MultiPoly& B, int var, uint64_t p,
                         uint64_t attempt_seed, int threads) {
    GridResult res;
    int da = degree(A, var), db = degree(B, var);
    auto lta = reduce_terms(coeff_of(A, var, da), p);
    auto ltb = reduce_terms(coeff_of(B, var, db), p);
    if (lta.empty() || ltb.empty()) return res;  // unlucky prime

    std::array<int, 3> others{};
    {
        int k = 0;
        for (int v = 0; v < 4; ++v)
            if (v != var) others[(size_t)k++] = v;
    }
    std::array<int, 3> bound{};
    for (int i = 0; i < 3; ++i) {
        int w = others[(size_t)i];
        int dwa = std::max(degree(A, w), 0), dwb = std::max(degree(B, w), 0);
        bound[(size_t)i] = dwa * db + dwb * da;
    }
    auto terms_a = reduce_terms(A, p);
    auto terms_b = reduce_terms(B, p);

    for (int attempt = 0; attempt < 24; ++attempt) {
        Rng rng(0x5eedULL * p + attempt_seed * 1315423911ULL + (uint64_t)attempt);
        std::array<std::vector<uint64_t>, 3> pts;
        for (int i = 0; i < 3; ++i) {
            size_t need = (size_t)bound[(size_t)i] + 1;
            std::vector<uint64_t> v;
            while (v.size() < need) {
                uint64_t x = 1 + rng.below(p - 1);
                if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
            }
            pts[(size_t)i] = std::move(v);
        }
        // the grid is usable only if neither leading coefficient vanishes anywhere
        auto lc_ok = [&](const std::vector<ModTerm>& lt) {
            auto vals = eval_grid(lt, var, 0, others, pts, p);
            for (const auto& v : vals)
                if (v.empty() || v[0] == 0) return false;
            return true;
        };
        if (!lc_ok(lta) || !lc_ok(ltb)) continue;

        auto ga = eval_grid(terms_a, var, da, others, pts, p);
        auto gb = eval_grid(terms_b, var, db, others, pts, p);
        size_t total = ga.size();
        std::vector<uint64_t> vals(total);
        parallel_for(total, threads, [&](size_t i) {
            FpPoly fa(p, ga[i].empty() ? std::vector<uint64_t>{} : ga[i]);
            FpPoly fb(p, gb[i].empty() ? std::vector<uint64_t>{} : gb[i]);
            vals[i] = resultant(std::move(fa), std::move(fb));
        });

        // interpolate axis by axis, innermost (axis 2) first
        size_t n0 = pts[0].size(), n1 = pts[1].size(), n2 = pts[2].size();
        std::array<std::vector<std::vector<uint64_t>>, 3> invdiff;
        for (int ax = 0; ax < 3; ++ax) {
            const auto& xs = pts[(size_t)ax];
            auto& tbl = invdiff[(size_t)ax];
            tbl.assign(xs.size(), std::vector<uint64_t>(xs.size(), 0));
            for (size_t i = 0; i < xs.size(); ++i)
                for (size_t j = 1; j <= i; ++j)
                    tbl[i][j] = invmod(submod(xs[i], xs[i - j], p), p);
        }
        auto idx = [&](size_t i0, size_t i1, size_t i2) { return (i0 * n1 + i1) * n2 + i2; };
        std::vector<uint64_t> line;
        for (size_t i0 = 0; i0 < n0; ++i0)
            for (size_t i1 = 0; i1 < n1; ++i1) {
                line.assign(n2, 0);
                for (size_t i2 = 0; i2 < n2; ++i2) line[i2] = vals[idx(i0, i1, i2)];
                auto c = interp_line(pts[2], line, invdiff[2], p);
                for (size_t i2 = 0; i2 < n2; ++i2) vals[idx(i0, i1, i2)] = c[i2];
            }
        for (size_t i0 = 0; i0 < n0; ++i0)
            for (size_t k2 = 0; k2 < n2; ++k2) {
                line.assign(n1, 0);
                for (size_t i1 = 0; i1 < n1; ++i1) line[i1] = vals[idx(i0, i1, k2)];
                auto c = interp_line(pts[1], line, invdiff[1], p);
                for (size_t i1 = 0; i1 < n1; ++i1) vals[idx(i0, i1, k2)] = c[i1];
            }
        for (size_t k1 = 0; k1 < n1; ++k1)
            for (size_t k2 = 0; k2 < n2; ++k2) {
                line.assign(n0, 0);
                for (size_t i0 = 0; i0 < n0; ++i0) line[i0] = vals[idx(i0, k1, k2)];
                auto c = interp_line(pts[0], line, invdiff[0], p);
                for (size_t i0 = 0; i0 < n0; ++i0) vals[idx(i0, k1, k2)] = c[i0];
            }

        for (size_t i0 = 0; i0 < n0; ++i0)
            for (size_t i1 = 0; i1 < n1; ++i1)
                for (size_t i2 = 0; i2 < n2; ++i2) {
                    uint64_t v = vals[idx(i0, i1, i2)];
                    if (!v) continue;
                    Mono m;
                    m.e[(size_t)others[0]] = (int16_t)i0;
                    m.e[(size_t)others[1]] = (int16_t)i1;
                    m.e[(size_t)others[2]] = (int16_t)i2;
                    res.coeffs.emplace(m, v);
                }
        res.ok = true;
        return res;
    }
    return res;
}

}  // namespace

MultiPoly resultant(const MultiPoly& a, const MultiPoly& b, int var, const ResultantOptions& opt) {
    if (a.is_zero() || b.is_zero()) return MultiPoly();
    int da = degree(a, var), db = degree(b, var);
    if (da <= 0 || db <= 0)
        throw error(std::string("resultant: inputs must have positive degree in ") +
                    kVarNames[(size_t)var]);

    auto pool = default_prime_pool((size_t)(opt.max_primes + opt.verify_primes + 8));
    size_t next = 0;
    auto take_prime = [&]() -> uint64_t {
        if (next >= pool.size()) throw error("resultant: prime pool exhausted");
        return pool[next++];
    };

    std::map<Mono, Int> crt_val;
    Int modulus(1);
    std::map<Mono, Int> prev_lift;
    bool have_prev = false;
    int stable = 0;
    int used = 0;
    uint64_t seed = 0;

    auto balanced = [&](const std::map<Mono, Int>& vals, const Int& M) {
        std::map<Mono, Int> out;
        Int half = tdiv_qr(M, Int(2)).first;
        for (const auto& [m, v] : vals) {
            Int w = v > half ? v - M : v;
            if (!w.is_zero()) out.emplace(m, w);
        }
        return out;
    };

    while (used < opt.max_primes) {
        uint64_t p = take_prime();
        GridResult g = resultant_mod(a, b, var, p, seed++, opt.threads);
        if (!g.ok) continue;
        ++used;
        if (modulus.is_one()) {
            for (const auto& [m, v] : g.coeffs) crt_val.emplace(m, from_u64(v));
            modulus = from_u64(p);
        } else {
            // union of supports; a missing residue is zero
            for (const auto& [m, v] : g.coeffs)
                crt_val.try_emplace(m, Int(0));
            for (auto& [m, v] : crt_val) {
                auto it = g.coeffs.find(m);
                uint64_t r2 = it == g.coeffs.end() ? 0 : it->second;
                Int mcopy = modulus;
                crt_step(v, mcopy, r2, p);
            }
            modulus *= from_u64(p);
        }
        auto lift = balanced(crt_val, modulus);
        if (have_prev && lift == prev_lift) {
            ++stable;
        } else {
            stable = 1;
        }
        prev_lift = std::move(lift);
        have_prev = true;
        if (stable >= opt.stable_needed) {
            // final independent check at fresh moduli
            MultiPoly cand;
            for (const auto& [m, v] : prev_lift) cand.terms.emplace(m, v);
            bool verified = true;
            for (int k = 0; k < opt.verify_primes;) {
                uint64_t q = take_prime();
                GridResult chk = resultant_mod(a, b, var, q, seed++, opt.threads);
                if (!chk.ok) continue;
                ++k;
                std::map<Mono, uint64_t> cand_mod;
                for (const auto& [m, v] : cand.terms) {
                    uint64_t r = mod_u64(v, q);
                    if (r) cand_mod.emplace(m, r);
                }
                if (cand_mod != chk.coeffs) {
                    verified = false;
                    break;
                }
            }
            if (verified) return cand;
            stable = 0;
        }
    }
    throw error("resultant: coefficients did not stabilize");
}

}  // namespace walkprove
