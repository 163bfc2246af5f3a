#include "walkprove/guess.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "walkprove/bigint.hpp"
#include "walkprove/qpoly.hpp"
#include "walkprove/util.hpp"

namespace walkprove {

namespace {

uint64_t reduce_long(long x, uint64_t p) {
    long long r = (long long)x % (long long)p;
    if (r < 0) r += (long long)p;
    return (uint64_t)r;
}

struct RelKey {
    int main_deg;
    int t_deg;
    int terms;
    bool operator<(const RelKey& o) const {
        if (main_deg != o.main_deg) return main_deg < o.main_deg;
        if (t_deg != o.t_deg) return t_deg < o.t_deg;
        return terms < o.terms;
    }
};

RelKey rel_key(const std::vector<FpPoly>& row) {
    RelKey k{-1, 0, 0};
    for (size_t i = 0; i < row.size(); ++i) {
        if (row[i].is_zero()) continue;
        k.main_deg = (int)i;
        k.t_deg = std::max(k.t_deg, row[i].deg());
        for (uint64_t v : row[i].c) k.terms += v != 0;
    }
    return k;
}

GuessReportFp pick_candidate(const HPBasis& basis, GuessKind kind, size_t precision,
                             long unknowns, bool degenerate, uint64_t p) {
    GuessReportFp out;
    out.kind = kind;
    out.precision = precision;
    out.degenerate = degenerate;
    if (basis.empty()) return out;
    size_t best = 0;
    for (size_t i = 1; i < basis.size(); ++i)
        if (rel_key(basis[i]) < rel_key(basis[best])) best = i;
    const auto& row = basis[best];
    RelKey key = rel_key(row);
    out.found = true;
    out.main_degree = key.main_deg;
    out.t_degree = key.t_deg;
    out.margin = (long)precision - unknowns;
    for (size_t i = 0; i < row.size(); ++i)
        for (size_t j = 0; j < row[i].c.size(); ++j)
            if (row[i].c[j]) out.coeff[{(int)i, (int)j}] = row[i].c[j];
    uint64_t inv = invmod(out.coeff.rbegin()->second, p);
    for (auto& [k2, v] : out.coeff) v = mulmod(v, inv, p);
    return out;
}

bool relation_holds(const std::vector<FpPoly>& row,
                    const std::vector<std::vector<uint64_t>>& vectors, size_t N, uint64_t p) {
    std::vector<uint64_t> acc(N, 0);
    for (size_t j = 0; j < row.size(); ++j) {
        for (size_t d = 0; d < row[j].c.size(); ++d) {
            uint64_t c = row[j].c[d];
            if (!c) continue;
            for (size_t n = d; n < N; ++n)
                acc[n] = addmod(acc[n], mulmod(c, vectors[j][n - d] % p, p), p);
        }
    }
    for (uint64_t v : acc)
        if (v) return false;
    return true;
}

}  // namespace

HPBasis hermite_pade(const std::vector<std::vector<uint64_t>>& vectors,
                     const std::vector<int>& bounds, size_t N, uint64_t p) {
    size_t m = vectors.size();
    if (m == 0 || N == 0) return {};
    if (bounds.size() != m) throw error("hermite_pade: one degree bound per vector required");
    for (const auto& v : vectors)
        if (v.size() < N) throw error("hermite_pade: vector shorter than requested order");

    std::vector<std::vector<FpPoly>> rows(m, std::vector<FpPoly>(m, FpPoly(p)));
    std::vector<std::vector<uint64_t>> resid(m);
    std::vector<int> rowdeg(m, 0);
    for (size_t i = 0; i < m; ++i) {
        rows[i][i] = FpPoly::constant(p, 1);
        resid[i].assign(vectors[i].begin(), vectors[i].begin() + (long)N);
        for (auto& v : resid[i]) v %= p;
    }
    for (size_t k = 0; k < N; ++k) {
        size_t piv = m;
        for (size_t i = 0; i < m; ++i) {
            if (resid[i][k] == 0) continue;
            if (piv == m || rowdeg[i] < rowdeg[piv]) piv = i;
        }
        if (piv == m) continue;
        uint64_t inv = invmod(resid[piv][k], p);
        for (size_t i = 0; i < m; ++i) {
            if (i == piv || resid[i][k] == 0) continue;
            uint64_t c = mulmod(resid[i][k], inv, p);
            for (size_t j = 0; j < m; ++j)
                if (!rows[piv][j].is_zero()) rows[i][j] = sub(rows[i][j], scale(rows[piv][j], c));
            for (size_t n = k; n < N; ++n)
                if (resid[piv][n]) resid[i][n] = submod(resid[i][n], mulmod(c, resid[piv][n], p), p);
        }
        for (size_t j = 0; j < m; ++j) rows[piv][j] = shift(rows[piv][j], 1);
        for (size_t n = N; n-- > k + 1;) resid[piv][n] = resid[piv][n - 1];
        resid[piv][k] = 0;
        rowdeg[piv] += 1;
    }
    HPBasis out;
    for (size_t i = 0; i < m; ++i) {
        bool ok = true;
        bool nonzero = false;
        for (size_t j = 0; j < m; ++j) {
            if (rows[i][j].deg() > bounds[j]) ok = false;
            nonzero = nonzero || !rows[i][j].is_zero();
        }
        if (!ok || !nonzero) continue;
        if (!relation_holds(rows[i], vectors, N, p))
            throw error("hermite_pade: internal check failed, basis row is not a relation");
        out.push_back(rows[i]);
    }
    return out;
}

GuessReportFp guess_algeq(const std::vector<uint64_t>& f, const AnsatzGrid& grid, uint64_t p) {
    if (grid.kind != GuessKind::Algebraic) throw error("guess_algeq: grid is not algebraic");
    size_t N = grid.N;
    if (f.size() < N) throw error("guess_algeq: series shorter than the grid precision");
    bool zero = true;
    for (size_t n = 0; n < N && zero; ++n) zero = f[n] % p == 0;

    FpPoly F(p);
    F.c.assign(f.begin(), f.begin() + (long)N);
    for (auto& v : F.c) v %= p;
    F.normalize();
    std::vector<std::vector<uint64_t>> pows;
    {
        std::vector<uint64_t> one(N, 0);
        one[0] = 1 % p;
        pows.push_back(std::move(one));
    }
    FpPoly cur = FpPoly::constant(p, 1);
    for (int d = 1; d <= grid.max_main_degree; ++d) {
        cur = mul_trunc(cur, F, N);
        std::vector<uint64_t> row(N, 0);
        for (size_t j = 0; j < cur.c.size(); ++j) row[j] = cur.c[j];
        pows.push_back(std::move(row));
    }
    for (int d = 1; d <= grid.max_main_degree; ++d) {
        std::vector<std::vector<uint64_t>> vecs(pows.begin(), pows.begin() + d + 1);
        std::vector<int> bounds((size_t)d + 1, grid.max_t_degree);
        HPBasis basis = hermite_pade(vecs, bounds, N, p);
        if (basis.empty()) continue;
        long unknowns = (long)(d + 1) * (grid.max_t_degree + 1);
        return pick_candidate(basis, GuessKind::Algebraic, N, unknowns, zero, p);
    }
    GuessReportFp none;
    none.kind = GuessKind::Algebraic;
    none.precision = N;
    return none;
}

GuessReportFp guess_diffeq(const std::vector<uint64_t>& f, const AnsatzGrid& grid, uint64_t p) {
    if (grid.kind != GuessKind::Differential) throw error("guess_diffeq: grid is not differential");
    size_t N = grid.N;
    if (f.size() < N) throw error("guess_diffeq: series shorter than the grid precision");
    std::vector<std::vector<uint64_t>> der(1);
    der[0].assign(f.begin(), f.begin() + (long)N);
    for (auto& v : der[0]) v %= p;
    for (int i = 1; i <= grid.max_main_degree; ++i) {
        const auto& prev = der.back();
        std::vector<uint64_t> d(prev.size() - 1);
        for (size_t n = 0; n + 1 < prev.size(); ++n)
            d[n] = mulmod(prev[n + 1], (uint64_t)(n + 1) % p, p);
        der.push_back(std::move(d));
    }
    for (int r = 1; r <= grid.max_main_degree; ++r) {
        size_t Np = N - (size_t)r;
        if ((size_t)(r + 1) * (size_t)(grid.max_t_degree + 1) >= Np) break;
        std::vector<std::vector<uint64_t>> vecs;
        for (int i = 0; i <= r; ++i)
            vecs.emplace_back(der[(size_t)i].begin(), der[(size_t)i].begin() + (long)Np);
        std::vector<int> bounds((size_t)r + 1, grid.max_t_degree);
        HPBasis basis = hermite_pade(vecs, bounds, Np, p);
        if (basis.empty()) continue;
        long unknowns = (long)(r + 1) * (grid.max_t_degree + 1);
        return pick_candidate(basis, GuessKind::Differential, Np, unknowns, false, p);
    }
    GuessReportFp none;
    none.kind = GuessKind::Differential;
    none.precision = N;
    return none;
}

MultiPoly guess_to_poly(const GuessReportFp& g) {
    MultiPoly r;
    for (const auto& [key, v] : g.coeff) {
        if (!v) continue;
        Mono m{};
        m.e[VAR_T] = (int16_t)key.first;
        m.e[VAR_t] = (int16_t)key.second;
        r.terms[m] = from_u64(v);
    }
    return r;
}

namespace {

using Support = std::set<std::pair<int, int>>;

struct PrimeShape {
    int main_degree = -1;
    Support support;
    bool operator==(const PrimeShape& o) const {
        return main_degree == o.main_degree && support == o.support;
    }
    bool operator<(const PrimeShape& o) const {
        if (main_degree != o.main_degree) return main_degree < o.main_degree;
        return support < o.support;
    }
};

struct RatFn {
    FpPoly num, den;
};

}  // namespace

GuessReport modular_guess_pipeline(const SectionSpec& section, const AnsatzGrid& grid,
                                   const std::vector<uint64_t>& primes,
                                   const std::vector<long>& points, const PipelineOptions& opt) {
    if (primes.empty()) throw error("modular guess pipeline: no primes given");
    if (points.empty()) throw error("modular guess pipeline: no points given");
    {
        std::set<uint64_t> sp(primes.begin(), primes.end());
        if (sp.size() != primes.size()) throw error("modular guess pipeline: repeated prime");
        std::set<long> sx(points.begin(), points.end());
        if (sx.size() != points.size()) throw error("modular guess pipeline: repeated point");
    }
    size_t NP = primes.size(), NX = points.size();
    GuessReport rep;
    rep.kind = grid.kind;
    rep.primes = primes;
    rep.points = points;
    rep.precision = grid.N;

    // one DP sweep + one guess per (prime, point)
    std::vector<std::vector<GuessReportFp>> G(NP, std::vector<GuessReportFp>(NX));
    std::vector<std::vector<uint64_t>> pts_mod(NP);
    parallel_for(NP, (unsigned)std::max(1, opt.threads), [&](size_t a) {
        uint64_t p = primes[a];
        std::vector<uint64_t> pm(NX);
        for (size_t k = 0; k < NX; ++k) pm[k] = reduce_long(points[k], p);
        {
            std::set<uint64_t> s(pm.begin(), pm.end());
            if (s.size() != NX)
                throw error("modular guess pipeline: points collide modulo a prime");
        }
        pts_mod[a] = pm;
        auto rows = section_at_points_mod(section.steps, section.which, (int)grid.N - 1, p, pm);
        for (size_t k = 0; k < NX; ++k)
            G[a][k] = grid.kind == GuessKind::Algebraic ? guess_algeq(rows[k], grid, p)
                                                        : guess_diffeq(rows[k], grid, p);
    });

    // found-ness and intra-prime shape agreement
    {
        size_t found = 0;
        std::ostringstream bad;
        for (size_t a = 0; a < NP; ++a)
            for (size_t k = 0; k < NX; ++k)
                if (G[a][k].found)
                    ++found;
                else
                    bad << " (" << primes[a] << "," << points[k] << ")";
        if (found == 0) return rep;
        if (found < NP * NX)
            throw error("modular guess pipeline: no candidate at" + bad.str() +
                        " while other (prime, point) pairs found one");
    }
    std::vector<PrimeShape> shape(NP);
    for (size_t a = 0; a < NP; ++a) {
        std::ostringstream bad;
        for (size_t k = 0; k < NX; ++k) {
            if (G[a][k].main_degree != G[a][0].main_degree)
                bad << " (" << primes[a] << "," << points[k] << ")";
            for (const auto& [key, v] : G[a][k].coeff) shape[a].support.insert(key);
        }
        if (!bad.str().empty())
            throw error("modular guess pipeline: main-degree disagreement within a prime at" +
                        bad.str());
        shape[a].main_degree = G[a][0].main_degree;
    }

    // cross-prime consensus with a small outlier budget
    std::vector<char> keep(NP, 1);
    {
        std::map<PrimeShape, size_t> votes;
        for (size_t a = 0; a < NP; ++a) ++votes[shape[a]];
        PrimeShape major;
        size_t best = 0;
        for (const auto& [s, n] : votes)
            if (n > best) {
                best = n;
                major = s;
            }
        size_t budget = NP >= 2 ? std::max<size_t>(1, NP / 10) : 0;
        std::ostringstream dropped;
        size_t ndrop = 0;
        for (size_t a = 0; a < NP; ++a)
            if (!(shape[a] == major)) {
                keep[a] = 0;
                ++ndrop;
                dropped << " " << primes[a];
            }
        if (ndrop > budget)
            throw error("modular guess pipeline: candidate shapes disagree across primes" +
                        dropped.str());
        if (ndrop)
            rep.warnings.push_back("dropped outlier primes (shape disagreement):" + dropped.str());
        shape[0] = major;  // canonical support lives here from now on
    }
    const Support& support = shape[0].support;
    const std::pair<int, int> pivot = *support.rbegin();

    // renormalize every point to the shared pivot, interpolate x per prime
    std::map<std::pair<int, int>, std::vector<RatFn>> interp;  // (i,j) -> per kept prime
    std::vector<uint64_t> kept_primes;
    long margin = 0;
    bool margin_set = false;
    for (size_t a = 0; a < NP; ++a) {
        if (!keep[a]) continue;
        uint64_t p = primes[a];
        std::vector<uint64_t> xs;
        std::vector<std::map<std::pair<int, int>, uint64_t>> vals;
        for (size_t k = 0; k < NX; ++k) {
            uint64_t pv = 0;
            auto it = G[a][k].coeff.find(pivot);
            if (it != G[a][k].coeff.end()) pv = it->second;
            if (!pv) {
                rep.warnings.push_back("dropped a point where the pivot coefficient vanishes");
                continue;
            }
            uint64_t inv = invmod(pv, p);
            std::map<std::pair<int, int>, uint64_t> m;
            for (const auto& [key, v] : G[a][k].coeff) m[key] = mulmod(v, inv, p);
            xs.push_back(pts_mod[a][k]);
            vals.push_back(std::move(m));
            if (!margin_set || G[a][k].margin < margin) {
                margin = G[a][k].margin;
                margin_set = true;
            }
        }
        size_t K = xs.size();
        if (K < 4)
            throw error("modular guess pipeline: too few usable points; request more primes/points");
        size_t H = std::max<size_t>(1, K / 10);
        size_t KI = K - H;
        std::vector<uint64_t> xi(xs.begin(), xs.begin() + (long)KI);
        int dn = KI >= 2 ? (int)((KI - 2) / 2) : 0, dd = dn;
        for (const auto& key : support) {
            std::vector<uint64_t> ys(KI);
            for (size_t k = 0; k < KI; ++k) {
                auto it = vals[k].find(key);
                ys[k] = it == vals[k].end() ? 0 : it->second;
            }
            RatFn rf{FpPoly(p), FpPoly(p)};
            if (!rat_interp(p, xi, ys, dn, dd, rf.num, rf.den))
                throw error(
                    "modular guess pipeline: rational interpolation failed; request more "
                    "primes/points");
            for (size_t k = KI; k < K; ++k) {
                auto it = vals[k].find(key);
                uint64_t want = it == vals[k].end() ? 0 : it->second;
                uint64_t dv = eval(rf.den, xs[k]);
                if (dv == 0 || eval(rf.num, xs[k]) != mulmod(want, dv, p))
                    throw error(
                        "modular guess pipeline: interpolation fails at held-out points; request "
                        "more primes/points");
            }
            interp[key].push_back(std::move(rf));
        }
        kept_primes.push_back(p);
    }
    rep.margin = margin;

    // per-coefficient degree profiles must agree across the kept primes
    for (const auto& [key, fns] : interp) {
        for (size_t a = 1; a < fns.size(); ++a)
            if (fns[a].num.deg() != fns[0].num.deg() || fns[a].den.deg() != fns[0].den.deg())
                throw error(
                    "modular guess pipeline: interpolated degree profiles disagree across primes; "
                    "request more primes/points");
    }

    // CRT + rational reconstruction, coefficient by coefficient
    auto lift_poly = [&](const std::vector<const FpPoly*>& images) {
        int deg = images[0]->deg();
        QPoly out;
        out.c.assign((size_t)deg + 1, Rat());
        for (int i = 0; i <= deg; ++i) {
            std::vector<uint64_t> res(kept_primes.size());
            for (size_t a = 0; a < kept_primes.size(); ++a) res[a] = images[a]->at((size_t)i);
            auto [v, M] = crt(res, kept_primes);
            Rat q;
            if (!rational_reconstruct(v, M, q))
                throw error(
                    "modular guess pipeline: rational reconstruction failed; request more primes");
            out.c[(size_t)i] = q;
        }
        out.normalize();
        return out;
    };
    std::map<std::pair<int, int>, std::pair<QPoly, QPoly>> lifted;
    for (const auto& [key, fns] : interp) {
        std::vector<const FpPoly*> nums, dens;
        for (const auto& rf : fns) {
            nums.push_back(&rf.num);
            dens.push_back(&rf.den);
        }
        QPoly nq = fns[0].num.is_zero() ? QPoly() : lift_poly(nums);
        QPoly dq = lift_poly(dens);
        lifted[key] = {std::move(nq), std::move(dq)};
    }

    // clear denominators: multiply through by the lcm of the dq's
    QPoly L = QPoly::constant(Rat(1));
    for (const auto& [key, nd] : lifted) {
        QPoly g = gcd(L, nd.second);
        L = divrem(mul(L, nd.second), g).first;
    }
    MultiPoly cand;
    Int D(1);
    std::map<std::pair<int, int>, QPoly> cleared;
    for (const auto& [key, nd] : lifted) {
        auto [q, r] = divrem(L, nd.second);
        if (!r.is_zero()) throw error("modular guess pipeline: denominator lcm is inconsistent");
        QPoly c = mul(nd.first, q);
        for (const auto& v : c.c)
            if (!v.is_zero()) D = divexact(D * v.den(), gcd(D, v.den()));
        cleared[key] = std::move(c);
    }
    for (const auto& [key, c] : cleared) {
        for (size_t e = 0; e < c.c.size(); ++e) {
            if (c.c[e].is_zero()) continue;
            Rat scaled = c.c[e] * Rat(D);
            if (!scaled.is_integer())
                throw error("modular guess pipeline: denominator clearing failed");
            Mono m{};
            m.e[VAR_T] = (int16_t)key.first;
            m.e[VAR_t] = (int16_t)key.second;
            m.e[VAR_x] = (int16_t)e;
            cand.terms[m] = scaled.num();
        }
    }
    cand.prune();
    rep.candidate = canonicalize(cand);
    rep.found = true;

    // independent re-guess at a fresh (prime, point)
    if (opt.cross_check) {
        uint64_t q = 0;
        for (uint64_t cnd : default_prime_pool(NP + 8)) {
            if (std::find(primes.begin(), primes.end(), cnd) == primes.end()) {
                q = cnd;
                break;
            }
        }
        if (!q) throw error("modular guess pipeline: no fresh prime available");
        long x1 = *std::max_element(points.begin(), points.end()) + 1;
        uint64_t x1m = reduce_long(x1, q);
        if (x1m == 0) x1m = 1;
        auto rows = section_at_points_mod(section.steps, section.which, (int)grid.N - 1, q, {x1m});
        GuessReportFp direct = grid.kind == GuessKind::Algebraic ? guess_algeq(rows[0], grid, q)
                                                                 : guess_diffeq(rows[0], grid, q);
        std::map<std::pair<int, int>, uint64_t> red;
        for (const auto& [m, c] : rep.candidate.terms) {
            if (m.e[VAR_y]) throw error("modular guess pipeline: unexpected y in candidate");
            uint64_t v = mulmod(mod_u64(c, q), powmod(x1m, (uint64_t)m.e[VAR_x], q), q);
            auto key = std::make_pair((int)m.e[VAR_T], (int)m.e[VAR_t]);
            red[key] = addmod(red[key], v, q);
        }
        for (auto it = red.begin(); it != red.end();)
            it = it->second == 0 ? red.erase(it) : std::next(it);
        bool ok = direct.found && !red.empty() && red.size() == direct.coeff.size();
        if (ok) {
            auto ref = red.begin();
            auto dit = direct.coeff.find(ref->first);
            if (dit == direct.coeff.end())
                ok = false;
            else {
                uint64_t s = mulmod(dit->second, invmod(ref->second, q), q);
                for (const auto& [key, v] : red) {
                    auto jt = direct.coeff.find(key);
                    if (jt == direct.coeff.end() || jt->second != mulmod(v, s, q)) {
                        ok = false;
                        break;
                    }
                }
            }
        }
        if (!ok)
            throw error(
                "modular guess pipeline: candidate disagrees with a direct guess at a fresh "
                "(prime, point)");
    }
    return rep;
}

DoublingReport precision_doubling(const std::function<std::vector<uint64_t>(size_t)>& prefix,
                                  const AnsatzGrid& seed, uint64_t p, size_t max_precision) {
    if (max_precision == 0) max_precision = 16 * seed.N;
    DoublingReport out;
    GuessReportFp prev;
    bool have = false;
    size_t N = seed.N;
    while (N <= max_precision) {
        AnsatzGrid grid(seed.kind, seed.max_main_degree, seed.max_t_degree, N);
        auto data = prefix(N);
        GuessReportFp cur = grid.kind == GuessKind::Algebraic ? guess_algeq(data, grid, p)
                                                              : guess_diffeq(data, grid, p);
        out.precision_tried = N;
        if (have && prev.found && cur.found && prev.coeff == cur.coeff) {
            out.report = cur;
            out.stabilized = true;
            return out;
        }
        prev = cur;
        have = true;
        N *= 2;
    }
    out.report = prev;
    out.stabilized = false;
    return out;
}

}  // namespace walkprove
