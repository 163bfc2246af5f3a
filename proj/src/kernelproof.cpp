#include "walkprove/kernelproof.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "walkprove/fppoly.hpp"
#include "walkprove/guess.hpp"
#include "walkprove/qpoly.hpp"

namespace walkprove {

namespace {

std::string ts(size_t v) { return std::to_string(v); }
std::string ti(long long v) { return std::to_string(v); }

MultiPoly mono(long c, int eT, int et, int ex, int ey) {
    Mono m;
    m.e[0] = (int16_t)eT;
    m.e[1] = (int16_t)et;
    m.e[2] = (int16_t)ex;
    m.e[3] = (int16_t)ey;
    return MultiPoly::term(Int(c), m);
}

// Integer content and sign normalization, keeping monomial factors intact
// (stripping a common T-power would break the annihilation property at a
// zero of the annihilated series).
MultiPoly int_normalize(MultiPoly a) {
    if (a.is_zero()) return a;
    Int c = content(a);
    if (a.lead().second.sgn() < 0) c = -c;
    if (c == Int(1)) return a;
    MultiPoly r;
    for (const auto& [m, v] : a.terms) r.terms.emplace(m, divexact(v, c));
    return r;
}

bool poly_eq(const MultiPoly& a, const MultiPoly& b) { return sub(a, b).is_zero(); }

bool same_steps(const StepSet& s, const char* text) {
    StepSet o = StepSet::parse(text);
    if (s.steps.size() != o.steps.size()) return false;
    auto a = s.steps, b = o.steps;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

SeriesFp shift_x(SeriesFp a, int k) {
    for (auto& l : a.coeff) l = l_shift(std::move(l), k);
    return a;
}

SeriesFp series_from_u64(const std::vector<uint64_t>& vals, size_t N, const RingFp& R) {
    SeriesFp r = s_zero<RingFp>(N);
    for (size_t n = 0; n < std::min(N, vals.size()); ++n) {
        uint64_t v = vals[n] % R.p;
        if (v) r.set(n, l_monomial(0, v, R));
    }
    r.trim();
    return r;
}

const char* section_name(Section s) {
    switch (s) {
        case Section::X0: return "X0";
        case Section::Y0: return "Y0";
        case Section::Origin: return "Origin";
        case Section::Diagonal: return "Diagonal";
    }
    return "?";
}

Section section_from_name(const std::string& s) {
    if (s == "X0") return Section::X0;
    if (s == "Y0") return Section::Y0;
    if (s == "Origin") return Section::Origin;
    if (s == "Diagonal") return Section::Diagonal;
    throw error("certificate: unknown section name " + s);
}

}  // namespace

// --- kernel equations -----------------------------------------------------------

KernelEquation build_kernel(const StepSet& steps) {
    KernelEquation eq;
    eq.steps = steps;
    MultiPoly xyS, cx0, cy0;
    long corner = 0;
    for (const auto& [dx, dy] : steps.steps) {
        if (dx < -1 || dx > 1 || dy < -1 || dy > 1)
            throw error("build_kernel: unsupported boundary structure: step (" + ti(dx) + "," +
                        ti(dy) + ") crosses more than one lattice line");
        xyS = add(xyS, mono(1, 0, 0, 1 + dx, 1 + dy));
        if (dx < 0) cy0 = add(cy0, mono(1, 0, 1, 0, 1 + dy));
        if (dy < 0) cx0 = add(cx0, mono(1, 0, 1, 1 + dx, 0));
        if (dx < 0 && dy < 0) ++corner;
    }
    eq.kernel = sub(mul(mono(1, 0, 1, 0, 0), xyS), mono(1, 0, 0, 1, 1));
    if (!cx0.is_zero()) eq.boundary.push_back({cx0, Section::X0});
    if (!cy0.is_zero()) eq.boundary.push_back({cy0, Section::Y0});
    if (corner) eq.boundary.push_back({mono(-corner, 0, 1, 0, 0), Section::Origin});
    eq.constant = mono(-1, 0, 0, 1, 1);
    return eq;
}

std::string KernelEquation::str() const {
    std::string out = "(" + to_string(kernel) + ")*G(t;x,y) =";
    bool first = true;
    for (const auto& [coef, which] : boundary) {
        out += first ? " " : " + ";
        first = false;
        std::string arg = which == Section::X0 ? "G(t;x,0)"
                          : which == Section::Y0 ? "G(t;0,y)"
                                                 : "G(t;0,0)";
        out += "(" + to_string(coef) + ")*" + arg;
    }
    if (!constant.is_zero()) {
        out += first ? " " : " + ";
        out += "(" + to_string(constant) + ")";
    }
    return out;
}

size_t kernel_residual_order(const KernelEquation& eq, uint64_t p, size_t N) {
    auto table = full_table_mod(eq.steps, (int)N, p);
    int W = (int)N + 4;
    std::vector<uint64_t> lhs((size_t)W * W), rhs((size_t)W * W);
    auto at = [&](std::vector<uint64_t>& g, int a, int b) -> uint64_t& {
        return g[(size_t)a * (size_t)W + (size_t)b];
    };
    for (size_t n = 0; n < N; ++n) {
        std::fill(lhs.begin(), lhs.end(), 0);
        std::fill(rhs.begin(), rhs.end(), 0);
        for (const auto& [m, c] : eq.kernel.terms) {
            size_t ct = (size_t)m.e[VAR_t];
            if (ct > n) continue;
            size_t layer = n - ct;
            uint64_t cm = mod_u64(c, p);
            int side = (int)layer + 1;
            const auto& L = table[layer];
            for (int i = 0; i < side; ++i)
                for (int j = 0; j < side; ++j) {
                    uint64_t v = L[(size_t)i * side + j];
                    if (v) {
                        uint64_t& slot = at(lhs, i + m.e[VAR_x], j + m.e[VAR_y]);
                        slot = addmod(slot, mulmod(cm, v, p), p);
                    }
                }
        }
        for (const auto& [coef, which] : eq.boundary) {
            for (const auto& [m, c] : coef.terms) {
                size_t ct = (size_t)m.e[VAR_t];
                if (ct > n) continue;
                size_t layer = n - ct;
                uint64_t cm = mod_u64(c, p);
                int side = (int)layer + 1;
                const auto& L = table[layer];
                if (which == Section::X0) {
                    for (int i = 0; i < side; ++i) {
                        uint64_t v = L[(size_t)i * side];
                        if (v) {
                            uint64_t& slot = at(rhs, i + m.e[VAR_x], m.e[VAR_y]);
                            slot = addmod(slot, mulmod(cm, v, p), p);
                        }
                    }
                } else if (which == Section::Y0) {
                    for (int j = 0; j < side; ++j) {
                        uint64_t v = L[j];
                        if (v) {
                            uint64_t& slot = at(rhs, m.e[VAR_x], j + m.e[VAR_y]);
                            slot = addmod(slot, mulmod(cm, v, p), p);
                        }
                    }
                } else {
                    uint64_t v = L[0];
                    if (v) {
                        uint64_t& slot = at(rhs, m.e[VAR_x], m.e[VAR_y]);
                        slot = addmod(slot, mulmod(cm, v, p), p);
                    }
                }
            }
        }
        for (const auto& [m, c] : eq.constant.terms)
            if ((size_t)m.e[VAR_t] == n) {
                uint64_t& slot = at(rhs, m.e[VAR_x], m.e[VAR_y]);
                slot = addmod(slot, mod_u64(c, p), p);
            }
        if (lhs != rhs) return n;
    }
    return N;
}

// --- closure constructions --------------------------------------------------------

namespace {

void need_y_free(const MultiPoly& P, const char* role) {
    if (degree(P, VAR_y) > 0)
        throw error(std::string("annihilator_closure: ") + role +
                    " uses the y slot, which is reserved for elimination");
}

}  // namespace

MultiPoly annihilator_closure(ClosureOp op, const std::vector<MultiPoly>& inputs,
                              const ClosureAux& aux, const ResultantOptions& ropt) {
    if (op == ClosureOp::Scale) {
        if (inputs.size() != 1) throw error("annihilator_closure: scale takes exactly one input");
        const MultiPoly& P = inputs[0];
        need_y_free(P, "the input");
        if (degree(P, VAR_T) < 1) throw error("annihilator_closure: input does not involve T");
        if (aux.num.is_zero()) throw error("annihilator_closure: scale factor is zero or missing");
        MultiPoly den = aux.den.is_zero() ? MultiPoly(Int(1)) : aux.den;
        for (const MultiPoly* f : {&aux.num, (const MultiPoly*)&den}) {
            if (degree(*f, VAR_T) > 0) throw error("annihilator_closure: scale factor must not involve T");
            need_y_free(*f, "the scale factor");
        }
        int d = degree(P, VAR_T);
        auto cs = coeffs_in(P, VAR_T);
        MultiPoly out;
        for (int i = 0; i <= d; ++i) {
            MultiPoly term = mul(cs[(size_t)i], mul(pow(aux.num, d - i), pow(den, i)));
            out = add(out, mul(term, MultiPoly::var(VAR_T, i)));
        }
        return int_normalize(out);
    }

    if (inputs.size() != 2) throw error("annihilator_closure: this operation takes two inputs");
    const MultiPoly &P = inputs[0], &Q = inputs[1];
    need_y_free(P, "the first input");
    need_y_free(Q, "the second input");
    if (degree(P, VAR_T) < 1 || degree(Q, VAR_T) < 1)
        throw error("annihilator_closure: inputs must involve T");

    MultiPoly a, b;
    switch (op) {
        case ClosureOp::Add: {
            a = swap_vars(P, VAR_T, VAR_y);
            MultiPoly arg = sub(MultiPoly::var(VAR_T), MultiPoly::var(VAR_y));
            if (aux.subtract) arg = neg(arg);
            b = subst(Q, VAR_T, arg);
            break;
        }
        case ClosureOp::Mul: {
            a = swap_vars(P, VAR_T, VAR_y);
            int d = degree(Q, VAR_T);
            auto qs = coeffs_in(Q, VAR_T);
            for (int j = 0; j <= d; ++j) {
                Mono m;
                m.e[VAR_T] = (int16_t)j;
                m.e[VAR_y] = (int16_t)(d - j);
                b = add(b, mul_term(qs[(size_t)j], Int(1), m));
            }
            break;
        }
        case ClosureOp::Substitute: {
            a = swap_vars(P, VAR_x, VAR_y);
            b = swap_vars(Q, VAR_T, VAR_y);
            break;
        }
        default:
            throw error("annihilator_closure: unknown operation");
    }
    MultiPoly res = resultant(a, b, VAR_y, ropt);
    if (res.is_zero())
        throw error("annihilator_closure: resultant vanished — the inputs share a common factor; "
                    "take squarefree parts and retry");
    return int_normalize(res);
}

MultiPoly section_substitution_numerator(const MultiPoly& P) {
    if (P.is_zero() || degree(P, VAR_T) < 1)
        throw error("section_substitution_numerator: polynomial must involve T");
    need_y_free(P, "the input");
    int d = degree(P, VAR_T);
    auto cs = coeffs_in(P, VAR_T);
    MultiPoly ymtT =
        sub(MultiPoly::var(VAR_y), mul(MultiPoly::var(VAR_t), MultiPoly::var(VAR_T)));
    MultiPoly ty = mul(MultiPoly::var(VAR_t), MultiPoly::var(VAR_y));
    MultiPoly out;
    for (int j = 0; j <= d; ++j) {
        MultiPoly term = swap_vars(cs[(size_t)j], VAR_x, VAR_y);
        term = mul(term, MultiPoly::var(VAR_x, j));
        term = mul(term, pow(ymtT, j));
        term = mul(term, pow(ty, d - j));
        out = add(out, term);
    }
    return out;
}

// gcd in Q(t)[T] after specializing x, for the common-factor probes
namespace {

using TP = std::vector<RatF<QCtx>>;  // dense in T, rational-function coefficients

TP tp_from(const MultiPoly& A, const Int& x0) {
    MultiPoly s = specialize(A, VAR_x, x0);
    if (degree(s, VAR_y) > 0) throw error("common factor probe: input involves y");
    TP out;
    QCtx C;
    for (const auto& c : coeffs_in(s, VAR_T)) out.push_back(rf_from_poly(C, to_qpoly(c, VAR_t)));
    while (!out.empty() && rf_is_zero(C, out.back())) out.pop_back();
    return out;
}

int tp_deg(const TP& a) { return (int)a.size() - 1; }

TP tp_rem(const QCtx& C, TP a, const TP& b) {
    RatF<QCtx> lb = b.back();
    while ((int)a.size() >= (int)b.size()) {
        RatF<QCtx> q = rf_div(C, a.back(), lb);
        size_t off = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i)
            a[off + i] = rf_sub(C, a[off + i], rf_mul(C, q, b[i]));
        while (!a.empty() && rf_is_zero(C, a.back())) a.pop_back();
        if (a.size() >= off + b.size()) throw error("common factor probe: division stalled");
    }
    return a;
}

}  // namespace

int common_factor_degree_probe(const MultiPoly& A, const MultiPoly& B, const Int& x0) {
    QCtx C;
    TP a = tp_from(A, x0), b = tp_from(B, x0);
    if (a.empty() || b.empty())
        throw error("common factor probe: an input vanishes at this specialization");
    while (!b.empty()) {
        TP r = tp_rem(C, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return tp_deg(a);
}

// --- reduced kernel equations ------------------------------------------------------

void reduced_kernel_homogeneous(const StepSet& steps, size_t N, const RingFp& R,
                                std::vector<SeriesFp>& B_out, std::vector<SeriesFp>& Y_out) {
    B_out.clear();
    Y_out.clear();
    if (same_steps(steps, "W,S,NE")) {
        SeriesFp Y = kernel_root(steps, true, R, N);
        B_out.push_back(s_neg(Y, R));
        Y_out.push_back(std::move(Y));
        return;
    }
    if (same_steps(steps, "E,W,NE,SW")) {
        SeriesFp Y = kernel_root(steps, true, R, N);
        SeriesFp X = kernel_root(steps, false, R, N);
        SeriesFp one = s_const(l_monomial(0, R.one(), R), N);
        B_out.push_back(s_neg(s_mul(Y, s_add(one, Y, R), R, N), R));
        B_out.push_back(s_neg(X, R));
        Y_out.push_back(std::move(Y));
        Y_out.push_back(std::move(X));
        return;
    }
    throw error("reduced kernel system: unsupported step set " + steps.str() +
                " (supported: W,S,NE and E,W,NE,SW)");
}

bool uniqueness_witness(const std::vector<SeriesFp>& B_list, const std::vector<SeriesFp>& Y_list,
                        size_t N, const RingFp& R) {
    if (B_list.empty() || B_list.size() != Y_list.size())
        throw error("uniqueness witness: B and Y lists must be nonempty and of equal length");
    for (size_t i = 0; i < B_list.size(); ++i) {
        if (B_list[i].N < N || Y_list[i].N < N)
            throw error("uniqueness witness: series " + ts(i) + " truncated below N = " + ts(N));
        if (s_tval(B_list[i]) == 0)
            throw error("uniqueness witness: B[" + ts(i) + "] has t-valuation 0");
        if (s_tval(Y_list[i]) == 0)
            throw error("uniqueness witness: Y[" + ts(i) + "] has t-valuation 0");
    }
    size_t m = B_list.size();
    for (size_t k = 0; k + 1 < N; ++k) {
        SeriesFp u = s_zero<RingFp>(N);
        Laurent<RingFp> l;
        l.off = 0;
        l.c = {R.one(), R.one()};  // 1 + x
        u.set(k, l);
        size_t i = k % m;
        SeriesFp v = s_mul(B_list[i], compose(u, Y_list[i], R, N), R, N);
        if (s_tval(v) <= k) return false;
    }
    return true;
}

size_t reduced_kernel_residual_order(const StepSet& steps, const std::vector<SeriesFp>& sections,
                                     const std::vector<uint64_t>& g00, size_t N, const RingFp& R) {
    auto check_section = [&](const SeriesFp& s, const char* which) {
        if (s.N < N)
            throw error(std::string("reduced kernel residual: ") + which + " is truncated to " +
                        ts(s.N) + "; need N = " + ts(N));
        if (s_min_x(s) < 0)
            throw error(std::string("reduced kernel residual: ") + which +
                        " has negative x-exponents — x-valuation bookkeeping overflow; lift it "
                        "as a power series to at least N = " +
                        ts(N));
    };
    if (same_steps(steps, "W,S,NE")) {
        if (sections.size() != 1)
            throw error("reduced kernel residual: this model takes one section series");
        const SeriesFp& F = sections[0];
        check_section(F, "the section series");
        SeriesFp Y = kernel_root(steps, true, R, N + 1);
        SeriesFp lhs = s_truncate(F, N);
        SeriesFp Yt = s_truncate(s_div_t(Y, 1), N);
        SeriesFp FY = compose(F, Y, R, N);
        SeriesFp YoX = shift_x(s_truncate(Y, N), -1);
        SeriesFp rhs = s_sub(Yt, s_mul(YoX, FY, R, N), R);
        return s_tval(s_sub(lhs, rhs, R));
    }
    if (same_steps(steps, "E,W,NE,SW")) {
        if (sections.size() != 2)
            throw error("reduced kernel residual: this model takes section series U and V");
        const SeriesFp &U = sections[0], &V = sections[1];
        check_section(U, "U");
        check_section(V, "V");
        if (g00.size() < N)
            throw error("reduced kernel residual: need at least N = " + ts(N) +
                        " origin-series terms, got " + ts(g00.size()));
        SeriesFp Y = kernel_root(steps, true, R, N + 1);
        SeriesFp X = kernel_root(steps, false, R, N + 1);
        SeriesFp g = series_from_u64(g00, N, R);
        SeriesFp one = s_const(l_monomial(0, R.one(), R), N);
        Laurent<RingFp> onepx;
        onepx.off = 0;
        onepx.c = {R.one(), R.one()};

        SeriesFp Yn = s_truncate(Y, N);
        SeriesFp onepY = s_add(one, Yn, R);
        SeriesFp rhs1 = shift_x(s_truncate(s_div_t(Y, 1), N), 1);
        rhs1 = s_sub(rhs1, s_mul(onepY, g, R, N), R);
        rhs1 = s_sub(rhs1, s_mul(s_mul(Yn, onepY, R, N), compose(V, Y, R, N), R, N), R);
        size_t r1 = s_tval(s_sub(shift_x(s_truncate(U, N), 1), rhs1, R));

        SeriesFp Xn = s_truncate(X, N);
        SeriesFp rhs2 = shift_x(s_truncate(s_div_t(X, 1), N), 1);
        rhs2 = s_sub(rhs2, s_scale(g, onepx, R), R);
        rhs2 = s_sub(rhs2, s_mul(Xn, compose(U, X, R, N), R, N), R);
        SeriesFp lhs2 = s_scale(shift_x(s_truncate(V, N), 1), onepx, R);
        size_t r2 = s_tval(s_sub(lhs2, rhs2, R));
        return std::min(r1, r2);
    }
    throw error("reduced kernel residual: unsupported step set " + steps.str());
}

size_t verify_reduced_kernel_series(const StepSet& steps, const std::vector<MultiPoly>& candidates,
                                    const std::vector<uint64_t>& g00, size_t N, uint64_t p) {
    RingFp R(p);
    if (same_steps(steps, "W,S,NE")) {
        if (candidates.size() != 1)
            throw error("verify_reduced_kernel_series: this model takes one candidate");
        SeriesFp F = newton_lift(candidates[0], l_monomial(0, R.one(), R), R, N);
        return reduced_kernel_residual_order(steps, {F}, {}, N, R);
    }
    if (same_steps(steps, "E,W,NE,SW")) {
        if (candidates.size() != 2)
            throw error("verify_reduced_kernel_series: this model takes two candidates");
        auto norm = [&](MultiPoly P) {
            if (degree(P, VAR_y) > 0) {
                if (degree(P, VAR_x) > 0)
                    throw error("verify_reduced_kernel_series: candidate uses both x and y");
                P = swap_vars(P, VAR_x, VAR_y);
            }
            return P;
        };
        if (g00.size() < N)
            throw error("verify_reduced_kernel_series: need N = " + ts(N) +
                        " origin-series terms for this model");
        SeriesFp G1 = newton_lift(norm(candidates[0]), l_monomial(0, R.one(), R), R, N);
        SeriesFp G2 = newton_lift(norm(candidates[1]), l_monomial(0, R.one(), R), R, N);
        SeriesFp g = series_from_u64(g00, N, R);
        auto strip = [&](const SeriesFp& G, const char* which) {
            SeriesFp d = s_sub(s_truncate(G, N), g, R);
            for (const auto& l : d.coeff)
                if (!l.is_zero() && l.lo() < 1)
                    throw error(std::string("verify_reduced_kernel_series: ") + which +
                                " minus the origin series is not divisible by the section "
                                "variable");
            return shift_x(d, -1);
        };
        SeriesFp U = strip(G1, "the first candidate");
        SeriesFp V = strip(G2, "the second candidate");
        return reduced_kernel_residual_order(steps, {U, V}, g00, N, R);
    }
    throw error("verify_reduced_kernel_series: unsupported step set " + steps.str());
}

// --- certificates --------------------------------------------------------------------

std::string CertStage::get(const std::string& key) const {
    for (const auto& [k, v] : kv)
        if (k == key) return v;
    return "";
}

bool Certificate::ok() const {
    if (stages.empty()) return false;
    for (const auto& s : stages)
        if (!s.ok) return false;
    return true;
}

const MultiPoly* Certificate::poly(const std::string& name) const {
    for (const auto& [n, p] : polynomials)
        if (n == name) return &p;
    return nullptr;
}

const std::string* Certificate::op_text(const std::string& name) const {
    for (const auto& [n, t] : operators)
        if (n == name) return &t;
    return nullptr;
}

const CertStage* Certificate::stage(const std::string& name) const {
    for (const auto& s : stages)
        if (s.name == name) return &s;
    return nullptr;
}

std::string Certificate::str() const {
    std::string out = "walkprove-certificate v1\n";
    out += "target: " + target + "\n";
    out += "mode: " + mode + "\n";
    for (const auto& c : caveats) out += "caveat: " + c + "\n";
    for (const auto& [n, p] : polynomials) out += "poly " + n + ": " + to_string(p) + "\n";
    for (const auto& [n, t] : operators) out += "operator " + n + ": " + t + "\n";
    for (const auto& s : stages) {
        std::string kvs;
        for (const auto& [k, v] : s.kv) {
            if (!kvs.empty()) kvs += " ";
            kvs += k + "=" + v;
        }
        out += "stage " + s.name + ": " + (s.ok ? "ok" : "fail") + "; " + kvs + "; " + s.note +
               "\n";
    }
    out += "end\n";
    return out;
}

Certificate parse_certificate(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "walkprove-certificate v1")
        throw error("certificate parse: missing or unsupported header");
    Certificate cert;
    bool ended = false;
    auto named = [](const std::string& s, size_t from, std::string& name, std::string& rest) {
        size_t sep = s.find(": ", from);
        if (sep == std::string::npos) throw error("certificate parse: malformed line: " + s);
        name = s.substr(from, sep - from);
        rest = s.substr(sep + 2);
    };
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line == "end") {
            ended = true;
            break;
        }
        if (line.rfind("target: ", 0) == 0) {
            cert.target = line.substr(8);
        } else if (line.rfind("mode: ", 0) == 0) {
            cert.mode = line.substr(6);
        } else if (line.rfind("caveat: ", 0) == 0) {
            cert.caveats.push_back(line.substr(8));
        } else if (line.rfind("poly ", 0) == 0) {
            std::string name, rest;
            named(line, 5, name, rest);
            cert.polynomials.push_back({name, parse_multipoly(rest)});
        } else if (line.rfind("operator ", 0) == 0) {
            std::string name, rest;
            named(line, 9, name, rest);
            cert.operators.push_back({name, rest});
        } else if (line.rfind("stage ", 0) == 0) {
            std::string name, rest;
            named(line, 6, name, rest);
            CertStage st;
            st.name = name;
            size_t a = rest.find("; ");
            if (a == std::string::npos) throw error("certificate parse: malformed stage: " + line);
            std::string status = rest.substr(0, a);
            if (status != "ok" && status != "fail")
                throw error("certificate parse: bad stage status '" + status + "'");
            st.ok = status == "ok";
            size_t b = rest.find("; ", a + 2);
            if (b == std::string::npos) throw error("certificate parse: malformed stage: " + line);
            std::istringstream kvs(rest.substr(a + 2, b - a - 2));
            std::string tok;
            while (kvs >> tok) {
                size_t eq = tok.find('=');
                if (eq == std::string::npos)
                    throw error("certificate parse: bad key=value '" + tok + "'");
                st.kv.push_back({tok.substr(0, eq), tok.substr(eq + 1)});
            }
            st.note = rest.substr(b + 2);
            cert.stages.push_back(std::move(st));
        } else {
            throw error("certificate parse: unrecognized line: " + line);
        }
    }
    if (!ended) throw error("certificate parse: missing end marker");
    return cert;
}

void write_certificate(const Certificate& cert, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw error("write_certificate: cannot open " + path);
    out << cert.str();
    if (!out) throw error("write_certificate: write failed for " + path);
}

Certificate read_certificate_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error("read_certificate_file: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_certificate(buf.str());
}

// --- certificate rechecking -----------------------------------------------------------

namespace {

uint64_t kv_u64(const CertStage& st, const char* key) {
    std::string v = st.get(key);
    if (v.empty()) throw error("certificate recheck: stage " + st.name + " lacks key " + key);
    return std::stoull(v);
}

long kv_long(const CertStage& st, const char* key) {
    std::string v = st.get(key);
    if (v.empty()) throw error("certificate recheck: stage " + st.name + " lacks key " + key);
    return std::stol(v);
}

std::string kv_str(const CertStage& st, const char* key) {
    std::string v = st.get(key);
    if (v.empty()) throw error("certificate recheck: stage " + st.name + " lacks key " + key);
    return v;
}

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : csv) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

const MultiPoly& cert_poly(const Certificate& cert, const std::string& name) {
    const MultiPoly* p = cert.poly(name);
    if (!p) throw error("certificate recheck: missing polynomial " + name);
    return *p;
}

const std::string& cert_op(const Certificate& cert, const std::string& name) {
    const std::string* t = cert.op_text(name);
    if (!t) throw error("certificate recheck: missing operator " + name);
    return *t;
}

// Section values mod p: bivariate when no point is given, at one x-point otherwise.
SeriesFp stage_section_series(const CertStage& st, const StepSet& steps, Section which,
                              uint64_t p, size_t N) {
    RingFp R(p);
    if (st.get("point").empty()) {
        auto rows = section_series_mod(steps, which, (int)N, p);
        return section_to_series_fp(rows, N, p);
    }
    uint64_t pt = kv_u64(st, "point") % p;
    auto rows = section_at_points_mod(steps, which, (int)N, p, {pt});
    return series_from_u64(rows[0], N, R);
}

std::vector<uint64_t> point_section_values(const StepSet& steps, Section which, uint64_t point,
                                           uint64_t p, size_t terms) {
    auto rows = section_at_points_mod(steps, which, (int)terms - 1, p, {point % p});
    return rows[0];
}

// (G(t;x0,0) - G(t;0,0))/x0 at one point: the stripped axis section U of the
// two-equation system, as a univariate series mod p.
std::vector<uint64_t> point_u_values(const StepSet& steps, uint64_t point, uint64_t p,
                                     size_t terms) {
    auto vals = point_section_values(steps, Section::X0, point, p, terms);
    auto rows0 = section_series_mod(steps, Section::Origin, (int)terms - 1, p);
    uint64_t ix = invmod(point % p, p);
    for (size_t n = 0; n < vals.size(); ++n)
        vals[n] = mulmod(submod(vals[n], rows0[n][0], p), ix, p);
    return vals;
}

// U, V, g00 of the two-section reduced system, straight from the walk tables.
void dp_reduced_sections(const StepSet& steps, size_t N, uint64_t p,
                         std::vector<SeriesFp>& sections, std::vector<uint64_t>& g00) {
    RingFp R(p);
    auto rows1 = section_series_mod(steps, Section::X0, (int)N, p);
    auto rows2 = section_series_mod(steps, Section::Y0, (int)N, p);
    auto rows0 = section_series_mod(steps, Section::Origin, (int)N, p);
    g00.clear();
    for (const auto& r : rows0) g00.push_back(r[0]);
    SeriesFp G1 = section_to_series_fp(rows1, N, p);
    SeriesFp G2 = section_to_series_fp(rows2, N, p);
    SeriesFp g = series_from_u64(g00, N, R);
    auto strip = [&](const SeriesFp& G) {
        SeriesFp d = s_sub(G, g, R);
        for (const auto& l : d.coeff)
            if (!l.is_zero() && l.lo() < 1)
                throw error("reduced sections: axis section minus origin series not divisible by "
                            "the section variable");
        return shift_x(d, -1);
    };
    sections.clear();
    sections.push_back(strip(G1));
    sections.push_back(strip(G2));
}

bool check_annihilation(const Certificate& cert, const CertStage& st) {
    StepSet steps = StepSet::parse(kv_str(st, "steps"));
    Section which = section_from_name(kv_str(st, "section"));
    uint64_t p = kv_u64(st, "prime");
    size_t N = kv_u64(st, "N");
    RingFp R(p);
    SeriesFp F = stage_section_series(st, steps, which, p, N);
    SeriesFp res = poly_eval_series(cert_poly(cert, kv_str(st, "poly")), F, R);
    return s_tval(res) >= N;
}

bool check_g00_chain(const Certificate& cert, const CertStage& st) {
    const MultiPoly& Pg = cert_poly(cert, kv_str(st, "poly"));
    StepSet steps = StepSet::parse(kv_str(st, "steps"));
    size_t terms = kv_u64(st, "terms");
    OreOp<QCtx> L = algeq_to_diffeq(Pg);
    if (L.order() != (int)kv_u64(st, "order")) return false;
    if (print_operator(L) != cert_op(cert, kv_str(st, "op"))) return false;
    PRecurrence rec = diffeq_to_rec(L);
    auto rows = section_series_int(steps, Section::Origin, (int)terms);
    if (rec.initial_values > terms + 1) return false;
    std::vector<Rat> init;
    for (size_t n = 0; n < rec.initial_values; ++n) init.push_back(Rat(rows[n][0]));
    auto vals = recurrence_unroll(rec, init, terms);
    for (size_t n = 0; n <= terms; ++n)
        if (vals[n] != Rat(rows[n][0])) return false;
    return true;
}

OreOp<FpCtx> stored_op_mod(const Certificate& cert, const std::string& name, uint64_t p) {
    return reduce_op_mod(parse_operator(cert_op(cert, name)), p);
}

bool op_kills(const FpCtx& C, const OreOp<FpCtx>& L, const std::vector<uint64_t>& vals) {
    auto out = ore_apply_fp(C, L, vals);
    for (uint64_t v : out)
        if (v) return false;
    return true;
}

bool check_operator_family(const Certificate& cert, const CertStage& st,
                           const std::vector<std::string>& names) {
    StepSet steps = StepSet::parse(kv_str(st, "steps"));
    uint64_t p = kv_u64(st, "prime");
    uint64_t point = kv_u64(st, "point");
    size_t terms = kv_u64(st, "terms");
    int order = (int)kv_u64(st, "order");
    int maxdeg = (int)kv_u64(st, "maxdeg");
    FpCtx C(p);
    auto vals = point_section_values(steps, Section::X0, point, p, terms);
    for (const auto& nm : names) {
        OreOp<FpCtx> L = stored_op_mod(cert, nm, p);
        if (L.order() != order) return false;
        if (cleared_max_deg_fp(C, L) > maxdeg) return false;
        if (!op_kills(C, L, vals)) return false;
    }
    return true;
}

bool recheck_stage(const Certificate& cert, const CertStage& st) {
    if (st.name == "count") {
        StepSet steps = StepSet::parse(kv_str(st, "steps"));
        Int v = count(steps, (int)kv_long(st, "n"), (int)kv_long(st, "i"), (int)kv_long(st, "j"));
        return v.str() == kv_str(st, "value");
    }
    if (st.name == "kernel" || st.name == "rational") {
        StepSet steps = StepSet::parse(kv_str(st, "steps"));
        size_t N = kv_u64(st, "N");
        size_t res = kernel_residual_order(build_kernel(steps), kv_u64(st, "prime"), N);
        return res == kv_u64(st, "residual") && res >= N;
    }
    if (st.name == "guess") {
        const MultiPoly& P = cert_poly(cert, kv_str(st, "poly"));
        if (degree(P, VAR_T) != (int)kv_long(st, "degT")) return false;
        if (degree(P, VAR_t) > (int)kv_long(st, "degt")) return false;
        long unknowns = (kv_long(st, "degTbox") + 1) * (kv_long(st, "degtbox") + 1);
        return kv_long(st, "margin") == (long)kv_u64(st, "precision") - unknowns;
    }
    if (st.name == "annihilation") return check_annihilation(cert, st);
    if (st.name == "uniqueness") {
        StepSet steps = StepSet::parse(kv_str(st, "steps"));
        size_t N = kv_u64(st, "N");
        RingFp R(kv_u64(st, "prime"));
        std::vector<SeriesFp> B, Y;
        reduced_kernel_homogeneous(steps, N, R, B, Y);
        return uniqueness_witness(B, Y, N, R);
    }
    if (st.name == "series-verify") {
        StepSet steps = StepSet::parse(kv_str(st, "steps"));
        uint64_t p = kv_u64(st, "prime");
        size_t N = kv_u64(st, "N");
        size_t residual;
        if (kv_str(st, "source") == "candidates") {
            std::vector<MultiPoly> cands;
            for (const auto& nm : split_list(kv_str(st, "candidates")))
                cands.push_back(cert_poly(cert, nm));
            std::vector<uint64_t> g00;
            if (cands.size() > 1) {
                auto rows0 = section_series_mod(steps, Section::Origin, (int)N, p);
                for (const auto& r : rows0) g00.push_back(r[0]);
            }
            residual = verify_reduced_kernel_series(steps, cands, g00, N, p);
        } else {
            RingFp R(p);
            std::vector<SeriesFp> sections;
            std::vector<uint64_t> g00;
            if (same_steps(steps, "W,S,NE")) {
                auto rows = section_series_mod(steps, Section::X0, (int)N, p);
                sections.push_back(section_to_series_fp(rows, N, p));
            } else {
                dp_reduced_sections(steps, N, p, sections, g00);
            }
            residual = reduced_kernel_residual_order(steps, sections, g00, N, R);
        }
        return residual == kv_u64(st, "residual") && residual >= N;
    }
    if (st.name == "exact-verify") {
        const MultiPoly& P = cert_poly(cert, kv_str(st, "poly"));
        const MultiPoly& q = cert_poly(cert, kv_str(st, "quotient"));
        StepSet steps = StepSet::parse(kv_str(st, "steps"));
        MultiPoly A = section_substitution_numerator(P);
        MultiPoly R = resultant(A, build_kernel(steps).kernel, VAR_y);
        MultiPoly qq;
        if (!divides(mul(P, P), R, &qq)) return false;
        return degree(qq, VAR_T) == 0 && poly_eq(qq, q);
    }
    if (st.name == "identical-annihilators") {
        const MultiPoly& A = cert_poly(cert, kv_str(st, "polyA"));
        const MultiPoly& B = cert_poly(cert, kv_str(st, "polyB"));
        if (!poly_eq(int_normalize(A), int_normalize(B))) return false;
        StepSet steps = StepSet::parse(kv_str(st, "steps"));
        size_t terms = kv_u64(st, "terms");
        auto r1 = section_series_int(steps, Section::X0, (int)terms);
        auto r2 = section_series_int(steps, Section::Y0, (int)terms);
        return r1 == r2;
    }
    if (st.name == "initial-terms") {
        const MultiPoly& P = cert_poly(cert, kv_str(st, "poly"));
        StepSet steps = StepSet::parse(kv_str(st, "steps"));
        Section which = section_from_name(kv_str(st, "section"));
        uint64_t p = kv_u64(st, "prime");
        size_t terms = kv_u64(st, "terms");
        RingFp R(p);
        SeriesFp lift = newton_lift(P, l_monomial(0, R.one(), R), R, terms);
        auto rows = section_series_mod(steps, which, (int)terms, p);
        SeriesFp dp = section_to_series_fp(rows, terms, p);
        return s_agree_order(lift, dp, terms, R) >= terms;
    }
    if (st.name == "g00-chain") return check_g00_chain(cert, st);
    if (st.name == "modular-algeq") {
        const MultiPoly& P = cert_poly(cert, kv_str(st, "poly"));
        if (degree(P, VAR_T) != (int)kv_long(st, "degT")) return false;
        StepSet steps = StepSet::parse(kv_str(st, "steps"));
        uint64_t p = kv_u64(st, "prime");
        size_t n = kv_u64(st, "n");
        uint64_t pt = kv_u64(st, "point");
        RingFp R(p);
        auto vals = st.get("object") == "U"
                        ? point_u_values(steps, pt, p, n)
                        : point_section_values(steps, Section::X0, pt, p, n);
        SeriesFp F = series_from_u64(vals, n, R);
        return s_tval(poly_eval_series(P, F, R)) >= n;
    }
    if (st.name == "modular-diffeq")
        return check_operator_family(cert, st, split_list(kv_str(st, "ops")));
    if (st.name == "gcrd") {
        if (!check_operator_family(cert, st, {kv_str(st, "op")})) return false;
        uint64_t p = kv_u64(st, "prime");
        FpCtx C(p);
        OreOp<FpCtx> G = stored_op_mod(cert, kv_str(st, "op"), p);
        for (const auto& nm : split_list(kv_str(st, "inputs"))) {
            OreOp<FpCtx> L = stored_op_mod(cert, nm, p);
            if (!right_divide(C, L, G).second.is_zero()) return false;
        }
        return true;
    }
    if (st.name == "curvature") {
        uint64_t p = kv_u64(st, "prime");
        FpCtx C(p);
        OreOp<FpCtx> L = stored_op_mod(cert, kv_str(st, "operator"), p);
        if (L.order() != (int)kv_u64(st, "order")) return false;
        if (!st.get("point").empty()) {
            StepSet steps = StepSet::parse(kv_str(st, "steps"));
            auto vals = point_section_values(steps, Section::X0, kv_u64(st, "point"), p,
                                             kv_u64(st, "terms"));
            if (!op_kills(C, L, vals)) return false;
        }
        return p_curvature_zero(C, L);
    }
    return false;  // unknown stage: the certificate is not self-contained
}

}  // namespace

bool recheck_certificate(const Certificate& cert) {
    if (cert.stages.empty()) return false;
    try {
        for (const auto& st : cert.stages) {
            if (!st.ok) continue;  // a failed stage asserts nothing
            if (!recheck_stage(cert, st)) return false;
        }
    } catch (const std::exception&) {
        return false;  // malformed numbers and arithmetic failures alike
    }
    return true;
}

// --- operator text helpers --------------------------------------------------------------

namespace {

FpPoly fp_lcm(const FpPoly& a, const FpPoly& b) {
    return divrem(mul(a, b), gcd(a, b)).first;
}

std::vector<FpPoly> cleared_fp_polys(const FpCtx& C, const OreOp<FpCtx>& L) {
    FpPoly l = FpPoly::constant(C.p, 1);
    for (const auto& a : L.a)
        if (!C.is_zero(a.den)) l = fp_lcm(l, a.den);
    std::vector<FpPoly> out;
    for (const auto& a : L.a) out.push_back(mul(a.num, divrem(l, a.den).first));
    return out;
}

}  // namespace

int cleared_max_deg_fp(const FpCtx& C, const OreOp<FpCtx>& L) {
    int d = -1;
    for (const auto& q : cleared_fp_polys(C, L)) d = std::max(d, q.deg());
    return d;
}

std::string fp_op_text(const FpCtx& C, const OreOp<FpCtx>& L) {
    std::vector<QPoly> qs;
    for (const auto& f : cleared_fp_polys(C, L)) {
        std::vector<Rat> c;
        for (uint64_t v : f.c) c.push_back(Rat((long)v));
        qs.push_back(QPoly(std::move(c)));
    }
    QCtx QC;
    return print_operator(ore_from_polys(QC, qs));
}

// --- exact verification -------------------------------------------------------------------

namespace {

void add_stage(Certificate& cert, std::string name, bool ok,
               std::vector<std::pair<std::string, std::string>> kv, std::string note) {
    CertStage st;
    st.name = std::move(name);
    st.ok = ok;
    st.kv = std::move(kv);
    st.note = std::move(note);
    cert.stages.push_back(std::move(st));
}

void add_poly(Certificate& cert, const std::string& name, const MultiPoly& p) {
    if (!cert.poly(name)) cert.polynomials.push_back({name, p});
}

// Shared by verify_reduced_kernel_exact and the pipeline.
void exact_verify_into(Certificate& cert, const StepSet& steps, const MultiPoly& P1in,
                       const MultiPoly& P2in, const MultiPoly& g00_poly,
                       const ExactBudget& budget) {
    uint64_t p = default_prime_pool(1)[0];
    std::string steps_s = steps.str();

    if (same_steps(steps, "W,S,NE")) {
        MultiPoly P = int_normalize(P1in);
        add_poly(cert, "P", P);
        size_t dTdt = (size_t)degree(P, VAR_T) * (size_t)degree(P, VAR_t);

        // both axis sections have the same annihilator; certify they coincide
        if (poly_eq(int_normalize(P2in), P)) {
            size_t terms = 2 * dTdt;
            auto r1 = section_series_int(steps, Section::X0, (int)terms);
            auto r2 = section_series_int(steps, Section::Y0, (int)terms);
            add_stage(cert, "identical-annihilators", r1 == r2,
                      {{"polyA", "P"}, {"polyB", "P"}, {"steps", steps_s}, {"terms", ts(terms)}},
                      "axis sections share the annihilator and agree term by term");
        }

        MultiPoly A = section_substitution_numerator(P);
        MultiPoly K = build_kernel(steps).kernel;
        int dim = degree(A, VAR_y) + degree(K, VAR_y);
        if (dim > budget.max_sylvester) {
            cert.mode = "series-order-N";
            cert.caveats.push_back("exact resultant needs a " + ti(dim) +
                                   "-dimensional elimination, beyond the budget of " +
                                   ti(budget.max_sylvester) + "; downgraded to series mode");
        } else {
            MultiPoly R = resultant(A, K, VAR_y);
            MultiPoly q;
            bool okdiv = divides(mul(P, P), R, &q);
            bool ok = okdiv && degree(q, VAR_T) == 0;
            if (okdiv) add_poly(cert, "Qexact", q);
            add_stage(cert, "exact-verify", ok,
                      {{"poly", "P"},
                       {"quotient", okdiv ? "Qexact" : "none"},
                       {"steps", steps_s},
                       {"sylvester", ti(dim)},
                       {"qdeg", okdiv ? ti(total_degree(q)) : std::string("-")}},
                      "resultant of the substitution numerator against the kernel equals the "
                      "candidate squared, up to the recorded T-free quotient");
        }

        size_t terms = 2 * dTdt + 10;
        bool iok = false;
        std::string note = "candidate root matches the counted section";
        try {
            RingFp R(p);
            SeriesFp lift = newton_lift(P, l_monomial(0, R.one(), R), R, terms);
            auto rows = section_series_mod(steps, Section::X0, (int)terms, p);
            iok = s_agree_order(lift, section_to_series_fp(rows, terms, p), terms, R) >= terms;
        } catch (const error& e) {
            note = e.what();
        }
        add_stage(cert, "initial-terms", iok,
                  {{"poly", "P"},
                   {"steps", steps_s},
                   {"section", "X0"},
                   {"prime", ts(p)},
                   {"terms", ts(terms)}},
                  note);
        return;
    }

    if (!same_steps(steps, "E,W,NE,SW"))
        throw error("verify_reduced_kernel_exact: unsupported step set " + steps_s);

    auto norm2 = [&](MultiPoly q) {
        if (degree(q, VAR_y) > 0) {
            if (degree(q, VAR_x) > 0)
                throw error("verify_reduced_kernel_exact: candidate uses both x and y");
            q = swap_vars(q, VAR_x, VAR_y);
        }
        return int_normalize(q);
    };
    MultiPoly P1 = int_normalize(P1in), P2 = norm2(P2in);
    if (g00_poly.is_zero()) {
        add_stage(cert, "exact-verify", false, {{"poly", "none"}, {"quotient", "none"},
                  {"steps", steps_s}, {"sylvester", "0"}, {"qdeg", "-"}},
                  "missing origin-series annihilator");
        return;
    }
    add_poly(cert, "P1", P1);
    add_poly(cert, "P2", P2);
    add_poly(cert, "G00", int_normalize(g00_poly));

    // second kernel identity: (1+x)*G2 - G00 on the left, x*X/t - G1(t,X) on the right
    long add_dim = degree(P2, VAR_T) + degree(g00_poly, VAR_T);
    long sub_dim = degree(P1, VAR_x) + 2;
    long est = std::max(add_dim, sub_dim);
    long out_terms = (long)(degree(P1, VAR_T) + 1) * (degree(P2, VAR_T) + 1) *
                     (degree(g00_poly, VAR_T) + 1);
    if (est > budget.max_sylvester || out_terms > budget.max_output_terms) {
        cert.mode = "series-order-N";
        cert.caveats.push_back(
            "closure chain for the second kernel identity needs a " + ti(est) +
            "-dimensional elimination with ~" + ti(out_terms) +
            " T-degree product, beyond budget; downgraded to series mode on the counted "
            "sections");
        size_t N = budget.fallback_series_N;
        RingFp R(p);
        std::vector<SeriesFp> sections;
        std::vector<uint64_t> g00;
        dp_reduced_sections(steps, N, p, sections, g00);
        size_t residual = reduced_kernel_residual_order(steps, sections, g00, N, R);
        add_stage(cert, "series-verify", residual >= N,
                  {{"steps", steps_s},
                   {"prime", ts(p)},
                   {"N", ts(N)},
                   {"residual", ts(residual)},
                   {"source", "sections"}},
                  "reduced two-equation system on the counted sections");
        return;
    }

    ClosureAux onepx;
    onepx.num = add(MultiPoly(Int(1)), MultiPoly::var(VAR_x));
    MultiPoly s1 = annihilator_closure(ClosureOp::Scale, {P2}, onepx);
    ClosureAux minus;
    minus.subtract = true;
    MultiPoly lhs_ann = annihilator_closure(ClosureOp::Add, {s1, g00_poly}, minus);

    MultiPoly K = build_kernel(steps).kernel;
    MultiPoly KX = swap_vars(swap_vars(K, VAR_x, VAR_T), VAR_y, VAR_x);
    ClosureAux xovert;
    xovert.num = MultiPoly::var(VAR_x);
    xovert.den = MultiPoly::var(VAR_t);
    MultiPoly sKX = annihilator_closure(ClosureOp::Scale, {KX}, xovert);
    MultiPoly subbed = annihilator_closure(ClosureOp::Substitute, {P1, KX});
    MultiPoly rhs_ann = annihilator_closure(ClosureOp::Add, {sKX, subbed}, minus);
    add_poly(cert, "LHSann", lhs_ann);
    add_poly(cert, "RHSann", rhs_ann);

    bool cok = true;
    int dcommon = -1;
    std::string cnote;
    for (long x0 : {2L, 3L, 5L}) {
        int d = common_factor_degree_probe(lhs_ann, rhs_ann, Int(x0));
        if (dcommon < 0) dcommon = d;
        cok = cok && d >= 1 && d == dcommon;
        cnote += (cnote.empty() ? "gcd degrees at x=2,3,5: " : ",") + ti(d);
    }
    add_stage(cert, "common-factor", cok,
              {{"polyA", "LHSann"}, {"polyB", "RHSann"}, {"degT", ti(dcommon)}}, cnote);

    size_t terms = 2 * (size_t)std::max(degree(lhs_ann, VAR_T), 1) *
                       (size_t)std::max(degree(lhs_ann, VAR_t), 1) +
                   10;
    bool iok = false;
    std::string note;
    try {
        RingFp R(p);
        size_t N = terms;
        SeriesFp G2c = newton_lift(P2, l_monomial(0, R.one(), R), R, N);
        SeriesFp g0c = newton_lift(g00_poly, l_monomial(0, R.one(), R), R, N);
        SeriesFp G1c = newton_lift(P1, l_monomial(0, R.one(), R), R, N);
        SeriesFp X = kernel_root(steps, false, R, N + 1);
        Laurent<RingFp> w;
        w.off = 0;
        w.c = {R.one(), R.one()};
        SeriesFp lhs = s_sub(s_scale(s_truncate(G2c, N), w, R), g0c, R);
        SeriesFp rhs = s_sub(shift_x(s_truncate(s_div_t(X, 1), N), 1), compose(G1c, X, R, N), R);
        size_t agree = s_tval(s_sub(lhs, rhs, R));
        iok = agree >= N;
        note = "both sides of the second kernel identity agree to order " + ts(agree);
    } catch (const error& e) {
        note = e.what();
    }
    add_stage(cert, "initial-terms-pair", iok,
              {{"polyA", "LHSann"},
               {"polyB", "RHSann"},
               {"steps", steps_s},
               {"prime", ts(p)},
               {"terms", ts(terms)}},
              note);
}

}  // namespace

Certificate verify_reduced_kernel_exact(const StepSet& steps, const MultiPoly& P1,
                                        const MultiPoly& P2, const MultiPoly& g00_poly,
                                        const ExactBudget& budget) {
    Certificate cert;
    cert.target = "axis sections for steps " + steps.str();
    cert.mode = "exact-resultant";
    exact_verify_into(cert, steps, P1, P2, g00_poly, budget);
    return cert;
}

// --- pipeline ---------------------------------------------------------------------------------

namespace {

// Multi-prime algebraic guess of the origin series, assembled over Q.
MultiPoly guess_origin_algeq(const StepSet& steps, const AnsatzGrid& grid,
                             const std::vector<uint64_t>& primes, long* margin_out) {
    std::vector<GuessReportFp> reps;
    for (uint64_t p : primes) {
        auto rows = section_series_mod(steps, Section::Origin, (int)grid.N - 1, p);
        std::vector<uint64_t> vals;
        for (const auto& r : rows) vals.push_back(r[0]);
        GuessReportFp g = guess_algeq(vals, grid, p);
        if (!g.found)
            throw error("origin guess: no relation in the ansatz box mod " + ts(p));
        reps.push_back(std::move(g));
    }
    for (const auto& r : reps) {
        if (r.main_degree != reps[0].main_degree || r.coeff.size() != reps[0].coeff.size())
            throw error("origin guess: shape disagreement across primes");
        for (const auto& [k, v] : reps[0].coeff)
            if (!r.coeff.count(k)) throw error("origin guess: shape disagreement across primes");
    }
    // CRT + rational reconstruction per coefficient, then clear denominators
    std::map<std::pair<int, int>, Rat> lifted;
    for (const auto& [key, v0] : reps[0].coeff) {
        std::vector<uint64_t> residues;
        for (const auto& r : reps) residues.push_back(r.coeff.at(key));
        auto [x, M] = crt(residues, primes);
        Rat q;
        if (!rational_reconstruct(x, M, q))
            throw error("origin guess: rational reconstruction failed; add primes");
        lifted[key] = q;
    }
    Int den(1);
    for (const auto& [k, q] : lifted) den = divexact(den * q.den(), gcd(den, q.den()));
    MultiPoly out;
    for (const auto& [k, q] : lifted) {
        Mono m;
        m.e[VAR_T] = (int16_t)k.first;
        m.e[VAR_t] = (int16_t)k.second;
        Int c = divexact(q.num() * den, q.den());
        out = add(out, MultiPoly::term(c, m));
    }
    if (margin_out) *margin_out = reps[0].margin;
    return int_normalize(out);
}

std::vector<std::vector<uint64_t>> derivative_rows(const std::vector<uint64_t>& f, int r,
                                                   size_t Np, uint64_t p) {
    if (f.size() < Np + (size_t)r)
        throw error("derivative rows: need " + ts(Np + (size_t)r) + " terms, got " + ts(f.size()));
    std::vector<std::vector<uint64_t>> rows((size_t)r + 1);
    rows[0].assign(f.begin(), f.begin() + (long)(Np + (size_t)r));
    for (int k = 1; k <= r; ++k) {
        const auto& prev = rows[(size_t)k - 1];
        rows[(size_t)k].resize(prev.size() - 1);
        for (size_t n = 0; n + 1 < prev.size(); ++n)
            rows[(size_t)k][n] = mulmod((n + 1) % p, prev[n + 1], p);
    }
    for (auto& row : rows) row.resize(Np);
    return rows;
}

struct OperatorEvidence {
    bool ok = false;
    std::string note;
    std::vector<std::pair<std::string, std::string>> ops;  // name → text
    std::string gcrd_name, gcrd_text;
    int bundle_count = 0;
    int gcrd_order = -1;
    int gcrd_maxdeg = -1;
    bool curvature_zero = false;
    bool curvature_ran = false;
};

// Operator bundle at one (prime, point): Hermite–Padé at the given order/degree
// box, gcrd of the bundle, optional p-curvature check of the gcrd.
OperatorEvidence operator_evidence(const StepSet& steps, uint64_t p, uint64_t point, size_t terms,
                                   int order, int tdeg, const std::string& name_prefix,
                                   bool run_curvature) {
    OperatorEvidence ev;
    FpCtx C(p);
    auto vals = point_section_values(steps, Section::X0, point, p, terms);
    size_t Np = terms - (size_t)order;
    auto rows = derivative_rows(vals, order, Np, p);
    std::vector<int> bounds((size_t)order + 1, tdeg);
    HPBasis basis = hermite_pade(rows, bounds, Np, p);
    std::vector<OreOp<FpCtx>> bundle;
    for (const auto& row : basis) {
        OreOp<FpCtx> L = ore_from_polys(C, row);
        if (L.order() == order && (int)bundle.size() < 6) bundle.push_back(std::move(L));
    }
    ev.bundle_count = (int)bundle.size();
    if (bundle.size() < 2) {
        ev.note = "found " + ts(bundle.size()) + " operators of order " + ti(order) +
                  "; need at least 2 for a gcrd";
        return ev;
    }
    for (size_t i = 0; i < bundle.size(); ++i) {
        std::string nm = name_prefix + (char)('a' + (char)i);
        ev.ops.push_back({nm, fp_op_text(C, bundle[i])});
    }
    OreOp<FpCtx> G = bundle[0];
    for (size_t i = 1; i < bundle.size(); ++i) G = gcrd(C, G, bundle[i]);
    ev.gcrd_order = G.order();
    ev.gcrd_maxdeg = cleared_max_deg_fp(C, G);
    ev.gcrd_name = name_prefix + "gcrd";
    ev.gcrd_text = fp_op_text(C, G);
    if (!op_kills(C, G, vals)) {
        ev.note = "gcrd does not annihilate the section series";
        return ev;
    }
    if (run_curvature) {
        ev.curvature_ran = true;
        ev.curvature_zero = p_curvature_zero(C, G);
    }
    ev.ok = true;
    return ev;
}

// Single-box operator guess at one (prime, point): the minimal-order
// annihilating row of the approximant basis, made monic.  Used for the
// small-prime curvature checks, where the wide bundle box can collapse to a
// single row but the common-factor shape is already known.
struct DirectOpGuess {
    bool ok = false;
    std::string note;
    OreOp<FpCtx> L;
};

DirectOpGuess direct_operator_guess(const FpCtx& C, const StepSet& steps, uint64_t point,
                                    size_t terms, int order, int tdeg) {
    DirectOpGuess out;
    auto vals = point_section_values(steps, Section::X0, point, C.p, terms);
    size_t Np = terms - (size_t)order;
    auto rows = derivative_rows(vals, order, Np, C.p);
    std::vector<int> bounds((size_t)order + 1, tdeg);
    HPBasis basis = hermite_pade(rows, bounds, Np, C.p);
    bool have = false;
    OreOp<FpCtx> best;
    for (const auto& row : basis) {
        OreOp<FpCtx> L = ore_from_polys(C, row);
        if (L.is_zero() || !op_kills(C, L, vals)) continue;
        if (!have || L.order() < best.order()) {
            best = L;
            have = true;
        }
    }
    if (!have) {
        out.note = "no annihilating operator in the box";
        return out;
    }
    out.ok = true;
    out.L = ore_monic(C, best);
    return out;
}

std::vector<long> default_guess_points(int deg_x_bound) {
    std::vector<long> pts;
    for (long k = 1; pts.size() < (size_t)(2 * deg_x_bound + 8); ++k) pts.push_back(k);
    return pts;
}

}  // namespace

Certificate run_proof_pipeline(const StepSet& steps, const PipelineConfig& cfg) {
    Certificate cert;
    cert.target = "quadrant model with steps " + steps.str();
    cert.mode = "series-order-N";
    std::string steps_s = steps.str();
    std::vector<uint64_t> primes = cfg.primes.empty() ? default_prime_pool(4) : cfg.primes;
    uint64_t p0 = primes[0];
    uint64_t p1 = primes.size() > 1 ? primes[1] : primes[0];

    KernelEquation eq = build_kernel(steps);

    {
        int n = 18;
        Int v = count(steps, n, 0, 0);
        add_stage(cert, "count", true,
                  {{"steps", steps_s},
                   {"n", ti(n)},
                   {"i", "0"},
                   {"j", "0"},
                   {"value", v.str()}},
                  "exact corner-count probe");
    }
    {
        size_t res = kernel_residual_order(eq, p0, cfg.kernel_N);
        add_stage(cert, "kernel", res >= cfg.kernel_N,
                  {{"steps", steps_s},
                   {"prime", ts(p0)},
                   {"N", ts(cfg.kernel_N)},
                   {"residual", ts(res)}},
                  "counted series satisfies the kernel functional equation");
    }

    if (eq.boundary.empty()) {
        // no axis corrections: K·G = -xy exactly, so G is rational
        cert.mode = "rational";
        MultiPoly ann = add(mul(MultiPoly::var(VAR_T), eq.kernel), neg(eq.constant));
        add_poly(cert, "P", int_normalize(ann));
        size_t res = kernel_residual_order(eq, p1, cfg.kernel_N);
        add_stage(cert, "rational", res >= cfg.kernel_N,
                  {{"poly", "P"},
                   {"steps", steps_s},
                   {"prime", ts(p1)},
                   {"N", ts(cfg.kernel_N)},
                   {"residual", ts(res)}},
                  "boundary-free kernel equation pins G as the root of a T-linear polynomial");
        if (!cfg.out_path.empty()) write_certificate(cert, cfg.out_path);
        return cert;
    }

    // algebraic route first
    GuessReport rep;
    std::string guess_fail;
    try {
        AnsatzGrid grid(GuessKind::Algebraic, cfg.max_main_degree, cfg.max_t_degree,
                        cfg.count_terms);
        SectionSpec sec{steps, Section::X0};
        PipelineOptions po;
        po.threads = cfg.threads;
        std::vector<long> pts =
            cfg.points.empty() ? default_guess_points(cfg.max_main_degree + cfg.max_t_degree)
                               : cfg.points;
        rep = modular_guess_pipeline(sec, grid, {p0}, pts, po);
    } catch (const error& e) {
        guess_fail = e.what();
    }

    if (rep.found) {
        MultiPoly P = int_normalize(rep.candidate);
        add_poly(cert, "P", P);
        add_stage(cert, "guess", true,
                  {{"poly", "P"},
                   {"degT", ti(degree(P, VAR_T))},
                   {"degt", ti(degree(P, VAR_t))},
                   {"degTbox", ti(cfg.max_main_degree)},
                   {"degtbox", ti(cfg.max_t_degree)},
                   {"precision", ts(rep.precision)},
                   {"margin", ti(rep.margin)}},
                  "algebraic candidate for the x-axis section");
        {
            RingFp R(p1);
            auto rows = section_series_mod(steps, Section::X0, (int)cfg.count_terms, p1);
            SeriesFp F = section_to_series_fp(rows, cfg.count_terms, p1);
            size_t res = s_tval(poly_eval_series(P, F, R));
            add_stage(cert, "annihilation", res >= cfg.count_terms,
                      {{"poly", "P"},
                       {"steps", steps_s},
                       {"section", "X0"},
                       {"prime", ts(p1)},
                       {"N", ts(cfg.count_terms)}},
                      "candidate annihilates the counted section at a fresh prime");
        }
        {
            bool uok = false;
            std::string note = "one-solution hypotheses and contraction demonstrated";
            size_t Nu = 32;
            try {
                RingFp R(p0);
                std::vector<SeriesFp> B, Y;
                reduced_kernel_homogeneous(steps, Nu, R, B, Y);
                uok = uniqueness_witness(B, Y, Nu, R);
            } catch (const error& e) {
                note = e.what();
            }
            add_stage(cert, "uniqueness", uok,
                      {{"steps", steps_s}, {"prime", ts(p0)}, {"N", ts(Nu)}}, note);
        }
        {
            bool sok = false;
            size_t residual = 0;
            std::string note = "candidate root satisfies the reduced kernel equation";
            try {
                residual = verify_reduced_kernel_series(steps, {P}, {}, cfg.series_N, p1);
                sok = residual >= cfg.series_N;
            } catch (const error& e) {
                note = e.what();
            }
            add_stage(cert, "series-verify", sok,
                      {{"steps", steps_s},
                       {"prime", ts(p1)},
                       {"N", ts(cfg.series_N)},
                       {"residual", ts(residual)},
                       {"source", "candidates"},
                       {"candidates", "P"}},
                      note);
        }
        if (cfg.exact_mode) {
            cert.mode = "exact-resultant";
            exact_verify_into(cert, steps, P, P, MultiPoly(), ExactBudget{});
        }
        if (cfg.curvature_pmax >= 2 && same_steps(steps, "W,S,NE")) {
            MultiPoly cubic = canonicalize(specialize(P, VAR_x, Int(0)));
            add_poly(cert, "G00", cubic);
            {
                bool gok = false;
                std::string note;
                int ord = 0;
                std::string optext;
                size_t terms = 50;
                try {
                    OreOp<QCtx> L = algeq_to_diffeq(cubic);
                    ord = L.order();
                    optext = print_operator(L);
                    PRecurrence rec = diffeq_to_rec(L);
                    auto rows = section_series_int(steps, Section::Origin, (int)terms);
                    std::vector<Rat> init;
                    for (size_t n = 0; n < rec.initial_values && n <= terms; ++n)
                        init.push_back(Rat(rows[n][0]));
                    auto vals = recurrence_unroll(rec, init, terms);
                    gok = true;
                    for (size_t n = 0; n <= terms; ++n)
                        if (vals[n] != Rat(rows[n][0])) gok = false;
                    note = "origin annihilator chains to a recurrence matching the counts";
                } catch (const error& e) {
                    note = e.what();
                }
                if (!optext.empty()) cert.operators.push_back({"Lg00", optext});
                add_stage(cert, "g00-chain", gok,
                          {{"poly", "G00"},
                           {"op", "Lg00"},
                           {"steps", steps_s},
                           {"order", ti(ord)},
                           {"terms", ts(terms)}},
                          note);
                if (gok) {
                    for (uint64_t pc : small_primes_below(cfg.curvature_pmax)) {
                        if ((int)pc <= ord) continue;
                        bool zk = false;
                        std::string cnote = "reduction of the origin operator";
                        try {
                            OreOp<QCtx> L = parse_operator(optext);
                            FpCtx C(pc);
                            OreOp<FpCtx> Lp = reduce_op_mod(L, pc);
                            zk = p_curvature_zero(C, Lp);
                        } catch (const error& e) {
                            cnote = e.what();
                        }
                        add_stage(cert, "curvature", zk,
                                  {{"operator", "Lg00"}, {"prime", ts(pc)}, {"order", ti(ord)}},
                                  cnote);
                    }
                }
            }
        }
        if (!cfg.out_path.empty()) write_certificate(cert, cfg.out_path);
        return cert;
    }

    // two-section route
    cert.caveats.push_back("no algebraic relation with deg_T <= " + ti(cfg.max_main_degree) +
                           ", deg_t <= " + ti(cfg.max_t_degree) + " in " + ts(cfg.count_terms) +
                           " terms of the axis section" +
                           (guess_fail.empty() ? "" : " (" + guess_fail + ")"));
    if (!same_steps(steps, "E,W,NE,SW")) {
        add_stage(cert, "guess-missing", false, {{"steps", steps_s}},
                  "no algebraic candidate found and no two-section fallback for this step set");
        if (!cfg.out_path.empty()) write_certificate(cert, cfg.out_path);
        return cert;
    }

    // origin annihilator and its recurrence chain
    MultiPoly Pg;
    bool have_g00 = false;
    {
        long margin = 0;
        std::string note = "origin-series annihilator assembled from modular guesses";
        try {
            AnsatzGrid ggrid(GuessKind::Algebraic, cfg.origin_deg, cfg.origin_tdeg,
                             cfg.origin_terms);
            std::vector<uint64_t> gp(primes.begin(),
                                     primes.begin() + std::min<size_t>(3, primes.size()));
            Pg = guess_origin_algeq(steps, ggrid, gp, &margin);
            have_g00 = true;
        } catch (const error& e) {
            note = e.what();
        }
        if (have_g00) {
            add_poly(cert, "G00", Pg);
            add_stage(cert, "guess", true,
                      {{"poly", "G00"},
                       {"degT", ti(degree(Pg, VAR_T))},
                       {"degt", ti(degree(Pg, VAR_t))},
                       {"degTbox", ti(cfg.origin_deg)},
                       {"degtbox", ti(cfg.origin_tdeg)},
                       {"precision", ts(cfg.origin_terms)},
                       {"margin", ti(margin)}},
                      note);
        } else {
            add_stage(cert, "guess-missing", false, {{"steps", steps_s}}, note);
        }
    }
    if (have_g00) {
        bool gok = false;
        std::string note;
        int ord = 0;
        std::string optext;
        size_t terms = 50;
        try {
            OreOp<QCtx> L = algeq_to_diffeq(Pg);
            ord = L.order();
            optext = print_operator(L);
            PRecurrence rec = diffeq_to_rec(L);
            auto rows = section_series_int(steps, Section::Origin, (int)terms);
            std::vector<Rat> init;
            for (size_t n = 0; n < rec.initial_values && n <= terms; ++n)
                init.push_back(Rat(rows[n][0]));
            auto vals = recurrence_unroll(rec, init, terms);
            gok = true;
            for (size_t n = 0; n <= terms; ++n)
                if (vals[n] != Rat(rows[n][0])) gok = false;
            note = "origin annihilator chains to a recurrence matching the counts";
        } catch (const error& e) {
            note = e.what();
        }
        if (!optext.empty()) cert.operators.push_back({"Lg00", optext});
        add_stage(cert, "g00-chain", gok,
                  {{"poly", "G00"},
                   {"op", "Lg00"},
                   {"steps", steps_s},
                   {"order", ti(ord)},
                   {"terms", ts(terms)}},
                  note);
    }

    // single-point algebraic relation for the stripped axis section U
    std::string upt = ti(cfg.section_point);
    if (cfg.modular_terms > 0) {
        bool mok = false;
        std::string note =
            "modular algebraic relation for the stripped axis section at one point";
        GuessReportFp ga;
        try {
            AnsatzGrid ma(GuessKind::Algebraic, cfg.modular_algeq_deg, cfg.modular_algeq_tdeg,
                          cfg.modular_terms);
            auto vals = point_u_values(steps, (uint64_t)cfg.section_point, p0, cfg.modular_terms);
            ga = guess_algeq(vals, ma, p0);
            mok = ga.found;
            if (!ga.found) note = "no relation in the ansatz box";
        } catch (const error& e) {
            note = e.what();
        }
        if (mok) {
            MultiPoly Pm = guess_to_poly(ga);
            add_poly(cert, "P1mod", Pm);
            add_stage(cert, "modular-algeq", true,
                      {{"poly", "P1mod"},
                       {"steps", steps_s},
                       {"prime", ts(p0)},
                       {"point", upt},
                       {"object", "U"},
                       {"n", ts(ga.precision)},
                       {"degT", ti(ga.main_degree)},
                       {"degt", ti(ga.t_degree)},
                       {"margin", ti(ga.margin)}},
                      note);
        } else {
            add_stage(cert, "modular-algeq", false,
                      {{"poly", "none"},
                       {"steps", steps_s},
                       {"prime", ts(p0)},
                       {"point", upt},
                       {"object", "U"},
                       {"n", ts(cfg.modular_terms)},
                       {"degT", "-1"},
                       {"degt", "-1"},
                       {"margin", "0"}},
                      note);
        }
    }

    // operator bundle and gcrd at the main prime
    if (cfg.operator_terms > 0) {
        OperatorEvidence ev;
        std::string note;
        try {
            ev = operator_evidence(steps, p0, (uint64_t)cfg.section_point, cfg.operator_terms,
                                   cfg.operator_order, cfg.operator_tdeg, "L14", false);
            note = ev.ok ? "order-" + ti(cfg.operator_order) + " bundle and its gcrd" : ev.note;
        } catch (const error& e) {
            note = e.what();
        }
        if (ev.ok) {
            std::string op_names;
            for (const auto& [nm, text] : ev.ops) {
                cert.operators.push_back({nm, text});
                op_names += (op_names.empty() ? "" : ",") + nm;
            }
            cert.operators.push_back({ev.gcrd_name, ev.gcrd_text});
            int bundle_maxdeg = 0;
            {
                FpCtx C(p0);
                for (const auto& [nm, text] : ev.ops)
                    bundle_maxdeg = std::max(
                        bundle_maxdeg, cleared_max_deg_fp(C, reduce_op_mod(parse_operator(text), p0)));
            }
            add_stage(cert, "modular-diffeq", true,
                      {{"ops", op_names},
                       {"steps", steps_s},
                       {"prime", ts(p0)},
                       {"point", upt},
                       {"terms", ts(cfg.operator_terms)},
                       {"order", ti(cfg.operator_order)},
                       {"maxdeg", ti(bundle_maxdeg)},
                       {"count", ti(ev.bundle_count)}},
                      note);
            add_stage(cert, "gcrd", true,
                      {{"op", ev.gcrd_name},
                       {"inputs", op_names},
                       {"steps", steps_s},
                       {"prime", ts(p0)},
                       {"point", upt},
                       {"terms", ts(cfg.operator_terms)},
                       {"order", ti(ev.gcrd_order)},
                       {"maxdeg", ti(ev.gcrd_maxdeg)}},
                      "common right factor of the operator bundle annihilates the section");
        } else {
            add_stage(cert, "modular-diffeq", false,
                      {{"ops", "none"},
                       {"steps", steps_s},
                       {"prime", ts(p0)},
                       {"point", upt},
                       {"terms", ts(cfg.operator_terms)},
                       {"order", ti(cfg.operator_order)},
                       {"maxdeg", ti(cfg.operator_tdeg)},
                       {"count", ti(ev.bundle_count)}},
                      note);
        }

        // p-curvature at small primes: re-guess the common-factor operator in
        // its own (order, degree) box and test D_t^p divisibility
        if (ev.ok && cfg.curvature_pmax >= 2) {
            cert.caveats.push_back(
                "primes p <= the operator order cannot right-divide D_t^p and are skipped in "
                "the curvature checks");
            size_t cterms = std::max<size_t>(
                cfg.operator_terms,
                (size_t)((ev.gcrd_order + 1) * (ev.gcrd_maxdeg + 1)) + (size_t)ev.gcrd_order +
                    120);
            for (uint64_t pc : small_primes_below(cfg.curvature_pmax)) {
                if ((int)pc <= ev.gcrd_order) continue;
                bool zk = false;
                int ordp = -1;
                std::string opname = "none";
                std::string cnote;
                try {
                    FpCtx C(pc);
                    DirectOpGuess d = direct_operator_guess(C, steps, (uint64_t)cfg.section_point,
                                                            cterms, ev.gcrd_order, ev.gcrd_maxdeg);
                    if (d.ok) {
                        ordp = d.L.order();
                        zk = (int)pc > ordp && p_curvature_zero(C, d.L);
                        opname = "L" + ti(ev.gcrd_order) + "p" + ts(pc);
                        cert.operators.push_back({opname, fp_op_text(C, d.L)});
                        cnote = "re-guessed common-factor operator and its curvature";
                    } else {
                        cnote = d.note;
                    }
                } catch (const error& e) {
                    cnote = e.what();
                }
                add_stage(cert, "curvature", zk,
                          {{"operator", opname},
                           {"steps", steps_s},
                           {"prime", ts(pc)},
                           {"point", upt},
                           {"terms", ts(cterms)},
                           {"order", ti(ordp)}},
                          cnote);
            }
        }
    }

    // reduced two-equation system on the counted sections
    {
        size_t N = std::min<size_t>(cfg.series_N, 300);
        bool sok = false;
        size_t residual = 0;
        std::string note = "reduced two-equation system on the counted sections";
        try {
            RingFp R(p0);
            std::vector<SeriesFp> sections;
            std::vector<uint64_t> g00;
            dp_reduced_sections(steps, N, p0, sections, g00);
            residual = reduced_kernel_residual_order(steps, sections, g00, N, R);
            sok = residual >= N;
        } catch (const error& e) {
            note = e.what();
        }
        add_stage(cert, "series-verify", sok,
                  {{"steps", steps_s},
                   {"prime", ts(p0)},
                   {"N", ts(N)},
                   {"residual", ts(residual)},
                   {"source", "sections"}},
                  note);
        cert.caveats.push_back(
            "axis-section annihilators over Q are beyond the desk budget for this model; the "
            "certificate combines modular relations, the operator gcrd, curvature checks and "
            "the reduced-system residual instead");
    }
    {
        bool uok = false;
        std::string note = "one-solution hypotheses and contraction demonstrated";
        size_t Nu = 32;
        try {
            RingFp R(p0);
            std::vector<SeriesFp> B, Y;
            reduced_kernel_homogeneous(steps, Nu, R, B, Y);
            uok = uniqueness_witness(B, Y, Nu, R);
        } catch (const error& e) {
            note = e.what();
        }
        add_stage(cert, "uniqueness", uok, {{"steps", steps_s}, {"prime", ts(p0)}, {"N", ts(Nu)}},
                  note);
    }

    if (!cfg.out_path.empty()) write_certificate(cert, cfg.out_path);
    return cert;
}

}  // namespace walkprove
