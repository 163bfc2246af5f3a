#include "walkprove/bigint.hpp"

#include "walkprove/fp.hpp"

namespace walkprove {

Int abs(const Int& a) {
    Int r;
    mpz_abs(r.get(), a.get());
    return r;
}

Int gcd(const Int& a, const Int& b) {
    Int r;
    mpz_gcd(r.get(), a.get(), b.get());
    return r;
}

Int divexact(const Int& a, const Int& b) {
    if (b.is_zero()) throw error("Int: division by zero");
    Int r;
    mpz_divexact(r.get(), a.get(), b.get());
    return r;
}

bool divides(const Int& d, const Int& a) {
    if (d.is_zero()) return a.is_zero();
    return mpz_divisible_p(a.get(), d.get()) != 0;
}

std::pair<Int, Int> tdiv_qr(const Int& a, const Int& b) {
    if (b.is_zero()) throw error("Int: division by zero");
    Int q, r;
    mpz_tdiv_qr(q.get(), r.get(), a.get(), b.get());
    return {std::move(q), std::move(r)};
}

Int mod_euclid(const Int& a, const Int& m) {
    if (m.sgn() <= 0) throw error("mod_euclid: modulus must be positive");
    Int r;
    mpz_mod(r.get(), a.get(), m.get());
    return r;
}

Int pow(const Int& a, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get(), a.get(), e);
    return r;
}

uint64_t mod_u64(const Int& a, uint64_t p) {
    Int m = from_u64(p);
    Int r = mod_euclid(a, m);
    return mpz_get_ui(r.get());
}

Int from_u64(uint64_t x) {
    Int r;
    mpz_import(r.get(), 1, -1, sizeof(uint64_t), 0, 0, &x);
    return r;
}

Rat::Rat(const std::string& s) {
    mpq_init(v_);
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            Int n(s);
            mpz_set(mpq_numref(v_), n.get());
        } else {
            Int n(s.substr(0, slash)), d(s.substr(slash + 1));
            if (d.is_zero()) throw error("Rat: zero denominator");
            mpz_set(mpq_numref(v_), n.get());
            mpz_set(mpq_denref(v_), d.get());
            mpq_canonicalize(v_);
        }
    } catch (...) {
        mpq_clear(v_);
        throw;
    }
}

std::string Rat::str() const {
    std::string s = num().str();
    if (!is_integer()) s += "/" + den().str();
    return s;
}

uint64_t mod_u64(const Rat& a, uint64_t p) {
    uint64_t d = mod_u64(a.den(), p);
    if (d == 0) throw error("Rat: denominator vanishes modulo " + std::to_string(p));
    uint64_t n = mod_u64(a.num(), p);
    return mulmod(n, invmod(d, p), p);
}

std::pair<Int, Int> crt(const std::vector<uint64_t>& residues, const std::vector<uint64_t>& moduli) {
    if (residues.size() != moduli.size() || residues.empty())
        throw error("crt: bad input sizes");
    Int x = from_u64(residues[0] % moduli[0]);
    Int m = from_u64(moduli[0]);
    for (size_t i = 1; i < residues.size(); ++i) crt_step(x, m, residues[i], moduli[i]);
    return {std::move(x), std::move(m)};
}

void crt_step(Int& x, Int& m, uint64_t r2, uint64_t m2) {
    // x' = x + m * ((r2 - x) * m^-1 mod m2)
    uint64_t mm = mod_u64(m, m2);
    if (mm == 0) throw error("crt: moduli not coprime");
    uint64_t xm = mod_u64(x, m2);
    uint64_t t = mulmod(submod(r2 % m2, xm, m2), invmod(mm, m2), m2);
    x += m * from_u64(t);
    m *= from_u64(m2);
}

bool rational_reconstruct(const Int& x, const Int& M, Rat& out) {
    if (M.sgn() <= 0) throw error("rational_reconstruct: modulus must be positive");
    // bound B = floor(sqrt(M/2)); EEA rows (r, t) with r = s*M + t*x
    Int half = tdiv_qr(M, Int(2)).first;
    Int B;
    mpz_sqrt(B.get(), half.get());
    if (B.is_zero()) B = Int(1);

    Int r0 = M, r1 = mod_euclid(x, M);
    Int t0 = Int(0), t1 = Int(1);
    while (r1 >= B) {
        auto [q, r2] = tdiv_qr(r0, r1);
        Int t2 = t0 - q * t1;
        r0 = std::move(r1);
        r1 = std::move(r2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (abs(t1) > B || t1.is_zero()) return false;
    Int n = std::move(r1), d = std::move(t1);
    if (d.sgn() < 0) {
        n = -n;
        d = -d;
    }
    if (!gcd(d, M).is_one()) return false;
    if (!gcd(n, d).is_one()) return false;
    out = Rat(n, d);
    return true;
}

}  // namespace walkprove
