#pragma once

#include <gmp.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "walkprove/util.hpp"

namespace walkprove {

// Arbitrary-precision integer, value semantics over mpz_t.
class Int {
  public:
    Int() { mpz_init(v_); }
    Int(long x) { mpz_init_set_si(v_, x); }  // NOLINT(google-explicit-constructor)
    Int(unsigned long x) { mpz_init_set_ui(v_, x); }  // NOLINT
    Int(int x) : Int((long)x) {}  // NOLINT
    explicit Int(const std::string& s) {
        if (mpz_init_set_str(v_, s.c_str(), 10) != 0) {
            mpz_clear(v_);
            throw error("Int: cannot parse '" + s + "'");
        }
    }
    Int(const Int& o) { mpz_init_set(v_, o.v_); }
    Int(Int&& o) noexcept {
        mpz_init(v_);
        mpz_swap(v_, o.v_);
    }
    Int& operator=(const Int& o) {
        if (this != &o) mpz_set(v_, o.v_);
        return *this;
    }
    Int& operator=(Int&& o) noexcept {
        mpz_swap(v_, o.v_);
        return *this;
    }
    ~Int() { mpz_clear(v_); }

    mpz_ptr get() { return v_; }
    mpz_srcptr get() const { return v_; }

    bool is_zero() const { return mpz_sgn(v_) == 0; }
    bool is_one() const { return mpz_cmp_ui(v_, 1) == 0; }
    int sgn() const { return mpz_sgn(v_); }
    bool fits_slong() const { return mpz_fits_slong_p(v_) != 0; }
    long to_long() const {
        if (!fits_slong()) throw error("Int: value exceeds long range");
        return mpz_get_si(v_);
    }
    size_t bits() const { return mpz_sizeinbase(v_, 2); }
    std::string str() const {
        char* s = mpz_get_str(nullptr, 10, v_);
        std::string out(s);
        void (*freef)(void*, size_t);
        mp_get_memory_functions(nullptr, nullptr, &freef);
        freef(s, out.size() + 1);
        return out;
    }

    friend Int operator+(const Int& a, const Int& b) { Int r; mpz_add(r.v_, a.v_, b.v_); return r; }
    friend Int operator-(const Int& a, const Int& b) { Int r; mpz_sub(r.v_, a.v_, b.v_); return r; }
    friend Int operator*(const Int& a, const Int& b) { Int r; mpz_mul(r.v_, a.v_, b.v_); return r; }
    friend Int operator-(const Int& a) { Int r; mpz_neg(r.v_, a.v_); return r; }
    Int& operator+=(const Int& o) { mpz_add(v_, v_, o.v_); return *this; }
    Int& operator-=(const Int& o) { mpz_sub(v_, v_, o.v_); return *this; }
    Int& operator*=(const Int& o) { mpz_mul(v_, v_, o.v_); return *this; }

    friend bool operator==(const Int& a, const Int& b) { return mpz_cmp(a.v_, b.v_) == 0; }
    friend bool operator!=(const Int& a, const Int& b) { return !(a == b); }
    friend bool operator<(const Int& a, const Int& b) { return mpz_cmp(a.v_, b.v_) < 0; }
    friend bool operator<=(const Int& a, const Int& b) { return mpz_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>(const Int& a, const Int& b) { return mpz_cmp(a.v_, b.v_) > 0; }
    friend bool operator>=(const Int& a, const Int& b) { return mpz_cmp(a.v_, b.v_) >= 0; }

  private:
    mpz_t v_;
};

Int abs(const Int& a);
Int gcd(const Int& a, const Int& b);
// Floor division / exact division / euclidean remainder.
Int divexact(const Int& a, const Int& b);
bool divides(const Int& d, const Int& a);
std::pair<Int, Int> tdiv_qr(const Int& a, const Int& b);
Int mod_euclid(const Int& a, const Int& m);  // result in [0, m)
Int pow(const Int& a, unsigned long e);
uint64_t mod_u64(const Int& a, uint64_t p);  // euclidean remainder as machine word
Int from_u64(uint64_t x);

// Rational number, value semantics over mpq_t, always canonical.
class Rat {
  public:
    Rat() { mpq_init(v_); }
    Rat(long x) {  // NOLINT(google-explicit-constructor)
        mpq_init(v_);
        mpq_set_si(v_, x, 1);
    }
    Rat(int x) : Rat((long)x) {}  // NOLINT
    Rat(const Int& n, const Int& d) {
        if (d.is_zero()) throw error("Rat: zero denominator");
        mpq_init(v_);
        mpz_set(mpq_numref(v_), n.get());
        mpz_set(mpq_denref(v_), d.get());
        mpq_canonicalize(v_);
    }
    explicit Rat(const Int& n) {
        mpq_init(v_);
        mpz_set(mpq_numref(v_), n.get());
    }
    explicit Rat(const std::string& s);
    Rat(const Rat& o) {
        mpq_init(v_);
        mpq_set(v_, o.v_);
    }
    Rat(Rat&& o) noexcept {
        mpq_init(v_);
        mpq_swap(v_, o.v_);
    }
    Rat& operator=(const Rat& o) {
        if (this != &o) mpq_set(v_, o.v_);
        return *this;
    }
    Rat& operator=(Rat&& o) noexcept {
        mpq_swap(v_, o.v_);
        return *this;
    }
    ~Rat() { mpq_clear(v_); }

    mpq_ptr get() { return v_; }
    mpq_srcptr get() const { return v_; }

    bool is_zero() const { return mpq_sgn(v_) == 0; }
    int sgn() const { return mpq_sgn(v_); }
    Int num() const { Int r; mpz_set(r.get(), mpq_numref(v_)); return r; }
    Int den() const { Int r; mpz_set(r.get(), mpq_denref(v_)); return r; }
    bool is_integer() const { return mpz_cmp_ui(mpq_denref(v_), 1) == 0; }
    std::string str() const;

    friend Rat operator+(const Rat& a, const Rat& b) { Rat r; mpq_add(r.v_, a.v_, b.v_); return r; }
    friend Rat operator-(const Rat& a, const Rat& b) { Rat r; mpq_sub(r.v_, a.v_, b.v_); return r; }
    friend Rat operator*(const Rat& a, const Rat& b) { Rat r; mpq_mul(r.v_, a.v_, b.v_); return r; }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.is_zero()) throw error("Rat: division by zero");
        Rat r;
        mpq_div(r.v_, a.v_, b.v_);
        return r;
    }
    friend Rat operator-(const Rat& a) { Rat r; mpq_neg(r.v_, a.v_); return r; }
    Rat& operator+=(const Rat& o) { mpq_add(v_, v_, o.v_); return *this; }
    Rat& operator-=(const Rat& o) { mpq_sub(v_, v_, o.v_); return *this; }
    Rat& operator*=(const Rat& o) { mpq_mul(v_, v_, o.v_); return *this; }
    Rat& operator/=(const Rat& o) { *this = *this / o; return *this; }

    friend bool operator==(const Rat& a, const Rat& b) { return mpq_equal(a.v_, b.v_) != 0; }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) { return mpq_cmp(a.v_, b.v_) < 0; }

  private:
    mpq_t v_;
};

// Reduce a rational mod p (num * den^-1); throws if den vanishes mod p.
uint64_t mod_u64(const Rat& a, uint64_t p);

// Combine residues by the Chinese remainder theorem.
// residues[i] in [0, moduli[i]); moduli pairwise coprime. Returns (value in [0, M), M).
std::pair<Int, Int> crt(const std::vector<uint64_t>& residues, const std::vector<uint64_t>& moduli);

// Incremental CRT step: given x ≡ r (mod m) find x' ≡ x (mod m), x' ≡ r2 (mod m2),
// returned in [0, m*m2) together with the new modulus.
void crt_step(Int& x, Int& m, uint64_t r2, uint64_t m2);

// Balanced rational reconstruction: find n/d with |n|,|d| <= floor(sqrt(M/2)),
// gcd(d, M) = 1, n ≡ x*d (mod M). Returns false if none exists.
bool rational_reconstruct(const Int& x, const Int& M, Rat& out);

}  // namespace walkprove
