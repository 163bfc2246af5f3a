#pragma once

#include <cassert>
#include <cstdint>
#include <vector>

#include "walkprove/util.hpp"

namespace walkprove {

// Arithmetic in Z/pZ for a word-sized prime p < 2^31. Values are plain
// uint64_t in [0, p); the modulus travels alongside rather than inside the
// elements so bulk arrays stay flat.

inline uint64_t addmod(uint64_t a, uint64_t b, uint64_t p) {
    uint64_t s = a + b;
    return s >= p ? s - p : s;
}
inline uint64_t submod(uint64_t a, uint64_t b, uint64_t p) {
    return a >= b ? a - b : a + p - b;
}
inline uint64_t mulmod(uint64_t a, uint64_t b, uint64_t p) {
    return (uint64_t)((unsigned __int128)a * b % p);
}
uint64_t powmod(uint64_t a, uint64_t e, uint64_t p);
uint64_t invmod(uint64_t a, uint64_t p);  // throws error on non-invertible

// Shoup's trick: with bprime = floor(b * 2^64 / p) precomputed, products by
// the fixed factor b need one high multiplication and one correction.
inline uint64_t shoup_precompute(uint64_t b, uint64_t p) {
    return (uint64_t)(((unsigned __int128)b << 64) / p);
}
inline uint64_t mulmod_shoup(uint64_t a, uint64_t b, uint64_t bprime, uint64_t p) {
    uint64_t q = (uint64_t)(((unsigned __int128)a * bprime) >> 64);
    uint64_t r = a * b - q * p;
    return r >= p ? r - p : r;
}

bool is_prime_u64(uint64_t n);  // deterministic Miller-Rabin for word sizes

// A prime field with cached NTT data when p = c * 2^e + 1 supports one.
struct FpField {
    uint64_t p = 0;
    int two_adicity = 0;       // largest e with 2^e | p-1
    uint64_t gen = 0;          // primitive root of p, 0 if not computed
    uint64_t root = 0;         // element of order 2^two_adicity

    FpField() = default;
    explicit FpField(uint64_t prime);

    uint64_t add(uint64_t a, uint64_t b) const { return addmod(a, b, p); }
    uint64_t sub(uint64_t a, uint64_t b) const { return submod(a, b, p); }
    uint64_t mul(uint64_t a, uint64_t b) const { return mulmod(a, b, p); }
    uint64_t neg(uint64_t a) const { return a ? p - a : 0; }
    uint64_t inv(uint64_t a) const { return invmod(a, p); }
    uint64_t pow(uint64_t a, uint64_t e) const { return powmod(a, e, p); }
    uint64_t reduce_int(long long v) const {
        long long r = v % (long long)p;
        return r < 0 ? (uint64_t)(r + (long long)p) : (uint64_t)r;
    }
    bool ntt_ready(size_t len) const;  // true if a 2^k >= len transform exists
};

// Default modulus pool: primes c * 2^e + 1 with c < 1024 odd and e >= 21,
// scanned downward from 2^31 so every member supports transforms of length
// 2^21 and more. Deterministic order.
std::vector<uint64_t> default_prime_pool(size_t count);

// Primes below bound in increasing order (trial division; bound is small).
std::vector<uint64_t> small_primes_below(uint64_t bound);

}  // namespace walkprove
