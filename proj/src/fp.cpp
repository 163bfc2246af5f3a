#include "walkprove/fp.hpp"

#include <mutex>

namespace walkprove {

uint64_t powmod(uint64_t a, uint64_t e, uint64_t p) {
    uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

uint64_t invmod(uint64_t a, uint64_t p) {
    a %= p;
    if (a == 0) throw error("invmod: zero is not invertible");
    // extended Euclid on (a, p)
    int64_t t0 = 0, t1 = 1;
    uint64_t r0 = p, r1 = a;
    while (r1) {
        uint64_t q = r0 / r1;
        uint64_t r2 = r0 - q * r1;
        int64_t t2 = t0 - (int64_t)q * t1;
        r0 = r1; r1 = r2;
        t0 = t1; t1 = t2;
    }
    if (r0 != 1) throw error("invmod: gcd(a, p) != 1");
    return t0 < 0 ? (uint64_t)(t0 + (int64_t)p) : (uint64_t)t0;
}

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % q == 0) return n == q;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    // deterministic witness set for n < 3.3 * 10^24
    for (uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        uint64_t x = powmod(a % n, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

FpField::FpField(uint64_t prime) : p(prime) {
    assert(p >= 2 && p < (1ULL << 31));
    uint64_t m = p - 1;
    while ((m & 1) == 0) { m >>= 1; ++two_adicity; }
    // factor p-1 to certify a generator; the odd cofactor of pool primes is
    // tiny, and for arbitrary small primes trial division is instant anyway
    std::vector<uint64_t> fac;
    if (two_adicity > 0) fac.push_back(2);
    uint64_t odd = m;
    for (uint64_t d = 3; d * d <= odd; d += 2) {
        if (odd % d == 0) {
            fac.push_back(d);
            while (odd % d == 0) odd /= d;
        }
    }
    if (odd > 1) fac.push_back(odd);
    for (uint64_t g = 2; g < p; ++g) {
        bool ok = true;
        for (uint64_t q : fac) {
            if (powmod(g, (p - 1) / q, p) == 1) { ok = false; break; }
        }
        if (ok) { gen = g; break; }
    }
    if (gen) root = powmod(gen, (p - 1) >> two_adicity, p);
}

bool FpField::ntt_ready(size_t len) const {
    size_t k = 1;
    int e = 0;
    while (k < len) { k <<= 1; ++e; }
    return e <= two_adicity && gen != 0;
}

std::vector<uint64_t> default_prime_pool(size_t count) {
    std::vector<uint64_t> out;
    for (uint64_t p = (1ULL << 31) - 1; p > (1ULL << 28) && out.size() < count; p -= 2) {
        uint64_t m = p - 1;
        int e = 0;
        while ((m & 1) == 0) { m >>= 1; ++e; }
        if (e < 21 || m >= 1024) continue;
        if (is_prime_u64(p)) out.push_back(p);
    }
    if (out.size() < count) throw error("default_prime_pool: pool exhausted");
    return out;
}

std::vector<uint64_t> small_primes_below(uint64_t bound) {
    std::vector<uint64_t> out;
    for (uint64_t n = 2; n < bound; ++n) {
        bool pr = n >= 2;
        for (uint64_t d = 2; d * d <= n; ++d)
            if (n % d == 0) { pr = false; break; }
        if (pr) out.push_back(n);
    }
    return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    size_t start = 0;
    for (size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            out.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && isspace((unsigned char)s[a])) ++a;
    while (b > a && isspace((unsigned char)s[b - 1])) --b;
    return s.substr(a, b - a);
}

void parallel_for(size_t n, unsigned nthreads, const std::function<void(size_t)>& fn) {
    if (nthreads <= 1 || n <= 1) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mtx;
    auto work = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= n) break;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mtx);
                if (!err) err = std::current_exception();
                next.store(n);
                break;
            }
        }
    };
    std::vector<std::thread> pool;
    unsigned k = std::min<unsigned>(nthreads, (unsigned)n);
    pool.reserve(k);
    for (unsigned i = 0; i + 1 < k; ++i) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace walkprove
