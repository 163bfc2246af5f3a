#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace walkprove {

struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// splitmix64, used for deterministic test data and point shuffling
struct Rng {
    uint64_t s;
    explicit Rng(uint64_t seed) : s(seed) {}
    uint64_t next() {
        uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    uint64_t below(uint64_t n) { return next() % n; }
};

std::vector<std::string> split(const std::string& s, char sep);
std::string trim(const std::string& s);

// Runs fn(i) for i in [0, n) on up to nthreads workers. Results must be
// written to per-index slots by the caller so the merge stays deterministic.
void parallel_for(size_t n, unsigned nthreads, const std::function<void(size_t)>& fn);

}  // namespace walkprove
