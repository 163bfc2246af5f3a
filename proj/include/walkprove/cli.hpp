#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace walkprove {

// Effective settings for one command run.  A flat key=value config file fills
// these first; command-line flags override individual entries.  Every run is
// deterministic given the resolved config: fixed prime list, fixed point list,
// and a merge order independent of the thread count.
struct RunConfig {
    std::string steps = "W,S,NE";
    std::string section = "x0";  // x0 | y0 | origin | diagonal
    std::string kind = "algeq";  // algeq | diffeq
    std::string mode = "series";  // series | exact  (prove verification depth)
    size_t N = 96;                // series precision for guessing
    int deg_main = 6;             // deg_T (algeq) or operator order (diffeq)
    int deg_t = 12;
    int prime_count = 4;   // how many pool primes multi-prime stages draw
    int prime_bits = 31;   // pool primes are 28-31 bit (information only)
    std::string primes_file;  // one prime per line; WALKPROVE_PRIMES overrides
    std::vector<long> points;  // x-points for interpolation; empty -> 1,2,...
    long point = 1;            // x-point for single-point (diffeq) guessing
    std::string out;           // result path; empty -> derived from the steps
    int threads = 0;           // 0 -> hardware concurrency
    size_t pmax = 30;          // curvature checks run for primes below this
};

// Parse a key=value config file (blank lines and #-comments ignored).
// Unknown keys and malformed values throw.
RunConfig load_config(const std::string& path);
// The same format back, one key per line, suitable for load_config.
std::string dump_config(const RunConfig& cfg);

// The prime list a run actually uses: the file named by WALKPROVE_PRIMES when
// that variable is set, else cfg.primes_file when given, else the first
// cfg.prime_count entries of the built-in pool.
std::vector<uint64_t> resolve_primes(const RunConfig& cfg);

// Entry point behind the binary.  Exit codes: 0 success, 1 mathematical
// failure (nothing found / verification failed), 2 usage error.
int cli_main(int argc, char** argv);

}  // namespace walkprove
