#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "walkprove/bigint.hpp"

namespace walkprove {

// A small-step model: steps (dx, dy) with dx, dy ∈ {−1, 0, 1}, (0,0) excluded.
struct StepSet {
    std::vector<std::pair<int, int>> steps;

    // Parses compass notation, e.g. "W,S,NE" or "E,W,NE,SW".
    static StepSet parse(const std::string& text);
    static StepSet kreweras() { return parse("W,S,NE"); }
    static StepSet gessel() { return parse("E,W,NE,SW"); }
    std::string str() const;
    bool has(int dx, int dy) const;
};

// Which slice of the full generating function G(t;x,y) to extract.
enum class Section {
    X0,        // G(t;x,0)
    Y0,        // G(t;0,y)
    Origin,    // G(t;0,0)
    Diagonal,  // G(t;1,1)
};

// Exact number of quadrant walks of length n from the origin to (i, j).
Int count(const StepSet& s, int n, int i, int j);

// result[n][k] = coefficient of t^n x^k (resp. t^n y^k); Origin/Diagonal rows
// have a single entry. Orders 0..N inclusive.
std::vector<std::vector<Int>> section_series_int(const StepSet& s, Section which, int N);
std::vector<std::vector<uint64_t>> section_series_mod(const StepSet& s, Section which, int N,
                                                      uint64_t p);

// Axis section evaluated at many points from one DP sweep:
// X0 gives result[k][n] = Σ_i f(n;i,0)·points[k]^i mod p, Y0 the same along
// the other axis.
std::vector<std::vector<uint64_t>> section_at_points_mod(const StepSet& s, Section which, int N,
                                                         uint64_t p,
                                                         const std::vector<uint64_t>& points);

// Full tables f(n;i,j), n ≤ N; layer n is (n+1)×(n+1) row-major in i.
std::vector<std::vector<Int>> full_table_int(const StepSet& s, int N);
std::vector<std::vector<uint64_t>> full_table_mod(const StepSet& s, int N, uint64_t p);

}  // namespace walkprove
