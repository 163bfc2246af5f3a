#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "walkprove/fppoly.hpp"
#include "walkprove/multipoly.hpp"
#include "walkprove/walks.hpp"

namespace walkprove {

enum class GuessKind { Algebraic, Differential };

// Search box for undetermined-coefficient ansätze.  For algebraic guesses the
// main degree is deg_T, for differential ones the operator order.
struct AnsatzGrid {
    GuessKind kind;
    int max_main_degree;
    int max_t_degree;
    size_t N;

    AnsatzGrid(GuessKind k, int mm, int mt, size_t n) : kind(k), max_main_degree(mm), max_t_degree(mt), N(n) {
        if (mm < 1 || mt < 0) throw error("AnsatzGrid: degenerate degree bounds");
        if ((size_t)(mm + 1) * (size_t)(mt + 1) >= n)
            throw error("AnsatzGrid: precision does not overdetermine the unknowns");
    }
};

// One relation per inner vector: coefficients c_i(t) with Σ c_i·v_i ≡ 0 mod t^N.
using HPBasis = std::vector<std::vector<FpPoly>>;

// Minimal approximant basis filtered to the degree bounds (bounds[i] caps
// deg c_i).  Every returned row is re-checked by direct multiplication.
HPBasis hermite_pade(const std::vector<std::vector<uint64_t>>& vectors,
                     const std::vector<int>& bounds, size_t N, uint64_t p);

// A modular guess at one (prime, x-point): coefficient of main^i·t^j keyed by
// (i, j), pivot-normalized (lexicographically largest key has value 1).
struct GuessReportFp {
    bool found = false;
    bool degenerate = false;  // the input prefix was identically zero
    GuessKind kind = GuessKind::Algebraic;
    int main_degree = 0;
    int t_degree = 0;
    size_t precision = 0;  // orders actually matched (N, or N − slack)
    long margin = 0;       // precision − number of grid unknowns
    std::map<std::pair<int, int>, uint64_t> coeff;
};

GuessReportFp guess_algeq(const std::vector<uint64_t>& f, const AnsatzGrid& grid, uint64_t p);
GuessReportFp guess_diffeq(const std::vector<uint64_t>& f, const AnsatzGrid& grid, uint64_t p);

// Candidate over ℚ assembled from modular runs; T stands for the main symbol
// (T itself for algebraic candidates, D_t for differential ones).
struct GuessReport {
    bool found = false;
    GuessKind kind = GuessKind::Algebraic;
    MultiPoly candidate;
    size_t precision = 0;
    long margin = 0;
    std::vector<uint64_t> primes;
    std::vector<long> points;
    std::vector<std::string> warnings;
};

struct SectionSpec {
    StepSet steps;
    Section which = Section::X0;
};

struct PipelineOptions {
    bool cross_check = true;  // re-guess at a fresh (prime, point) and compare
    int threads = 1;
};

// Per-(prime, point) modular guessing, shape consensus, per-coefficient
// rational interpolation in x, CRT + rational reconstruction, denominator
// clearing.  Throws on shape disagreement (listing the offending pairs) and on
// reconstruction failure.
GuessReport modular_guess_pipeline(const SectionSpec& section, const AnsatzGrid& grid,
                                   const std::vector<uint64_t>& primes,
                                   const std::vector<long>& points,
                                   const PipelineOptions& opt = {});

// Rerun a single-(prime, point) guess at N, 2N, … until two consecutive runs
// agree; prefix(n) must return ≥ n orders of the series.
struct DoublingReport {
    GuessReportFp report;
    bool stabilized = false;
    size_t precision_tried = 0;
};
DoublingReport precision_doubling(const std::function<std::vector<uint64_t>(size_t)>& prefix,
                                  const AnsatzGrid& seed, uint64_t p,
                                  size_t max_precision = 0);

// Shared helper: candidate map → MultiPoly with T^i t^j monomials (modular
// image, coefficients lifted as integers).
MultiPoly guess_to_poly(const GuessReportFp& g);

}  // namespace walkprove
