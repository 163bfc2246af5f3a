#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "walkprove/multipoly.hpp"
#include "walkprove/ore.hpp"
#include "walkprove/series.hpp"
#include "walkprove/walks.hpp"

namespace walkprove {

// --- kernel functional equations ---------------------------------------------

// K(x,y,t)·G(t;x,y) = Σ boundary_i·section_i + constant, as an identity of
// formal power series in t.  Every small-step quadrant model with steps in
// {−1,0,1}² has this shape; the boundary terms absorb the walks that a W/S/SW
// style step would push across an axis.
struct KernelEquation {
    StepSet steps;
    MultiPoly kernel;  // xy·(t·S(x,y) − 1), S the step polynomial in x^{±1}, y^{±1}
    // coefficient · section, sections keyed by which axis is pinned to 0
    std::vector<std::pair<MultiPoly, Section>> boundary;
    MultiPoly constant;  // free term (−xy)

    std::string str() const;
};

KernelEquation build_kernel(const StepSet& steps);

// First t-order at which the truncated full series G(t;x,y) fails the
// equation mod p, as an exact bivariate check; N when it holds throughout.
size_t kernel_residual_order(const KernelEquation& eq, uint64_t p, size_t N);

// --- algebraic closure constructions ------------------------------------------

// Resultant-based combinations of annihilating polynomials.  Inputs live in
// (T, t, x); the y slot is reserved as the elimination variable.
enum class ClosureOp {
    Scale,       // inputs {P}, aux num/den: annihilator of (num/den)·A
    Add,         // inputs {P, Q}: annihilator of A + B (or A − B with aux.subtract)
    Mul,         // inputs {P, Q}: annihilator of A·B
    Substitute,  // inputs {P, Q}: annihilator of A(t, B(t,x))
};

struct ClosureAux {
    MultiPoly num, den;     // Scale only; empty den means 1
    bool subtract = false;  // Add only
};

// The output annihilates the combined series but is generally not minimal.
// Requires the y slot of every input to be free; a vanishing resultant
// (inputs sharing a factor) is reported as an error suggesting squarefree
// preprocessing.  For Substitute the caller is responsible for ord B > 0 in
// the substituted variable so the composition exists.
MultiPoly annihilator_closure(ClosureOp op, const std::vector<MultiPoly>& inputs,
                              const ClosureAux& aux = {}, const ResultantOptions& ropt = {});

// From an annihilator P(T,t,x) of F(t;x,0), the cleared numerator
// A(T,t,x,y) of P((x/y)·(y/t − T), t, y).  Eliminating y between A and the
// kernel polynomial turns an annihilator of the axis section into one of
// y/t − (y/x)·F(t;y,0) evaluated at the kernel root y = Y(t,x) — the right
// side of the one-variable reduced kernel equation.
MultiPoly section_substitution_numerator(const MultiPoly& P);

// Degree in T of the monic gcd of A and B in Q(t)[T] after specializing x to a
// point where neither leading coefficient vanishes.  A cheap certificate that
// two annihilators share a root-component without computing a full bivariate
// factorization.
int common_factor_degree_probe(const MultiPoly& A, const MultiPoly& B, const Int& x0);

// --- reduced kernel equations --------------------------------------------------

// Homogeneous data of the reduced kernel system after clearing the x-polynomial
// weights: equation i reads w_i(x)·U_i = (inhomogeneous) + B_i·U_{i+1 mod m}(t, Y_i)
// with ord_t B_i ≥ 1.  Kreweras has m = 1 (B = −Y, weight x); Gessel has m = 2
// (B₁ = −Y(1+Y), weight x; B₂ = −X, weight x(1+x)).
void reduced_kernel_homogeneous(const StepSet& steps, size_t N, const RingFp& R,
                                std::vector<SeriesFp>& B_out, std::vector<SeriesFp>& Y_out);

// Valuation hypotheses of the one-solution lemmas, checked on concrete series,
// plus a contraction demonstration: for every valuation level k < N a nonzero
// test series u with ord_t u = k is pushed through the homogeneous map and the
// result must satisfy ord_t ≥ k + 1.  Throws naming the offending series when
// a hypothesis fails.
bool uniqueness_witness(const std::vector<SeriesFp>& B_list, const std::vector<SeriesFp>& Y_list,
                        size_t N, const RingFp& R);

// First t-order at which the reduced kernel system fails on the supplied
// section series, mod p; N when every checked order passes.  Kreweras-shaped
// models pass {F(t;x,0)} (bivariate, as from the walks module); Gessel-shaped
// ones pass {U, V} with U = (G(t;x,0) − G00)/x, V = (G(t;0,y) − G00)/y and the
// origin series g00.
size_t reduced_kernel_residual_order(const StepSet& steps, const std::vector<SeriesFp>& sections,
                                     const std::vector<uint64_t>& g00, size_t N, const RingFp& R);

// Candidate-based wrapper: lifts the section series from annihilating
// polynomials (one candidate for Kreweras-shaped models, two — for G(t;x,0)
// and G(t;0,y) — for Gessel-shaped ones) and reports the residual order mod p.
size_t verify_reduced_kernel_series(const StepSet& steps, const std::vector<MultiPoly>& candidates,
                                    const std::vector<uint64_t>& g00, size_t N, uint64_t p);

// --- certificates ---------------------------------------------------------------

struct CertStage {
    std::string name;
    bool ok = false;
    std::vector<std::pair<std::string, std::string>> kv;  // machine-readable evidence
    std::string note;                                     // free text

    std::string get(const std::string& key) const;  // "" when absent
};

struct Certificate {
    std::string target;  // e.g. "F(t;x,0) for steps W,S,NE"
    std::string mode;    // "exact-resultant" | "series-order-N" | "rational"
    std::vector<std::pair<std::string, MultiPoly>> polynomials;  // named annihilators
    std::vector<std::pair<std::string, std::string>> operators;  // named operator texts
    std::vector<CertStage> stages;
    std::vector<std::string> caveats;

    bool ok() const;
    const MultiPoly* poly(const std::string& name) const;
    const std::string* op_text(const std::string& name) const;
    const CertStage* stage(const std::string& name) const;
    std::string str() const;  // stable field order, line-based
};

Certificate parse_certificate(const std::string& text);
void write_certificate(const Certificate& cert, const std::string& path);
Certificate read_certificate_file(const std::string& path);

// Re-verifies every machine-readable claim from the stored data alone —
// kernel residuals, annihilation checks, divisibility witnesses, curvature —
// without re-running any guessing.  Returns false on the first claim that
// cannot be reproduced.
bool recheck_certificate(const Certificate& cert);

// A modular operator rendered in the shared operator text format: denominators
// cleared by their lcm, coefficients lifted to integers in 0..p-1.
std::string fp_op_text(const FpCtx& C, const OreOp<FpCtx>& L);
// Largest degree across the denominator-cleared coefficient polynomials.
int cleared_max_deg_fp(const FpCtx& C, const OreOp<FpCtx>& L);

// --- exact verification ----------------------------------------------------------

struct ExactBudget {
    int max_sylvester = 24;        // largest resultant matrix dimension attempted
    long max_output_terms = 400;   // refuse closures whose degree estimate exceeds this
    size_t fallback_series_N = 240;  // series order used when the chain is over budget
};

// Resultant-route verification.  For a model whose two axis sections share one
// annihilator (Kreweras: P1 = P2 = P) the substitution numerator is resolved
// against the kernel and the resultant must equal P² up to integer content —
// recorded with a divides() witness.  For two-section models the closure chain
// on the second kernel identity is attempted within the budget and the
// certificate downgrades to series mode, saying so, when the chain exceeds it.
// g00_poly: annihilator of G(t;0,0) in (T, t), used by two-section models.
Certificate verify_reduced_kernel_exact(const StepSet& steps, const MultiPoly& P1,
                                        const MultiPoly& P2, const MultiPoly& g00_poly,
                                        const ExactBudget& budget = {});

// --- end-to-end pipeline ----------------------------------------------------------

struct PipelineConfig {
    size_t count_terms = 96;      // series terms fed to the guesser
    int max_main_degree = 6;      // ansatz box: deg_T (algebraic) or order (differential)
    int max_t_degree = 12;
    size_t series_N = 300;        // reduced-kernel series verification order
    size_t kernel_N = 60;         // full kernel-equation residual order
    bool exact_mode = true;       // attempt the resultant route when in budget
    size_t curvature_pmax = 30;   // p-curvature side-checks for primes below this (0 = skip)
    std::vector<uint64_t> primes;  // guessing moduli; empty → defaults
    std::vector<long> points;      // x-points for interpolation; empty → defaults
    int threads = 1;
    std::string out_path;          // certificate target; empty → not persisted

    // two-section (Gessel-shaped) evidence stages
    size_t modular_terms = 1200;   // terms for the single-point algebraic relation
    int modular_algeq_deg = 24;    // deg_T box for that relation
    int modular_algeq_tdeg = 44;
    long section_point = 2;        // x-point for the single-point stages (1 degenerates)
    size_t operator_terms = 1000;  // terms for the order-14 operator bundle
    int operator_order = 14;
    int operator_tdeg = 43;
    size_t origin_terms = 240;     // terms for the origin-series algebraic guess
    int origin_deg = 8;            // its ansatz box
    int origin_tdeg = 16;
};

// count → guess → lift → verify (series always, exact when budgeted) →
// curvature side-checks → certificate.  Mathematical failures are recorded as
// failed stages in the certificate, not thrown.
Certificate run_proof_pipeline(const StepSet& steps, const PipelineConfig& cfg = {});

}  // namespace walkprove
