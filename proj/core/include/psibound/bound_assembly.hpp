#pragma once

// From pointwise estimates of (x - psi_{c,eps}(x))/sqrt(x) on a grid to
// certified bounds for (t - psi(t))/sqrt(t) on a whole interval: the A-term
// bounding psi against psi_{c,eps}, the grid extension, the E1/E2/E3 budget,
// parameter selection and the end-to-end pipeline.

#include <cstddef>
#include <cstdint>
#include <string>

#include "psibound/kernels.hpp"
#include "psibound/trig_eval.hpp"
#include "psibound/zeros.hpp"

namespace psibound {

// Constants of the grid-extension step. The literal statement needs
// a >= 1e9; below that (down to 1e7) the same argument goes through with the
// larger desk constants. The two sets are never mixed within one result.
struct ProofConstants {
    const char* label;
    double min_a;
    double grid_factor;     // 1.001 in the grid extension
    double theorem_factor;  // 1.01 in the final bound
};

inline constexpr ProofConstants kPaperConstants{"paper", 1e9, 1.001, 1.01};
inline constexpr ProofConstants kDeskConstants{"desk-certified", 1e7, 1.004, 1.04};

// Paper constants when a >= 1e9, desk constants when 1e7 <= a < 1e9.
// Throws PreconditionError below 1e7.
const ProofConstants& constants_for(double a);

struct PipelineConfig {
    double x0 = 0.0;
    double L = 2.0;
    double theta = 0.5;
    double delta = 0.5;
    double t_available = 0.0;
    double alpha = 0.0;
    double eta2 = 1.0;  // eps = eta2 x0^-theta sqrt(log x0) before the caps
    double eta4 = 1.0;  // h = eta4 x0^-theta / log x0 before the E3 cap
    // Fixed block exponent; <= 0 derives it from mem_limit.
    double eta = 0.0;
    std::uint64_t mem_limit = std::uint64_t{4} << 30;
    // Fractions of the slack delta x0^{1/2 - theta} given to E2 and E3.
    double e2_share = 0.6;
    double e3_share = 0.22;

    void validate() const;
    double a() const { return x0; }
    double b() const { return L * x0; }
    // delta x0^{1/2 - theta}
    double slack() const;
};

struct ErrorBudget {
    double e1 = 0.0;
    double e2 = 0.0;
    double e3 = 0.0;
    double tail = 0.0;      // tail1 + tail2 of the zero sum
    double constant = 0.0;  // the Theta(2) term, 2/sqrt(x)
    double round = 0.0;     // evaluation error of the zero sum on the grid
    double zero_acc = 0.0;
    double split_envelope = 0.0;  // interpolation charge of the block path

    // Per-point error of the grid estimates.
    double grid_error() const { return tail + constant + round + zero_acc + split_envelope; }
};

struct BlockPlan {
    bool use_blocks = false;
    double eta = 0.0;
    std::size_t block_size = 0;
    std::uint64_t predicted_bytes = 0;  // peak estimate of the chosen path
    std::uint64_t fft_bytes = 0;        // estimate for the single-FFT path
};

struct PipelinePlan {
    MollifierParams params;
    double T = 0.0;  // = c / eps
    GridSpec grid;
    double delta_max = 0.0;  // largest step of the dissection (a, grid, b)
    double fft_target = 0.0;  // accuracy target for F on the grid
    std::size_t zero_count_estimate = 0;
    BlockPlan blocks;
    ErrorBudget predicted;
    ProofConstants constants = kPaperConstants;
};

struct IntervalBounds {
    double a = 0.0;
    double b = 0.0;
    double m_minus = 0.0;
    double m_plus = 0.0;
    double m_grid = 0.0;  // min over the dissection of estimate - error
    double M_grid = 0.0;  // max over the dissection of estimate + error
    ErrorBudget budget;
    PipelinePlan plan;
    std::size_t zeros_used = 0;
    std::uint64_t zeros_digest = 0;
    double zeros_accuracy = 0.0;
    int fft_degree = -1;
    std::size_t fft_length = 0;
    std::string constants_label;
};

// B = eps x e^{-eps} |nu_c(alpha)| / (2 (mu_c)_+(alpha)), rounded down.
double prop1_B(double x, const MollifierParams& p, const KernelCache& cache);
// A(x, c, eps, alpha), rounded up. Needs x > 100, 0 < eps < 1e-2,
// 0 <= alpha < 1 and B > 1.
double prop1_A(double x, const MollifierParams& p, const KernelCache& cache);

// Extends grid bounds m < 0 < M to all of [a, b]; needs a in the range of
// constants_for and 10 <= delta_max <= 1e-5 a.
struct ExtendedBounds {
    double m = 0.0;
    double M = 0.0;
};
ExtendedBounds grid_extend(double m_grid, double M_grid, double a, double b, double delta_max);

struct FundamentalResult {
    double m = 0.0;
    double M = 0.0;
    double upper_from = 0.0;  // M holds on [e^{alpha eps} a, b]
    double lower_to = 0.0;    // m holds on [a, e^{-alpha eps} b]
    ErrorBudget budget;       // e1, e2, e3 filled in
    ProofConstants constants = kPaperConstants;
};

// The E-terms of the fundamental theorem for a dissection of [a, b] with
// largest step delta_max.
double budget_e1(const MollifierParams& p, double b);
double budget_e2(const MollifierParams& p, const KernelCache& cache, double a, double b);
double budget_e3(double a, double delta_max, const ProofConstants& k);

FundamentalResult fundamental_bounds(double m_grid, double M_grid, double a, double b, double delta_max,
                                     const MollifierParams& p, const KernelCache& cache);

// Throws InfeasibleError (with the height needed) when c/eps > t_available.
PipelinePlan choose_parameters(const PipelineConfig& config);

IntervalBounds run_pipeline(const PipelineConfig& config, const ZeroTable& table);

}  // namespace psibound
