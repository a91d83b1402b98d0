#include "psibound/bound_assembly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "psibound/errors.hpp"
#include "psibound/explicit_formula.hpp"
#include "psibound/parallel.hpp"

namespace psibound {

namespace {

// Thm-5 style hypotheses need eps strictly below 1e-4.
constexpr double kEpsCap = 1e-4 * (1.0 - 1e-12);

double round_down(double v, int ulps = 8) {
    for (int i = 0; i < ulps; ++i) v = std::nextafter(v, -std::numeric_limits<double>::infinity());
    return v;
}

// |nu_c(alpha)| with the cache interpolation error on either side.
struct NuBounds {
    double lo;
    double hi;
};

NuBounds abs_nu(const MollifierParams& p, const KernelCache& cache) {
    const double v = std::fabs(cache.mu_nu(p.alpha, p.c).nu);
    const double e = cache.interpolation_error_bound();
    return {std::max(0.0, v - e), v + e};
}

// Upper bound on (mu_c)_+(alpha).
double mu_plus_hi(const MollifierParams& p, const KernelCache& cache) {
    if (p.alpha == 0.0) return 0.5;
    return cache.mu_plus(p.alpha) + cache.interpolation_error_bound();
}

double extension_term(double a, double delta_max) {
    const double la = std::log(a);
    return la / std::sqrt(a) * (delta_max / std::log(delta_max) + std::log(2.0 * la));
}

void check_dissection(double a, double b, double delta_max) {
    if (!(a < b)) throw PreconditionError("dissection: needs a < b");
    if (!(delta_max >= 10.0)) throw PreconditionError("dissection: largest step must be >= 10");
    if (!(delta_max <= 1e-5 * a)) throw PreconditionError("dissection: largest step must be <= 1e-5 a");
}

// Peak memory of the single-FFT path (coefficients, residue arrays, FFT
// buffers and grid values).
std::uint64_t fft_bytes(std::size_t N, std::int64_t Y) {
    const double R = std::exp2(std::round(std::log2(std::max<double>(1.0, static_cast<double>(N)))));
    return static_cast<std::uint64_t>(40.0 * R + 88.0 * static_cast<double>(N) + 24.0 * static_cast<double>(2 * Y + 1));
}

// Peak memory of the block path with n zeros per block, all worker threads
// holding one block each.
std::uint64_t block_bytes(std::size_t N, std::size_t n, std::int64_t Y, double h, double T) {
    const double nd = static_cast<double>(n);
    const double R = std::exp2(std::round(std::log2(std::max(1.0, nd))));
    const double W = std::max(1e-6, nd * h * std::numbers::pi / std::log(std::max(T, 8.0) / (2.0 * std::numbers::pi)));
    const double Yc = std::ceil((static_cast<double>(Y) + 160.0 / W) * 1.25 * W / std::numbers::pi) + 2.0;
    const double per_block = 88.0 * nd + 40.0 * R + 16.0 * (2.0 * Yc + 1.0);
    return static_cast<std::uint64_t>(40.0 * static_cast<double>(N) + max_threads() * per_block);
}

}  // namespace

const ProofConstants& constants_for(double a) {
    if (a >= kPaperConstants.min_a) return kPaperConstants;
    if (a >= kDeskConstants.min_a) return kDeskConstants;
    throw PreconditionError("grid extension: needs a >= 1e7 (desk constants) or a >= 1e9");
}

void PipelineConfig::validate() const {
    if (!(x0 > 0.0 && std::isfinite(x0))) throw PreconditionError("config: x0 must be positive");
    if (!(L > 1.0)) throw PreconditionError("config: L must exceed 1");
    if (!(theta > 0.0 && theta <= 0.5)) throw PreconditionError("config: theta must lie in (0, 1/2]");
    if (!(delta > 0.0)) throw PreconditionError("config: delta must be positive");
    if (!(alpha >= 0.0 && alpha < 1.0)) throw PreconditionError("config: alpha must lie in [0, 1)");
    if (!(t_available >= 0.0)) throw PreconditionError("config: t_available must be >= 0");
    if (!(eta2 > 0.0 && eta4 > 0.0)) throw PreconditionError("config: eta2 and eta4 must be positive");
    if (!(e2_share > 0.0 && e3_share > 0.0 && e2_share + e3_share < 1.0))
        throw PreconditionError("config: budget shares must be positive with sum < 1");
}

double PipelineConfig::slack() const { return delta * std::pow(x0, 0.5 - theta); }

double prop1_B(double x, const MollifierParams& p, const KernelCache& cache) {
    const NuBounds nu = abs_nu(p, cache);
    return round_down(p.eps * x * std::exp(-p.eps) * nu.lo / (2.0 * mu_plus_hi(p, cache)));
}

double prop1_A(double x, const MollifierParams& p, const KernelCache& cache) {
    if (!(x > 100.0)) throw PreconditionError("prop1_A: needs x > 100");
    if (!(p.eps > 0.0 && p.eps < 1e-2)) throw PreconditionError("prop1_A: needs 0 < eps < 1e-2");
    if (!(p.alpha >= 0.0 && p.alpha < 1.0)) throw PreconditionError("prop1_A: needs 0 <= alpha < 1");
    const double B = prop1_B(x, p, cache);
    if (!(B > 1.0)) throw PreconditionError("prop1_A: B = " + std::to_string(B) + " <= 1");
    const NuBounds nu = abs_nu(p, cache);
    const double e = p.eps;
    const double v = std::exp(2.0 * e) * (std::log(x) + e) *
                     (2.0 * e * x * nu.hi / std::log(B) + 2.01 * e * std::sqrt(x) +
                      0.5 * std::log(std::log(2.0 * x * x)));
    return round_up(v);
}

ExtendedBounds grid_extend(double m_grid, double M_grid, double a, double b, double delta_max) {
    check_dissection(a, b, delta_max);
    if (!(M_grid > 0.0 && m_grid < 0.0)) throw SignAssumptionError("grid_extend: needs m < 0 < M");
    const ProofConstants& k = constants_for(a);
    const double t = extension_term(a, delta_max);
    ExtendedBounds out;
    out.M = round_up(k.grid_factor * (M_grid + t));
    out.m = -round_up(k.grid_factor * (-m_grid + t));
    return out;
}

double budget_e1(const MollifierParams& p, double b) {
    if (p.alpha == 0.0) return 0.0;
    return round_up(1.001 * p.alpha * p.eps * std::sqrt(b));
}

double budget_e2(const MollifierParams& p, const KernelCache& cache, double a, double b) {
    const NuBounds nu = abs_nu(p, cache);
    const double B = round_down(p.eps * b * nu.lo / (2.0 * mu_plus_hi(p, cache)));
    if (!(B > 1.0)) throw PreconditionError("budget_e2: log argument must exceed 1");
    const double sb = std::sqrt(b);
    const double v = 2.02 * std::log(b) *
                     (p.eps * sb * nu.hi / std::log(B) + p.eps + std::log(std::log(2.0 * a * a)) / (4.0 * std::sqrt(a)));
    return round_up(v);
}

double budget_e3(double a, double delta_max, const ProofConstants& k) {
    return round_up(k.grid_factor * extension_term(a, delta_max));
}

FundamentalResult fundamental_bounds(double m_grid, double M_grid, double a, double b, double delta_max,
                                     const MollifierParams& p, const KernelCache& cache) {
    p.validate();
    if (!(p.eps > 0.0 && p.eps < 1e-4)) throw PreconditionError("fundamental_bounds: needs 0 < eps < 1e-4");
    check_dissection(a, b, delta_max);
    const double shift = std::exp(p.alpha * p.eps);
    const ProofConstants& k = constants_for(a / shift);
    // The hypothesis on eps x nu/(2 mu_+) at the smallest grid point.
    if (!(prop1_B(a, p, cache) > 10.0))
        throw PreconditionError("fundamental_bounds: eps a |nu_c(alpha)| / (2 (mu_c)_+(alpha)) must exceed 10");
    if (!(M_grid > 0.0)) throw SignAssumptionError("fundamental_bounds: grid upper bound is not positive");
    if (!(m_grid < 0.0)) throw SignAssumptionError("fundamental_bounds: grid lower bound is not negative");

    FundamentalResult r;
    r.constants = k;
    r.budget.e1 = budget_e1(p, b);
    r.budget.e2 = budget_e2(p, cache, a, b);
    r.budget.e3 = budget_e3(a, delta_max, k);
    const double E = r.budget.e1 + r.budget.e2 + r.budget.e3;
    r.M = round_up(k.theorem_factor * (M_grid + E));
    r.m = -round_up(k.theorem_factor * (-m_grid + E));
    r.upper_from = a * shift;
    r.lower_to = b / shift;
    return r;
}

PipelinePlan choose_parameters(const PipelineConfig& config) {
    config.validate();
    const double x0 = config.x0;
    const double a = config.a();
    const double b = config.b();
    const double lx = std::log(x0);
    if (!(lx > std::numbers::e)) throw PreconditionError("choose_parameters: needs log log x0 > 1");
    const double s = config.slack();

    PipelinePlan plan;
    plan.constants = constants_for(a);
    MollifierParams& p = plan.params;
    p.alpha = config.alpha;
    p.c = config.theta * lx + std::log(lx) + std::log(std::log(lx)) - std::log(config.delta / 40.0);
    const KernelCache cache(p.c);

    // eps: the recipe value, then the E2 share and the hard cap.
    const double eps_recipe = config.eta2 * std::pow(x0, -config.theta) * std::sqrt(lx);
    double eps_hi = std::min(eps_recipe, kEpsCap);
    const double e2_target = config.e2_share * s;
    auto e2_at = [&](double eps) {
        MollifierParams q = p;
        q.eps = eps;
        return budget_e2(q, cache, a, b);
    };
    // E2 is increasing in eps once its log argument exceeds e.
    auto arg_ok = [&](double eps) {
        MollifierParams q = p;
        q.eps = eps;
        return prop1_B(a, q, cache) > 10.0;
    };
    if (!arg_ok(eps_hi))
        throw PreconditionError("choose_parameters: eps x0 |nu_c| too small for the mollifier bound");
    double eps = eps_hi;
    if (e2_at(eps_hi) > e2_target) {
        double lo = eps_hi * 1e-6;
        while (!arg_ok(lo)) lo *= 1.5;
        if (e2_at(lo) > e2_target)
            throw PreconditionError("choose_parameters: E2 share cannot be met for any admissible eps");
        double hi = eps_hi;
        for (int it = 0; it < 200 && hi / lo > 1.0 + 1e-12; ++it) {
            const double mid = std::sqrt(lo * hi);
            (e2_at(mid) <= e2_target ? lo : hi) = mid;
        }
        eps = lo;
    }
    p.eps = eps;
    plan.T = p.height();
    if (plan.T > config.t_available)
        throw InfeasibleError("choose_parameters: zeros up to " + std::to_string(plan.T) + " needed, " +
                                  std::to_string(config.t_available) + " available (deficit " +
                                  std::to_string(plan.T - config.t_available) + ")",
                              plan.T);

    // Step of the dissection: the E3 share, 1e-5 a, and the recipe h.
    const double e3_target = config.e3_share * s;
    double dmax = 1e-5 * a;
    if (budget_e3(a, 10.0, plan.constants) > e3_target)
        throw PreconditionError("choose_parameters: E3 share cannot be met with a step >= 10");
    if (budget_e3(a, dmax, plan.constants) > e3_target) {
        double lo = 10.0;
        double hi = dmax;
        for (int it = 0; it < 200 && hi - lo > 1e-9 * hi; ++it) {
            const double mid = 0.5 * (lo + hi);
            (budget_e3(a, mid, plan.constants) <= e3_target ? lo : hi) = mid;
        }
        dmax = lo;
    }
    const double h_recipe = config.eta4 * std::pow(x0, -config.theta) / lx;
    // Steps of the grid in x are below b h; keep a small margin for rounding.
    const double h = std::min(h_recipe, dmax / b * (1.0 - 1e-9));
    GridSpec& g = plan.grid;
    g.y0 = std::log(std::sqrt(config.L) * x0);
    g.h = h;
    auto Y = static_cast<std::int64_t>(std::floor(0.5 * std::log(config.L) / h));
    while (Y > 0 && (std::exp(g.log_point(Y)) > b || std::exp(g.log_point(-Y)) < a)) --Y;
    g.y_half = Y;
    g.validate();
    // Largest step of a < x_{-Y} < ... < x_Y < b, with margin.
    const double first = std::exp(g.log_point(-Y));
    const double last = std::exp(g.log_point(Y));
    const double inner = last * -std::expm1(-h);
    plan.delta_max = round_up(std::max({inner, first - a, b - last, 10.0}), 64);
    if (plan.delta_max > 1e-5 * a) throw PreconditionError("choose_parameters: grid step exceeds 1e-5 a");

    const double ell_half = logan_ell_imag(p, 0.5);
    plan.fft_target = s / 40.0 * ell_half / 2.0;
    plan.zero_count_estimate =
        static_cast<std::size_t>(std::max(0.0, riemann_von_mangoldt(plan.T) + completeness_tolerance(plan.T)));

    // Memory plan.
    BlockPlan& bp = plan.blocks;
    const std::size_t N = plan.zero_count_estimate;
    bp.fft_bytes = fft_bytes(N, Y);
    if (config.eta <= 0.0 && bp.fft_bytes <= config.mem_limit) {
        bp.use_blocks = false;
        bp.predicted_bytes = bp.fft_bytes;
    } else {
        bp.use_blocks = true;
        std::size_t n = 0;
        if (config.eta > 0.0) {
            n = block_size_for(x0, config.eta);
        } else {
            for (n = std::max<std::size_t>(N, 16); n >= 16; n /= 2)
                if (block_bytes(N, n, Y, h, plan.T) <= config.mem_limit) break;
            if (n < 16) throw PreconditionError("choose_parameters: memory limit too small for any block size");
        }
        bp.block_size = std::max<std::size_t>(n, 1);
        bp.eta = std::log(static_cast<double>(bp.block_size)) / lx;
        bp.predicted_bytes = block_bytes(N, bp.block_size, Y, h, plan.T);
    }

    // Predicted budget, before any zero is touched.
    ErrorBudget& e = plan.predicted;
    e.e1 = budget_e1(p, b);
    e.e2 = budget_e2(p, cache, a, b);
    e.e3 = budget_e3(a, plan.delta_max, plan.constants);
    e.constant = round_up(2.0 / std::sqrt(a));
    e.tail = round_up(tail_beyond(p, b) / std::sqrt(b));
    e.round = s / 40.0;
    return plan;
}

IntervalBounds run_pipeline(const PipelineConfig& config, const ZeroTable& table) {
    PipelineConfig cfg = config;
    cfg.t_available = std::min(config.t_available, table.t_max());
    const PipelinePlan plan = choose_parameters(cfg);
    const MollifierParams& p = plan.params;
    const double a = cfg.a();
    const double b = cfg.b();
    const KernelCache cache(p.c);

    const CoefficientSet coeffs = make_coefficients(table, p, plan.T);
    const double scale = 2.0 / coeffs.ell_half;

    IntervalBounds out;
    out.a = a;
    out.b = b;
    out.plan = plan;
    out.zeros_used = coeffs.size();
    out.zeros_digest = table.digest();
    out.zeros_accuracy = table.accuracy();
    out.constants_label = plan.constants.label;

    // Per-point charges; each is monotone in x, so the endpoints bound them.
    ErrorBudget& e = out.budget;
    e.constant = round_up(2.0 / std::sqrt(a));
    const TailCharges ta = tail_charges(a, coeffs);
    const TailCharges tb = tail_charges(b, coeffs);
    e.tail = round_up(std::max(ta.tail1 + ta.tail2, tb.tail1 + tb.tail2));
    e.zero_acc = std::max(zero_accuracy_charge(a, coeffs), zero_accuracy_charge(b, coeffs));

    CoefficientSet off_only;
    off_only.params = coeffs.params;
    off_only.T = coeffs.T;
    off_only.ell_half = coeffs.ell_half;
    off_only.zero_accuracy = coeffs.zero_accuracy;
    off_only.off_line = coeffs.off_line;

    const GridSpec& g = plan.grid;
    const std::int64_t Y = g.y_half;
    const std::size_t npts = static_cast<std::size_t>(2 * Y + 1);
    double est_max = -std::numeric_limits<double>::infinity();
    double est_min = std::numeric_limits<double>::infinity();

    if (!plan.blocks.use_blocks) {
        const TrigSum sum = build_grid_sum(coeffs, g);
        const MultiEvalResult fast = fft_multi_eval(sum, Y, plan.fft_target);
        out.fft_degree = fast.degree;
        out.fft_length = fast.R;
        constexpr std::size_t kChunk = 4096;
        const std::size_t chunks = (npts + kChunk - 1) / kChunk;
        std::vector<double> cmax(chunks, -std::numeric_limits<double>::infinity());
        std::vector<double> cmin(chunks, std::numeric_limits<double>::infinity());
        std::vector<double> cerr(chunks, 0.0);
        parallel_for_blocks(chunks, [&](std::size_t c) {
            const std::size_t lo = c * kChunk;
            const std::size_t hi = std::min(npts, lo + kChunk);
            for (std::size_t i = lo; i < hi; ++i) {
                const std::int64_t k = static_cast<std::int64_t>(i) - Y;
                double v = scale * fast.at(k).real();
                if (!off_only.off_line.empty()) {
                    const ZeroSumResult off = zero_sum(std::exp(g.log_point(k)), off_only);
                    v += off.value;
                    cerr[c] = std::max(cerr[c], off.round_error);
                }
                cmax[c] = std::max(cmax[c], v);
                cmin[c] = std::min(cmin[c], v);
            }
        });
        double off_err = 0.0;
        for (std::size_t c = 0; c < chunks; ++c) {
            est_max = std::max(est_max, cmax[c]);
            est_min = std::min(est_min, cmin[c]);
            off_err = std::max(off_err, cerr[c]);
        }
        e.round = round_up(scale * fast.error_bound + off_err + 4.0 * std::numeric_limits<double>::epsilon() *
                                                                    std::max(std::fabs(est_max), std::fabs(est_min)));
    } else {
        const BlockEnvelope env = block_envelope_eval(coeffs, g, plan.blocks.block_size);
        double split = 0.0;
        for (const auto& blk : env.blocks) split += blk.interp_error;
        // Off-line terms are added through their own extrema over the grid.
        double off_hi = 0.0;
        double off_lo = 0.0;
        double off_err = 0.0;
        if (!off_only.off_line.empty()) {
            off_hi = -std::numeric_limits<double>::infinity();
            off_lo = std::numeric_limits<double>::infinity();
            for (std::int64_t k = -Y; k <= Y; ++k) {
                const ZeroSumResult off = zero_sum(std::exp(g.log_point(k)), off_only);
                off_hi = std::max(off_hi, off.value);
                off_lo = std::min(off_lo, off.value);
                off_err = std::max(off_err, off.round_error);
            }
        }
        // env.lower/upper already include the interpolation errors.
        est_max = scale * (env.upper - split) + off_hi;
        est_min = scale * (env.lower + split) + off_lo;
        e.split_envelope = round_up(scale * split);
        e.round = round_up(off_err + 4.0 * std::numeric_limits<double>::epsilon() *
                                         std::max(std::fabs(est_max), std::fabs(est_min)));
    }

    const double err = e.grid_error();
    double M_grid = est_max + err;
    double m_grid = est_min - err;
    // The dissection includes a and b, evaluated directly.
    for (double x : {a, b}) {
        const RemainderEstimate r = remainder_estimate(x, coeffs, table);
        M_grid = std::max(M_grid, r.value + r.total_error());
        m_grid = std::min(m_grid, r.value - r.total_error());
    }
    out.M_grid = round_up(M_grid);
    out.m_grid = -round_up(-m_grid);

    const FundamentalResult f = fundamental_bounds(out.m_grid, out.M_grid, a, b, plan.delta_max, p, cache);
    e.e1 = f.budget.e1;
    e.e2 = f.budget.e2;
    e.e3 = f.budget.e3;
    out.m_plus = f.M;
    out.m_minus = f.m;
    if (!(out.m_minus < 0.0 && out.m_plus > 0.0))
        throw SignAssumptionError("run_pipeline: bounds do not straddle zero");
    return out;
}

}  // namespace psibound
