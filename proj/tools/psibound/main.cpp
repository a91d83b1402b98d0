// psibound: certified bounds for (t - psi(t))/sqrt(t) from zeta-zero tables,
// sieve verification and derived theta / pi bounds.
//
//   psibound bounds --x0 1e7 --L 2 --theta 0.5 --delta 0.5 --zeros zeros.txt
//   psibound verify --range 100:1e8 --check eratosthenes-081
//   psibound derive --cert 100:5e10:-0.81:0.81 --cert 100:1e19:-0.94:0.94
//   psibound zeros validate --zeros zeros.txt

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <exception>

#include "commands.hpp"
#include "manifest.hpp"
#include "psibound/errors.hpp"

using namespace psicli;

namespace {

void add_common(CLI::App* cmd, Common& common, std::string& mem_limit) {
    cmd->add_option("--zeros", common.zeros, "Zero table (text, or binary with .bin/.ztab)");
    cmd->add_option("--threads", common.threads, "Worker thread cap (0 = all cores)");
    cmd->add_option("--mem-limit", mem_limit, "Memory cap in bytes for the evaluation plan")->capture_default_str();
    cmd->add_option("--out", common.out, "Output directory");
}

std::uint64_t parse_bytes(const std::string& text) {
    const double v = parse_number(text);
    if (!(v >= 1.0 && v < 1.8e19) || v != std::floor(v))
        throw psibound::PreconditionError("--mem-limit must be a positive whole number of bytes");
    return static_cast<std::uint64_t>(v);
}

int run(CLI::App& app, CLI::App* bounds, CLI::App* verify, CLI::App* derive, CLI::App* zeros_validate,
        Common& common, const std::string& mem_limit, const BoundsArgs& ba, const VerifyArgs& va,
        const DeriveArgs& da, const ZerosArgs& za) {
    common.mem_limit = parse_bytes(mem_limit);
    if (bounds->parsed()) return cmd_bounds(common, ba);
    if (verify->parsed()) return cmd_verify(common, va);
    if (derive->parsed()) return cmd_derive(common, da);
    if (zeros_validate->parsed()) return cmd_zeros_validate(common, za);
    std::fputs(app.help().c_str(), stderr);
    return kUsage;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Certified bounds for the normalized remainder of Chebyshev's psi"};
    app.require_subcommand(1);
    Common common;
    std::string mem_limit = "4294967296";

    BoundsArgs ba;
    auto* bounds = app.add_subcommand("bounds", "Bounds M-, M+ for (t - psi(t))/sqrt(t) on [x0, L x0]");
    add_common(bounds, common, mem_limit);
    bounds->add_option("--x0", ba.x0, "Left end of the interval")->required();
    bounds->add_option("--L", ba.L, "Interval ratio")->capture_default_str();
    bounds->add_option("--theta", ba.theta, "Slack exponent")->capture_default_str();
    bounds->add_option("--delta", ba.delta, "Slack factor")->capture_default_str();
    bounds->add_option("--alpha", ba.alpha, "Shift fraction")->capture_default_str();
    bounds->add_option("--eta2", ba.eta2, "Smoothing-width knob")->capture_default_str();
    bounds->add_option("--eta4", ba.eta4, "Grid-step knob")->capture_default_str();
    bounds->add_option("--eta", ba.eta, "Fixed block exponent (0 = from --mem-limit)")->capture_default_str();
    bounds->add_option("--e2-share", ba.e2_share, "Fraction of the slack given to E2")->capture_default_str();
    bounds->add_option("--e3-share", ba.e3_share, "Fraction of the slack given to E3")->capture_default_str();
    bounds->add_flag("--timing", ba.timing, "Record wall time in the manifest");

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "Sieve checks over a range and against bounds manifests");
    add_common(verify, common, mem_limit);
    verify->add_option("--range", va.range, "a:b, at most 1e10");
    verify->add_option("--check", va.checks, "Check name or 'all'");
    verify->add_option("--against", va.against, "Bounds manifest to compare with the exact extrema");

    DeriveArgs da;
    auto* derive = app.add_subcommand("derive", "Theta, pi* and pi bounds from psi certificates");
    add_common(derive, common, mem_limit);
    derive->add_option("--cert", da.certs, "psi certificate a:b:c:C");
    derive->add_option("--manifest", da.manifests, "Bounds manifest used as a psi certificate");
    derive->add_option("--sieve-cert", da.sieve_certs, "a:b, certificate from exact sieve extrema");
    derive->add_option("--anchor", da.anchor, "Anchor for pi* (default: start of each cert)");
    derive->add_option("--theta-anchor", da.theta_anchor, "Anchor for pi (default: square of the cert start)");
    derive->add_option("--positivity", da.positivity, "Establish li - pi > 0 on [2, T]");
    derive->add_option("--target-upper", da.target_upper, "Theta upper target")->capture_default_str();
    derive->add_option("--target-lower", da.target_lower, "Theta lower target")->capture_default_str();

    ZerosArgs za;
    auto* zeros = app.add_subcommand("zeros", "Zero-table utilities");
    zeros->require_subcommand(1);
    auto* zeros_validate = zeros->add_subcommand("validate", "Ordering and Riemann-von Mangoldt completeness");
    add_common(zeros_validate, common, mem_limit);
    zeros_validate->add_option("--t-max", za.t_max, "Height to check (default: table height)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        return run(app, bounds, verify, derive, zeros_validate, common, mem_limit, ba, va, da, za);
    } catch (const psibound::IoError& e) {
        std::fprintf(stderr, "I/O error: %s\n", e.what());
        return kIo;
    } catch (const psibound::ParseError& e) {
        std::fprintf(stderr, "parse error: %s\n", e.what());
        return kParse;
    } catch (const psibound::InfeasibleError& e) {
        std::fprintf(stderr, "infeasible: %s (zeros needed to height %.6g)\n", e.what(), e.required_height());
        return kInfeasible;
    } catch (const psibound::SignAssumptionError& e) {
        std::fprintf(stderr, "sign assumption violated: %s\n", e.what());
        return kSignAssumption;
    } catch (const psibound::CompletenessError& e) {
        std::fprintf(stderr, "zero table incomplete: %s\n", e.what());
        return kIncomplete;
    } catch (const psibound::OutOfRangeError& e) {
        std::fprintf(stderr, "out of range: %s\n", e.what());
        return kOutOfRange;
    } catch (const psibound::PreconditionError& e) {
        std::fprintf(stderr, "invalid input: %s\n", e.what());
        return kPrecondition;
    } catch (const psibound::AccuracyError& e) {
        std::fprintf(stderr, "accuracy target missed: %s\n", e.what());
        return kAccuracy;
    } catch (const std::filesystem::filesystem_error& e) {
        std::fprintf(stderr, "I/O error: %s\n", e.what());
        return kIo;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kInternal;
    }
}
