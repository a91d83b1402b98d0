#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <sstream>

#include "manifest.hpp"
#include "psibound/bound_assembly.hpp"
#include "psibound/derived_bounds.hpp"
#include "psibound/errors.hpp"
#include "psibound/oracle_sieve.hpp"
#include "psibound/parallel.hpp"
#include "psibound/zeros.hpp"

#ifndef PSIBOUND_VERSION
#define PSIBOUND_VERSION "unknown"
#endif

namespace fs = std::filesystem;
using namespace psibound;

namespace psicli {

namespace {

fs::path out_dir(const Common& common) { return common.out.empty() ? fs::path(".") : fs::path(common.out); }

void apply_common(const Common& common) {
    if (common.threads > 0) set_max_threads(common.threads);
    fs::create_directories(out_dir(common));
}

std::uint64_t sieve_limit_for(double b) {
    if (!(b <= static_cast<double>(SieveTables::kMaxLimit)))
        throw OutOfRangeError("range end " + fmt30(b) + " exceeds the sieve limit 1e10");
    return static_cast<std::uint64_t>(std::ceil(b)) + 1;
}

std::string hex64(std::uint64_t v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

// Short file-name tag such as "1e+07".
std::string tag(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

void put_budget(Manifest& m, const std::string& prefix, const ErrorBudget& e) {
    m.set(prefix + "e1", e.e1);
    m.set(prefix + "e2", e.e2);
    m.set(prefix + "e3", e.e3);
    m.set(prefix + "tail", e.tail);
    m.set(prefix + "constant", e.constant);
    m.set(prefix + "round", e.round);
    m.set(prefix + "zero_acc", e.zero_acc);
    m.set(prefix + "split_envelope", e.split_envelope);
    m.set(prefix + "grid_error", e.grid_error());
}

void put_scan(Manifest& m, const ScanResult& s) {
    m.set(s.name + ".lo", s.lo);
    m.set(s.name + ".hi", s.hi);
    m.set(s.name + ".worst", s.worst);
    m.set(s.name + ".worst_at", s.worst_at);
    m.set(s.name + ".limit", s.limit);
    m.set(s.name + ".error", s.error);
    m.set(s.name + ".result", s.pass ? "pass" : "fail");
}

}  // namespace

int cmd_bounds(const Common& common, const BoundsArgs& args) {
    const auto start = std::chrono::steady_clock::now();
    PipelineConfig cfg;
    cfg.x0 = args.x0;
    cfg.L = args.L;
    cfg.theta = args.theta;
    cfg.delta = args.delta;
    cfg.alpha = args.alpha;
    cfg.eta2 = args.eta2;
    cfg.eta4 = args.eta4;
    cfg.eta = args.eta;
    cfg.mem_limit = common.mem_limit;
    cfg.e2_share = args.e2_share;
    cfg.e3_share = args.e3_share;
    cfg.t_available = 1.0;  // replaced by the table height below
    cfg.validate();
    if (common.zeros.empty()) throw PreconditionError("bounds needs --zeros");

    apply_common(common);
    const ZeroTable table = load_zeros(common.zeros);
    cfg.t_available = table.t_max();
    const IntervalBounds r = run_pipeline(cfg, table);

    Manifest m;
    m.set("command", "bounds");
    m.set("version", PSIBOUND_VERSION);
    m.set("config.x0", cfg.x0);
    m.set("config.L", cfg.L);
    m.set("config.theta", cfg.theta);
    m.set("config.delta", cfg.delta);
    m.set("config.t_available", cfg.t_available);
    m.set("config.alpha", cfg.alpha);
    m.set("config.eta2", cfg.eta2);
    m.set("config.eta4", cfg.eta4);
    m.set("config.eta", cfg.eta);
    m.set_int("config.mem_limit", cfg.mem_limit);
    m.set("config.e2_share", cfg.e2_share);
    m.set("config.e3_share", cfg.e3_share);
    m.set("zeros.path", fs::path(common.zeros).filename().string());
    m.set("zeros.digest", hex64(r.zeros_digest));
    m.set_int("zeros.count", table.size());
    m.set("zeros.t_max", table.t_max());
    m.set("zeros.accuracy", r.zeros_accuracy);
    m.set_int("zeros.used", r.zeros_used);
    m.set("plan.c", r.plan.params.c);
    m.set("plan.eps", r.plan.params.eps);
    m.set("plan.alpha", r.plan.params.alpha);
    m.set("plan.T", r.plan.T);
    m.set("plan.grid.y0", r.plan.grid.y0);
    m.set("plan.grid.h", r.plan.grid.h);
    m.set_int("plan.grid.y_half", static_cast<unsigned long long>(r.plan.grid.y_half));
    m.set("plan.delta_max", r.plan.delta_max);
    m.set("plan.fft_target", r.plan.fft_target);
    m.set("plan.blocks", r.plan.blocks.use_blocks ? "yes" : "no");
    m.set("plan.block_eta", r.plan.blocks.eta);
    m.set_int("plan.block_size", r.plan.blocks.block_size);
    m.set_int("plan.predicted_bytes", r.plan.blocks.predicted_bytes);
    m.set_int("plan.fft_bytes", r.plan.blocks.fft_bytes);
    m.set("constants.label", r.constants_label);
    m.set("constants.grid_factor", r.plan.constants.grid_factor);
    m.set("constants.theorem_factor", r.plan.constants.theorem_factor);
    m.set("fft.degree", std::to_string(r.fft_degree));
    m.set_int("fft.length", r.fft_length);
    put_budget(m, "budget.", r.budget);
    m.set("a", r.a);
    m.set("b", r.b);
    m.set("m_grid", r.m_grid);
    m.set("M_grid", r.M_grid);
    m.set("m_minus", r.m_minus);
    m.set("m_plus", r.m_plus);
    if (args.timing)
        m.set("wall_seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());

    const fs::path out = out_dir(common);
    const fs::path written =
        write_append_only(out / ("bounds_x0_" + tag(cfg.x0) + "_L_" + tag(cfg.L) + ".manifest"), m.to_text());

    const std::string header = "x,L,M_minus,M_plus,e1,e2,e3,tail,constant,round,zero_acc,split_envelope";
    const ErrorBudget& e = r.budget;
    const std::string row = fmt30(r.a) + "," + fmt30(cfg.L) + "," + fmt30(r.m_minus) + "," + fmt30(r.m_plus) + "," +
                            fmt30(e.e1) + "," + fmt30(e.e2) + "," + fmt30(e.e3) + "," + fmt30(e.tail) + "," +
                            fmt30(e.constant) + "," + fmt30(e.round) + "," + fmt30(e.zero_acc) + "," +
                            fmt30(e.split_envelope);
    append_csv_row(out / "bounds.csv", header, row);

    std::printf("x0=%.6g L=%.6g M-=%.6f M+=%.6f (%s constants, %zu zeros)\n", r.a, cfg.L, r.m_minus, r.m_plus,
                r.constants_label.c_str(), r.zeros_used);
    std::printf("manifest %s\n", written.string().c_str());
    return kOk;
}

// ---------------------------------------------------------------------------

const std::vector<std::string>& check_names() {
    static const std::vector<std::string> names{
        "eratosthenes-081", "psi-094",     "theta-upper-195", "theta-upper-195-int", "theta-lower-005",
        "li-pistar",        "li-pi-positive", "pi-upper",
    };
    return names;
}

namespace {

ScanResult run_check(const std::string& name, const SieveTables& s, double a, double b) {
    if (name == "eratosthenes-081") {
        const RemainderExtrema r = remainder_extrema(s, a, b);
        ScanResult out;
        out.name = name;
        out.lo = a;
        out.hi = b;
        out.error = r.error;
        // worst is the larger violation margin of the two sides
        const double up = r.sup + r.error - 0.81;
        const double down = -0.8 - (r.inf - r.error);
        if (up >= down) {
            out.worst = r.sup;
            out.worst_at = r.arg_sup;
            out.limit = 0.81;
        } else {
            out.worst = r.inf;
            out.worst_at = r.arg_inf;
            out.limit = -0.8;
        }
        out.pass = up <= 0.0 && down <= 0.0;
        return out;
    }
    auto clip = [&](double lo) {
        const double from = std::max(a, lo);
        if (!(from < b)) throw PreconditionError(name + ": range does not meet [" + fmt30(lo) + ", inf)");
        return from;
    };
    ScanResult out;
    if (name == "psi-094") out = scan_psi_abs(s, clip(11.0), b, 0.94);
    else if (name == "theta-upper-195") out = scan_theta_upper(s, clip(1423.0), b, 1.95);
    else if (name == "theta-upper-195-int") out = scan_theta_upper(s, clip(1423.0), b, 1.95, true);
    else if (name == "theta-lower-005") out = scan_theta_lower(s, clip(1.0), b, 0.05);
    else if (name == "li-pistar") out = scan_li_pistar(s, clip(2.0), b);
    else if (name == "li-pi-positive") out = scan_li_pi_positive(s, clip(2.0), b);
    else if (name == "pi-upper") out = scan_pi_upper(s, clip(2.0), b);
    else throw PreconditionError("unknown check '" + name + "'");
    out.name = name;
    return out;
}

}  // namespace

int cmd_verify(const Common& common, const VerifyArgs& args) {
    std::vector<std::string> checks;
    for (const auto& c : args.checks) {
        if (c == "all") checks.insert(checks.end(), check_names().begin(), check_names().end());
        else checks.push_back(c);
    }
    if (checks.empty() && args.against.empty()) throw PreconditionError("verify needs --check or --against");
    for (const auto& c : checks)
        if (std::find(check_names().begin(), check_names().end(), c) == check_names().end())
            throw PreconditionError("unknown check '" + c + "'");

    double a = 0.0, b = 0.0;
    if (!args.range.empty()) std::tie(a, b) = parse_range(args.range);
    else if (!checks.empty()) throw PreconditionError("--check needs --range");
    if (!args.range.empty() && !(a > 0.0)) throw PreconditionError("range must start above 0");

    std::vector<Manifest> prior;
    for (const auto& p : args.against) prior.push_back(Manifest::load(p));
    double top = b;
    for (const auto& m : prior) top = std::max(top, m.number("b"));
    apply_common(common);
    const SieveTables sieve = sieve_range(0, sieve_limit_for(top));

    Manifest report;
    report.set("command", "verify");
    report.set("version", PSIBOUND_VERSION);
    if (!args.range.empty()) {
        report.set("range.a", a);
        report.set("range.b", b);
    }
    report.set_int("sieve.hi", sieve.hi());
    bool all_pass = true;
    for (const auto& c : checks) {
        const ScanResult s = run_check(c, sieve, a, b);
        put_scan(report, s);
        all_pass = all_pass && s.pass;
        std::printf("%-20s %s  worst %.9f at %.17g (limit %g, error %.3g)\n", c.c_str(), s.pass ? "PASS" : "FAIL",
                    s.worst, s.worst_at, s.limit, s.error);
    }
    for (std::size_t i = 0; i < prior.size(); ++i) {
        const Manifest& m = prior[i];
        const double ma = m.number("a"), mb = m.number("b");
        const double lo = m.number("m_minus"), hi = m.number("m_plus");
        const RemainderExtrema ex = remainder_extrema(sieve, ma, mb);
        const bool up = hi >= ex.sup + ex.error;
        const bool down = lo <= ex.inf - ex.error;
        const std::string key = "against." + std::to_string(i) + ".";
        report.set(key + "file", fs::path(args.against[i]).filename().string());
        report.set(key + "a", ma);
        report.set(key + "b", mb);
        report.set(key + "m_minus", lo);
        report.set(key + "m_plus", hi);
        report.set(key + "exact_inf", ex.inf);
        report.set(key + "exact_sup", ex.sup);
        report.set(key + "error", ex.error);
        report.set(key + "result", up && down ? "pass" : "fail");
        if (!up) report.set(key + "witness_upper", ex.arg_sup);
        if (!down) report.set(key + "witness_lower", ex.arg_inf);
        all_pass = all_pass && up && down;
        std::printf("against %-12s %s  [%.6g, %.6g] m-=%.6f <= inf=%.6f, sup=%.6f <= m+=%.6f\n",
                    fs::path(args.against[i]).filename().string().c_str(), up && down ? "PASS" : "FAIL", ma, mb, lo,
                    ex.inf, ex.sup, hi);
        if (!up) std::printf("  upper bound fails at t = %.17g (left limit)\n", ex.arg_sup);
        if (!down) std::printf("  lower bound fails at t = %.17g\n", ex.arg_inf);
    }
    report.set("result", all_pass ? "pass" : "fail");
    const fs::path written = write_append_only(out_dir(common) / "verify_report.manifest", report.to_text());
    std::printf("report %s\n", written.string().c_str());
    return all_pass ? kOk : kCheckFailed;
}

// ---------------------------------------------------------------------------

namespace {

RemainderCert parse_cert(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 4) throw ParseError("cert must be a:b:c:C, got '" + text + "'", 0);
    RemainderCert c{parse_number(parts[0]), parse_number(parts[1]), parse_number(parts[2]), parse_number(parts[3]),
                    "given " + text};
    c.validate();
    return c;
}

}  // namespace

int cmd_derive(const Common& common, const DeriveArgs& args) {
    std::vector<PsiBoundCert> certs;
    for (const auto& t : args.certs) certs.push_back(parse_cert(t));
    for (const auto& p : args.manifests) {
        const Manifest m = Manifest::load(p);
        RemainderCert c{m.number("a"), m.number("b"), m.number("m_minus"), m.number("m_plus"),
                        "bounds manifest " + fs::path(p).filename().string()};
        c.validate();
        certs.push_back(c);
    }
    std::vector<std::pair<double, double>> sieve_ranges;
    for (const auto& r : args.sieve_certs) sieve_ranges.push_back(parse_range(r));
    if (certs.empty() && sieve_ranges.empty()) throw PreconditionError("derive needs --cert, --manifest or --sieve-cert");

    // Largest point the sieve has to reach: sieve certs, the anchors and the
    // positivity range.
    double top = args.positivity;
    for (const auto& [lo, hi] : sieve_ranges) top = std::max(top, hi);
    auto pistar_anchor = [&](const PsiBoundCert& c) { return args.anchor > 0.0 ? args.anchor : c.a; };
    auto pi_anchor = [&](const PsiBoundCert& c) { return args.theta_anchor > 0.0 ? args.theta_anchor : c.a * c.a; };
    apply_common(common);
    SieveTables sieve = sieve_range(0, sieve_limit_for(std::max(top, 100.0)));
    auto sieve_to = [&](double x) -> const SieveTables& {
        if (x > static_cast<double>(sieve.hi())) sieve = sieve_range(0, sieve_limit_for(x));
        return sieve;
    };

    for (const auto& [lo, hi] : sieve_ranges) {
        const RemainderExtrema ex = remainder_extrema(sieve_to(hi), lo, hi);
        RemainderCert c{lo, hi, std::min(0.0, ex.inf - ex.error), std::max(0.0, ex.sup + ex.error),
                        "sieve extrema on [" + fmt30(lo) + ", " + fmt30(hi) + "]"};
        c.validate();
        certs.push_back(c);
    }
    std::stable_sort(certs.begin(), certs.end(), [](const auto& x, const auto& y) { return x.b < y.b; });
    // A cert with a^2 >= b gives no theta range on its own; join it with the
    // contiguous certs below it, keeping the weaker constants.
    for (std::size_t i = 0; i < certs.size(); ++i) {
        PsiBoundCert m = certs[i];
        for (std::size_t j = i; j-- > 0 && !(m.a * m.a < m.b) && certs[j].b >= m.a;) {
            m.a = std::min(m.a, certs[j].a);
            m.c_lower = std::min(m.c_lower, certs[j].c_lower);
            m.C_upper = std::max(m.C_upper, certs[j].C_upper);
            m.provenance += " + " + certs[j].provenance;
        }
        if (m.a != certs[i].a) certs[i] = m;
    }

    const fs::path out = out_dir(common);
    std::string theta_text, pistar_text, pi_text;
    for (const auto& c : certs) {
        const ThetaBoundFn th = lemma1_theta(c);
        theta_text += th.describe();
        if (!(c.b > 1e7)) {
            pistar_text += "# psi cert [" + fmt30(c.a) + ", " + fmt30(c.b) + "]: b <= 1e7, no partial summation\n";
            pi_text += "# psi cert [" + fmt30(c.a) + ", " + fmt30(c.b) + "]: b <= 1e7, no partial summation\n";
            continue;
        }
        const double a1 = pistar_anchor(c);
        pistar_text += lemma2_pistar(c, a1, sieve_to(a1)).describe();
        const double a2 = pi_anchor(c);
        ThetaBoundCert tc = th.restrict_to(std::max(th.lo, a2), th.hi);
        // the pi lemma takes c <= 0; a positive lower constant is weakened to 0
        if (tc.c_lower > 0.0) {
            tc.c_lower = 0.0;
            tc.provenance += ", lower constant weakened to 0";
        }
        pi_text += lemma3_pi(tc, a2, sieve_to(a2)).describe();
    }
    const ChainReport chain = chain_theorem2(certs, args.target_upper, args.target_lower);

    std::string report = "# derive\nversion=" + std::string(PSIBOUND_VERSION) + "\n";
    for (std::size_t i = 0; i < certs.size(); ++i) {
        const auto& c = certs[i];
        const std::string k = "cert." + std::to_string(i) + ".";
        report += k + "a=" + fmt30(c.a) + "\n" + k + "b=" + fmt30(c.b) + "\n" + k + "c=" + fmt30(c.c_lower) + "\n" +
                  k + "C=" + fmt30(c.C_upper) + "\n" + k + "provenance=" + c.provenance + "\n";
    }
    report += chain.to_text();
    if (args.positivity > 0.0) {
        const SieveTables& s = sieve_to(args.positivity);
        const ScanResult tp = scan_theta_lower(s, 1.0, args.positivity, 0.0);
        const PositivityCert pc = li_pi_positivity(s, tp);
        report += "positivity.lo=" + fmt30(pc.lo) + "\npositivity.hi=" + fmt30(pc.hi) +
                  "\npositivity.anchor_A=" + fmt30(pc.anchor_A) + "\npositivity.anchor_error=" +
                  fmt30(pc.anchor_error) + "\npositivity.holds=" + (pc.holds ? "yes" : "no") +
                  "\npositivity.reason=" + pc.reason + "\n";
        std::printf("li - pi > 0 on [2, %.6g]: %s (%s)\n", pc.hi, pc.holds ? "yes" : "no", pc.reason.c_str());
    }
    write_append_only(out / "theta_certs.txt", theta_text);
    write_append_only(out / "pistar_certs.txt", pistar_text);
    write_append_only(out / "pi_certs.txt", pi_text);
    const fs::path written = write_append_only(out / "derive_report.txt", report);
    std::printf("%s", chain.to_text().c_str());
    std::printf("report %s\n", written.string().c_str());
    return kOk;
}

// ---------------------------------------------------------------------------

int cmd_zeros_validate(const Common& common, const ZerosArgs& args) {
    if (common.zeros.empty()) throw PreconditionError("zeros validate needs --zeros");
    if (common.threads > 0) set_max_threads(common.threads);
    const ZeroTable table = load_zeros(common.zeros);
    const double T = args.t_max > 0.0 ? args.t_max : table.t_max();
    const std::size_t n = validate_completeness(table, T);
    Manifest m;
    m.set("command", "zeros validate");
    m.set("version", PSIBOUND_VERSION);
    m.set("zeros.path", fs::path(common.zeros).filename().string());
    m.set("zeros.digest", hex64(table.digest()));
    m.set_int("zeros.count", table.size());
    m.set("zeros.t_max", table.t_max());
    m.set("zeros.accuracy", table.accuracy());
    m.set_int("zeros.off_line", table.off_line().size());
    m.set("checked.T", T);
    m.set_int("checked.count", n);
    m.set("checked.rvm", riemann_von_mangoldt(T));
    m.set("checked.tolerance", completeness_tolerance(T));
    m.set("result", "pass");
    std::printf("%s", m.to_text().c_str());
    if (!common.out.empty()) {
        fs::create_directories(common.out);
        write_append_only(fs::path(common.out) / "zeros_report.manifest", m.to_text());
    }
    return kOk;
}

}  // namespace psicli
