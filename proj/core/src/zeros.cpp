#include "psibound/zeros.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <numbers>
#include <sstream>

#include "psibound/errors.hpp"
#include "psibound/parallel.hpp"

namespace psibound {

namespace {

constexpr char kMagic[4] = {'Z', 'T', 'A', 'B'};
constexpr double kTwo64 = 18446744073709551616.0;

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(const std::string& text, std::size_t line, const char* what) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw ParseError(std::string("bad ") + what + " '" + text + "'", line);
    }
    if (used != text.size()) throw ParseError(std::string("bad ") + what + " '" + text + "'", line);
    return v;
}

// Exact conversion of a u64 to double-double.
DoubleDouble dd_from_u64(std::uint64_t u) {
    const double high = static_cast<double>(u >> 32) * 4294967296.0;
    const double low = static_cast<double>(u & 0xffffffffULL);
    return DoubleDouble(high) + DoubleDouble(low);
}

std::uint64_t dd_to_u64(DoubleDouble q) {
    // q is integer valued; hi and lo are integers, lo possibly negative.
    const auto h = static_cast<std::uint64_t>(q.hi);
    return q.lo >= 0 ? h + static_cast<std::uint64_t>(q.lo) : h - static_cast<std::uint64_t>(-q.lo);
}

// (integer part, round(fraction * 2^64)).
std::pair<std::uint64_t, std::uint64_t> split_fixed(DoubleDouble g) {
    DoubleDouble ip = dd_floor(g);
    DoubleDouble frac = g - ip;
    DoubleDouble scaled = frac * DoubleDouble(kTwo64);
    DoubleDouble q = dd_floor(scaled);
    if ((scaled - q).to_double() >= 0.5) q = q + DoubleDouble(1.0);
    if (q.to_double() >= kTwo64) {
        ip = ip + DoubleDouble(1.0);
        q = DoubleDouble(0.0);
    }
    return {dd_to_u64(ip), dd_to_u64(q)};
}

DoubleDouble join_fixed(std::uint64_t ip, std::uint64_t frac) {
    return dd_from_u64(ip) + dd_from_u64(frac) * DoubleDouble(0x1p-64);
}

void put_u64(std::vector<unsigned char>& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<unsigned char>(v >> (8 * i)));
}

std::uint64_t get_u64(std::span<const unsigned char> bytes, std::size_t at) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(bytes[at + i]) << (8 * i);
    return v;
}

// Plain decimal with 18 fractional digits.
std::string dd_to_fixed18(DoubleDouble g) {
    DoubleDouble ip = dd_floor(g);
    DoubleDouble scaled = (g - ip) * DoubleDouble(1e18);
    DoubleDouble q = dd_floor(scaled);
    if ((scaled - q).to_double() >= 0.5) q = q + DoubleDouble(1.0);
    std::uint64_t whole = dd_to_u64(ip);
    std::uint64_t frac = dd_to_u64(q);
    if (frac >= 1000000000000000000ULL) {
        frac -= 1000000000000000000ULL;
        ++whole;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%llu.%018llu", static_cast<unsigned long long>(whole),
                  static_cast<unsigned long long>(frac));
    return buf;
}

std::string window_text(double lo, double hi) {
    std::ostringstream os;
    os.precision(12);
    os << "[" << lo << ", " << hi << "]";
    return os.str();
}

void check_band(double T, std::size_t count, double window_lo) {
    if (T < 14.0) return;
    const double expected = riemann_von_mangoldt(T);
    if (std::fabs(static_cast<double>(count) - expected) > completeness_tolerance(T)) {
        std::ostringstream os;
        os.precision(12);
        os << "zero count " << count << " at T=" << T << " deviates from the Riemann-von Mangoldt estimate "
           << expected << " by more than " << completeness_tolerance(T) << " in window "
           << window_text(window_lo, T);
        throw CompletenessError(os.str());
    }
}

}  // namespace

double riemann_von_mangoldt(double T) {
    if (T <= 0.0) return 0.0;
    const double two_pi = 2.0 * std::numbers::pi;
    return T / two_pi * std::log(T / (two_pi * std::numbers::e)) + 0.875;
}

double completeness_tolerance(double T) { return 2.0 + 0.5 * std::log(std::max(T, 1.0)); }

ZeroTable::ZeroTable(std::vector<DoubleDouble> gammas, double accuracy, double t_max,
                     std::vector<OffLineZero> off_line)
    : gammas_(std::move(gammas)), accuracy_(accuracy), t_max_(t_max), off_line_(std::move(off_line)) {
    if (!(accuracy_ > 0.0)) throw PreconditionError("zero table: accuracy must be positive");
    if (!(t_max_ >= 0.0)) throw PreconditionError("zero table: t_max must be non-negative");
    for (std::size_t i = 0; i < gammas_.size(); ++i) {
        if (!(gammas_[i].hi > 14.0))
            throw PreconditionError("zero table: ordinate #" + std::to_string(i + 1) + " is not above 14");
        if (i > 0 && !(gammas_[i - 1] < gammas_[i]))
            throw PreconditionError("zero table: ordinates not strictly ascending at #" + std::to_string(i + 1));
    }
    std::sort(off_line_.begin(), off_line_.end(),
              [](const OffLineZero& a, const OffLineZero& b) { return a.index < b.index; });
    for (std::size_t i = 0; i < off_line_.size(); ++i) {
        if (off_line_[i].index >= gammas_.size())
            throw PreconditionError("zero table: off-line index out of range");
        if (i > 0 && off_line_[i].index == off_line_[i - 1].index)
            throw PreconditionError("zero table: duplicate off-line index");
    }
    if (t_max_ > 0.0) validate_completeness(*this, t_max_);
}

bool ZeroTable::is_off_line(std::size_t index) const {
    return std::binary_search(off_line_.begin(), off_line_.end(), OffLineZero{index, 0.0},
                              [](const OffLineZero& a, const OffLineZero& b) { return a.index < b.index; });
}

std::size_t ZeroTable::count_below(double T) const {
    return static_cast<std::size_t>(std::lower_bound(gammas_.begin(), gammas_.end(), DoubleDouble(T)) -
                                    gammas_.begin());
}

std::size_t ZeroTable::count_at_most(double T) const {
    return static_cast<std::size_t>(std::upper_bound(gammas_.begin(), gammas_.end(), DoubleDouble(T)) -
                                    gammas_.begin());
}

std::uint64_t ZeroTable::digest() const {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char b : format_zeros_binary(*this)) {
        h ^= b;
        h *= 1099511628211ULL;
    }
    for (const auto& z : off_line_) {
        for (std::uint64_t v : {static_cast<std::uint64_t>(z.index), std::bit_cast<std::uint64_t>(z.beta)}) {
            for (int i = 0; i < 8; ++i) {
                h ^= static_cast<unsigned char>(v >> (8 * i));
                h *= 1099511628211ULL;
            }
        }
    }
    return h;
}

std::size_t validate_completeness(const ZeroTable& table, double T) {
    if (T > table.t_max())
        throw PreconditionError("validate_completeness: T exceeds the table's t_max");
    const auto g = table.gammas();
    const std::size_t n = table.count_at_most(T);
    double prev = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double gk = g[k].to_double();
        check_band(gk, k, prev);      // just below gamma_k
        check_band(gk, k + 1, prev);  // at gamma_k
        prev = gk;
    }
    check_band(T, n, prev);
    return n;
}

ZeroTable parse_zeros_text(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    std::size_t line = 0;
    double accuracy = -1.0;
    double t_max = -1.0;
    std::vector<std::pair<std::size_t, double>> off_spec;
    std::vector<DoubleDouble> gammas;
    while (std::getline(in, raw)) {
        ++line;
        const std::string s = trim(raw);
        if (s.empty()) continue;
        if (s[0] == '#') {
            const std::string body = trim(s.substr(1));
            const auto eq = body.find('=');
            if (eq == std::string::npos) continue;  // free comment
            const std::string key = trim(body.substr(0, eq));
            const std::string value = trim(body.substr(eq + 1));
            if (key == "accuracy") {
                accuracy = parse_double(value, line, "accuracy");
            } else if (key == "t_max") {
                t_max = parse_double(value, line, "t_max");
            } else if (key == "off_line") {
                std::istringstream items(value);
                std::string item;
                while (std::getline(items, item, ',')) {
                    item = trim(item);
                    if (item.empty()) continue;
                    const auto colon = item.find(':');
                    const std::string idx_text = trim(item.substr(0, colon));
                    const double idx = parse_double(idx_text, line, "off_line index");
                    if (idx < 1 || idx != std::floor(idx)) throw ParseError("off_line indices are 1-based integers", line);
                    double beta = std::numeric_limits<double>::quiet_NaN();
                    if (colon != std::string::npos) {
                        beta = parse_double(trim(item.substr(colon + 1)), line, "off_line beta");
                        if (!(beta > 0.0 && beta < 1.0) || beta == 0.5)
                            throw ParseError("off_line beta must lie in (0, 1) and differ from 1/2", line);
                    }
                    off_spec.emplace_back(static_cast<std::size_t>(idx) - 1, beta);
                }
            }
            continue;
        }
        const auto dot = s.find('.');
        if (dot == std::string::npos || s.size() - dot - 1 < 9)
            throw ParseError("ordinate '" + s + "' needs at least 9 fractional digits", line);
        DoubleDouble g;
        if (!dd_parse_decimal(s, g)) throw ParseError("malformed ordinate '" + s + "'", line);
        if (!gammas.empty() && !(gammas.back() < g))
            throw ParseError("ordinates must be strictly ascending", line);
        gammas.push_back(g);
    }
    if (accuracy < 0.0) throw ParseError("missing '# accuracy=' header", line);
    if (t_max < 0.0) throw ParseError("missing '# t_max=' header", line);
    std::vector<OffLineZero> off_line;
    for (const auto& [idx, beta] : off_spec) {
        if (idx >= gammas.size()) throw ParseError("off_line index beyond the last ordinate", line);
        off_line.push_back({idx, beta});
    }
    return ZeroTable(std::move(gammas), accuracy, t_max, std::move(off_line));
}

ZeroTable parse_zeros_binary(std::span<const unsigned char> bytes) {
    if (bytes.size() < 28 || std::memcmp(bytes.data(), kMagic, 4) != 0)
        throw ParseError("binary zero table: bad magic", 0);
    const std::uint64_t count = get_u64(bytes, 4);
    const double accuracy = std::bit_cast<double>(get_u64(bytes, 12));
    const double t_max = std::bit_cast<double>(get_u64(bytes, 20));
    if (count > (bytes.size() - 28) / 16 || bytes.size() != 28 + 16 * count)
        throw ParseError("binary zero table: size does not match count", 0);
    std::vector<DoubleDouble> gammas(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        const std::size_t at = 28 + 16 * i;
        gammas[i] = join_fixed(get_u64(bytes, at), get_u64(bytes, at + 8));
        if (i > 0 && !(gammas[i - 1] < gammas[i]))
            throw ParseError("binary zero table: ordinates not ascending at record " + std::to_string(i + 1), 0);
    }
    return ZeroTable(std::move(gammas), accuracy, t_max);
}

ZeroTable load_zeros(const std::filesystem::path& path, ZeroFormat format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open zero table '" + path.string() + "'");
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("read failure on '" + path.string() + "'");
    if (format == ZeroFormat::Text) return parse_zeros_text(data);
    return parse_zeros_binary(std::span(reinterpret_cast<const unsigned char*>(data.data()), data.size()));
}

ZeroTable load_zeros(const std::filesystem::path& path) {
    const auto ext = path.extension().string();
    return load_zeros(path, (ext == ".bin" || ext == ".ztab") ? ZeroFormat::Binary : ZeroFormat::Text);
}

std::string format_zeros_text(const ZeroTable& table) {
    std::ostringstream os;
    os.precision(17);
    os << "# accuracy=" << table.accuracy() << "\n# t_max=" << table.t_max() << "\n";
    if (!table.off_line().empty()) {
        os << "# off_line=";
        bool first = true;
        for (const auto& z : table.off_line()) {
            if (!first) os << ",";
            first = false;
            os << z.index + 1;
            if (!std::isnan(z.beta)) os << ":" << z.beta;
        }
        os << "\n";
    }
    for (const auto& g : table.gammas()) os << dd_to_fixed18(g) << "\n";
    return os.str();
}

std::vector<unsigned char> format_zeros_binary(const ZeroTable& table) {
    std::vector<unsigned char> out(kMagic, kMagic + 4);
    out.reserve(28 + 16 * table.size());
    put_u64(out, table.size());
    put_u64(out, std::bit_cast<std::uint64_t>(table.accuracy()));
    put_u64(out, std::bit_cast<std::uint64_t>(table.t_max()));
    for (const auto& g : table.gammas()) {
        const auto [ip, frac] = split_fixed(g);
        put_u64(out, ip);
        put_u64(out, frac);
    }
    return out;
}

void write_zeros(const ZeroTable& table, const std::filesystem::path& path, ZeroFormat format) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write zero table '" + path.string() + "'");
    if (format == ZeroFormat::Text) {
        const std::string s = format_zeros_text(table);
        out.write(s.data(), static_cast<std::streamsize>(s.size()));
    } else {
        if (!table.off_line().empty())
            throw PreconditionError("binary zero format cannot carry off-line annotations");
        const auto b = format_zeros_binary(table);
        out.write(reinterpret_cast<const char*>(b.data()), static_cast<std::streamsize>(b.size()));
    }
    if (!out) throw IoError("write failure on '" + path.string() + "'");
}

double CoefficientSet::l1_norm() const {
    CompensatedSum s;
    for (const auto& v : a) s.add(std::abs(v));
    return s.to_double();
}

CoefficientSet make_coefficients(const ZeroTable& table, const MollifierParams& params, double T) {
    params.validate();
    if (params.eps > 1e-4) throw PreconditionError("make_coefficients: explicit formula needs eps <= 1e-4");
    if (T > table.t_max()) throw PreconditionError("make_coefficients: T exceeds the table's t_max");
    CoefficientSet out;
    out.params = params;
    out.T = T;
    out.ell_half = logan_ell_imag(params, 0.5);
    out.zero_accuracy = table.accuracy();

    const std::size_t n = table.count_below(T);
    const auto g = table.gammas();
    std::vector<std::size_t> on_line;
    on_line.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (table.is_off_line(i)) continue;
        on_line.push_back(i);
    }
    out.gammas.resize(on_line.size());
    out.a.resize(on_line.size());
    constexpr std::size_t kBlock = 1 << 14;
    const std::size_t blocks = (on_line.size() + kBlock - 1) / kBlock;
    parallel_for_blocks(blocks, [&](std::size_t b) {
        const std::size_t lo = b * kBlock;
        const std::size_t hi = std::min(on_line.size(), lo + kBlock);
        for (std::size_t j = lo; j < hi; ++j) {
            const DoubleDouble gamma = g[on_line[j]];
            const double gd = gamma.to_double();
            out.gammas[j] = gamma;
            out.a[j] = logan_ell(params, gd) / std::complex<double>(0.5, gd);
        }
    });

    for (const auto& z : table.off_line()) {
        if (z.index >= n) break;
        if (std::isnan(z.beta))
            throw PreconditionError("make_coefficients: off-line zero #" + std::to_string(z.index + 1) +
                                    " has no real part recorded");
        const double gd = g[z.index].to_double();
        for (double beta : {z.beta, 1.0 - z.beta}) {
            const std::complex<double> arg(gd, -(beta - 0.5));
            out.off_line.push_back({g[z.index], beta, logan_ell_complex(params, arg) / std::complex<double>(beta, gd)});
        }
    }
    return out;
}

}  // namespace psibound
