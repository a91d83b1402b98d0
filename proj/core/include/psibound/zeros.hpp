#pragma once

// Tables of zeta-zero ordinates and the explicit-formula coefficients built
// from them.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "psibound/double_double.hpp"
#include "psibound/kernels.hpp"

namespace psibound {

// A zero beta + i gamma off the critical line. Its partner 1 - beta + i gamma
// is implied by the functional equation.
struct OffLineZero {
    std::size_t index = 0;  // 0-based position in ZeroTable::gammas()
    double beta = 0.5;
};

enum class ZeroFormat { Text, Binary };

class ZeroTable {
public:
    ZeroTable() = default;
    // Validates ordering, range and the Riemann-von Mangoldt band up to
    // t_max; throws PreconditionError / CompletenessError.
    ZeroTable(std::vector<DoubleDouble> gammas, double accuracy, double t_max,
              std::vector<OffLineZero> off_line = {});

    std::span<const DoubleDouble> gammas() const { return gammas_; }
    std::size_t size() const { return gammas_.size(); }
    bool empty() const { return gammas_.empty(); }
    double accuracy() const { return accuracy_; }
    double t_max() const { return t_max_; }
    std::span<const OffLineZero> off_line() const { return off_line_; }
    bool is_off_line(std::size_t index) const;

    // Number of ordinates strictly below / not above T.
    std::size_t count_below(double T) const;
    std::size_t count_at_most(double T) const;

    // 64-bit FNV-1a over the binary encoding; identifies a table in manifests.
    std::uint64_t digest() const;

private:
    std::vector<DoubleDouble> gammas_;
    double accuracy_ = 1.0;
    double t_max_ = 0.0;
    std::vector<OffLineZero> off_line_;
};

// Smooth part of the Riemann-von Mangoldt formula,
// (T/2pi) log(T/(2 pi e)) + 7/8.
double riemann_von_mangoldt(double T);
// Allowed deviation 2 + 0.5 log T of the counting check.
double completeness_tolerance(double T);

ZeroTable load_zeros(const std::filesystem::path& path, ZeroFormat format);
// Format from the extension: ".bin" / ".ztab" is binary, anything else text.
ZeroTable load_zeros(const std::filesystem::path& path);
ZeroTable parse_zeros_text(const std::string& text);
ZeroTable parse_zeros_binary(std::span<const unsigned char> bytes);

void write_zeros(const ZeroTable& table, const std::filesystem::path& path, ZeroFormat format);
std::string format_zeros_text(const ZeroTable& table);
std::vector<unsigned char> format_zeros_binary(const ZeroTable& table);

// Number of ordinates <= T. Checks the counting band at T and on both sides
// of every ordinate below T; the first failing window is reported.
std::size_t validate_completeness(const ZeroTable& table, double T);

struct OffLineTerm {
    DoubleDouble gamma;
    double beta;
    std::complex<double> a;  // l(gamma - i(beta - 1/2)) / (beta + i gamma)
};

struct CoefficientSet {
    MollifierParams params;
    double T = 0.0;                        // truncation height: gamma < T
    double ell_half = 1.0;                 // l_{c,eps}(i/2)
    double zero_accuracy = 0.0;            // stated accuracy of the ordinates
    std::vector<DoubleDouble> gammas;      // on-line zeros below T
    std::vector<std::complex<double>> a;   // l(gamma) / (1/2 + i gamma)
    std::vector<OffLineTerm> off_line;     // both beta and 1 - beta

    std::size_t size() const { return gammas.size(); }
    // sum |a_j| over on-line terms.
    double l1_norm() const;
};

// One coefficient per on-line zero with gamma < T. Requires T <= t_max and
// eps <= 1e-4.
CoefficientSet make_coefficients(const ZeroTable& table, const MollifierParams& params, double T);

}  // namespace psibound
