#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace psicli {

// Process exit codes.
enum Exit : int {
    kOk = 0,
    kCheckFailed = 1,
    kUsage = 2,
    kIo = 3,
    kParse = 4,
    kPrecondition = 5,
    kInfeasible = 6,
    kSignAssumption = 7,
    kIncomplete = 8,
    kOutOfRange = 9,
    kAccuracy = 10,
    kInternal = 11,
};

struct Common {
    std::string zeros;
    unsigned threads = 0;
    std::uint64_t mem_limit = std::uint64_t{4} << 30;
    std::string out;  // empty: current directory (zeros validate: stdout only)
};

struct BoundsArgs {
    double x0 = 0.0;
    double L = 2.0;
    double theta = 0.5;
    double delta = 0.5;
    double alpha = 0.0;
    double eta2 = 1.0;
    double eta4 = 1.0;
    double eta = 0.0;
    double e2_share = 0.6;
    double e3_share = 0.22;
    bool timing = false;
};

struct VerifyArgs {
    std::string range;
    std::vector<std::string> checks;
    std::vector<std::string> against;
};

struct DeriveArgs {
    std::vector<std::string> certs;      // a:b:c:C
    std::vector<std::string> manifests;  // bounds manifests
    std::vector<std::string> sieve_certs;  // a:b, extrema from the sieve
    double anchor = 0.0;        // pi* anchor; 0 = cert start
    double theta_anchor = 0.0;  // pi anchor; 0 = square of the cert start
    double positivity = 0.0;    // li - pi > 0 up to this bound; 0 = skip
    double target_upper = 1.95;
    double target_lower = 0.05;
};

struct ZerosArgs {
    double t_max = 0.0;  // 0 = the table's own height
};

int cmd_bounds(const Common& common, const BoundsArgs& args);
int cmd_verify(const Common& common, const VerifyArgs& args);
int cmd_derive(const Common& common, const DeriveArgs& args);
int cmd_zeros_validate(const Common& common, const ZerosArgs& args);

// Names accepted by verify --check.
const std::vector<std::string>& check_names();

}  // namespace psicli
