#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace hamlift {

/// One named verification record. For negative controls the check passes
/// when the residual EXCEEDS the threshold (the quantity is supposed to
/// be visibly nonzero).
struct VerifyCheck {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool negative_control = false;
    bool pass = false;
};

struct VerifyOptions {
    double hbar = 1.0;
    long seed = 1;
    /// Quantization parameter used by the symplectic-covariance checks;
    /// 0.5 is the covariant choice, anything else makes them fail.
    double covariance_tau = 0.5;
};

/// Run the full verification suite; records come back sorted by name.
std::vector<VerifyCheck> run_verification(const VerifyOptions& opts = {});

bool all_pass(const std::vector<VerifyCheck>& checks);

/// {"checks": [{name, residual, tolerance, negative_control, pass}...],
///  "all_pass": bool}
nlohmann::json verification_report(const std::vector<VerifyCheck>& checks);

}  // namespace hamlift
