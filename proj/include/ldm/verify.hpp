// SPDX-License-Identifier: Apache-2.0
//
// Self-verification suite: every closed form is checked against an
// independent route (quadrature, enumeration, identity residuals, search).
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "ldm/oracle.hpp"

namespace ldm::verify {

struct Options {
    std::uint64_t seed = 1;
    int samples = 100;  // random configurations per sampled check
    /// Relative perturbation applied to closed-form energies before they are
    /// compared with independent routes.  Non-zero only to prove that the
    /// suite can fail.
    double closed_form_perturbation = 0.0;
};

struct CheckResult {
    std::string name;
    bool passed = true;
    int samples = 0;
    double worst = 0.0;      // worst normalized residual
    double tolerance = 0.0;  // pass iff worst <= tolerance
};

struct Summary {
    std::uint64_t seed = 0;
    bool passed = true;
    std::vector<CheckResult> checks;
    std::vector<oracle::VerificationRecord> records;
};

Summary run(const Options& options);

nlohmann::json to_json(const Summary& summary);

}  // namespace ldm::verify
