#pragma once

#include <optional>
#include <string>

#include "qs/report.hpp"

namespace qs {

enum class Suite {
    classical,
    theorem1,
    theorem2,
    vwp,
    slater,
    wronskian,
    elliptic,
    thetaspaces,
    all,
};

// Maps suite names used on the command line; throws DomainError for unknown
// names.
Suite suite_from_name(const std::string& name);
std::string suite_name(Suite suite);

struct SuiteConfig {
    Suite suite = Suite::all;
    cplx q = cplx(0.5, 0.0);
    std::uint64_t seed = 7;
    int samples = 0;  // 0 = per-suite default
    double tolerance_scale = 1.0;
    int max_terms = 0;  // 0 = QContext default
};

Report run_suite(const SuiteConfig& config);

}  // namespace qs
