#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qs/qcore.hpp"

namespace qs {

// Per-identity verification record. pass <=> residual < tolerance.
struct ReportRecord {
    std::string identity_id;
    std::string inputs;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct Report {
    std::string suite;
    cplx q;
    std::uint64_t seed = 0;
    int samples = 0;
    double tolerance_scale = 1.0;
    std::vector<ReportRecord> records;

    void add(std::string id, std::string inputs, double residual, double tolerance);
    bool all_pass() const;
    int passed() const;
    // Header line plus one record per line, fixed key order, fixed formatting.
    std::string to_text() const;
    // "PASS k/k" or "FAIL j/k".
    std::string summary() const;
};

// "re", "re+imi" or "re-imi" with up to 15 significant digits.
std::string format_complex(cplx z);
// Parses "a+bi" / "a-bi" / "bi" / "a" (no spaces).
cplx parse_complex(const std::string& text);

}  // namespace qs
