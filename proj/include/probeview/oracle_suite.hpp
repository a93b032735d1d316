#ifndef PROBEVIEW_ORACLE_SUITE_HPP
#define PROBEVIEW_ORACLE_SUITE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "probeview/types.hpp"

namespace probeview::oracle {

struct SuiteConfig {
    std::uint64_t seed = 42;
    /// Number states 0..max_n and random states of support <= max_n.
    Index max_n = 8;
    Index random_cases = 100;
    /// Defaults to {0, 0.1, ..., 1} when empty.
    std::vector<double> q0sq_grid;
};

struct CheckResult {
    std::string name;
    Index count = 0;
    double max_abs_diff = 0;
};

struct SuiteReport {
    std::vector<CheckResult> checks;

    double max_abs_diff() const;
};

/// Cross-checks the closed forms and the general series against the
/// two-mode oracle:
///   number-closed-form   reduce_number_state vs oracle
///   number-series        reduce_pure_general vs oracle on |n>
///   random-series        reduce_pure_general vs oracle on seeded random states
///   complement           oracle tracing the inside mode vs the series at (q1, q0)
///   cat-purity           series purity vs (2 - q0^2 + q0^4)/2
SuiteReport run_suite(const SuiteConfig& config);

}  // namespace probeview::oracle

#endif  // PROBEVIEW_ORACLE_SUITE_HPP
