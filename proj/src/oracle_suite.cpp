#include "probeview/oracle_suite.hpp"

#include <algorithm>

#include "probeview/analysis.hpp"
#include "probeview/oracle.hpp"
#include "probeview/random.hpp"
#include "probeview/reduction.hpp"

namespace probeview::oracle {

double SuiteReport::max_abs_diff() const {
    double m = 0;
    for (const auto& c : checks) m = std::max(m, c.max_abs_diff);
    return m;
}

SuiteReport run_suite(const SuiteConfig& config) {
    if (config.max_n < 0) throw ValidationError("oracle suite needs max_n >= 0");
    if (config.max_n > kMaxCutoff) throw ValidationError("oracle suite max_n exceeds the oracle cutoff limit");
    if (config.random_cases < 0) throw ValidationError("oracle suite needs a nonnegative case count");
    std::vector<double> grid = config.q0sq_grid;
    if (grid.empty())
        for (int k = 0; k <= 10; ++k) grid.push_back(k / 10.0);

    CheckResult closed{"number-closed-form", 0, 0};
    CheckResult series{"number-series", 0, 0};
    for (Index n = 0; n <= config.max_n; ++n) {
        const auto psi = FockVector<double>::number(n);
        for (double q0sq : grid) {
            const auto split = ModeSplit<double>::from_q0_squared(q0sq);
            const DensityMatrixd brute = partial_trace_numeric(expand_two_mode(psi, split));
            const auto d_closed = compare_states(reduce_number_state(n, split), brute);
            const auto d_series = compare_states(reduce_pure_general(psi, split, 1e-12).rho0, brute);
            closed.max_abs_diff = std::max(closed.max_abs_diff, d_closed.max_abs_diff);
            series.max_abs_diff = std::max(series.max_abs_diff, d_series.max_abs_diff);
            ++closed.count;
            ++series.count;
        }
    }

    CheckResult random{"random-series", 0, 0};
    CheckResult complement{"complement", 0, 0};
    StateSampler sampler(config.seed);
    for (Index k = 0; k < config.random_cases; ++k) {
        const Index support = sampler.uniform_index(0, config.max_n);
        const auto psi = sampler.fock_vector(support);
        const auto split = ModeSplit<double>::from_q0_squared(sampler.uniform());
        const auto two_mode = expand_two_mode(psi, split);

        const DensityMatrixd brute = partial_trace_numeric(two_mode);
        random.max_abs_diff = std::max(
            random.max_abs_diff, compare_states(reduce_pure_general(psi, split, 1e-12).rho0, brute).max_abs_diff);
        ++random.count;

        const DensityMatrixd brute_inside = partial_trace_numeric(two_mode, TracedMode::Inside);
        complement.max_abs_diff =
            std::max(complement.max_abs_diff,
                     compare_states(reduce_pure_general(psi, split.complement(), 1e-12).rho0, brute_inside)
                         .max_abs_diff);
        ++complement.count;
    }

    CheckResult cat{"cat-purity", 0, 0};
    Vectord c(2);
    c << 1.0, 1.0;
    const auto cat_state = FockVector<double>::normalized(c);
    for (double q0sq : grid) {
        const auto split = ModeSplit<double>::from_q0_squared(q0sq);
        const DensityMatrixd brute = partial_trace_numeric(expand_two_mode(cat_state, split));
        const double closed_form = (2.0 - q0sq + q0sq * q0sq) / 2.0;
        cat.max_abs_diff = std::max({cat.max_abs_diff, std::abs(purity(brute) - closed_form),
                                     compare_states(reduce_pure_general(cat_state, split, 1e-12).rho0, brute)
                                         .max_abs_diff});
        ++cat.count;
    }

    return {{closed, series, random, complement, cat}};
}

}  // namespace probeview::oracle
