#ifndef PROBEVIEW_ANALYSIS_HPP
#define PROBEVIEW_ANALYSIS_HPP

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "probeview/fock.hpp"
#include "probeview/reduction.hpp"

namespace probeview {

/// Tr[rho^2] = sum_ij |rho_ij|^2.
template <typename Derived>
typename Derived::RealScalar purity(const Eigen::MatrixBase<Derived>& rho,
                                    typename Derived::RealScalar tol = 1e-10) {
    const auto violations = validate_density_matrix(rho, tol);
    if (!violations.empty()) throw ValidationError("purity of an invalid density matrix: " + describe(violations));
    return rho.squaredNorm();
}

template <typename Scalar = double>
struct SweepResult {
    std::vector<std::string> schema;
    std::vector<std::vector<Scalar>> rows;
};

namespace detail {

template <typename T>
std::vector<T> sorted_unique(std::vector<T> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

}  // namespace detail

/// Purity of reduced number states over (n, q0^2). Columns: n, q0sq, purity.
template <typename Scalar = double>
SweepResult<Scalar> purity_sweep(std::vector<Index> n_values, std::vector<Scalar> q0sq_grid) {
    if (n_values.empty() || q0sq_grid.empty()) throw ValidationError("purity sweep needs nonempty grids");
    n_values = detail::sorted_unique(std::move(n_values));
    q0sq_grid = detail::sorted_unique(std::move(q0sq_grid));
    if (n_values.front() < 0) throw ValidationError("purity sweep needs n >= 0");

    SweepResult<Scalar> out{{"n", "q0sq", "purity"}, {}};
    for (Index n : n_values)
        for (Scalar p : q0sq_grid)
            out.rows.push_back({Scalar(n), p, purity(reduce_number_state(n, ModeSplit<Scalar>::from_q0_squared(p)))});
    return out;
}

/// Reduced-state temperature over (beta E, q0^2). Columns: inv_betaE, q0sq, inv_beta_primeE.
template <typename Scalar = double>
SweepResult<Scalar> thermal_sweep(std::vector<Scalar> q0sq_values, std::vector<Scalar> beta_energy_grid) {
    if (q0sq_values.empty() || beta_energy_grid.empty())
        throw ValidationError("thermal sweep needs nonempty grids");
    q0sq_values = detail::sorted_unique(std::move(q0sq_values));
    for (Scalar q : q0sq_values)
        if (!(q > Scalar(0) && q <= Scalar(1))) throw ValidationError("thermal sweep needs q0^2 in (0, 1]");
    for (Scalar x : beta_energy_grid)
        if (!(x > Scalar(0))) throw ValidationError("thermal sweep needs beta E > 0");

    // ordered by temperature 1/(beta E) ascending
    beta_energy_grid = detail::sorted_unique(std::move(beta_energy_grid));
    std::reverse(beta_energy_grid.begin(), beta_energy_grid.end());

    SweepResult<Scalar> out{{"inv_betaE", "q0sq", "inv_beta_primeE"}, {}};
    for (Scalar x : beta_energy_grid)
        for (Scalar q : q0sq_values) {
            const Scalar bp = beta_prime(x, Scalar(1), q).beta_energy();
            out.rows.push_back({Scalar(1) / x, q, Scalar(1) / bp});
        }
    return out;
}

/// Purity of the reduced (|0> + |1>)/sqrt(2) state. The closed form
/// (2 - q0^2 + q0^4)/2 is checked against the general-series reduction.
template <typename Scalar = double>
Scalar cat_purity(Scalar q0sq) {
    const auto split = ModeSplit<Scalar>::from_q0_squared(q0sq);
    Vector<Scalar> c(2);
    c << Complex<Scalar>(1), Complex<Scalar>(1);
    const auto report = reduce_pure_general(FockVector<Scalar>::normalized(c), split, Scalar(1e-12));
    const Scalar numeric = purity(report.rho0);
    const Scalar closed = (Scalar(2) - q0sq + q0sq * q0sq) / Scalar(2);
    if (std::abs(numeric - closed) > Scalar(1e-10)) {
        std::ostringstream msg;
        msg << "cat-state purity mismatch at q0^2=" << static_cast<double>(q0sq) << ": series "
            << static_cast<double>(numeric) << " vs closed form " << static_cast<double>(closed);
        throw ConsistencyError(msg.str());
    }
    return numeric;
}

}  // namespace probeview

#endif  // PROBEVIEW_ANALYSIS_HPP
