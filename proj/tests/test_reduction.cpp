#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "probeview/random.hpp"
#include "probeview/reduction.hpp"

using namespace probeview;

namespace {

constexpr double kTol = 1e-12;

ModeSplit<double> split_sq(double q0sq) { return ModeSplit<double>::from_q0_squared(q0sq); }

double max_diff(const DensityMatrixd& a, const DensityMatrixd& b) { return (a - b).cwiseAbs().maxCoeff(); }

DensityMatrixd diag(std::initializer_list<double> d) {
    DensityMatrixd m = DensityMatrixd::Zero(static_cast<Index>(d.size()), static_cast<Index>(d.size()));
    Index k = 0;
    for (double x : d) m(k, k) = x, ++k;
    return m;
}

FockVector<double> cat() {
    Vectord c(2);
    c << 1.0, 1.0;
    return FockVector<double>::normalized(c);
}

std::vector<double> grid11() {
    std::vector<double> g;
    for (int k = 0; k <= 10; ++k) g.push_back(k / 10.0);
    return g;
}

}  // namespace

TEST_CASE("binomial pmf") {
    CHECK(binomial_pmf(5, 0.0, 0) == 1.0);
    CHECK(binomial_pmf(5, 0.0, 2) == 0.0);
    CHECK(binomial_pmf(5, 1.0, 5) == 1.0);
    CHECK(binomial_pmf(2, 0.5, 1) == doctest::Approx(0.5).epsilon(1e-15));
    // exact rational 66706983/250000000
    CHECK(std::abs(binomial_pmf(10, 0.3, 3) - 0.266827932) < 1e-15);
    CHECK_THROWS_AS(binomial_pmf(3, 0.5, 4), ValidationError);
    CHECK_THROWS_AS(binomial_pmf(3, 1.5, 1), ValidationError);

    for (Index n : {0, 1, 7, 40, 300})
        for (double p : {0.0, 0.01, 0.37, 0.5, 0.99, 1.0})
            CHECK(std::abs(binomial_distribution(n, p).sum() - 1.0) < 1e-14 * std::max<double>(1.0, n / 10.0));
}

TEST_CASE("reduce_pure_general examples") {
    const auto one = reduce_pure_general(FockVector<double>::number(1), split_sq(1.0), kTol);
    CHECK(max_diff(one.rho0, diag({0.0, 1.0})) == 0.0);

    const auto two = reduce_pure_general(FockVector<double>::number(2), split_sq(0.5), kTol);
    CHECK(max_diff(two.rho0, diag({0.25, 0.5, 0.25})) < kTol);
    CHECK(two.tail_bound == 0.0);
    CHECK(two.series_terms_used == 2);

    const auto c = reduce_pure_general(cat(), split_sq(0.5), kTol);
    DensityMatrixd expected(2, 2);
    const double off = 1.0 / (2.0 * std::numbers::sqrt2);
    expected << 0.75, off, off, 0.25;
    CHECK(max_diff(c.rho0, expected) < kTol);

    CHECK_THROWS_AS(reduce_pure_general(cat(), split_sq(0.5), 0.0), ValidationError);
}

TEST_CASE("cat-state coherence is q0/2") {
    for (double q0sq : grid11()) {
        const auto r = reduce_pure_general(cat(), split_sq(q0sq), kTol).rho0;
        const double q0 = std::sqrt(q0sq);
        CHECK(std::abs(r(0, 1) - Complex<double>(q0 / 2)) < kTol);
        CHECK(std::abs(r(1, 1) - Complex<double>(q0sq / 2)) < kTol);
        CHECK(std::abs(r(0, 0) - Complex<double>(1 - q0sq / 2)) < kTol);
    }
}

TEST_CASE("complex amplitudes give conjugate-symmetric output") {
    Vectord c(3);
    c << Complex<double>(0.2, 0.1), Complex<double>(-0.4, 0.6), Complex<double>(0.0, -0.5);
    const auto psi = FockVector<double>::normalized(c);
    const auto r = reduce_pure_general(psi, split_sq(0.3), kTol).rho0;
    CHECK((r - r.adjoint()).cwiseAbs().maxCoeff() < 1e-15);
    // <0|rho0|2> = psi_0 psi_2^* q0^2, the only o = 0 term
    CHECK(std::abs(r(0, 2) - psi(0) * std::conj(psi(2)) * 0.3) < kTol);
}

TEST_CASE("reduce_mixed") {
    MixtureState<double> single{{1.0}, {cat()}};
    CHECK(max_diff(reduce_mixed(single, split_sq(0.4), kTol).rho0,
                   reduce_pure_general(cat(), split_sq(0.4), kTol).rho0) == 0.0);

    MixtureState<double> m01{{0.5, 0.5}, {FockVector<double>::number(0), FockVector<double>::number(1)}};
    CHECK(max_diff(reduce_mixed(m01, split_sq(1.0), kTol).rho0, diag({0.5, 0.5})) == 0.0);

    MixtureState<double> m12{{0.5, 0.5}, {FockVector<double>::number(1), FockVector<double>::number(2)}};
    CHECK(max_diff(reduce_mixed(m12, split_sq(0.5), kTol).rho0, diag({0.375, 0.5, 0.125})) < kTol);
}

TEST_CASE("reduce_number_state") {
    CHECK(max_diff(reduce_number_state(0, split_sq(0.37)), diag({1.0})) == 0.0);
    CHECK(max_diff(reduce_number_state(3, split_sq(0.0)), diag({1.0, 0.0, 0.0, 0.0})) == 0.0);
    CHECK(max_diff(reduce_number_state(2, split_sq(0.5)), diag({0.25, 0.5, 0.25})) < kTol);
}

TEST_CASE("closed form agrees with general series") {
    for (Index n = 0; n <= 12; ++n)
        for (double q0sq : grid11()) {
            const auto s = split_sq(q0sq);
            CHECK(max_diff(reduce_number_state(n, s), reduce_pure_general(FockVector<double>::number(n), s, kTol).rho0) <
                  1e-12);
        }
}

TEST_CASE("large occupation numbers stay finite") {
    // factorials overflow double beyond n = 170
    const auto r = reduce_pure_general(FockVector<double>::number(400), split_sq(0.3), kTol).rho0;
    CHECK(r.allFinite());
    CHECK(std::abs(r.trace() - Complex<double>(1)) < 1e-10);
    CHECK(max_diff(r, reduce_number_state(400, split_sq(0.3))) < 1e-12);
}

TEST_CASE("coherent and thermal closed forms") {
    const auto c1 = reduce_coherent(Complex<double>(1.0, 0.0), split_sq(1.0));
    CHECK(c1.alpha == Complex<double>(1.0, 0.0));
    CHECK(reduce_coherent(Complex<double>(3.0, -2.0), split_sq(0.0)).alpha == Complex<double>(0.0, 0.0));
    CHECK(std::abs(reduce_coherent(Complex<double>(2.0, 0.0), split_sq(0.25)).alpha - Complex<double>(1.0, 0.0)) <
          1e-15);

    const double beta = std::log(2.0);
    CHECK(beta_prime(beta, 1.0, 1.0).beta_prime == beta);
    CHECK(std::abs(beta_prime(beta, 1.0, 0.5).beta_energy() - std::log(3.0)) < 1e-12);
    CHECK(std::abs(beta_prime(beta, 1.0, 0.25).beta_energy() - std::log(5.0)) < 1e-12);
    // E scales out: beta' E depends only on beta E
    CHECK(std::abs(beta_prime(beta / 4, 4.0, 0.5).beta_energy() - std::log(3.0)) < 1e-12);
    CHECK_THROWS_AS(beta_prime(beta, 1.0, 0.0), VacuumLimit);
    CHECK_THROWS_AS(beta_prime(-1.0, 1.0, 0.5), ValidationError);
    CHECK_THROWS_AS(beta_prime(1.0, 1.0, 1.2), ValidationError);

    const ThermalState<double> t{beta, 1.0};
    CHECK(reduce_thermal(t, split_sq(1.0)).beta == beta);
    CHECK_THROWS_AS(reduce_thermal(t, split_sq(0.0)), VacuumLimit);

    // e^{beta' E} - 1 = (e^{beta E} - 1)/q0^2, i.e. mean occupation scales by q0^2
    for (double x : {0.1, 0.7, 2.0, 5.0})
        for (double q0sq : {0.05, 0.3, 0.9}) {
            const double bp = beta_prime(x, 1.0, q0sq).beta_energy();
            CHECK(bp >= x);
            CHECK(std::abs(1.0 / std::expm1(bp) - q0sq / std::expm1(x)) < 1e-9);
        }
}

TEST_CASE("reduce_density_matrix is linear and matches the pure path") {
    Vectord c(4);
    c << Complex<double>(0.1, 0.3), 0.5, Complex<double>(0.0, -0.7), 0.2;
    const auto psi = FockVector<double>::normalized(c);
    const auto s = split_sq(0.42);
    CHECK(max_diff(reduce_density_matrix(psi.projector(), s).rho0, reduce_pure_general(psi, s, kTol).rho0) < 1e-15);
    CHECK(max_diff(reduce_density_matrix(psi.projector(), split_sq(0.0)).rho0, diag({1.0, 0.0, 0.0, 0.0})) < 1e-15);
    CHECK_THROWS_AS(reduce_density_matrix(DensityMatrixd::Zero(2, 3), s), ValidationError);
}

TEST_CASE("property: trace, positivity, limits, mean scaling, composition") {
    StateSampler sampler(20240611);
    for (int trial = 0; trial < 60; ++trial) {
        const auto psi = sampler.fock_vector(sampler.uniform_index(0, 10));
        const double q0sq = sampler.uniform();
        const auto s = split_sq(q0sq);
        const DensityMatrixd r = reduce_pure_general(psi, s, kTol).rho0;

        CHECK(validate_density_matrix(r, 1e-10).empty());
        CHECK(std::abs(number_expectation(r) - q0sq * number_expectation(psi)) < 1e-9);

        CHECK(max_diff(reduce_pure_general(psi, split_sq(1.0), kTol).rho0, psi.projector()) < 1e-12);
        DensityMatrixd vac = DensityMatrixd::Zero(psi.size(), psi.size());
        vac(0, 0) = 1;
        CHECK(max_diff(reduce_pure_general(psi, split_sq(0.0), kTol).rho0, vac) < 1e-12);

        const double qa = sampler.uniform();
        const double qb = sampler.uniform();
        const DensityMatrixd twice = reduce_density_matrix(
            reduce_pure_general(psi, ModeSplit<double>::from_q0(qa), kTol).rho0, ModeSplit<double>::from_q0(qb)).rho0;
        const DensityMatrixd once = reduce_pure_general(psi, ModeSplit<double>::from_q0(qa * qb), kTol).rho0;
        CHECK(max_diff(twice, once) < 1e-9);
    }
}
