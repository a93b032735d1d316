#include <doctest.h>

#include <cmath>
#include <vector>

#include "probeview/fock.hpp"

using namespace probeview;

namespace {

// Poisson tail by direct summation of 1 - sum_{n<=N} terms, long double.
long double poisson_tail_brute(long double mean, int cutoff) {
    long double term = std::exp(-mean);
    long double head = 0;
    for (int n = 0; n <= cutoff; ++n) {
        if (n > 0) term *= mean / n;
        head += term;
    }
    return 1.0L - head;
}

}  // namespace

TEST_CASE("mode split") {
    const auto s = ModeSplit<double>::from_q0_squared(0.25);
    CHECK(s.q0() == doctest::Approx(0.5));
    CHECK(s.q1() * s.q1() + s.q0() * s.q0() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(s.complement().q0() == s.q1());
    CHECK(ModeSplit<double>::from_q0_squared(1.0).is_full());
    CHECK(ModeSplit<double>::from_q0(0.0).is_empty());

    CHECK_THROWS_AS(ModeSplit<double>::from_q0_squared(1.5), ValidationError);
    CHECK_THROWS_AS(ModeSplit<double>::from_q0(-0.1), ValidationError);
    CHECK_THROWS_AS(ModeSplit<double>::from_amplitudes(0.6, 0.7), ValidationError);
    CHECK_NOTHROW(ModeSplit<double>::from_amplitudes(0.6, 0.8));
    CHECK_THROWS_AS(ModeSplit<double>::from_amplitudes(Complex<double>(0.6, 0.1), Complex<double>(0.8, 0)),
                    ValidationError);
}

TEST_CASE("fock vector normalizes and rejects degenerate input") {
    Vectord c(3);
    c << 3.0, Complex<double>(0, 4.0), 0.0;
    const auto psi = FockVector<double>::normalized(c);
    CHECK(psi.coeffs().norm() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(psi(1) - Complex<double>(0, 0.8)) < 1e-15);

    CHECK_THROWS_AS(FockVector<double>::normalized(Vectord::Zero(2)), ValidationError);
    CHECK_THROWS_AS(FockVector<double>::normalized(Vectord(0)), ValidationError);
}

TEST_CASE("materialize number and coherent states") {
    const TruncationPolicy<double> policy{8, 1e-10};

    const auto three = materialize(StateFamily<double>{NumberState{3}}, policy);
    REQUIRE(three.is_pure());
    const auto& c3 = std::get<FockVector<double>>(three.state).coeffs();
    CHECK(c3.size() == 4);
    CHECK(c3(3) == Complex<double>(1));
    CHECK(c3.head(3).norm() == 0.0);
    CHECK(three.discarded_mass == 0.0);

    CHECK_THROWS_AS(materialize(StateFamily<double>{NumberState{9}}, policy), TruncationError);

    const auto vac = materialize(StateFamily<double>{CoherentState<double>{0.0}}, TruncationPolicy<double>{5, 1e-10});
    const auto& cv = std::get<FockVector<double>>(vac.state).coeffs();
    CHECK(cv(0) == Complex<double>(1));
    CHECK(cv.tail(5).norm() == 0.0);
}

TEST_CASE("coherent truncation reports the Poisson tail") {
    for (double r : {0.5, 1.0, 2.0}) {
        for (int cutoff : {12, 20, 32}) {
            const long double expected = poisson_tail_brute(r * r, cutoff);
            const Complex<double> alpha = std::polar(r, 0.7);
            const TruncationPolicy<double> policy{cutoff, 1e-3};
            if (expected >= 1e-3) continue;
            const auto m = materialize(StateFamily<double>{CoherentState<double>{alpha}}, policy);
            CHECK(std::abs(m.discarded_mass - static_cast<double>(expected)) < 1e-12);
            // amplitude ratio c_{n+1}/c_n = alpha/sqrt(n+1)
            const auto& c = std::get<FockVector<double>>(m.state).coeffs();
            CHECK(std::abs(c(3) / c(2) - alpha / std::sqrt(3.0)) < 1e-12);
        }
    }
    // alpha = 2 at cutoff 20 leaves ~1.923e-9 behind; mpmath gives 1.92305845941e-9
    const TruncationPolicy<double> tight{20, 1e-10};
    try {
        materialize(StateFamily<double>{CoherentState<double>{2.0}}, tight);
        FAIL("expected a truncation error");
    } catch (const TruncationError& e) {
        CHECK(e.tail_mass() == doctest::Approx(1.92305845941469537e-9).epsilon(1e-9));
    }
}

TEST_CASE("thermal materialization") {
    const double x = std::log(2.0);
    const auto m = materialize(StateFamily<double>{ThermalState<double>{x, 1.0}}, TruncationPolicy<double>{60, 1e-12});
    REQUIRE_FALSE(m.is_pure());
    const auto& rho = std::get<DensityMatrixd>(m.state);
    CHECK(rho(0, 0).real() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(rho(1, 1).real() == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(rho(2, 2).real() == doctest::Approx(0.125).epsilon(1e-14));
    CHECK(m.discarded_mass == doctest::Approx(std::pow(0.5, 61)).epsilon(1e-12));
    CHECK(std::abs(rho.trace() - Complex<double>(1)) < 1e-14);

    // mean 1/(e^{beta E} - 1) = 1, by summing the truncated diagonal
    CHECK(number_expectation(rho) == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(materialize(StateFamily<double>{ThermalState<double>{0.01, 1.0}}, TruncationPolicy<double>{64, 1e-10}),
                    TruncationError);
    CHECK_THROWS_AS(materialize(StateFamily<double>{ThermalState<double>{-1.0, 1.0}}, TruncationPolicy<double>{}),
                    ValidationError);
}

TEST_CASE("mixture validation and materialization") {
    MixtureState<double> m;
    m.weights = {0.5, 0.5};
    m.states = {FockVector<double>::number(0), FockVector<double>::number(2)};
    const auto rho = materialize(StateFamily<double>{m}, TruncationPolicy<double>{4, 1e-10}).density();
    CHECK(rho.rows() == 3);
    CHECK(rho(0, 0).real() == 0.5);
    CHECK(rho(2, 2).real() == 0.5);

    MixtureState<double> bad = m;
    bad.weights = {0.7, 0.5};
    CHECK_THROWS_AS(validate(bad), ValidationError);
    bad.weights = {1.5, -0.5};
    CHECK_THROWS_AS(validate(bad), ValidationError);
    bad.weights = {1.0};
    CHECK_THROWS_AS(validate(bad), ValidationError);
}

TEST_CASE("materialized states validate") {
    const TruncationPolicy<double> policy{48, 1e-10};
    Vectord c(3);
    c << 1.0, Complex<double>(0.3, -0.2), 0.5;
    MixtureState<double> mix{{0.25, 0.75}, {FockVector<double>::number(1), FockVector<double>::normalized(c)}};
    const std::vector<StateFamily<double>> families = {
        NumberState{0}, NumberState{7}, CoherentState<double>{Complex<double>(1.0, -1.5)},
        ThermalState<double>{0.7, 1.0}, CustomState<double>{FockVector<double>::normalized(c)}, mix};
    for (const auto& f : families) {
        const auto rho = materialize(f, policy).density();
        CHECK(validate_density_matrix(rho, 1e-10).empty());
    }
}

TEST_CASE("validate_density_matrix diagnostics") {
    DensityMatrixd vac = DensityMatrixd::Zero(2, 2);
    vac(0, 0) = 1;
    CHECK(validate_density_matrix(vac, 1e-10).empty());

    DensityMatrixd over = DensityMatrixd::Zero(2, 2);
    over(0, 0) = 0.6;
    over(1, 1) = 0.6;
    const auto v1 = validate_density_matrix(over, 1e-10);
    REQUIRE(v1.size() == 1);
    CHECK(v1[0].kind == ViolationKind::TraceNotOne);
    CHECK(v1[0].magnitude == doctest::Approx(0.2));

    DensityMatrixd indefinite(2, 2);
    indefinite << 0.5, 0.9, 0.9, 0.5;
    const auto v2 = validate_density_matrix(indefinite, 1e-10);
    REQUIRE(v2.size() == 1);
    CHECK(v2[0].kind == ViolationKind::NotPositive);
    CHECK(v2[0].magnitude == doctest::Approx(0.4));

    DensityMatrixd skew = vac;
    skew(0, 1) = Complex<double>(0, 0.1);
    skew(1, 0) = Complex<double>(0, 0.1);
    const auto v3 = validate_density_matrix(skew, 1e-10);
    REQUIRE_FALSE(v3.empty());
    CHECK(v3[0].kind == ViolationKind::NotHermitian);
    CHECK(v3[0].magnitude == doctest::Approx(0.2));

    const auto v4 = validate_density_matrix(DensityMatrixd::Zero(2, 3), 1e-10);
    REQUIRE(v4.size() == 1);
    CHECK(v4[0].kind == ViolationKind::NotSquare);
}

TEST_CASE("number expectation") {
    CHECK(number_expectation(FockVector<double>::number(4)) == 4.0);
    const auto coh =
        materialize(StateFamily<double>{CoherentState<double>{Complex<double>(1.2, 0.5)}}, TruncationPolicy<double>{60, 1e-14});
    CHECK(number_expectation(std::get<FockVector<double>>(coh.state)) == doctest::Approx(1.69).epsilon(1e-12));
}

TEST_CASE("overlap from profile") {
    std::vector<ProfileSample<double>> flat;
    for (int k = 0; k <= 100; ++k) flat.push_back({k / 100.0, {1.0, 0.0}});
    CHECK(overlap_from_profile<double>(flat, {0.0, 0.5}) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(overlap_from_profile<double>(flat, {-1.0, 2.0}) == 1.0);
    CHECK(overlap_from_profile<double>(flat, {2.0, 3.0}) == 0.0);
    // a cut inside a segment integrates the interpolant
    CHECK(overlap_from_profile<double>(flat, {0.0, 0.255}) == doctest::Approx(0.255).epsilon(1e-14));

    // Gaussian amplitude exp(-x^2/2): intensity exp(-x^2) is even, mpmath quadrature gives 0.5
    std::vector<ProfileSample<double>> gauss;
    for (int k = 0; k <= 12000; ++k) {
        const double x = -6.0 + k * 0.001;
        gauss.push_back({x, {std::exp(-x * x / 2), 0.0}});
    }
    CHECK(std::abs(overlap_from_profile<double>(gauss, {0.0, 6.0}) - 0.5) < 1e-6);

    // monotone in region size
    double prev = 0;
    for (double hi = -6.0; hi <= 6.0; hi += 0.37) {
        const double q = overlap_from_profile<double>(gauss, {-6.0, hi});
        CHECK(q >= prev);
        prev = q;
    }

    std::vector<ProfileSample<double>> zero = {{0.0, {0, 0}}, {1.0, {0, 0}}};
    CHECK_THROWS_AS(overlap_from_profile<double>(zero, {0.0, 1.0}), ValidationError);
    std::vector<ProfileSample<double>> unsorted = {{1.0, {1, 0}}, {0.0, {1, 0}}};
    CHECK_THROWS_AS(overlap_from_profile<double>(unsorted, {0.0, 1.0}), ValidationError);
    CHECK_THROWS_AS(overlap_from_profile<double>(std::span<const ProfileSample<double>>{}, {0.0, 1.0}), ValidationError);
}

TEST_CASE("long double instantiation") {
    const auto m = materialize(StateFamily<long double>{ThermalState<long double>{0.5L, 2.0L}},
                               TruncationPolicy<long double>{80, 1e-12L});
    const auto rho = m.density();
    CHECK(validate_density_matrix(rho, 1e-14L).empty());
    // mean 1/(e^{1} - 1)
    CHECK(std::abs(number_expectation(rho) - 1.0L / std::expm1(1.0L)) < 1e-15L);
}
