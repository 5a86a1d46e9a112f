#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "catsim/states.hpp"

using namespace catsim;

TEST_CASE("tiny cats collapse onto number states") {
    auto odd = cat_state({0.01, CatParity::odd}, 24);
    CHECK(fidelity(fock_basis(1, 24), odd) >= 0.9999);
    auto even = cat_state({0.01, CatParity::even}, 24);
    CHECK(fidelity(fock_basis(0, 24), even) >= 0.9999);
}

TEST_CASE("odd cat amplitudes carry the expected weight at alpha = 1") {
    auto odd = cat_state({1.0, CatParity::odd}, 24);
    // 2 e^{-1/2} / sqrt(2 - 2 e^{-2}) on |1>
    CHECK(odd.amps[1].real() == doctest::Approx(0.922452236291572).epsilon(1e-9));
    for (int n = 0; n < 24; n += 2) CHECK(std::abs(odd.amps[n]) == 0.0);
    auto even = cat_state({1.0, CatParity::even}, 24);
    for (int n = 1; n < 24; n += 2) CHECK(std::abs(even.amps[n]) == 0.0);
    CHECK(odd.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("qubit at theta = 0 is a plain coherent state") {
    auto q = qubit_state({0.9, 0.0, 0.0}, 24);
    CHECK(fidelity(coherent_state(0.9, 24), q) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("qubit at theta = pi/4, phi = pi is the odd cat") {
    auto q = qubit_state({1.0, M_PI / 4, M_PI}, 24);
    CHECK(fidelity(cat_state({1.0, CatParity::odd}, 24), q) ==
          doctest::Approx(1.0).epsilon(1e-12));
    for (int n = 0; n < 24; n += 2) CHECK(std::abs(q.amps[n]) < 1e-15);
}

TEST_CASE("qubit normalization constant matches the overlap algebra") {
    // theta = pi/4, phi = 0, alpha = 1: 1 + e^{-2}
    CHECK(qubit_norm_sq({1.0, M_PI / 4, 0.0}) ==
          doctest::Approx(1.0 + std::exp(-2.0)).epsilon(1e-12));
    CHECK_THROWS_AS(qubit_state({1e-7, M_PI / 4, M_PI}, 24), normalization_error);
}

TEST_CASE("resource builder dispatches on kind") {
    auto cat = resource_state(ResourceKind::exact_cat(1.0), 24);
    CHECK(fidelity(cat_state({1.0, CatParity::odd}, 24), cat) == doctest::Approx(1.0));
    auto sq = resource_state(ResourceKind::squeezed_photon(-0.3), 26);
    CHECK(fidelity(squeezed_photon(-0.3, 26), sq) == doctest::Approx(1.0));
}

TEST_CASE("closed-form cat fidelity evaluates as written") {
    CHECK(cat_fidelity_closed(0.01, 0.0) >= 0.9999);
    CHECK(cat_fidelity_closed(1.0, -0.312572558625208) ==
          doctest::Approx(0.997114055599255).epsilon(1e-12));
    CHECK_THROWS_AS(cat_fidelity_closed(0.0, 0.1), sim_error);
    CHECK_THROWS_AS(cat_fidelity_closed(-1.0, 0.1), sim_error);
}

TEST_CASE("closed form agrees with the truncated overlap") {
    for (auto [a, r] : {std::pair{1.0, -0.312572558625208},
                        std::pair{1.3, -0.5},
                        std::pair{0.7, -0.2}}) {
        int dim = std::max(policy_dim(a), squeezed_min_dim(r));
        double sim = fidelity(cat_state({a, CatParity::odd}, dim),
                              squeezed_photon(r, dim));
        CHECK(sim == doctest::Approx(cat_fidelity_closed(a, r)).epsilon(1e-8));
    }
}

TEST_CASE("printed optimum formula transcribes faithfully") {
    CHECK(optimal_r_printed(0.0) == doctest::Approx(0.0));
    CHECK(optimal_r_printed(1.0) == doctest::Approx(0.312572558625208).epsilon(1e-12));
    CHECK(optimal_r_printed(2.0) ==
          doctest::Approx(std::acosh(std::sqrt(4.0 / 3.0))).epsilon(1e-14));
    CHECK(optimal_r_printed(2.0) == doctest::Approx(0.549306144334055).epsilon(1e-12));
}

TEST_CASE("numeric optimum lands on the stationary root") {
    auto o1 = optimal_r_numeric(1.0);
    CHECK(o1.r_opt == doctest::Approx(-0.312572558625208).epsilon(1e-9));
    CHECK(o1.f_max == doctest::Approx(0.997114055599255).epsilon(1e-12));
    auto o2 = optimal_r_numeric(std::sqrt(2.0));
    CHECK(std::tanh(-o2.r_opt) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(o2.r_opt == doctest::Approx(-0.549306144334055).epsilon(1e-9));
    CHECK(o2.f_max == doctest::Approx(0.973611134714966).epsilon(1e-12));
    auto o3 = optimal_r_numeric(2.0);
    CHECK(o3.r_opt == doctest::Approx(-0.853705718021565).epsilon(1e-9));
    CHECK(o3.f_max == doctest::Approx(0.878243769769295).epsilon(1e-12));
}

TEST_CASE("numeric optimum dominates a dense grid") {
    for (double a : {0.5, 1.0, 1.7}) {
        auto o = optimal_r_numeric(a);
        for (double r = -5.0; r <= 5.0; r += 1e-3)
            CHECK(o.f_max >= cat_fidelity_closed(a, r) - 1e-12);
    }
}

TEST_CASE("peak fidelity decays monotonically with cat size") {
    double prev = 1.0;
    for (double a = 0.1; a <= 2.001; a += 0.1) {
        double f = optimal_r_numeric(a).f_max;
        CHECK(f < prev);
        CHECK(f <= 1.0);
        prev = f;
    }
    CHECK(optimal_r_numeric(0.05).f_max > 0.99999);
    CHECK(optimal_r_numeric(4.0).f_max < 0.6);
    CHECK(optimal_r_numeric(8.0).f_max < 0.3);
    // the constructive optimum sits at negative r throughout
    for (double a = 0.2; a <= 3.0; a += 0.2)
        CHECK(optimal_r_numeric(a).r_opt < 0.0);
}
