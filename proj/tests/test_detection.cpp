#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "catsim/detection.hpp"
#include "catsim/states.hpp"

using namespace catsim;

TEST_CASE("counts classify by parity with zero split out") {
    CHECK(classify(0) == OutcomeClass::Zero);
    CHECK(classify(3) == OutcomeClass::Odd);
    CHECK(classify(4) == OutcomeClass::EvenNonzero);
    CHECK_THROWS_AS(classify(-1), sim_error);
}

TEST_CASE("povm limits: perfect detection and a dead detector") {
    auto perfect = lossy_povm({1.0, 7});
    for (int k = 0; k <= 7; ++k)
        for (int m = 0; m <= 7; ++m)
            CHECK(perfect[k][m] == doctest::Approx(k == m ? 1.0 : 0.0));
    auto dead = lossy_povm({0.0, 7});
    for (int m = 0; m <= 7; ++m) CHECK(dead[0][m] == doctest::Approx(1.0));
    for (int k = 1; k <= 7; ++k) CHECK(dead[k].cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("binomial element at 90 percent efficiency") {
    auto povm = lossy_povm({0.9, 7});
    CHECK(povm[1][2] == doctest::Approx(2 * 0.9 * 0.1).epsilon(1e-14));
    CHECK(povm[2][2] == doctest::Approx(0.81).epsilon(1e-14));
    CHECK(povm[0][2] == doctest::Approx(0.01).epsilon(1e-14));
}

TEST_CASE("povm elements sum to the identity") {
    for (double eta : {0.0, 0.3, 0.7, 0.9, 1.0}) {
        auto povm = lossy_povm({eta, 40});
        VecR sum = VecR::Zero(41);
        for (auto& pi : povm) sum += pi;
        CHECK((sum.array() - 1.0).abs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("class weights partition unity and match closed forms") {
    DetectorModel model(0.85, 30);
    VecR wz = class_weights(model, OutcomeClass::Zero);
    VecR wo = class_weights(model, OutcomeClass::Odd);
    VecR we = class_weights(model, OutcomeClass::EvenNonzero);
    for (int m = 0; m <= 30; ++m) {
        CHECK(wz[m] + wo[m] + we[m] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(wz[m] == doctest::Approx(std::pow(0.15, m)).epsilon(1e-10));
    }
}

TEST_CASE("perfect measurement reproduces pure-state conditioning") {
    int d = 24;
    auto in = tensor(coherent_state(0.8, d), coherent_state(-0.8, d));
    auto out = apply_beamsplitter(in, {0, 1}, BeamsplitterSpec::half());
    auto table = measure_modes(out, {0}, DetectorModel(1.0, d - 1));
    CHECK(table.total() == doctest::Approx(1.0).epsilon(1e-9));
    double checked = 0.0;
    for (int k = 0; k < d; ++k) {
        auto exact = condition_on_outcome(out, {0}, {mask_exact(d, k)});
        CHECK(table.probability({k}) == doctest::Approx(exact.probability).epsilon(1e-10));
        if (exact.probability > 1e-8) {
            auto rho = table.conditional({k});
            CHECK(rho.purity() >= 1.0 - 1e-9);
            CHECK(fidelity(exact.state, rho) >= 1.0 - 1e-10);
            checked += exact.probability;
        }
    }
    CHECK(checked > 0.999);
}

TEST_CASE("separable input factors through the binomial weight") {
    int d = 8;
    auto psi = coherent_state(0.5, 24);
    auto in = tensor(fock_basis(2, d), psi);
    auto table = measure_modes(in, {0}, DetectorModel(0.9, d - 1));
    CHECK(table.probability({1}) == doctest::Approx(0.18).epsilon(1e-12));
    CHECK(table.probability({2}) == doctest::Approx(0.81).epsilon(1e-12));
    CHECK(fidelity(psi, table.conditional({1})) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("an unresolved detector cutoff snaps to the measured mode") {
    // n_max = -1 lets the table pick the cutoff; regression for the scratch
    // vectors in the kernel contraction sizing off the unresolved value
    int d = 12;
    auto in = tensor({coherent_state(0.7, d), coherent_state(0.2, d),
                      fock_basis(0, 6)});
    auto resolved = measure_modes(in, {0, 1}, DetectorModel(0.9, d - 1));
    auto unresolved = measure_modes(in, {0, 1}, DetectorModel(0.9));
    CHECK(unresolved.total() == doctest::Approx(1.0).epsilon(1e-10));
    for (int n = 0; n < d; n += 3)
        for (int m = 0; m < d; m += 3)
            CHECK(unresolved.probability({n, m}) ==
                  doctest::Approx(resolved.probability({n, m})).epsilon(1e-13));
}

TEST_CASE("a lossy detector mixes masquerading branches") {
    // (|1>|x> + |2>|y>)/sqrt(2) with <x|y> = 0: a reported single count at
    // eta = 0.9 blends the true-1 branch (weight .9) with true-2 (weight .18)
    int d = 4, dk = 3;
    VecC amps = VecC::Zero(d * dk);
    amps[1 * dk + 0] = 1.0 / std::sqrt(2.0);
    amps[2 * dk + 1] = 1.0 / std::sqrt(2.0);
    FockVector st({d, dk}, amps, 0.0);
    auto table = measure_modes(st, {0}, DetectorModel(0.9, d - 1));
    double p1 = 0.5 * 0.9 + 0.5 * 0.18;
    CHECK(table.probability({1}) == doctest::Approx(p1).epsilon(1e-12));
    auto rho = table.conditional({1});
    CHECK(rho.trace() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rho.purity() == doctest::Approx((0.45 * 0.45 + 0.09 * 0.09) / (p1 * p1))
                              .epsilon(1e-10));
    CHECK(fidelity(fock_basis(0, dk), rho) == doctest::Approx(0.45 / p1).epsilon(1e-10));
    CHECK(fidelity(fock_basis(1, dk), rho) == doctest::Approx(0.09 / p1).epsilon(1e-10));
}

TEST_CASE("probability of seeing light never grows as efficiency drops") {
    int d = 24;
    auto in = tensor(cat_state({1.0, CatParity::odd}, d), coherent_state(0.6, 12));
    double prev = 2.0;
    for (double eta : {1.0, 0.9, 0.7, 0.4, 0.1, 0.0}) {
        auto table = measure_modes(in, {0}, DetectorModel(eta, d - 1));
        double p_light = table.total() - table.probability({0});
        CHECK(p_light <= prev + 1e-12);
        prev = p_light;
    }
}

TEST_CASE("shape errors are loud") {
    auto in = tensor(coherent_state(0.5, 24), coherent_state(0.5, 24));
    CHECK_THROWS_AS(measure_modes(in, {0}, DetectorModel(1.0, 12)), dim_mismatch_error);
    CHECK_THROWS_AS(measure_modes(in, {0, 1}, DetectorModel(1.0, 23)), dim_mismatch_error);
    CHECK_THROWS_AS(DetectorModel(1.2, 5), sim_error);
}
