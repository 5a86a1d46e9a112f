#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "catsim/teleport.hpp"

using namespace catsim;
using OC = OutcomeClass;

static bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

TEST_CASE("outcome pattern maps to its correction") {
    CHECK(correction_for(OC::Zero, OC::Odd) == Correction::None);
    CHECK(correction_for(OC::Odd, OC::Zero) == Correction::X);
    CHECK(correction_for(OC::Zero, OC::EvenNonzero) == Correction::Z);
    CHECK(correction_for(OC::EvenNonzero, OC::Zero) == Correction::XZ);
    CHECK(correction_for(OC::Zero, OC::Zero) == Correction::Fail);
    CHECK(correction_for(OC::Odd, OC::Odd) == Correction::Other);
    CHECK(correction_for(OC::EvenNonzero, OC::Odd) == Correction::Other);
}

TEST_CASE("bell resource from an exact cat splits into the entangled pair") {
    double a = 1.0;
    int d = teleport_dim(a, ResourceKind::exact_cat(0));
    auto bell = bell_resource(a, ResourceKind::exact_cat(0), d);
    // direct construction of |a,a> - |-a,-a| normalized
    auto pp = tensor(coherent_state(a, d), coherent_state(a, d));
    auto mm = tensor(coherent_state(-a, d), coherent_state(-a, d));
    VecC v = pp.amps - mm.amps;
    FockVector want({d, d}, v / v.norm(), 0.0);
    CHECK(fidelity(want, bell) >= 1.0 - 1e-9);
}

TEST_CASE("bell resource from a squeezed photon carries the cat fidelity") {
    double a = 1.0;
    double r = optimal_r_numeric(std::sqrt(2.0)).r_opt;
    auto kind = ResourceKind::squeezed_photon(r);
    int d = teleport_dim(a, kind);
    auto sq_bell = bell_resource(a, kind, d);
    auto exact_bell = bell_resource(a, ResourceKind::exact_cat(0), d);
    CHECK(fidelity(exact_bell, sq_bell) ==
          doctest::Approx(0.973611134714966).epsilon(1e-8));
}

TEST_CASE("tiny-cat bell resource is a split single photon") {
    int d = 24;
    auto bell = bell_resource(0.01, ResourceKind::exact_cat(0), d);
    auto photon = tensor(fock_basis(1, d), fock_basis(0, d));
    auto split = apply_beamsplitter(photon, {0, 1}, BeamsplitterSpec::half());
    CHECK(fidelity(split, bell) >= 0.999);
}

TEST_CASE("exact teleportation succeeds on the odd routes") {
    for (auto [th, ph] : {std::pair{0.3, 0.0}, std::pair{M_PI / 4, 1.1},
                          std::pair{1.2, 4.0}}) {
        auto rep = teleport({1.0, th, ph}, ResourceKind::exact_cat(0), DetectorModel(1.0));
        REQUIRE(!rep.none.empty);
        REQUIRE(!rep.x.empty);
        CHECK(rep.none.fidelity == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(rep.x.fidelity == doctest::Approx(1.0).epsilon(1e-9));
        // even routes line up only against the sign-flipped reference
        if (!rep.z.empty) CHECK(rep.z.fidelity == doctest::Approx(1.0).epsilon(1e-9));
        if (!rep.xz.empty) CHECK(rep.xz.fidelity == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(rep.p_other < 1e-9);
        CHECK(rep.probability_sum == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("odd-count probability is one half regardless of the input") {
    for (double a : {0.5, 1.0, 2.0}) {
        auto rep = teleport({a, 0.9, 2.3}, ResourceKind::exact_cat(0), DetectorModel(1.0));
        CHECK(close(rep.p_odd, 0.5, 1e-6));
        CHECK(close(rep.p_even, 0.5 - rep.p_fail, 1e-6));
        CHECK(rep.p_fail <= 0.5 + 1e-9);
    }
}

TEST_CASE("closed-form failure probability evaluates as derived") {
    CHECK(p_fail_closed({1.0, 0.0, 0.0}) ==
          doctest::Approx(0.119202922022118).epsilon(1e-12));
    CHECK(p_fail_closed({1.0, M_PI / 4, 0.0}) ==
          doctest::Approx(0.209987170807013).epsilon(1e-12));
    CHECK(p_fail_closed({1.0, M_PI / 4, M_PI}) == doctest::Approx(0.0));
    CHECK(p_succ_closed({1.0, M_PI / 4, M_PI}) == doctest::Approx(1.0));
    CHECK(p_succ_closed({1.0, M_PI / 4, 0.0}) ==
          doctest::Approx(0.668214882193041).epsilon(1e-12));
}

TEST_CASE("simulated failure probability matches the closed form") {
    for (double a : {0.5, 1.0, 2.0}) {
        TeleportEngine engine(a, ResourceKind::exact_cat(0),
                              teleport_dim(a, ResourceKind::exact_cat(0)));
        for (double th = 0.0; th < M_PI; th += M_PI / 8)
            for (double ph = 0.0; ph < 2 * M_PI; ph += M_PI / 4) {
                auto rep = engine.run({a, th, ph}, 1.0);
                CHECK(close(rep.p_fail, p_fail_closed({a, th, ph}), 1e-6));
            }
    }
}

TEST_CASE("engine and generic paths agree pattern by pattern") {
    for (auto kind : {ResourceKind::exact_cat(0),
                      ResourceKind::squeezed_photon(-0.549306144334055)}) {
        int d = teleport_dim(1.0, kind);
        TeleportEngine engine(1.0, kind, d);
        for (double eta : {1.0, 0.9}) {
            QubitSpec in{1.0, 0.7, 0.4};
            auto a = teleport(in, kind, DetectorModel(eta));
            auto b = engine.run(in, eta);
            for (auto c : {Correction::None, Correction::X, Correction::Z,
                           Correction::XZ, Correction::Fail, Correction::Other}) {
                CHECK(close(a.route(c).probability, b.route(c).probability, 1e-10));
                if (!a.route(c).empty && !b.route(c).empty)
                    CHECK(close(a.route(c).fidelity, b.route(c).fidelity, 1e-10));
            }
        }
    }
}

TEST_CASE("squeezed resource fails more often and leaks to lit-lit patterns") {
    auto kind = ResourceKind::squeezed_photon(-0.549306144334055);
    auto rep = teleport({1.0, M_PI / 4, 0.0}, kind, DetectorModel(1.0));
    CHECK(rep.p_fail == doctest::Approx(0.231854945443472).epsilon(1e-9));
    CHECK(rep.p_succ == doctest::Approx(0.643803540566247).epsilon(1e-9));
    CHECK(rep.p_other > 1e-6);  // genuinely nonzero, unlike the exact cat
    CHECK(rep.probability_sum == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("squeezed-resource worst-case success fidelity stays above 0.9") {
    auto kind = ResourceKind::squeezed_photon(-0.549306144334055);
    TeleportEngine engine(1.0, kind, teleport_dim(1.0, kind));
    double worst = 1.0;
    for (double th = 0.0; th < M_PI; th += M_PI / 16)
        for (double ph = 0.0; ph < 2 * M_PI; ph += M_PI / 8) {
            auto rep = engine.run({1.0, th, ph}, 1.0);
            if (!rep.none.empty) worst = std::min(worst, rep.none.fidelity);
        }
    CHECK(worst > 0.9);
    CHECK(worst < 1.0 - 1e-4);
}

TEST_CASE("detector loss bleeds parity into the success route") {
    TeleportEngine engine(1.0, ResourceKind::exact_cat(0),
                          teleport_dim(1.0, ResourceKind::exact_cat(0)));
    auto clean = engine.run({1.0, 0.7, 0.4}, 1.0);
    auto lossy = engine.run({1.0, 0.7, 0.4}, 0.9);
    CHECK(clean.none.fidelity == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(lossy.none.fidelity < 1.0 - 1e-4);
    CHECK(lossy.none.fidelity > 0.8);
}

TEST_CASE("worst-case success fidelity degrades monotonically with efficiency") {
    TeleportEngine engine(1.0, ResourceKind::exact_cat(0),
                          teleport_dim(1.0, ResourceKind::exact_cat(0)));
    double prev = 2.0;
    for (double eta : {1.0, 0.95, 0.9, 0.8}) {
        double worst = 1.0;
        for (double th = 0.0; th < M_PI; th += M_PI / 8)
            for (double ph = 0.0; ph < 2 * M_PI; ph += M_PI / 4) {
                auto rep = engine.run({1.0, th, ph}, eta);
                if (!rep.none.empty) worst = std::min(worst, rep.none.fidelity);
            }
        CHECK(worst <= prev + 1e-12);
        prev = worst;
    }
}

TEST_CASE("minimum success probability bottoms out near two thirds at alpha 1") {
    auto m = min_p_succ(1.0, 64);
    CHECK(m.value == doctest::Approx(0.668214882193041).epsilon(1e-6));
    CHECK(p_succ_closed({1.0, m.theta, m.phi}) == doctest::Approx(m.value));
    for (double a : {0.2, 0.6, 1.0, 1.5, 2.0})
        CHECK(min_p_succ(a, 32).value >= 0.5 - 1e-9);
    CHECK(min_p_succ(0.05, 32).value == doctest::Approx(0.5).epsilon(1e-2));
}

TEST_CASE("two chained rounds follow the conditional even-path probability") {
    // round two sees the Z-flipped qubit, so the honest chain probability is
    // P_even(psi) P_even(Z psi), which differs from the P_even^2 bookkeeping
    QubitSpec in{1.0, M_PI / 4, 0.0};
    double p_ee = concatenation_check(in);
    CHECK(p_ee == doctest::Approx(0.145006414596493).epsilon(1e-9));
    double pe = 0.5 - p_fail_closed(in);
    CHECK(pe == doctest::Approx(0.290012829192987).epsilon(1e-12));
    CHECK(p_ee > pe * pe);  // 0.1450 vs 0.0841: the rounds are not independent
    // mu = -nu: round one never fails and always resolves
    auto balanced = QubitSpec{1.0, M_PI / 4, M_PI};
    auto rep = teleport(balanced, ResourceKind::exact_cat(0), DetectorModel(1.0));
    CHECK(rep.p_odd + rep.p_even == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(concatenation_check(balanced) ==
          doctest::Approx(0.5 * 0.290012829192987).epsilon(1e-9));
}
