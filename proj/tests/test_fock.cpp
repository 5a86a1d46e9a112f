#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>

#include "catsim/fock.hpp"

using namespace catsim;
using std::exp;
using std::sqrt;

TEST_CASE("coherent state amplitudes follow the Poisson recurrence") {
    double b = 1.2;
    auto st = coherent_state(b, 24);
    CHECK(st.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(st.amps[0].real() == doctest::Approx(exp(-0.5 * b * b)).epsilon(1e-12));
    CHECK(st.amps[3].real() ==
          doctest::Approx(exp(-0.5 * b * b) * b * b * b / sqrt(6.0)).epsilon(1e-10));
    CHECK(st.amps[3].imag() == doctest::Approx(0.0));
    CHECK(st.truncation_deficit < kDeficitTol);
}

TEST_CASE("coherent state with a starved cutoff refuses to build") {
    CHECK_THROWS_AS(coherent_state(3.0, 10), cutoff_error);
}

TEST_CASE("cutoff policy floors at 24 and tracks the quadratic rule") {
    CHECK(policy_dim(0.0) == 24);
    CHECK(policy_dim(1.2) == 24);
    CHECK(policy_dim(3.0) == 42);
}

TEST_CASE("squeezed vacuum populates even levels only") {
    auto st = squeezed_vacuum(0.5, 44);
    CHECK(st.norm() == doctest::Approx(1.0).epsilon(1e-12));
    // closed form at |2>: -tanh(r) sqrt(2)/2 / sqrt(cosh r)
    CHECK(st.amps[2].real() == doctest::Approx(-0.30771917645837).epsilon(1e-9));
    for (int n = 1; n < 44; n += 2) CHECK(std::abs(st.amps[n]) == 0.0);
    CHECK(squeezed_vacuum(0.0, 8).amps[0].real() == doctest::Approx(1.0));
}

TEST_CASE("squeezed single photon populates odd levels only") {
    auto st = squeezed_photon(0.3, 24);
    CHECK(st.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(st.amps[1].real() ==
          doctest::Approx(1.0 / std::pow(std::cosh(0.3), 1.5)).epsilon(1e-9));
    CHECK(st.amps[3].real() == doctest::Approx(-0.333825485964454).epsilon(1e-9));
    for (int n = 0; n < 24; n += 2) CHECK(std::abs(st.amps[n]) == 0.0);
    auto bare = squeezed_photon(0.0, 8);
    CHECK(std::abs(bare.amps[1]) == doctest::Approx(1.0));
}

TEST_CASE("squeezed cutoff helper covers the tail it promises") {
    int d = squeezed_min_dim(0.549306144334055);
    CHECK(d == 44);
    auto st = squeezed_photon(0.549306144334055, d);
    CHECK(st.truncation_deficit < 1e-11);
    CHECK(squeezed_min_dim(0.853705718021565) == 80);
}

TEST_CASE("tensor keeps the last mode fastest") {
    auto a = coherent_state(0.5, 24);
    auto b = fock_basis(2, 4);
    auto ab = tensor(a, b);
    REQUIRE(ab.dims == std::vector<int>{24, 4});
    for (int i = 0; i < 24; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(ab.amps[i * 4 + j] == ab.amp({i, j}));
    CHECK(std::abs(ab.amp({3, 2}) - a.amps[3]) < 1e-14);
    CHECK(std::abs(ab.amp({3, 1})) == 0.0);
}

TEST_CASE("real 50:50 splitter maps coherent pairs difference-first") {
    double b1 = 0.7, b2 = -0.4;
    int d = 24;
    auto in = tensor(coherent_state(b1, d), coherent_state(b2, d));
    auto out = apply_beamsplitter(in, {0, 1}, BeamsplitterSpec::half());
    auto want = tensor(coherent_state((b1 - b2) / sqrt(2.0), d),
                       coherent_state((b1 + b2) / sqrt(2.0), d));
    CHECK(fidelity(want, out) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("symmetric splitter maps coherent pairs with i cross terms") {
    using namespace std::complex_literals;
    double th = M_PI / 8;
    cxd b1 = 0.6, b2 = 0.3;
    int d = 24;
    auto in = tensor(coherent_state(b1, d), coherent_state(b2, d));
    BeamsplitterSpec spec(th, BeamsplitterSpec::Convention::symmetric);
    auto out = apply_beamsplitter(in, {0, 1}, spec);
    auto want = tensor(coherent_state(b1 * std::cos(th) + 1i * b2 * std::sin(th), d),
                       coherent_state(1i * b1 * std::sin(th) + b2 * std::cos(th), d));
    CHECK(fidelity(want, out) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("single photon splits with the expected signs") {
    int d = 6;
    auto in = tensor(fock_basis(0, d), fock_basis(1, d));  // |0,1>
    double th = 0.37;
    auto out = apply_beamsplitter(in, {0, 1}, BeamsplitterSpec(th));
    CHECK(out.amp({0, 1}).real() == doctest::Approx(std::cos(th)).epsilon(1e-12));
    CHECK(out.amp({1, 0}).real() == doctest::Approx(-std::sin(th)).epsilon(1e-12));
    auto in2 = tensor(fock_basis(1, d), fock_basis(0, d));  // |1,0>
    auto out2 = apply_beamsplitter(in2, {0, 1}, BeamsplitterSpec(th));
    CHECK(out2.amp({0, 1}).real() == doctest::Approx(std::sin(th)).epsilon(1e-12));
    CHECK(out2.amp({1, 0}).real() == doctest::Approx(std::cos(th)).epsilon(1e-12));
}

TEST_CASE("beamsplitter is unitary and preserves total photon number") {
    int d = 12;
    std::mt19937 rng(20250819);
    std::normal_distribution<double> g;
    VecC amps = VecC::Zero(d * d);
    for (int n1 = 0; n1 < d; ++n1)
        for (int n2 = 0; n2 < d; ++n2)
            if (n1 + n2 < d) amps[n1 * d + n2] = cxd(g(rng), g(rng));
    amps /= amps.norm();
    FockVector in({d, d}, amps, 0.0);
    for (auto conv : {BeamsplitterSpec::Convention::real5050,
                      BeamsplitterSpec::Convention::symmetric}) {
        auto out = apply_beamsplitter(in, {0, 1}, BeamsplitterSpec(0.61, conv));
        CHECK(out.norm() == doctest::Approx(1.0).epsilon(1e-12));
        for (int N = 0; N < d; ++N) {
            double pin = 0, pout = 0;
            for (int j = 0; j <= N; ++j) {
                pin += std::norm(in.amp({j, N - j}));
                pout += std::norm(out.amp({j, N - j}));
            }
            CHECK(pout == doctest::Approx(pin).epsilon(1e-11));
        }
    }
}

TEST_CASE("beamsplitter flags populated clipped blocks") {
    int d = 6;
    auto in = tensor(fock_basis(4, d), fock_basis(4, d));  // N = 8 >= d
    CHECK_THROWS_AS(apply_beamsplitter(in, {0, 1}, BeamsplitterSpec::half()), leak_error);
}

TEST_CASE("beamsplitter angle outside [0, pi/2] is rejected") {
    CHECK_THROWS_AS(BeamsplitterSpec(-0.1), sim_error);
    CHECK_THROWS_AS(BeamsplitterSpec(2.0), sim_error);
}

TEST_CASE("displacement turns vacuum into a coherent state") {
    cxd b(0.8, 0.3);
    int d = 24;
    auto out = apply_displacement(fock_basis(0, d), 0, b);
    CHECK(fidelity(coherent_state(b, d), out) == doctest::Approx(1.0).epsilon(1e-10));
    // displacements compose up to a phase
    auto out2 = apply_displacement(coherent_state(0.4, d), 0, b);
    CHECK(fidelity(coherent_state(cxd(0.4) + b, d), out2) ==
          doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("displacement without headroom refuses to run") {
    CHECK_THROWS_AS(apply_displacement(fock_basis(0, 16), 0, cxd(4.0, 0.0)),
                    headroom_error);
}

TEST_CASE("phase rotation advances a coherent amplitude") {
    double phi = 0.9;
    int d = 24;
    auto out = apply_phase_rotation(coherent_state(0.7, d), 0, phi);
    CHECK(fidelity(coherent_state(0.7 * std::exp(cxd(0, phi)), d), out) ==
          doctest::Approx(1.0).epsilon(1e-12));
    // rotation by pi is the photon-number parity flip
    auto odd = squeezed_photon(0.4, squeezed_min_dim(0.4));
    auto flipped = apply_phase_rotation(odd, 0, M_PI);
    CHECK((flipped.amps + odd.amps).norm() < 1e-12);
}

TEST_CASE("fidelity against a mixed state matches the pure computation") {
    auto a = coherent_state(0.9, 24);
    auto b = squeezed_photon(0.3, 24);
    CHECK(fidelity(a, a) == doctest::Approx(1.0));
    CHECK(fidelity(a, pure_to_mixed(b)) == doctest::Approx(fidelity(a, b)).epsilon(1e-12));
    auto mix = MixedState(24, 0.5 * (pure_to_mixed(a).rho + pure_to_mixed(b).rho));
    double want = 0.5 * fidelity(a, a) + 0.5 * fidelity(a, b);
    CHECK(fidelity(a, mix) == doctest::Approx(want).epsilon(1e-12));
    CHECK(mix.purity() < 1.0);
    CHECK(mix.hermiticity_defect() < 1e-14);
    CHECK(mix.min_eigenvalue() > -1e-14);
}

TEST_CASE("conditioning on an exact count strips a product mode") {
    auto st = tensor(coherent_state(0.8, 12), fock_basis(1, 4));
    auto res = condition_on_outcome(st, {1}, {mask_exact(4, 1)});
    CHECK(!res.empty);
    CHECK(res.probability == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(fidelity(coherent_state(0.8, 12), res.state) ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("conditioning reports class probabilities on a known superposition") {
    auto probe = coherent_state(1.1, 24);
    auto st = tensor(probe, fock_basis(0, 4));
    double p_odd = 0, p_evnz = 0;
    for (int n = 1; n < 24; n += 2) p_odd += std::norm(probe.amps[n]);
    for (int n = 2; n < 24; n += 2) p_evnz += std::norm(probe.amps[n]);
    auto r1 = condition_on_outcome(st, {0}, {mask_odd(24)});
    CHECK(r1.probability == doctest::Approx(p_odd).epsilon(1e-12));
    CHECK(fidelity(fock_basis(0, 4), r1.state) == doctest::Approx(1.0));
    auto r2 = condition_on_outcome(st, {0}, {mask_even_nonzero(24)});
    CHECK(r2.probability == doctest::Approx(p_evnz).epsilon(1e-12));
    auto r3 = condition_on_outcome(st, {0}, {mask_zero(24)});
    CHECK(r3.probability == doctest::Approx(std::norm(probe.amps[0])).epsilon(1e-12));
}

TEST_CASE("conditioning refuses an outcome that leaves an impure remainder") {
    VecC amps = VecC::Zero(4);
    amps[0] = amps[3] = 1.0 / sqrt(2.0);  // (|00> + |11>)/sqrt(2)
    FockVector bell({2, 2}, amps, 0.0);
    CHECK_THROWS_AS(condition_on_outcome(bell, {0}, {mask_any(2)}), sim_error);
    auto ok = condition_on_outcome(bell, {0}, {mask_exact(2, 1)});
    CHECK(ok.probability == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(fidelity(fock_basis(1, 2), ok.state) == doctest::Approx(1.0));
}

TEST_CASE("an impossible outcome comes back flagged empty") {
    auto st = tensor(fock_basis(0, 4), coherent_state(0.5, 12));
    auto res = condition_on_outcome(st, {0}, {mask_exact(4, 2)});
    CHECK(res.empty);
    CHECK(res.probability < kEmptyOutcomeTol);
}

TEST_CASE("conditional probabilities are stable under cutoff doubling") {
    double b = 0.7;
    auto run = [&](int d) {
        auto in = tensor(coherent_state(b, d), coherent_state(-b, d));
        auto out = apply_beamsplitter(in, {0, 1}, BeamsplitterSpec::half());
        return condition_on_outcome(out, {1}, {mask_zero(d)}).probability;
    };
    double p1 = run(24), p2 = run(48);
    CHECK(p1 == doctest::Approx(p2).epsilon(1e-10));
    // mode 1 carries (b1 + b2)/sqrt(2) = 0 exactly, so Zero fires with certainty
    CHECK(p1 == doctest::Approx(1.0).epsilon(1e-10));
    // and the difference port soaks up both amplitudes
    auto in = tensor(coherent_state(b, 24), coherent_state(-b, 24));
    auto out = apply_beamsplitter(in, {0, 1}, BeamsplitterSpec::half());
    auto red = condition_on_outcome(out, {1}, {mask_zero(24)});
    CHECK(fidelity(coherent_state(2 * b / sqrt(2.0), 24), red.state) ==
          doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("embed_mode grows a cutoff in place") {
    auto st = tensor(coherent_state(0.6, 24), fock_basis(1, 4));
    auto big = embed_mode(st, 0, 32);
    REQUIRE(big.dims == std::vector<int>{32, 4});
    for (int i = 0; i < 24; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(big.amp({i, j}) == st.amp({i, j}));
    CHECK(std::abs(big.amp({28, 1})) == 0.0);
    CHECK_THROWS_AS(embed_mode(st, 0, 4), dim_mismatch_error);
}
