#include "catsim/teleport.hpp"

#include <cmath>

namespace catsim {

Correction correction_for(OutcomeClass first, OutcomeClass second) {
    using OC = OutcomeClass;
    if (first == OC::Zero && second == OC::Odd) return Correction::None;
    if (first == OC::Odd && second == OC::Zero) return Correction::X;
    if (first == OC::Zero && second == OC::EvenNonzero) return Correction::Z;
    if (first == OC::EvenNonzero && second == OC::Zero) return Correction::XZ;
    if (first == OC::Zero && second == OC::Zero) return Correction::Fail;
    return Correction::Other;
}

const char* to_string(Correction c) {
    switch (c) {
        case Correction::None: return "none";
        case Correction::X: return "x";
        case Correction::Z: return "z";
        case Correction::XZ: return "xz";
        case Correction::Fail: return "fail";
        default: return "other";
    }
}

const TeleportReport::Route& TeleportReport::route(Correction c) const {
    switch (c) {
        case Correction::None: return none;
        case Correction::X: return x;
        case Correction::Z: return z;
        case Correction::XZ: return xz;
        case Correction::Fail: return fail;
        default: return other;
    }
}

int teleport_dim(double alpha, const ResourceKind& kind) {
    int d = policy_dim(std::sqrt(2.0) * alpha);
    if (kind.kind == ResourceKind::Kind::squeezed_photon)
        d = std::max(d, squeezed_min_dim(kind.r));
    return d;
}

FockVector bell_resource(double alpha, const ResourceKind& kind, int dim) {
    ResourceKind k = kind;
    if (k.kind == ResourceKind::Kind::exact_cat)
        k.alpha_cat = std::sqrt(2.0) * alpha;
    auto src = resource_state(k, dim);
    auto pair = tensor(src, fock_basis(0, dim));
    return apply_beamsplitter(pair, {0, 1}, BeamsplitterSpec::half());
}

namespace {

// conjugation by the photon-number parity, i.e. the pi phase rotation
MixedState parity_conjugate(const MixedState& rho) {
    MatC out = rho.rho;
    for (int i = 0; i < rho.dim; ++i)
        for (int j = 0; j < rho.dim; ++j)
            if ((i + j) % 2) out(i, j) = -out(i, j);
    return MixedState(rho.dim, std::move(out));
}

constexpr double kRouteFloor = 1e-12;

}  // namespace

TeleportReport teleport(const QubitSpec& input, const ResourceKind& kind,
                        const DetectorModel& detector) {
    int d = teleport_dim(input.alpha, kind);
    auto qubit = qubit_state(input, d);
    auto bell = bell_resource(input.alpha, kind, d);
    auto full = apply_beamsplitter(tensor(qubit, bell), {0, 1}, BeamsplitterSpec::half());
    auto table = measure_modes(full, {0, 1}, DetectorModel(detector.eta, d - 1));

    auto ref_plain = qubit_state(input, d);
    auto ref_flip = qubit_state({input.alpha, input.theta, input.phi + M_PI}, d);

    using OC = OutcomeClass;
    auto fill = [&](OC c0, OC c1, const FockVector& ref, bool flip_parity) {
        TeleportReport::Route r;
        r.probability = table.class_probability({c0, c1});
        if (r.probability >= kRouteFloor) {
            auto rho = table.class_conditional({c0, c1});
            if (flip_parity) rho = parity_conjugate(rho);
            r.fidelity = fidelity(ref, rho);
            r.empty = false;
        }
        return r;
    };

    TeleportReport rep;
    rep.none = fill(OC::Zero, OC::Odd, ref_plain, false);
    rep.x = fill(OC::Odd, OC::Zero, ref_plain, true);
    rep.z = fill(OC::Zero, OC::EvenNonzero, ref_flip, false);
    rep.xz = fill(OC::EvenNonzero, OC::Zero, ref_flip, true);
    rep.fail = fill(OC::Zero, OC::Zero, ref_plain, false);
    // both ports lit: no prescribed correction, score against the plain input
    rep.other.probability = table.class_probability({OC::Odd, OC::Odd}) +
                            table.class_probability({OC::Odd, OC::EvenNonzero}) +
                            table.class_probability({OC::EvenNonzero, OC::Odd}) +
                            table.class_probability({OC::EvenNonzero, OC::EvenNonzero});
    if (rep.other.probability >= kRouteFloor) {
        // mixture over the four patterns, weighted by their probabilities
        MatC acc = MatC::Zero(d, d);
        for (auto c0 : {OC::Odd, OC::EvenNonzero})
            for (auto c1 : {OC::Odd, OC::EvenNonzero}) {
                double p = table.class_probability({c0, c1});
                if (p >= kRouteFloor)
                    acc += p * table.class_conditional({c0, c1}).rho;
            }
        rep.other.fidelity = fidelity(ref_plain, MixedState(d, acc / rep.other.probability));
        rep.other.empty = false;
    }

    rep.p_odd = rep.none.probability + rep.x.probability;
    rep.p_even = rep.z.probability + rep.xz.probability;
    rep.p_fail = rep.fail.probability;
    rep.p_other = rep.other.probability;
    rep.p_succ = 1.0 - 2.0 * (rep.p_fail - rep.p_fail * rep.p_fail);
    rep.probability_sum = rep.p_odd + rep.p_even + rep.p_fail + rep.p_other;
    if (std::abs(rep.probability_sum - 1.0) > 1e-6)
        throw sim_error("teleport: outcome probabilities fail to close");
    return rep;
}

double p_fail_closed(const QubitSpec& input) {
    double a2 = input.alpha * input.alpha;
    double mu = qubit_mu(input);
    cxd nu = qubit_nu(input);
    double e2 = std::exp(-2.0 * a2);
    double num = std::exp(-2.0 * a2) * (2.0 - 2.0 * e2) * std::norm(cxd(mu) + nu);
    double den = (2.0 - 2.0 * std::exp(-4.0 * a2)) * qubit_norm_sq(input);
    return num / den;
}

double p_succ_closed(const QubitSpec& input) {
    double pf = p_fail_closed(input);
    return 1.0 - 2.0 * (pf - pf * pf);
}

MinPSucc min_p_succ(double alpha, int grid_resolution) {
    if (grid_resolution < 4) throw sim_error("min_p_succ: grid too coarse");
    auto obj = [&](double th, double ph) {
        return p_succ_closed({alpha, th, ph});
    };
    double dth = M_PI / grid_resolution, dph = 2.0 * M_PI / grid_resolution;
    MinPSucc best{2.0, 0.0, 0.0};
    for (int i = 0; i < grid_resolution; ++i)
        for (int j = 0; j < grid_resolution; ++j) {
            double th = i * dth, ph = j * dph;
            double v = obj(th, ph);
            if (v < best.value) best = {v, th, ph};
        }
    // coordinate descent, golden-section per axis around the grid cell
    auto golden_min = [&](auto f, double a, double b) {
        const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
        double c = b - gr * (b - a), d = a + gr * (b - a);
        double fc = f(c), fd = f(d);
        while (b - a > 1e-10) {
            if (fc < fd) { b = d; d = c; fd = fc; c = b - gr * (b - a); fc = f(c); }
            else { a = c; c = d; fc = fd; d = a + gr * (b - a); fd = f(d); }
        }
        return 0.5 * (a + b);
    };
    for (int round = 0; round < 40; ++round) {
        double prev = best.value;
        best.theta = golden_min([&](double t) { return obj(t, best.phi); },
                                best.theta - dth, best.theta + dth);
        best.phi = golden_min([&](double p) { return obj(best.theta, p); },
                              best.phi - dph, best.phi + dph);
        best.value = obj(best.theta, best.phi);
        if (prev - best.value < 1e-12) break;
    }
    return best;
}

double concatenation_check(const QubitSpec& input) {
    auto kind = ResourceKind::exact_cat(0.0);  // alpha_cat filled by bell_resource
    DetectorModel perfect(1.0);
    auto r1 = teleport(input, kind, perfect);
    // an even outcome leaves a pending Z on the output, so round two sees the
    // sign-flipped qubit
    QubitSpec flipped{input.alpha, input.theta, input.phi + M_PI};
    auto r2 = teleport(flipped, kind, perfect);
    double p_ee = r1.p_even * r2.p_even;

    // partial sums of the retry chain must grow and stay below one
    double s1 = r1.p_odd;
    double s2 = s1 + r1.p_even * r2.p_odd;
    double s3 = s2 + p_ee * r1.p_odd;  // two Z flips cancel: round 3 sees the input
    if (!(s1 < s2 && s2 < s3 && s3 <= 1.0 + 1e-9))
        throw sim_error("concatenation_check: retry partial sums are not monotone");
    return p_ee;
}

TeleportEngine::TeleportEngine(double alpha, const ResourceKind& kind, int dim)
    : d_(dim), alpha_(alpha) {
    auto bell = bell_resource(alpha, kind, dim);
    auto coh_p = coherent_state(alpha, dim);
    auto coh_m = coherent_state(-alpha, dim);
    auto half = BeamsplitterSpec::half();
    auto t_p = apply_beamsplitter(tensor(coh_p, bell), {0, 1}, half);
    auto t_m = apply_beamsplitter(tensor(coh_m, bell), {0, 1}, half);
    ov_ = coh_p.amps.dot(coh_m.amps).real();

    g_pp_.resize(dim, dim);
    g_mm_.resize(dim, dim);
    g_pm_.resize(dim, dim);
    for (auto& u : u_) for (auto& m : u) m.resize(dim, dim);
    for (int m0 = 0; m0 < dim; ++m0)
        for (int m1 = 0; m1 < dim; ++m1) {
            Eigen::Index off = (Eigen::Index(m0) * dim + m1) * dim;
            auto vp = t_p.amps.segment(off, dim);
            auto vm = t_m.amps.segment(off, dim);
            g_pp_(m0, m1) = vp.squaredNorm();
            g_mm_(m0, m1) = vm.squaredNorm();
            g_pm_(m0, m1) = vp.dot(vm);
            u_[0][0](m0, m1) = coh_p.amps.dot(vp);
            u_[0][1](m0, m1) = coh_p.amps.dot(vm);
            u_[1][0](m0, m1) = coh_m.amps.dot(vp);
            u_[1][1](m0, m1) = coh_m.amps.dot(vm);
        }
}

TeleportReport TeleportEngine::run(const QubitSpec& input, double eta) const {
    if (std::abs(input.alpha - alpha_) > 1e-12)
        throw sim_error("teleport engine built for a different alpha");
    cxd mu = qubit_mu(input), nu = qubit_nu(input);
    double cross = 2.0 * (std::conj(mu) * nu).real();
    double w2 = std::norm(mu) + std::norm(nu) + cross * ov_;
    double wz2 = std::norm(mu) + std::norm(nu) - cross * ov_;

    MatR n_true = (std::norm(mu) * g_pp_ + std::norm(nu) * g_mm_ +
                   2.0 * (std::conj(mu) * nu * g_pm_.array()).real().matrix()) /
                  w2;

    DetectorModel model(eta, d_ - 1);
    VecR w_class[3] = {class_weights(model, OutcomeClass::Zero),
                       class_weights(model, OutcomeClass::Odd),
                       class_weights(model, OutcomeClass::EvenNonzero)};
    auto pair_prob = [&](int c0, int c1) {
        return w_class[c0].dot(n_true * w_class[c1]);
    };

    // route fidelity numerator: overlap of each true-pattern slice with the
    // corrected reference, kernel-weighted
    auto route_fid = [&](int c0, int c1, cxd ap, cxd am, double wr2, double prob) {
        MatC o = std::conj(ap) * (mu * u_[0][0] + nu * u_[0][1]) +
                 std::conj(am) * (mu * u_[1][0] + nu * u_[1][1]);
        MatR o2 = o.cwiseAbs2();
        double num = w_class[c0].dot(o2 * w_class[c1]);
        return num / (wr2 * w2 * prob);
    };

    const int Z = 0, O = 1, E = 2;
    TeleportReport rep;
    auto fill = [&](int c0, int c1, cxd ap, cxd am, double wr2) {
        TeleportReport::Route r;
        r.probability = pair_prob(c0, c1);
        if (r.probability >= kRouteFloor) {
            r.fidelity = route_fid(c0, c1, ap, am, wr2, r.probability);
            r.empty = false;
        }
        return r;
    };
    rep.none = fill(Z, O, mu, nu, w2);
    rep.x = fill(O, Z, nu, mu, w2);
    rep.z = fill(Z, E, mu, -nu, wz2);
    rep.xz = fill(E, Z, -nu, mu, wz2);
    rep.fail = fill(Z, Z, mu, nu, w2);
    rep.other.probability =
        pair_prob(O, O) + pair_prob(O, E) + pair_prob(E, O) + pair_prob(E, E);
    if (rep.other.probability >= kRouteFloor) {
        double num = 0.0;
        for (int c0 : {O, E})
            for (int c1 : {O, E}) {
                double p = pair_prob(c0, c1);
                if (p >= kRouteFloor)
                    num += route_fid(c0, c1, mu, nu, w2, 1.0);
            }
        rep.other.fidelity = num / rep.other.probability;
        rep.other.empty = false;
    }

    rep.p_odd = rep.none.probability + rep.x.probability;
    rep.p_even = rep.z.probability + rep.xz.probability;
    rep.p_fail = rep.fail.probability;
    rep.p_other = rep.other.probability;
    rep.p_succ = 1.0 - 2.0 * (rep.p_fail - rep.p_fail * rep.p_fail);
    rep.probability_sum = rep.p_odd + rep.p_even + rep.p_fail + rep.p_other;
    if (std::abs(rep.probability_sum - 1.0) > 1e-6)
        throw sim_error("teleport engine: outcome probabilities fail to close");
    return rep;
}

}  // namespace catsim
