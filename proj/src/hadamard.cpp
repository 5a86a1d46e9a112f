#include "catsim/hadamard.hpp"

#include <algorithm>
#include <cmath>

namespace catsim {

GateResult rotated_hadamard(const FockVector& input, double alpha,
                            const ResourceKind& kind, const HadamardConfig& cfg,
                            const DetectorModel& detector) {
    if (input.num_modes() != 1)
        throw dim_mismatch_error("rotated_hadamard: input must be single-mode");
    if (alpha <= 0.0) throw sim_error("rotated_hadamard: alpha must be > 0");
    if (cfg.accept_n < 0 || cfg.accept_m < 0)
        throw sim_error("rotated_hadamard: accepted counts must be >= 0");

    int d_bell = teleport_dim(alpha, kind);
    int common = std::max(input.dim(0), d_bell);

    auto full = tensor(input, bell_resource(alpha, kind, d_bell));
    if (input.dim(0) < common) full = embed_mode(full, 0, common);
    if (d_bell < common) full = embed_mode(full, 1, common);
    full = apply_beamsplitter(
        full, {0, 1},
        BeamsplitterSpec(cfg.theta_bs, BeamsplitterSpec::Convention::symmetric));

    GateResult out;
    if (cfg.accept_n >= common || cfg.accept_m >= common) return out;

    auto table = measure_modes(full, {0, 1}, DetectorModel(detector.eta, common - 1));
    out.p_gate = table.probability({cfg.accept_n, cfg.accept_m});
    if (out.p_gate < kEmptyOutcomeTol) return out;
    out.output = table.conditional({cfg.accept_n, cfg.accept_m});
    out.empty = false;
    return out;
}

FockVector hadamard_target(const QubitSpec& input, int dim) {
    if (input.alpha <= 0.0) throw sim_error("hadamard_target: alpha must be > 0");
    cxd mu = qubit_mu(input), nu = qubit_nu(input);
    cxd a = mu + cxd(0, 1) * nu;        // |a> branch
    cxd b = -(cxd(0, 1) * mu + nu);     // |-a> branch
    auto plus = coherent_state(input.alpha, dim);
    auto minus = coherent_state(-input.alpha, dim);
    VecC v = a * plus.amps + b * minus.amps;
    double n2 = v.squaredNorm();
    if (n2 < 1e-12)
        throw normalization_error(
            "hadamard_target: branches cancel (mu ~ nu at small alpha)");
    return FockVector({dim}, v / std::sqrt(n2),
                      std::max(plus.truncation_deficit, minus.truncation_deficit));
}

double count_prob_closed(const QubitSpec& input, int n, int m) {
    if (input.alpha <= 0.0) throw sim_error("count_prob_closed: alpha must be > 0");
    if (n < 0 || m < 0) throw sim_error("count_prob_closed: counts must be >= 0");
    double a2 = input.alpha * input.alpha;
    double c = 2.0 * (std::conj(cxd(qubit_mu(input))) * qubit_nu(input)).real() *
               std::exp(-2.0 * a2);
    double left = (1.0 - c) / ((1.0 + c) * (1.0 - std::exp(-4.0 * a2)));
    double right = std::exp((n + m) * std::log(a2) - 2.0 * a2 -
                            std::lgamma(n + 1.0) - std::lgamma(m + 1.0));
    return left * right;
}

namespace {

// Bucket the two-port pattern weights q(m0, m1) into the four readout
// outcomes.  A lossy counter reports dark on m photons with weight
// (1-eta)^m, so the four buckets partition exactly.
ReadoutResult classify_readout(const VecR& q, int d, double eta) {
    VecR dark(d);
    for (int m = 0; m < d; ++m) dark[m] = std::pow(1.0 - eta, m);
    ReadoutResult r;
    double both_dark = 0.0;
    for (int m0 = 0; m0 < d; ++m0) {
        for (int m1 = 0; m1 < d; ++m1) {
            double w = q[m0 * d + m1];
            both_dark += w * dark[m0] * dark[m1];
            r.p_plus += w * dark[m0] * (1.0 - dark[m1]);
            r.p_minus += w * (1.0 - dark[m0]) * dark[m1];
            r.p_ambiguous += w * (1.0 - dark[m0]) * (1.0 - dark[m1]);
        }
    }
    r.p_fail = both_dark + r.p_ambiguous;
    return r;
}

// Joint count-pattern weights of rho (x) |coh><coh| after the 50:50
// splitter, block by block in total photon number: within block N the input
// matrix is rho(j,j') c_{N-j} c*_{N-j'} and the weights are the diagonal of
// its conjugation by the cached block unitary.  Same clip rule as
// apply_beamsplitter: blocks at N >= d must be essentially empty.
VecR joint_pattern_weights(const MatC& rho, const VecC& coh, int d) {
    const auto& blocks = detail::beamsplitter_blocks(d, BeamsplitterSpec::half());
    VecR q = VecR::Zero(static_cast<Eigen::Index>(d) * d);
    double clipped = 0.0;
    MatC m;
    for (int n = 0; n <= 2 * (d - 1); ++n) {
        int jmin = std::max(0, n - d + 1), jmax = std::min(n, d - 1);
        int sz = jmax - jmin + 1;
        m.resize(sz, sz);
        for (int j = jmin; j <= jmax; ++j)
            for (int jp = jmin; jp <= jmax; ++jp)
                m(j - jmin, jp - jmin) =
                    rho(j, jp) * coh[n - j] * std::conj(coh[n - jp]);
        if (n >= d) {
            clipped += m.trace().real();
            continue;
        }
        const MatC& u = blocks[static_cast<size_t>(n)];
        VecR diag = (u * m).cwiseProduct(u.conjugate()).rowwise().sum().real();
        for (int j = jmin; j <= jmax; ++j)
            q[static_cast<Eigen::Index>(j) * d + (n - j)] = diag[j - jmin];
    }
    if (clipped > kLeakTol)
        throw leak_error("readout input populates clipped total-photon blocks; "
                         "raise the cutoff");
    return q;
}

}  // namespace

ReadoutResult computational_readout(const FockVector& state, double alpha,
                                    const DetectorModel& detector) {
    if (state.num_modes() != 1)
        throw dim_mismatch_error("computational_readout: state must be single-mode");
    if (alpha <= 0.0) throw sim_error("computational_readout: alpha must be > 0");
    int d = state.dim(0);
    auto joint = apply_beamsplitter(tensor(state, coherent_state(alpha, d)),
                                    {0, 1}, BeamsplitterSpec::half());
    return classify_readout(joint.amps.cwiseAbs2(), d, detector.eta);
}

ReadoutResult computational_readout(const MixedState& state, double alpha,
                                    const DetectorModel& detector) {
    if (state.dim <= 0)
        throw dim_mismatch_error("computational_readout: empty density matrix");
    if (alpha <= 0.0) throw sim_error("computational_readout: alpha must be > 0");
    auto coh = coherent_state(alpha, state.dim);
    return classify_readout(joint_pattern_weights(state.rho, coh.amps, state.dim),
                            state.dim, detector.eta);
}

std::vector<double> default_delta_grid(double alpha, int points) {
    if (alpha <= 0.0) throw sim_error("default_delta_grid: alpha must be > 0");
    if (points < 2) throw sim_error("default_delta_grid: need at least 2 points");
    double lim = 2.0 / alpha;
    std::vector<double> grid(points);
    for (int i = 0; i < points; ++i)
        grid[i] = -lim + 2.0 * lim * i / (points - 1);
    return grid;
}

int fringe_input_dim(double alpha, const ResourceKind& input_kind,
                     double delta_max) {
    int d = policy_dim(std::hypot(alpha, delta_max));
    if (input_kind.kind == ResourceKind::Kind::squeezed_photon)
        d = std::max(d, policy_dim(delta_max) + squeezed_min_dim(input_kind.r));
    return d;
}

std::vector<FringePoint> fringe_sweep(double alpha,
                                      const ResourceKind& input_kind,
                                      const ResourceKind& gate_kind,
                                      const std::vector<double>& deltas,
                                      const DetectorModel& gate_detector,
                                      const DetectorModel& readout_detector) {
    if (alpha <= 0.0) throw sim_error("fringe_sweep: alpha must be > 0");
    if (deltas.empty()) throw sim_error("fringe_sweep: empty delta list");

    double delta_max = 0.0;
    for (double d : deltas) delta_max = std::max(delta_max, std::abs(d));
    int d_in = fringe_input_dim(alpha, input_kind, delta_max);
    ResourceKind in_kind = input_kind;
    if (in_kind.kind == ResourceKind::Kind::exact_cat) in_kind.alpha_cat = alpha;

    int d_bell = teleport_dim(alpha, gate_kind);
    HadamardConfig cfg;
    auto readout_ref = coherent_state(alpha, d_bell);

    auto base = resource_state(in_kind, d_in);
    std::vector<FringePoint> points;
    points.reserve(deltas.size());
    for (double delta : deltas) {
        FringePoint p;
        p.delta = delta;
        auto shifted = apply_displacement(base, 0, cxd(0, delta));
        auto gate = rotated_hadamard(shifted, alpha, gate_kind, cfg, gate_detector);
        p.p_gate = gate.p_gate;
        if (gate.empty) {
            p.gate_empty = true;
        } else {
            auto r = classify_readout(
                joint_pattern_weights(gate.output.rho, readout_ref.amps, d_bell),
                d_bell, readout_detector.eta);
            p.p_plus = r.p_plus;
            p.p_minus = r.p_minus;
            p.p_readout_fail = r.p_fail;
            p.p_ambiguous = r.p_ambiguous;
        }
        points.push_back(p);
    }
    return points;
}

std::vector<FringePoint> fringe_sweep(double alpha, const ResourceKind& kind,
                                      const std::vector<double>& deltas,
                                      const DetectorModel& detector) {
    ResourceKind gate_kind = kind;
    if (kind.kind == ResourceKind::Kind::squeezed_photon)
        gate_kind = ResourceKind::squeezed_photon(
            optimal_r_numeric(std::sqrt(2.0) * alpha).r_opt);
    return fringe_sweep(alpha, kind, gate_kind, deltas, detector,
                        DetectorModel(1.0));
}

double visibility(const std::vector<double>& p_samples) {
    if (p_samples.empty()) throw sim_error("visibility: empty sample list");
    auto [lo, hi] = std::minmax_element(p_samples.begin(), p_samples.end());
    if (*lo < 0.0) throw sim_error("visibility: negative sample");
    double denom = *hi + *lo;
    if (denom <= 0.0) return 0.0;
    return (*hi - *lo) / denom;
}

}  // namespace catsim
