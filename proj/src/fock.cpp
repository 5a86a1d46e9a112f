#include "catsim/fock.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <numeric>
#include <tuple>

#include <Eigen/Eigenvalues>

namespace catsim {

// ------------------------------------------------------------ FockVector ---

FockVector::FockVector(std::vector<int> d, VecC a, double deficit)
    : dims(std::move(d)), amps(std::move(a)), truncation_deficit(deficit) {
    Eigen::Index expect = 1;
    for (int dd : dims) {
        if (dd < 1) throw dim_mismatch_error("mode cutoff must be >= 1");
        expect *= dd;
    }
    if (amps.size() != expect)
        throw dim_mismatch_error("amplitude length does not match mode dims");
}

FockVector FockVector::normalized() const {
    double n = norm();
    if (n <= 0.0) throw sim_error("cannot normalize a zero state");
    FockVector out = *this;
    out.amps /= n;
    return out;
}

Eigen::Index FockVector::stride(int mode) const {
    Eigen::Index s = 1;
    for (int m = num_modes() - 1; m > mode; --m) s *= dims[static_cast<size_t>(m)];
    return s;
}

cxd FockVector::amp(const std::vector<int>& idx) const {
    if (static_cast<int>(idx.size()) != num_modes())
        throw dim_mismatch_error("multi-index arity mismatch");
    Eigen::Index flat = 0;
    for (int m = 0; m < num_modes(); ++m) {
        if (idx[static_cast<size_t>(m)] < 0 || idx[static_cast<size_t>(m)] >= dims[static_cast<size_t>(m)])
            throw dim_mismatch_error("multi-index out of range");
        flat += idx[static_cast<size_t>(m)] * stride(m);
    }
    return amps[flat];
}

// ------------------------------------------------------------ MixedState ---

MixedState MixedState::normalized() const {
    double t = trace();
    if (t <= 0.0) throw sim_error("cannot normalize a zero-trace density matrix");
    return MixedState(dim, rho / t);
}

double MixedState::purity() const {
    double t = trace();
    return (rho * rho).trace().real() / (t * t);
}

double MixedState::hermiticity_defect() const {
    return (rho - rho.adjoint()).cwiseAbs().maxCoeff();
}

double MixedState::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<MatC> es(0.5 * (rho + rho.adjoint()));
    return es.eigenvalues().minCoeff();
}

MixedState pure_to_mixed(const FockVector& single_mode) {
    if (single_mode.num_modes() != 1)
        throw dim_mismatch_error("pure_to_mixed expects a single-mode state");
    const VecC& v = single_mode.amps;
    return MixedState(single_mode.dim(0), v * v.adjoint());
}

// ------------------------------------------------------ BeamsplitterSpec ---

BeamsplitterSpec::BeamsplitterSpec(double theta, Convention conv)
    : theta_bs(theta), convention(conv) {
    if (!(theta >= 0.0 && theta <= M_PI / 2))
        throw sim_error("beamsplitter angle must lie in [0, pi/2]");
}

// --------------------------------------------------------- cutoff policy ---

int policy_dim(double beta_max) {
    double b = std::abs(beta_max);
    int d = static_cast<int>(std::ceil(b * b + 7.0 * b + 12.0));
    return std::max(24, d);
}

int squeezed_min_dim(double r, double tail_eps) {
    // squeezed-photon occupation of |2n+1> falls geometrically in tanh^2 r;
    // walk the series until the remaining mass is below tail_eps
    double t = std::tanh(std::abs(r));
    double ch = std::cosh(r);
    double term = 1.0 / (ch * ch * ch);  // n = 0 mass
    double tail = 1.0;
    for (int n = 0; n < 100000; ++n) {
        tail -= term;
        if (tail < tail_eps) return 2 * n + 2;
        term *= (2.0 * n + 3.0) * (2.0 * n + 2.0) / (4.0 * (n + 1.0) * (n + 1.0)) * t * t;
    }
    throw sim_error("squeezed_min_dim: series did not converge (|r| too large)");
}

// ---------------------------------------------------------- constructors ---

namespace {

std::string fmt_sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

FockVector finish_constructor(int dim, VecC amps, const char* what) {
    double sum = amps.squaredNorm();
    double deficit = std::max(0.0, 1.0 - sum);
    if (deficit > kDeficitTol)
        throw cutoff_error(std::string(what) + ": truncation deficit " + fmt_sci(deficit) +
                           " at dim " + std::to_string(dim) +
                           " exceeds tolerance; raise the cutoff");
    amps /= std::sqrt(sum);
    return FockVector({dim}, std::move(amps), deficit);
}

}  // namespace

FockVector fock_basis(int n, int dim) {
    if (n < 0 || n >= dim) throw cutoff_error("fock_basis: level outside cutoff");
    VecC a = VecC::Zero(dim);
    a[n] = 1.0;
    return FockVector({dim}, std::move(a), 0.0);
}

FockVector coherent_state(cxd beta, int dim) {
    if (dim < 1) throw dim_mismatch_error("coherent_state: dim must be >= 1");
    VecC a(dim);
    // a_n = e^{-|b|^2/2} b^n / sqrt(n!), built by recurrence to dodge
    // factorial overflow
    a[0] = std::exp(-0.5 * std::norm(beta));
    for (int n = 1; n < dim; ++n) a[n] = a[n - 1] * beta / std::sqrt(double(n));
    return finish_constructor(dim, std::move(a), "coherent_state");
}

FockVector squeezed_vacuum(double r, int dim) {
    if (std::abs(r) > 5.0) throw sim_error("squeezed_vacuum: |r| must be <= 5");
    VecC a = VecC::Zero(dim);
    // coefficient on |2n>: (-tanh r)^n sqrt((2n)!)/(2^n n!) / sqrt(cosh r)
    double t = std::tanh(r);
    double c = 1.0 / std::sqrt(std::cosh(r));
    for (int n = 0; 2 * n < dim; ++n) {
        a[2 * n] = c;
        c *= -t * std::sqrt((2.0 * n + 1.0) / (2.0 * n + 2.0));
    }
    return finish_constructor(dim, std::move(a), "squeezed_vacuum");
}

FockVector squeezed_photon(double r, int dim) {
    if (std::abs(r) > 5.0) throw sim_error("squeezed_photon: |r| must be <= 5");
    if (dim < 2) throw cutoff_error("squeezed_photon: dim must be >= 2");
    VecC a = VecC::Zero(dim);
    // coefficient on |2n+1>: (-tanh r)^n sqrt((2n+1)!)/(2^n n!) / cosh^{3/2} r
    double t = std::tanh(r);
    double c = 1.0 / std::pow(std::cosh(r), 1.5);
    for (int n = 0; 2 * n + 1 < dim; ++n) {
        a[2 * n + 1] = c;
        c *= -t * std::sqrt((2.0 * n + 3.0) / (2.0 * n + 2.0));
    }
    return finish_constructor(dim, std::move(a), "squeezed_photon");
}

// ------------------------------------------------------------ operations ---

FockVector tensor(const FockVector& a, const FockVector& b) {
    return tensor(std::vector<FockVector>{a, b});
}

FockVector tensor(const std::vector<FockVector>& states) {
    if (states.empty()) throw sim_error("tensor of zero states");
    std::vector<int> dims;
    VecC acc = states[0].amps;
    dims = states[0].dims;
    double keep = 1.0 - states[0].truncation_deficit;
    for (size_t i = 1; i < states.size(); ++i) {
        const VecC& b = states[i].amps;
        VecC next(acc.size() * b.size());
        for (Eigen::Index j = 0; j < acc.size(); ++j)
            next.segment(j * b.size(), b.size()) = acc[j] * b;
        acc = std::move(next);
        dims.insert(dims.end(), states[i].dims.begin(), states[i].dims.end());
        keep *= 1.0 - states[i].truncation_deficit;
    }
    return FockVector(std::move(dims), std::move(acc), 1.0 - keep);
}

FockVector embed_mode(const FockVector& state, int mode, int new_dim) {
    if (mode < 0 || mode >= state.num_modes())
        throw dim_mismatch_error("embed_mode: mode out of range");
    int old_dim = state.dim(mode);
    if (new_dim < old_dim) throw dim_mismatch_error("embed_mode: can only grow a mode");
    if (new_dim == old_dim) return state;
    std::vector<int> dims = state.dims;
    dims[static_cast<size_t>(mode)] = new_dim;
    Eigen::Index inner = state.stride(mode);                  // faster-mode block
    Eigen::Index outer = state.size() / (inner * old_dim);    // slower-mode count
    VecC out = VecC::Zero(inner * outer * new_dim);
    for (Eigen::Index o = 0; o < outer; ++o)
        out.segment(o * new_dim * inner, old_dim * inner) =
            state.amps.segment(o * old_dim * inner, old_dim * inner);
    return FockVector(std::move(dims), std::move(out), state.truncation_deficit);
}

namespace detail {

SubspaceIndexer::SubspaceIndexer(const FockVector& state, std::vector<int> measured)
    : measured_modes(std::move(measured)) {
    int k = state.num_modes();
    std::vector<bool> is_measured(static_cast<size_t>(k), false);
    for (int m : measured_modes) {
        if (m < 0 || m >= k) throw dim_mismatch_error("measured mode out of range");
        if (is_measured[static_cast<size_t>(m)])
            throw dim_mismatch_error("measured mode listed twice");
        is_measured[static_cast<size_t>(m)] = true;
    }
    for (int m = 0; m < k; ++m) {
        if (is_measured[static_cast<size_t>(m)]) measured_dims.push_back(state.dim(m));
        else { kept_modes.push_back(m); kept_dims.push_back(state.dim(m)); }
    }
    for (int d : measured_dims) measured_size *= d;
    for (int d : kept_dims) kept_size *= d;

    // offsets by odometer walk, lexicographic in the listed mode order
    measured_offsets.assign(static_cast<size_t>(measured_size), 0);
    {
        std::vector<int> idx(measured_modes.size(), 0);
        for (Eigen::Index p = 0; p < measured_size; ++p) {
            Eigen::Index off = 0;
            for (size_t a = 0; a < measured_modes.size(); ++a)
                off += idx[a] * state.stride(measured_modes[a]);
            measured_offsets[static_cast<size_t>(p)] = off;
            for (int a = static_cast<int>(idx.size()) - 1; a >= 0; --a) {
                if (++idx[static_cast<size_t>(a)] < measured_dims[static_cast<size_t>(a)]) break;
                idx[static_cast<size_t>(a)] = 0;
            }
        }
    }
    kept_offsets.assign(static_cast<size_t>(kept_size), 0);
    {
        std::vector<int> idx(kept_modes.size(), 0);
        for (Eigen::Index q = 0; q < kept_size; ++q) {
            Eigen::Index off = 0;
            for (size_t a = 0; a < kept_modes.size(); ++a)
                off += idx[a] * state.stride(kept_modes[a]);
            kept_offsets[static_cast<size_t>(q)] = off;
            for (int a = static_cast<int>(idx.size()) - 1; a >= 0; --a) {
                if (++idx[static_cast<size_t>(a)] < kept_dims[static_cast<size_t>(a)]) break;
                idx[static_cast<size_t>(a)] = 0;
            }
        }
    }
}

std::vector<int> SubspaceIndexer::counts_of(Eigen::Index pattern) const {
    std::vector<int> c(measured_dims.size(), 0);
    for (int a = static_cast<int>(measured_dims.size()) - 1; a >= 0; --a) {
        c[static_cast<size_t>(a)] = static_cast<int>(pattern % measured_dims[static_cast<size_t>(a)]);
        pattern /= measured_dims[static_cast<size_t>(a)];
    }
    return c;
}

const std::vector<MatC>& beamsplitter_blocks(int d, const BeamsplitterSpec& spec) {
    static std::map<std::tuple<int, double, int>, std::vector<MatC>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_tuple(d, spec.theta_bs, static_cast<int>(spec.convention));
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    const double th = spec.theta_bs;
    const bool real50 = spec.convention == BeamsplitterSpec::Convention::real5050;
    std::vector<MatC> blocks;
    blocks.reserve(static_cast<size_t>(2 * d - 1));
    for (int N = 0; N <= 2 * (d - 1); ++N) {
        int jmin = std::max(0, N - d + 1), jmax = std::min(N, d - 1);
        int sz = jmax - jmin + 1;
        // Hermitian generator A on |j, N-j>, j = photons in the first coupled
        // mode; U = exp(-iA).
        //   real5050:  A = i th (a2^dag a1 - a1^dag a2)
        //   symmetric: A = -th (a1^dag a2 + a2^dag a1)
        MatC A = MatC::Zero(sz, sz);
        for (int j = jmin + 1; j <= jmax; ++j) {
            double c = std::sqrt(double(j) * double(N - j + 1));
            int r = j - jmin;
            if (real50) {
                A(r - 1, r) = cxd(0, th * c);
                A(r, r - 1) = cxd(0, -th * c);
            } else {
                A(r - 1, r) = -th * c;
                A(r, r - 1) = -th * c;
            }
        }
        Eigen::SelfAdjointEigenSolver<MatC> es(A);
        VecC phase = (cxd(0, -1) * es.eigenvalues().array().cast<cxd>()).exp();
        blocks.push_back(es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint());
    }
    return cache.emplace(key, std::move(blocks)).first->second;
}

namespace {

// dense one-mode operator applied in place over the mode's stride pattern
void apply_mode_operator(FockVector& state, int mode, const MatC& op) {
    int d = state.dim(mode);
    Eigen::Index inner = state.stride(mode);
    Eigen::Index outer = state.size() / (inner * d);
    VecC x(d), y(d);
    for (Eigen::Index o = 0; o < outer; ++o) {
        Eigen::Index base = o * d * inner;
        for (Eigen::Index i = 0; i < inner; ++i) {
            for (int n = 0; n < d; ++n) x[n] = state.amps[base + n * inner + i];
            y.noalias() = op * x;
            for (int n = 0; n < d; ++n) state.amps[base + n * inner + i] = y[n];
        }
    }
}

// mass with photon number >= lo on one mode
double mode_tail_mass(const FockVector& state, int mode, int lo) {
    int d = state.dim(mode);
    Eigen::Index inner = state.stride(mode);
    Eigen::Index outer = state.size() / (inner * d);
    double m = 0.0;
    for (Eigen::Index o = 0; o < outer; ++o)
        for (int n = std::max(0, lo); n < d; ++n)
            m += state.amps.segment(o * d * inner + n * inner, inner).squaredNorm();
    return m;
}

// eigendecomposition of i(a^dag - a) at the given dim, cached
struct DisplacementBasis {
    MatC V;
    VecR lambda;
};
const DisplacementBasis& displacement_basis(int d) {
    static std::map<int, DisplacementBasis> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(d);
    if (it != cache.end()) return it->second;
    MatC H = MatC::Zero(d, d);
    for (int n = 0; n + 1 < d; ++n) {
        H(n + 1, n) = cxd(0, std::sqrt(double(n + 1)));
        H(n, n + 1) = cxd(0, -std::sqrt(double(n + 1)));
    }
    Eigen::SelfAdjointEigenSolver<MatC> es(H);
    return cache.emplace(d, DisplacementBasis{es.eigenvectors(), es.eigenvalues()}).first->second;
}

}  // namespace
}  // namespace detail

FockVector apply_beamsplitter(const FockVector& state,
                              std::pair<int, int> modes,
                              const BeamsplitterSpec& spec) {
    int m1 = modes.first, m2 = modes.second;
    if (m1 == m2) throw dim_mismatch_error("beamsplitter needs two distinct modes");
    if (m1 < 0 || m2 < 0 || m1 >= state.num_modes() || m2 >= state.num_modes())
        throw dim_mismatch_error("beamsplitter mode out of range");
    if (state.dim(m1) != state.dim(m2))
        throw dim_mismatch_error("beamsplitter modes must share a cutoff dim");
    const int d = state.dim(m1);
    const auto& blocks = detail::beamsplitter_blocks(d, spec);
    detail::SubspaceIndexer ix(state, {m1, m2});

    FockVector out = state;
    // leak check: clipped blocks (total photons >= d) must be essentially empty
    double clipped = 0.0;
    VecC x, y;
    for (int N = 0; N <= 2 * (d - 1); ++N) {
        int jmin = std::max(0, N - d + 1), jmax = std::min(N, d - 1);
        int sz = jmax - jmin + 1;
        x.resize(sz);
        y.resize(sz);
        const MatC& U = blocks[static_cast<size_t>(N)];
        for (Eigen::Index q = 0; q < ix.kept_size; ++q) {
            Eigen::Index base = ix.kept_offsets[static_cast<size_t>(q)];
            for (int j = jmin; j <= jmax; ++j)
                x[j - jmin] = state.amps[base + ix.measured_offsets[static_cast<size_t>(j * d + (N - j))]];
            if (N >= d) clipped += x.squaredNorm();
            y.noalias() = U * x;
            for (int j = jmin; j <= jmax; ++j)
                out.amps[base + ix.measured_offsets[static_cast<size_t>(j * d + (N - j))]] = y[j - jmin];
        }
    }
    if (clipped > kLeakTol)
        throw leak_error("beamsplitter input populates clipped total-photon blocks (mass " +
                         fmt_sci(clipped) + "); raise the cutoff");
    out.truncation_deficit = std::max(state.truncation_deficit, clipped);
    return out;
}

FockVector apply_displacement(const FockVector& state, int mode, cxd beta) {
    if (mode < 0 || mode >= state.num_modes())
        throw dim_mismatch_error("displacement mode out of range");
    if (beta == cxd(0, 0)) return state;
    int d = state.dim(mode);
    const auto& basis = detail::displacement_basis(d);
    double s = std::abs(beta), th = std::arg(beta);
    // exp(beta a^dag - conj(beta) a) = P(th) exp(s(a^dag - a)) P(-th)
    VecC evol = (cxd(0, -s) * basis.lambda.array().cast<cxd>()).exp();
    VecC ph(d);
    for (int n = 0; n < d; ++n) ph[n] = std::exp(cxd(0, th * n));
    MatC op = ph.asDiagonal() * (basis.V * evol.asDiagonal() * basis.V.adjoint()) *
              ph.conjugate().asDiagonal();

    double tail_in = detail::mode_tail_mass(state, mode, d - 2);
    FockVector out = state;
    detail::apply_mode_operator(out, mode, op);
    double tail_out = detail::mode_tail_mass(out, mode, d - 2);
    double defect = std::max(tail_in, tail_out);
    if (defect > kHeadroomTol)
        throw headroom_error("displacement headroom: top-band mass " +
                             fmt_sci(defect) + "; raise the cutoff");
    out.truncation_deficit = std::max(state.truncation_deficit, defect);
    return out;
}

FockVector apply_phase_rotation(const FockVector& state, int mode, double phi) {
    if (mode < 0 || mode >= state.num_modes())
        throw dim_mismatch_error("phase rotation mode out of range");
    int d = state.dim(mode);
    Eigen::Index inner = state.stride(mode);
    Eigen::Index outer = state.size() / (inner * d);
    FockVector out = state;
    for (Eigen::Index o = 0; o < outer; ++o)
        for (int n = 0; n < d; ++n)
            out.amps.segment(o * d * inner + n * inner, inner) *= std::exp(cxd(0, phi * n));
    return out;
}

double fidelity(const FockVector& target, const FockVector& state) {
    if (target.dims != state.dims)
        throw dim_mismatch_error("fidelity: mode dims differ");
    double nt = target.norm(), ns = state.norm();
    if (nt <= 0 || ns <= 0) throw sim_error("fidelity of a zero state");
    cxd ov = target.amps.dot(state.amps) / (nt * ns);
    return std::norm(ov);
}

double fidelity(const FockVector& target, const MixedState& state) {
    if (target.num_modes() != 1 || target.dim(0) != state.dim)
        throw dim_mismatch_error("fidelity: target/mixed dims differ");
    double tr = state.trace();
    if (tr <= 0) throw sim_error("fidelity of a zero-trace state");
    VecC t = target.amps / target.norm();
    double f = (t.adjoint() * state.rho * t)(0).real() / tr;
    return std::max(0.0, f);
}

// ------------------------------------------------- conditional reduction ---

VecR mask_exact(int dim, int n) {
    if (n < 0 || n >= dim) throw dim_mismatch_error("mask_exact: count outside cutoff");
    VecR m = VecR::Zero(dim);
    m[n] = 1.0;
    return m;
}
VecR mask_zero(int dim) { return mask_exact(dim, 0); }
VecR mask_odd(int dim) {
    VecR m = VecR::Zero(dim);
    for (int n = 1; n < dim; n += 2) m[n] = 1.0;
    return m;
}
VecR mask_even_nonzero(int dim) {
    VecR m = VecR::Zero(dim);
    for (int n = 2; n < dim; n += 2) m[n] = 1.0;
    return m;
}
VecR mask_any(int dim) { return VecR::Ones(dim); }

ConditionResult condition_on_outcome(const FockVector& state,
                                     const std::vector<int>& measured_modes,
                                     const std::vector<VecR>& outcome_masks) {
    if (measured_modes.size() != outcome_masks.size())
        throw dim_mismatch_error("one outcome mask per measured mode required");
    detail::SubspaceIndexer ix(state, measured_modes);
    for (size_t a = 0; a < outcome_masks.size(); ++a)
        if (outcome_masks[a].size() != ix.measured_dims[a])
            throw dim_mismatch_error("outcome mask length does not match mode dim");

    ConditionResult res;
    // probability and, for accepted patterns, the kept-mode ray; the ray must
    // be common to all accepted patterns (pure remainder) or we refuse
    VecC ref = VecC::Zero(ix.kept_size);
    double ref_norm2 = 0.0;
    std::vector<std::pair<Eigen::Index, double>> accepted;  // pattern, weight
    for (Eigen::Index p = 0; p < ix.measured_size; ++p) {
        auto counts = ix.counts_of(p);
        double w = 1.0;
        for (size_t a = 0; a < counts.size(); ++a)
            w *= outcome_masks[a][counts[a]];
        if (w == 0.0) continue;
        accepted.emplace_back(p, w);
    }
    VecC slice(ix.kept_size);
    double captured = 0.0;
    for (auto& [p, w] : accepted) {
        Eigen::Index off = ix.measured_offsets[static_cast<size_t>(p)];
        for (Eigen::Index q = 0; q < ix.kept_size; ++q)
            slice[q] = state.amps[off + ix.kept_offsets[static_cast<size_t>(q)]];
        double n2 = w * slice.squaredNorm();
        res.probability += n2;
        if (n2 > ref_norm2) {
            ref = slice;
            ref_norm2 = n2;
        }
    }
    if (res.probability < kEmptyOutcomeTol) {
        res.empty = true;
        res.state = FockVector(ix.kept_dims, VecC::Zero(ix.kept_size),
                               state.truncation_deficit);
        return res;
    }
    // purity audit: mass captured by the dominant ray
    VecC u = ref / ref.norm();
    for (auto& [p, w] : accepted) {
        Eigen::Index off = ix.measured_offsets[static_cast<size_t>(p)];
        for (Eigen::Index q = 0; q < ix.kept_size; ++q)
            slice[q] = state.amps[off + ix.kept_offsets[static_cast<size_t>(q)]];
        captured += w * std::norm(u.dot(slice));
    }
    if ((res.probability - captured) / res.probability > 1e-9)
        throw sim_error("condition_on_outcome: remainder is not pure for this outcome set");
    res.state = FockVector(ix.kept_dims, u, state.truncation_deficit);
    return res;
}

}  // namespace catsim
