#pragma once
// Truncated multimode Fock-space linear algebra: state constructors, mode
// coupling, inner products, conditional reduction.  Dense Eigen storage
// throughout; all operations return new values (no in-place mutation).

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace catsim {

using cxd = std::complex<double>;
using VecC = Eigen::VectorXcd;
using MatC = Eigen::MatrixXcd;
using VecR = Eigen::VectorXd;
using MatR = Eigen::MatrixXd;

// ---------------------------------------------------------------- errors ---
struct sim_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// cutoff too small: a constructor's series lost more than the allowed mass
struct cutoff_error : sim_error {
    using sim_error::sim_error;
};
// displacement would push population into the top of the truncated ladder
struct headroom_error : sim_error {
    using sim_error::sim_error;
};
// beamsplitter input populates total-photon blocks that the cutoff clips
struct leak_error : sim_error {
    using sim_error::sim_error;
};
struct dim_mismatch_error : sim_error {
    using sim_error::sim_error;
};

// tolerances used by the checks below (double-precision calibrated)
constexpr double kDeficitTol = 1e-10;   // constructor truncation deficit
constexpr double kLeakTol = 1e-10;      // mass allowed in clipped blocks
constexpr double kHeadroomTol = 1e-8;   // displacement top-band mass
constexpr double kEmptyOutcomeTol = 1e-14;

// ------------------------------------------------------------ FockVector ---
// Complex amplitudes over the multi-index (n_1,...,n_k), n_m < dims[m].
// Layout: last mode varies fastest (C order), so slices over trailing modes
// are contiguous.
struct FockVector {
    std::vector<int> dims;
    VecC amps;
    // worst truncation-related mass discrepancy accumulated while building
    // this state (constructor series deficit, displacement defect, ...)
    double truncation_deficit = 0.0;

    FockVector() = default;
    FockVector(std::vector<int> d, VecC a, double deficit = 0.0);

    int num_modes() const { return static_cast<int>(dims.size()); }
    int dim(int mode) const { return dims.at(static_cast<size_t>(mode)); }
    Eigen::Index size() const { return amps.size(); }
    double norm() const { return amps.norm(); }
    FockVector normalized() const;

    // stride of `mode` in the flattened index
    Eigen::Index stride(int mode) const;
    cxd amp(const std::vector<int>& idx) const;
};

// ------------------------------------------------------------ MixedState ---
// Single-mode density matrix; mixedness only ever arises on one kept mode.
struct MixedState {
    int dim = 0;
    MatC rho;

    MixedState() = default;
    MixedState(int d, MatC m) : dim(d), rho(std::move(m)) {}

    double trace() const { return rho.trace().real(); }
    MixedState normalized() const;
    // tr(rho^2)/tr(rho)^2 : 1 for pure states
    double purity() const;
    double hermiticity_defect() const;  // max entrywise |rho - rho^dagger|
    double min_eigenvalue() const;
};

MixedState pure_to_mixed(const FockVector& single_mode);

// ------------------------------------------------------ BeamsplitterSpec ---
struct BeamsplitterSpec {
    enum class Convention { real5050, symmetric };

    double theta_bs;
    Convention convention;

    explicit BeamsplitterSpec(double theta, Convention conv = Convention::real5050);

    static BeamsplitterSpec half(Convention conv = Convention::real5050) {
        return BeamsplitterSpec(M_PI / 4, conv);
    }
};

// --------------------------------------------------------- cutoff policy ---
// Per-mode cutoff covering Poisson tails below ~1e-12 for the amplitudes in
// play.  beta_max is the largest coherent amplitude the mode will ever hold.
int policy_dim(double beta_max);
// Smallest dim keeping a squeezed-photon (or squeezed-vacuum) tail below
// tail_eps; their geometric tanh^2 tails outlast the Poisson formula above.
int squeezed_min_dim(double r, double tail_eps = 1e-12);

// ---------------------------------------------------------- constructors ---
// All constructors renormalize after truncation and record the deficit; they
// throw cutoff_error if the pre-normalization deficit exceeds kDeficitTol.
FockVector fock_basis(int n, int dim);
FockVector coherent_state(cxd beta, int dim);
FockVector squeezed_vacuum(double r, int dim);
FockVector squeezed_photon(double r, int dim);

// ------------------------------------------------------------ operations ---
FockVector tensor(const std::vector<FockVector>& states);
FockVector tensor(const FockVector& a, const FockVector& b);

// zero-pad one mode to a larger cutoff (exact embedding)
FockVector embed_mode(const FockVector& state, int mode, int new_dim);

// Two-mode coupling, block-diagonal in total photon number.
// Coherent-amplitude action:
//   real5050:   (b1,b2) -> (b1 cos - b2 sin,  b1 sin + b2 cos)
//               (at theta=pi/4 equal inputs empty the first port)
//   symmetric:  (b1,b2) -> (b1 cos + i b2 sin, i b1 sin + b2 cos)
FockVector apply_beamsplitter(const FockVector& state,
                              std::pair<int, int> modes,
                              const BeamsplitterSpec& spec);

// exp(beta a^dag - conj(beta) a) on one mode, exactly unitary on the
// truncated ladder; throws headroom_error if the top band gets populated
FockVector apply_displacement(const FockVector& state, int mode, cxd beta);

// multiplies each amplitude by e^{i phi n}
FockVector apply_phase_rotation(const FockVector& state, int mode, double phi);

double fidelity(const FockVector& target, const FockVector& state);
double fidelity(const FockVector& target, const MixedState& state);

// ------------------------------------------------- conditional reduction ---
// Outcome masks: one 0/1 diagonal per measured mode (diagonal in photon
// number by construction).
VecR mask_exact(int dim, int n);
VecR mask_zero(int dim);
VecR mask_odd(int dim);
VecR mask_even_nonzero(int dim);
VecR mask_any(int dim);

struct ConditionResult {
    double probability = 0.0;
    FockVector state;   // kept modes, renormalized (empty amps if flagged)
    bool empty = false; // probability below kEmptyOutcomeTol
};

// Projects the measured modes onto the masked counts.  The kept-mode
// remainder must come out pure (our protocols guarantee it: every accepted
// count feeds the same kept-mode ray); throws sim_error otherwise.
ConditionResult condition_on_outcome(const FockVector& state,
                                     const std::vector<int>& measured_modes,
                                     const std::vector<VecR>& outcome_masks);

namespace detail {

// Index bookkeeping for splitting modes into (measured, kept).
struct SubspaceIndexer {
    std::vector<int> measured_modes;
    std::vector<int> kept_modes;
    std::vector<int> measured_dims;
    std::vector<int> kept_dims;
    Eigen::Index measured_size = 1;
    Eigen::Index kept_size = 1;
    // flattened-amp offsets: amp index = measured_offsets[p] + kept_offsets[q]
    std::vector<Eigen::Index> measured_offsets;
    std::vector<Eigen::Index> kept_offsets;

    SubspaceIndexer(const FockVector& state, std::vector<int> measured);
    // decode measured pattern id -> per-mode counts
    std::vector<int> counts_of(Eigen::Index pattern) const;
};

// Cached unitary blocks of a beamsplitter at equal mode dims d: block N acts
// on basis |j, N-j> with j = max(0,N-d+1)..min(N,d-1).
const std::vector<MatC>& beamsplitter_blocks(int d, const BeamsplitterSpec& spec);

}  // namespace detail

}  // namespace catsim
