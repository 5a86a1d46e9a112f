#pragma once

// Rotated-splitter gate: the teleporter circuit run with the mixing splitter
// at pi/8 in the symmetric convention and only the joint count (1,1) kept.
// On the coherent-state qubit that count enacts mu|a> + nu|-a>  ->
// (mu + i nu)|a> - (i mu + nu)|-a>, a Hadamard up to Z-type bookkeeping.
// Also here: the closed-form count law, the coherent-difference readout that
// distinguishes |a> from |-a>, and the displacement-fringe sweep.

#include <cmath>
#include <vector>

#include "catsim/teleport.hpp"

namespace catsim {

struct HadamardConfig {
    // symmetric-convention mixing angle; pi/8 is the Hadamard point
    double theta_bs = M_PI / 8;
    // accepted photon counts on the two measured ports
    int accept_n = 1;
    int accept_m = 1;
};

struct GateResult {
    double p_gate = 0.0;
    // conditional output on the kept mode; pure when eta = 1 (a single exact
    // count pattern slices out one ray)
    MixedState output;
    bool empty = true;  // p_gate below kEmptyOutcomeTol; output left zero
};

// input (x) bell pair -> symmetric splitter on the first two modes -> count
// both with `detector` -> keep the (accept_n, accept_m) pattern.  The bell
// pair is sized so each arm carries amplitude alpha; `input` may be anything
// single-mode (the fringe sweep feeds displaced cats through here).
GateResult rotated_hadamard(const FockVector& input, double alpha,
                            const ResourceKind& kind, const HadamardConfig& cfg,
                            const DetectorModel& detector);

// (mu + i nu)|a> - (i mu + nu)|-a>, normalized; throws normalization_error
// when the two branches cancel (mu ~ nu with alpha small)
FockVector hadamard_target(const QubitSpec& input, int dim);

// Closed-form probability of counting (n, m) on the two ports at the
// Hadamard angle, transcribed as printed:
//   (1 - 2 Re{mu* nu e^{-2a^2}})                  a^{2(n+m)} e^{-2a^2}
//   ------------------------------------------- * --------------------
//   (1 + 2 Re{mu* nu e^{-2a^2}}) (1 - e^{-4a^2})         n! m!
// The simulated (1,1) probability is the arbiter of the left factor's
// normalization; the sweep harness reports the measured ratio.
double count_prob_closed(const QubitSpec& input, int n, int m);

// Coherent-difference readout: mix the state with |a> on the real 50:50
// splitter and classify the two counters.  First port dark selects the |a>
// branch (the amplitudes cancel), second port dark selects |-a>.
struct ReadoutResult {
    double p_plus = 0.0;       // first dark, second lit
    double p_minus = 0.0;      // first lit, second dark
    double p_fail = 0.0;       // both dark, plus the both-lit mass
    double p_ambiguous = 0.0;  // both lit (already counted inside p_fail);
                               // exactly zero for states in the qubit span
};

ReadoutResult computational_readout(const FockVector& state, double alpha,
                                    const DetectorModel& detector);
ReadoutResult computational_readout(const MixedState& state, double alpha,
                                    const DetectorModel& detector);

struct FringePoint {
    double delta = 0.0;
    double p_gate = 0.0;
    // readout splits conditioned on gate success; they sum to 1
    double p_plus = 0.0;
    double p_minus = 0.0;
    double p_readout_fail = 0.0;  // includes p_ambiguous
    double p_ambiguous = 0.0;
    bool gate_empty = false;  // gate never fires at this delta
};

// symmetric grid over [-2/alpha, 2/alpha]
std::vector<double> default_delta_grid(double alpha, int points = 81);

// input-mode cutoff for a fringe sweep: the displaced components reach
// amplitude hypot(alpha, delta_max), and squeezed tails outlast the Poisson
// rule, so they get displacement headroom on top of their own minimum
int fringe_input_dim(double alpha, const ResourceKind& input_kind,
                     double delta_max);

// Fringe experiment: take the resource-kind "one" state (odd cat of size
// alpha, or the squeezed photon standing in for it), displace by i delta,
// run the gate, then read the surviving mode out against |a>.  P_plus(delta)
// traces the interference fringe whose visibility degrades with imperfect
// resources and counters.
std::vector<FringePoint> fringe_sweep(double alpha,
                                      const ResourceKind& input_kind,
                                      const ResourceKind& gate_kind,
                                      const std::vector<double>& deltas,
                                      const DetectorModel& gate_detector,
                                      const DetectorModel& readout_detector);

// single-kind convenience: squeezed inputs get a gate resource squeezed for
// the sqrt(2) alpha source (numeric optimum); readout counters stay ideal
std::vector<FringePoint> fringe_sweep(double alpha, const ResourceKind& kind,
                                      const std::vector<double>& deltas,
                                      const DetectorModel& detector);

// (max - min) / (max + min); throws on an empty sample list, returns 0 for
// an all-dark fringe
double visibility(const std::vector<double>& p_samples);

}  // namespace catsim
