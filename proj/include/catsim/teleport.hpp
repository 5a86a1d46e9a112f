#pragma once

// Coherent-state teleportation: split an odd-cat (or squeezed-photon)
// resource into an entangled pair, mix the input qubit with one half on a
// 50:50 splitter, count both ports, and correct the surviving half based on
// the (class, class) pattern.  Z corrections have no physical implementation
// in this toolkit and are tracked as bookkeeping against a sign-flipped
// reference, exactly like the retry argument that motivates P_succ.

#include <limits>

#include "catsim/detection.hpp"
#include "catsim/states.hpp"

namespace catsim {

enum class Correction { None, X, Z, XZ, Fail, Other };

struct BellOutcome {
    OutcomeClass first;   // differenced port
    OutcomeClass second;  // summed port
    Correction correction;
};

// (Zero,Odd)->None, (Odd,Zero)->X, (Zero,EvenNonzero)->Z,
// (EvenNonzero,Zero)->XZ, (Zero,Zero)->Fail, anything else -> Other
Correction correction_for(OutcomeClass first, OutcomeClass second);
const char* to_string(Correction c);

struct TeleportReport {
    struct Route {
        double probability = 0.0;
        // fidelity against the corrected reference; NaN when the route is empty
        double fidelity = std::numeric_limits<double>::quiet_NaN();
        bool empty = true;
    };
    Route none, x, z, xz, fail, other;

    double p_odd = 0.0;    // (Zero,Odd) + (Odd,Zero)
    double p_even = 0.0;   // (Zero,EvenNonzero) + (EvenNonzero,Zero)
    double p_fail = 0.0;   // (Zero,Zero)
    double p_other = 0.0;  // both ports lit
    double p_succ = 0.0;   // 1 - 2(p_fail - p_fail^2), from the simulated p_fail
    double probability_sum = 0.0;

    const Route& route(Correction c) const;
};

// working cutoff: the resource source mode holds amplitude sqrt(2) alpha, and
// squeezed tails outlast the Poisson rule
int teleport_dim(double alpha, const ResourceKind& kind);

// source (odd cat of size sqrt(2) alpha, or the squeezed photon) plus vacuum
// through the real 50:50 splitter; exact cats give |a,a> - |-a,-a> normalized
FockVector bell_resource(double alpha, const ResourceKind& kind, int dim);

// full circuit via the generic Fock primitives (reference path)
TeleportReport teleport(const QubitSpec& input, const ResourceKind& kind,
                        const DetectorModel& detector);

// closed-form failure probability of the exact-cat teleporter
double p_fail_closed(const QubitSpec& input);
// 1 - 2(P_fail - P_fail^2)
double p_succ_closed(const QubitSpec& input);

struct MinPSucc {
    double value;
    double theta;
    double phi;
};
// grid over theta in [0,pi), phi in [0,2pi) plus coordinate-descent polish
MinPSucc min_p_succ(double alpha, int grid_resolution);

// two chained exact-cat rounds with the pending Z tracked on the round-two
// input; returns the simulated probability of (even, even).  Note the second
// round sees the sign-flipped qubit, so this is P_even(input) *
// P_even(Z input), which for most inputs is not P_even squared.
double concatenation_check(const QubitSpec& input);

// Precomputed sweep engine.  The pre-measurement state is linear in (mu, nu),
// so both splitter passes are done once per (alpha, resource, dim) and each
// input/detector evaluation reduces to O(dim^2) table algebra.
class TeleportEngine {
public:
    TeleportEngine(double alpha, const ResourceKind& kind, int dim);

    int dim() const { return d_; }
    TeleportReport run(const QubitSpec& input, double eta) const;

private:
    int d_;
    double alpha_;
    double ov_;         // truncated <a|-a>, kept for bit-compat with the generic path
    // kept-mode contractions of T_x = BS01(|x a> (x) bell), x in {+,-}
    MatR g_pp_, g_mm_;  // <T_x(m,:), T_x(m,:)>
    MatC g_pm_;         // <T_+(m,:), T_-(m,:)>
    // reference overlaps u[x][y](m) = <coh(x a)|T_y(m,:)>
    MatC u_[2][2];
};

}  // namespace catsim
