#pragma once

// Named states of the coherent-state encoding: cat superpositions, logical
// qubits mu|a> + nu|-a>, and the squeezed-photon stand-in for an odd cat,
// together with the closed-form overlap and its optimal squeezing.

#include <complex>

#include "catsim/fock.hpp"

namespace catsim {

// logical qubit mu|a> + nu|-a> with mu = cos(theta), nu = e^{i phi} sin(theta)
struct QubitSpec {
    double alpha;  // coherent amplitude > 0
    double theta;
    double phi;
};

inline double qubit_mu(const QubitSpec& s) { return std::cos(s.theta); }
inline cxd qubit_nu(const QubitSpec& s) {
    return std::exp(cxd(0, s.phi)) * std::sin(s.theta);
}
// |mu|^2 + |nu|^2 + 2 e^{-2 a^2} Re(nu mu*), the squared norm before scaling
double qubit_norm_sq(const QubitSpec& s);

enum class CatParity { odd, even };

struct CatSpec {
    double alpha;  // > 0
    CatParity parity;
};

// odd cats get substituted by squeezed photons where the protocol allows it
struct ResourceKind {
    enum class Kind { exact_cat, squeezed_photon };
    Kind kind;
    double alpha_cat = 0.0;  // meaningful for exact_cat
    double r = 0.0;          // meaningful for squeezed_photon

    static ResourceKind exact_cat(double alpha_cat) {
        return {Kind::exact_cat, alpha_cat, 0.0};
    }
    static ResourceKind squeezed_photon(double r) {
        return {Kind::squeezed_photon, 0.0, r};
    }
};

// raised when a qubit's normalization collapses (alpha -> 0 with mu ~ -nu)
struct normalization_error : sim_error {
    using sim_error::sim_error;
};

FockVector cat_state(const CatSpec& spec, int dim);
FockVector qubit_state(const QubitSpec& spec, int dim);
FockVector resource_state(const ResourceKind& kind, int dim);

// overlap of squeezed photon with the odd cat of size alpha, closed form:
//   e^{-a^2}/(2(1-e^{-2a^2})) * 4a^2/cosh^3 r * e^{-a^2 tanh r}
// r is signed; the constructive optimum sits at r < 0 under our sign
// convention for the squeezed series.
double cat_fidelity_closed(double alpha, double r);
// d(log F)/dr = a^2 tanh^2 r - 3 tanh r - a^2; dF/dr follows by scaling by F
double cat_fidelity_log_slope(double alpha, double r);

// the published optimum formula, transcribed as printed (non-negative);
// kept for the built-in discrepancy report against the numeric optimum
double optimal_r_printed(double alpha);

struct OptimalR {
    double r_opt;  // signed
    double f_max;
};
// maximizes cat_fidelity_closed over r in [-5, 5]: coarse bracket, golden
// section to 1e-9, then bisection on the stationary condition to settle the
// remaining digits; the two stages must agree or this throws
OptimalR optimal_r_numeric(double alpha);

}  // namespace catsim
