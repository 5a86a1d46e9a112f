#pragma once

// Photon counting with optional inefficiency.  Loss lives only in the
// detectors: reported count k relates to true count m through the binomial
// kernel B(k, m) = C(m, k) eta^k (1 - eta)^(m - k).  The kept mode stays
// lossless, so mixedness is confined to one small density matrix.

#include <vector>

#include "catsim/fock.hpp"

namespace catsim {

struct DetectorModel {
    double eta;  // efficiency in [0, 1]
    int n_max;   // largest resolvable count, = cutoff - 1 of the measured modes;
                 // -1 asks measure_modes to adopt the modes' own cutoff

    DetectorModel(double eta_, int n_max_ = -1) : eta(eta_), n_max(n_max_) {
        if (!(eta >= 0.0 && eta <= 1.0))
            throw sim_error("detector efficiency must lie in [0, 1]");
        if (n_max < -1) throw sim_error("n_max must be >= 0 (or -1 to match cutoff)");
    }
};

enum class OutcomeClass { Zero, Odd, EvenNonzero };

OutcomeClass classify(int count);
const char* to_string(OutcomeClass c);

// B(k, m), built by the loss recursion B(k,m) = (1-eta)B(k,m-1) + eta B(k-1,m-1)
MatR detection_kernel(const DetectorModel& model);

// diagonal POVM elements Pi_k, k = 0..n_max; rows of the kernel
std::vector<VecR> lossy_povm(const DetectorModel& model);

// weight for a true count m to land in the given class of reported counts
VecR class_weights(const DetectorModel& model, OutcomeClass c);

// Outcome table over reported count patterns.  Probabilities are computed
// eagerly (kernel contraction along each measured axis); the conditional
// density matrix of the kept mode is assembled on demand so that a big table
// never materializes states nobody asks for.
class MeasurementTable {
public:
    MeasurementTable(const FockVector& state, std::vector<int> measured,
                     const DetectorModel& model);

    int kept_dim() const { return kept_dim_; }
    const std::vector<int>& measured_dims() const { return ix_.measured_dims; }
    Eigen::Index num_patterns() const { return ix_.measured_size; }
    std::vector<int> counts_of(Eigen::Index pattern) const { return ix_.counts_of(pattern); }

    double probability(const std::vector<int>& counts) const;
    double probability(Eigen::Index pattern) const { return probs_[pattern]; }
    double total() const { return probs_.sum(); }
    MixedState conditional(const std::vector<int>& counts) const;

    // aggregation over a class of reported counts per measured mode
    double class_probability(const std::vector<OutcomeClass>& classes) const;
    MixedState class_conditional(const std::vector<OutcomeClass>& classes) const;

private:
    Eigen::Index pattern_of(const std::vector<int>& counts) const;

    FockVector state_;
    DetectorModel model_;
    detail::SubspaceIndexer ix_;
    MatR kernel_;
    int kept_dim_;
    VecR probs_;  // indexed by reported pattern, same layout as true patterns
};

MeasurementTable measure_modes(const FockVector& state,
                               const std::vector<int>& measured_modes,
                               const DetectorModel& model);

}  // namespace catsim
