#include "catsim/detection.hpp"

#include <cmath>

namespace catsim {

OutcomeClass classify(int count) {
    if (count < 0) throw sim_error("classify: negative photon count");
    if (count == 0) return OutcomeClass::Zero;
    return count % 2 ? OutcomeClass::Odd : OutcomeClass::EvenNonzero;
}

const char* to_string(OutcomeClass c) {
    switch (c) {
        case OutcomeClass::Zero: return "zero";
        case OutcomeClass::Odd: return "odd";
        default: return "even_nonzero";
    }
}

MatR detection_kernel(const DetectorModel& model) {
    if (model.n_max < 0)
        throw sim_error("detection_kernel: n_max unresolved (pass an explicit cutoff)");
    int d = model.n_max + 1;
    MatR B = MatR::Zero(d, d);
    B(0, 0) = 1.0;
    for (int m = 1; m < d; ++m) {
        B(0, m) = (1.0 - model.eta) * B(0, m - 1);
        for (int k = 1; k <= m; ++k)
            B(k, m) = (1.0 - model.eta) * B(k, m - 1) + model.eta * B(k - 1, m - 1);
    }
    return B;
}

std::vector<VecR> lossy_povm(const DetectorModel& model) {
    MatR B = detection_kernel(model);
    std::vector<VecR> povm;
    povm.reserve(static_cast<size_t>(model.n_max + 1));
    for (int k = 0; k <= model.n_max; ++k) povm.push_back(B.row(k));
    return povm;
}

VecR class_weights(const DetectorModel& model, OutcomeClass c) {
    MatR B = detection_kernel(model);
    VecR w = VecR::Zero(model.n_max + 1);
    for (int k = 0; k <= model.n_max; ++k)
        if (classify(k) == c) w += B.row(k).transpose();
    return w;
}

MeasurementTable::MeasurementTable(const FockVector& state, std::vector<int> measured,
                                   const DetectorModel& model)
    : state_(state), model_(model), ix_(state, std::move(measured)) {
    if (ix_.kept_modes.size() != 1)
        throw dim_mismatch_error("measure_modes: exactly one kept mode expected");
    kept_dim_ = ix_.kept_dims[0];
    if (model_.n_max < 0) model_.n_max = ix_.measured_dims.at(0) - 1;
    for (int d : ix_.measured_dims)
        if (d != model_.n_max + 1)
            throw dim_mismatch_error("measure_modes: mode cutoff does not match n_max + 1");
    kernel_ = detection_kernel(model_);

    // true-count norm^2 tensor over measured patterns, then one kernel
    // contraction per measured axis turns it into reported probabilities
    probs_.resize(ix_.measured_size);
    for (Eigen::Index p = 0; p < ix_.measured_size; ++p) {
        double n2 = 0.0;
        Eigen::Index off = ix_.measured_offsets[static_cast<size_t>(p)];
        for (Eigen::Index q = 0; q < ix_.kept_size; ++q)
            n2 += std::norm(state_.amps[off + ix_.kept_offsets[static_cast<size_t>(q)]]);
        probs_[p] = n2;
    }
    int axes = static_cast<int>(ix_.measured_dims.size());
    Eigen::Index inner = 1;
    VecR x(model_.n_max + 1), y(model_.n_max + 1);
    for (int a = axes - 1; a >= 0; --a) {
        int d = ix_.measured_dims[static_cast<size_t>(a)];
        Eigen::Index outer = ix_.measured_size / (inner * d);
        for (Eigen::Index o = 0; o < outer; ++o)
            for (Eigen::Index i = 0; i < inner; ++i) {
                Eigen::Index base = o * d * inner + i;
                for (int n = 0; n < d; ++n) x[n] = probs_[base + n * inner];
                y.noalias() = kernel_ * x;
                for (int n = 0; n < d; ++n) probs_[base + n * inner] = y[n];
            }
        inner *= d;
    }
}

Eigen::Index MeasurementTable::pattern_of(const std::vector<int>& counts) const {
    if (counts.size() != ix_.measured_dims.size())
        throw dim_mismatch_error("count pattern arity mismatch");
    Eigen::Index p = 0;
    for (size_t a = 0; a < counts.size(); ++a) {
        if (counts[a] < 0 || counts[a] >= ix_.measured_dims[a])
            throw dim_mismatch_error("count outside detector range");
        p = p * ix_.measured_dims[a] + counts[a];
    }
    return p;
}

double MeasurementTable::probability(const std::vector<int>& counts) const {
    return probs_[pattern_of(counts)];
}

MixedState MeasurementTable::conditional(const std::vector<int>& counts) const {
    double p = probability(counts);
    if (p < kEmptyOutcomeTol)
        throw sim_error("conditional state requested for a near-zero outcome");
    MatC rho = MatC::Zero(kept_dim_, kept_dim_);
    VecC s(kept_dim_);
    // walk true patterns componentwise >= the reported counts
    for (Eigen::Index m = 0; m < ix_.measured_size; ++m) {
        auto true_counts = ix_.counts_of(m);
        double w = 1.0;
        for (size_t a = 0; a < counts.size(); ++a)
            w *= kernel_(counts[a], true_counts[a]);
        if (w <= 0.0) continue;
        Eigen::Index off = ix_.measured_offsets[static_cast<size_t>(m)];
        for (Eigen::Index q = 0; q < ix_.kept_size; ++q)
            s[q] = state_.amps[off + ix_.kept_offsets[static_cast<size_t>(q)]];
        rho.noalias() += w * (s * s.adjoint());
    }
    return MixedState(kept_dim_, rho / p);
}

double MeasurementTable::class_probability(const std::vector<OutcomeClass>& classes) const {
    if (classes.size() != ix_.measured_dims.size())
        throw dim_mismatch_error("class pattern arity mismatch");
    double p = 0.0;
    for (Eigen::Index q = 0; q < ix_.measured_size; ++q) {
        auto counts = ix_.counts_of(q);
        bool hit = true;
        for (size_t a = 0; a < classes.size(); ++a)
            if (classify(counts[a]) != classes[a]) { hit = false; break; }
        if (hit) p += probs_[q];
    }
    return p;
}

MixedState MeasurementTable::class_conditional(const std::vector<OutcomeClass>& classes) const {
    double p = class_probability(classes);
    if (p < kEmptyOutcomeTol)
        throw sim_error("conditional state requested for a near-zero outcome class");
    std::vector<VecR> w;
    for (auto c : classes) w.push_back(class_weights(model_, c));
    MatC rho = MatC::Zero(kept_dim_, kept_dim_);
    VecC s(kept_dim_);
    for (Eigen::Index m = 0; m < ix_.measured_size; ++m) {
        auto true_counts = ix_.counts_of(m);
        double weight = 1.0;
        for (size_t a = 0; a < classes.size(); ++a)
            weight *= w[a][true_counts[a]];
        if (weight <= 1e-300) continue;
        Eigen::Index off = ix_.measured_offsets[static_cast<size_t>(m)];
        for (Eigen::Index q = 0; q < ix_.kept_size; ++q)
            s[q] = state_.amps[off + ix_.kept_offsets[static_cast<size_t>(q)]];
        rho.noalias() += weight * (s * s.adjoint());
    }
    return MixedState(kept_dim_, rho / p);
}

MeasurementTable measure_modes(const FockVector& state,
                               const std::vector<int>& measured_modes,
                               const DetectorModel& model) {
    return MeasurementTable(state, measured_modes, model);
}

}  // namespace catsim
