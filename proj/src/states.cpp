#include "catsim/states.hpp"

#include <cmath>

namespace catsim {

double qubit_norm_sq(const QubitSpec& s) {
    double mu = qubit_mu(s);
    cxd nu = qubit_nu(s);
    return mu * mu + std::norm(nu) +
           2.0 * std::exp(-2.0 * s.alpha * s.alpha) * (nu * mu).real();
}

FockVector cat_state(const CatSpec& spec, int dim) {
    if (spec.alpha <= 0.0) throw sim_error("cat_state: alpha must be > 0");
    auto plus = coherent_state(spec.alpha, dim);
    auto minus = coherent_state(-spec.alpha, dim);
    double sign = spec.parity == CatParity::odd ? -1.0 : 1.0;
    VecC v = plus.amps + sign * minus.amps;
    return FockVector({dim}, v / v.norm(),
                      std::max(plus.truncation_deficit, minus.truncation_deficit));
}

FockVector qubit_state(const QubitSpec& spec, int dim) {
    if (spec.alpha <= 0.0) throw sim_error("qubit_state: alpha must be > 0");
    if (qubit_norm_sq(spec) < 1e-12)
        throw normalization_error("qubit_state: normalization collapsed (mu ~ -nu at small alpha)");
    auto plus = coherent_state(spec.alpha, dim);
    auto minus = coherent_state(-spec.alpha, dim);
    VecC v = qubit_mu(spec) * plus.amps + qubit_nu(spec) * minus.amps;
    return FockVector({dim}, v / v.norm(),
                      std::max(plus.truncation_deficit, minus.truncation_deficit));
}

FockVector resource_state(const ResourceKind& kind, int dim) {
    if (kind.kind == ResourceKind::Kind::exact_cat)
        return cat_state({kind.alpha_cat, CatParity::odd}, dim);
    return squeezed_photon(kind.r, dim);
}

double cat_fidelity_closed(double alpha, double r) {
    if (alpha <= 0.0) throw sim_error("cat_fidelity_closed: alpha must be > 0");
    double a2 = alpha * alpha;
    double ch = std::cosh(r);
    return std::exp(-a2) / (2.0 * (1.0 - std::exp(-2.0 * a2))) * 4.0 * a2 /
           (ch * ch * ch) * std::exp(-a2 * std::tanh(r));
}

double cat_fidelity_log_slope(double alpha, double r) {
    double a2 = alpha * alpha, t = std::tanh(r);
    return a2 * t * t - 3.0 * t - a2;
}

double optimal_r_printed(double alpha) {
    double x = std::sqrt(0.5 + std::sqrt(9.0 + 4.0 * alpha * alpha) / 6.0);
    return std::acosh(x);
}

OptimalR optimal_r_numeric(double alpha) {
    if (alpha <= 0.0) throw sim_error("optimal_r_numeric: alpha must be > 0");
    auto F = [&](double r) { return cat_fidelity_closed(alpha, r); };

    // coarse scan over the admissible range to bracket the maximum
    const double lo = -5.0, hi = 5.0, step = 0.05;
    double best_r = lo, best_f = F(lo);
    for (double r = lo + step; r <= hi + 1e-12; r += step) {
        double f = F(r);
        if (f > best_f) { best_f = f; best_r = r; }
    }
    double a = std::max(lo, best_r - step), b = std::min(hi, best_r + step);

    // golden section down to 1e-9 in r
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = F(c), fd = F(d);
    while (b - a > 1e-9) {
        if (fc > fd) { b = d; d = c; fd = fc; c = b - gr * (b - a); fc = F(c); }
        else { a = c; c = d; fc = fd; d = a + gr * (b - a); fd = F(d); }
    }
    double r_gold = 0.5 * (a + b);

    // settle the digits by bisecting the stationary condition near the bracket
    double xlo = r_gold - 1e-3, xhi = r_gold + 1e-3;
    double glo = cat_fidelity_log_slope(alpha, xlo);
    double ghi = cat_fidelity_log_slope(alpha, xhi);
    if (glo * ghi > 0.0)
        throw sim_error("optimal_r_numeric: stationary condition does not bracket the optimum");
    for (int it = 0; it < 200 && xhi - xlo > 1e-15; ++it) {
        double mid = 0.5 * (xlo + xhi);
        double gm = cat_fidelity_log_slope(alpha, mid);
        if (glo * gm <= 0.0) { xhi = mid; ghi = gm; }
        else { xlo = mid; glo = gm; }
    }
    double r_opt = 0.5 * (xlo + xhi);
    if (std::abs(r_opt - r_gold) > 1e-6)
        throw sim_error("optimal_r_numeric: golden section and stationary root disagree");
    return {r_opt, F(r_opt)};
}

}  // namespace catsim
