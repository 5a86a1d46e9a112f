#pragma once

// Sweep harness: turns the simulator into reproducible experiment bundles.
// Each run emits a CSV table (fixed 17-significant-digit scientific
// notation, byte-reproducible), a JSON manifest with the resolved config,
// cutoffs and discrepancy report, and a plain-text plot script.  Grid points
// are computed in parallel and merged in index order, so worker count never
// changes the bytes.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "catsim/hadamard.hpp"

namespace catsim {

inline constexpr const char* kVersion = "0.1.0";

// invalid configuration (CLI exit code 2, vs 3 for numerical failures)
struct config_error : sim_error {
    using sim_error::sim_error;
};

// how squeezing is chosen for squeezed-photon resources: maximize the
// closed-form overlap numerically, or use the printed optimum formula
// (CLI/CSV token "eq8") with the constructive sign
enum class RPolicy { numeric, printed };

struct RunConfig {
    std::string experiment;      // fig1|fig3|fig4|fig5|fig6|fig7|fig9|fig11|fig12 or custom name
    std::vector<double> alphas;  // empty = experiment default
    std::vector<double> etas;    // empty = experiment default
    int grid = 0;                // points per swept axis; 0 = experiment default
    std::optional<ResourceKind::Kind> resource;  // unset = experiment default
    RPolicy r_policy = RPolicy::numeric;
    int dim_override = 0;        // 0 = cutoff policy decides
    std::string out_dir = "runs";
    int workers = 0;             // 0 = hardware concurrency
    long seed = 0;               // reserved; every sweep is deterministic

    // ids run_figure accepts
    static const std::vector<std::string>& figure_ids();
};

// JSON -> RunConfig; unknown keys rejected, flags are merged by the CLI
RunConfig config_from_json(const std::string& text);
// throws config_error on out-of-range fields (alpha <= 0, eta outside (0,1], ...)
void validate(const RunConfig& cfg);
// resolve empty fields to the experiment's defaults (also validates)
RunConfig with_defaults(RunConfig cfg);

// resource of the requested family sized for a cat of `cat_size`; squeezed
// photons get r from the policy
ResourceKind resolve_resource(ResourceKind::Kind family, RPolicy policy,
                              double cat_size);

struct SweepFiles {
    std::string csv;
    std::string manifest;
    std::string plot;
    std::size_t rows = 0;
};

// the figure bundles:
//   fig1   closed-form overlap optimum vs alpha (numeric and printed curves)
//   fig3   closed-form teleport failure probability over the input grid
//   fig4   worst-case retry success probability vs alpha
//   fig5   teleport route fidelity/probability surfaces (squeezed resource)
//   fig6   fig5 at 90% counter efficiency
//   fig7   worst-case teleport fidelity vs counter efficiency
//   fig9   accepted-count gate probability vs alpha, simulated vs closed form
//   fig11  readout fringe vs displacement (squeezed resource)
//   fig12  gate-probability fringe vs displacement
SweepFiles run_figure(const RunConfig& cfg);

// cross-product teleport sweep (alpha x eta x input grid) under a custom name
SweepFiles run_custom(const RunConfig& cfg);

namespace detail {

// deterministic parallel map: results land in index order regardless of
// worker count; exceptions from workers rethrow on the caller
void parallel_for(std::size_t n, int workers,
                  const std::function<void(std::size_t)>& fn);

}  // namespace detail

}  // namespace catsim
