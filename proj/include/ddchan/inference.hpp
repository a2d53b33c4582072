#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ddchan/channel.hpp"
#include "ddchan/compat_set.hpp"
#include "ddchan/correlation.hpp"
#include "ddchan/tomography.hpp"

// Minimal-volume data-driven inference: among all CP dihedrally-covariant
// channels whose compatible set contains every observed correlation, pick the
// one whose set has the smallest area. The area never depends on d1, so d1 is
// reported only through its CP feasibility interval.

namespace ddchan {

enum class Regime { MuNonpositive, MuMiddle, MuLarge, PauliLike };

const char* regime_name(Regime r);

struct InferenceConfig {
    int grid_resolution = 33;          // cells per axis in the seeding grid
    double refine_tolerance = 1e-6;    // stop when the search step drops below
    double membership_tolerance = 1e-9;
    long max_iterations = 10000;       // pattern-search passes
};

struct InferenceResult {
    CanonicalChannel channel;  // d1 set to the top of its feasible interval
    Interval d1_interval;
    Regime regime = Regime::PauliLike;
    std::vector<std::string> identified;
    double objective = 0.0;  // area of the reconstructed set
    long iterations = 0;
    bool converged = false;
    std::optional<double> mu_value;
};

// A data point plus the membership slack it is entitled to. Finite-shot
// frequencies get two standard errors per coordinate; exact data gets the
// configured tolerance.
struct ObservedPoint {
    XYPoint pt;
    double tol = 1e-9;
};

bool corroborate(const Correlation& p, const CanonicalChannel& ch,
                 double tol = 1e-9);

InferenceResult dd_infer(const std::vector<ObservedPoint>& data,
                         const InferenceConfig& cfg = {});
InferenceResult dd_infer(const std::vector<XYPoint>& data,
                         const InferenceConfig& cfg = {});
// Statistical tolerances derived from the record's shot counts; exact-mode
// records (shots = 0) use the configured membership tolerance.
InferenceResult dd_infer(const ExperimentRecord& rec,
                         const InferenceConfig& cfg = {});

std::vector<ObservedPoint> observed_points(const ExperimentRecord& rec,
                                           double base_tol = 1e-9);

// Which canonical parameters the data pins down, by regime of mu.
std::vector<std::string> identified_parameters(const CanonicalChannel& ch);

}  // namespace ddchan
