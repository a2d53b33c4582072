#pragma once

#include <array>
#include <cstdint>

#include "ddchan/channel.hpp"
#include "ddchan/correlation.hpp"

// The Pauli-eigenstate probe/measurement experiment: probes are the +-1
// eigenstates of sigma_k, measurements project onto the eigenbasis of
// sigma_l, giving p_{1|i}^{(k,l)} = (1 +- A_{l,k} + b_l)/2. Linear inversion
// reads the channel back off these nine settings.

namespace ddchan {

enum class RecordSource { Simulated, Ingested };

struct SettingCounts {
    // real-valued so the exact-probability mode (shots = 0) shares the type;
    // integer-valued whenever shots >= 1
    double n11 = 0.0, n21 = 0.0, n12 = 0.0, n22 = 0.0;
    bool present = false;
};

struct ExperimentRecord {
    std::array<SettingCounts, 9> counts{};  // index (k-1)*3 + (l-1)
    long shots = 0;                         // 0 = exact probabilities
    std::uint64_t seed = 0;
    RecordSource source = RecordSource::Simulated;

    SettingCounts& at(int k, int l) { return counts[(k - 1) * 3 + (l - 1)]; }
    const SettingCounts& at(int k, int l) const {
        return counts[(k - 1) * 3 + (l - 1)];
    }
    bool complete() const {
        for (const auto& c : counts)
            if (!c.present) return false;
        return true;
    }
};

Correlation correlation_of(const SettingCounts& c);

// Runs all nine (probe axis, measurement axis) settings. shots = 0 stores the
// exact Born probabilities; otherwise counts are drawn binomially from
// independent streams keyed by (seed, k, l, i), so results do not depend on
// evaluation order.
ExperimentRecord simulate_experiment(const QubitChannel& ch, long shots,
                                     std::uint64_t seed);
ExperimentRecord simulate_experiment(const CanonicalChannel& ch, long shots,
                                     std::uint64_t seed);

// A_{l,k} = p_{1|1}^{(k,l)} - p_{1|2}^{(k,l)};
// b_l averaged over the three probe axes (exact on noiseless data).
QubitChannel linear_inversion(const ExperimentRecord& rec);

Canonicalization tomographic_reconstruction(const ExperimentRecord& rec,
                                            double null_tol = kNullTolDefault,
                                            C3Mode mode = C3Mode::ZeroTransverse);

}  // namespace ddchan
