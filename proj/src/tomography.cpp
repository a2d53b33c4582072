#include "ddchan/tomography.hpp"

#include <cmath>

#include "ddchan/rng.hpp"

namespace ddchan {

Correlation correlation_of(const SettingCounts& c) {
    return from_counts(c.n11, c.n21, c.n12, c.n22);
}

ExperimentRecord simulate_experiment(const QubitChannel& ch, long shots,
                                     std::uint64_t seed) {
    if (shots < 0) throw OutOfRangeError("shots must be >= 0");
    if (!is_completely_positive(ch))
        throw NotCompletelyPositiveError("cannot simulate a non-CP channel");

    ExperimentRecord rec;
    rec.shots = shots;
    rec.seed = seed;
    rec.source = RecordSource::Simulated;
    for (int k = 1; k <= 3; ++k) {
        for (int l = 1; l <= 3; ++l) {
            const double a = ch.A(l - 1, k - 1);
            const double b = ch.b[l - 1];
            double p1 = (1.0 + a + b) / 2.0;  // probe +e_k
            double p2 = (1.0 - a + b) / 2.0;  // probe -e_k
            p1 = std::clamp(p1, 0.0, 1.0);
            p2 = std::clamp(p2, 0.0, 1.0);
            SettingCounts& c = rec.at(k, l);
            c.present = true;
            if (shots == 0) {
                c.n11 = p1;
                c.n21 = 1.0 - p1;
                c.n12 = p2;
                c.n22 = 1.0 - p2;
            } else {
                const long k1 = rng::binomial(rng::stream_key(seed, k, l, 1), shots, p1);
                const long k2 = rng::binomial(rng::stream_key(seed, k, l, 2), shots, p2);
                c.n11 = static_cast<double>(k1);
                c.n21 = static_cast<double>(shots - k1);
                c.n12 = static_cast<double>(k2);
                c.n22 = static_cast<double>(shots - k2);
            }
        }
    }
    return rec;
}

ExperimentRecord simulate_experiment(const CanonicalChannel& ch, long shots,
                                     std::uint64_t seed) {
    return simulate_experiment(to_affine(ch), shots, seed);
}

QubitChannel linear_inversion(const ExperimentRecord& rec) {
    if (!rec.complete())
        throw MissingPairError("record is missing (probe, measurement) settings");

    QubitChannel ch;
    for (int l = 1; l <= 3; ++l) {
        double b_sum = 0.0;
        for (int k = 1; k <= 3; ++k) {
            const Correlation p = correlation_of(rec.at(k, l));
            ch.A(l - 1, k - 1) = p.p11() - p.p12();
            b_sum += p.p11() + p.p12() - 1.0;
        }
        ch.b[l - 1] = b_sum / 3.0;
    }
    return ch;
}

Canonicalization tomographic_reconstruction(const ExperimentRecord& rec,
                                            double null_tol, C3Mode mode) {
    return canonicalize(linear_inversion(rec), null_tol, mode);
}

}  // namespace ddchan
