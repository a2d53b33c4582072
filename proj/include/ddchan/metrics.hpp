#pragma once

#include "ddchan/channel.hpp"
#include "ddchan/polygon.hpp"

namespace ddchan {

// Normalized symmetric-difference pseudometric between the compatible sets of
// two channels,
//   d = (Vol(S0 u S1) - Vol(S0 n S1)) / max(Vol(S0), Vol(S1)),
// evaluated on inscribed polygons with n vertices. The polygon count is
// doubled until the value moves by less than 1e-4, so the returned figure
// carries an empirical convergence certificate.
//
// Both sets degenerate (zero area) is defined as distance 0 when the
// segments coincide and 1 otherwise; every zero-area compatible set is the
// segment [-1, 1] x {0}, so in practice this returns 0.
double symmetric_difference_distance(const CanonicalChannel& c0,
                                     const CanonicalChannel& c1, int n = 4096);

}  // namespace ddchan
