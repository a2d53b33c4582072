#pragma once

#include <string>
#include <vector>

#include "ddchan/channel.hpp"
#include "ddchan/compat_set.hpp"
#include "ddchan/inference.hpp"
#include "ddchan/tomography.hpp"

// File formats:
//   channel JSON   {"A": [[...3x3...]], "b": [bx,by,bz]}  or  {"d":[d1,d2,d3],"c3":c3}
//   record JSON    {"shots":8192,"seed":1,"counts":{"k1l1":[n11,n21,n12,n22],...}}
//   counts CSV     header probe_axis,meas_axis,n11,n21,n12,n22 (axes 1..3)
//   result JSON    {"d":[lo,hi,"interval"],"d2":...,"d3":...,"c3":...,"mu":...,
//                   "regime":"...","identified":[...],"area":...,"converged":true}
//   boundary CSV   header x,y; polygon vertices
//   plot SVG       positive-quadrant boundaries plus data overlays

namespace ddchan {

inline constexpr const char* kToolVersion = "0.1.0";

// Either form of the channel JSON. When canonical parameters are present the
// affine form is derived from them.
struct ChannelSpec {
    QubitChannel affine;
    bool has_canonical = false;
    CanonicalChannel canonical;
};

std::string channel_to_json(const QubitChannel& ch);
std::string channel_to_json(const CanonicalChannel& ch);
std::string reconstruction_to_json(const Canonicalization& rec);
ChannelSpec channel_from_json(const std::string& text);

std::string record_to_json(const ExperimentRecord& rec);
ExperimentRecord record_from_json(const std::string& text);

ExperimentRecord record_from_csv(const std::string& text);
std::string record_to_csv(const ExperimentRecord& rec);

std::string result_to_json(const InferenceResult& res);

std::string boundary_to_csv(const std::vector<XYPoint>& polygon);

struct PlotSeries {
    std::string label;
    std::vector<XYPoint> boundary;  // polygon vertices (drawn in the positive quadrant)
    std::vector<XYPoint> points;    // data overlay
};
std::string render_svg(const std::vector<PlotSeries>& series);

struct RunManifest {
    std::string command;
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    std::vector<std::pair<std::string, std::string>> config;
    std::uint64_t seed = 0;
    bool has_seed = false;
};
std::string manifest_to_json(const RunManifest& m);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace ddchan
