#include "ddchan/io.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace ddchan {

using nlohmann::json;

namespace {

json mat3_to_json(const Mat3& m) {
    json rows = json::array();
    for (int i = 0; i < 3; ++i) {
        json row = json::array();
        for (int j = 0; j < 3; ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

Mat3 mat3_from_json(const json& j) {
    if (!j.is_array() || j.size() != 3) throw ValidationError("A must be a 3x3 array");
    Mat3 m;
    for (int i = 0; i < 3; ++i) {
        if (!j[i].is_array() || j[i].size() != 3)
            throw ValidationError("A must be a 3x3 array");
        for (int jx = 0; jx < 3; ++jx) {
            if (!j[i][jx].is_number()) throw ValidationError("A entries must be numbers");
            m(i, jx) = j[i][jx].get<double>();
        }
    }
    return m;
}

Vec3 vec3_from_json(const json& j, const char* name) {
    if (!j.is_array() || j.size() != 3)
        throw ValidationError(std::string(name) + " must be a 3-vector");
    for (int i = 0; i < 3; ++i)
        if (!j[i].is_number())
            throw ValidationError(std::string(name) + " entries must be numbers");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

json parse(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ValidationError("malformed JSON");
    return j;
}

std::string setting_key(int k, int l) {
    return "k" + std::to_string(k) + "l" + std::to_string(l);
}

std::string timestamp_utc() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&t, &tm_utc);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

}  // namespace

std::string channel_to_json(const QubitChannel& ch) {
    json j;
    j["A"] = mat3_to_json(ch.A);
    j["b"] = {ch.b.x, ch.b.y, ch.b.z};
    return j.dump(2) + "\n";
}

std::string channel_to_json(const CanonicalChannel& ch) {
    json j;
    j["d"] = {ch.d1, ch.d2, ch.d3};
    j["c3"] = ch.c3;
    return j.dump(2) + "\n";
}

std::string reconstruction_to_json(const Canonicalization& rec) {
    json j;
    j["d"] = {rec.channel.d1, rec.channel.d2, rec.channel.d3};
    j["c3"] = rec.channel.c3;
    j["residual"] = rec.residual;
    if (rec.degenerate) j["degenerate_direction"] = true;
    return j.dump(2) + "\n";
}

ChannelSpec channel_from_json(const std::string& text) {
    const json j = parse(text);
    ChannelSpec spec;
    // inference results store d as [lo, hi, "interval"] plus explicit d2/d3/c3
    if (j.contains("d") && j["d"].is_array() && j["d"].size() == 3 &&
        j["d"][2].is_string() && j.contains("d2") && j.contains("d3") &&
        j.contains("c3")) {
        spec.canonical = {j["d"][1].get<double>(), j["d2"].get<double>(),
                          j["d3"].get<double>(), j["c3"].get<double>()};
        spec.has_canonical = true;
        spec.affine = to_affine(spec.canonical);
        return spec;
    }
    if (j.contains("d") && j.contains("c3")) {
        const json& d = j["d"];
        if (!d.is_array() || d.size() != 3 || !j["c3"].is_number())
            throw ValidationError("canonical channel needs d (3 values) and c3");
        for (int i = 0; i < 3; ++i)
            if (!d[i].is_number()) throw ValidationError("d entries must be numbers");
        spec.canonical = {d[0].get<double>(), d[1].get<double>(), d[2].get<double>(),
                          j["c3"].get<double>()};
        for (double v : {spec.canonical.d1, spec.canonical.d2, spec.canonical.d3,
                         spec.canonical.c3})
            if (v < 0.0 || v > 1.0)
                throw ValidationError("canonical parameters must lie in [0, 1]");
        spec.has_canonical = true;
        spec.affine = to_affine(spec.canonical);
        return spec;
    }
    if (j.contains("A") && j.contains("b")) {
        spec.affine.A = mat3_from_json(j["A"]);
        spec.affine.b = vec3_from_json(j["b"], "b");
        return spec;
    }
    throw ValidationError("channel JSON needs either {A, b} or {d, c3}");
}

std::string record_to_json(const ExperimentRecord& rec) {
    json counts = json::object();
    for (int k = 1; k <= 3; ++k)
        for (int l = 1; l <= 3; ++l) {
            const SettingCounts& c = rec.at(k, l);
            if (!c.present) continue;
            counts[setting_key(k, l)] = {c.n11, c.n21, c.n12, c.n22};
        }
    json j;
    j["shots"] = rec.shots;
    j["seed"] = rec.seed;
    j["counts"] = counts;
    return j.dump(2) + "\n";
}

ExperimentRecord record_from_json(const std::string& text) {
    const json j = parse(text);
    if (!j.contains("shots") || !j.contains("counts") || !j["counts"].is_object())
        throw ValidationError("record JSON needs shots and counts");
    ExperimentRecord rec;
    rec.shots = j["shots"].get<long>();
    rec.seed = j.value("seed", 0ull);
    rec.source = RecordSource::Ingested;
    for (int k = 1; k <= 3; ++k)
        for (int l = 1; l <= 3; ++l) {
            const std::string key = setting_key(k, l);
            if (!j["counts"].contains(key)) continue;
            const json& row = j["counts"][key];
            if (!row.is_array() || row.size() != 4)
                throw ValidationError("count entries must be 4-arrays");
            SettingCounts& c = rec.at(k, l);
            c.n11 = row[0].get<double>();
            c.n21 = row[1].get<double>();
            c.n12 = row[2].get<double>();
            c.n22 = row[3].get<double>();
            c.present = true;
        }
    return rec;
}

ExperimentRecord record_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("empty counts CSV");
    // tolerate trailing carriage returns
    auto strip = [](std::string s) {
        while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.pop_back();
        return s;
    };
    if (strip(line) != "probe_axis,meas_axis,n11,n21,n12,n22")
        throw ValidationError("counts CSV header must be probe_axis,meas_axis,n11,n21,n12,n22");

    ExperimentRecord rec;
    rec.source = RecordSource::Ingested;
    long shots = -1;
    bool uniform_shots = true;
    while (std::getline(in, line)) {
        line = strip(line);
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string field;
        double vals[6];
        for (int i = 0; i < 6; ++i) {
            if (!std::getline(row, field, ',')) throw ValidationError("short CSV row");
            try {
                vals[i] = std::stod(field);
            } catch (const std::exception&) {
                throw ValidationError("non-numeric CSV field: " + field);
            }
        }
        const int k = static_cast<int>(vals[0]);
        const int l = static_cast<int>(vals[1]);
        if (k < 1 || k > 3 || l < 1 || l > 3)
            throw ValidationError("axes must lie in {1,2,3}");
        SettingCounts& c = rec.at(k, l);
        c.n11 = vals[2];
        c.n21 = vals[3];
        c.n12 = vals[4];
        c.n22 = vals[5];
        c.present = true;
        const double r1 = c.n11 + c.n21;
        const double r2 = c.n12 + c.n22;
        const long row_shots = static_cast<long>(std::llround(std::max(r1, r2)));
        if (shots < 0) shots = row_shots;
        else if (shots != row_shots) uniform_shots = false;
    }
    rec.shots = uniform_shots && shots > 0 ? shots : 0;
    return rec;
}

std::string record_to_csv(const ExperimentRecord& rec) {
    std::ostringstream out;
    out << "probe_axis,meas_axis,n11,n21,n12,n22\n";
    out.precision(17);
    for (int k = 1; k <= 3; ++k)
        for (int l = 1; l <= 3; ++l) {
            const SettingCounts& c = rec.at(k, l);
            if (!c.present) continue;
            out << k << ',' << l << ',' << c.n11 << ',' << c.n21 << ',' << c.n12
                << ',' << c.n22 << '\n';
        }
    return out.str();
}

std::string result_to_json(const InferenceResult& res) {
    json j;
    j["d"] = {res.d1_interval.lo, res.d1_interval.hi, "interval"};
    j["d2"] = res.channel.d2;
    j["d3"] = res.channel.d3;
    j["c3"] = res.channel.c3;
    if (res.mu_value) j["mu"] = *res.mu_value;
    else j["mu"] = nullptr;
    j["regime"] = regime_name(res.regime);
    j["identified"] = res.identified;
    j["area"] = res.objective;
    j["converged"] = res.converged;
    j["iterations"] = res.iterations;
    return j.dump(2) + "\n";
}

std::string boundary_to_csv(const std::vector<XYPoint>& polygon) {
    std::ostringstream out;
    out << "x,y\n";
    out.precision(17);
    for (const XYPoint& p : polygon) out << p.x << ',' << p.y << '\n';
    return out.str();
}

std::string render_svg(const std::vector<PlotSeries>& series) {
    // positive quadrant, x in [0, 1], y in [0, 1.05]
    constexpr double kW = 640.0, kH = 640.0, kPad = 56.0;
    const auto px = [&](double x) { return kPad + x * (kW - 2 * kPad); };
    const auto py = [&](double y) { return kH - kPad - y / 1.05 * (kH - 2 * kPad); };
    static const char* kColors[] = {"#c02020", "#2040c0", "#208040",
                                    "#806010", "#700070"};

    std::ostringstream svg;
    svg.precision(6);
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW
        << "\" height=\"" << kH << "\" viewBox=\"0 0 " << kW << ' ' << kH << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<line x1=\"" << px(0) << "\" y1=\"" << py(0) << "\" x2=\"" << px(1.0)
        << "\" y2=\"" << py(0) << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << px(0) << "\" y1=\"" << py(0) << "\" x2=\"" << px(0)
        << "\" y2=\"" << py(1.0) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << px(0.97) << "\" y=\"" << py(0) + 18
        << "\" font-size=\"13\">x</text>\n";
    svg << "<text x=\"" << px(0) - 18 << "\" y=\"" << py(0.99)
        << "\" font-size=\"13\">y</text>\n";

    int ci = 0;
    double legend_y = kPad;
    for (const PlotSeries& s : series) {
        const char* color = kColors[ci % 5];
        ++ci;
        if (!s.boundary.empty()) {
            // trace the positive-quadrant part of the boundary, clamped at 0
            svg << "<polyline fill=\"none\" stroke=\"" << color
                << "\" stroke-width=\"1.6\" points=\"";
            for (const XYPoint& p : s.boundary) {
                if (p.x < -1e-12 || p.y < -1e-12) continue;
                svg << px(std::max(0.0, p.x)) << ',' << py(std::max(0.0, p.y)) << ' ';
            }
            svg << "\"/>\n";
        }
        for (const XYPoint& p : s.points) {
            svg << "<circle cx=\"" << px(std::fabs(p.x)) << "\" cy=\""
                << py(std::fabs(p.y)) << "\" r=\"3.2\" fill=\"" << color
                << "\" fill-opacity=\"0.7\"/>\n";
        }
        svg << "<text x=\"" << kW - kPad - 170 << "\" y=\"" << legend_y
            << "\" font-size=\"12\" fill=\"" << color << "\">" << s.label
            << "</text>\n";
        legend_y += 16.0;
    }
    svg << "</svg>\n";
    return svg.str();
}

std::string manifest_to_json(const RunManifest& m) {
    json j;
    j["command"] = m.command;
    j["inputs"] = m.inputs;
    j["outputs"] = m.outputs;
    json cfg = json::object();
    for (const auto& [k, v] : m.config) cfg[k] = v;
    j["config"] = cfg;
    if (m.has_seed) j["seed"] = m.seed;
    j["tool_version"] = kToolVersion;
    j["timestamp"] = timestamp_utc();
    return j.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("failed reading " + path);
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << content;
    if (!out) throw IoError("failed writing " + path);
}

}  // namespace ddchan
