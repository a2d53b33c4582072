// ddchan: data-driven inference of qubit channels from observed correlations.
//
// Subcommands:
//   simulate     run the Pauli-eigenstate experiment on a channel
//   tomo         linear-inversion tomography with dihedral projection
//   infer        minimal-volume data-driven reconstruction
//   corroborate  test whether observed correlations fit a channel (exit 0/1)
//   compare      symmetric-difference distance between two channels
//   boundary     export compatible-set boundary vertices as CSV
//   plot         SVG of compatible sets and data overlays
//
// Exit codes: 0 success, 1 corroboration failed, 2 validation error, 3 I/O
// error. Errors are reported as one-line JSON diagnostics on stderr.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ddchan/compat_set.hpp"
#include "ddchan/inference.hpp"
#include "ddchan/io.hpp"
#include "ddchan/metrics.hpp"
#include "ddchan/tomography.hpp"

namespace {

using namespace ddchan;

void emit_error(int code, const std::string& kind, const std::string& detail) {
    nlohmann::json j;
    j["error"] = kind;
    j["code"] = code;
    j["detail"] = detail;
    std::cerr << j.dump() << "\n";
}

struct ManifestSink {
    RunManifest manifest;
    std::string explicit_path;  // from --manifest
    bool wrote_output = false;

    void note_output(const std::string& path) {
        manifest.outputs.push_back(path);
        wrote_output = true;
    }
    void flush() {
        if (!wrote_output && explicit_path.empty()) return;
        std::string path = explicit_path;
        if (path.empty()) path = manifest.outputs.front() + ".manifest.json";
        write_file(path, manifest_to_json(manifest));
    }
};

CanonicalChannel canonical_of(const ChannelSpec& spec, C3Mode mode) {
    CanonicalChannel ch =
        spec.has_canonical ? spec.canonical
                           : canonicalize(spec.affine, kNullTolDefault, mode).channel;
    if (!is_completely_positive(ch)) {
        // raw linear inversion can land slightly outside the CP cone; the
        // compatible set never depends on d1, so repair it into the feasible
        // interval when a completion exists
        const Interval iv = d1_feasible_interval(ch.d2, ch.d3, ch.c3);
        if (iv.empty)
            throw NotCompletelyPositiveError(
                "channel parameters admit no completely positive completion");
        ch.d1 = std::clamp(ch.d1, iv.lo, iv.hi);
    }
    return ch;
}

// statistical per-point tolerances by default, a fixed one when --tol is given
void resolve_tolerances(const ExperimentRecord& rec, std::optional<double> tol,
                        std::vector<ObservedPoint>& pts) {
    pts = observed_points(rec, tol.value_or(1e-9));
    if (tol)
        for (auto& p : pts) p.tol = *tol;
}

int run(int argc, char** argv) {
    CLI::App app{"data-driven inference of qubit channels"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);

    // ---- simulate ----
    auto* sim = app.add_subcommand("simulate", "simulate the nine-setting experiment");
    std::string sim_channel, sim_out = "counts.json", sim_manifest;
    long sim_shots = 8192;
    bool sim_exact = false;
    std::uint64_t sim_seed = 1;
    sim->add_option("channel", sim_channel, "channel JSON file")->required();
    sim->add_option("--shots", sim_shots, "shots per setting row");
    sim->add_flag("--exact", sim_exact, "store exact Born probabilities");
    sim->add_option("--seed", sim_seed, "random seed");
    sim->add_option("--out", sim_out, "output record JSON");
    sim->add_option("--manifest", sim_manifest, "manifest path override");
    sim->set_version_flag("--version", std::string(kToolVersion));

    // ---- tomo ----
    auto* tomo = app.add_subcommand("tomo", "linear-inversion tomography");
    std::string tomo_counts, tomo_out = "channel.json", tomo_mode = "zero", tomo_manifest;
    tomo->add_option("counts", tomo_counts, "record JSON or counts CSV")->required();
    tomo->add_option("--out", tomo_out, "output channel JSON");
    tomo->add_option("--c3-mode", tomo_mode, "c3 extraction: zero | norm")
        ->check(CLI::IsMember({"zero", "norm"}));
    tomo->add_option("--manifest", tomo_manifest, "manifest path override");
    tomo->set_version_flag("--version", std::string(kToolVersion));

    // ---- infer ----
    auto* infer = app.add_subcommand("infer", "minimal-volume DD inference");
    std::string infer_counts, infer_out = "result.json", infer_cfg, infer_manifest;
    infer->add_option("counts", infer_counts, "record JSON or counts CSV")->required();
    infer->add_option("--config", infer_cfg, "inference config JSON");
    infer->add_option("--out", infer_out, "output result JSON");
    infer->add_option("--manifest", infer_manifest, "manifest path override");
    infer->set_version_flag("--version", std::string(kToolVersion));

    // ---- corroborate ----
    auto* corr = app.add_subcommand("corroborate",
                                    "check data against a channel's compatible set");
    std::string corr_counts, corr_channel, corr_manifest;
    std::optional<double> corr_tol;
    corr->add_option("counts", corr_counts, "record JSON or counts CSV")->required();
    corr->add_option("channel", corr_channel, "channel JSON")->required();
    corr->add_option("--tol", corr_tol,
                     "membership tolerance (default: statistical for finite shots)");
    corr->add_option("--manifest", corr_manifest, "manifest path override");
    corr->set_version_flag("--version", std::string(kToolVersion));

    // ---- compare ----
    auto* cmp = app.add_subcommand("compare", "symmetric-difference distance");
    std::string cmp_a, cmp_b, cmp_manifest;
    int cmp_n = 4096;
    cmp->add_option("channel_a", cmp_a, "channel JSON")->required();
    cmp->add_option("channel_b", cmp_b, "channel JSON")->required();
    cmp->add_option("--n", cmp_n, "polygon vertices");
    cmp->add_option("--manifest", cmp_manifest, "manifest path override");
    cmp->set_version_flag("--version", std::string(kToolVersion));

    // ---- boundary ----
    auto* bnd = app.add_subcommand("boundary", "export boundary polygon CSV");
    std::string bnd_channel, bnd_out = "boundary.csv", bnd_manifest;
    int bnd_n = 256;
    bnd->add_option("channel", bnd_channel, "channel JSON")->required();
    bnd->add_option("--n", bnd_n, "polygon vertices");
    bnd->add_option("--out", bnd_out, "output CSV");
    bnd->add_option("--manifest", bnd_manifest, "manifest path override");
    bnd->set_version_flag("--version", std::string(kToolVersion));

    // ---- plot ----
    auto* plot = app.add_subcommand("plot", "SVG plot of sets and data");
    std::vector<std::string> plot_inputs;
    std::string plot_out = "figure.svg", plot_manifest;
    int plot_n = 512;
    plot->add_option("inputs", plot_inputs, "channel JSON and/or record JSON files")
        ->required();
    plot->add_option("--n", plot_n, "boundary vertices per set");
    plot->add_option("--out", plot_out, "output SVG");
    plot->add_option("--manifest", plot_manifest, "manifest path override");
    plot->set_version_flag("--version", std::string(kToolVersion));

    CLI11_PARSE(app, argc, argv);

    const auto load_record = [](const std::string& path) {
        const std::string text = read_file(path);
        if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv")
            return record_from_csv(text);
        return record_from_json(text);
    };

    if (sim->parsed()) {
        ManifestSink sink;
        sink.explicit_path = sim_manifest;
        sink.manifest.command = "simulate";
        sink.manifest.inputs = {sim_channel};
        sink.manifest.seed = sim_seed;
        sink.manifest.has_seed = true;
        const long shots = sim_exact ? 0 : sim_shots;
        sink.manifest.config = {{"shots", std::to_string(shots)}};
        const ChannelSpec spec = channel_from_json(read_file(sim_channel));
        const ExperimentRecord rec = simulate_experiment(spec.affine, shots, sim_seed);
        write_file(sim_out, record_to_json(rec));
        sink.note_output(sim_out);
        sink.flush();
        return 0;
    }

    if (tomo->parsed()) {
        ManifestSink sink;
        sink.explicit_path = tomo_manifest;
        sink.manifest.command = "tomo";
        sink.manifest.inputs = {tomo_counts};
        sink.manifest.config = {{"c3_mode", tomo_mode}};
        const ExperimentRecord rec = load_record(tomo_counts);
        const C3Mode mode = tomo_mode == "norm" ? C3Mode::VectorNorm
                                                : C3Mode::ZeroTransverse;
        const Canonicalization recon = tomographic_reconstruction(rec, kNullTolDefault, mode);
        write_file(tomo_out, reconstruction_to_json(recon));
        sink.note_output(tomo_out);
        sink.flush();
        return 0;
    }

    if (infer->parsed()) {
        ManifestSink sink;
        sink.explicit_path = infer_manifest;
        sink.manifest.command = "infer";
        sink.manifest.inputs = {infer_counts};
        InferenceConfig cfg;
        if (!infer_cfg.empty()) {
            sink.manifest.inputs.push_back(infer_cfg);
            const auto j = nlohmann::json::parse(read_file(infer_cfg), nullptr, false);
            if (j.is_discarded()) throw ValidationError("malformed config JSON");
            cfg.grid_resolution = j.value("grid_resolution", cfg.grid_resolution);
            cfg.refine_tolerance = j.value("refine_tolerance", cfg.refine_tolerance);
            cfg.membership_tolerance =
                j.value("membership_tolerance", cfg.membership_tolerance);
            cfg.max_iterations = j.value("max_iterations", cfg.max_iterations);
        }
        sink.manifest.config = {
            {"grid_resolution", std::to_string(cfg.grid_resolution)},
            {"refine_tolerance", std::to_string(cfg.refine_tolerance)},
            {"membership_tolerance", std::to_string(cfg.membership_tolerance)},
            {"max_iterations", std::to_string(cfg.max_iterations)}};
        const ExperimentRecord rec = load_record(infer_counts);
        const InferenceResult res = dd_infer(rec, cfg);
        write_file(infer_out, result_to_json(res));
        sink.note_output(infer_out);
        sink.flush();
        return 0;
    }

    if (corr->parsed()) {
        ManifestSink sink;
        sink.explicit_path = corr_manifest;
        sink.manifest.command = "corroborate";
        sink.manifest.inputs = {corr_counts, corr_channel};
        const ExperimentRecord rec = load_record(corr_counts);
        const ChannelSpec spec = channel_from_json(read_file(corr_channel));
        const CanonicalChannel ch = canonical_of(spec, C3Mode::ZeroTransverse);
        std::vector<ObservedPoint> pts;
        resolve_tolerances(rec, corr_tol, pts);
        const CompatibleSet set = build(ch);
        bool all_ok = true;
        for (const ObservedPoint& p : pts)
            if (!contains(set, p.pt, p.tol)) all_ok = false;
        nlohmann::json j;
        j["corroborated"] = all_ok;
        std::cout << j.dump() << "\n";
        sink.flush();
        return all_ok ? 0 : 1;
    }

    if (cmp->parsed()) {
        ManifestSink sink;
        sink.explicit_path = cmp_manifest;
        sink.manifest.command = "compare";
        sink.manifest.inputs = {cmp_a, cmp_b};
        sink.manifest.config = {{"n", std::to_string(cmp_n)}};
        const CanonicalChannel a =
            canonical_of(channel_from_json(read_file(cmp_a)), C3Mode::ZeroTransverse);
        const CanonicalChannel b =
            canonical_of(channel_from_json(read_file(cmp_b)), C3Mode::ZeroTransverse);
        std::printf("%.6f\n", symmetric_difference_distance(a, b, cmp_n));
        sink.flush();
        return 0;
    }

    if (bnd->parsed()) {
        ManifestSink sink;
        sink.explicit_path = bnd_manifest;
        sink.manifest.command = "boundary";
        sink.manifest.inputs = {bnd_channel};
        sink.manifest.config = {{"n", std::to_string(bnd_n)}};
        const CanonicalChannel ch =
            canonical_of(channel_from_json(read_file(bnd_channel)), C3Mode::ZeroTransverse);
        write_file(bnd_out, boundary_to_csv(polygon_of(build(ch), bnd_n)));
        sink.note_output(bnd_out);
        sink.flush();
        return 0;
    }

    if (plot->parsed()) {
        ManifestSink sink;
        sink.explicit_path = plot_manifest;
        sink.manifest.command = "plot";
        sink.manifest.inputs = plot_inputs;
        sink.manifest.config = {{"n", std::to_string(plot_n)}};
        std::vector<PlotSeries> series;
        for (const std::string& path : plot_inputs) {
            const std::string text = read_file(path);
            const auto j = nlohmann::json::parse(text, nullptr, false);
            if (j.is_discarded()) throw ValidationError("malformed JSON in " + path);
            PlotSeries s;
            s.label = path;
            if (j.contains("counts")) {
                ExperimentRecord rec =
                    path.size() >= 4 && path.substr(path.size() - 4) == ".csv"
                        ? record_from_csv(text)
                        : record_from_json(text);
                for (const ObservedPoint& p : observed_points(rec))
                    s.points.push_back(p.pt);
            } else {
                const CanonicalChannel ch =
                    canonical_of(channel_from_json(text), C3Mode::ZeroTransverse);
                s.boundary = polygon_of(build(ch), plot_n);
            }
            series.push_back(std::move(s));
        }
        write_file(plot_out, render_svg(series));
        sink.note_output(plot_out);
        sink.flush();
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const IoError& e) {
        emit_error(3, "io", e.what());
        return 3;
    } catch (const ValidationError& e) {
        emit_error(2, "validation", e.what());
        return 2;
    } catch (const NoFeasibleChannelError& e) {
        emit_error(2, "no_feasible_channel", e.what());
        return 2;
    } catch (const std::exception& e) {
        emit_error(2, "error", e.what());
        return 2;
    }
}
