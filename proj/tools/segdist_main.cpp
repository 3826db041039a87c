// Command-line surface: gen | compute | batch | compare | bench.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "segdist/segdist.hpp"

namespace {

using nlohmann::json;

segdist::EdgePolicy parse_policy(const std::string& s) {
    if (s == "reloaded") return segdist::EdgePolicy::Reloaded;
    if (s == "nan") return segdist::EdgePolicy::NaN;
    if (s == "error") return segdist::EdgePolicy::Error;
    throw segdist::error("unknown edge policy '" + s + "' (reloaded|nan|error)");
}

std::vector<std::string> parse_presets(const std::string& s) {
    if (s.empty() || s == "all") return segdist::preset_names();
    std::vector<std::string> out;
    std::istringstream ls(s);
    std::string name;
    while (std::getline(ls, name, ',')) {
        segdist::preset(name);  // validates
        out.push_back(name);
    }
    return out;
}

std::vector<int> parse_dims(const std::string& s) {
    std::vector<int> out;
    std::istringstream ls(s);
    std::string comp;
    while (std::getline(ls, comp, ',')) out.push_back(std::stoi(comp));
    if (out.size() != 2 && out.size() != 3)
        throw segdist::error("dims must have 2 or 3 components");
    return out;
}

json value_json(const segdist::MetricValue& mv) {
    json j;
    if (!mv.supported) {
        j["supported"] = false;
        return j;
    }
    if (std::isnan(mv.value))
        j["value"] = "nan";
    else if (std::isinf(mv.value))
        j["value"] = mv.value > 0 ? "inf" : "-inf";
    else
        j["value"] = mv.value;
    if (mv.warning) j["warning"] = mv.note.empty() ? "warning" : mv.note;
    return j;
}

int cmd_gen(const std::string& out_dir, std::uint64_t seed, int count, const std::string& dims,
            const std::string& spacing, double level, double empty_frac) {
    segdist::GenParams params;
    params.seed = seed;
    params.count = count;
    params.dims = parse_dims(dims);
    std::istringstream sp(spacing);
    std::string comp;
    params.spacing.clear();
    while (std::getline(sp, comp, ',')) params.spacing.push_back(std::stod(comp));
    if (params.spacing.size() != params.dims.size())
        throw segdist::error("dims/spacing rank mismatch");
    params.level = level;
    params.empty_frac = empty_frac;

    const segdist::GenResult res = segdist::gen_dataset(params, out_dir);
    std::printf("wrote %zu pairs to %s (mean DSC %.4f)\n", res.pairs.size(),
                res.manifest_path.string().c_str(), res.mean_dsc);
    return 0;
}

int cmd_compute(const std::string& ref, const std::string& pred, const std::string& preset_name,
                double p, double tau, const std::string& policy, bool crop) {
    const segdist::GridMask a = segdist::load_mask(ref);
    const segdist::GridMask b = segdist::load_mask(pred);
    const segdist::Preset pr = segdist::preset(preset_name, p, tau, parse_policy(policy));
    const segdist::MetricResult res = segdist::compute_all(a, b, pr.config, pr.supports, crop);

    json j;
    j["ref"] = ref;
    j["pred"] = pred;
    j["preset"] = preset_name;
    j["p"] = p;
    j["tau"] = tau;
    for (int mi = 0; mi < segdist::kMetricCount; ++mi) {
        const auto m = static_cast<segdist::Metric>(mi);
        j["metrics"][segdist::to_string(m)] = value_json(res[m]);
    }
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_batch(const std::string& manifest, const std::string& presets, const std::string& spacings,
              double p, double tau, const std::string& policy, bool crop, bool strict,
              const std::string& out) {
    const auto pairs = segdist::load_manifest(manifest);
    segdist::BatchOptions opt;
    opt.p = p;
    opt.tau = tau;
    opt.policy = parse_policy(policy);
    opt.crop = crop;
    const auto rows =
        segdist::run_batch(pairs, parse_presets(presets), segdist::parse_spacings(spacings), opt);
    segdist::write_results_csv(rows, out);

    int errors = 0;
    for (const auto& r : rows)
        if (r.flag.rfind("error:", 0) == 0) ++errors;
    std::printf("wrote %zu rows to %s (%d error rows)\n", rows.size(), out.c_str(), errors);
    return (strict && errors > 0) ? 1 : 0;
}

int cmd_compare(const std::string& in, const std::string& reference, const std::string& out,
                const std::string& stats_out, const std::string& manifest, int corrections) {
    auto rows = segdist::read_results_csv(in);
    if (!manifest.empty()) {
        // Re-attach stratum tags; the results CSV does not carry them.
        std::map<std::string, std::string> tags;
        for (const auto& e : segdist::load_manifest(manifest)) tags[e.id] = e.tag;
        for (auto& r : rows) {
            auto it = tags.find(r.pair_id);
            if (it != tags.end()) r.tag = it->second;
        }
    }
    const segdist::DeviationAnalysis analysis = segdist::deviations(rows, reference);
    segdist::write_deviation_csv(analysis, out);
    std::printf("wrote %zu summaries to %s\n", analysis.summaries.size(), out.c_str());
    if (!stats_out.empty()) {
        const auto grid = segdist::significance_grid(analysis, corrections);
        segdist::write_significance_csv(grid, stats_out);
        std::printf("wrote %zu comparisons to %s\n", grid.size(), stats_out.c_str());
    }
    return 0;
}

int cmd_bench(const std::string& manifest, const std::string& presets, int reps,
              const std::string& crop_mode, double p, double tau, const std::string& out) {
    const auto pairs = segdist::load_manifest(manifest);
    segdist::BatchOptions opt;
    opt.p = p;
    opt.tau = tau;
    const bool crop_on = crop_mode == "on" || crop_mode == "both";
    const bool crop_off = crop_mode == "off" || crop_mode == "both";
    if (!crop_on && !crop_off) throw segdist::error("crop mode must be on|off|both");
    const auto rows = segdist::bench(pairs, parse_presets(presets), reps, opt, crop_on, crop_off);
    segdist::write_bench_csv(rows, out);
    std::printf("wrote %zu timings to %s\n", rows.size(), out.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"distance-based segmentation metrics with per-tool variant presets"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a seeded synthetic dataset");
    std::string gen_out = "dataset";
    std::uint64_t seed = 1;
    int count = 10;
    std::string dims = "64,64", gspacing = "1,1";
    double level = 0.3, empty_frac = 0.0;
    gen->add_option("--out", gen_out, "output directory");
    gen->add_option("--seed", seed, "RNG seed");
    gen->add_option("--count", count, "number of pairs");
    gen->add_option("--dims", dims, "grid extents, e.g. 64,64 or 32,32,32");
    gen->add_option("--spacing", gspacing, "native spacing in mm, e.g. 1,1");
    gen->add_option("--level", level, "perturbation level (0 = identical prediction)");
    gen->add_option("--empty-frac", empty_frac, "fraction of pairs with empty prediction");

    // compute
    auto* compute = app.add_subcommand("compute", "compute metrics for one pair");
    std::string ref, pred, preset_name = "gdm", policy = "reloaded";
    double p = 95.0, tau = 2.0;
    std::string crop = "on";
    compute->add_option("--ref", ref, "reference mask header")->required();
    compute->add_option("--pred", pred, "prediction mask header")->required();
    compute->add_option("--preset", preset_name, "tool preset name");
    compute->add_option("--p", p, "percentile for HDp");
    compute->add_option("--tau", tau, "margin tau in mm for NSD/BIoU");
    compute->add_option("--edge-policy", policy, "reloaded|nan|error");
    compute->add_option("--crop", crop, "on|off");

    // batch
    auto* batch = app.add_subcommand("batch", "evaluate a manifest across presets and spacings");
    std::string manifest, presets = "all", spacings = "1,1", batch_out = "results.csv";
    bool strict = false;
    batch->add_option("--manifest", manifest, "manifest CSV")->required();
    batch->add_option("--presets", presets, "comma-separated preset names or 'all'");
    batch->add_option("--spacing", spacings, "semicolon-separated spacing tuples");
    batch->add_option("--p", p, "percentile for HDp");
    batch->add_option("--tau", tau, "margin tau in mm");
    batch->add_option("--edge-policy", policy, "reloaded|nan|error");
    batch->add_option("--crop", crop, "on|off");
    batch->add_flag("--strict", strict, "exit 1 if any row errored");
    batch->add_option("--out", batch_out, "output CSV");

    // compare
    auto* compare = app.add_subcommand("compare", "deviations against a reference preset");
    std::string cmp_in, reference = "gdm", cmp_out = "deviations.csv", stats_out, cmp_manifest;
    int corrections = 0;
    compare->add_option("--in", cmp_in, "batch results CSV")->required();
    compare->add_option("--reference", reference, "reference preset");
    compare->add_option("--out", cmp_out, "deviation summary CSV");
    compare->add_option("--stats-out", stats_out, "Wilcoxon significance CSV (optional)");
    compare->add_option("--manifest", cmp_manifest, "manifest for stratum tags (optional)");
    compare->add_option("--corrections", corrections,
                        "Bonferroni denominator override (default: actual comparison count)");

    // bench
    auto* bench = app.add_subcommand("bench", "time metric computation per pair per preset");
    std::string bench_manifest, bench_out = "bench.csv", crop_mode = "both";
    int reps = 3;
    bench->add_option("--manifest", bench_manifest, "manifest CSV")->required();
    bench->add_option("--presets", presets, "comma-separated preset names or 'all'");
    bench->add_option("--reps", reps, "repetitions per measurement");
    bench->add_option("--crop", crop_mode, "on|off|both");
    bench->add_option("--p", p, "percentile for HDp");
    bench->add_option("--tau", tau, "margin tau in mm");
    bench->add_option("--out", bench_out, "output CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (*gen) return cmd_gen(gen_out, seed, count, dims, gspacing, level, empty_frac);
        if (*compute)
            return cmd_compute(ref, pred, preset_name, p, tau, policy, crop != "off");
        if (*batch)
            return cmd_batch(manifest, presets, spacings, p, tau, policy, crop != "off", strict,
                             batch_out);
        if (*compare)
            return cmd_compare(cmp_in, reference, cmp_out, stats_out, cmp_manifest, corrections);
        if (*bench) return cmd_bench(bench_manifest, presets, reps, crop_mode, p, tau, bench_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
