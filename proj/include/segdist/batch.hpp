// Batch evaluation across presets and spacings, deviation analysis
// against a reference preset, significance testing over the comparison
// grid, and timing.

#ifndef SEGDIST_BATCH_HPP
#define SEGDIST_BATCH_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "segdist/grid.hpp"
#include "segdist/metrics.hpp"
#include "segdist/stats.hpp"
#include "segdist/synth.hpp"

namespace segdist {

inline std::string format_value(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

inline std::string format_spacing(const std::vector<double>& spacing) {
    std::string out;
    for (std::size_t i = 0; i < spacing.size(); ++i) {
        if (i) out += 'x';
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%g", spacing[i]);
        out += buf;
    }
    return out;
}

// "0.5,0.5,2;1,1,1" -> list of spacing vectors.
inline std::vector<std::vector<double>> parse_spacings(const std::string& text) {
    std::vector<std::vector<double>> out;
    std::istringstream groups(text);
    std::string group;
    while (std::getline(groups, group, ';')) {
        if (group.empty()) continue;
        std::vector<double> sp;
        std::istringstream comps(group);
        std::string comp;
        while (std::getline(comps, comp, ',')) sp.push_back(std::stod(comp));
        if (sp.size() != 2 && sp.size() != 3)
            throw error("spacing must have 2 or 3 components: " + group);
        for (double s : sp)
            if (!(s > 0.0)) throw error("non-positive spacing in: " + group);
        out.push_back(std::move(sp));
    }
    if (out.empty()) throw error("no spacings given");
    return out;
}

inline std::vector<PairEntry> load_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw error("cannot open manifest: " + path.string());
    std::vector<PairEntry> pairs;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;  // "id,ref,pred,tag"
            continue;
        }
        std::istringstream ls(line);
        PairEntry e;
        std::getline(ls, e.id, ',');
        std::getline(ls, e.ref_path, ',');
        std::getline(ls, e.pred_path, ',');
        std::getline(ls, e.tag, ',');
        if (e.id.empty() || e.ref_path.empty() || e.pred_path.empty())
            throw error("malformed manifest row: " + line);
        pairs.push_back(std::move(e));
    }
    for (std::size_t i = 0; i < pairs.size(); ++i)
        for (std::size_t j = i + 1; j < pairs.size(); ++j)
            if (pairs[i].id == pairs[j].id) throw error("duplicate manifest id: " + pairs[i].id);
    return pairs;
}

struct ResultRow {
    std::string pair_id;
    std::string spacing;
    std::string preset;
    std::string metric;
    std::string tag;
    double value = std::numeric_limits<double>::quiet_NaN();
    std::string flag;  // ok | warn:<note> | unsupported | error:<what>
};

struct BatchOptions {
    double p = 95.0;
    double tau = 2.0;
    EdgePolicy policy = EdgePolicy::Reloaded;
    bool crop = true;
};

inline std::string flag_of(const MetricValue& mv) {
    if (!mv.supported) return "unsupported";
    if (!mv.warning) return "ok";
    std::string note = mv.note.empty() ? "warning" : mv.note;
    for (char& ch : note)
        if (ch == ',' || ch == ' ') ch = '_';
    return "warn:" + note;
}

// One row per pair x spacing x preset x metric, in that deterministic
// order. Per-row failures are recorded as error rows; the run continues.
inline std::vector<ResultRow> run_batch(const std::vector<PairEntry>& pairs,
                                        const std::vector<std::string>& presets,
                                        const std::vector<std::vector<double>>& spacings,
                                        const BatchOptions& opt) {
    std::vector<ResultRow> rows;
    for (const PairEntry& entry : pairs) {
        GridMask ref = load_mask(entry.ref_path);
        GridMask pred = load_mask(entry.pred_path);
        if (ref.dims != pred.dims || ref.spacing != pred.spacing)
            throw error("pair " + entry.id + ": masks disagree on grid");
        for (const std::vector<double>& spacing : spacings) {
            if (spacing.size() != ref.spacing.size())
                throw error("pair " + entry.id + ": spacing rank mismatch");
            const GridMask rref = resample_nn(ref, spacing);
            const GridMask rpred = resample_nn(pred, spacing);
            const std::string spacing_str = format_spacing(spacing);
            for (const std::string& preset_name : presets) {
                const Preset pr = preset(preset_name, opt.p, opt.tau, opt.policy);
                bool failed = false;
                MetricResult res;
                std::string what;
                try {
                    res = compute_all(rref, rpred, pr.config, pr.supports, opt.crop);
                } catch (const error& e) {
                    failed = true;
                    what = e.what();
                }
                for (int mi = 0; mi < kMetricCount; ++mi) {
                    const Metric m = static_cast<Metric>(mi);
                    ResultRow row;
                    row.pair_id = entry.id;
                    row.spacing = spacing_str;
                    row.preset = preset_name;
                    row.metric = to_string(m);
                    row.tag = entry.tag;
                    if (failed) {
                        row.flag = "error:" + what;
                    } else {
                        row.value = res[m].value;
                        row.flag = flag_of(res[m]);
                    }
                    rows.push_back(std::move(row));
                }
            }
        }
    }
    return rows;
}

inline const char* kResultHeader = "pair_id,spacing,preset,metric,value,flag";

inline void write_results_csv(const std::vector<ResultRow>& rows,
                              const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw error("cannot write results: " + path.string());
    out << kResultHeader << "\n";
    for (const ResultRow& r : rows) {
        const std::string value = r.flag == "unsupported" ? "" : format_value(r.value);
        out << r.pair_id << ',' << r.spacing << ',' << r.preset << ',' << r.metric << ',' << value
            << ',' << r.flag << '\n';
    }
}

inline std::vector<ResultRow> read_results_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw error("cannot open results: " + path.string());
    std::vector<ResultRow> rows;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        std::istringstream ls(line);
        ResultRow r;
        std::string value;
        std::getline(ls, r.pair_id, ',');
        std::getline(ls, r.spacing, ',');
        std::getline(ls, r.preset, ',');
        std::getline(ls, r.metric, ',');
        std::getline(ls, value, ',');
        std::getline(ls, r.flag, ',');
        r.value = value.empty() ? std::numeric_limits<double>::quiet_NaN() : std::strtod(value.c_str(), nullptr);
        rows.push_back(std::move(r));
    }
    return rows;
}

// Per-pair difference of a candidate preset against the reference preset.
struct DeviationRecord {
    std::string pair_id;
    std::string spacing;
    std::string metric;
    std::string preset;     // candidate
    std::string reference;  // reference preset
    std::string tag;
    double candidate_value = std::numeric_limits<double>::quiet_NaN();
    double reference_value = std::numeric_limits<double>::quiet_NaN();
    double delta = std::numeric_limits<double>::quiet_NaN();  // finite iff both values finite
};

struct DeviationSummary {
    std::string preset;
    std::string spacing;
    std::string metric;
    std::string tag;  // empty = all pairs
    SummaryStats stats;
};

struct DeviationAnalysis {
    std::vector<DeviationRecord> records;
    std::vector<DeviationSummary> summaries;
};

inline DeviationAnalysis deviations(const std::vector<ResultRow>& rows,
                                    const std::string& reference_preset) {
    // Reference values keyed by (pair, spacing, metric).
    std::map<std::tuple<std::string, std::string, std::string>, const ResultRow*> ref_rows;
    bool have_tags = false;
    for (const ResultRow& r : rows) {
        if (!r.tag.empty() && r.tag != "normal") have_tags = true;
        if (r.preset == reference_preset && r.flag != "unsupported")
            ref_rows[{r.pair_id, r.spacing, r.metric}] = &r;
    }
    if (ref_rows.empty()) throw error("reference preset '" + reference_preset + "' not in results");

    DeviationAnalysis out;
    for (const ResultRow& r : rows) {
        if (r.flag == "unsupported" || r.flag.rfind("error:", 0) == 0) continue;
        auto it = ref_rows.find({r.pair_id, r.spacing, r.metric});
        if (it == ref_rows.end()) continue;
        DeviationRecord rec;
        rec.pair_id = r.pair_id;
        rec.spacing = r.spacing;
        rec.metric = r.metric;
        rec.preset = r.preset;
        rec.reference = reference_preset;
        rec.tag = r.tag;
        rec.candidate_value = r.value;
        rec.reference_value = it->second->value;
        if (std::isfinite(r.value) && std::isfinite(it->second->value))
            rec.delta = r.value - it->second->value;
        out.records.push_back(std::move(rec));
    }

    // Summaries per (preset, spacing, metric), plus per tag when present.
    std::map<std::tuple<std::string, std::string, std::string, std::string>, std::vector<double>>
        groups;
    for (const DeviationRecord& rec : out.records) {
        groups[{rec.preset, rec.spacing, rec.metric, std::string()}].push_back(rec.delta);
        if (have_tags) groups[{rec.preset, rec.spacing, rec.metric, rec.tag}].push_back(rec.delta);
    }
    for (const auto& [key, deltas] : groups) {
        DeviationSummary s;
        s.preset = std::get<0>(key);
        s.spacing = std::get<1>(key);
        s.metric = std::get<2>(key);
        s.tag = std::get<3>(key);
        s.stats = summarize(deltas);
        out.summaries.push_back(std::move(s));
    }
    return out;
}

inline void write_deviation_csv(const DeviationAnalysis& analysis,
                                const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw error("cannot write deviations: " + path.string());
    out << "# sd is the population standard deviation\n";
    out << "preset,spacing,metric,tag,n,excluded,min,max,mean,sd\n";
    for (const DeviationSummary& s : analysis.summaries)
        out << s.preset << ',' << s.spacing << ',' << s.metric << ',' << s.tag << ','
            << s.stats.n << ',' << s.stats.excluded << ',' << format_value(s.stats.min) << ','
            << format_value(s.stats.max) << ',' << format_value(s.stats.mean) << ','
            << format_value(s.stats.sd) << '\n';
}

struct ComparisonRow {
    std::string spacing;
    std::string metric;
    std::string preset_a;
    std::string preset_b;
    WilcoxonResult test;
};

// Pairwise Wilcoxon over candidate presets' deviation vectors, Bonferroni
// corrected over the number of comparisons actually performed in the run.
inline std::vector<ComparisonRow> significance_grid(const DeviationAnalysis& analysis,
                                                    int corrections_override = 0) {
    std::map<std::tuple<std::string, std::string, std::string>,
             std::map<std::string, double>>
        by_group;  // (spacing, metric, preset) -> pair_id -> delta
    for (const DeviationRecord& rec : analysis.records) {
        if (!std::isfinite(rec.delta)) continue;
        by_group[{rec.spacing, rec.metric, rec.preset}][rec.pair_id] = rec.delta;
    }

    // Enumerate comparisons first so the Bonferroni denominator reflects
    // the actual grid.
    struct Planned {
        std::string spacing, metric, pa, pb;
        std::vector<double> xa, xb;
    };
    std::vector<Planned> planned;
    for (auto ita = by_group.begin(); ita != by_group.end(); ++ita) {
        for (auto itb = std::next(ita); itb != by_group.end(); ++itb) {
            const auto& [sp_a, met_a, pr_a] = ita->first;
            const auto& [sp_b, met_b, pr_b] = itb->first;
            if (sp_a != sp_b || met_a != met_b) continue;
            Planned pl;
            pl.spacing = sp_a;
            pl.metric = met_a;
            pl.pa = pr_a;
            pl.pb = pr_b;
            for (const auto& [pair_id, da] : ita->second) {
                auto f = itb->second.find(pair_id);
                if (f == itb->second.end()) continue;
                pl.xa.push_back(da);
                pl.xb.push_back(f->second);
            }
            if (!pl.xa.empty()) planned.push_back(std::move(pl));
        }
    }
    const int corrections =
        corrections_override > 0 ? corrections_override : std::max<int>(1, static_cast<int>(planned.size()));

    std::vector<ComparisonRow> out;
    for (const Planned& pl : planned) {
        ComparisonRow row;
        row.spacing = pl.spacing;
        row.metric = pl.metric;
        row.preset_a = pl.pa;
        row.preset_b = pl.pb;
        row.test = wilcoxon_paired(pl.xa, pl.xb, corrections);
        out.push_back(std::move(row));
    }
    return out;
}

inline void write_significance_csv(const std::vector<ComparisonRow>& rows,
                                   const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw error("cannot write significance table: " + path.string());
    out << "spacing,metric,preset_a,preset_b,n,w_plus,p,exact,significant\n";
    for (const ComparisonRow& r : rows)
        out << r.spacing << ',' << r.metric << ',' << r.preset_a << ',' << r.preset_b << ','
            << r.test.n << ',' << format_value(r.test.w_plus) << ',' << format_value(r.test.p)
            << ',' << (r.test.exact ? 1 : 0) << ',' << (r.test.significant ? 1 : 0) << '\n';
}

struct BenchRow {
    std::string pair_id;
    std::string preset;
    bool crop = true;
    double median_ms = 0.0;
};

// Median wall time of compute_all per pair per preset, monotonic clock.
inline std::vector<BenchRow> bench(const std::vector<PairEntry>& pairs,
                                   const std::vector<std::string>& presets, int repetitions,
                                   const BatchOptions& opt, bool crop_on, bool crop_off) {
    if (repetitions < 1) throw error("repetitions must be >= 1");
    std::vector<BenchRow> rows;
    for (const PairEntry& entry : pairs) {
        const GridMask ref = load_mask(entry.ref_path);
        const GridMask pred = load_mask(entry.pred_path);
        for (const std::string& preset_name : presets) {
            const Preset pr = preset(preset_name, opt.p, opt.tau, opt.policy);
            for (int crop_flag = 0; crop_flag < 2; ++crop_flag) {
                if (crop_flag == 1 && !crop_on) continue;
                if (crop_flag == 0 && !crop_off) continue;
                std::vector<double> samples;
                samples.reserve(static_cast<std::size_t>(repetitions));
                for (int rep = 0; rep < repetitions; ++rep) {
                    const auto t0 = std::chrono::steady_clock::now();
                    volatile double sink =
                        compute_all(ref, pred, pr.config, pr.supports, crop_flag == 1)[Metric::HD]
                            .value;
                    (void)sink;
                    const auto t1 = std::chrono::steady_clock::now();
                    samples.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
                }
                std::sort(samples.begin(), samples.end());
                const std::size_t mid = samples.size() / 2;
                const double median = samples.size() % 2 == 1
                                          ? samples[mid]
                                          : 0.5 * (samples[mid - 1] + samples[mid]);
                rows.push_back({entry.id, preset_name, crop_flag == 1, median});
            }
        }
    }
    return rows;
}

inline void write_bench_csv(const std::vector<BenchRow>& rows, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw error("cannot write bench table: " + path.string());
    out << "pair_id,preset,crop,median_ms\n";
    for (const BenchRow& r : rows)
        out << r.pair_id << ',' << r.preset << ',' << (r.crop ? "on" : "off") << ','
            << format_value(r.median_ms) << '\n';
}

}  // namespace segdist

#endif  // SEGDIST_BATCH_HPP
