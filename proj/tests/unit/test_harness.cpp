#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "unit/helpers.hpp"

using namespace segdist;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& leaf) {
    const fs::path dir = fs::temp_directory_path() / "segdist_harness_tests" / leaf;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

// Independent two-sided signed-rank p-value by enumerating all 2^n sign
// assignments over average ranks.
double brute_wilcoxon_p(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> diffs;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] != y[i]) diffs.push_back(x[i] - y[i]);
    const std::size_t n = diffs.size();
    if (n == 0) return 1.0;

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return std::fabs(diffs[i]) < std::fabs(diffs[j]);
    });
    std::vector<double> rank(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && std::fabs(diffs[order[j + 1]]) == std::fabs(diffs[order[i]])) ++j;
        const double avg = 0.5 * double(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) rank[order[k]] = avg;
        i = j + 1;
    }

    double w_obs = 0.0;
    for (std::size_t k = 0; k < n; ++k)
        if (diffs[k] > 0.0) w_obs += rank[k];

    const std::size_t total = std::size_t{1} << n;
    std::size_t le = 0, ge = 0;
    for (std::size_t mask = 0; mask < total; ++mask) {
        double w = 0.0;
        for (std::size_t k = 0; k < n; ++k)
            if (mask & (std::size_t{1} << k)) w += rank[k];
        if (w <= w_obs + 1e-9) ++le;
        if (w >= w_obs - 1e-9) ++ge;
    }
    return std::min(1.0, 2.0 * double(std::min(le, ge)) / double(total));
}

}  // namespace

TEST_CASE("wilcoxon identical vectors") {
    const std::vector<double> v{1, 2, 3, 4};
    const WilcoxonResult r = wilcoxon_paired(v, v);
    CHECK(r.p == 1.0);
    CHECK(r.n == 0);
    CHECK_FALSE(r.significant);
}

TEST_CASE("wilcoxon six uniformly positive differences") {
    // All six ranks positive: W+ = 21, two-sided exact p = 2/64.
    const std::vector<double> x{2, 3, 4, 5, 6, 7};
    const std::vector<double> y{1, 1, 1, 1, 1, 1};
    const WilcoxonResult r = wilcoxon_paired(x, y);
    CHECK(r.n == 6);
    CHECK(r.w_plus == 21.0);
    CHECK(r.exact);
    CHECK(r.p == doctest::Approx(0.03125));
    CHECK(r.significant);
    CHECK_FALSE(wilcoxon_paired(x, y, 2).significant);  // 0.03125 > 0.05/2
}

TEST_CASE("wilcoxon exact distribution matches full enumeration") {
    Rng rng(77);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 3 + trial % 10;
        std::vector<double> x, y;
        for (int k = 0; k < n; ++k) {
            // Coarse values provoke ties and zero differences regularly.
            x.push_back(double(rng.uniform_int(0, 6)));
            y.push_back(double(rng.uniform_int(0, 6)));
        }
        const WilcoxonResult r = wilcoxon_paired(x, y);
        CHECK(r.exact);
        CHECK(r.p == doctest::Approx(brute_wilcoxon_p(x, y)).epsilon(1e-12));
    }
}

TEST_CASE("wilcoxon normal approximation above the exact limit") {
    Rng rng(78);
    std::vector<double> x, y;
    for (int k = 0; k < 60; ++k) {
        const double base = rng.uniform();
        x.push_back(base + 0.5 + 0.1 * rng.uniform());
        y.push_back(base);
    }
    const WilcoxonResult shifted = wilcoxon_paired(x, y);
    CHECK_FALSE(shifted.exact);
    CHECK(shifted.p < 1e-6);
    CHECK(shifted.significant);

    std::vector<double> noise_a, noise_b;
    for (int k = 0; k < 60; ++k) {
        noise_a.push_back(rng.uniform());
        noise_b.push_back(rng.uniform());
    }
    const WilcoxonResult noise = wilcoxon_paired(noise_a, noise_b);
    CHECK(noise.p > 0.0);
    CHECK(noise.p <= 1.0);
}

TEST_CASE("wilcoxon input validation") {
    CHECK_THROWS_AS(wilcoxon_paired({}, {}), error);
    CHECK_THROWS_AS(wilcoxon_paired({1, 2}, {1}), error);
    CHECK_THROWS_AS(wilcoxon_paired({1}, {2}, 0), error);
}

TEST_CASE("summary statistics") {
    const SummaryStats s = summarize({-1.0, 3.0});
    CHECK(s.n == 2);
    CHECK(s.mean == doctest::Approx(1.0));
    CHECK(s.sd == doctest::Approx(2.0));  // population SD
    CHECK(s.min == -1.0);
    CHECK(s.max == 3.0);

    const double inf = std::numeric_limits<double>::infinity();
    const SummaryStats t = summarize({1.0, inf, std::nan(""), 3.0});
    CHECK(t.n == 2);
    CHECK(t.excluded == 2);
    CHECK(t.mean == doctest::Approx(2.0));

    CHECK(summarize({}).n == 0);
    CHECK(std::isnan(summarize({inf}).mean));
}

TEST_CASE("generator is deterministic per seed and index") {
    GenParams params;
    params.seed = 123;
    params.dims = {24, 20};
    params.spacing = {0.8, 1.2};
    const MaskPair a = gen_pair(params, 3, false);
    const MaskPair b = gen_pair(params, 3, false);
    CHECK(a.ref.data == b.ref.data);
    CHECK(a.pred.data == b.pred.data);

    params.seed = 124;
    const MaskPair c = gen_pair(params, 3, false);
    CHECK(a.ref.data != c.ref.data);
}

TEST_CASE("generator invariants") {
    GenParams params;
    params.seed = 9;
    params.dims = {20, 20};
    SUBCASE("level zero clones the reference") {
        params.level = 0.0;
        const MaskPair p = gen_pair(params, 0, false);
        CHECK(p.ref.data == p.pred.data);
        const MetricResult r = compute_all(p.ref, p.pred, MetricConfig{});
        CHECK(r[Metric::HD].value == 0.0);
        CHECK(r[Metric::DSC].value == 1.0);
    }
    SUBCASE("normal pairs are nonempty and overlap") {
        for (int i = 0; i < 5; ++i) {
            const MaskPair p = gen_pair(params, i, false);
            CHECK_FALSE(p.ref.empty_mask());
            CHECK_FALSE(p.pred.empty_mask());
            CHECK(dsc(p.ref, p.pred, EdgePolicy::Reloaded).value > 0.0);
        }
    }
    SUBCASE("empty-prediction pairs") {
        const MaskPair p = gen_pair(params, 0, true);
        CHECK_FALSE(p.ref.empty_mask());
        CHECK(p.pred.empty_mask());
    }
}

TEST_CASE("dataset generation writes a manifest and reruns byte-identically") {
    GenParams params;
    params.seed = 55;
    params.count = 4;
    params.dims = {16, 16};
    params.empty_frac = 0.25;

    const fs::path d1 = temp_dir("gen1"), d2 = temp_dir("gen2");
    const GenResult r1 = gen_dataset(params, d1);
    const GenResult r2 = gen_dataset(params, d2);
    REQUIRE(r1.pairs.size() == 4);
    CHECK(r1.pairs[0].tag == "empty-pred");
    CHECK(r1.pairs[1].tag == "normal");
    CHECK(r1.mean_dsc == r2.mean_dsc);
    CHECK(r1.mean_dsc > 0.0);

    for (std::size_t i = 0; i < r1.pairs.size(); ++i) {
        CHECK(slurp(raw_path_for(r1.pairs[i].ref_path)) == slurp(raw_path_for(r2.pairs[i].ref_path)));
        CHECK(slurp(raw_path_for(r1.pairs[i].pred_path)) ==
              slurp(raw_path_for(r2.pairs[i].pred_path)));
    }

    const std::vector<PairEntry> loaded = load_manifest(r1.manifest_path);
    REQUIRE(loaded.size() == 4);
    CHECK(loaded[0].id == "pair_0000");
    CHECK(loaded[3].tag == "normal");
}

TEST_CASE("manifest rejects duplicate ids") {
    const fs::path dir = temp_dir("manifest");
    const fs::path mf = dir / "manifest.csv";
    std::ofstream(mf) << "id,ref,pred,tag\nx,a.hdr,b.hdr,normal\nx,c.hdr,d.hdr,normal\n";
    CHECK_THROWS_WITH_AS(load_manifest(mf), doctest::Contains("duplicate"), error);
}

TEST_CASE("spacing parsing and formatting") {
    const auto sp = parse_spacings("0.5,0.5,2;1,1,1");
    REQUIRE(sp.size() == 2);
    CHECK(sp[0] == std::vector<double>{0.5, 0.5, 2.0});
    CHECK(format_spacing(sp[0]) == "0.5x0.5x2");
    CHECK(format_spacing({1, 1}) == "1x1");
    CHECK_THROWS_AS(parse_spacings(""), error);
    CHECK_THROWS_AS(parse_spacings("1"), error);
    CHECK_THROWS_AS(parse_spacings("1,0"), error);
    CHECK_THROWS_AS(parse_spacings("1,-2"), error);
}

TEST_CASE("value formatting round trips special values") {
    CHECK(format_value(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(format_value(-std::numeric_limits<double>::infinity()) == "-inf");
    CHECK(format_value(std::nan("")) == "nan");
    CHECK(format_value(0.5) == "0.5");
}

TEST_CASE("batch of one pair equals compute_all") {
    GenParams params;
    params.seed = 31;
    params.count = 1;
    params.dims = {18, 14};
    params.spacing = {0.9, 1.4};
    const fs::path dir = temp_dir("batch1");
    const GenResult gen = gen_dataset(params, dir);

    BatchOptions opt;
    const std::vector<ResultRow> rows =
        run_batch(gen.pairs, {"monai", "gdm"}, {{0.9, 1.4}}, opt);
    REQUIRE(rows.size() == 2u * kMetricCount);

    const GridMask ref = load_mask(gen.pairs[0].ref_path);
    const GridMask pred = load_mask(gen.pairs[0].pred_path);
    std::size_t idx = 0;
    for (const std::string& name : {"monai", "gdm"}) {
        const Preset pr = preset(name, opt.p, opt.tau, opt.policy);
        const MetricResult direct = compute_all(ref, pred, pr.config, pr.supports);
        for (int mi = 0; mi < kMetricCount; ++mi, ++idx) {
            const Metric m = static_cast<Metric>(mi);
            CHECK(rows[idx].preset == name);
            CHECK(rows[idx].metric == to_string(m));
            CHECK(rows[idx].spacing == "0.9x1.4");
            if (!pr.supports[static_cast<std::size_t>(mi)]) {
                CHECK(rows[idx].flag == "unsupported");
            } else {
                CHECK(rows[idx].value == direct[m].value);
                CHECK(rows[idx].flag == "ok");
            }
        }
    }
}

TEST_CASE("batch resamples to each requested spacing") {
    GenParams params;
    params.seed = 32;
    params.count = 1;
    params.dims = {20, 20};
    const fs::path dir = temp_dir("batch2");
    const GenResult gen = gen_dataset(params, dir);

    const std::vector<ResultRow> rows =
        run_batch(gen.pairs, {"monai"}, {{1, 1}, {2, 2}}, BatchOptions{});
    REQUIRE(rows.size() == 2u * kMetricCount);
    CHECK(rows[0].spacing == "1x1");
    CHECK(rows[kMetricCount].spacing == "2x2");

    const GridMask ref = load_mask(gen.pairs[0].ref_path);
    const GridMask pred = load_mask(gen.pairs[0].pred_path);
    const Preset pr = preset("monai");
    const MetricResult coarse =
        compute_all(resample_nn(ref, {2, 2}), resample_nn(pred, {2, 2}), pr.config, pr.supports);
    CHECK(rows[kMetricCount].value == coarse[Metric::HD].value);
}

TEST_CASE("result CSV writes deterministically and reads back") {
    GenParams params;
    params.seed = 33;
    params.count = 2;
    params.dims = {14, 14};
    params.empty_frac = 0.5;
    const fs::path dir = temp_dir("csv");
    const GenResult gen = gen_dataset(params, dir);

    const std::vector<ResultRow> rows =
        run_batch(gen.pairs, {"monai", "miseval"}, {{1, 1}}, BatchOptions{});
    const fs::path f1 = dir / "r1.csv", f2 = dir / "r2.csv";
    write_results_csv(rows, f1);
    write_results_csv(rows, f2);
    const std::string text = slurp(f1);
    CHECK(text == slurp(f2));
    CHECK(text.rfind("pair_id,spacing,preset,metric,value,flag\n", 0) == 0);
    CHECK(text.find("warn:") != std::string::npos);  // empty-pred rows are flagged
    CHECK(text.find("unsupported") != std::string::npos);

    const std::vector<ResultRow> back = read_results_csv(f1);
    REQUIRE(back.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(back[i].pair_id == rows[i].pair_id);
        CHECK(back[i].flag == rows[i].flag);
        if (rows[i].flag != "unsupported" && std::isfinite(rows[i].value))
            CHECK(back[i].value == doctest::Approx(rows[i].value).epsilon(1e-8));
    }
}

TEST_CASE("deviation analysis arithmetic") {
    auto row = [](std::string pair, std::string preset, std::string metric, double value,
                  std::string flag = "ok") {
        ResultRow r;
        r.pair_id = std::move(pair);
        r.spacing = "1x1";
        r.preset = std::move(preset);
        r.metric = std::move(metric);
        r.tag = "normal";
        r.value = value;
        r.flag = std::move(flag);
        return r;
    };
    const double inf = std::numeric_limits<double>::infinity();
    const std::vector<ResultRow> rows{
        row("p0", "ref", "hd", 2.0),  row("p1", "ref", "hd", 4.0), row("p2", "ref", "hd", 1.0),
        row("p0", "cand", "hd", 1.0), row("p1", "cand", "hd", 7.0), row("p2", "cand", "hd", inf),
    };
    const DeviationAnalysis dev = deviations(rows, "ref");

    // Candidate deltas: -1, +3, and one non-finite exclusion.
    double mean = 0, sd = 0;
    bool found = false;
    for (const DeviationSummary& s : dev.summaries) {
        if (s.preset != "cand" || !s.tag.empty()) continue;
        found = true;
        CHECK(s.stats.n == 2);
        CHECK(s.stats.excluded == 1);
        mean = s.stats.mean;
        sd = s.stats.sd;
    }
    REQUIRE(found);
    CHECK(mean == doctest::Approx(1.0));
    CHECK(sd == doctest::Approx(2.0));

    // The reference preset deviates from itself by exactly zero.
    for (const DeviationSummary& s : dev.summaries) {
        if (s.preset != "ref" || !s.tag.empty()) continue;
        CHECK(s.stats.mean == 0.0);
        CHECK(s.stats.sd == 0.0);
    }

    CHECK_THROWS_WITH_AS(deviations(rows, "absent"), doctest::Contains("absent"), error);
}

TEST_CASE("deviation records skip unsupported and error rows") {
    std::vector<ResultRow> rows;
    ResultRow ok;
    ok.pair_id = "p0";
    ok.spacing = "1x1";
    ok.preset = "ref";
    ok.metric = "hd";
    ok.value = 1.0;
    ok.flag = "ok";
    rows.push_back(ok);
    ResultRow uns = ok;
    uns.preset = "cand";
    uns.flag = "unsupported";
    rows.push_back(uns);
    ResultRow err = ok;
    err.preset = "cand2";
    err.flag = "error:boom";
    rows.push_back(err);
    const DeviationAnalysis dev = deviations(rows, "ref");
    for (const DeviationRecord& rec : dev.records) CHECK(rec.preset == "ref");
}

TEST_CASE("significance grid on constructed deviations") {
    std::vector<ResultRow> rows;
    auto push = [&](std::string pair, std::string preset, double value) {
        ResultRow r;
        r.pair_id = std::move(pair);
        r.spacing = "1x1";
        r.preset = std::move(preset);
        r.metric = "hd";
        r.tag = "normal";
        r.value = value;
        r.flag = "ok";
        rows.push_back(r);
    };
    for (int i = 0; i < 8; ++i) {
        const std::string pair = "p" + std::to_string(i);
        push(pair, "ref", double(i));
        push(pair, "low", double(i) + 0.01 * (i + 1));   // small positive deltas
        push(pair, "high", double(i) + 1.0 + 0.1 * i);   // large positive deltas
    }
    const DeviationAnalysis dev = deviations(rows, "ref");
    const std::vector<ComparisonRow> grid = significance_grid(dev, 1);
    // Three preset groups (ref included) -> three pairwise comparisons.
    CHECK(grid.size() == 3);
    bool checked = false;
    for (const ComparisonRow& c : grid) {
        if ((c.preset_a == "high" && c.preset_b == "low") ||
            (c.preset_a == "low" && c.preset_b == "high")) {
            checked = true;
            CHECK(c.test.n == 8);
            CHECK(c.test.exact);
            CHECK(c.test.p == doctest::Approx(2.0 / 256.0));
            CHECK(c.test.significant);
        }
    }
    CHECK(checked);

    // Bonferroni by actual comparison count: the denominator grows.
    const std::vector<ComparisonRow> corrected = significance_grid(dev);
    for (const ComparisonRow& c : corrected)
        if (c.preset_a == "high" && c.preset_b == "low")
            CHECK(c.test.significant == (c.test.p < 0.05 / 3.0));
}

TEST_CASE("bench produces positive medians for both crop settings") {
    GenParams params;
    params.seed = 34;
    params.count = 1;
    params.dims = {16, 16};
    const fs::path dir = temp_dir("bench");
    const GenResult gen = gen_dataset(params, dir);
    const std::vector<BenchRow> rows = bench(gen.pairs, {"monai"}, 3, BatchOptions{}, true, true);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].median_ms >= 0.0);
    CHECK(rows[1].median_ms >= 0.0);
    CHECK(rows[0].crop != rows[1].crop);
}
