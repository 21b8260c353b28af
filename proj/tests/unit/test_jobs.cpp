#include "rtsd/jobs/jobs.hpp"
#include "test_support.hpp"

#include <sstream>

namespace rtsd {
namespace {

using test::read_file;
using test::throws_code;
using test::write_file;

std::filesystem::path small_corpus(const test::TempDir& dir, std::uint64_t seed = 3) {
    SynthCorpusConfig cfg;
    cfg.n_recordings = 6;
    cfg.duration_s = 60.0;
    cfg.n_channels = 4;
    cfg.seed = seed;
    return write_synth_corpus(cfg, dir / "corpus");
}

JobConfig base_job(const std::filesystem::path& corpus, const std::filesystem::path& out) {
    JobConfig cfg;
    cfg.corpus = corpus;
    cfg.out_dir = out;
    cfg.train.epochs = 10;
    return cfg;
}

TEST(JobConfig, ParsesEveryKey) {
    const JobConfig cfg = parse_job_config(R"({
        "corpus": "c.json", "out_dir": "out", "detector": "energy", "feature": "bands",
        "sample_rate_hz": 100, "window_sec": 2, "shift_sec": 0.5, "gap_merge_sec": 1,
        "min_event_sec": 2, "margin_sec": [1, 2, 4], "test_fraction": 0.25, "seed": 7,
        "learning_rate": 0.1, "epochs": 3, "batch_size": 8, "l2": 0, "energy_band": 2})");
    EXPECT_EQ(cfg.detector, DetectorKind::Energy);
    EXPECT_EQ(cfg.sample_rate_hz, 100);
    EXPECT_EQ(cfg.spec.window_s, 2.0);
    EXPECT_EQ(cfg.spec.shift_s, 0.5);
    EXPECT_EQ(cfg.margins_s, (std::vector<double>{1, 2, 4}));
    EXPECT_EQ(cfg.train.batch_size, 8u);
    EXPECT_EQ(cfg.energy_band, 2u);
    EXPECT_NO_THROW(cfg.validate());
    // Serialised form parses back to the same settings.
    const JobConfig back = parse_job_config(job_config_json(cfg));
    EXPECT_EQ(job_config_json(back), job_config_json(cfg));
}

TEST(JobConfig, RejectsUnknownKey) {
    std::string msg;
    EXPECT_TRUE(throws_code([&] { parse_job_config(R"({"corpus": "c", "window_secs": 4})"); }, ErrorCode::Validation,
                            &msg));
    EXPECT_NE(msg.find("window_secs"), std::string::npos) << msg;
}

TEST(JobConfig, ValidationNamesTheField) {
    struct Case {
        const char* json;
        const char* field;
    };
    const Case cases[] = {
        {R"({"corpus": "c", "window_sec": 1, "shift_sec": 2})", "window_sec"},
        {R"({"corpus": "c", "test_fraction": 1.5})", "test_fraction"},
        {R"({"corpus": "c", "margin_sec": [-1]})", "margin_sec"},
        {R"({"corpus": "c", "epochs": 0})", "epochs"},
        {R"({"corpus": "c", "detector": "energy", "feature": "raw"})", "feature"},
        {R"({"window_sec": 4})", "corpus"},
        {R"({"corpus": "c", "seed": -3})", "seed"},
        {R"({"corpus": "c", "shift_sec": "one"})", "shift_sec"},
    };
    for (const auto& c : cases) {
        std::string msg;
        EXPECT_TRUE(throws_code(
            [&] {
                const JobConfig cfg = parse_job_config(c.json);
                cfg.validate();
            },
            ErrorCode::Validation, &msg))
            << c.json;
        EXPECT_NE(msg.find(c.field), std::string::npos) << c.json << " -> " << msg;
    }
    EXPECT_TRUE(throws_code([] { parse_job_config("{not json"); }, ErrorCode::Validation));
}

TEST(Split, DisjointCoveringAndSeeded) {
    for (std::size_t n = 2; n < 30; ++n) {
        const auto [train, test] = split_recordings(n, 0.3, 11);
        EXPECT_FALSE(train.empty());
        EXPECT_FALSE(test.empty());
        std::vector<std::size_t> all = train;
        all.insert(all.end(), test.begin(), test.end());
        std::sort(all.begin(), all.end());
        for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(all[i], i);
        EXPECT_TRUE(std::is_sorted(test.begin(), test.end()));
        EXPECT_EQ(split_recordings(n, 0.3, 11), std::make_pair(train, test));
    }
    EXPECT_TRUE(throws_code([] { split_recordings(1, 0.3, 0); }, ErrorCode::DegenerateDataset));
}

TEST(ScoresCsv, RoundTripsExactly) {
    std::vector<ScoredRecording> s(2);
    s[0].id = "rec000";
    s[0].scores = {0.1, 1.0 / 3.0, 0.999999999999, 0.0};
    s[1].id = "rec001";
    s[1].scores = {1.0, 2.0e-17};
    std::stringstream io;
    write_scores_csv(io, s);
    const auto back = read_scores_csv(io);
    ASSERT_EQ(back.size(), 2u);
    EXPECT_EQ(back[0].id, "rec000");
    EXPECT_EQ(back[0].scores, s[0].scores);
    EXPECT_EQ(back[1].scores, s[1].scores);
    std::istringstream bad("id,window,score\nrec000,0,abc\n");
    EXPECT_TRUE(throws_code([&] { read_scores_csv(bad); }, ErrorCode::MalformedData));
}

TEST(EvalJob, RepeatRunsAreByteIdentical) {
    test::TempDir dir("jobs_repeat");
    const auto corpus = small_corpus(dir);
    const MetricsReport a = run_eval_job(base_job(corpus, dir / "a"));
    const MetricsReport b = run_eval_job(base_job(corpus, dir / "b"));
    EXPECT_EQ(a.curve.auroc, b.curve.auroc);
    for (const char* f : {"metrics.txt", "metrics.json", "roc.csv", "pr.csv", "scores.csv", "model.rtsdm"}) {
        EXPECT_EQ(read_file(dir / "a" / f), read_file(dir / "b" / f)) << f;
    }
    for (const char* f : {"timing.json", "timing.csv", "config.json"}) {
        EXPECT_TRUE(std::filesystem::exists(dir / "a" / f)) << f;
    }
    EXPECT_FALSE(read_file(dir / "a" / "metrics.txt").empty());
    EXPECT_TRUE(std::filesystem::is_directory(dir / "a" / "hyp"));
}

TEST(EvalJob, ReportJobReproducesMetrics) {
    test::TempDir dir("jobs_report");
    const auto corpus = small_corpus(dir);
    run_eval_job(base_job(corpus, dir / "eval"));
    run_report_job(base_job(corpus, dir / "report"), dir / "eval" / "scores.csv");
    EXPECT_EQ(read_file(dir / "eval" / "metrics.txt"), read_file(dir / "report" / "metrics.txt"));
    EXPECT_EQ(read_file(dir / "eval" / "roc.csv"), read_file(dir / "report" / "roc.csv"));
}

TEST(EvalJob, MissingLabelFileIsNamed) {
    test::TempDir dir("jobs_missing");
    const auto corpus = small_corpus(dir);
    std::filesystem::remove(dir / "corpus" / "rec002.lbl");
    std::string msg;
    EXPECT_TRUE(throws_code([&] { run_eval_job(base_job(corpus, dir / "out")); }, ErrorCode::Io, &msg));
    EXPECT_NE(msg.find("rec002"), std::string::npos) << msg;
}

TEST(EvalJob, EnergyDetectorRuns) {
    test::TempDir dir("jobs_energy");
    const auto corpus = small_corpus(dir);
    JobConfig cfg = base_job(corpus, dir / "out");
    cfg.detector = DetectorKind::Energy;
    const MetricsReport r = run_eval_job(cfg);
    EXPECT_GT(r.curve.auroc, 0.5);
}

TEST(Sweep, RejectsWindowShorterThanShift) {
    test::TempDir dir("jobs_sweep_reject");
    const auto corpus = small_corpus(dir);
    JobConfig cfg = base_job(corpus, dir / "sweep");
    cfg.sweep_shifts_s = {1.0, 8.0};
    const auto rows = run_sweep(cfg);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_TRUE(rows[0].ok);
    EXPECT_FALSE(rows[1].ok);
    EXPECT_NE(rows[1].reason.find("shorter than shift"), std::string::npos) << rows[1].reason;
    const std::string csv = read_file(dir / "sweep" / "sweep.csv");
    EXPECT_NE(csv.find("rejected"), std::string::npos);
}

TEST(Sweep, SingleSettingMatchesEval) {
    test::TempDir dir("jobs_sweep_one");
    const auto corpus = small_corpus(dir);
    const MetricsReport eval = run_eval_job(base_job(corpus, dir / "eval"));
    JobConfig cfg = base_job(corpus, dir / "sweep");
    cfg.sweep_windows_s = {4.0};
    const auto rows = run_sweep(cfg);
    ASSERT_EQ(rows.size(), 1u);
    ASSERT_TRUE(rows[0].ok);
    EXPECT_EQ(rows[0].auroc, eval.curve.auroc);
    EXPECT_EQ(rows[0].auprc, eval.curve.auprc);
}

TEST(Sweep, WindowLengthsProduceTimedRows) {
    test::TempDir dir("jobs_sweep_windows");
    const auto corpus = small_corpus(dir);
    JobConfig cfg = base_job(corpus, dir / "sweep");
    cfg.sweep_windows_s = {1.0, 4.0, 12.0};
    const auto rows = run_sweep(cfg);
    ASSERT_EQ(rows.size(), 3u);
    for (const auto& r : rows) {
        EXPECT_TRUE(r.ok) << r.setting << ": " << r.reason;
        EXPECT_GT(r.mean_window_s, 0.0);
    }
    EXPECT_LT(rows[0].mean_window_s, rows[2].mean_window_s);
    const std::string timing = read_file(dir / "sweep" / "sweep_timing.csv");
    EXPECT_EQ(timing.rfind("setting,window_s,shift_s,mean_window_s\n", 0), 0u);
}

TEST(Corpus, ManifestRoundTrip) {
    test::TempDir dir("jobs_manifest");
    const auto manifest = small_corpus(dir);
    const Corpus c = load_corpus(manifest);
    ASSERT_EQ(c.entries.size(), 6u);
    EXPECT_EQ(c.entries[0].id, "rec000");
    save_corpus(c, dir / "copy.json");
    const Corpus back = load_corpus(dir / "copy.json");
    ASSERT_EQ(back.entries.size(), 6u);
    write_file(dir / "bad.json", R"({"recordings": [{"id": "x", "signal": "a", "labels": "b", "extra": 1}]})");
    EXPECT_TRUE(throws_code([&] { load_corpus(dir / "bad.json"); }, ErrorCode::Validation));
}

} // namespace
} // namespace rtsd
