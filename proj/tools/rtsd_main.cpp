#include "rtsd/bench/stream.hpp"
#include "rtsd/data/montage.hpp"
#include "rtsd/data/resample.hpp"
#include "rtsd/data/synth.hpp"
#include "rtsd/detectors/model_io.hpp"
#include "rtsd/error.hpp"
#include "rtsd/features/extractor.hpp"
#include "rtsd/jobs/jobs.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <type_traits>

namespace fs = std::filesystem;
using namespace rtsd;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitRealtime = 3;

fs::path default_run_dir(std::uint64_t seed) {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y%m%dT%H%M%SZ", &tm);
    return fs::path("runs") / (std::string(stamp) + "-seed" + std::to_string(seed));
}

void print_file(const fs::path& path) {
    std::ifstream in(path);
    std::cout << in.rdbuf();
}

template <typename Fn>
void write_output(const std::string& path, Fn&& fn, std::ios::openmode mode = std::ios::out) {
    if (path.empty() || path == "-") {
        fn(std::cout);
        return;
    }
    std::ofstream out(path, mode);
    require(static_cast<bool>(out), ErrorCode::Io, "cannot open '" + path + "' for writing");
    fn(out);
    require(static_cast<bool>(out), ErrorCode::Io, "write failed for '" + path + "'");
}

// Job flags shared by train/eval/sweep/report. A --config file is loaded
// first; flags given on the command line override its fields.
struct JobFlags {
    std::string config;
    std::string corpus;
    std::string out_dir;
    std::string model;
    std::string detector = "linear";
    std::string feature = "bands";
    int sample_rate_hz = 200;
    double window_s = 4.0;
    double shift_s = 1.0;
    double gap_merge_s = 0.0;
    double min_event_s = 0.0;
    std::vector<double> margins_s{3.0, 5.0};
    double test_fraction = 0.3;
    std::uint64_t seed = 0;
    double learning_rate = 0.5;
    std::size_t epochs = 30;
    std::size_t batch_size = 64;
    double l2 = 1e-4;
    std::size_t energy_band = 0;
    std::vector<double> sweep_windows_s;
    std::vector<double> sweep_shifts_s;

    std::vector<std::pair<CLI::Option*, std::function<void(JobConfig&)>>> setters;

    template <typename T>
    void add(CLI::App* app, const std::string& name, T& field, const std::string& help,
             std::function<void(JobConfig&)> apply) {
        CLI::Option* opt = app->add_option(name, field, help);
        if constexpr (std::is_same_v<T, std::vector<double>>) opt->delimiter(',');
        setters.emplace_back(opt, std::move(apply));
    }

    void attach(CLI::App* app, bool with_sweep) {
        app->add_option("--config", config, "JSON job config; flags override its fields");
        add(app, "--corpus", corpus, "Corpus manifest (corpus.json)", [this](JobConfig& c) { c.corpus = corpus; });
        add(app, "--out-dir", out_dir, "Run directory (default runs/<timestamp>-seed<seed>)",
            [this](JobConfig& c) { c.out_dir = out_dir; });
        add(app, "--model", model, "Use this model instead of training",
            [this](JobConfig& c) { c.model = fs::path(model); });
        add(app, "--detector", detector, "linear | energy",
            [this](JobConfig& c) { c.detector = parse_detector_kind(detector); });
        add(app, "--feature", feature, "raw | sincnet | stft | bands | lfcc | multirate", [this](JobConfig& c) {
            try {
                c.feature = parse_extractor_id(feature);
            } catch (const Error& e) {
                fail(ErrorCode::Validation, "--feature: " + e.detail());
            }
        });
        add(app, "--sample-rate", sample_rate_hz, "Pipeline sample rate in Hz",
            [this](JobConfig& c) { c.sample_rate_hz = sample_rate_hz; });
        add(app, "--window-sec", window_s, "Window length in seconds",
            [this](JobConfig& c) { c.spec.window_s = window_s; });
        add(app, "--shift-sec", shift_s, "Window shift in seconds", [this](JobConfig& c) { c.spec.shift_s = shift_s; });
        add(app, "--gap-merge-sec", gap_merge_s, "Merge hypothesis gaps up to this length",
            [this](JobConfig& c) { c.gap_merge_s = gap_merge_s; });
        add(app, "--min-event-sec", min_event_s, "Drop hypothesis events shorter than this",
            [this](JobConfig& c) { c.min_event_s = min_event_s; });
        add(app, "--margin-sec", margins_s, "MARGIN tolerances in seconds",
            [this](JobConfig& c) { c.margins_s = margins_s; });
        add(app, "--test-fraction", test_fraction, "Fraction of recordings held out",
            [this](JobConfig& c) { c.test_fraction = test_fraction; });
        add(app, "--seed", seed, "Seed for split and training", [this](JobConfig& c) { c.seed = seed; });
        add(app, "--learning-rate", learning_rate, "Linear detector learning rate",
            [this](JobConfig& c) { c.train.learning_rate = learning_rate; });
        add(app, "--epochs", epochs, "Linear detector epochs", [this](JobConfig& c) { c.train.epochs = epochs; });
        add(app, "--batch-size", batch_size, "Linear detector mini-batch size",
            [this](JobConfig& c) { c.train.batch_size = batch_size; });
        add(app, "--l2", l2, "Linear detector L2 penalty", [this](JobConfig& c) { c.train.l2 = l2; });
        add(app, "--energy-band", energy_band, "Band index scored by the energy detector",
            [this](JobConfig& c) { c.energy_band = energy_band; });
        if (with_sweep) {
            add(app, "--sweep-window-sec", sweep_windows_s, "Window lengths to sweep (shift fixed)",
                [this](JobConfig& c) { c.sweep_windows_s = sweep_windows_s; });
            add(app, "--sweep-shift-sec", sweep_shifts_s, "Shift lengths to sweep (window fixed)",
                [this](JobConfig& c) { c.sweep_shifts_s = sweep_shifts_s; });
        }
    }

    JobConfig build() const {
        JobConfig cfg = config.empty() ? JobConfig{} : load_job_config(config);
        for (const auto& [opt, apply] : setters) {
            if (opt->count() > 0) apply(cfg);
        }
        cfg.train.seed = cfg.seed;
        if (cfg.out_dir.empty()) cfg.out_dir = default_run_dir(cfg.seed);
        cfg.validate();
        return cfg;
    }
};

int cmd_synth(const SynthCorpusConfig& sc, const std::string& out_dir) {
    const fs::path manifest = write_synth_corpus(sc, out_dir);
    std::cout << "wrote " << sc.n_recordings << " recordings, manifest " << manifest.string() << '\n';
    return kExitOk;
}

struct IngestArgs {
    std::string input;
    std::string output;
    std::string labels_in;
    std::string labels_out;
    std::string montage_file;
    bool bipolar = false;
    int source_rate_hz = 0;
    int target_rate_hz = 200;
};

int cmd_ingest(const IngestArgs& a) {
    Recording rec;
    if (fs::path(a.input).extension() == ".csv") {
        require(a.source_rate_hz > 0, ErrorCode::Validation, "--sample-rate is required for CSV input");
        rec = import_csv(a.input, a.source_rate_hz);
    } else {
        rec = load_recording(a.input);
    }
    if (a.bipolar || !a.montage_file.empty()) {
        const MontageSpec spec = a.montage_file.empty() ? default_bipolar_montage() : load_montage(a.montage_file);
        rec = to_bipolar(rec, spec);
    }
    if (rec.sample_rate_hz() != a.target_rate_hz) rec = resample(rec, a.target_rate_hz);
    save_recording(rec, a.output);
    std::cout << "wrote " << a.output << ": " << rec.n_channels() << " channels, " << rec.n_samples() << " samples at "
              << rec.sample_rate_hz() << " Hz (" << to_string(rec.montage()) << ")\n";
    if (!a.labels_in.empty()) {
        const LabelTrack labels = load_labels(a.labels_in, rec.duration_s());
        const std::string dst = a.labels_out.empty() ? fs::path(a.output).replace_extension(".lbl").string() : a.labels_out;
        save_labels(labels, dst);
        std::cout << "wrote " << dst << ": " << labels.seizure_events().size() << " seizure events\n";
    }
    return kExitOk;
}

struct ExtractArgs {
    std::string input;
    std::string output;
    std::string feature = "bands";
    std::string format = "text";
    double window_s = 4.0;
    double shift_s = 1.0;
    std::size_t window_index = 0;
};

int cmd_extract(const ExtractArgs& a) {
    const Recording rec = load_recording(a.input);
    const WindowSpec spec{a.window_s, a.shift_s};
    const std::size_t n = window_count(rec.n_samples(), rec.sample_rate_hz(), spec);
    require(a.window_index < n, ErrorCode::Validation,
            "--window-index " + std::to_string(a.window_index) + " out of range (recording has " + std::to_string(n) +
                " windows)");
    ExtractorOptions xo;
    xo.sample_rate_hz = rec.sample_rate_hz();
    const auto extractor = make_extractor(a.feature, xo);
    const Window w = extract_window(rec, spec, a.window_index);
    const FeatureTensor t = extractor->extract(w.view());
    const TensorFormat fmt = a.format == "binary" ? TensorFormat::Binary : TensorFormat::Text;
    write_output(a.output, [&](std::ostream& o) { write_tensor(o, t, fmt); }, std::ios::out | std::ios::binary);
    std::cerr << to_string(t.id()) << " tensor " << to_string(t.shape()) << '\n';
    return kExitOk;
}

int cmd_train(const JobConfig& cfg, const std::string& output) {
    const Corpus corpus = load_corpus(cfg.corpus);
    const auto data = load_corpus_data(corpus, cfg.sample_rate_hz);
    const auto split = split_recordings(data.size(), cfg.test_fraction, cfg.seed);
    ExtractorOptions xo;
    xo.sample_rate_hz = cfg.sample_rate_hz;
    const auto extractor = make_extractor(cfg.feature, xo);
    const WindowDataset ds = build_dataset(data, split.first, *extractor, cfg.spec);
    const DetectorModel model = fit_detector(cfg, ds);
    const fs::path dst = output.empty() ? cfg.out_dir / "model.rtsdm" : fs::path(output);
    if (dst.has_parent_path()) fs::create_directories(dst.parent_path());
    save_model(model, dst);
    std::cout << "trained " << to_string(cfg.detector) << " detector on " << ds.features.size() << " windows from "
              << split.first.size() << " recordings; model " << dst.string() << '\n';
    return kExitOk;
}

struct RunArgs {
    std::string input;
    std::string model;
    std::string output;
    std::string scores_csv;
    double window_s = 4.0;
    double shift_s = 1.0;
    double threshold = 0.5;
    double gap_merge_s = 0.0;
    double min_event_s = 0.0;
};

int cmd_run(const RunArgs& a) {
    const Recording rec = load_recording(a.input);
    const DetectorModel model = load_model(a.model);
    ExtractorOptions xo;
    xo.sample_rate_hz = rec.sample_rate_hz();
    const auto extractor = make_extractor(model_extractor(model), xo);
    const auto detector = make_detector(model);
    const WindowSpec spec{a.window_s, a.shift_s};
    const EventizeOpts opts{a.threshold, a.gap_merge_s, a.min_event_s};
    opts.validate();
    const StreamResult sr = run_stream(rec, *extractor, *detector, spec);
    write_output(a.output, [&](std::ostream& o) { write_hypothesis(o, sr.hypothesis, opts); });
    if (!a.scores_csv.empty()) {
        const std::vector<ScoredRecording> scored{{fs::path(a.input).stem().string(), {}, sr.hypothesis.scores}};
        write_output(a.scores_csv, [&](std::ostream& o) { write_scores_csv(o, scored); });
    }
    const RealtimeCheck check = check_realtime(sr.latency, spec.shift_s);
    std::cerr << sr.hypothesis.scores.size() << " windows streamed; " << check.summary << '\n';
    return kExitOk;
}

int cmd_eval(const JobConfig& cfg) {
    run_eval_job(cfg);
    print_file(cfg.out_dir / "metrics.txt");
    std::cout << "run directory: " << cfg.out_dir.string() << '\n';
    return kExitOk;
}

struct BenchArgs {
    std::string input;
    std::string model;
    std::string feature = "raw";
    std::string out_dir;
    double window_s = 4.0;
    double shift_s = 1.0;
    double budget_s = 0.0;  // 0: the shift
    double duration_s = 30.0;
    std::size_t channels = 20;
    std::uint64_t seed = 0;
    bool include_warmup = false;
    bool strict = false;
};

int cmd_bench(const BenchArgs& a) {
    Recording rec;
    if (a.input.empty()) {
        SynthConfig sc;
        sc.duration_s = a.duration_s;
        sc.n_channels = a.channels;
        sc.seed = a.seed;
        rec = synth_recording(sc).recording;
    } else {
        rec = load_recording(a.input);
    }
    ExtractorOptions xo;
    xo.sample_rate_hz = rec.sample_rate_hz();
    std::shared_ptr<const Detector> detector;
    std::unique_ptr<FeatureExtractor> extractor;
    if (a.model.empty()) {
        extractor = make_extractor(a.feature, xo);
        const WindowSpec spec{a.window_s, a.shift_s};
        const Window w = extract_window(rec, spec, 0);
        // Untrained linear model of the right shape: same arithmetic cost as a trained one.
        detector = std::make_shared<LinearDetector>(zero_model(extractor->id(), extractor->extract(w.view()).shape()));
    } else {
        const DetectorModel model = load_model(a.model);
        extractor = make_extractor(model_extractor(model), xo);
        detector = make_detector(model);
    }
    const WindowSpec spec{a.window_s, a.shift_s};
    const LatencyOptions opts{a.include_warmup, a.strict};
    const StreamResult sr = run_stream(rec, *extractor, *detector, spec, opts);
    const double budget = a.budget_s > 0.0 ? a.budget_s : spec.shift_s;
    const LatencyReport latency = summarize_latency(sr.latency.windows, budget, opts);
    write_latency_text(std::cout, latency);
    const RealtimeCheck check = check_realtime(latency, budget);
    std::cout << check.summary << '\n';
    if (!a.out_dir.empty()) {
        fs::create_directories(a.out_dir);
        write_output((fs::path(a.out_dir) / "latency.json").string(),
                     [&](std::ostream& o) { write_latency_json(o, latency); });
        write_output((fs::path(a.out_dir) / "latency.csv").string(),
                     [&](std::ostream& o) { write_latency_csv(o, latency); });
    }
    return check.pass ? kExitOk : kExitRealtime;
}

int cmd_sweep(const JobConfig& cfg) {
    const auto rows = run_sweep(cfg);
    write_sweep_table(std::cout, rows);
    std::cout << "run directory: " << cfg.out_dir.string() << '\n';
    return kExitOk;
}

int cmd_report(const JobConfig& cfg, const std::string& scores, const std::string& format) {
    const MetricsReport report = run_report_job(cfg, scores);
    if (format == "json") {
        write_report_json(std::cout, report);
    } else {
        write_report_text(std::cout, report);
    }
    return kExitOk;
}

int exit_code_for(ErrorCode code) {
    return code == ErrorCode::Validation || code == ErrorCode::InvalidArgument ? kExitValidation : kExitRuntime;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"rtsd: real-time EEG seizure detection pipeline"};
    app.require_subcommand(1);
    std::function<int()> action;

    SynthCorpusConfig synth_cfg;
    std::string synth_dir;
    auto* synth = app.add_subcommand("synth", "Write a synthetic EEG corpus");
    synth->add_option("--out-dir", synth_dir, "Corpus directory")->required();
    synth->add_option("--recordings", synth_cfg.n_recordings, "Number of recordings")->capture_default_str();
    synth->add_option("--duration-sec", synth_cfg.duration_s, "Recording length")->capture_default_str();
    synth->add_option("--channels", synth_cfg.n_channels, "Channels per recording")->capture_default_str();
    synth->add_option("--events", synth_cfg.events_per_recording, "Seizures per recording")->capture_default_str();
    synth->add_option("--background-uv", synth_cfg.background_amplitude_uv, "Background RMS")->capture_default_str();
    synth->add_option("--ictal-uv", synth_cfg.ictal_amplitude_uv, "Ictal component RMS")->capture_default_str();
    synth->add_option("--seed", synth_cfg.seed, "Seed")->capture_default_str();
    synth->callback([&] { action = [&] { return cmd_synth(synth_cfg, synth_dir); }; });

    IngestArgs ingest_args;
    auto* ingest = app.add_subcommand("ingest", "Convert CSV or .eeg input to a pipeline-ready .eeg file");
    ingest->add_option("--input", ingest_args.input, "CSV (header row of channel names) or .eeg")->required();
    ingest->add_option("--output", ingest_args.output, "Output .eeg")->required();
    ingest->add_option("--sample-rate", ingest_args.source_rate_hz, "Sample rate of CSV input");
    ingest->add_option("--target-rate", ingest_args.target_rate_hz, "Pipeline rate")->capture_default_str();
    ingest->add_flag("--bipolar", ingest_args.bipolar, "Apply the default bipolar montage");
    ingest->add_option("--montage", ingest_args.montage_file, "Bipolar montage file (one ANODE CATHODE pair per line)");
    ingest->add_option("--labels", ingest_args.labels_in, "Annotation file to validate and copy");
    ingest->add_option("--labels-out", ingest_args.labels_out, "Where to write the annotation (default <output>.lbl)");
    ingest->callback([&] { action = [&] { return cmd_ingest(ingest_args); }; });

    ExtractArgs extract_args;
    auto* extract = app.add_subcommand("extract", "Dump one window's feature tensor");
    extract->add_option("--input", extract_args.input, "Recording (.eeg)")->required();
    extract->add_option("--feature", extract_args.feature, "Extractor name")->capture_default_str();
    extract->add_option("--window-sec", extract_args.window_s, "Window length")->capture_default_str();
    extract->add_option("--shift-sec", extract_args.shift_s, "Window shift")->capture_default_str();
    extract->add_option("--window-index", extract_args.window_index, "Window to extract")->capture_default_str();
    extract->add_option("--format", extract_args.format, "text | binary")
        ->check(CLI::IsMember({"text", "binary"}))
        ->capture_default_str();
    extract->add_option("--output", extract_args.output, "Output file (default stdout)");
    extract->callback([&] { action = [&] { return cmd_extract(extract_args); }; });

    JobFlags train_flags;
    std::string train_output;
    auto* train = app.add_subcommand("train", "Fit a detector on the training split of a corpus");
    train_flags.attach(train, false);
    train->add_option("--output", train_output, "Model path (default <out-dir>/model.rtsdm)");
    train->callback([&] { action = [&] { return cmd_train(train_flags.build(), train_output); }; });

    RunArgs run_args;
    auto* run = app.add_subcommand("run", "Stream one recording through a model and write the hypothesis");
    run->add_option("--input", run_args.input, "Recording (.eeg)")->required();
    run->add_option("--model", run_args.model, "Model file")->required();
    run->add_option("--output", run_args.output, "Hypothesis file (default stdout)");
    run->add_option("--scores-csv", run_args.scores_csv, "Also write per-window scores");
    run->add_option("--window-sec", run_args.window_s, "Window length")->capture_default_str();
    run->add_option("--shift-sec", run_args.shift_s, "Window shift")->capture_default_str();
    run->add_option("--threshold", run_args.threshold, "Decision threshold")->capture_default_str();
    run->add_option("--gap-merge-sec", run_args.gap_merge_s, "Merge gaps up to this length")->capture_default_str();
    run->add_option("--min-event-sec", run_args.min_event_s, "Drop shorter events")->capture_default_str();
    run->callback([&] { action = [&] { return cmd_run(run_args); }; });

    JobFlags eval_flags;
    auto* eval = app.add_subcommand("eval", "Train, stream the test split and write every metric family");
    eval_flags.attach(eval, false);
    eval->callback([&] { action = [&] { return cmd_eval(eval_flags.build()); }; });

    BenchArgs bench_args;
    auto* bench = app.add_subcommand("bench", "Per-window latency against the shift budget (exit 3 on violation)");
    bench->add_option("--input", bench_args.input, "Recording (.eeg); default is a synthetic one");
    bench->add_option("--model", bench_args.model, "Model file; default is an untrained linear model");
    bench->add_option("--feature", bench_args.feature, "Extractor when no model is given")->capture_default_str();
    bench->add_option("--window-sec", bench_args.window_s, "Window length")->capture_default_str();
    bench->add_option("--shift-sec", bench_args.shift_s, "Window shift")->capture_default_str();
    bench->add_option("--budget-sec", bench_args.budget_s, "Per-window time budget; default is the shift")
        ->check(CLI::NonNegativeNumber);
    bench->add_option("--duration-sec", bench_args.duration_s, "Synthetic recording length")->capture_default_str();
    bench->add_option("--channels", bench_args.channels, "Synthetic channel count")->capture_default_str();
    bench->add_option("--seed", bench_args.seed, "Synthetic seed")->capture_default_str();
    bench->add_flag("--include-warmup", bench_args.include_warmup, "Judge the first window too");
    bench->add_flag("--strict", bench_args.strict, "Require max < budget");
    bench->add_option("--out-dir", bench_args.out_dir, "Write latency.json and latency.csv here");
    bench->callback([&] { action = [&] { return cmd_bench(bench_args); }; });

    JobFlags sweep_flags;
    auto* sweep = app.add_subcommand("sweep", "Evaluate a list of window or shift lengths");
    sweep_flags.attach(sweep, true);
    sweep->callback([&] { action = [&] { return cmd_sweep(sweep_flags.build()); }; });

    JobFlags report_flags;
    std::string report_scores;
    std::string report_format = "text";
    auto* report = app.add_subcommand("report", "Re-score saved per-window scores against corpus labels");
    report_flags.attach(report, false);
    report->add_option("--scores", report_scores, "scores.csv from eval or run")->required();
    report->add_option("--format", report_format, "text | json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    report->callback(
        [&] { action = [&] { return cmd_report(report_flags.build(), report_scores, report_format); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        return action ? action() : kExitValidation;
    } catch (const Error& e) {
        std::cerr << "rtsd: " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "rtsd: " << e.what() << '\n';
        return kExitRuntime;
    }
}
