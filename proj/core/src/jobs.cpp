#include "rtsd/jobs/jobs.hpp"

#include "rtsd/data/resample.hpp"
#include "rtsd/data/synth.hpp"
#include "rtsd/detectors/energy_detector.hpp"
#include "rtsd/error.hpp"
#include "rtsd/features/extractor.hpp"
#include "rtsd/random.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

namespace rtsd {
namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

[[noreturn]] void rethrow_with(const Error& e, const std::string& context) {
    fail(e.code(), context + ": " + e.detail());
}

std::string read_text(const fs::path& path, std::string_view what) {
    std::ifstream in(path, std::ios::binary);
    require(static_cast<bool>(in), ErrorCode::Io, "cannot open " + std::string(what) + " '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    require(static_cast<bool>(out), ErrorCode::Io, "cannot open '" + path.string() + "' for writing");
    out << text;
    require(static_cast<bool>(out), ErrorCode::Io, "write failed for '" + path.string() + "'");
}

template <typename Fn>
void write_file(const fs::path& path, Fn&& fn) {
    std::ostringstream ss;
    fn(ss);
    write_text(path, ss.str());
}

fs::path resolve(const fs::path& root, const fs::path& p) {
    return p.is_absolute() ? p : root / p;
}

std::string format_seconds(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", s);
    return buf;
}

// Field readers: every type error names the field.
double get_number(const Json& v, const std::string& key) {
    if (!v.is_number()) fail(ErrorCode::Validation, "field '" + key + "' must be a number");
    return v.get<double>();
}

std::uint64_t get_unsigned(const Json& v, const std::string& key) {
    if (!v.is_number_unsigned()) {
        fail(ErrorCode::Validation, "field '" + key + "' must be a non-negative integer");
    }
    return v.get<std::uint64_t>();
}

std::string get_string(const Json& v, const std::string& key) {
    if (!v.is_string()) fail(ErrorCode::Validation, "field '" + key + "' must be a string");
    return v.get<std::string>();
}

std::vector<double> get_number_list(const Json& v, const std::string& key) {
    std::vector<double> out;
    if (v.is_number()) {
        out.push_back(v.get<double>());
        return out;
    }
    if (!v.is_array()) fail(ErrorCode::Validation, "field '" + key + "' must be a number or a list of numbers");
    for (const auto& e : v) out.push_back(get_number(e, key));
    return out;
}

Json number_list(const std::vector<double>& v) {
    Json a = Json::array();
    for (double x : v) a.push_back(x);
    return a;
}

void write_metric_files(const fs::path& dir, const MetricsReport& report) {
    write_file(dir / "metrics.txt", [&](std::ostream& o) { write_report_text(o, report); });
    write_file(dir / "metrics.json", [&](std::ostream& o) { write_report_json(o, report); });
    write_file(dir / "roc.csv", [&](std::ostream& o) { write_roc_csv(o, report.curve); });
    write_file(dir / "pr.csv", [&](std::ostream& o) { write_pr_csv(o, report.curve); });
}

EvalOptions eval_options(const JobConfig& cfg) {
    EvalOptions eo;
    eo.spec = cfg.spec;
    eo.gap_merge_s = cfg.gap_merge_s;
    eo.min_event_s = cfg.min_event_s;
    eo.margins_s = cfg.margins_s;
    return eo;
}

} // namespace

Corpus load_corpus(const fs::path& manifest) {
    const std::string text = read_text(manifest, "corpus manifest");
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        fail(ErrorCode::Validation, "corpus manifest '" + manifest.string() + "' is not valid JSON: " + e.what());
    }
    Corpus corpus;
    corpus.root = manifest.parent_path();
    require(j.is_object() && j.contains("recordings") && j["recordings"].is_array(), ErrorCode::Validation,
            "corpus manifest '" + manifest.string() + "' needs a 'recordings' list");
    std::set<std::string> ids;
    for (const auto& r : j["recordings"]) {
        require(r.is_object(), ErrorCode::Validation, "corpus entries must be objects");
        for (const auto& [key, value] : r.items()) {
            if (key != "id" && key != "signal" && key != "labels") {
                fail(ErrorCode::Validation, "unknown corpus entry field '" + key + "'");
            }
        }
        for (const char* key : {"id", "signal", "labels"}) {
            require(r.contains(key), ErrorCode::Validation, std::string("corpus entry is missing '") + key + "'");
        }
        CorpusEntry e{get_string(r["id"], "id"), get_string(r["signal"], "signal"), get_string(r["labels"], "labels")};
        require(ids.insert(e.id).second, ErrorCode::Validation, "duplicate corpus id '" + e.id + "'");
        corpus.entries.push_back(std::move(e));
    }
    return corpus;
}

void save_corpus(const Corpus& corpus, const fs::path& manifest) {
    Json list = Json::array();
    for (const auto& e : corpus.entries) {
        list.push_back({{"id", e.id}, {"signal", e.signal.generic_string()}, {"labels", e.labels.generic_string()}});
    }
    Json j;
    j["recordings"] = list;
    write_text(manifest, j.dump(2) + "\n");
}

fs::path write_synth_corpus(const SynthCorpusConfig& cfg, const fs::path& dir) {
    require(cfg.n_recordings >= 2, ErrorCode::Validation, "synthetic corpus needs at least two recordings");
    fs::create_directories(dir);
    Rng seeds(cfg.seed);
    Corpus corpus;
    corpus.root = dir;
    for (std::size_t i = 0; i < cfg.n_recordings; ++i) {
        SynthConfig sc;
        sc.duration_s = cfg.duration_s;
        sc.n_channels = cfg.n_channels;
        sc.background_amplitude_uv = cfg.background_amplitude_uv;
        sc.ictal_amplitude_uv = cfg.ictal_amplitude_uv;
        sc.n_random_events = cfg.events_per_recording;
        sc.seed = seeds.next_u64();
        const SynthResult synth = synth_recording(sc);
        char id[16];
        std::snprintf(id, sizeof id, "rec%03zu", i);
        CorpusEntry e{id, std::string(id) + ".eeg", std::string(id) + ".lbl"};
        save_recording(synth.recording, dir / e.signal);
        save_labels(synth.labels, dir / e.labels);
        corpus.entries.push_back(std::move(e));
    }
    const fs::path manifest = dir / "corpus.json";
    save_corpus(corpus, manifest);
    return manifest;
}

std::string_view to_string(DetectorKind kind) {
    return kind == DetectorKind::Linear ? "linear" : "energy";
}

DetectorKind parse_detector_kind(std::string_view name) {
    if (name == "linear") return DetectorKind::Linear;
    if (name == "energy") return DetectorKind::Energy;
    fail(ErrorCode::Validation, "unknown detector '" + std::string(name) + "' (expected linear or energy)");
}

void JobConfig::validate() const {
    auto check = [](bool ok, const std::string& field, const std::string& why) {
        if (!ok) fail(ErrorCode::Validation, "field '" + field + "' " + why);
    };
    check(!corpus.empty(), "corpus", "is required");
    check(sample_rate_hz > 0, "sample_rate_hz", "must be positive");
    check(std::isfinite(spec.shift_s) && spec.shift_s > 0.0, "shift_sec", "must be positive");
    check(std::isfinite(spec.window_s) && spec.window_s > 0.0, "window_sec", "must be positive");
    if (sweep_windows_s.empty() && sweep_shifts_s.empty()) {
        check(spec.window_s >= spec.shift_s, "window_sec", "must be at least shift_sec");
    }
    try {
        if (sweep_windows_s.empty() && sweep_shifts_s.empty()) spec.validate(sample_rate_hz);
    } catch (const Error& e) {
        fail(ErrorCode::Validation, "fields 'window_sec'/'shift_sec': " + e.detail());
    }
    check(gap_merge_s >= 0.0, "gap_merge_sec", "must be non-negative");
    check(min_event_s >= 0.0, "min_event_sec", "must be non-negative");
    check(!margins_s.empty(), "margin_sec", "needs at least one margin");
    for (double m : margins_s) check(m > 0.0, "margin_sec", "values must be positive");
    check(test_fraction > 0.0 && test_fraction < 1.0, "test_fraction", "must be in (0, 1)");
    check(train.learning_rate > 0.0, "learning_rate", "must be positive");
    check(train.epochs >= 1, "epochs", "must be at least 1");
    check(train.batch_size >= 1, "batch_size", "must be at least 1");
    check(train.l2 >= 0.0, "l2", "must be non-negative");
    check(detector != DetectorKind::Energy || feature == ExtractorId::Bands, "feature",
          "must be 'bands' for the energy detector");
    check(sweep_windows_s.empty() || sweep_shifts_s.empty(), "sweep_window_sec",
          "cannot be combined with sweep_shift_sec");
    for (double w : sweep_windows_s) check(w > 0.0, "sweep_window_sec", "values must be positive");
    for (double s : sweep_shifts_s) check(s > 0.0, "sweep_shift_sec", "values must be positive");
}

JobConfig parse_job_config(std::string_view json_text, const std::string& source) {
    Json j;
    try {
        j = Json::parse(json_text);
    } catch (const Json::parse_error& e) {
        fail(ErrorCode::Validation, source + " is not valid JSON: " + e.what());
    }
    require(j.is_object(), ErrorCode::Validation, source + " must hold a JSON object");

    JobConfig cfg;
    for (const auto& [key, v] : j.items()) {
        if (key == "corpus") cfg.corpus = get_string(v, key);
        else if (key == "out_dir") cfg.out_dir = get_string(v, key);
        else if (key == "model") cfg.model = fs::path(get_string(v, key));
        else if (key == "detector") cfg.detector = parse_detector_kind(get_string(v, key));
        else if (key == "feature") {
            try {
                cfg.feature = parse_extractor_id(get_string(v, key));
            } catch (const Error& e) {
                fail(ErrorCode::Validation, "field 'feature': " + e.detail());
            }
        }
        else if (key == "sample_rate_hz") cfg.sample_rate_hz = static_cast<int>(get_unsigned(v, key));
        else if (key == "window_sec") cfg.spec.window_s = get_number(v, key);
        else if (key == "shift_sec") cfg.spec.shift_s = get_number(v, key);
        else if (key == "gap_merge_sec") cfg.gap_merge_s = get_number(v, key);
        else if (key == "min_event_sec") cfg.min_event_s = get_number(v, key);
        else if (key == "margin_sec") cfg.margins_s = get_number_list(v, key);
        else if (key == "test_fraction") cfg.test_fraction = get_number(v, key);
        else if (key == "seed") cfg.seed = get_unsigned(v, key);
        else if (key == "learning_rate") cfg.train.learning_rate = get_number(v, key);
        else if (key == "epochs") cfg.train.epochs = get_unsigned(v, key);
        else if (key == "batch_size") cfg.train.batch_size = get_unsigned(v, key);
        else if (key == "l2") cfg.train.l2 = get_number(v, key);
        else if (key == "energy_band") cfg.energy_band = get_unsigned(v, key);
        else if (key == "sweep_window_sec") cfg.sweep_windows_s = get_number_list(v, key);
        else if (key == "sweep_shift_sec") cfg.sweep_shifts_s = get_number_list(v, key);
        else fail(ErrorCode::Validation, "unknown field '" + key + "' in " + source);
    }
    cfg.train.seed = cfg.seed;
    cfg.validate();
    return cfg;
}

JobConfig load_job_config(const fs::path& path) {
    JobConfig cfg = parse_job_config(read_text(path, "job config"), "'" + path.string() + "'");
    if (cfg.corpus.is_relative()) cfg.corpus = path.parent_path() / cfg.corpus;
    if (cfg.model && cfg.model->is_relative()) cfg.model = path.parent_path() / *cfg.model;
    return cfg;
}

std::string job_config_json(const JobConfig& cfg) {
    Json j;
    j["corpus"] = cfg.corpus.generic_string();
    if (cfg.model) j["model"] = cfg.model->generic_string();
    j["detector"] = std::string(to_string(cfg.detector));
    j["feature"] = std::string(to_string(cfg.feature));
    j["sample_rate_hz"] = cfg.sample_rate_hz;
    j["window_sec"] = cfg.spec.window_s;
    j["shift_sec"] = cfg.spec.shift_s;
    j["gap_merge_sec"] = cfg.gap_merge_s;
    j["min_event_sec"] = cfg.min_event_s;
    j["margin_sec"] = number_list(cfg.margins_s);
    j["test_fraction"] = cfg.test_fraction;
    j["seed"] = cfg.seed;
    j["learning_rate"] = cfg.train.learning_rate;
    j["epochs"] = cfg.train.epochs;
    j["batch_size"] = cfg.train.batch_size;
    j["l2"] = cfg.train.l2;
    j["energy_band"] = cfg.energy_band;
    if (!cfg.sweep_windows_s.empty()) j["sweep_window_sec"] = number_list(cfg.sweep_windows_s);
    if (!cfg.sweep_shifts_s.empty()) j["sweep_shift_sec"] = number_list(cfg.sweep_shifts_s);
    return j.dump(2) + "\n";
}

std::vector<LoadedRecording> load_corpus_data(const Corpus& corpus, int sample_rate_hz) {
    std::vector<LoadedRecording> out;
    for (const auto& e : corpus.entries) {
        try {
            LoadedRecording r;
            r.id = e.id;
            r.recording = load_recording(resolve(corpus.root, e.signal));
            if (r.recording.sample_rate_hz() != sample_rate_hz) {
                r.recording = resample(r.recording, sample_rate_hz);
            }
            r.labels = load_labels(resolve(corpus.root, e.labels), r.recording.duration_s());
            out.push_back(std::move(r));
        } catch (const Error& err) {
            rethrow_with(err, "recording '" + e.id + "'");
        }
    }
    return out;
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_recordings(std::size_t n, double test_fraction,
                                                                               std::uint64_t seed) {
    require(n >= 2, ErrorCode::DegenerateDataset, "need at least two recordings to split train/test");
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(seed);
    rng.shuffle(std::span<std::size_t>(order));
    const auto n_test = std::clamp<std::size_t>(
        static_cast<std::size_t>(std::llround(test_fraction * static_cast<double>(n))), 1, n - 1);
    std::vector<std::size_t> test(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_test));
    std::vector<std::size_t> train(order.begin() + static_cast<std::ptrdiff_t>(n_test), order.end());
    std::sort(train.begin(), train.end());
    std::sort(test.begin(), test.end());
    return {train, test};
}

WindowDataset build_dataset(std::span<const LoadedRecording> recordings, std::span<const std::size_t> indices,
                            const FeatureExtractor& extractor, const WindowSpec& spec) {
    WindowDataset ds;
    for (std::size_t i : indices) {
        const auto& r = recordings[i];
        const auto windows = slice_windows(r.recording, spec);
        const auto labels = window_labels(r.labels, windows.size(), spec);
        for (std::size_t k = 0; k < windows.size(); ++k) {
            ds.features.push_back(extractor.extract(windows[k].view()));
            ds.labels.push_back(labels[k]);
        }
    }
    return ds;
}

DetectorModel fit_detector(const JobConfig& cfg, const WindowDataset& train) {
    if (cfg.detector == DetectorKind::Linear) {
        TrainConfig tc = cfg.train;
        tc.seed = cfg.seed;
        return train_linear(train.features, train.labels, tc).model;
    }
    std::vector<FeatureTensor> background;
    for (std::size_t i = 0; i < train.features.size(); ++i) {
        if (train.labels[i] == 0) background.push_back(train.features[i]);
    }
    return calibrate_energy(background, cfg.energy_band);
}

EvalOutcome evaluate_job(const JobConfig& cfg, std::span<const LoadedRecording> data) {
    ExtractorOptions xo;
    xo.sample_rate_hz = cfg.sample_rate_hz;
    const auto extractor = make_extractor(cfg.feature, xo);
    const auto [train_idx, test_idx] = split_recordings(data.size(), cfg.test_fraction, cfg.seed);

    EvalOutcome out;
    if (cfg.model) {
        out.model = load_model(*cfg.model);
        if (model_extractor(out.model) != cfg.feature) {
            fail(ErrorCode::IncompatibleFeature, "model '" + cfg.model->string() + "' consumes " +
                                                     std::string(to_string(model_extractor(out.model))) +
                                                     " features, job uses " + std::string(to_string(cfg.feature)));
        }
    } else {
        try {
            out.model = fit_detector(cfg, build_dataset(data, train_idx, *extractor, cfg.spec));
        } catch (const Error& e) {
            rethrow_with(e, "training");
        }
    }
    const auto detector = make_detector(out.model);

    std::vector<WindowTiming> timings;
    for (std::size_t i : test_idx) {
        StreamResult sr = run_stream(data[i].recording, *extractor, *detector, cfg.spec);
        timings.insert(timings.end(), sr.latency.windows.begin(), sr.latency.windows.end());
        out.scored.push_back({data[i].id, data[i].labels, std::move(sr.hypothesis.scores)});
    }
    out.latency = summarize_latency(std::move(timings), cfg.spec.shift_s);

    try {
        out.report = evaluate(out.scored, eval_options(cfg));
    } catch (const Error& e) {
        rethrow_with(e, "scoring the test split");
    }
    return out;
}

void write_scores_csv(std::ostream& out, std::span<const ScoredRecording> scored) {
    out << "id,window,score\n";
    char buf[64];
    for (const auto& s : scored) {
        for (std::size_t k = 0; k < s.scores.size(); ++k) {
            std::snprintf(buf, sizeof buf, ",%zu,%.17g\n", k, s.scores[k]);
            out << s.id << buf;
        }
    }
}

std::vector<ScoredRecording> read_scores_csv(std::istream& in, const std::string& source) {
    std::vector<ScoredRecording> out;
    std::string line;
    std::size_t line_no = 0;
    auto bad = [&](const std::string& why) {
        fail(ErrorCode::MalformedData, source + ":" + std::to_string(line_no) + ": " + why);
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1) {
            if (line != "id,window,score") bad("expected header 'id,window,score'");
            continue;
        }
        if (line.empty()) continue;
        const auto c1 = line.find(',');
        const auto c2 = c1 == std::string::npos ? c1 : line.find(',', c1 + 1);
        if (c2 == std::string::npos) bad("expected three columns");
        const std::string id = line.substr(0, c1);
        std::size_t k = 0;
        double score = 0.0;
        try {
            std::size_t pos = 0;
            k = std::stoul(line.substr(c1 + 1, c2 - c1 - 1), &pos);
            score = std::stod(line.substr(c2 + 1), &pos);
            if (pos != line.size() - c2 - 1) bad("trailing characters after score");
        } catch (const std::logic_error&) {
            bad("unreadable window index or score");
        }
        if (!(score >= 0.0 && score <= 1.0)) bad("score outside [0, 1]");
        if (out.empty() || out.back().id != id) {
            if (k != 0) bad("recording '" + id + "' does not start at window 0");
            out.push_back({id, {}, {}});
        }
        if (k != out.back().scores.size()) bad("window indices must be consecutive");
        out.back().scores.push_back(score);
    }
    if (line_no == 0) fail(ErrorCode::MalformedData, source + ": empty scores file");
    return out;
}

MetricsReport run_report_job(const JobConfig& cfg, const fs::path& scores_csv) {
    cfg.validate();
    require(!cfg.out_dir.empty(), ErrorCode::Validation, "field 'out_dir' is required");
    std::ifstream in(scores_csv, std::ios::binary);
    require(static_cast<bool>(in), ErrorCode::Io, "cannot open scores file '" + scores_csv.string() + "'");
    auto scored = read_scores_csv(in, scores_csv.string());
    const Corpus corpus = load_corpus(cfg.corpus);
    for (auto& s : scored) {
        const auto it = std::find_if(corpus.entries.begin(), corpus.entries.end(),
                                     [&](const CorpusEntry& e) { return e.id == s.id; });
        require(it != corpus.entries.end(), ErrorCode::Validation,
                "scores mention recording '" + s.id + "' which is not in the corpus");
        try {
            const Recording rec = load_recording(resolve(corpus.root, it->signal));
            s.labels = load_labels(resolve(corpus.root, it->labels), rec.duration_s());
            const std::size_t expected = window_count(rec.n_samples(), rec.sample_rate_hz(), cfg.spec);
            require(expected == s.scores.size(), ErrorCode::Validation,
                    "holds " + std::to_string(s.scores.size()) + " scores but the window setup yields " +
                        std::to_string(expected));
        } catch (const Error& e) {
            rethrow_with(e, "recording '" + s.id + "'");
        }
    }
    const MetricsReport report = evaluate(scored, eval_options(cfg));
    fs::create_directories(cfg.out_dir);
    write_metric_files(cfg.out_dir, report);
    return report;
}

MetricsReport run_eval_job(const JobConfig& cfg) {
    cfg.validate();
    require(!cfg.out_dir.empty(), ErrorCode::Validation, "field 'out_dir' is required");
    // Load and validate every input before touching the output directory.
    const Corpus corpus = load_corpus(cfg.corpus);
    const auto data = load_corpus_data(corpus, cfg.sample_rate_hz);
    const EvalOutcome outcome = evaluate_job(cfg, data);

    fs::create_directories(cfg.out_dir / "hyp");
    write_text(cfg.out_dir / "config.json", job_config_json(cfg));
    save_model(outcome.model, cfg.out_dir / "model.rtsdm");
    write_metric_files(cfg.out_dir, outcome.report);
    write_file(cfg.out_dir / "scores.csv", [&](std::ostream& o) { write_scores_csv(o, outcome.scored); });
    const EventizeOpts eo{outcome.report.thresholds.youden_threshold, cfg.gap_merge_s, cfg.min_event_s};
    for (const auto& s : outcome.scored) {
        HypothesisTrack track{cfg.spec, s.scores, s.labels.total_duration_s()};
        write_file(cfg.out_dir / "hyp" / (s.id + ".lbl"), [&](std::ostream& o) { write_hypothesis(o, track, eo); });
    }
    write_file(cfg.out_dir / "timing.json", [&](std::ostream& o) { write_latency_json(o, outcome.latency); });
    write_file(cfg.out_dir / "timing.csv", [&](std::ostream& o) { write_latency_csv(o, outcome.latency); });
    return outcome.report;
}

std::vector<SweepRow> run_sweep(const JobConfig& cfg) {
    cfg.validate();
    require(!cfg.sweep_windows_s.empty() || !cfg.sweep_shifts_s.empty(), ErrorCode::Validation,
            "sweep needs 'sweep_window_sec' or 'sweep_shift_sec'");
    const Corpus corpus = load_corpus(cfg.corpus);
    const auto data = load_corpus_data(corpus, cfg.sample_rate_hz);

    std::vector<WindowSpec> settings;
    const bool by_window = !cfg.sweep_windows_s.empty();
    for (double w : cfg.sweep_windows_s) settings.push_back({w, cfg.spec.shift_s});
    for (double s : cfg.sweep_shifts_s) settings.push_back({cfg.spec.window_s, s});

    std::vector<SweepRow> rows;
    for (const auto& spec : settings) {
        SweepRow row;
        row.window_s = spec.window_s;
        row.shift_s = spec.shift_s;
        row.setting = by_window ? "window=" + format_seconds(spec.window_s) : "shift=" + format_seconds(spec.shift_s);
        if (spec.window_s < spec.shift_s) {
            row.reason = "window " + format_seconds(spec.window_s) + " s is shorter than shift " +
                         format_seconds(spec.shift_s) + " s";
            rows.push_back(row);
            continue;
        }
        try {
            spec.validate(cfg.sample_rate_hz);
            JobConfig c = cfg;
            c.spec = spec;
            const EvalOutcome outcome = evaluate_job(c, data);
            row.ok = true;
            row.auroc = outcome.report.curve.auroc;
            row.auprc = outcome.report.curve.auprc;
            row.mean_window_s = outcome.latency.mean_s;
        } catch (const Error& e) {
            row.reason = e.what();
        }
        rows.push_back(row);
    }

    if (!cfg.out_dir.empty()) {
        fs::create_directories(cfg.out_dir);
        write_text(cfg.out_dir / "config.json", job_config_json(cfg));
        write_file(cfg.out_dir / "sweep.csv", [&](std::ostream& o) { write_sweep_csv(o, rows); });
        write_file(cfg.out_dir / "sweep_timing.csv", [&](std::ostream& o) { write_sweep_timing_csv(o, rows); });
    }
    return rows;
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
    out << "setting,window_s,shift_s,status,auroc,auprc,reason\n";
    char buf[160];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%s,%.6f,%.6f,%s,", r.setting.c_str(), r.window_s, r.shift_s,
                      r.ok ? "ok" : "rejected");
        out << buf;
        if (r.ok) {
            std::snprintf(buf, sizeof buf, "%.6f,%.6f,", r.auroc, r.auprc);
            out << buf;
        } else {
            out << ",,";
        }
        std::string reason = r.reason;
        std::replace(reason.begin(), reason.end(), ',', ';');
        out << reason << '\n';
    }
}

void write_sweep_timing_csv(std::ostream& out, std::span<const SweepRow> rows) {
    out << "setting,window_s,shift_s,mean_window_s\n";
    char buf[160];
    for (const auto& r : rows) {
        if (!r.ok) continue;
        std::snprintf(buf, sizeof buf, "%s,%.6f,%.6f,%.9f\n", r.setting.c_str(), r.window_s, r.shift_s, r.mean_window_s);
        out << buf;
    }
}

void write_sweep_table(std::ostream& out, std::span<const SweepRow> rows) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-12s %8s %8s %8s %8s %14s\n", "setting", "window", "shift", "AUROC", "AUPRC",
                  "time/window");
    out << buf;
    for (const auto& r : rows) {
        if (r.ok) {
            std::snprintf(buf, sizeof buf, "%-12s %8.2f %8.2f %8.4f %8.4f %12.6f s\n", r.setting.c_str(), r.window_s,
                          r.shift_s, r.auroc, r.auprc, r.mean_window_s);
        } else {
            std::snprintf(buf, sizeof buf, "%-12s %8.2f %8.2f rejected: %s\n", r.setting.c_str(), r.window_s, r.shift_s,
                          r.reason.c_str());
        }
        out << buf;
    }
}

} // namespace rtsd
