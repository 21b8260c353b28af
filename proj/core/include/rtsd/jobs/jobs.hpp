#pragma once

#include "rtsd/bench/stream.hpp"
#include "rtsd/data/labels.hpp"
#include "rtsd/data/recording.hpp"
#include "rtsd/detectors/linear_detector.hpp"
#include "rtsd/detectors/model_io.hpp"
#include "rtsd/metrics/report.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rtsd {

// Corpus manifest (JSON):
//   {"recordings": [{"id": "rec000", "signal": "rec000.eeg", "labels": "rec000.lbl"}, ...]}
// Relative paths resolve against the manifest's directory.
struct CorpusEntry {
    std::string id;
    std::filesystem::path signal;
    std::filesystem::path labels;
};

struct Corpus {
    std::filesystem::path root;
    std::vector<CorpusEntry> entries;
};

Corpus load_corpus(const std::filesystem::path& manifest);
void save_corpus(const Corpus& corpus, const std::filesystem::path& manifest);

struct SynthCorpusConfig {
    std::size_t n_recordings = 12;
    double duration_s = 90.0;
    std::size_t n_channels = 20;
    std::size_t events_per_recording = 2;
    double background_amplitude_uv = 10.0;
    double ictal_amplitude_uv = 50.0;
    std::uint64_t seed = 0;
};

/// Writes recNNN.eeg / recNNN.lbl plus corpus.json into `dir`; returns the
/// manifest path.
std::filesystem::path write_synth_corpus(const SynthCorpusConfig& cfg, const std::filesystem::path& dir);

enum class DetectorKind { Linear, Energy };

std::string_view to_string(DetectorKind kind);
DetectorKind parse_detector_kind(std::string_view name);

/// Flat job record; JSON keys match the CLI flag names with '_' for '-'.
struct JobConfig {
    std::filesystem::path corpus;
    std::filesystem::path out_dir;
    std::optional<std::filesystem::path> model;  // skip training and use this model
    DetectorKind detector = DetectorKind::Linear;
    ExtractorId feature = ExtractorId::Bands;
    int sample_rate_hz = 200;
    WindowSpec spec;
    double gap_merge_s = 0.0;
    double min_event_s = 0.0;
    std::vector<double> margins_s{3.0, 5.0};
    double test_fraction = 0.3;
    std::uint64_t seed = 0;
    TrainConfig train;
    std::size_t energy_band = 0;
    std::vector<double> sweep_windows_s;
    std::vector<double> sweep_shifts_s;

    /// Throws Validation naming the offending field.
    void validate() const;
};

/// Keys: corpus, out_dir, model, detector, feature, sample_rate_hz,
/// window_sec, shift_sec, gap_merge_sec, min_event_sec, margin_sec,
/// test_fraction, seed, learning_rate, epochs, batch_size, l2, energy_band,
/// sweep_window_sec, sweep_shift_sec. Unknown keys are rejected.
JobConfig parse_job_config(std::string_view json_text, const std::string& source = "<config>");
JobConfig load_job_config(const std::filesystem::path& path);
std::string job_config_json(const JobConfig& cfg);

/// Recordings and annotations of a corpus, resampled to the pipeline rate.
struct LoadedRecording {
    std::string id;
    Recording recording;
    LabelTrack labels;
};

std::vector<LoadedRecording> load_corpus_data(const Corpus& corpus, int sample_rate_hz);

/// Seeded recording-level split: (train indices, test indices), both sorted.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_recordings(std::size_t n, double test_fraction,
                                                                               std::uint64_t seed);

/// Features and 0/1 window labels of a set of recordings.
struct WindowDataset {
    std::vector<FeatureTensor> features;
    std::vector<int> labels;
};

WindowDataset build_dataset(std::span<const LoadedRecording> recordings, std::span<const std::size_t> indices,
                            const FeatureExtractor& extractor, const WindowSpec& spec);

DetectorModel fit_detector(const JobConfig& cfg, const WindowDataset& train);

struct EvalOutcome {
    DetectorModel model;
    MetricsReport report;
    std::vector<ScoredRecording> scored;
    LatencyReport latency;  // pooled over every streamed test window
};

/// Train (or load), stream the test split, score. Nothing is written.
EvalOutcome evaluate_job(const JobConfig& cfg, std::span<const LoadedRecording> data);

/// id,window,score with round-trip precision.
void write_scores_csv(std::ostream& out, std::span<const ScoredRecording> scored);
/// Returns (id, scores) in file order; labels are left empty.
std::vector<ScoredRecording> read_scores_csv(std::istream& in, const std::string& source = "<stream>");

/// Validates, runs, and writes into cfg.out_dir: metrics.txt, metrics.json,
/// roc.csv, pr.csv, scores.csv, model.rtsdm, config.json, hyp/<id>.lbl, plus
/// timing.json / timing.csv (the only non-reproducible outputs).
MetricsReport run_eval_job(const JobConfig& cfg);

/// Re-scores a saved scores.csv against the corpus annotations with the
/// eventization and margin settings of `cfg`; writes the metric files into
/// cfg.out_dir.
MetricsReport run_report_job(const JobConfig& cfg, const std::filesystem::path& scores_csv);

struct SweepRow {
    std::string setting;
    double window_s = 0.0;
    double shift_s = 0.0;
    bool ok = false;
    std::string reason;  // why the row was rejected
    double auroc = 0.0;
    double auprc = 0.0;
    double mean_window_s = 0.0;
};

/// One row per entry of sweep_windows_s (shift fixed) or sweep_shifts_s
/// (window fixed). Invalid settings become rejected rows.
std::vector<SweepRow> run_sweep(const JobConfig& cfg);

/// setting,window_s,shift_s,status,auroc,auprc,reason
void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);
/// setting,window_s,shift_s,mean_window_s
void write_sweep_timing_csv(std::ostream& out, std::span<const SweepRow> rows);
void write_sweep_table(std::ostream& out, std::span<const SweepRow> rows);

} // namespace rtsd
