#include "rtsd/data/sampling.hpp"

#include "rtsd/error.hpp"
#include "rtsd/random.hpp"

#include <array>

namespace rtsd {

std::string_view to_string(SignalTypeClass cls) {
    switch (cls) {
    case SignalTypeClass::NonIctalPatient: return "non-ictal-patient";
    case SignalTypeClass::NonIctalControl: return "non-ictal-control";
    case SignalTypeClass::MixedIctalNonIctal: return "mixed-ictal-non-ictal";
    case SignalTypeClass::Ictal: return "ictal";
    }
    return "unknown";
}

SignalTypeClass classify_segment(const LabelTrack& labels, const Interval& segment, bool is_control) {
    const double covered = labels.seizure_overlap(segment);
    if (covered >= segment.duration() - 1e-9) return SignalTypeClass::Ictal;
    if (covered > 1e-9) return SignalTypeClass::MixedIctalNonIctal;
    return is_control ? SignalTypeClass::NonIctalControl : SignalTypeClass::NonIctalPatient;
}

std::vector<LabeledSegment> segment_recording(const LabelTrack& labels, std::size_t recording, bool is_control,
                                              double segment_s) {
    require(segment_s > 0.0, ErrorCode::InvalidArgument, "segment length must be positive");
    std::vector<LabeledSegment> out;
    for (std::size_t k = 0;; ++k) {
        const Interval span{static_cast<double>(k) * segment_s, static_cast<double>(k + 1) * segment_s};
        if (span.stop_s > labels.total_duration_s() + 1e-9) break;
        out.push_back({recording, span, classify_segment(labels, span, is_control)});
    }
    return out;
}

std::vector<std::vector<std::size_t>> balanced_batches(std::span<const LabeledSegment> segments,
                                                       std::size_t batch_size, std::size_t n_batches,
                                                       std::uint64_t seed) {
    require(batch_size > 0 && batch_size % kSignalTypeCount == 0, ErrorCode::InvalidArgument,
            "batch size " + std::to_string(batch_size) + " is not a positive multiple of 4");

    std::array<std::vector<std::size_t>, kSignalTypeCount> pools;
    for (std::size_t i = 0; i < segments.size(); ++i) {
        pools[static_cast<std::size_t>(segments[i].cls)].push_back(i);
    }
    for (std::size_t c = 0; c < kSignalTypeCount; ++c) {
        require(!pools[c].empty(), ErrorCode::MissingClass,
                "no segments of class '" + std::string(to_string(static_cast<SignalTypeClass>(c))) + "'");
    }

    Rng rng(seed);
    std::array<std::size_t, kSignalTypeCount> cursor{};
    for (auto& pool : pools) {
        rng.shuffle(std::span<std::size_t>(pool));
    }

    const std::size_t per_class = batch_size / kSignalTypeCount;
    std::vector<std::vector<std::size_t>> batches(n_batches);
    for (auto& batch : batches) {
        batch.reserve(batch_size);
        for (std::size_t c = 0; c < kSignalTypeCount; ++c) {
            for (std::size_t j = 0; j < per_class; ++j) {
                if (cursor[c] == pools[c].size()) {
                    rng.shuffle(std::span<std::size_t>(pools[c]));
                    cursor[c] = 0;
                }
                batch.push_back(pools[c][cursor[c]++]);
            }
        }
        rng.shuffle(std::span<std::size_t>(batch));
    }
    return batches;
}

} // namespace rtsd
