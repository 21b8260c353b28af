#pragma once

#include "rtsd/data/labels.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace rtsd {

enum class SignalTypeClass { NonIctalPatient = 0, NonIctalControl = 1, MixedIctalNonIctal = 2, Ictal = 3 };
inline constexpr std::size_t kSignalTypeCount = 4;

std::string_view to_string(SignalTypeClass cls);

/// Ictal when the segment lies entirely inside seizure annotation, Mixed on
/// partial overlap, otherwise one of the two non-ictal classes.
SignalTypeClass classify_segment(const LabelTrack& labels, const Interval& segment, bool is_control);

struct LabeledSegment {
    std::size_t recording = 0;
    Interval span;
    SignalTypeClass cls = SignalTypeClass::NonIctalPatient;
};

/// Cuts [0, total) into consecutive `segment_s` segments (a short tail is
/// dropped) and classifies each.
std::vector<LabeledSegment> segment_recording(const LabelTrack& labels, std::size_t recording, bool is_control,
                                              double segment_s = 30.0);

/// Batches of indices into `segments`, each holding batch_size / 4 segments
/// of every class. Each class pool is drawn as a seeded permutation that is
/// reshuffled once exhausted.
std::vector<std::vector<std::size_t>> balanced_batches(std::span<const LabeledSegment> segments,
                                                       std::size_t batch_size, std::size_t n_batches,
                                                       std::uint64_t seed);

} // namespace rtsd
