#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rtsd {

enum class Montage { Unipolar, Bipolar };

std::string_view to_string(Montage montage);
Montage parse_montage(std::string_view text);

/// Non-owning view of a channels x time block stored channel-major.
struct SignalView {
    std::span<const float> samples;
    std::size_t n_channels = 0;
    std::size_t n_samples = 0;
    int sample_rate_hz = 0;

    std::span<const float> channel(std::size_t c) const {
        return samples.subspan(c * n_samples, n_samples);
    }
};

/// Multi-channel sampled EEG signal in microvolts. Samples are stored
/// channel-major so each channel is one contiguous span.
class Recording {
public:
    Recording() = default;
    Recording(int sample_rate_hz, std::vector<std::string> channel_names, std::size_t n_samples,
              Montage montage = Montage::Unipolar);
    Recording(int sample_rate_hz, std::vector<std::string> channel_names, std::vector<float> samples,
              Montage montage = Montage::Unipolar);

    int sample_rate_hz() const noexcept { return sample_rate_hz_; }
    const std::vector<std::string>& channel_names() const noexcept { return channel_names_; }
    std::size_t n_channels() const noexcept { return channel_names_.size(); }
    std::size_t n_samples() const noexcept { return n_samples_; }
    double duration_s() const noexcept {
        return static_cast<double>(n_samples_) / static_cast<double>(sample_rate_hz_);
    }
    Montage montage() const noexcept { return montage_; }

    std::span<const float> samples() const noexcept { return samples_; }
    std::span<const float> channel(std::size_t c) const;
    std::span<float> channel(std::size_t c);

    /// Case-insensitive exact match on the channel label.
    std::optional<std::size_t> find_channel(std::string_view name) const;

    SignalView view() const { return {samples_, n_channels(), n_samples_, sample_rate_hz_}; }

private:
    int sample_rate_hz_ = 0;
    std::vector<std::string> channel_names_;
    std::size_t n_samples_ = 0;
    std::vector<float> samples_;
    Montage montage_ = Montage::Unipolar;
};

// `.eeg` container: a text metadata block terminated by a `data` line,
// followed by the f32 little-endian channel-major payload.
void write_recording(std::ostream& out, const Recording& rec);
Recording read_recording(std::istream& in, const std::string& source = "<stream>");
void save_recording(const Recording& rec, const std::filesystem::path& path);
Recording load_recording(const std::filesystem::path& path);

/// CSV import: header row holds channel names, one sample per row.
Recording read_csv_recording(std::istream& in, int sample_rate_hz, const std::string& source = "<stream>");
Recording import_csv(const std::filesystem::path& path, int sample_rate_hz);

} // namespace rtsd
