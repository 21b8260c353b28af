#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rtsd {

enum class ExtractorId { Raw, SincNet, Stft, Bands, Lfcc, MultiRate };

/// CLI names: raw | sincnet | stft | bands | lfcc | multirate.
std::string_view to_string(ExtractorId id);
ExtractorId parse_extractor_id(std::string_view name);

struct Shape3 {
    std::size_t d0 = 0;
    std::size_t d1 = 0;
    std::size_t d2 = 0;

    std::size_t size() const noexcept { return d0 * d1 * d2; }
    std::array<std::size_t, 3> dims() const noexcept { return {d0, d1, d2}; }
    friend bool operator==(const Shape3&, const Shape3&) = default;
};

std::string to_string(const Shape3& shape);

/// Extractor output: a dense row-major 3-axis array, axes
/// (channels or filters, bins, frames).
class FeatureTensor {
public:
    FeatureTensor() = default;
    /// Throws InvalidArgument if the data size disagrees with the shape or
    /// any value is non-finite.
    FeatureTensor(ExtractorId id, Shape3 shape, std::vector<float> data);

    ExtractorId id() const noexcept { return id_; }
    const Shape3& shape() const noexcept { return shape_; }
    std::span<const float> data() const noexcept { return data_; }
    std::size_t size() const noexcept { return data_.size(); }

    float at(std::size_t i, std::size_t j, std::size_t k) const {
        return data_[(i * shape_.d1 + j) * shape_.d2 + k];
    }

    friend bool operator==(const FeatureTensor&, const FeatureTensor&) = default;

private:
    ExtractorId id_ = ExtractorId::Raw;
    Shape3 shape_;
    std::vector<float> data_;
};

enum class TensorFormat { Text, Binary };

// Debug dump: one metadata line
//   rtsd-tensor <extractor> <d0> <d1> <d2> <text|binary>
// then the flattened row-major values (one per line, or f32 little-endian).
void write_tensor(std::ostream& out, const FeatureTensor& tensor, TensorFormat format);
FeatureTensor read_tensor(std::istream& in);

} // namespace rtsd
