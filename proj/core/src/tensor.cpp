#include "rtsd/features/tensor.hpp"

#include "rtsd/error.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace rtsd {
namespace {

constexpr std::array<std::string_view, 6> kNames = {"raw", "sincnet", "stft", "bands", "lfcc", "multirate"};

} // namespace

std::string_view to_string(ExtractorId id) {
    return kNames[static_cast<std::size_t>(id)];
}

ExtractorId parse_extractor_id(std::string_view name) {
    for (std::size_t i = 0; i < kNames.size(); ++i) {
        if (kNames[i] == name) return static_cast<ExtractorId>(i);
    }
    fail(ErrorCode::InvalidArgument, "unknown feature extractor '" + std::string(name) +
                                         "' (expected raw|sincnet|stft|bands|lfcc|multirate)");
}

std::string to_string(const Shape3& shape) {
    return "(" + std::to_string(shape.d0) + "," + std::to_string(shape.d1) + "," + std::to_string(shape.d2) + ")";
}

FeatureTensor::FeatureTensor(ExtractorId id, Shape3 shape, std::vector<float> data)
    : id_(id), shape_(shape), data_(std::move(data)) {
    if (data_.size() != shape_.size()) {
        fail(ErrorCode::InvalidArgument,
             "tensor data size " + std::to_string(data_.size()) + " does not match shape " + to_string(shape_));
    }
    const bool finite = std::all_of(data_.begin(), data_.end(), [](float v) { return std::isfinite(v); });
    require(finite, ErrorCode::InvalidArgument, "tensor holds a non-finite value");
}

void write_tensor(std::ostream& out, const FeatureTensor& tensor, TensorFormat format) {
    const auto& s = tensor.shape();
    out << "rtsd-tensor " << to_string(tensor.id()) << ' ' << s.d0 << ' ' << s.d1 << ' ' << s.d2 << ' '
        << (format == TensorFormat::Text ? "text" : "binary") << '\n';
    if (format == TensorFormat::Text) {
        char buf[32];
        for (float v : tensor.data()) {
            std::snprintf(buf, sizeof(buf), "%.9g\n", static_cast<double>(v));
            out << buf;
        }
        return;
    }
    for (float v : tensor.data()) {
        const auto bits = std::bit_cast<std::uint32_t>(v);
        for (int b = 0; b < 4; ++b) out.put(static_cast<char>((bits >> (8 * b)) & 0xFFu));
    }
}

FeatureTensor read_tensor(std::istream& in) {
    std::string line;
    require(static_cast<bool>(std::getline(in, line)), ErrorCode::MalformedHeader, "missing tensor header");
    std::istringstream header(line);
    std::string magic, name, fmt;
    Shape3 shape;
    if (!(header >> magic >> name >> shape.d0 >> shape.d1 >> shape.d2 >> fmt) || magic != "rtsd-tensor" ||
        (fmt != "text" && fmt != "binary")) {
        fail(ErrorCode::MalformedHeader, "bad tensor header '" + line + "'");
    }
    const ExtractorId id = parse_extractor_id(name);
    std::vector<float> data(shape.size());
    if (fmt == "text") {
        for (auto& v : data) {
            require(static_cast<bool>(in >> v), ErrorCode::TruncatedPayload, "tensor payload ends early");
        }
    } else {
        for (auto& v : data) {
            unsigned char bytes[4];
            in.read(reinterpret_cast<char*>(bytes), 4);
            require(in.gcount() == 4, ErrorCode::TruncatedPayload, "tensor payload ends early");
            const std::uint32_t bits = static_cast<std::uint32_t>(bytes[0]) | (static_cast<std::uint32_t>(bytes[1]) << 8) |
                                       (static_cast<std::uint32_t>(bytes[2]) << 16) |
                                       (static_cast<std::uint32_t>(bytes[3]) << 24);
            v = std::bit_cast<float>(bits);
        }
    }
    return FeatureTensor(id, shape, std::move(data));
}

} // namespace rtsd
