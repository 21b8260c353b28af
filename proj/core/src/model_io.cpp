#include "rtsd/detectors/model_io.hpp"

#include "rtsd/error.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace rtsd {
namespace {

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

void put_f64(std::ostream& out, double v) {
    unsigned char bytes[8];
    std::memcpy(bytes, &v, 8);
    if constexpr (std::endian::native == std::endian::big) {
        std::reverse(bytes, bytes + 8);
    }
    out.write(reinterpret_cast<const char*>(bytes), 8);
}

double get_f64(std::istream& in) {
    unsigned char bytes[8];
    in.read(reinterpret_cast<char*>(bytes), 8);
    require(in.gcount() == 8, ErrorCode::TruncatedPayload, "model payload ends early");
    if constexpr (std::endian::native == std::endian::big) {
        std::reverse(bytes, bytes + 8);
    }
    double v;
    std::memcpy(&v, bytes, 8);
    return v;
}

std::string expect_line(std::istream& in, std::string_view key) {
    std::string line;
    require(static_cast<bool>(std::getline(in, line)), ErrorCode::MalformedHeader,
            "model header missing '" + std::string(key) + "'");
    if (line.rfind(key, 0) != 0 || (line.size() > key.size() && line[key.size()] != ' ')) {
        fail(ErrorCode::MalformedHeader, "expected '" + std::string(key) + "' in model header, got '" + line + "'");
    }
    return line.size() > key.size() ? line.substr(key.size() + 1) : std::string{};
}

std::size_t parse_size(const std::string& text, std::string_view what) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(text, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    require(pos == text.size() && pos > 0 && text[0] != '-', ErrorCode::MalformedHeader,
            "bad " + std::string(what) + " '" + text + "' in model header");
    return static_cast<std::size_t>(v);
}

void write_linear(std::ostream& out, const LinearModel& m) {
    m.validate();
    out << "kind linear\n"
        << "extractor " << to_string(m.extractor) << '\n'
        << "shape " << m.shape.d0 << ' ' << m.shape.d1 << ' ' << m.shape.d2 << '\n'
        << "dims " << m.dims() << '\n'
        << "payload f64le\n";
    for (double w : m.weights) put_f64(out, w);
    for (double v : m.mean) put_f64(out, v);
    for (double v : m.stddev) put_f64(out, v);
    put_f64(out, m.bias);
}

void write_energy(std::ostream& out, const EnergyModel& m) {
    out << "kind energy\n"
        << "extractor " << to_string(ExtractorId::Bands) << '\n'
        << "band_index " << m.band_index << '\n'
        << "payload f64le\n";
    put_f64(out, m.midpoint);
    put_f64(out, m.scale);
}

LinearModel read_linear(std::istream& in) {
    LinearModel m;
    m.extractor = parse_extractor_id(expect_line(in, "extractor"));
    std::istringstream shape(expect_line(in, "shape"));
    std::string a, b, c, extra;
    shape >> a >> b >> c;
    require(static_cast<bool>(shape) && !(shape >> extra), ErrorCode::MalformedHeader, "model shape needs three sizes");
    m.shape = {parse_size(a, "shape"), parse_size(b, "shape"), parse_size(c, "shape")};
    const std::size_t dims = parse_size(expect_line(in, "dims"), "dims");
    require(dims == m.shape.size() && dims > 0, ErrorCode::MalformedHeader, "model dims disagree with shape");
    require(expect_line(in, "payload") == "f64le", ErrorCode::MalformedHeader, "unsupported model payload encoding");
    m.weights.resize(dims);
    m.mean.resize(dims);
    m.stddev.resize(dims);
    for (auto& w : m.weights) w = get_f64(in);
    for (auto& v : m.mean) v = get_f64(in);
    for (auto& v : m.stddev) v = get_f64(in);
    m.bias = get_f64(in);
    try {
        m.validate();
    } catch (const Error& e) {
        fail(ErrorCode::MalformedData, std::string("model payload rejected: ") + e.what());
    }
    return m;
}

EnergyModel read_energy(std::istream& in) {
    EnergyModel m;
    require(parse_extractor_id(expect_line(in, "extractor")) == ExtractorId::Bands, ErrorCode::MalformedHeader,
            "energy model must consume bands features");
    m.band_index = parse_size(expect_line(in, "band_index"), "band_index");
    require(expect_line(in, "payload") == "f64le", ErrorCode::MalformedHeader, "unsupported model payload encoding");
    m.midpoint = get_f64(in);
    m.scale = get_f64(in);
    require(std::isfinite(m.midpoint) && std::isfinite(m.scale) && m.scale > 0.0, ErrorCode::MalformedData,
            "energy model calibration is invalid");
    return m;
}

} // namespace

void write_model(std::ostream& out, const DetectorModel& model) {
    out << "RTSD-MODEL\nversion 1\n";
    std::visit(
        [&](const auto& m) {
            if constexpr (std::is_same_v<std::decay_t<decltype(m)>, LinearModel>) {
                write_linear(out, m);
            } else {
                write_energy(out, m);
            }
        },
        model);
    require(static_cast<bool>(out), ErrorCode::Io, "failed writing model");
}

DetectorModel read_model(std::istream& in) {
    std::string magic;
    std::getline(in, magic);
    require(magic == "RTSD-MODEL", ErrorCode::MalformedHeader, "not a model file (missing RTSD-MODEL magic)");
    require(expect_line(in, "version") == "1", ErrorCode::MalformedHeader, "unsupported model version");
    const std::string kind = expect_line(in, "kind");
    DetectorModel model;
    if (kind == "linear") {
        model = read_linear(in);
    } else if (kind == "energy") {
        model = read_energy(in);
    } else {
        fail(ErrorCode::MalformedHeader, "unknown model kind '" + kind + "'");
    }
    require(in.peek() == std::char_traits<char>::eof(), ErrorCode::MalformedData, "trailing bytes after model payload");
    return model;
}

void save_model(const DetectorModel& model, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    require(static_cast<bool>(out), ErrorCode::Io, "cannot write model file " + path.string());
    write_model(out, model);
}

DetectorModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    require(static_cast<bool>(in), ErrorCode::Io, "cannot open model file " + path.string());
    return read_model(in);
}

ExtractorId model_extractor(const DetectorModel& model) {
    if (const auto* linear = std::get_if<LinearModel>(&model)) {
        return linear->extractor;
    }
    return ExtractorId::Bands;
}

std::shared_ptr<const Detector> make_detector(const DetectorModel& model) {
    if (const auto* linear = std::get_if<LinearModel>(&model)) {
        return std::make_shared<LinearDetector>(*linear);
    }
    return std::make_shared<EnergyDetector>(std::get<EnergyModel>(model));
}

} // namespace rtsd
