#include "rtsd/data/recording.hpp"

#include "rtsd/error.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace rtsd {
namespace {

constexpr std::string_view kMagic = "RTSD-EEG";
constexpr int kVersion = 1;

bool iequals(std::string_view a, std::string_view b) {
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
               return std::tolower(static_cast<unsigned char>(x)) ==
                      std::tolower(static_cast<unsigned char>(y));
           });
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

template <typename T>
bool parse_number(std::string_view text, T& value) {
    text = trim(text);
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    return ec == std::errc() && ptr == last;
}

void put_f32_le(std::ostream& out, float value) {
    const auto bits = std::bit_cast<std::uint32_t>(value);
    const std::array<char, 4> bytes = {
        static_cast<char>(bits & 0xFFu), static_cast<char>((bits >> 8) & 0xFFu),
        static_cast<char>((bits >> 16) & 0xFFu), static_cast<char>((bits >> 24) & 0xFFu)};
    out.write(bytes.data(), bytes.size());
}

float get_f32_le(const unsigned char* p) {
    const std::uint32_t bits = static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
                               (static_cast<std::uint32_t>(p[2]) << 16) |
                               (static_cast<std::uint32_t>(p[3]) << 24);
    return std::bit_cast<float>(bits);
}

} // namespace

std::string_view to_string(Montage montage) {
    return montage == Montage::Bipolar ? "bipolar" : "unipolar";
}

Montage parse_montage(std::string_view text) {
    if (iequals(text, "bipolar")) return Montage::Bipolar;
    if (iequals(text, "unipolar")) return Montage::Unipolar;
    fail(ErrorCode::InvalidArgument, "unknown montage '" + std::string(text) + "'");
}

Recording::Recording(int sample_rate_hz, std::vector<std::string> channel_names, std::size_t n_samples,
                     Montage montage)
    : Recording(sample_rate_hz, std::move(channel_names), std::vector<float>{}, montage) {
    n_samples_ = n_samples;
    samples_.assign(n_channels() * n_samples, 0.0f);
}

Recording::Recording(int sample_rate_hz, std::vector<std::string> channel_names, std::vector<float> samples,
                     Montage montage)
    : sample_rate_hz_(sample_rate_hz),
      channel_names_(std::move(channel_names)),
      samples_(std::move(samples)),
      montage_(montage) {
    require(sample_rate_hz_ > 0, ErrorCode::InvalidArgument, "sample rate must be positive");
    if (channel_names_.empty()) {
        require(samples_.empty(), ErrorCode::ChannelCountMismatch, "samples given without channels");
        return;
    }
    require(samples_.size() % channel_names_.size() == 0, ErrorCode::ChannelCountMismatch,
            "sample buffer is not a whole number of channels");
    n_samples_ = samples_.size() / channel_names_.size();
}

std::span<const float> Recording::channel(std::size_t c) const {
    require(c < n_channels(), ErrorCode::InvalidArgument, "channel index out of range");
    return std::span<const float>(samples_).subspan(c * n_samples_, n_samples_);
}

std::span<float> Recording::channel(std::size_t c) {
    require(c < n_channels(), ErrorCode::InvalidArgument, "channel index out of range");
    return std::span<float>(samples_).subspan(c * n_samples_, n_samples_);
}

std::optional<std::size_t> Recording::find_channel(std::string_view name) const {
    for (std::size_t i = 0; i < channel_names_.size(); ++i) {
        if (iequals(channel_names_[i], name)) return i;
    }
    return std::nullopt;
}

void write_recording(std::ostream& out, const Recording& rec) {
    out << kMagic << '\n'
        << "version " << kVersion << '\n'
        << "sample_rate_hz " << rec.sample_rate_hz() << '\n'
        << "montage " << to_string(rec.montage()) << '\n'
        << "n_channels " << rec.n_channels() << '\n'
        << "n_samples " << rec.n_samples() << '\n';
    for (const auto& name : rec.channel_names()) {
        out << "channel " << name << '\n';
    }
    out << "data\n";
    for (float v : rec.samples()) {
        put_f32_le(out, v);
    }
}

Recording read_recording(std::istream& in, const std::string& source) {
    auto header_error = [&](const std::string& what) {
        fail(ErrorCode::MalformedHeader, source + ": " + what);
    };

    std::string line;
    if (!std::getline(in, line) || trim(line) != kMagic) {
        header_error("missing RTSD-EEG magic line");
    }

    std::map<std::string, std::string, std::less<>> fields;
    std::vector<std::string> names;
    bool saw_data = false;
    while (std::getline(in, line)) {
        const std::string_view row = trim(line);
        if (row == "data") {
            saw_data = true;
            break;
        }
        if (row.empty()) continue;
        const auto space = row.find(' ');
        if (space == std::string_view::npos) header_error("header line without value: '" + std::string(row) + "'");
        const std::string key(row.substr(0, space));
        const std::string value(trim(row.substr(space + 1)));
        if (key == "channel") {
            names.push_back(value);
        } else if (!fields.emplace(key, value).second) {
            header_error("duplicate header key '" + key + "'");
        }
    }
    if (!saw_data) header_error("header not terminated by 'data'");

    auto field = [&](const char* key) -> const std::string& {
        auto it = fields.find(key);
        if (it == fields.end()) header_error(std::string("missing header key '") + key + "'");
        return it->second;
    };
    int version = 0;
    if (!parse_number(field("version"), version) || version != kVersion) {
        header_error("unsupported version '" + field("version") + "'");
    }
    int rate = 0;
    if (!parse_number(field("sample_rate_hz"), rate) || rate <= 0) {
        header_error("bad sample_rate_hz '" + field("sample_rate_hz") + "'");
    }
    std::size_t n_channels = 0;
    std::size_t n_samples = 0;
    if (!parse_number(field("n_channels"), n_channels)) header_error("bad n_channels");
    if (!parse_number(field("n_samples"), n_samples)) header_error("bad n_samples");
    Montage montage = Montage::Unipolar;
    try {
        montage = parse_montage(field("montage"));
    } catch (const Error&) {
        header_error("bad montage '" + field("montage") + "'");
    }
    if (names.size() != n_channels) {
        fail(ErrorCode::ChannelCountMismatch, source + ": header declares " + std::to_string(n_channels) +
                                                  " channels but names " + std::to_string(names.size()));
    }

    const std::size_t count = n_channels * n_samples;
    std::vector<unsigned char> bytes(count * 4);
    in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    const auto got = static_cast<std::size_t>(in.gcount());
    if (got != bytes.size()) {
        fail(ErrorCode::TruncatedPayload, source + ": expected " + std::to_string(bytes.size()) +
                                              " payload bytes, found " + std::to_string(got));
    }
    if (in.peek() != std::char_traits<char>::eof()) {
        fail(ErrorCode::MalformedData, source + ": trailing bytes after payload");
    }
    std::vector<float> samples(count);
    for (std::size_t i = 0; i < count; ++i) {
        samples[i] = get_f32_le(bytes.data() + 4 * i);
    }
    return Recording(rate, std::move(names), std::move(samples), montage);
}

void save_recording(const Recording& rec, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    require(static_cast<bool>(out), ErrorCode::Io, "cannot open '" + path.string() + "' for writing");
    write_recording(out, rec);
    require(static_cast<bool>(out), ErrorCode::Io, "write failed for '" + path.string() + "'");
}

Recording load_recording(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    require(static_cast<bool>(in), ErrorCode::Io, "cannot open recording '" + path.string() + "'");
    return read_recording(in, path.string());
}

Recording read_csv_recording(std::istream& in, int sample_rate_hz, const std::string& source) {
    auto split = [](std::string_view row) {
        std::vector<std::string_view> cells;
        std::size_t start = 0;
        while (true) {
            const auto comma = row.find(',', start);
            cells.push_back(trim(row.substr(start, comma - start)));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        return cells;
    };

    std::string line;
    if (!std::getline(in, line) || trim(line).empty()) {
        fail(ErrorCode::MalformedHeader, source + ": missing CSV header row");
    }
    std::vector<std::string> names;
    for (auto cell : split(trim(line))) {
        if (cell.empty()) fail(ErrorCode::MalformedHeader, source + ": empty channel name in header");
        names.emplace_back(cell);
    }

    std::vector<std::vector<float>> columns(names.size());
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        const auto row = trim(line);
        if (row.empty()) continue;
        const auto cells = split(row);
        if (cells.size() != names.size()) {
            fail(ErrorCode::ChannelCountMismatch, source + ":" + std::to_string(line_no) + ": expected " +
                                                      std::to_string(names.size()) + " values, found " +
                                                      std::to_string(cells.size()));
        }
        for (std::size_t c = 0; c < cells.size(); ++c) {
            float value = 0.0f;
            if (!parse_number(cells[c], value)) {
                fail(ErrorCode::MalformedData, source + ":" + std::to_string(line_no) + ": not a number '" +
                                                   std::string(cells[c]) + "'");
            }
            columns[c].push_back(value);
        }
    }

    std::vector<float> samples;
    samples.reserve(names.size() * (columns.empty() ? 0 : columns.front().size()));
    for (const auto& column : columns) {
        samples.insert(samples.end(), column.begin(), column.end());
    }
    return Recording(sample_rate_hz, std::move(names), std::move(samples), Montage::Unipolar);
}

Recording import_csv(const std::filesystem::path& path, int sample_rate_hz) {
    std::ifstream in(path);
    require(static_cast<bool>(in), ErrorCode::Io, "cannot open CSV '" + path.string() + "'");
    return read_csv_recording(in, sample_rate_hz, path.string());
}

} // namespace rtsd
