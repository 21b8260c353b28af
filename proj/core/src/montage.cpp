#include "rtsd/data/montage.hpp"

#include "rtsd/error.hpp"

#include <fstream>
#include <istream>
#include <set>
#include <sstream>

namespace rtsd {

void MontageSpec::validate() const {
    require(!pairs.empty(), ErrorCode::InvalidArgument, "montage has no pairs");
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& p : pairs) {
        require(!p.anode.empty() && !p.cathode.empty(), ErrorCode::InvalidArgument, "empty montage lead name");
        require(p.anode != p.cathode, ErrorCode::InvalidArgument, "montage pair references one lead twice: " + p.name());
        require(seen.emplace(p.anode, p.cathode).second, ErrorCode::InvalidArgument,
                "duplicate montage pair " + p.name());
    }
}

MontageSpec default_bipolar_montage() {
    return MontageSpec{{
        {"FP1", "F7"}, {"F7", "T3"}, {"T3", "T5"}, {"T5", "O1"},
        {"FP2", "F8"}, {"F8", "T4"}, {"T4", "T6"}, {"T6", "O2"},
        {"T3", "C3"},  {"C3", "CZ"}, {"CZ", "C4"}, {"C4", "T4"},
        {"FP1", "F3"}, {"F3", "C3"}, {"C3", "P3"}, {"P3", "O1"},
        {"FP2", "F4"}, {"F4", "C4"}, {"C4", "P4"}, {"P4", "O2"},
    }};
}

std::vector<std::string> default_unipolar_channels() {
    return {"FP1", "FP2", "F3", "F4", "C3", "C4", "P3", "P4", "O1", "O2", "F7",
            "F8",  "T3",  "T4", "T5", "T6", "A1", "A2", "FZ", "CZ", "PZ", "T1"};
}

MontageSpec read_montage(std::istream& in, const std::string& source) {
    MontageSpec spec;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream row(line);
        MontagePair pair;
        if (!(row >> pair.anode) || pair.anode.front() == '#') continue;
        std::string extra;
        if (!(row >> pair.cathode) || (row >> extra)) {
            fail(ErrorCode::MalformedData,
                 source + ":" + std::to_string(line_no) + ": expected 'ANODE CATHODE'");
        }
        spec.pairs.push_back(std::move(pair));
    }
    spec.validate();
    return spec;
}

MontageSpec load_montage(const std::filesystem::path& path) {
    std::ifstream in(path);
    require(static_cast<bool>(in), ErrorCode::Io, "cannot open montage '" + path.string() + "'");
    return read_montage(in, path.string());
}

Recording to_bipolar(const Recording& rec, const MontageSpec& spec) {
    require(rec.montage() == Montage::Unipolar, ErrorCode::InvalidArgument,
            "bipolar conversion needs a unipolar recording");
    spec.validate();

    std::vector<std::pair<std::size_t, std::size_t>> index;
    index.reserve(spec.pairs.size());
    for (const auto& p : spec.pairs) {
        const auto a = rec.find_channel(p.anode);
        if (!a) fail(ErrorCode::ChannelNotFound, "channel '" + p.anode + "' not in recording");
        const auto c = rec.find_channel(p.cathode);
        if (!c) fail(ErrorCode::ChannelNotFound, "channel '" + p.cathode + "' not in recording");
        index.emplace_back(*a, *c);
    }

    std::vector<std::string> names;
    for (const auto& p : spec.pairs) names.push_back(p.name());
    Recording out(rec.sample_rate_hz(), std::move(names), rec.n_samples(), Montage::Bipolar);
    for (std::size_t i = 0; i < index.size(); ++i) {
        const auto anode = rec.channel(index[i].first);
        const auto cathode = rec.channel(index[i].second);
        auto dst = out.channel(i);
        for (std::size_t t = 0; t < dst.size(); ++t) {
            dst[t] = anode[t] - cathode[t];
        }
    }
    return out;
}

} // namespace rtsd
