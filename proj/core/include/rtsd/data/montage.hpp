#pragma once

#include "rtsd/data/recording.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace rtsd {

struct MontagePair {
    std::string anode;
    std::string cathode;

    std::string name() const { return anode + "-" + cathode; }
    friend bool operator==(const MontagePair&, const MontagePair&) = default;
};

struct MontageSpec {
    std::vector<MontagePair> pairs;

    /// Throws InvalidArgument on duplicate or self-referencing pairs.
    void validate() const;
};

/// 20-pair longitudinal/transverse bipolar montage over the 10-20 leads.
MontageSpec default_bipolar_montage();

/// 22 unipolar leads; a superset of every electrode the default montage uses.
std::vector<std::string> default_unipolar_channels();

/// One `ANODE CATHODE` pair per line; '#' comments and blank lines skipped.
MontageSpec read_montage(std::istream& in, const std::string& source = "<stream>");
MontageSpec load_montage(const std::filesystem::path& path);

/// Channel i of the result is anode_i - cathode_i, samplewise.
Recording to_bipolar(const Recording& rec, const MontageSpec& spec);

} // namespace rtsd
