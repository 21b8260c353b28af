#pragma once

#include "rtsd/data/recording.hpp"
#include "rtsd/features/bands.hpp"
#include "rtsd/features/lfcc.hpp"
#include "rtsd/features/multirate.hpp"
#include "rtsd/features/sinc.hpp"
#include "rtsd/features/stft.hpp"
#include "rtsd/features/tensor.hpp"

#include <memory>
#include <string_view>

namespace rtsd {

/// Identity passthrough shaped (channels, 1, samples). Throws
/// InvalidArgument on non-finite input.
FeatureTensor extract_raw(const SignalView& window);

/// One window in, one tensor out. Implementations are immutable after
/// construction and safe to share across threads.
class FeatureExtractor {
public:
    virtual ~FeatureExtractor() = default;

    virtual ExtractorId id() const = 0;
    virtual FeatureTensor extract(const SignalView& window) const = 0;
};

struct ExtractorOptions {
    int sample_rate_hz = 200;
    StftParams stft = StftParams::shape_compat();
    BandSpec bands = BandSpec::defaults();
    BandStat band_stat = BandStat::Magnitude;
    LfccParams lfcc;
    SincBank sinc = SincBank::defaults();
    MultiRateParams multirate;
};

std::unique_ptr<FeatureExtractor> make_extractor(ExtractorId id, const ExtractorOptions& options = {});
std::unique_ptr<FeatureExtractor> make_extractor(std::string_view name, const ExtractorOptions& options = {});

} // namespace rtsd
