#include "rtsd/features/extractor.hpp"

#include "rtsd/error.hpp"

namespace rtsd {
namespace {

class RawExtractor final : public FeatureExtractor {
public:
    ExtractorId id() const override { return ExtractorId::Raw; }
    FeatureTensor extract(const SignalView& window) const override { return extract_raw(window); }
};

class StftFeature final : public FeatureExtractor {
public:
    StftFeature(const StftParams& params, int fs) : engine_(params, fs) {}
    ExtractorId id() const override { return ExtractorId::Stft; }
    FeatureTensor extract(const SignalView& window) const override { return stft(engine_, window); }

private:
    Spectrogram engine_;
};

class BandsFeature final : public FeatureExtractor {
public:
    BandsFeature(const StftParams& params, const BandSpec& bands, int fs, BandStat stat)
        : impl_(params, bands, fs, stat) {}
    ExtractorId id() const override { return ExtractorId::Bands; }
    FeatureTensor extract(const SignalView& window) const override { return impl_.extract(window); }

private:
    BandExtractor impl_;
};

class LfccFeature final : public FeatureExtractor {
public:
    LfccFeature(const LfccParams& params, int fs) : impl_(params, fs) {}
    ExtractorId id() const override { return ExtractorId::Lfcc; }
    FeatureTensor extract(const SignalView& window) const override { return impl_.extract(window); }

private:
    LfccExtractor impl_;
};

class SincFeature final : public FeatureExtractor {
public:
    SincFeature(const SincBank& bank, int fs) : impl_(bank, fs) {}
    ExtractorId id() const override { return ExtractorId::SincNet; }
    FeatureTensor extract(const SignalView& window) const override { return impl_.extract(window); }

private:
    SincFilterbank impl_;
};

class MultiRateFeature final : public FeatureExtractor {
public:
    explicit MultiRateFeature(MultiRateParams params) : params_(std::move(params)) {}
    ExtractorId id() const override { return ExtractorId::MultiRate; }
    FeatureTensor extract(const SignalView& window) const override { return multirate_concat(window, params_); }

private:
    MultiRateParams params_;
};

} // namespace

FeatureTensor extract_raw(const SignalView& window) {
    std::vector<float> data(window.samples.begin(), window.samples.end());
    return FeatureTensor(ExtractorId::Raw, {window.n_channels, 1, window.n_samples}, std::move(data));
}

std::unique_ptr<FeatureExtractor> make_extractor(ExtractorId id, const ExtractorOptions& options) {
    const int fs = options.sample_rate_hz;
    switch (id) {
    case ExtractorId::Raw: return std::make_unique<RawExtractor>();
    case ExtractorId::Stft: return std::make_unique<StftFeature>(options.stft, fs);
    case ExtractorId::Bands: return std::make_unique<BandsFeature>(options.stft, options.bands, fs, options.band_stat);
    case ExtractorId::Lfcc: return std::make_unique<LfccFeature>(options.lfcc, fs);
    case ExtractorId::SincNet: return std::make_unique<SincFeature>(options.sinc, fs);
    case ExtractorId::MultiRate: return std::make_unique<MultiRateFeature>(options.multirate);
    }
    fail(ErrorCode::InvalidArgument, "unknown extractor id");
}

std::unique_ptr<FeatureExtractor> make_extractor(std::string_view name, const ExtractorOptions& options) {
    return make_extractor(parse_extractor_id(name), options);
}

} // namespace rtsd
