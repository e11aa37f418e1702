#pragma once

#include <vector>

#include "ofdmlab/params.hpp"
#include "ofdmlab/qam.hpp"

namespace ofdmlab {

/// Thrown by demodulate when an occupied bin of the channel response is
/// effectively zero and equalization would divide by it.
class DeepFadeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One CP-prefixed symbol. samples[0] is the first prefix sample; the core
/// starts at index cp_len. The prefix is an exact copy of the core tail, so
/// the underlying waveform is periodic across the whole buffer.
struct TimeSymbol {
    cvec samples;
};

/// Synthesize one symbol: place tone values on their transform bins, run the
/// 1/M synthesis transform, prepend the cyclic prefix.
TimeSymbol modulate(const SymbolVector& tones, const SystemParams& p);

/// Strip the prefix, run the analysis transform, equalize occupied bins by
/// channel_freq (length fft_size; pass all-ones for a clean channel).
SymbolVector demodulate(const TimeSymbol& symbol, const cvec& channel_freq,
                        const SystemParams& p);

/// Concatenate symbols into one contiguous baseband stream.
cvec concatenate(const std::vector<TimeSymbol>& symbols);

} // namespace ofdmlab
