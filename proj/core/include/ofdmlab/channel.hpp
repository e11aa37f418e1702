#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ofdmlab/numerics.hpp"

namespace ofdmlab {

/// Tapped-delay-line power profile. Delays in seconds, powers linear and
/// normalized to unit sum.
struct ChannelProfile {
    std::vector<double> tap_delays_s;
    std::vector<double> tap_powers;

    void validate() const;
};

/// The 3GPP Extended Vehicular A profile (TS 36.101), 9 taps.
ChannelProfile eva_profile();

/// Parse a profile file: one "delay_ns power_db" pair per line, '#' starts a
/// comment. Powers are normalized to unit sum after conversion from dB.
ChannelProfile load_profile(const std::string& path);

/// One block-fading draw: sample-spaced complex tap line plus its length-M
/// frequency response. cp_exceeded flags a delay spread longer than the
/// cyclic prefix (not fatal, but the one-tap equalizer model breaks down).
struct ChannelRealization {
    cvec taps;
    cvec freq_response;
    bool cp_exceeded = false;
};

ChannelRealization realize(const ChannelProfile& profile, double sample_rate_hz,
                           int fft_size, int cp_len, std::uint64_t seed);

/// Linear convolution with the tap line, truncated to the input length.
cvec apply_channel(const cvec& signal, const ChannelRealization& ch);

/// Add circular complex Gaussian noise at the given SNR relative to the
/// measured average power of `signal`. snr_db = +infinity returns the input
/// unchanged. A zero signal has no defined SNR and is rejected.
cvec add_awgn(const cvec& signal, double snr_db, std::uint64_t seed);

/// Same, but the SNR references an explicit average power instead of the
/// input's own (e.g. transmit power when noising a faded signal).
cvec add_awgn(const cvec& signal, double snr_db, std::uint64_t seed,
              double reference_power);

} // namespace ofdmlab
