#pragma once

#include <vector>

#include "ofdmlab/numerics.hpp"

namespace ofdmlab {

/// Waveform geometry shared by every module. The occupied subcarriers are a
/// contiguous block centered on DC inside an oversized transform, so the
/// baseband already carries the oversampling headroom used for spectrum
/// measurements (fft_size = oversampling * num_subcarriers by default).
struct SystemParams {
    int num_subcarriers = 256;            // K, occupied tones
    int fft_size = 2048;                  // M, samples per core symbol
    int cp_len = 144;                     // cyclic prefix samples
    int continuity_order = 2;             // N, highest derivative kept continuous
    int smoother_len = 144;               // L, corrective pulse support (<= cp_len)
    double subcarrier_spacing_hz = 15e3;  // delta f
    std::vector<int> subcarrier_indices;  // signed tone indices, ascending

    // Derived timing. beta is the CP fraction; phi the per-tone phase the CP
    // start acquires relative to the core symbol origin.
    double beta() const { return static_cast<double>(cp_len) / fft_size; }
    double phi() const;
    double symbol_core_s() const { return 1.0 / subcarrier_spacing_hz; }           // T_s
    double cp_duration_s() const { return beta() * symbol_core_s(); }              // T_cp
    double sample_interval_s() const { return symbol_core_s() / fft_size; }        // T_samp
    double symbol_duration_s() const { return symbol_core_s() + cp_duration_s(); } // T
    double sample_rate_hz() const { return fft_size * subcarrier_spacing_hz; }

    int symbol_len() const { return fft_size + cp_len; }

    /// Transform bin for a signed tone index (modulo fft_size).
    int bin_for(int k) const;

    /// Contiguous block of K tones around DC. With exclude_dc the block skips
    /// tone 0 and widens by one on the positive side to keep K tones.
    static SystemParams make_centered(int num_subcarriers, int fft_size, int cp_len,
                                      int continuity_order, int smoother_len,
                                      double subcarrier_spacing_hz, bool exclude_dc = false);

    /// Throws std::invalid_argument on any inconsistent combination.
    void validate() const;
};

} // namespace ofdmlab
