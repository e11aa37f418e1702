#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ofdmlab/analysis.hpp"
#include "ofdmlab/channel.hpp"
#include "ofdmlab/params.hpp"
#include "ofdmlab/qam.hpp"
#include "ofdmlab/smoother.hpp"

namespace ofdmlab {

/// Raised for bad config files, bad override keys/values, and invariant
/// violations found before any computation starts. The CLI maps this to
/// exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Scheme { ofdm, nc_ofdm, low_interference };

Scheme scheme_from_name(std::string_view name);
std::string scheme_name(Scheme s);

/// Flat experiment configuration. Field defaults are the reference setup:
/// 256 centered tones, FFT 2048 (8x oversampling), CP 144, 15 kHz spacing,
/// 16-QAM, Blackman overlay of length 144.
struct ExperimentConfig {
    Scheme scheme = Scheme::ofdm;
    int num_subcarriers = 256;
    int oversampling = 8;
    int fft_size = 0;  // 0 = derive as oversampling * num_subcarriers
    int cp_len = 144;
    int continuity_order = 2;
    int smoother_len = 144;
    double subcarrier_spacing_hz = 15e3;
    int qam_order = 16;
    WindowKind window = WindowKind::blackman;
    int num_symbols = 1000;
    std::vector<double> snr_db = {10.0, 15.0, 20.0, 25.0, 30.0};
    std::uint64_t seed = 1;
    int workers = 1;
    std::string output_dir = ".";
    std::string channel = "eva";  // "eva", "none", or a profile file path

    int psd_seg_len = 2048;
    int psd_overlap = 512;
    bool psd_absolute = false;  // emit absolute instead of peak-normalized dB
    bool psd_analytic = true;   // low_interference only: also emit closed form
    int psd_draws = 64;
    int psd_block_len = 64;

    long long ber_min_errors = 100;
    long long ber_max_bits = 1000000;

    bool allow_discontinuous = false;  // let the continuity audit run plain ofdm

    void validate() const;        // throws ConfigError
    SystemParams system_params() const;
    int resolved_fft_size() const;
};

/// Parse a flat key = value file ('#' comments, blank lines ok). Unknown
/// keys are errors.
ExperimentConfig load_config(const std::string& path);

/// Apply one key=value override (same keys as the config file).
void apply_override(ExperimentConfig& cfg, const std::string& key,
                    const std::string& value);

/// Serialize the fully resolved config, one key = value per line, sorted.
std::string config_to_string(const ExperimentConfig& cfg);

/// Data symbols for a run: symbol i's bits come from a stream seeded by
/// (seed, bits-tag, i), so every scheme sees identical data.
std::vector<SymbolVector> draw_data_symbols(const SystemParams& p, int qam_order,
                                            int count, std::uint64_t seed);

/// Transmit sample stream for one scheme: modulated symbols back to back,
/// with the precoder recursion applied first for nc_ofdm and the smooth
/// overlay (plus its trailing ramp-down symbol) for low_interference.
cvec simulate_stream(Scheme scheme, const SystemParams& p, WindowKind window,
                     int qam_order, int num_symbols, std::uint64_t seed);

struct BerPoint {
    double snr_db = 0.0;
    double ber = 0.0;
    long long bits_measured = 0;
};

/// One SNR point of the BER sweep: 64-symbol blocks through the configured
/// channel and AWGN until the error or bit budget is hit. snr_index picks
/// the noise seed lane so points stay independent.
BerPoint simulate_ber_point(const ExperimentConfig& cfg, double snr_db, int snr_index);

/// Files written by a run, manifest last.
struct RunResult {
    std::vector<std::string> files;
};

RunResult run_psd(const ExperimentConfig& cfg);
RunResult run_ber(const ExperimentConfig& cfg);
RunResult run_continuity(const ExperimentConfig& cfg);
RunResult run_complexity(const ExperimentConfig& cfg);

} // namespace ofdmlab
