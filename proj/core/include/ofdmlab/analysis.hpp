#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ofdmlab/numerics.hpp"
#include "ofdmlab/params.hpp"
#include "ofdmlab/qam.hpp"
#include "ofdmlab/smoother.hpp"

namespace ofdmlab {

enum class PsdNormalization { absolute, peak_0db };

struct PsdEstimate {
    std::vector<double> freqs_hz;  // strictly increasing
    std::vector<double> power;     // linear, >= 0
    PsdNormalization normalization = PsdNormalization::absolute;
    // segment metadata; zero/empty for closed-form estimates
    int segment_len = 0;
    int overlap = 0;
    int num_segments = 0;
    std::string window_name;
};

/// Averaged-periodogram estimate over Hanning-windowed segments. The scale
/// is chosen so unit-variance white noise reads a flat level of 1 (its
/// variance); run the result through normalize_peak for plotting. Grid runs
/// from -Fs/2 to just under +Fs/2 in Fs/seg_len steps.
PsdEstimate welch_psd(const cvec& signal, double sample_rate_hz, int seg_len = 2048,
                      int overlap = 512);

/// Rescale so the maximum is 1 (0 dB). No-op on an all-zero estimate.
PsdEstimate normalize_peak(const PsdEstimate& psd);

/// 10*log10 with nonpositive inputs clamped to the floor sentinel.
double power_db(double linear);
inline constexpr double kPsdFloorDb = -400.0;

/// Fourier transform of the n_bar-th derivative of the descending Blackman
/// half-window over its support [0, T_p = 1/(2 rho)], evaluated at frequency
/// nu_hz, i.e. integral of g^{(n_bar)}(t) e^{j 2 pi nu t} dt. Closed form;
/// the removable singularities at nu in {0, +-rho, +-2 rho} are NOT handled
/// here, callers keep evaluation points away from them.
cplx blackman_deriv_transform(int n_bar, double nu_hz, double rho_hz);

/// Spectrum of one finite smoothed stream at frequency f_hz: the data part
/// of every symbol (CP-aware sinc model) plus the windowed-overlay part via
/// blackman_deriv_transform, assembled with the (f T_s)^{-N} derivative
/// trick. Pass bs with one entry per junction (xs.size()+1, as produced by
/// apply_smoother) to include the trailing ramp-down; pass head junctions
/// only (xs.size()) to drop it; pass empty bs for an unsmoothed stream.
/// Requires a Blackman window context. f = 0 with N >= 1 is rejected.
cplx analytic_stream_spectrum(const std::vector<SymbolVector>& xs,
                              const std::vector<SmoothCoeffs>& bs,
                              const SmootherContext& ctx, double f_hz);

struct AnalyticPsdParams {
    SystemParams params;
    WindowSpec window;            // must be Blackman
    int qam_order = 16;
    int block_len = 64;           // consecutive symbols per draw
    int num_draws = 8;
    std::vector<double> freqs_hz;
};

/// Monte Carlo average of |analytic_stream_spectrum|^2 over random data
/// draws, divided by the block duration. Grid points falling within 1e-9
/// subcarrier spacings of a removable singularity are evaluated as the
/// average of the two points offset by +-1e-6 spacings.
PsdEstimate analytic_psd(const AnalyticPsdParams& ap, std::uint64_t seed, int workers = 1);

/// Least-squares slope of log10(power) against log10(f - f_ref_hz) over grid
/// points with f_lo_hz <= f <= f_hi_hz, i.e. the exponent alpha in f^alpha.
/// Nonpositive-power points are skipped; at least 10 must remain.
double slope_fit(const PsdEstimate& psd, double f_lo_hz, double f_hi_hz,
                 double f_ref_hz = 0.0);

/// Hamming distance over length. Streams must be nonempty and equal-length.
double bit_error_rate(const BitStream& tx, const BitStream& rx);

enum class ComplexityScheme { nc_ofdm, ncsp_ofdm, low_interference };

std::string complexity_scheme_name(ComplexityScheme s);

struct ComplexityReport {
    ComplexityScheme scheme = ComplexityScheme::nc_ofdm;
    long long real_mults = 0;
    long long real_adds = 0;
};

/// Per-symbol real operation counts of the three precoding schemes.
ComplexityReport complexity_counts(ComplexityScheme scheme, int K, int N, int L);

} // namespace ofdmlab
