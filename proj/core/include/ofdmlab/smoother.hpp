#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ofdmlab/numerics.hpp"
#include "ofdmlab/ofdm.hpp"
#include "ofdmlab/params.hpp"

namespace ofdmlab {

enum class WindowKind { blackman, hanning, triangular };

WindowKind window_kind_from_name(std::string_view name);
std::string window_kind_name(WindowKind kind);

/// Half-window tapering the smooth overlay: value 1 at the support start,
/// 0 at the last support sample. rho_hz is the underlying full-window rate,
/// 1/((2L-2) T_samp). Derivatives are in per-sample units throughout.
struct WindowSpec {
    WindowKind kind = WindowKind::blackman;
    int support_len = 0;               // L
    double rho_hz = 0.0;
    std::vector<double> start_derivs;  // g^{(j)}(0), j = 0 .. 2N
};

WindowSpec make_window(WindowKind kind, int support_len, int continuity_order,
                       double sample_interval_s);

double window_value(const WindowSpec& w, int ell);
/// j-th per-sample derivative of the window at support offset ell.
double window_derivative(const WindowSpec& w, int j, int ell);

/// n_tilde-th per-sample derivative of the Dirichlet-style base pulse
/// f(ell) = (1/M) sum_r e^{j 2 pi k_r ell / M}, evaluated at support offset
/// ell. The pulse peaks at ell = 0, which is where the junction constraints
/// are imposed, so the derivative-response matrix stays well conditioned.
cplx basis_f(int n_tilde, int ell, const SystemParams& p);

struct SmoothCoeffs {
    cvec b;  // N+1 entries
};

/// Precomputed machinery for one (params, window) pair. response maps basis
/// coefficients to junction derivatives of the overlay; tail_map/head_map
/// give the data waveform's derivatives at a symbol's end (no CP phase) and
/// at its CP start (head_map = tail_map * Phi).
struct SmootherContext {
    SystemParams params;
    WindowSpec window;
    CMatrix basis_columns;  // L x (N+1), column n is f^{(n)} * g on the support
    CMatrix response;       // (N+1) x (N+1)
    CMatrix response_inv;
    CMatrix tail_map;       // (N+1) x K
    CMatrix head_map;       // (N+1) x K
};

SmootherContext build_smoother(const SystemParams& p, const WindowSpec& w);

/// Coefficients for the overlay at the junction between x_prev's symbol and
/// x_cur's. Pass a zero vector for the missing neighbour at either end of
/// the stream.
SmoothCoeffs smooth_coeffs(const SymbolVector& x_prev, const SymbolVector& x_cur,
                           const SmootherContext& ctx);

/// Smoothed stream: one corrected symbol per input plus a trailing symbol
/// that ramps the waveform down to zero. coeffs[i] belongs to the junction
/// at the head of symbols[i].
struct SmoothedStream {
    std::vector<TimeSymbol> symbols;
    std::vector<SmoothCoeffs> coeffs;
};

SmoothedStream apply_smoother(const std::vector<TimeSymbol>& ys,
                              const std::vector<SymbolVector>& xs,
                              const SmootherContext& ctx);

/// Junction mismatch, one entry per junction (stream head, each interior
/// junction, stream tail). absolute[n] is |left - right| for derivative
/// order n, relative[n] the same scaled by the larger one-sided magnitude.
/// Everything is evaluated analytically from the tone vectors and overlay
/// coefficients; pass an empty coefficient list to audit an unsmoothed
/// stream.
struct JunctionResidual {
    std::vector<double> absolute;
    std::vector<double> relative;
};

std::vector<JunctionResidual> junction_residuals(const std::vector<SymbolVector>& xs,
                                                 const std::vector<SmoothCoeffs>& bs,
                                                 const SmootherContext& ctx);

} // namespace ofdmlab
