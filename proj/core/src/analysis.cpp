#include "ofdmlab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ofdmlab/parallel.hpp"
#include "ofdmlab/rng.hpp"

namespace ofdmlab {

namespace {

constexpr double kPi = std::numbers::pi;

double sinc(double x) {
    if (std::abs(x) < 1e-8) return 1.0;
    return std::sin(kPi * x) / (kPi * x);
}

cplx unit_phase(double radians) {
    return cplx(std::cos(radians), std::sin(radians));
}

double binom(int n, int k) {
    double v = 1.0;
    for (int i = 0; i < k; ++i) v = v * (n - i) / (i + 1);
    return v;
}

} // namespace

PsdEstimate welch_psd(const cvec& signal, double sample_rate_hz, int seg_len, int overlap) {
    if (seg_len < 2 || overlap < 0 || overlap >= seg_len) {
        throw std::invalid_argument("welch_psd: need 0 <= overlap < seg_len and seg_len >= 2");
    }
    if (!(sample_rate_hz > 0.0)) {
        throw std::invalid_argument("welch_psd: sample rate must be positive");
    }
    if (signal.size() < static_cast<std::size_t>(seg_len)) {
        throw std::invalid_argument("welch_psd: signal length " +
                                    std::to_string(signal.size()) +
                                    " shorter than one segment of " +
                                    std::to_string(seg_len));
    }

    std::vector<double> win(static_cast<std::size_t>(seg_len));
    double win_energy = 0.0;
    for (int m = 0; m < seg_len; ++m) {
        win[static_cast<std::size_t>(m)] =
            0.5 * (1.0 - std::cos(2.0 * kPi * m / (seg_len - 1)));
        win_energy += win[static_cast<std::size_t>(m)] * win[static_cast<std::size_t>(m)];
    }

    const int hop = seg_len - overlap;
    const int nseg =
        static_cast<int>((signal.size() - static_cast<std::size_t>(seg_len)) /
                         static_cast<std::size_t>(hop)) + 1;

    std::vector<double> acc(static_cast<std::size_t>(seg_len), 0.0);
    cvec buf(static_cast<std::size_t>(seg_len));
    for (int s = 0; s < nseg; ++s) {
        const std::size_t off = static_cast<std::size_t>(s) * static_cast<std::size_t>(hop);
        for (int m = 0; m < seg_len; ++m) {
            buf[static_cast<std::size_t>(m)] =
                signal[off + static_cast<std::size_t>(m)] * win[static_cast<std::size_t>(m)];
        }
        const cvec spec = dft(buf);
        for (int m = 0; m < seg_len; ++m) {
            acc[static_cast<std::size_t>(m)] += std::norm(spec[static_cast<std::size_t>(m)]);
        }
    }

    PsdEstimate est;
    est.freqs_hz.resize(static_cast<std::size_t>(seg_len));
    est.power.resize(static_cast<std::size_t>(seg_len));
    est.normalization = PsdNormalization::absolute;
    est.segment_len = seg_len;
    est.overlap = overlap;
    est.num_segments = nseg;
    est.window_name = "hanning";
    const double scale = 1.0 / (static_cast<double>(nseg) * win_energy);
    for (int i = 0; i < seg_len; ++i) {
        const int bin = (i + seg_len / 2) % seg_len;
        est.freqs_hz[static_cast<std::size_t>(i)] =
            (i - seg_len / 2) * sample_rate_hz / seg_len;
        est.power[static_cast<std::size_t>(i)] = acc[static_cast<std::size_t>(bin)] * scale;
    }
    return est;
}

PsdEstimate normalize_peak(const PsdEstimate& psd) {
    PsdEstimate out = psd;
    double peak = 0.0;
    for (double p : out.power) peak = std::max(peak, p);
    if (peak > 0.0) {
        for (double& p : out.power) p /= peak;
    }
    out.normalization = PsdNormalization::peak_0db;
    return out;
}

double power_db(double linear) {
    if (!(linear > 0.0)) return kPsdFloorDb;
    return std::max(kPsdFloorDb, 10.0 * std::log10(linear));
}

cplx blackman_deriv_transform(int n_bar, double nu_hz, double rho_hz) {
    if (n_bar < 0 || !(rho_hz > 0.0)) {
        throw std::invalid_argument("blackman_deriv_transform: bad order or rate");
    }
    const double t_p = 1.0 / (2.0 * rho_hz);
    const double w1 = 2.0 * kPi * rho_hz;
    const double w2 = 4.0 * kPi * rho_hz;
    const double theta = n_bar * kPi / 2.0;
    const double ct = std::cos(theta);
    const double st = std::sin(theta);
    const double nu = nu_hz;

    const cplx j(0.0, 1.0);
    // constant term survives only undifferentiated
    const cplx dc = (n_bar == 0) ? cplx(0.42 * t_p * sinc(nu * t_p), 0.0) : cplx(0.0, 0.0);
    const cplx j1 = -std::cos(kPi * nu * t_p) / (1.0 - (rho_hz / nu) * (rho_hz / nu)) *
                    (ct / (j * kPi * nu) - rho_hz * st / (kPi * nu * nu));
    const cplx j2 = std::sin(kPi * nu * t_p) /
                    (1.0 - (2.0 * rho_hz / nu) * (2.0 * rho_hz / nu)) *
                    (cplx(ct, 0.0) / (kPi * nu) - j * 2.0 * rho_hz * st / (kPi * nu * nu));
    return unit_phase(kPi * nu * t_p) *
           (dc + 0.5 * std::pow(w1, n_bar) * j1 + 0.08 * std::pow(w2, n_bar) * j2);
}

cplx analytic_stream_spectrum(const std::vector<SymbolVector>& xs,
                              const std::vector<SmoothCoeffs>& bs,
                              const SmootherContext& ctx, double f_hz) {
    if (ctx.window.kind != WindowKind::blackman) {
        throw std::invalid_argument("analytic_stream_spectrum: closed form exists only for "
                                    "the Blackman window");
    }
    const SystemParams& p = ctx.params;
    const int N = p.continuity_order;
    if (f_hz == 0.0 && N >= 1) {
        throw std::invalid_argument("analytic_stream_spectrum: f = 0 is a pole of the "
                                    "derivative-trick form for N >= 1");
    }
    if (!bs.empty() && bs.size() != xs.size() && bs.size() != xs.size() + 1) {
        throw std::invalid_argument("analytic_stream_spectrum: coefficient count must be 0, "
                                    "the symbol count, or symbol count + 1");
    }

    const std::size_t K = p.subcarrier_indices.size();
    const double t_s = p.symbol_core_s();
    const double t_cp = p.cp_duration_s();
    const double t_sym = p.symbol_duration_s();
    const double t_samp = p.sample_interval_s();
    const double beta = p.beta();
    const double f_ts = f_hz * t_s;
    const int M = p.fft_size;

    // data part: per-tone factors shared by every symbol
    cvec data_factor(K);
    for (std::size_t r = 0; r < K; ++r) {
        const double k = static_cast<double>(p.subcarrier_indices[r]);
        const double f_r = k - f_ts;
        data_factor[r] = t_sym * pow_int(k, N) * sinc(f_r * (1.0 + beta)) *
                         unit_phase(kPi * f_r * (1.0 - beta));
    }

    // overlay part: weights w_term(n) = sum over n_bar of
    // C(N, n_bar) (j 2 pi / T_s)^(n - n_bar) sum_r k^(N + n - n_bar) G(n_bar, f_r),
    // with G carrying the CP-start alignment phase e^{j 2 pi f T_cp}
    cvec overlay_weight;
    if (!bs.empty()) {
        const cplx cp_phase = unit_phase(2.0 * kPi * f_hz * t_cp);
        CMatrix g_pow(N + 1, 2 * N + 1);  // g_pow(n_bar, q) = sum_r k^q G(n_bar, f_r)
        for (std::size_t r = 0; r < K; ++r) {
            const double k = static_cast<double>(p.subcarrier_indices[r]);
            const double nu = (k - f_ts) / t_s;
            for (int n_bar = 0; n_bar <= N; ++n_bar) {
                const cplx g = cp_phase *
                               blackman_deriv_transform(n_bar, nu, ctx.window.rho_hz);
                for (int q = 0; q <= 2 * N; ++q) {
                    g_pow.at(n_bar, q) += pow_int(k, q) * g;
                }
            }
        }
        overlay_weight.resize(static_cast<std::size_t>(N) + 1);
        const cplx jw(0.0, 2.0 * kPi / t_s);
        for (int n = 0; n <= N; ++n) {
            cplx acc(0.0, 0.0);
            for (int n_bar = 0; n_bar <= N; ++n_bar) {
                acc += binom(N, n_bar) * cpow_int(jw, n - n_bar) *
                       g_pow.at(n_bar, N + n - n_bar);
            }
            overlay_weight[static_cast<std::size_t>(n)] = pow_int(t_samp, n) * acc;
        }
    }

    const cplx step = unit_phase(-2.0 * kPi * f_hz * t_sym);
    cplx phase(1.0, 0.0);
    cplx total(0.0, 0.0);
    for (std::size_t i = 0; i <= xs.size(); ++i) {
        cplx sym(0.0, 0.0);
        if (i < xs.size()) {
            if (xs[i].size() != K) {
                throw std::invalid_argument("analytic_stream_spectrum: tone vector size "
                                            "mismatch");
            }
            for (std::size_t r = 0; r < K; ++r) sym += data_factor[r] * xs[i][r];
        }
        if (i < bs.size()) {
            const cvec& b = bs[i].b;
            for (int n = 0; n <= N; ++n) {
                sym += overlay_weight[static_cast<std::size_t>(n)] *
                       b[static_cast<std::size_t>(n)];
            }
        }
        total += phase * sym;
        phase *= step;
    }
    return std::pow(f_ts, static_cast<double>(-N)) * total / static_cast<double>(M);
}

PsdEstimate analytic_psd(const AnalyticPsdParams& ap, std::uint64_t seed, int workers) {
    if (ap.block_len < 1 || ap.num_draws < 1) {
        throw std::invalid_argument("analytic_psd: need at least one symbol and one draw");
    }
    if (ap.freqs_hz.empty()) {
        throw std::invalid_argument("analytic_psd: empty frequency grid");
    }
    for (std::size_t i = 1; i < ap.freqs_hz.size(); ++i) {
        if (!(ap.freqs_hz[i] > ap.freqs_hz[i - 1])) {
            throw std::invalid_argument("analytic_psd: frequency grid must be strictly "
                                        "increasing");
        }
    }
    const SystemParams& p = ap.params;
    const int N = p.continuity_order;
    if (N >= 1) {
        for (double f : ap.freqs_hz) {
            if (f == 0.0) {
                throw std::invalid_argument("analytic_psd: grid contains f = 0, a pole for "
                                            "N >= 1");
            }
        }
    }

    const SmootherContext ctx = build_smoother(p, ap.window);
    const std::size_t K = p.subcarrier_indices.size();
    const int bps = qam_bits_per_symbol(ap.qam_order);
    const std::size_t U = static_cast<std::size_t>(ap.block_len);

    // one fixed set of draws reused for every grid point
    std::vector<std::vector<SymbolVector>> draw_xs(static_cast<std::size_t>(ap.num_draws));
    std::vector<std::vector<SmoothCoeffs>> draw_bs(static_cast<std::size_t>(ap.num_draws));
    const SymbolVector zero(K, cplx(0.0, 0.0));
    for (int d = 0; d < ap.num_draws; ++d) {
        Rng rng(derive_seed(seed, seed_tag::psd_draw, static_cast<std::uint64_t>(d)));
        auto& xs = draw_xs[static_cast<std::size_t>(d)];
        auto& bs = draw_bs[static_cast<std::size_t>(d)];
        xs.reserve(U);
        bs.reserve(U + 1);
        BitStream bits(K * static_cast<std::size_t>(bps));
        for (std::size_t i = 0; i < U; ++i) {
            for (auto& bit : bits) bit = static_cast<std::uint8_t>(rng.next_u64() & 1u);
            xs.push_back(qam_map(bits, ap.qam_order, static_cast<int>(K)).front());
        }
        for (std::size_t i = 0; i <= U; ++i) {
            const SymbolVector& prev = (i == 0) ? zero : xs[i - 1];
            const SymbolVector& cur = (i == U) ? zero : xs[i];
            bs.push_back(smooth_coeffs(prev, cur, ctx));
        }
    }

    // removable singularities of the closed-form window transform, in
    // subcarrier units of f_r = k - f T_s
    const double rho_ts = ctx.window.rho_hz * p.symbol_core_s();
    const double sing[5] = {0.0, rho_ts, -rho_ts, 2.0 * rho_ts, -2.0 * rho_ts};
    const double t_s = p.symbol_core_s();
    const double df = p.subcarrier_spacing_hz;

    auto psd_at = [&](double f) {
        double acc = 0.0;
        for (int d = 0; d < ap.num_draws; ++d) {
            acc += std::norm(analytic_stream_spectrum(draw_xs[static_cast<std::size_t>(d)],
                                                      draw_bs[static_cast<std::size_t>(d)],
                                                      ctx, f));
        }
        return acc / (static_cast<double>(ap.num_draws) * static_cast<double>(U) *
                      p.symbol_duration_s());
    };

    PsdEstimate est;
    est.freqs_hz = ap.freqs_hz;
    est.power.assign(ap.freqs_hz.size(), 0.0);
    est.normalization = PsdNormalization::absolute;

    parallel_for(ap.freqs_hz.size(), workers, [&](std::size_t i) {
        const double f = ap.freqs_hz[i];
        bool near_singular = false;
        for (int k : p.subcarrier_indices) {
            const double f_r = static_cast<double>(k) - f * t_s;
            for (double s : sing) {
                if (std::abs(f_r - s) < 1e-9) {
                    near_singular = true;
                    break;
                }
            }
            if (near_singular) break;
        }
        if (near_singular) {
            est.power[i] = 0.5 * (psd_at(f - 1e-6 * df) + psd_at(f + 1e-6 * df));
        } else {
            est.power[i] = psd_at(f);
        }
    });
    return est;
}

double slope_fit(const PsdEstimate& psd, double f_lo_hz, double f_hi_hz, double f_ref_hz) {
    if (!(f_hi_hz > f_lo_hz)) {
        throw std::invalid_argument("slope_fit: need f_lo < f_hi");
    }
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int n = 0;
    for (std::size_t i = 0; i < psd.freqs_hz.size(); ++i) {
        const double f = psd.freqs_hz[i];
        if (f < f_lo_hz || f > f_hi_hz || f <= f_ref_hz) continue;
        if (!(psd.power[i] > 0.0)) continue;
        const double x = std::log10(f - f_ref_hz);
        const double y = std::log10(psd.power[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 10) {
        throw std::invalid_argument("slope_fit: need at least 10 usable grid points in band, "
                                    "got " + std::to_string(n));
    }
    const double denom = n * sxx - sx * sx;
    if (std::abs(denom) < 1e-30) {
        throw std::invalid_argument("slope_fit: degenerate abscissa spread");
    }
    return (n * sxy - sx * sy) / denom;
}

double bit_error_rate(const BitStream& tx, const BitStream& rx) {
    if (tx.empty() || tx.size() != rx.size()) {
        throw std::invalid_argument("bit_error_rate: streams must be nonempty and "
                                    "equal-length");
    }
    std::size_t errors = 0;
    for (std::size_t i = 0; i < tx.size(); ++i) {
        if ((tx[i] != 0) != (rx[i] != 0)) ++errors;
    }
    return static_cast<double>(errors) / static_cast<double>(tx.size());
}

std::string complexity_scheme_name(ComplexityScheme s) {
    switch (s) {
    case ComplexityScheme::nc_ofdm: return "nc_ofdm";
    case ComplexityScheme::ncsp_ofdm: return "ncsp_ofdm";
    case ComplexityScheme::low_interference: return "low_interference";
    }
    return "unknown";
}

ComplexityReport complexity_counts(ComplexityScheme scheme, int K, int N, int L) {
    if (K < 1 || N < 0 || L < 1) {
        throw std::invalid_argument("complexity_counts: need K >= 1, N >= 0, L >= 1");
    }
    const long long k = K, n = N, l = L;
    ComplexityReport rep;
    rep.scheme = scheme;
    switch (scheme) {
    case ComplexityScheme::nc_ofdm:
        rep.real_mults = 4 * (n + 1) * k;
        rep.real_adds = 2 * (n + 1) * (2 * k - 1);
        break;
    case ComplexityScheme::ncsp_ofdm:
        rep.real_mults = 8 * (n + 1) * k;
        rep.real_adds = 8 * (n + 1) * k - 4 * (n + 1);
        break;
    case ComplexityScheme::low_interference:
        rep.real_mults = 2 * n * k + (n + 1) * l;
        rep.real_adds = (n + 1) * (2 * k + l + n - 2);
        break;
    }
    return rep;
}

} // namespace ofdmlab
