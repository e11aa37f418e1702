#include "ofdmlab/smoother.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ofdmlab {

namespace {

constexpr double kPi = std::numbers::pi;

// Window argument: theta(ell) = pi (ell + L - 1)/(L - 1), so the cosine
// series is evaluated on its descending half, from theta = pi (peak) to
// theta = 2 pi (zero).
double theta_at(int support_len, double ell) {
    return kPi * (ell + support_len - 1) / (support_len - 1);
}

double cosine_series_derivative(WindowKind kind, int support_len, int j, double ell) {
    const double th = theta_at(support_len, ell);
    const double w1 = kPi / (support_len - 1);  // d theta / d ell
    const double shift = j * kPi / 2.0;
    switch (kind) {
    case WindowKind::blackman: {
        double v = -0.5 * std::pow(w1, j) * std::cos(th + shift)
                 + 0.08 * std::pow(2.0 * w1, j) * std::cos(2.0 * th + shift);
        if (j == 0) v += 0.42;
        return v;
    }
    case WindowKind::hanning: {
        double v = -0.5 * std::pow(w1, j) * std::cos(th + shift);
        if (j == 0) v += 0.5;
        return v;
    }
    case WindowKind::triangular:
        if (j == 0) return 1.0 - ell / (support_len - 1);
        if (j == 1) return -1.0 / (support_len - 1);
        return 0.0;
    }
    throw std::logic_error("cosine_series_derivative: unhandled window kind");
}

std::size_t binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::size_t v = 1;
    for (int i = 0; i < k; ++i) v = v * (n - i) / (i + 1);
    return v;
}

} // namespace

WindowKind window_kind_from_name(std::string_view name) {
    if (name == "blackman") return WindowKind::blackman;
    if (name == "hanning") return WindowKind::hanning;
    if (name == "triangular") return WindowKind::triangular;
    throw std::invalid_argument("unknown window kind '" + std::string(name) +
                                "' (expected blackman, hanning, or triangular)");
}

std::string window_kind_name(WindowKind kind) {
    switch (kind) {
    case WindowKind::blackman: return "blackman";
    case WindowKind::hanning: return "hanning";
    case WindowKind::triangular: return "triangular";
    }
    return "unknown";
}

WindowSpec make_window(WindowKind kind, int support_len, int continuity_order,
                       double sample_interval_s) {
    if (support_len < 2) {
        throw std::invalid_argument("make_window: support length must be at least 2, got " +
                                    std::to_string(support_len));
    }
    if (continuity_order < 0) {
        throw std::invalid_argument("make_window: continuity order must be nonnegative");
    }
    if (!(sample_interval_s > 0.0)) {
        throw std::invalid_argument("make_window: sample interval must be positive");
    }
    WindowSpec w;
    w.kind = kind;
    w.support_len = support_len;
    w.rho_hz = 1.0 / ((2.0 * support_len - 2.0) * sample_interval_s);
    w.start_derivs.resize(2 * continuity_order + 1);
    for (int j = 0; j <= 2 * continuity_order; ++j) {
        w.start_derivs[j] = cosine_series_derivative(kind, support_len, j, 0.0);
    }
    return w;
}

double window_value(const WindowSpec& w, int ell) {
    return window_derivative(w, 0, ell);
}

double window_derivative(const WindowSpec& w, int j, int ell) {
    if (ell < 0 || ell >= w.support_len) {
        throw std::invalid_argument("window_derivative: offset " + std::to_string(ell) +
                                    " outside support of length " +
                                    std::to_string(w.support_len));
    }
    return cosine_series_derivative(w.kind, w.support_len, j, static_cast<double>(ell));
}

cplx basis_f(int n_tilde, int ell, const SystemParams& p) {
    const int M = p.fft_size;
    const cplx factor = cpow_int(cplx(0.0, 2.0 * kPi / M), n_tilde) / static_cast<double>(M);
    cplx sum = 0.0;
    for (int k : p.subcarrier_indices) {
        const double a = 2.0 * kPi * k * ell / M;
        sum += pow_int(static_cast<double>(k), n_tilde) * cplx(std::cos(a), std::sin(a));
    }
    return factor * sum;
}

SmootherContext build_smoother(const SystemParams& p, const WindowSpec& w) {
    p.validate();
    const int K = static_cast<int>(p.subcarrier_indices.size());
    const int N = p.continuity_order;
    const int L = w.support_len;
    if (L != p.smoother_len) {
        throw std::invalid_argument("build_smoother: window support " + std::to_string(L) +
                                    " does not match configured length " +
                                    std::to_string(p.smoother_len));
    }
    if (L < 2 * N + 2) {
        throw std::invalid_argument("build_smoother: support length " + std::to_string(L) +
                                    " too short for order " + std::to_string(N) +
                                    " (need at least " + std::to_string(2 * N + 2) + ")");
    }
    if (K <= N) {
        throw std::invalid_argument("build_smoother: need more than N subcarriers");
    }
    if (static_cast<int>(w.start_derivs.size()) < 2 * N + 1) {
        throw std::invalid_argument("build_smoother: window derivative table too short");
    }

    SmootherContext ctx;
    ctx.params = p;
    ctx.window = w;

    // Junction derivatives of the base pulse, orders 0 .. 2N.
    std::vector<cplx> f0(2 * N + 1);
    for (int q = 0; q <= 2 * N; ++q) f0[q] = basis_f(q, 0, p);

    // response(n, n') = n-th derivative of f^{(n')} g at the support start,
    // expanded by the product rule.
    ctx.response = CMatrix(N + 1, N + 1);
    for (int n = 0; n <= N; ++n) {
        for (int np = 0; np <= N; ++np) {
            cplx acc = 0.0;
            for (int j = 0; j <= n; ++j) {
                acc += static_cast<double>(binom(n, j)) * f0[np + j] *
                       w.start_derivs[static_cast<std::size_t>(n - j)];
            }
            ctx.response.at(n, np) = acc;
        }
    }
    ctx.response_inv = invert(ctx.response,
                              "smoother derivative response (try a larger support "
                              "length or a different window)");

    ctx.basis_columns = CMatrix(L, N + 1);
    for (int ell = 0; ell < L; ++ell) {
        const double g = window_value(w, ell);
        for (int n = 0; n <= N; ++n) {
            ctx.basis_columns.at(ell, n) = basis_f(n, ell, p) * g;
        }
    }

    ctx.tail_map = CMatrix(N + 1, K);
    ctx.head_map = CMatrix(N + 1, K);
    const double phi = p.phi();
    const int M = p.fft_size;
    for (int n = 0; n <= N; ++n) {
        for (int r = 0; r < K; ++r) {
            const int k = p.subcarrier_indices[r];
            const cplx d = cpow_int(cplx(0.0, 2.0 * kPi * k / M), n) / static_cast<double>(M);
            ctx.tail_map.at(n, r) = d;
            const double a = phi * k;
            ctx.head_map.at(n, r) = d * cplx(std::cos(a), std::sin(a));
        }
    }
    return ctx;
}

SmoothCoeffs smooth_coeffs(const SymbolVector& x_prev, const SymbolVector& x_cur,
                           const SmootherContext& ctx) {
    const std::size_t K = ctx.params.subcarrier_indices.size();
    if (x_prev.size() != K || x_cur.size() != K) {
        throw std::invalid_argument("smooth_coeffs: tone vectors must have " +
                                    std::to_string(K) + " entries");
    }
    const cvec tail = matvec(ctx.tail_map, x_prev);
    const cvec head = matvec(ctx.head_map, x_cur);
    cvec mismatch(tail.size());
    for (std::size_t n = 0; n < tail.size(); ++n) mismatch[n] = tail[n] - head[n];
    SmoothCoeffs out;
    out.b = matvec(ctx.response_inv, mismatch);
    return out;
}

SmoothedStream apply_smoother(const std::vector<TimeSymbol>& ys,
                              const std::vector<SymbolVector>& xs,
                              const SmootherContext& ctx) {
    if (ys.size() != xs.size()) {
        throw std::invalid_argument("apply_smoother: " + std::to_string(ys.size()) +
                                    " time symbols vs " + std::to_string(xs.size()) +
                                    " tone vectors");
    }
    if (ys.empty()) {
        throw std::invalid_argument("apply_smoother: empty symbol stream");
    }
    const std::size_t sym_len = static_cast<std::size_t>(ctx.params.symbol_len());
    const int L = ctx.window.support_len;
    const int N = ctx.params.continuity_order;

    SmoothedStream out;
    out.symbols.reserve(ys.size() + 1);
    out.coeffs.reserve(ys.size() + 1);

    const SymbolVector zero(ctx.params.subcarrier_indices.size(), cplx(0.0, 0.0));
    for (std::size_t i = 0; i <= ys.size(); ++i) {
        const SymbolVector& prev = (i == 0) ? zero : xs[i - 1];
        const SymbolVector& cur = (i == ys.size()) ? zero : xs[i];
        SmoothCoeffs c = smooth_coeffs(prev, cur, ctx);

        TimeSymbol sym;
        if (i < ys.size()) {
            if (ys[i].samples.size() != sym_len) {
                throw std::invalid_argument("apply_smoother: symbol " + std::to_string(i) +
                                            " has wrong length");
            }
            sym = ys[i];
        } else {
            sym.samples.assign(sym_len, cplx(0.0, 0.0));
        }
        for (int ell = 0; ell < L; ++ell) {
            cplx add = 0.0;
            for (int n = 0; n <= N; ++n) add += ctx.basis_columns.at(ell, n) * c.b[n];
            sym.samples[static_cast<std::size_t>(ell)] += add;
        }
        out.symbols.push_back(std::move(sym));
        out.coeffs.push_back(std::move(c));
    }
    return out;
}

std::vector<JunctionResidual> junction_residuals(const std::vector<SymbolVector>& xs,
                                                 const std::vector<SmoothCoeffs>& bs,
                                                 const SmootherContext& ctx) {
    const int N = ctx.params.continuity_order;
    const std::size_t junctions = xs.size() + 1;
    if (!bs.empty() && bs.size() != junctions) {
        throw std::invalid_argument("junction_residuals: expected " +
                                    std::to_string(junctions) + " coefficient sets, got " +
                                    std::to_string(bs.size()));
    }

    const SymbolVector zero(ctx.params.subcarrier_indices.size(), cplx(0.0, 0.0));
    std::vector<JunctionResidual> out(junctions);
    for (std::size_t i = 0; i < junctions; ++i) {
        const SymbolVector& prev = (i == 0) ? zero : xs[i - 1];
        const SymbolVector& cur = (i == xs.size()) ? zero : xs[i];
        const cvec tail = matvec(ctx.tail_map, prev);
        cvec head = matvec(ctx.head_map, cur);
        if (!bs.empty()) {
            const cvec overlay = matvec(ctx.response, bs[i].b);
            for (int n = 0; n <= N; ++n) head[static_cast<std::size_t>(n)] += overlay[n];
        }
        out[i].absolute.resize(N + 1);
        out[i].relative.resize(N + 1);
        for (int n = 0; n <= N; ++n) {
            const double lhs = std::abs(head[static_cast<std::size_t>(n)]);
            const double rhs = std::abs(tail[static_cast<std::size_t>(n)]);
            const double diff = std::abs(head[static_cast<std::size_t>(n)] -
                                         tail[static_cast<std::size_t>(n)]);
            out[i].absolute[static_cast<std::size_t>(n)] = diff;
            const double scale = std::max(lhs, rhs);
            out[i].relative[static_cast<std::size_t>(n)] =
                (scale > 1e-300) ? diff / scale : 0.0;
        }
    }
    return out;
}

} // namespace ofdmlab
