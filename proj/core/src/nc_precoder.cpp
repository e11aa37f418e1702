#include "ofdmlab/nc_precoder.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "ofdmlab/numerics.hpp"

namespace ofdmlab {

PrecoderContext build_precoder(const SystemParams& p) {
    p.validate();
    const int K = static_cast<int>(p.subcarrier_indices.size());
    const int N = p.continuity_order;
    if (K < N + 1) {
        throw std::invalid_argument("build_precoder: need at least as many subcarriers (" +
                                    std::to_string(K) + ") as constraints (" +
                                    std::to_string(N + 1) + ")");
    }

    PrecoderContext ctx;
    ctx.params = p;

    // Vandermonde-style constraint rows, A[n][r] = k_r^n (with 0^0 = 1).
    ctx.constraint_rows = CMatrix(N + 1, K);
    for (int n = 0; n <= N; ++n) {
        for (int r = 0; r < K; ++r) {
            ctx.constraint_rows.at(n, r) =
                cplx(pow_int(static_cast<double>(p.subcarrier_indices[r]), n), 0.0);
        }
    }

    ctx.phase_diag.resize(K);
    const double phi = p.phi();
    for (int r = 0; r < K; ++r) {
        const double a = phi * p.subcarrier_indices[r];
        ctx.phase_diag[r] = cplx(std::cos(a), std::sin(a));
    }

    // P = Phi^H A^H (A A^H)^-1 A Phi. The projector is unchanged if each row
    // of A is rescaled, so equilibrate rows by k_max^-n first; raw k^n spans
    // ~128^N and makes the Gram matrix needlessly ill conditioned.
    double kmax = 1.0;
    for (int k : p.subcarrier_indices) {
        kmax = std::max(kmax, std::abs(static_cast<double>(k)));
    }
    CMatrix scaled = ctx.constraint_rows;
    double rown = 1.0;
    for (int n = 0; n <= N; ++n) {
        for (int r = 0; r < K; ++r) scaled.at(n, r) *= rown;
        rown /= kmax;
    }

    CMatrix a_phi(N + 1, K);
    for (int n = 0; n <= N; ++n) {
        for (int r = 0; r < K; ++r) {
            a_phi.at(n, r) = scaled.at(n, r) * ctx.phase_diag[r];
        }
    }
    const CMatrix a_phi_h = adjoint(a_phi);
    const CMatrix gram = matmul(a_phi, a_phi_h);          // (N+1) x (N+1)
    const CMatrix gram_inv = invert(gram, "precoder Gram matrix");
    ctx.projector = matmul(a_phi_h, matmul(gram_inv, a_phi));

    ctx.complement = CMatrix::identity(K);
    for (int r = 0; r < K; ++r) {
        for (int c = 0; c < K; ++c) {
            ctx.complement.at(r, c) -= ctx.projector.at(r, c);
        }
    }
    return ctx;
}

std::vector<SymbolVector> precode_stream(const std::vector<SymbolVector>& symbols,
                                         const PrecoderContext& ctx) {
    const std::size_t K = ctx.params.subcarrier_indices.size();
    std::vector<SymbolVector> out;
    out.reserve(symbols.size());
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        if (symbols[i].size() != K) {
            throw std::invalid_argument("precode_stream: symbol " + std::to_string(i) +
                                        " has " + std::to_string(symbols[i].size()) +
                                        " tones, expected " + std::to_string(K));
        }
        if (i == 0) {
            out.push_back(symbols[0]);
            continue;
        }
        // x_i' = (I - P) x_i + P Phi^H x_{i-1}'
        cvec carried(K);
        for (std::size_t r = 0; r < K; ++r) {
            carried[r] = std::conj(ctx.phase_diag[r]) * out[i - 1][r];
        }
        cvec kept = matvec(ctx.complement, symbols[i]);
        cvec bridge = matvec(ctx.projector, carried);
        SymbolVector next(K);
        for (std::size_t r = 0; r < K; ++r) next[r] = kept[r] + bridge[r];
        out.push_back(std::move(next));
    }
    return out;
}

} // namespace ofdmlab
