#pragma once

#include <vector>

#include "ofdmlab/params.hpp"
#include "ofdmlab/qam.hpp"

namespace ofdmlab {

/// Frequency-domain continuity precoder. P projects tone vectors onto the
/// subspace that controls the waveform's boundary derivatives up to order N;
/// the recursion replaces that component of each symbol with the one that
/// extends the previous symbol smoothly.
struct PrecoderContext {
    SystemParams params;
    CMatrix constraint_rows;  // (N+1) x K, row n holds k^n per occupied tone
    cvec phase_diag;          // per-tone boundary phase e^{j phi k}
    CMatrix projector;        // P, K x K
    CMatrix complement;       // I - P
};

/// Build the projector. Requires K >= N + 1 so the constraint rows are
/// linearly independent; K == N + 1 degenerates to the identity projector.
PrecoderContext build_precoder(const SystemParams& p);

/// Apply the recursion across a symbol sequence. The first symbol passes
/// through unchanged; every later symbol gives up its boundary-derivative
/// component in favor of continuity with its predecessor.
std::vector<SymbolVector> precode_stream(const std::vector<SymbolVector>& symbols,
                                         const PrecoderContext& ctx);

} // namespace ofdmlab
