#include "ofdmlab/ofdm.hpp"

#include <cmath>
#include <string>

namespace ofdmlab {

TimeSymbol modulate(const SymbolVector& tones, const SystemParams& p)
{
    if (static_cast<int>(tones.size()) != p.num_subcarriers)
        throw std::invalid_argument("modulate: expected " + std::to_string(p.num_subcarriers) +
                                    " tone values, got " + std::to_string(tones.size()));
    cvec spectrum(static_cast<std::size_t>(p.fft_size), cplx(0.0, 0.0));
    for (int r = 0; r < p.num_subcarriers; ++r)
        spectrum[static_cast<std::size_t>(p.bin_for(p.subcarrier_indices[r]))] = tones[r];

    cvec core = idft(spectrum);
    TimeSymbol out;
    out.samples.resize(static_cast<std::size_t>(p.symbol_len()));
    for (int i = 0; i < p.cp_len; ++i)
        out.samples[static_cast<std::size_t>(i)] = core[static_cast<std::size_t>(p.fft_size - p.cp_len + i)];
    for (int i = 0; i < p.fft_size; ++i)
        out.samples[static_cast<std::size_t>(p.cp_len + i)] = core[static_cast<std::size_t>(i)];
    return out;
}

SymbolVector demodulate(const TimeSymbol& symbol, const cvec& channel_freq,
                        const SystemParams& p)
{
    if (static_cast<int>(symbol.samples.size()) != p.symbol_len())
        throw std::invalid_argument("demodulate: symbol length " + std::to_string(symbol.samples.size()) +
                                    " does not match params (" + std::to_string(p.symbol_len()) + ")");
    if (static_cast<int>(channel_freq.size()) != p.fft_size)
        throw std::invalid_argument("demodulate: channel response must have fft_size entries");

    cvec core(symbol.samples.begin() + p.cp_len, symbol.samples.end());
    cvec spectrum = dft(core);

    SymbolVector out(static_cast<std::size_t>(p.num_subcarriers));
    for (int r = 0; r < p.num_subcarriers; ++r) {
        const std::size_t b = static_cast<std::size_t>(p.bin_for(p.subcarrier_indices[r]));
        const cplx h = channel_freq[b];
        if (std::abs(h) < 1e-12)
            throw DeepFadeError("demodulate: channel bin " + std::to_string(b) +
                                " is in a deep fade; symbol not recoverable");
        out[static_cast<std::size_t>(r)] = spectrum[b] / h;
    }
    return out;
}

cvec concatenate(const std::vector<TimeSymbol>& symbols)
{
    std::size_t total = 0;
    for (const TimeSymbol& s : symbols) total += s.samples.size();
    cvec out;
    out.reserve(total);
    for (const TimeSymbol& s : symbols) out.insert(out.end(), s.samples.begin(), s.samples.end());
    return out;
}

} // namespace ofdmlab
