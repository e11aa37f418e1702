#include "ofdmlab/qam.hpp"

#include <cmath>
#include <stdexcept>

namespace ofdmlab {

namespace {

unsigned gray_to_bin(unsigned g)
{
    unsigned b = 0;
    for (; g; g >>= 1) b ^= g;
    return b;
}

// PAM level for an h-bit Gray label: label 0 is the most positive level and
// adjacent levels differ in exactly one bit.
double pam_level(unsigned gray, int h)
{
    const int levels = 1 << h;
    return static_cast<double>(levels - 1) - 2.0 * static_cast<double>(gray_to_bin(gray));
}

// Nearest PAM level by scanning labels in ascending order; strict improvement
// keeps ties on the smaller Gray label.
unsigned slice_pam(double v, int h)
{
    const int levels = 1 << h;
    unsigned best = 0;
    double best_d = std::abs(v - pam_level(0, h));
    for (unsigned g = 1; g < static_cast<unsigned>(levels); ++g) {
        const double d = std::abs(v - pam_level(g, h));
        if (d < best_d) {
            best_d = d;
            best = g;
        }
    }
    return best;
}

} // namespace

int qam_bits_per_symbol(int order)
{
    switch (order) {
    case 4: return 2;
    case 16: return 4;
    case 64: return 6;
    default:
        throw std::invalid_argument("qam: unsupported order " + std::to_string(order) +
                                    " (supported: 4, 16, 64)");
    }
}

double qam_unit_scale(int order)
{
    const int h = qam_bits_per_symbol(order) / 2;
    const double per_dim = (std::pow(4.0, h) - 1.0) / 3.0; // mean of {1,9,25,...}
    return 1.0 / std::sqrt(2.0 * per_dim);
}

cplx qam_point(int order, unsigned label)
{
    const int b = qam_bits_per_symbol(order);
    if (label >= (1u << b))
        throw std::invalid_argument("qam_point: label out of range");
    const int h = b / 2;
    const unsigned gi = label >> h;
    const unsigned gq = label & ((1u << h) - 1u);
    return qam_unit_scale(order) * cplx(pam_level(gi, h), pam_level(gq, h));
}

std::vector<SymbolVector> qam_map(const BitStream& bits, int order, int num_subcarriers)
{
    const int b = qam_bits_per_symbol(order);
    if (num_subcarriers < 1)
        throw std::invalid_argument("qam_map: num_subcarriers must be >= 1");
    const std::size_t per_symbol = static_cast<std::size_t>(b) * num_subcarriers;
    if (per_symbol == 0 || bits.size() % per_symbol != 0)
        throw std::invalid_argument("qam_map: bit count not a multiple of bits per OFDM symbol");

    std::vector<SymbolVector> out(bits.size() / per_symbol);
    std::size_t pos = 0;
    for (SymbolVector& sym : out) {
        sym.resize(num_subcarriers);
        for (int r = 0; r < num_subcarriers; ++r) {
            unsigned label = 0;
            for (int i = 0; i < b; ++i) label = (label << 1) | (bits[pos++] & 1u);
            sym[r] = qam_point(order, label);
        }
    }
    return out;
}

BitStream qam_demap(const std::vector<SymbolVector>& symbols, int order)
{
    const int b = qam_bits_per_symbol(order);
    const int h = b / 2;
    const double inv_scale = 1.0 / qam_unit_scale(order);
    BitStream bits;
    std::size_t total = 0;
    for (const SymbolVector& s : symbols) total += s.size();
    bits.reserve(total * static_cast<std::size_t>(b));
    for (const SymbolVector& sym : symbols) {
        for (const cplx& v : sym) {
            const unsigned gi = slice_pam(v.real() * inv_scale, h);
            const unsigned gq = slice_pam(v.imag() * inv_scale, h);
            const unsigned label = (gi << h) | gq;
            for (int i = b - 1; i >= 0; --i) bits.push_back((label >> i) & 1u);
        }
    }
    return bits;
}

} // namespace ofdmlab
