#pragma once

#include <cstdint>
#include <vector>

#include "ofdmlab/numerics.hpp"

namespace ofdmlab {

using BitStream = std::vector<std::uint8_t>;   // one bit per element, values 0/1
using SymbolVector = cvec;                     // one complex value per occupied tone

/// Bits per constellation point for a supported order (4, 16, 64), or throws.
int qam_bits_per_symbol(int order);

/// Scale that brings the square constellation to unit average energy
/// (e.g. 1/sqrt(10) for order 16).
double qam_unit_scale(int order);

/// Constellation point for a label. Bit framing is big-endian: the first bit
/// of a group is the label MSB, the high half of the label Gray-codes the I
/// level, the low half the Q level. Gray label 0 maps to the most positive
/// level, so label 0 lands in the first quadrant.
cplx qam_point(int order, unsigned label);

/// Map a bit stream onto per-symbol tone vectors. bits.size() must be a
/// multiple of bits_per_symbol * num_subcarriers.
std::vector<SymbolVector> qam_map(const BitStream& bits, int order, int num_subcarriers);

/// Hard-decision nearest-point demap, inverse framing of qam_map. A value
/// exactly between two levels resolves to the smaller Gray label.
BitStream qam_demap(const std::vector<SymbolVector>& symbols, int order);

} // namespace ofdmlab
