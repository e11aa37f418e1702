#include "ofdmlab/params.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace ofdmlab {

double SystemParams::phi() const
{
    return -2.0 * std::numbers::pi_v<double> * beta();
}

int SystemParams::bin_for(int k) const
{
    int b = k % fft_size;
    if (b < 0) b += fft_size;
    return b;
}

SystemParams SystemParams::make_centered(int num_subcarriers, int fft_size, int cp_len,
                                         int continuity_order, int smoother_len,
                                         double subcarrier_spacing_hz, bool exclude_dc)
{
    SystemParams p;
    p.num_subcarriers = num_subcarriers;
    p.fft_size = fft_size;
    p.cp_len = cp_len;
    p.continuity_order = continuity_order;
    p.smoother_len = smoother_len;
    p.subcarrier_spacing_hz = subcarrier_spacing_hz;
    p.subcarrier_indices.reserve(static_cast<std::size_t>(num_subcarriers));
    const int half = num_subcarriers / 2;
    if (!exclude_dc) {
        for (int r = 0; r < num_subcarriers; ++r) p.subcarrier_indices.push_back(r - half);
    } else {
        for (int k = -half; k <= half; ++k) {
            if (k != 0) p.subcarrier_indices.push_back(k);
        }
    }
    p.validate();
    return p;
}

void SystemParams::validate() const
{
    auto fail = [](const std::string& msg) { throw std::invalid_argument("SystemParams: " + msg); };
    if (num_subcarriers < 1) fail("num_subcarriers must be >= 1");
    if (fft_size < 1) fail("fft_size must be >= 1");
    if (cp_len < 1 || cp_len > fft_size) fail("cp_len must be in [1, fft_size]");
    if (continuity_order < 0) fail("continuity_order must be >= 0");
    if (smoother_len < 1 || smoother_len > cp_len)
        fail("smoother_len must be in [1, cp_len]");
    if (subcarrier_spacing_hz <= 0.0) fail("subcarrier_spacing_hz must be positive");
    if (static_cast<int>(subcarrier_indices.size()) != num_subcarriers)
        fail("subcarrier index list does not match num_subcarriers");
    int prev = 0;
    bool first = true;
    for (int k : subcarrier_indices) {
        if (2 * std::abs(k) >= fft_size)
            fail("tone index " + std::to_string(k) + " outside +-fft_size/2");
        if (!first && k <= prev) fail("subcarrier indices must be strictly ascending");
        prev = k;
        first = false;
    }
}

} // namespace ofdmlab
