#include "ofdmlab/channel.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "ofdmlab/rng.hpp"

namespace ofdmlab {

void ChannelProfile::validate() const {
    if (tap_delays_s.empty() || tap_delays_s.size() != tap_powers.size()) {
        throw std::invalid_argument("channel profile: need matching, nonempty delay and "
                                    "power lists");
    }
    if (tap_delays_s.front() < 0.0) {
        throw std::invalid_argument("channel profile: negative tap delay");
    }
    for (std::size_t i = 1; i < tap_delays_s.size(); ++i) {
        if (tap_delays_s[i] <= tap_delays_s[i - 1]) {
            throw std::invalid_argument("channel profile: delays must be strictly increasing");
        }
    }
    double sum = 0.0;
    for (double p : tap_powers) {
        if (p < 0.0) throw std::invalid_argument("channel profile: negative tap power");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw std::invalid_argument("channel profile: powers must sum to 1");
    }
}

namespace {

ChannelProfile from_db_table(const std::vector<double>& delays_ns,
                             const std::vector<double>& powers_db) {
    ChannelProfile p;
    p.tap_delays_s.reserve(delays_ns.size());
    p.tap_powers.reserve(powers_db.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < delays_ns.size(); ++i) {
        p.tap_delays_s.push_back(delays_ns[i] * 1e-9);
        const double lin = std::pow(10.0, powers_db[i] / 10.0);
        p.tap_powers.push_back(lin);
        sum += lin;
    }
    for (double& v : p.tap_powers) v /= sum;
    p.validate();
    return p;
}

} // namespace

ChannelProfile eva_profile() {
    // 3GPP TS 36.101, Extended Vehicular A model.
    return from_db_table(
        {0.0, 30.0, 150.0, 310.0, 370.0, 710.0, 1090.0, 1730.0, 2510.0},
        {0.0, -1.5, -1.4, -3.6, -0.6, -9.1, -7.0, -12.0, -16.9});
}

ChannelProfile load_profile(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open channel profile '" + path + "'");
    }
    std::vector<double> delays_ns;
    std::vector<double> powers_db;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        double d_ns, p_db;
        if (!(ls >> d_ns)) continue;  // blank or comment-only line
        if (!(ls >> p_db)) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected 'delay_ns power_db'");
        }
        std::string extra;
        if (ls >> extra) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": trailing token '" + extra + "'");
        }
        delays_ns.push_back(d_ns);
        powers_db.push_back(p_db);
    }
    if (delays_ns.empty()) {
        throw std::runtime_error("channel profile '" + path + "' has no taps");
    }
    return from_db_table(delays_ns, powers_db);
}

ChannelRealization realize(const ChannelProfile& profile, double sample_rate_hz,
                           int fft_size, int cp_len, std::uint64_t seed) {
    profile.validate();
    if (!(sample_rate_hz > 0.0) || fft_size <= 0) {
        throw std::invalid_argument("realize: bad sample rate or FFT size");
    }

    // Round each tap to the nearest sample; taps that collapse onto the same
    // sample add in power so the profile's total power is preserved.
    std::vector<double> power_at;
    for (std::size_t i = 0; i < profile.tap_delays_s.size(); ++i) {
        const auto idx = static_cast<std::size_t>(
            std::llround(profile.tap_delays_s[i] * sample_rate_hz));
        if (idx >= power_at.size()) power_at.resize(idx + 1, 0.0);
        power_at[idx] += profile.tap_powers[i];
    }

    ChannelRealization ch;
    ch.cp_exceeded = static_cast<int>(power_at.size()) - 1 >= cp_len;
    ch.taps.assign(power_at.size(), cplx(0.0, 0.0));
    Rng rng(seed);
    for (std::size_t i = 0; i < power_at.size(); ++i) {
        if (power_at[i] > 0.0) ch.taps[i] = rng.complex_gaussian(power_at[i]);
    }

    cvec padded(static_cast<std::size_t>(fft_size), cplx(0.0, 0.0));
    for (std::size_t i = 0; i < ch.taps.size() && i < padded.size(); ++i) {
        padded[i] = ch.taps[i];
    }
    ch.freq_response = dft(padded);
    return ch;
}

cvec apply_channel(const cvec& signal, const ChannelRealization& ch) {
    if (ch.taps.empty()) {
        throw std::invalid_argument("apply_channel: realization has no taps");
    }
    cvec out(signal.size(), cplx(0.0, 0.0));
    for (std::size_t t = 0; t < ch.taps.size(); ++t) {
        const cplx h = ch.taps[t];
        if (h == cplx(0.0, 0.0)) continue;
        for (std::size_t m = t; m < signal.size(); ++m) {
            out[m] += h * signal[m - t];
        }
    }
    return out;
}

cvec add_awgn(const cvec& signal, double snr_db, std::uint64_t seed) {
    if (signal.empty()) {
        throw std::invalid_argument("add_awgn: empty signal");
    }
    double power = 0.0;
    for (const cplx& s : signal) power += std::norm(s);
    power /= static_cast<double>(signal.size());
    return add_awgn(signal, snr_db, seed, power);
}

cvec add_awgn(const cvec& signal, double snr_db, std::uint64_t seed,
              double reference_power) {
    if (signal.empty()) {
        throw std::invalid_argument("add_awgn: empty signal");
    }
    if (std::isinf(snr_db) && snr_db > 0.0) return signal;
    if (reference_power <= 0.0) {
        throw std::invalid_argument("add_awgn: zero signal has no defined SNR");
    }

    const double noise_var = reference_power / std::pow(10.0, snr_db / 10.0);
    Rng rng(seed);
    cvec out(signal.size());
    for (std::size_t i = 0; i < signal.size(); ++i) {
        out[i] = signal[i] + rng.complex_gaussian(noise_var);
    }
    return out;
}

} // namespace ofdmlab
