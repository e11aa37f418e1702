#include "ofdmlab/harness.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <climits>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ofdmlab/nc_precoder.hpp"
#include "ofdmlab/ofdm.hpp"
#include "ofdmlab/parallel.hpp"
#include "ofdmlab/rng.hpp"
#include "ofdmlab/version.hpp"

namespace ofdmlab {

namespace {

constexpr int kBerBlockSymbols = 64;

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value,
                            const char* expected) {
    throw ConfigError("config key '" + key + "': cannot parse '" + value + "' as " +
                      expected);
}

long long parse_ll(const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    char* end = nullptr;
    errno = 0;
    const long long out = std::strtoll(v.c_str(), &end, 10);
    if (v.empty() || end != v.c_str() + v.size() || errno == ERANGE) {
        bad_value(key, value, "an integer");
    }
    return out;
}

int parse_int(const std::string& key, const std::string& value) {
    const long long v = parse_ll(key, value);
    if (v < INT_MIN || v > INT_MAX) bad_value(key, value, "an int-range integer");
    return static_cast<int>(v);
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    char* end = nullptr;
    errno = 0;
    const unsigned long long out = std::strtoull(v.c_str(), &end, 10);
    if (v.empty() || v[0] == '-' || end != v.c_str() + v.size() || errno == ERANGE) {
        bad_value(key, value, "an unsigned integer");
    }
    return static_cast<std::uint64_t>(out);
}

double parse_double(const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    char* end = nullptr;
    const double out = std::strtod(v.c_str(), &end);
    if (v.empty() || end != v.c_str() + v.size()) bad_value(key, value, "a number");
    return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    bad_value(key, value, "a boolean (true/false)");
}

std::vector<double> parse_double_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::string item;
    std::istringstream in(value);
    while (std::getline(in, item, ',')) {
        if (trim(item).empty()) bad_value(key, value, "a comma-separated number list");
        out.push_back(parse_double(key, item));
    }
    if (out.empty()) bad_value(key, value, "a comma-separated number list");
    return out;
}

std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string join_doubles(const std::vector<double>& vs) {
    std::string out;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i) out += ',';
        out += fmt_g(vs[i]);
    }
    return out;
}

std::string output_path(const ExperimentConfig& cfg, const std::string& name) {
    namespace fs = std::filesystem;
    fs::create_directories(cfg.output_dir);
    return (fs::path(cfg.output_dir) / name).string();
}

void write_text_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << body;
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

std::string write_manifest(const ExperimentConfig& cfg, const std::string& subcommand,
                           const std::string& name) {
    std::string body = "subcommand = " + subcommand + "\n";
    body += "version = " + std::string(kVersionString) + "\n";
    body += config_to_string(cfg);
    const std::string path = output_path(cfg, name);
    write_text_file(path, body);
    return path;
}

BitStream symbol_bits(std::size_t count, std::uint64_t seed, std::uint64_t index) {
    Rng rng(derive_seed(seed, seed_tag::bits, index));
    BitStream bits(count);
    for (auto& b : bits) b = static_cast<std::uint8_t>(rng.next_u64() & 1u);
    return bits;
}

ChannelRealization identity_channel(int fft_size) {
    ChannelRealization ch;
    ch.taps = {cplx(1.0, 0.0)};
    ch.freq_response.assign(static_cast<std::size_t>(fft_size), cplx(1.0, 0.0));
    ch.cp_exceeded = false;
    return ch;
}

} // namespace

Scheme scheme_from_name(std::string_view name) {
    if (name == "ofdm") return Scheme::ofdm;
    if (name == "nc_ofdm") return Scheme::nc_ofdm;
    if (name == "low_interference") return Scheme::low_interference;
    throw ConfigError("unknown scheme '" + std::string(name) +
                      "' (expected ofdm, nc_ofdm, or low_interference)");
}

std::string scheme_name(Scheme s) {
    switch (s) {
    case Scheme::ofdm: return "ofdm";
    case Scheme::nc_ofdm: return "nc_ofdm";
    case Scheme::low_interference: return "low_interference";
    }
    return "unknown";
}

int ExperimentConfig::resolved_fft_size() const {
    return fft_size != 0 ? fft_size : oversampling * num_subcarriers;
}

SystemParams ExperimentConfig::system_params() const {
    return SystemParams::make_centered(num_subcarriers, resolved_fft_size(), cp_len,
                                       continuity_order, smoother_len,
                                       subcarrier_spacing_hz);
}

void ExperimentConfig::validate() const {
    if (num_subcarriers < 1) throw ConfigError("config: num_subcarriers must be >= 1");
    if (oversampling < 1) throw ConfigError("config: oversampling must be >= 1");
    if (fft_size != 0 && fft_size != oversampling * num_subcarriers) {
        throw ConfigError("config: fft_size " + std::to_string(fft_size) +
                          " contradicts oversampling * num_subcarriers = " +
                          std::to_string(oversampling * num_subcarriers) +
                          " (set fft_size = 0 to derive it)");
    }
    if (num_symbols < 1) throw ConfigError("config: num_symbols must be >= 1");
    if (workers < 1) throw ConfigError("config: workers must be >= 1");
    if (psd_seg_len < 2) throw ConfigError("config: psd_seg_len must be >= 2");
    if (psd_overlap < 0 || psd_overlap >= psd_seg_len) {
        throw ConfigError("config: need 0 <= psd_overlap < psd_seg_len");
    }
    if (psd_draws < 1 || psd_block_len < 1) {
        throw ConfigError("config: psd_draws and psd_block_len must be >= 1");
    }
    if (ber_min_errors < 1 || ber_max_bits < 1) {
        throw ConfigError("config: ber_min_errors and ber_max_bits must be >= 1");
    }
    if (output_dir.empty()) throw ConfigError("config: output_dir must not be empty");
    if (channel.empty()) throw ConfigError("config: channel must not be empty");
    try {
        qam_bits_per_symbol(qam_order);
        system_params().validate();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (scheme == Scheme::nc_ofdm && num_subcarriers <= continuity_order + 1) {
        throw ConfigError("config: nc_ofdm needs num_subcarriers > continuity_order + 1");
    }
    if (scheme == Scheme::low_interference) {
        if (smoother_len < 2 * continuity_order + 2) {
            throw ConfigError("config: smoother_len must be at least 2*continuity_order+2 "
                              "for low_interference");
        }
        if (psd_analytic && window != WindowKind::blackman) {
            throw ConfigError("config: the closed-form spectrum exists only for the "
                              "blackman window; set psd_analytic = false");
        }
    }
}

void apply_override(ExperimentConfig& cfg, const std::string& key,
                    const std::string& value) {
    const std::string k = trim(key);
    const std::string v = trim(value);
    if (k == "scheme") {
        cfg.scheme = scheme_from_name(v);
    } else if (k == "num_subcarriers") {
        cfg.num_subcarriers = parse_int(k, v);
    } else if (k == "oversampling") {
        cfg.oversampling = parse_int(k, v);
    } else if (k == "fft_size") {
        cfg.fft_size = parse_int(k, v);
    } else if (k == "cp_len") {
        cfg.cp_len = parse_int(k, v);
    } else if (k == "continuity_order") {
        cfg.continuity_order = parse_int(k, v);
    } else if (k == "smoother_len") {
        cfg.smoother_len = parse_int(k, v);
    } else if (k == "subcarrier_spacing_hz") {
        cfg.subcarrier_spacing_hz = parse_double(k, v);
    } else if (k == "qam_order") {
        cfg.qam_order = parse_int(k, v);
    } else if (k == "window") {
        try {
            cfg.window = window_kind_from_name(v);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("config: ") + e.what());
        }
    } else if (k == "num_symbols") {
        cfg.num_symbols = parse_int(k, v);
    } else if (k == "snr_db") {
        cfg.snr_db = parse_double_list(k, v);
    } else if (k == "seed") {
        cfg.seed = parse_u64(k, v);
    } else if (k == "workers") {
        cfg.workers = parse_int(k, v);
    } else if (k == "output_dir") {
        cfg.output_dir = v;
    } else if (k == "channel") {
        cfg.channel = v;
    } else if (k == "psd_seg_len") {
        cfg.psd_seg_len = parse_int(k, v);
    } else if (k == "psd_overlap") {
        cfg.psd_overlap = parse_int(k, v);
    } else if (k == "psd_absolute") {
        cfg.psd_absolute = parse_bool(k, v);
    } else if (k == "psd_analytic") {
        cfg.psd_analytic = parse_bool(k, v);
    } else if (k == "psd_draws") {
        cfg.psd_draws = parse_int(k, v);
    } else if (k == "psd_block_len") {
        cfg.psd_block_len = parse_int(k, v);
    } else if (k == "ber_min_errors") {
        cfg.ber_min_errors = parse_ll(k, v);
    } else if (k == "ber_max_bits") {
        cfg.ber_max_bits = parse_ll(k, v);
    } else if (k == "allow_discontinuous") {
        cfg.allow_discontinuous = parse_bool(k, v);
    } else {
        throw ConfigError("unknown config key '" + k + "'");
    }
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    ExperimentConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(path + ":" + std::to_string(lineno) +
                              ": expected 'key = value'");
        }
        try {
            apply_override(cfg, stripped.substr(0, eq), stripped.substr(eq + 1));
        } catch (const ConfigError& e) {
            throw ConfigError(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return cfg;
}

std::string config_to_string(const ExperimentConfig& cfg) {
    std::string s;
    s += "allow_discontinuous = " + std::string(cfg.allow_discontinuous ? "true" : "false") + "\n";
    s += "ber_max_bits = " + std::to_string(cfg.ber_max_bits) + "\n";
    s += "ber_min_errors = " + std::to_string(cfg.ber_min_errors) + "\n";
    s += "channel = " + cfg.channel + "\n";
    s += "continuity_order = " + std::to_string(cfg.continuity_order) + "\n";
    s += "cp_len = " + std::to_string(cfg.cp_len) + "\n";
    s += "fft_size = " + std::to_string(cfg.resolved_fft_size()) + "\n";
    s += "num_subcarriers = " + std::to_string(cfg.num_subcarriers) + "\n";
    s += "num_symbols = " + std::to_string(cfg.num_symbols) + "\n";
    s += "oversampling = " + std::to_string(cfg.oversampling) + "\n";
    s += "output_dir = " + cfg.output_dir + "\n";
    s += "psd_absolute = " + std::string(cfg.psd_absolute ? "true" : "false") + "\n";
    s += "psd_analytic = " + std::string(cfg.psd_analytic ? "true" : "false") + "\n";
    s += "psd_block_len = " + std::to_string(cfg.psd_block_len) + "\n";
    s += "psd_draws = " + std::to_string(cfg.psd_draws) + "\n";
    s += "psd_overlap = " + std::to_string(cfg.psd_overlap) + "\n";
    s += "psd_seg_len = " + std::to_string(cfg.psd_seg_len) + "\n";
    s += "qam_order = " + std::to_string(cfg.qam_order) + "\n";
    s += "scheme = " + scheme_name(cfg.scheme) + "\n";
    s += "seed = " + std::to_string(cfg.seed) + "\n";
    s += "smoother_len = " + std::to_string(cfg.smoother_len) + "\n";
    s += "snr_db = " + join_doubles(cfg.snr_db) + "\n";
    s += "subcarrier_spacing_hz = " + fmt_g(cfg.subcarrier_spacing_hz) + "\n";
    s += "window = " + window_kind_name(cfg.window) + "\n";
    s += "workers = " + std::to_string(cfg.workers) + "\n";
    return s;
}

std::vector<SymbolVector> draw_data_symbols(const SystemParams& p, int qam_order,
                                            int count, std::uint64_t seed) {
    const std::size_t K = p.subcarrier_indices.size();
    const std::size_t nbits = K * static_cast<std::size_t>(qam_bits_per_symbol(qam_order));
    std::vector<SymbolVector> xs;
    xs.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const BitStream bits = symbol_bits(nbits, seed, static_cast<std::uint64_t>(i));
        xs.push_back(qam_map(bits, qam_order, static_cast<int>(K)).front());
    }
    return xs;
}

cvec simulate_stream(Scheme scheme, const SystemParams& p, WindowKind window,
                     int qam_order, int num_symbols, std::uint64_t seed) {
    std::vector<SymbolVector> xs = draw_data_symbols(p, qam_order, num_symbols, seed);
    if (scheme == Scheme::nc_ofdm) {
        xs = precode_stream(xs, build_precoder(p));
    }
    std::vector<TimeSymbol> ys;
    ys.reserve(xs.size());
    for (const auto& x : xs) ys.push_back(modulate(x, p));
    if (scheme == Scheme::low_interference) {
        const WindowSpec w = make_window(window, p.smoother_len, p.continuity_order,
                                         p.sample_interval_s());
        const SmootherContext ctx = build_smoother(p, w);
        const SmoothedStream smoothed = apply_smoother(ys, xs, ctx);
        return concatenate(smoothed.symbols);
    }
    return concatenate(ys);
}

BerPoint simulate_ber_point(const ExperimentConfig& cfg, double snr_db, int snr_index) {
    cfg.validate();
    const SystemParams p = cfg.system_params();
    const std::size_t K = p.subcarrier_indices.size();
    const int bps = qam_bits_per_symbol(cfg.qam_order);
    const std::size_t bits_per_symbol = K * static_cast<std::size_t>(bps);
    const std::size_t sym_len = static_cast<std::size_t>(p.symbol_len());

    const bool identity = (cfg.channel == "none");
    ChannelProfile profile;
    if (!identity) {
        profile = (cfg.channel == "eva") ? eva_profile() : load_profile(cfg.channel);
    }
    const ChannelRealization flat = identity_channel(p.fft_size);

    PrecoderContext precoder;
    SmootherContext smoother;
    if (cfg.scheme == Scheme::nc_ofdm) precoder = build_precoder(p);
    if (cfg.scheme == Scheme::low_interference) {
        smoother = build_smoother(p, make_window(cfg.window, p.smoother_len,
                                                 p.continuity_order,
                                                 p.sample_interval_s()));
    }

    const SymbolVector zero(K, cplx(0.0, 0.0));
    SymbolVector carried = zero;  // nc: previous precoded symbol; li: previous data
    bool first_symbol = true;

    long long errors = 0;
    long long bits = 0;
    std::uint64_t global_symbol = 0;
    std::uint64_t block_index = 0;

    while (errors < cfg.ber_min_errors && bits < cfg.ber_max_bits) {
        std::vector<BitStream> tx_bits(kBerBlockSymbols);
        std::vector<ChannelRealization> chans(kBerBlockSymbols);
        cvec block;
        block.reserve(static_cast<std::size_t>(kBerBlockSymbols) * sym_len);
        double tx_power = 0.0;

        for (int j = 0; j < kBerBlockSymbols; ++j) {
            const std::uint64_t idx = global_symbol + static_cast<std::uint64_t>(j);
            tx_bits[static_cast<std::size_t>(j)] = symbol_bits(bits_per_symbol, cfg.seed, idx);
            const SymbolVector data =
                qam_map(tx_bits[static_cast<std::size_t>(j)], cfg.qam_order,
                        static_cast<int>(K))
                    .front();

            SymbolVector tones = data;
            SmoothCoeffs overlay;
            if (cfg.scheme == Scheme::nc_ofdm) {
                if (!first_symbol) {
                    cvec prev_aligned(K);
                    for (std::size_t r = 0; r < K; ++r) {
                        prev_aligned[r] = std::conj(precoder.phase_diag[r]) * carried[r];
                    }
                    const cvec kept = matvec(precoder.complement, data);
                    const cvec bridge = matvec(precoder.projector, prev_aligned);
                    for (std::size_t r = 0; r < K; ++r) tones[r] = kept[r] + bridge[r];
                }
                carried = tones;
            } else if (cfg.scheme == Scheme::low_interference) {
                overlay = smooth_coeffs(first_symbol ? zero : carried, data, smoother);
                carried = data;
            }
            first_symbol = false;

            TimeSymbol tx = modulate(tones, p);
            if (cfg.scheme == Scheme::low_interference) {
                const int L = smoother.window.support_len;
                const int N = p.continuity_order;
                for (int ell = 0; ell < L; ++ell) {
                    cplx add(0.0, 0.0);
                    for (int n = 0; n <= N; ++n) {
                        add += smoother.basis_columns.at(ell, n) *
                               overlay.b[static_cast<std::size_t>(n)];
                    }
                    tx.samples[static_cast<std::size_t>(ell)] += add;
                }
            }
            for (const cplx& s : tx.samples) tx_power += std::norm(s);

            chans[static_cast<std::size_t>(j)] =
                identity ? flat
                         : realize(profile, p.sample_rate_hz(), p.fft_size, p.cp_len,
                                   derive_seed(cfg.seed, seed_tag::channel, idx));
            const cvec faded = apply_channel(tx.samples, chans[static_cast<std::size_t>(j)]);
            block.insert(block.end(), faded.begin(), faded.end());
        }

        tx_power /= static_cast<double>(block.size());
        const cvec noisy =
            add_awgn(block, snr_db,
                     derive_seed(cfg.seed, seed_tag::noise, block_index,
                                 static_cast<std::uint64_t>(snr_index)),
                     tx_power);

        for (int j = 0; j < kBerBlockSymbols; ++j) {
            TimeSymbol rx;
            const auto off = static_cast<std::size_t>(j) * sym_len;
            rx.samples.assign(noisy.begin() + static_cast<std::ptrdiff_t>(off),
                              noisy.begin() + static_cast<std::ptrdiff_t>(off + sym_len));
            try {
                const SymbolVector eq =
                    demodulate(rx, chans[static_cast<std::size_t>(j)].freq_response, p);
                const BitStream rx_bits = qam_demap({eq}, cfg.qam_order);
                const BitStream& ref = tx_bits[static_cast<std::size_t>(j)];
                for (std::size_t b = 0; b < ref.size(); ++b) {
                    if ((ref[b] != 0) != (rx_bits[b] != 0)) ++errors;
                }
                bits += static_cast<long long>(ref.size());
            } catch (const DeepFadeError&) {
                // unusable realization, drop the symbol from the tally
            }
        }
        global_symbol += kBerBlockSymbols;
        ++block_index;
    }

    BerPoint pt;
    pt.snr_db = snr_db;
    pt.bits_measured = bits;
    pt.ber = (bits > 0) ? static_cast<double>(errors) / static_cast<double>(bits) : 0.0;
    return pt;
}

RunResult run_psd(const ExperimentConfig& cfg) {
    cfg.validate();
    const SystemParams p = cfg.system_params();
    RunResult result;

    const cvec stream = simulate_stream(cfg.scheme, p, cfg.window, cfg.qam_order,
                                        cfg.num_symbols, cfg.seed);
    PsdEstimate welch = welch_psd(stream, p.sample_rate_hz(), cfg.psd_seg_len,
                                  cfg.psd_overlap);
    if (!cfg.psd_absolute) welch = normalize_peak(welch);

    std::string csv = "freq_hz,psd_db\n";
    for (std::size_t i = 0; i < welch.freqs_hz.size(); ++i) {
        csv += fmt_g(welch.freqs_hz[i]) + "," + fmt_g(power_db(welch.power[i])) + "\n";
    }
    const std::string welch_path =
        output_path(cfg, "psd_" + scheme_name(cfg.scheme) + "_welch.csv");
    write_text_file(welch_path, csv);
    result.files.push_back(welch_path);

    if (cfg.scheme == Scheme::low_interference && cfg.psd_analytic) {
        AnalyticPsdParams ap;
        ap.params = p;
        ap.window = make_window(cfg.window, p.smoother_len, p.continuity_order,
                                p.sample_interval_s());
        ap.qam_order = cfg.qam_order;
        ap.block_len = cfg.psd_block_len;
        ap.num_draws = cfg.psd_draws;
        for (double f : welch.freqs_hz) {
            if (f == 0.0 && p.continuity_order >= 1) continue;
            ap.freqs_hz.push_back(f);
        }
        PsdEstimate formula = analytic_psd(ap, cfg.seed, cfg.workers);
        if (!cfg.psd_absolute) formula = normalize_peak(formula);

        std::string acsv = "freq_hz,psd_db\n";
        for (std::size_t i = 0; i < formula.freqs_hz.size(); ++i) {
            acsv += fmt_g(formula.freqs_hz[i]) + "," +
                    fmt_g(power_db(formula.power[i])) + "\n";
        }
        const std::string analytic_path =
            output_path(cfg, "psd_" + scheme_name(cfg.scheme) + "_analytic.csv");
        write_text_file(analytic_path, acsv);
        result.files.push_back(analytic_path);
    }

    result.files.push_back(write_manifest(cfg, "psd",
                                          "psd_" + scheme_name(cfg.scheme) +
                                              "_manifest.txt"));
    return result;
}

RunResult run_ber(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.snr_db.empty()) throw ConfigError("config: ber needs a nonempty snr_db list");

    std::vector<BerPoint> points(cfg.snr_db.size());
    parallel_for(cfg.snr_db.size(), cfg.workers, [&](std::size_t i) {
        points[i] = simulate_ber_point(cfg, cfg.snr_db[i], static_cast<int>(i));
    });

    std::string csv = "snr_db,ber,bits_measured,scheme\n";
    for (const BerPoint& pt : points) {
        csv += fmt_g(pt.snr_db) + "," + fmt_g(pt.ber) + "," +
               std::to_string(pt.bits_measured) + "," + scheme_name(cfg.scheme) + "\n";
    }

    RunResult result;
    const std::string path = output_path(cfg, "ber_" + scheme_name(cfg.scheme) + ".csv");
    write_text_file(path, csv);
    result.files.push_back(path);
    result.files.push_back(write_manifest(cfg, "ber",
                                          "ber_" + scheme_name(cfg.scheme) +
                                              "_manifest.txt"));
    return result;
}

RunResult run_continuity(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.scheme == Scheme::ofdm && !cfg.allow_discontinuous) {
        throw ConfigError("config: continuity audit of plain ofdm is a negative control; "
                          "set allow_discontinuous = true to run it");
    }
    const SystemParams p = cfg.system_params();

    std::vector<SymbolVector> xs = draw_data_symbols(p, cfg.qam_order, cfg.num_symbols,
                                                     cfg.seed);
    const SmootherContext ctx = build_smoother(
        p, make_window(cfg.window, p.smoother_len, p.continuity_order,
                       p.sample_interval_s()));

    std::vector<SmoothCoeffs> bs;
    if (cfg.scheme == Scheme::nc_ofdm) {
        xs = precode_stream(xs, build_precoder(p));
    } else if (cfg.scheme == Scheme::low_interference) {
        const SymbolVector zero(p.subcarrier_indices.size(), cplx(0.0, 0.0));
        bs.reserve(xs.size() + 1);
        for (std::size_t i = 0; i <= xs.size(); ++i) {
            const SymbolVector& prev = (i == 0) ? zero : xs[i - 1];
            const SymbolVector& cur = (i == xs.size()) ? zero : xs[i];
            bs.push_back(smooth_coeffs(prev, cur, ctx));
        }
    }

    const std::vector<JunctionResidual> res = junction_residuals(xs, bs, ctx);

    // one audited junction per data symbol: the one at its head
    std::string csv = "junction,order,absolute,relative\n";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (int n = 0; n <= p.continuity_order; ++n) {
            csv += std::to_string(i) + "," + std::to_string(n) + "," +
                   fmt_g(res[i].absolute[static_cast<std::size_t>(n)]) + "," +
                   fmt_g(res[i].relative[static_cast<std::size_t>(n)]) + "\n";
        }
    }

    RunResult result;
    const std::string path =
        output_path(cfg, "continuity_" + scheme_name(cfg.scheme) + ".csv");
    write_text_file(path, csv);
    result.files.push_back(path);
    result.files.push_back(write_manifest(cfg, "continuity",
                                          "continuity_" + scheme_name(cfg.scheme) +
                                              "_manifest.txt"));
    return result;
}

RunResult run_complexity(const ExperimentConfig& cfg) {
    cfg.validate();
    const int K = cfg.num_subcarriers;
    const int N = cfg.continuity_order;
    const int L = cfg.smoother_len;

    const ComplexityScheme order[3] = {ComplexityScheme::nc_ofdm,
                                       ComplexityScheme::ncsp_ofdm,
                                       ComplexityScheme::low_interference};
    ComplexityReport reports[3];
    for (int i = 0; i < 3; ++i) reports[i] = complexity_counts(order[i], K, N, L);

    const auto combined = [](const ComplexityReport& r) {
        return static_cast<double>(r.real_mults + r.real_adds);
    };

    std::string csv =
        "scheme,real_mults,real_adds,mult_ratio_vs_nc_ofdm,combined_ratio_vs_nc_ofdm,"
        "mult_ratio_vs_ncsp_ofdm,combined_ratio_vs_ncsp_ofdm\n";
    for (int i = 0; i < 3; ++i) {
        const ComplexityReport& r = reports[i];
        csv += complexity_scheme_name(r.scheme) + "," + std::to_string(r.real_mults) +
               "," + std::to_string(r.real_adds) + "," +
               fmt_g(static_cast<double>(r.real_mults) /
                     static_cast<double>(reports[0].real_mults)) +
               "," + fmt_g(combined(r) / combined(reports[0])) + "," +
               fmt_g(static_cast<double>(r.real_mults) /
                     static_cast<double>(reports[1].real_mults)) +
               "," + fmt_g(combined(r) / combined(reports[1])) + "\n";
    }

    RunResult result;
    const std::string path = output_path(cfg, "complexity.csv");
    write_text_file(path, csv);
    result.files.push_back(path);
    result.files.push_back(write_manifest(cfg, "complexity", "complexity_manifest.txt"));
    return result;
}

} // namespace ofdmlab
