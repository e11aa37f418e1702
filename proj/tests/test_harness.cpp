#include <doctest.h>

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "ofdmlab/harness.hpp"
#include "ofdmlab/ofdm.hpp"
#include "ofdmlab/qam.hpp"
#include "ofdmlab/rng.hpp"
#include "ofdmlab/version.hpp"

using ofdmlab::apply_override;
using ofdmlab::ConfigError;
using ofdmlab::cplx;
using ofdmlab::cvec;
using ofdmlab::ExperimentConfig;
using ofdmlab::Scheme;
using ofdmlab::SystemParams;

namespace {

// Every test writes into its own scratch directory so reruns start clean and
// cases cannot see each other's files.
std::string fresh_dir(const std::string& tag) {
    namespace fs = std::filesystem;
    const fs::path d = fs::temp_directory_path() / ("ofdmlab_harness_" + tag);
    fs::remove_all(d);
    fs::create_directories(d);
    return d.string();
}

std::string write_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    REQUIRE(out.good());
    out << body;
    return path;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string line;
    std::istringstream in(text);
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    return fields;
}

std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// Small geometry used throughout: 8 tones, 64-point transform, short prefix.
ExperimentConfig small_cfg(const std::string& out_dir) {
    ExperimentConfig cfg;
    cfg.num_subcarriers = 8;
    cfg.oversampling = 8;
    cfg.cp_len = 8;
    cfg.continuity_order = 2;
    cfg.smoother_len = 8;
    cfg.num_symbols = 6;
    cfg.snr_db = {30.0};
    cfg.output_dir = out_dir;
    cfg.channel = "none";
    cfg.psd_seg_len = 64;
    cfg.psd_overlap = 16;
    cfg.psd_draws = 2;
    cfg.psd_block_len = 4;
    cfg.ber_min_errors = 100;
    cfg.ber_max_bits = 2048;
    return cfg;
}

} // namespace

TEST_SUITE_BEGIN("harness");

TEST_CASE("scheme names round trip") {
    for (const char* name : {"ofdm", "nc_ofdm", "low_interference"}) {
        CHECK(ofdmlab::scheme_name(ofdmlab::scheme_from_name(name)) == name);
    }
    CHECK_THROWS_WITH_AS(
        ofdmlab::scheme_from_name("qpsk"),
        doctest::Contains("unknown scheme 'qpsk' (expected ofdm, nc_ofdm, or"),
        ConfigError);
}

TEST_CASE("fft size is derived from oversampling unless pinned") {
    ExperimentConfig cfg;
    CHECK(cfg.fft_size == 0);
    CHECK(cfg.resolved_fft_size() == 2048);

    cfg.num_subcarriers = 8;
    cfg.cp_len = 8;
    cfg.smoother_len = 8;
    CHECK(cfg.resolved_fft_size() == 64);

    cfg.fft_size = 64;
    CHECK(cfg.resolved_fft_size() == 64);
    CHECK_NOTHROW(cfg.validate());

    cfg.fft_size = 128;
    CHECK_THROWS_WITH_AS(cfg.validate(),
                         doctest::Contains("fft_size 128 contradicts oversampling * "
                                           "num_subcarriers = 64 (set fft_size = 0"),
                         ConfigError);
}

TEST_CASE("default config serializes to the documented key set") {
    const ExperimentConfig cfg;
    const std::string expected =
        "allow_discontinuous = false\n"
        "ber_max_bits = 1000000\n"
        "ber_min_errors = 100\n"
        "channel = eva\n"
        "continuity_order = 2\n"
        "cp_len = 144\n"
        "fft_size = 2048\n"
        "num_subcarriers = 256\n"
        "num_symbols = 1000\n"
        "oversampling = 8\n"
        "output_dir = .\n"
        "psd_absolute = false\n"
        "psd_analytic = true\n"
        "psd_block_len = 64\n"
        "psd_draws = 64\n"
        "psd_overlap = 512\n"
        "psd_seg_len = 2048\n"
        "qam_order = 16\n"
        "scheme = ofdm\n"
        "seed = 1\n"
        "smoother_len = 144\n"
        "snr_db = 10,15,20,25,30\n"
        "subcarrier_spacing_hz = 15000\n"
        "window = blackman\n"
        "workers = 1\n";
    CHECK(ofdmlab::config_to_string(cfg) == expected);
    CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("config files round trip through serialization") {
    const std::string dir = fresh_dir("roundtrip");

    ExperimentConfig cfg = small_cfg(dir);
    cfg.scheme = Scheme::low_interference;
    cfg.seed = 912;
    cfg.snr_db = {2.5, 10.0, 17.25};
    cfg.psd_absolute = true;
    const std::string first = ofdmlab::config_to_string(cfg);

    const std::string path = write_file(dir + "/exp.cfg", first);
    const ExperimentConfig loaded = ofdmlab::load_config(path);
    CHECK(ofdmlab::config_to_string(loaded) == first);

    // serializing resolves fft_size, so the reloaded config pins it explicitly
    CHECK(loaded.fft_size == 64);
}

TEST_CASE("config files accept comments, blanks, and loose spacing") {
    const std::string dir = fresh_dir("cfgparse");
    const std::string path = write_file(dir + "/exp.cfg",
                                        "# experiment setup\n"
                                        "scheme = low_interference   # smoothing on\n"
                                        "num_subcarriers=8\n"
                                        "oversampling = 8\n"
                                        "\n"
                                        "cp_len = 8\n"
                                        "smoother_len = 8\n"
                                        "  continuity_order = 1\n"
                                        "snr_db = 10, 20 , 30\n"
                                        "seed = 42\n"
                                        "seed = 43\n"
                                        "psd_absolute = yes\n"
                                        "allow_discontinuous = 0\n");
    const ExperimentConfig cfg = ofdmlab::load_config(path);
    CHECK(cfg.scheme == Scheme::low_interference);
    CHECK(cfg.num_subcarriers == 8);
    CHECK(cfg.oversampling == 8);
    CHECK(cfg.cp_len == 8);
    CHECK(cfg.smoother_len == 8);
    CHECK(cfg.continuity_order == 1);
    CHECK(cfg.snr_db == std::vector<double>{10.0, 20.0, 30.0});
    CHECK(cfg.seed == 43);  // later assignments win
    CHECK(cfg.psd_absolute);
    CHECK_FALSE(cfg.allow_discontinuous);
    CHECK(cfg.num_symbols == 1000);  // untouched keys keep their defaults
}

TEST_CASE("config file errors carry the offending line number") {
    const std::string dir = fresh_dir("cfgerrors");

    SUBCASE("missing separator") {
        const std::string path = write_file(dir + "/a.cfg", "seed = 1\njust words\n");
        CHECK_THROWS_WITH_AS(ofdmlab::load_config(path),
                             doctest::Contains(":2: expected 'key = value'"),
                             ConfigError);
    }
    SUBCASE("unknown key") {
        const std::string path = write_file(dir + "/b.cfg", "frobnicate = 3\n");
        CHECK_THROWS_WITH_AS(ofdmlab::load_config(path),
                             doctest::Contains(":1: unknown config key 'frobnicate'"),
                             ConfigError);
    }
    SUBCASE("unparseable value") {
        const std::string path = write_file(dir + "/c.cfg", "\n\ncp_len = soon\n");
        CHECK_THROWS_WITH_AS(ofdmlab::load_config(path),
                             doctest::Contains(":3: config key 'cp_len': cannot parse"),
                             ConfigError);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_WITH_AS(ofdmlab::load_config(dir + "/absent.cfg"),
                             doctest::Contains("cannot open config file"), ConfigError);
    }
}

TEST_CASE("overrides parse each value type") {
    ExperimentConfig cfg;

    apply_override(cfg, "  seed  ", " 42 ");
    CHECK(cfg.seed == 42);

    apply_override(cfg, "subcarrier_spacing_hz", "1.5e4");
    CHECK(cfg.subcarrier_spacing_hz == 15000.0);

    apply_override(cfg, "snr_db", "1,2.5,-3");
    CHECK(cfg.snr_db == std::vector<double>{1.0, 2.5, -3.0});

    for (const char* v : {"true", "1", "yes"}) {
        apply_override(cfg, "psd_analytic", v);
        CHECK(cfg.psd_analytic);
        apply_override(cfg, "psd_analytic", "false");
    }
    for (const char* v : {"false", "0", "no"}) {
        apply_override(cfg, "psd_absolute", v);
        CHECK_FALSE(cfg.psd_absolute);
    }

    apply_override(cfg, "window", "hanning");
    CHECK(cfg.window == ofdmlab::WindowKind::hanning);

    apply_override(cfg, "ber_max_bits", "123456789012");
    CHECK(cfg.ber_max_bits == 123456789012LL);

    CHECK_THROWS_WITH_AS(apply_override(cfg, "seed", "-3"),
                         doctest::Contains("config key 'seed': cannot parse '-3' as "
                                           "an unsigned integer"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(apply_override(cfg, "cp_len", "99999999999999"),
                         doctest::Contains("an int-range integer"), ConfigError);
    CHECK_THROWS_WITH_AS(apply_override(cfg, "psd_analytic", "maybe"),
                         doctest::Contains("a boolean"), ConfigError);
    CHECK_THROWS_WITH_AS(apply_override(cfg, "snr_db", "10,,20"),
                         doctest::Contains("a comma-separated number list"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(apply_override(cfg, "snr_db", "10,oops"),
                         doctest::Contains("cannot parse"), ConfigError);
    CHECK_THROWS_WITH_AS(apply_override(cfg, "window", "bogus"),
                         doctest::Contains("bogus"), ConfigError);
    CHECK_THROWS_WITH_AS(apply_override(cfg, "colour", "red"),
                         doctest::Contains("unknown config key 'colour'"), ConfigError);
}

TEST_CASE("validate rejects inconsistent setups") {
    const std::string dir = fresh_dir("validate");

    SUBCASE("counts must be positive") {
        ExperimentConfig cfg = small_cfg(dir);
        cfg.num_subcarriers = 0;
        CHECK_THROWS_WITH_AS(cfg.validate(),
                             doctest::Contains("num_subcarriers must be >= 1"),
                             ConfigError);
        cfg = small_cfg(dir);
        cfg.oversampling = 0;
        CHECK_THROWS_WITH_AS(cfg.validate(),
                             doctest::Contains("oversampling must be >= 1"), ConfigError);
        cfg = small_cfg(dir);
        cfg.num_symbols = 0;
        CHECK_THROWS_WITH_AS(cfg.validate(),
                             doctest::Contains("num_symbols must be >= 1"), ConfigError);
        cfg = small_cfg(dir);
        cfg.workers = 0;
        CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("workers must be >= 1"),
                             ConfigError);
        cfg = small_cfg(dir);
        cfg.psd_draws = 0;
        CHECK_THROWS_WITH_AS(cfg.validate(),
                             doctest::Contains("psd_draws and psd_block_len"),
                             ConfigError);
        cfg = small_cfg(dir);
        cfg.ber_min_errors = 0;
        CHECK_THROWS_WITH_AS(cfg.validate(),
                             doctest::Contains("ber_min_errors and ber_max_bits"),
                             ConfigError);
    }
    SUBCASE("psd segment shape") {
        ExperimentConfig cfg = small_cfg(dir);
        cfg.psd_seg_len = 1;
        CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("psd_seg_len must be >= 2"),
                             ConfigError);
        cfg = small_cfg(dir);
        cfg.psd_overlap = cfg.psd_seg_len;
        CHECK_THROWS_WITH_AS(cfg.validate(),
                             doctest::Contains("need 0 <= psd_overlap < psd_seg_len"),
                             ConfigError);
        cfg = small_cfg(dir);
        cfg.psd_overlap = -1;
        CHECK_THROWS_AS(cfg.validate(), ConfigError);
    }
    SUBCASE("empty strings") {
        ExperimentConfig cfg = small_cfg(dir);
        cfg.output_dir = "";
        CHECK_THROWS_WITH_AS(cfg.validate(),
                             doctest::Contains("output_dir must not be empty"),
                             ConfigError);
        cfg = small_cfg(dir);
        cfg.channel = "";
        CHECK_THROWS_WITH_AS(cfg.validate(),
                             doctest::Contains("channel must not be empty"), ConfigError);
    }
    SUBCASE("bad modulation or geometry is wrapped as a config error") {
        ExperimentConfig cfg = small_cfg(dir);
        cfg.qam_order = 12;
        CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("config: "), ConfigError);
        cfg = small_cfg(dir);
        cfg.cp_len = 100;  // longer than the 64-sample transform
        CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("config: "), ConfigError);
    }
    SUBCASE("nc_ofdm needs spare tones") {
        ExperimentConfig cfg = small_cfg(dir);
        cfg.scheme = Scheme::nc_ofdm;
        cfg.num_subcarriers = 3;
        cfg.continuity_order = 2;
        CHECK_THROWS_WITH_AS(
            cfg.validate(),
            doctest::Contains("nc_ofdm needs num_subcarriers > continuity_order + 1"),
            ConfigError);
    }
    SUBCASE("low_interference needs enough window support") {
        ExperimentConfig cfg = small_cfg(dir);
        cfg.scheme = Scheme::low_interference;
        cfg.smoother_len = 5;
        CHECK_THROWS_WITH_AS(cfg.validate(),
                             doctest::Contains("smoother_len must be at least "
                                               "2*continuity_order+2"),
                             ConfigError);
    }
    SUBCASE("closed-form spectrum is blackman-only") {
        ExperimentConfig cfg = small_cfg(dir);
        cfg.scheme = Scheme::low_interference;
        cfg.window = ofdmlab::WindowKind::hanning;
        CHECK_THROWS_WITH_AS(cfg.validate(),
                             doctest::Contains("closed-form spectrum exists only"),
                             ConfigError);
        cfg.psd_analytic = false;
        CHECK_NOTHROW(cfg.validate());
    }
}

TEST_CASE("data symbols are seeded per index and live on the constellation") {
    const SystemParams p =
        SystemParams::make_centered(8, 64, 8, 2, 8, 15e3);
    const auto xs = ofdmlab::draw_data_symbols(p, 16, 5, 7);
    REQUIRE(xs.size() == 5);
    for (const auto& x : xs) CHECK(x.size() == 8);

    // same seed reproduces, a different one does not
    CHECK(ofdmlab::draw_data_symbols(p, 16, 5, 7) == xs);
    CHECK(ofdmlab::draw_data_symbols(p, 16, 5, 8) != xs);

    // the public seed contract: one bit stream per symbol index
    for (std::size_t i = 0; i < xs.size(); ++i) {
        ofdmlab::Rng rng(ofdmlab::derive_seed(7, ofdmlab::seed_tag::bits, i));
        ofdmlab::BitStream bits(8 * 4);
        for (auto& b : bits) b = static_cast<std::uint8_t>(rng.next_u64() & 1u);
        CHECK(ofdmlab::qam_map(bits, 16, 8).front() == xs[i]);
    }

    std::vector<cplx> constellation;
    for (int v = 0; v < 16; ++v) {
        ofdmlab::BitStream bits{static_cast<std::uint8_t>((v >> 3) & 1),
                                static_cast<std::uint8_t>((v >> 2) & 1),
                                static_cast<std::uint8_t>((v >> 1) & 1),
                                static_cast<std::uint8_t>(v & 1)};
        constellation.push_back(ofdmlab::qam_map(bits, 16, 1).front().front());
    }
    for (const auto& x : xs) {
        for (const cplx& tone : x) {
            double best = 1e300;
            for (const cplx& c : constellation) best = std::min(best, std::abs(tone - c));
            CHECK(best < 1e-12);
        }
    }
}

TEST_CASE("simulated streams have the expected shape per scheme") {
    const SystemParams p =
        SystemParams::make_centered(8, 64, 8, 2, 8, 15e3);
    const auto w = ofdmlab::WindowKind::blackman;
    const int symbols = 5;
    const std::size_t sym_len = 72;
    const std::uint64_t seed = 11;

    const cvec plain = ofdmlab::simulate_stream(Scheme::ofdm, p, w, 16, symbols, seed);
    REQUIRE(plain.size() == symbols * sym_len);

    // plain mode is exactly modulate-and-concatenate of the drawn data
    const auto xs = ofdmlab::draw_data_symbols(p, 16, symbols, seed);
    std::vector<ofdmlab::TimeSymbol> ys;
    for (const auto& x : xs) ys.push_back(ofdmlab::modulate(x, p));
    CHECK(plain == ofdmlab::concatenate(ys));

    SUBCASE("nc_ofdm passes the first symbol through untouched") {
        const cvec nc = ofdmlab::simulate_stream(Scheme::nc_ofdm, p, w, 16, symbols, seed);
        REQUIRE(nc.size() == plain.size());
        for (std::size_t i = 0; i < sym_len; ++i) CHECK(nc[i] == plain[i]);
        double later_diff = 0.0;
        for (std::size_t i = sym_len; i < 2 * sym_len; ++i) {
            later_diff = std::max(later_diff, std::abs(nc[i] - plain[i]));
        }
        CHECK(later_diff > 1e-6);
    }

    SUBCASE("low_interference only rewrites each symbol's first samples") {
        const int L = p.smoother_len;
        const cvec li =
            ofdmlab::simulate_stream(Scheme::low_interference, p, w, 16, symbols, seed);
        REQUIRE(li.size() == (symbols + 1) * sym_len);

        for (int i = 0; i < symbols; ++i) {
            const std::size_t base = static_cast<std::size_t>(i) * sym_len;
            double head_diff = 0.0;
            for (int ell = 0; ell < L; ++ell) {
                head_diff = std::max(head_diff, std::abs(li[base + static_cast<std::size_t>(ell)] -
                                                         plain[base + static_cast<std::size_t>(ell)]));
            }
            CHECK(head_diff > 1e-9);
            for (std::size_t ell = static_cast<std::size_t>(L); ell < sym_len; ++ell) {
                CHECK(li[base + ell] == plain[base + ell]);
            }
        }

        // the appended ramp-down symbol is overlay-only
        const std::size_t tail = static_cast<std::size_t>(symbols) * sym_len;
        double ramp = 0.0;
        for (int ell = 0; ell < L; ++ell) {
            ramp = std::max(ramp, std::abs(li[tail + static_cast<std::size_t>(ell)]));
        }
        CHECK(ramp > 1e-9);
        for (std::size_t ell = static_cast<std::size_t>(L); ell < sym_len; ++ell) {
            CHECK(li[tail + ell] == cplx(0.0, 0.0));
        }
    }
}

TEST_CASE("ber points are exact at high snr and stop on the bit budget") {
    const std::string dir = fresh_dir("berpoint");
    ExperimentConfig cfg = small_cfg(dir);

    // one 64-symbol block carries 64 * 8 * 4 = 2048 bits
    ofdmlab::BerPoint pt = ofdmlab::simulate_ber_point(cfg, 30.0, 0);
    CHECK(pt.snr_db == 30.0);
    CHECK(pt.ber == 0.0);
    CHECK(pt.bits_measured == 2048);

    // the budget is checked per block, so the tally lands on a block boundary
    cfg.ber_max_bits = 3000;
    pt = ofdmlab::simulate_ber_point(cfg, 30.0, 0);
    CHECK(pt.bits_measured == 4096);
}

TEST_CASE("ber points are deterministic for a fixed seed") {
    const std::string dir = fresh_dir("berdet");
    ExperimentConfig cfg = small_cfg(dir);
    cfg.channel = "eva";
    cfg.ber_min_errors = 50;
    cfg.ber_max_bits = 20000;

    for (Scheme s : {Scheme::nc_ofdm, Scheme::low_interference}) {
        cfg.scheme = s;
        const ofdmlab::BerPoint a = ofdmlab::simulate_ber_point(cfg, 10.0, 0);
        const ofdmlab::BerPoint b = ofdmlab::simulate_ber_point(cfg, 10.0, 0);
        CHECK(a.ber == b.ber);
        CHECK(a.bits_measured == b.bits_measured);
        CHECK(a.ber > 0.0);
        CHECK(a.ber < 0.5);
    }
}

TEST_CASE("complexity run writes the pinned operation counts") {
    const std::string dir = fresh_dir("complexity");
    ExperimentConfig cfg;
    cfg.output_dir = dir + "/nested/deeper";  // run creates missing directories

    const ofdmlab::RunResult result = ofdmlab::run_complexity(cfg);
    REQUIRE(result.files.size() == 2);
    CHECK(result.files[0] == cfg.output_dir + "/complexity.csv");
    CHECK(result.files[1] == cfg.output_dir + "/complexity_manifest.txt");

    // counts for 256 tones, order 2, 144-sample window
    const long long mults[3] = {3072, 6144, 1456};
    const long long adds[3] = {3066, 6132, 1968};
    const char* names[3] = {"nc_ofdm", "ncsp_ofdm", "low_interference"};
    std::string expected =
        "scheme,real_mults,real_adds,mult_ratio_vs_nc_ofdm,combined_ratio_vs_nc_ofdm,"
        "mult_ratio_vs_ncsp_ofdm,combined_ratio_vs_ncsp_ofdm\n";
    for (int i = 0; i < 3; ++i) {
        const double comb = static_cast<double>(mults[i] + adds[i]);
        expected += std::string(names[i]) + "," + std::to_string(mults[i]) + "," +
                    std::to_string(adds[i]) + "," +
                    fmt12(static_cast<double>(mults[i]) / static_cast<double>(mults[0])) +
                    "," + fmt12(comb / static_cast<double>(mults[0] + adds[0])) + "," +
                    fmt12(static_cast<double>(mults[i]) / static_cast<double>(mults[1])) +
                    "," + fmt12(comb / static_cast<double>(mults[1] + adds[1])) + "\n";
    }
    CHECK(read_file(result.files[0]) == expected);

    // spot check the headline ratio rendering
    CHECK(read_file(result.files[0]).find(",0.473958333333,") != std::string::npos);

    const std::string manifest = read_file(result.files[1]);
    CHECK(manifest == "subcommand = complexity\nversion = " +
                          std::string(ofdmlab::kVersionString) + "\n" +
                          ofdmlab::config_to_string(cfg));

    // rerunning reproduces the files byte for byte
    const ofdmlab::RunResult again = ofdmlab::run_complexity(cfg);
    CHECK(read_file(again.files[0]) == expected);
}

TEST_CASE("continuity run audits junctions per scheme") {
    const std::string dir = fresh_dir("continuity");

    SUBCASE("plain ofdm is gated behind an explicit flag") {
        ExperimentConfig cfg = small_cfg(dir);
        CHECK_THROWS_WITH_AS(ofdmlab::run_continuity(cfg),
                             doctest::Contains("negative control"), ConfigError);

        cfg.allow_discontinuous = true;
        const ofdmlab::RunResult result = ofdmlab::run_continuity(cfg);
        const auto lines = split_lines(read_file(result.files[0]));
        REQUIRE(lines.size() == 1 + 6 * 3);  // header + 6 junctions x orders 0..2
        CHECK(lines[0] == "junction,order,absolute,relative");

        double worst = 0.0;
        for (std::size_t i = 1; i < lines.size(); ++i) {
            const auto f = split_fields(lines[i]);
            REQUIRE(f.size() == 4);
            if (f[1] == "0" && f[0] != "0") worst = std::max(worst, std::stod(f[3]));
        }
        CHECK(worst > 1e-2);  // raw junctions really are discontinuous
    }

    SUBCASE("nc_ofdm fixes interior junctions but not the first") {
        ExperimentConfig cfg = small_cfg(dir);
        cfg.scheme = Scheme::nc_ofdm;
        const ofdmlab::RunResult result = ofdmlab::run_continuity(cfg);
        CHECK(result.files[0] == dir + "/continuity_nc_ofdm.csv");

        const auto lines = split_lines(read_file(result.files[0]));
        REQUIRE(lines.size() == 1 + 6 * 3);
        double first = 0.0;
        double interior = 0.0;
        for (std::size_t i = 1; i < lines.size(); ++i) {
            const auto f = split_fields(lines[i]);
            if (f[0] == "0") {
                if (f[1] == "0") first = std::stod(f[3]);
            } else {
                interior = std::max(interior, std::stod(f[3]));
            }
        }
        CHECK(first > 1e-3);
        CHECK(interior <= 1e-8);
    }

    SUBCASE("low_interference fixes every audited junction") {
        ExperimentConfig cfg = small_cfg(dir);
        cfg.scheme = Scheme::low_interference;
        const ofdmlab::RunResult result = ofdmlab::run_continuity(cfg);

        const auto lines = split_lines(read_file(result.files[0]));
        REQUIRE(lines.size() == 1 + 6 * 3);
        for (std::size_t i = 1; i < lines.size(); ++i) {
            const auto f = split_fields(lines[i]);
            if (f[0] == "0") {
                // both sides of the first junction are near zero, so the
                // relative column is noise over noise; the absolute one counts
                CHECK(std::stod(f[2]) <= 1e-10);
            } else {
                CHECK(std::stod(f[3]) <= 1e-8);
            }
        }
        CHECK(read_file(result.files[1]).find("subcommand = continuity\n") == 0);
    }
}

TEST_CASE("psd run writes welch and closed-form spectra") {
    SUBCASE("plain ofdm gets a welch estimate only") {
        const std::string dir = fresh_dir("psdofdm");
        ExperimentConfig cfg = small_cfg(dir);
        cfg.num_symbols = 30;

        const ofdmlab::RunResult result = ofdmlab::run_psd(cfg);
        REQUIRE(result.files.size() == 2);
        CHECK(result.files[0] == dir + "/psd_ofdm_welch.csv");
        CHECK(result.files[1] == dir + "/psd_ofdm_manifest.txt");

        const auto lines = split_lines(read_file(result.files[0]));
        REQUIRE(lines.size() == 1 + 64);
        CHECK(lines[0] == "freq_hz,psd_db");
        double peak = -1e300;
        for (std::size_t i = 1; i < lines.size(); ++i) {
            peak = std::max(peak, std::stod(split_fields(lines[i])[1]));
        }
        CHECK(peak == 0.0);  // peak-normalized by default

        cfg.psd_absolute = true;
        const ofdmlab::RunResult abs_result = ofdmlab::run_psd(cfg);
        const auto abs_lines = split_lines(read_file(abs_result.files[0]));
        double abs_peak = -1e300;
        for (std::size_t i = 1; i < abs_lines.size(); ++i) {
            abs_peak = std::max(abs_peak, std::stod(split_fields(abs_lines[i])[1]));
        }
        CHECK(abs_peak < -5.0);  // clearly not pinned to the 0 dB peak
    }

    SUBCASE("low_interference adds the closed-form grid without the dc pole") {
        const std::string dir = fresh_dir("psdli");
        ExperimentConfig cfg = small_cfg(dir);
        cfg.scheme = Scheme::low_interference;
        cfg.num_symbols = 30;

        const ofdmlab::RunResult result = ofdmlab::run_psd(cfg);
        REQUIRE(result.files.size() == 3);
        CHECK(result.files[1] == dir + "/psd_low_interference_analytic.csv");

        const auto welch = split_lines(read_file(result.files[0]));
        const auto formula = split_lines(read_file(result.files[1]));
        REQUIRE(welch.size() == 1 + 64);
        REQUIRE(formula.size() == 1 + 63);  // f = 0 dropped for order >= 1

        // the remaining frequencies match the welch grid in order
        std::vector<std::string> expect_freqs;
        for (std::size_t i = 1; i < welch.size(); ++i) {
            const std::string f = split_fields(welch[i])[0];
            if (f != "0") expect_freqs.push_back(f);
        }
        for (std::size_t i = 1; i < formula.size(); ++i) {
            CHECK(split_fields(formula[i])[0] == expect_freqs[i - 1]);
        }
        CHECK(split_fields(formula[1])[0] == "-480000");
    }

    SUBCASE("order zero keeps the dc bin") {
        const std::string dir = fresh_dir("psdli0");
        ExperimentConfig cfg = small_cfg(dir);
        cfg.scheme = Scheme::low_interference;
        cfg.continuity_order = 0;
        cfg.num_symbols = 30;

        const ofdmlab::RunResult result = ofdmlab::run_psd(cfg);
        const auto formula = split_lines(read_file(result.files[1]));
        CHECK(formula.size() == 1 + 64);
    }

    SUBCASE("worker count does not change the bytes") {
        const std::string dir1 = fresh_dir("psdw1");
        const std::string dir4 = fresh_dir("psdw4");
        ExperimentConfig cfg = small_cfg(dir1);
        cfg.scheme = Scheme::low_interference;
        cfg.num_symbols = 30;

        const ofdmlab::RunResult one = ofdmlab::run_psd(cfg);
        cfg.output_dir = dir4;
        cfg.workers = 4;
        const ofdmlab::RunResult four = ofdmlab::run_psd(cfg);
        CHECK(read_file(one.files[0]) == read_file(four.files[0]));
        CHECK(read_file(one.files[1]) == read_file(four.files[1]));
    }
}

TEST_CASE("ber run writes one row per snr point") {
    const std::string dir = fresh_dir("berrun");
    ExperimentConfig cfg = small_cfg(dir);

    SUBCASE("an empty sweep is rejected") {
        cfg.snr_db = {};
        CHECK_THROWS_WITH_AS(ofdmlab::run_ber(cfg),
                             doctest::Contains("ber needs a nonempty snr_db list"),
                             ConfigError);
    }

    SUBCASE("noise-free channel yields an exact zero row") {
        const ofdmlab::RunResult result = ofdmlab::run_ber(cfg);
        REQUIRE(result.files.size() == 2);
        CHECK(result.files[0] == dir + "/ber_ofdm.csv");
        CHECK(read_file(result.files[0]) ==
              "snr_db,ber,bits_measured,scheme\n30,0,2048,ofdm\n");
        CHECK(read_file(result.files[1]).find("subcommand = ber\n") == 0);
    }

    SUBCASE("worker count does not change the bytes") {
        cfg.channel = "eva";
        cfg.scheme = Scheme::nc_ofdm;
        cfg.snr_db = {6.0, 8.0, 10.0};
        cfg.ber_min_errors = 30;
        cfg.ber_max_bits = 6000;

        const ofdmlab::RunResult one = ofdmlab::run_ber(cfg);
        const std::string bytes = read_file(one.files[0]);

        cfg.output_dir = fresh_dir("berrun3");
        cfg.workers = 3;
        const ofdmlab::RunResult three = ofdmlab::run_ber(cfg);
        CHECK(read_file(three.files[0]) == bytes);

        const auto lines = split_lines(bytes);
        REQUIRE(lines.size() == 4);
        for (std::size_t i = 1; i < lines.size(); ++i) {
            const auto f = split_fields(lines[i]);
            REQUIRE(f.size() == 4);
            CHECK(f[3] == "nc_ofdm");
            CHECK(std::stod(f[1]) > 0.0);
        }
    }
}

TEST_CASE("command line front end runs end to end") {
    const std::string cli = OFDMLAB_CLI_PATH;
    const std::string dir = fresh_dir("cli");

    const auto run = [&](const std::string& args) {
        const std::string cmd = cli + " " + args + " > " + dir + "/out.txt 2> " + dir +
                                "/err.txt";
        const int status = std::system(cmd.c_str());
        REQUIRE(WIFEXITED(status));
        return WEXITSTATUS(status);
    };

    SUBCASE("complexity subcommand prints the files it wrote") {
        CHECK(run("complexity --output-dir " + dir) == 0);
        const auto lines = split_lines(read_file(dir + "/out.txt"));
        REQUIRE(lines.size() == 2);
        CHECK(lines[0] == dir + "/complexity.csv");
        CHECK(std::filesystem::exists(lines[0]));
    }

    SUBCASE("psd subcommand honors --set overrides") {
        CHECK(run("psd --scheme ofdm --output-dir " + dir +
                  " --set num_subcarriers=8 --set oversampling=8 --set cp_len=8"
                  " --set smoother_len=8 --set num_symbols=30 --set channel=none"
                  " --set psd_seg_len=64 --set psd_overlap=16") == 0);
        CHECK(std::filesystem::exists(dir + "/psd_ofdm_welch.csv"));
    }

    SUBCASE("config errors exit with status 2") {
        CHECK(run("continuity --scheme ofdm --output-dir " + dir) == 2);
        CHECK(read_file(dir + "/err.txt").find("config error:") == 0);

        CHECK(run("ber --set nonsense") == 2);
        CHECK(run("") == 2);  // a subcommand is required
    }
}

TEST_SUITE_END();
