// Command-line front end: psd / ber / continuity / complexity subcommands
// over a shared key = value config with per-flag overrides.

#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ofdmlab/harness.hpp"
#include "ofdmlab/version.hpp"

namespace {

struct CliState {
    std::string config_path;
    std::vector<std::string> overrides;  // key=value pairs from --set
    std::string scheme;
    std::string output_dir;
    std::string seed;
    std::string workers;
};

ofdmlab::ExperimentConfig resolve_config(const CliState& st) {
    ofdmlab::ExperimentConfig cfg;
    if (!st.config_path.empty()) cfg = ofdmlab::load_config(st.config_path);
    for (const std::string& ov : st.overrides) {
        const auto eq = ov.find('=');
        if (eq == std::string::npos) {
            throw ofdmlab::ConfigError("--set expects key=value, got '" + ov + "'");
        }
        ofdmlab::apply_override(cfg, ov.substr(0, eq), ov.substr(eq + 1));
    }
    if (!st.scheme.empty()) ofdmlab::apply_override(cfg, "scheme", st.scheme);
    if (!st.output_dir.empty()) ofdmlab::apply_override(cfg, "output_dir", st.output_dir);
    if (!st.seed.empty()) ofdmlab::apply_override(cfg, "seed", st.seed);
    if (!st.workers.empty()) ofdmlab::apply_override(cfg, "workers", st.workers);
    return cfg;
}

void add_common_options(CLI::App* sub, CliState& st) {
    sub->add_option("--config", st.config_path, "key = value config file");
    sub->add_option("--set", st.overrides,
                    "override one config entry as key=value (repeatable)");
    sub->add_option("--scheme", st.scheme, "ofdm, nc_ofdm, or low_interference");
    sub->add_option("--output-dir", st.output_dir, "directory for CSVs and manifests");
    sub->add_option("--seed", st.seed, "base RNG seed");
    sub->add_option("--workers", st.workers, "worker thread count");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(ofdmlab::kVersionString) +
                 " spectral precoding experiment harness"};
    app.require_subcommand(1);

    CliState st;
    using Runner = std::function<ofdmlab::RunResult(const ofdmlab::ExperimentConfig&)>;
    Runner runner;

    CLI::App* psd = app.add_subcommand("psd", "estimated (and closed-form) spectra");
    CLI::App* ber = app.add_subcommand("ber", "bit error rate sweep over SNR");
    CLI::App* continuity =
        app.add_subcommand("continuity", "per-junction derivative residual audit");
    CLI::App* complexity =
        app.add_subcommand("complexity", "per-symbol operation counts and ratios");
    for (CLI::App* sub : {psd, ber, continuity, complexity}) {
        add_common_options(sub, st);
    }
    psd->callback([&] { runner = ofdmlab::run_psd; });
    ber->callback([&] { runner = ofdmlab::run_ber; });
    continuity->callback([&] { runner = ofdmlab::run_continuity; });
    complexity->callback([&] { runner = ofdmlab::run_complexity; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        const ofdmlab::ExperimentConfig cfg = resolve_config(st);
        const ofdmlab::RunResult result = runner(cfg);
        for (const std::string& f : result.files) std::printf("%s\n", f.c_str());
        return 0;
    } catch (const ofdmlab::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
