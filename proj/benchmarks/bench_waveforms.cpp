#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "ofdmlab/analysis.hpp"
#include "ofdmlab/channel.hpp"
#include "ofdmlab/nc_precoder.hpp"
#include "ofdmlab/numerics.hpp"
#include "ofdmlab/ofdm.hpp"
#include "ofdmlab/params.hpp"
#include "ofdmlab/qam.hpp"
#include "ofdmlab/rng.hpp"
#include "ofdmlab/smoother.hpp"

namespace {

using namespace ofdmlab;

// Full-size geometry (256 tones in a 2048-point transform, 144-sample prefix)
// so the numbers reflect the configuration the CLI runs by default.
SystemParams full_params(int order)
{
    return SystemParams::make_centered(256, 2048, 144, order, 144, 15e3);
}

std::vector<SymbolVector> random_symbols(const SystemParams& p, int count, std::uint64_t seed)
{
    Rng rng(seed);
    BitStream bits(static_cast<std::size_t>(count) * p.num_subcarriers *
                   qam_bits_per_symbol(16));
    for (auto& b : bits)
        b = static_cast<std::uint8_t>(rng.next_u64() & 1u);
    return qam_map(bits, 16, p.num_subcarriers);
}

std::vector<TimeSymbol> modulate_all(const std::vector<SymbolVector>& xs,
                                     const SystemParams& p)
{
    std::vector<TimeSymbol> ys;
    ys.reserve(xs.size());
    for (const auto& x : xs)
        ys.push_back(modulate(x, p));
    return ys;
}

SmootherContext smoother_for(const SystemParams& p)
{
    const WindowSpec w = make_window(WindowKind::blackman, p.smoother_len,
                                     p.continuity_order, p.sample_interval_s());
    return build_smoother(p, w);
}

} // namespace

// Raw 2048-point synthesis transform, the inner loop of every modulator call.
static void BM_Synthesis2048(benchmark::State& state)
{
    Rng rng(3);
    cvec spectrum(2048);
    for (auto& v : spectrum)
        v = rng.complex_gaussian(1.0);
    for (auto _ : state) {
        cvec out = idft(spectrum);
        benchmark::DoNotOptimize(out.data());
    }
}
BENCHMARK(BM_Synthesis2048)->Unit(benchmark::kMicrosecond);

// One symbol end to end: bin placement, synthesis transform, prefix copy.
static void BM_ModulateSymbol(benchmark::State& state)
{
    const SystemParams p = full_params(2);
    const auto xs = random_symbols(p, 1, 11);
    for (auto _ : state) {
        TimeSymbol y = modulate(xs[0], p);
        benchmark::DoNotOptimize(y.samples.data());
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ModulateSymbol)->Unit(benchmark::kMicrosecond);

// Projector construction is a one-time cost per configuration; the stream
// benchmark below shows the recurring per-symbol cost.
static void BM_BuildPrecoder(benchmark::State& state)
{
    const SystemParams p = full_params(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        PrecoderContext ctx = build_precoder(p);
        benchmark::DoNotOptimize(ctx.projector.data.data());
    }
}
BENCHMARK(BM_BuildPrecoder)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

static void BM_PrecodeStream(benchmark::State& state)
{
    const SystemParams p = full_params(2);
    const PrecoderContext ctx = build_precoder(p);
    const auto xs = random_symbols(p, 16, 21);
    for (auto _ : state) {
        std::vector<SymbolVector> out = precode_stream(xs, ctx);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(xs.size()));
}
BENCHMARK(BM_PrecodeStream)->Unit(benchmark::kMicrosecond);

// Per-junction coefficient solve, the recurring cost of the overlay path.
// The system is (N+1) x (N+1), so the argument sweep shows how the solve
// scales with continuity order.
static void BM_SmoothCoeffs(benchmark::State& state)
{
    const SystemParams p = full_params(static_cast<int>(state.range(0)));
    const SmootherContext ctx = smoother_for(p);
    const auto xs = random_symbols(p, 2, 31);
    for (auto _ : state) {
        SmoothCoeffs b = smooth_coeffs(xs[0], xs[1], ctx);
        benchmark::DoNotOptimize(b.b.data());
    }
}
BENCHMARK(BM_SmoothCoeffs)->DenseRange(0, 3)->Unit(benchmark::kMicrosecond);

// Whole-stream overlay: 16 symbols plus the trailing ramp-down.
static void BM_ApplySmoother(benchmark::State& state)
{
    const SystemParams p = full_params(2);
    const SmootherContext ctx = smoother_for(p);
    const auto xs = random_symbols(p, 16, 41);
    const auto ys = modulate_all(xs, p);
    for (auto _ : state) {
        SmoothedStream out = apply_smoother(ys, xs, ctx);
        benchmark::DoNotOptimize(out.symbols.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(xs.size()));
}
BENCHMARK(BM_ApplySmoother)->Unit(benchmark::kMicrosecond);

// Tap-line convolution over a 16-symbol stream at the full sample rate.
static void BM_ApplyChannel(benchmark::State& state)
{
    const SystemParams p = full_params(2);
    const auto xs = random_symbols(p, 16, 51);
    const cvec stream = concatenate(modulate_all(xs, p));
    const ChannelRealization ch =
        realize(eva_profile(), p.sample_rate_hz(), p.fft_size, p.cp_len, 7);
    for (auto _ : state) {
        cvec out = apply_channel(stream, ch);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(stream.size()));
}
BENCHMARK(BM_ApplyChannel)->Unit(benchmark::kMicrosecond);

// Averaged-periodogram estimate over a 32-symbol stream (about 70k samples,
// 2048-point segments), the cost behind every psd run.
static void BM_WelchPsd(benchmark::State& state)
{
    const SystemParams p = full_params(2);
    const auto xs = random_symbols(p, 32, 61);
    const cvec stream = concatenate(modulate_all(xs, p));
    for (auto _ : state) {
        PsdEstimate psd = welch_psd(stream, p.sample_rate_hz(), 2048, 512);
        benchmark::DoNotOptimize(psd.power.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(stream.size()));
}
BENCHMARK(BM_WelchPsd)->Unit(benchmark::kMillisecond);

// One closed-form spectrum evaluation for a smoothed 16-symbol stream. The
// analytic psd runs evaluate this once per grid point per draw, so the grid
// cost is this number times draws times points.
static void BM_AnalyticSpectrumPoint(benchmark::State& state)
{
    const SystemParams p = full_params(2);
    const SmootherContext ctx = smoother_for(p);
    const auto xs = random_symbols(p, 16, 71);
    const auto ys = modulate_all(xs, p);
    const SmoothedStream smoothed = apply_smoother(ys, xs, ctx);
    const double f_hz = 2.5e6;
    for (auto _ : state) {
        cplx v = analytic_stream_spectrum(xs, smoothed.coeffs, ctx, f_hz);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(BM_AnalyticSpectrumPoint)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
