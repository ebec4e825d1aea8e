#include "stresskit/alis.hpp"
#include "stresskit/calendar.hpp"
#include "stresskit/entropy.hpp"
#include "stresskit/rqa.hpp"
#include "stresskit/series.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <cstdint>
#include <vector>

namespace {

using namespace stresskit;

// Local fixed-seed generator so benchmark inputs never depend on library
// internals.
struct Rng {
    std::uint64_t s;
    explicit Rng(std::uint64_t seed) : s(seed ? seed : 0x9e3779b97f4a7c15ULL) {}
    std::uint64_t next() {
        s ^= s >> 12;
        s ^= s << 25;
        s ^= s >> 27;
        return s * 0x2545F4914F6CDD1DULL;
    }
    double unit() { return (static_cast<double>(next() >> 11) + 0.5) / 9007199254740992.0; }
    double gauss() {
        const double u = unit(), v = unit();
        return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586 * v);
    }
};

std::vector<double> gaussian(std::size_t n, std::uint64_t seed, double mu = 0.0, double sd = 1.0) {
    Rng rng(seed);
    std::vector<double> out(n);
    for (auto& v : out)
        v = mu + sd * rng.gauss();
    return out;
}

PriceSeries prices(std::vector<double> values) {
    PriceSeries s;
    s.instrument_id = "BENCH";
    s.values = std::move(values);
    Date d = make_date(2000, 1, 3);
    s.dates.reserve(s.values.size());
    for (std::size_t i = 0; i < s.values.size(); ++i) {
        s.dates.push_back(d);
        d = next_weekday(d);
    }
    return s;
}

void BM_SampleEntropyUnivariate(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const std::vector<std::vector<double>> chans = {gaussian(n, 11)};
    const EmbeddingSpec spec = EmbeddingSpec::uniform(1, 2, 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(sample_entropy_detail(chans, spec, 0.15));
    state.SetComplexityN(static_cast<std::int64_t>(n));
}
BENCHMARK(BM_SampleEntropyUnivariate)->Arg(261)->Arg(522)->Arg(1044)->Complexity();

void BM_SampleEntropyMultichannel(benchmark::State& state) {
    const std::size_t p = static_cast<std::size_t>(state.range(0));
    std::vector<std::vector<double>> chans;
    for (std::size_t k = 0; k < p; ++k)
        chans.push_back(gaussian(1044, 20 + k));
    const EmbeddingSpec spec = EmbeddingSpec::uniform(p, 2, 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(sample_entropy_detail(chans, spec, 0.3));
}
BENCHMARK(BM_SampleEntropyMultichannel)->Arg(2)->Arg(4);

void BM_RecurrenceDeterminism(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const std::vector<double> window = gaussian(n, 33);
    for (auto _ : state) {
        const RecurrenceMatrix rp = recurrence_matrix(takens_embed(window, 2, 1), 0.6);
        benchmark::DoNotOptimize(det(rp, 2));
    }
    state.SetComplexityN(static_cast<std::int64_t>(n));
}
BENCHMARK(BM_RecurrenceDeterminism)->Arg(300)->Arg(600)->Arg(1044)->Complexity();

void BM_EmbeddingSelection(benchmark::State& state) {
    const std::vector<double> window = gaussian(static_cast<std::size_t>(state.range(0)), 44);
    RqaConfig cfg;
    cfg.selection = EmbeddingSelection::automatic;
    for (auto _ : state)
        benchmark::DoNotOptimize(select_embedding(window, cfg, 7));
}
BENCHMARK(BM_EmbeddingSelection)->Arg(300);

void BM_BandpassEnvelope(benchmark::State& state) {
    const std::vector<double> z = gaussian(static_cast<std::size_t>(state.range(0)), 55);
    for (auto _ : state)
        benchmark::DoNotOptimize(instantaneous_amplitude(bandpass(z, 1.0 / 60.0, 1.0 / 5.0)));
}
BENCHMARK(BM_BandpassEnvelope)->Arg(1044)->Arg(4800);

void BM_RollingEntropy(benchmark::State& state) {
    const PriceSeries s = prices(gaussian(1600, 66, 100.0, 4.0));
    SampEnConfig cfg;
    cfg.window = 1044;
    cfg.increment = 87;
    const int threads = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(rolling_mod_mse(s, cfg, false, threads));
}
BENCHMARK(BM_RollingEntropy)->Arg(1)->Arg(4)->UseRealTime();

void BM_AlisPipeline(benchmark::State& state) {
    const PriceSeries s = prices(gaussian(12 * 261, 77, 100.0, 5.0));
    for (auto _ : state)
        benchmark::DoNotOptimize(ia_alis(s, TradingCalendar{}, AlisConfig{}));
}
BENCHMARK(BM_AlisPipeline);

} // namespace

BENCHMARK_MAIN();
