#include <benchmark/benchmark.h>

#include "catalogue/analytics.hpp"
#include "catalogue/validate.hpp"
#include "generators.hpp"

#include <map>

namespace {

using namespace catalogue;

const std::vector<CatalogueEntry>& corpus(std::size_t n) {
  static std::map<std::size_t, std::vector<CatalogueEntry>> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    testing::EntryGenerator gen(n);
    it = cache.emplace(n, gen.catalogue(n)).first;
  }
  return it->second;
}

template <class Fn>
void run_all(benchmark::State& state, Fn&& all) {
  const auto& entries = corpus(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(all(entries));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

std::size_t parallel_suite(const std::vector<CatalogueEntry>& entries) {
  using namespace analytics;
  const Facts f = build_facts(std::span<const CatalogueEntry>(entries));
  std::size_t sink = type_distribution(f).rows.size();
  sink += language_group_distribution(f).rows.size();
  sink += first_location_distribution(f).rows.size();
  sink += custodian_type_distribution(f).rows.size();
  sink += custodian_location_top(f, 12).rows.size();
  sink += license_property_distribution(f).rows.size();
  sink += pii_distribution(f).rows.size();
  sink += singleton_languages(f, true).count();
  sink += type_by_language_group(f).row_keys.size();
  return sink;
}

std::size_t serial_suite(const std::vector<CatalogueEntry>& entries) {
  namespace sa = analytics::serial;
  const analytics::Facts f = sa::build_facts(std::span<const CatalogueEntry>(entries));
  std::size_t sink = sa::type_distribution(f).rows.size();
  sink += sa::language_group_distribution(f).rows.size();
  sink += sa::first_location_distribution(f).rows.size();
  sink += sa::custodian_type_distribution(f).rows.size();
  sink += sa::custodian_location_top(f, 12).rows.size();
  sink += sa::license_property_distribution(f).rows.size();
  sink += sa::pii_distribution(f).rows.size();
  sink += sa::singleton_languages(f, true).count();
  sink += sa::type_by_language_group(f).row_keys.size();
  return sink;
}

void BM_AnalyticsSerial(benchmark::State& state) { run_all(state, serial_suite); }
void BM_AnalyticsParallel(benchmark::State& state) { run_all(state, parallel_suite); }

void BM_FactsSerial(benchmark::State& state) {
  run_all(state, [](const auto& e) { return analytics::serial::build_facts(std::span<const CatalogueEntry>(e)).entries.size(); });
}
void BM_FactsParallel(benchmark::State& state) {
  run_all(state, [](const auto& e) { return analytics::build_facts(std::span<const CatalogueEntry>(e)).entries.size(); });
}

void BM_ValidateAll(benchmark::State& state) {
  run_all(state, [](const auto& e) { return validate_all(e, make_index(e)).size(); });
}

}  // namespace

BENCHMARK(BM_AnalyticsSerial)->Arg(1000)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AnalyticsParallel)->Arg(1000)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FactsSerial)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FactsParallel)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ValidateAll)->Arg(20000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
