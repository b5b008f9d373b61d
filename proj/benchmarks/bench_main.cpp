#include <benchmark/benchmark.h>

#include "tpacas/auction.hpp"
#include "tpacas/instance_io.hpp"
#include "tpacas/oracle.hpp"
#include "tpacas/ppc.hpp"

using namespace tpacas;

namespace {

const GroupParams& group_for(int bits) {
  static const GroupParams g256 = [] {
    SeededRandom rng(1);
    return generate_group(255, BigInt(1) << 32, rng);
  }();
  static const GroupParams g1024 = modp1024_group(BigInt(1) << 32);
  return bits == 1024 ? g1024 : g256;
}

void BM_ModExp(benchmark::State& state) {
  const GroupParams& g = group_for(static_cast<int>(state.range(0)));
  SeededRandom rng(2);
  const BigInt e = rng.below(g.q);
  for (auto _ : state) benchmark::DoNotOptimize(mod_exp(g.g, e, g));
}
BENCHMARK(BM_ModExp)->Arg(256)->Arg(1024);

void BM_Comparison(benchmark::State& state) {
  const GroupParams& g = group_for(static_cast<int>(state.range(0)));
  const bool with_proof = state.range(1) != 0;
  net::Net net;
  SeededRandom rng(3);
  ppc::PpcProtocol p(g, generate_keypair(g, rng), generate_keypair(g, rng),
                     {"N1", "N2", "N3", "N4"}, net, rng);
  const BigInt x = rng.below(BigInt(1) << 60), y = rng.below(BigInt(1) << 60);
  for (auto _ : state) {
    ppc::PpcTranscript t = p.run(x, y);
    if (with_proof) {
      const ppc::ZkpRecord& z = p.prove(t);
      benchmark::DoNotOptimize(ppc::zkp_verify(z, t.x_sum, t.y_sum, t.key_a, t.key_b, g));
    }
  }
}
BENCHMARK(BM_Comparison)->Args({256, 0})->Args({256, 1})->Args({1024, 0})->Args({1024, 1});

void BM_Auction(benchmark::State& state) {
  const GroupParams& g = group_for(256);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto m = static_cast<unsigned>(state.range(1));
  SeededRandom gen(4);
  const auto agents = io::to_agents(oracle::generate_instance(n, m, 1, 1000, gen));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    SeededRandom rng(++seed);
    auction::Auction a({g, m}, rng);
    benchmark::DoNotOptimize(auction::run_auction(a, agents));
  }
}
BENCHMARK(BM_Auction)->Args({5, 4})->Args({10, 9})->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
