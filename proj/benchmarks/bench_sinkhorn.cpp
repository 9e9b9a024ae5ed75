#include <benchmark/benchmark.h>

#include "ecot/config.hpp"
#include "ecot/reference.hpp"
#include "ecot/sinkhorn.hpp"

namespace {

using namespace ecot;

struct Instance {
  GaussianJoint gamma;
  GaussianJoint mu;
  GaussianJoint nu;
};

Instance make_instance(int T) {
  MarginalSpec mu_spec;
  mu_spec.T = T;
  mu_spec.mean = Eigen::VectorXd::Constant(1, 1.0);
  mu_spec.sigma = 1.0;
  MarginalSpec nu_spec;
  nu_spec.T = T;
  nu_spec.mean = Eigen::VectorXd::Constant(1, 0.0);
  nu_spec.sigma = 0.5;

  const GaussianJoint mu = realize_marginal(mu_spec, Role::Input);
  const GaussianJoint nu = realize_marginal(nu_spec, Role::Output);
  StateSpaceSpec ss;
  ss.T = T;
  return {reference_from_state_space(ss, mu), mu, nu};
}

void bm_odd_causal(benchmark::State& state) {
  const Instance inst = make_instance(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(odd_projection_causal(inst.gamma, inst.mu));
}
BENCHMARK(bm_odd_causal)->Arg(16)->Arg(32)->Arg(64);

void bm_even(benchmark::State& state) {
  const Instance inst = make_instance(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(even_projection(inst.gamma, inst.nu));
}
BENCHMARK(bm_even)->Arg(16)->Arg(32)->Arg(64);

void bm_full_solve(benchmark::State& state) {
  const Instance inst = make_instance(static_cast<int>(state.range(0)));
  SinkhornSettings settings;
  for (auto _ : state) benchmark::DoNotOptimize(run(inst.gamma, inst.mu, inst.nu, settings));
}
BENCHMARK(bm_full_solve)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
