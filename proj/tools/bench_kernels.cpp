// Serial reference kernels against their OpenMP counterparts on inputs sized
// like the n = 7 stages.

#include <benchmark/benchmark.h>

#include "ellsec/linalg.hpp"
#include "ellsec/multipoly.hpp"

using namespace ellsec;

namespace {

Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  Rng rng(seed);
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.elem();
  return m;
}

std::vector<std::vector<Fp>> random_points(std::size_t count, std::size_t nvars, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::vector<Fp>> pts(count, std::vector<Fp>(nvars));
  for (auto& p : pts)
    for (auto& x : p) x = rng.elem();
  return pts;
}

template <auto Echelon>
void BM_row_echelon(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix base = random_matrix(n, n + 8, 1);
  for (auto _ : state) {
    Matrix m = base;
    benchmark::DoNotOptimize(Echelon(m));
  }
}

template <auto Eval>
void BM_evaluation_matrix(benchmark::State& state) {
  const unsigned degree = static_cast<unsigned>(state.range(0));
  const MonomialBasis& basis = monomial_basis(7, degree);
  const auto pts = random_points(basis.size() + 25, 7, 2);
  for (auto _ : state) benchmark::DoNotOptimize(Eval(basis, pts));
}

template <auto Compose>
void BM_compose_dense(benchmark::State& state) {
  // Degree-3 forms in 7 variables fed into degree-3 forms, as in f o p at n = 7.
  constexpr std::size_t kVars = 7;
  Rng rng(3);
  std::vector<std::vector<Fp>> outer(kVars), inner(kVars);
  for (auto& f : outer) {
    f.resize(monomial_count(kVars, 3));
    for (auto& c : f) c = rng.elem();
  }
  for (auto& f : inner) {
    f.resize(monomial_count(kVars, 3));
    for (auto& c : f) c = rng.elem();
  }
  for (auto _ : state) benchmark::DoNotOptimize(Compose(kVars, outer, 3, inner, 3));
}

}  // namespace

BENCHMARK(BM_row_echelon<kernels::serial::row_echelon>)->Name("row_echelon/serial")->Arg(120)->Arg(330);
BENCHMARK(BM_row_echelon<kernels::omp::row_echelon>)->Name("row_echelon/omp")->Arg(120)->Arg(330);
BENCHMARK(BM_evaluation_matrix<kernels::serial::evaluation_matrix>)->Name("evaluation_matrix/serial")->Arg(3)->Arg(5);
BENCHMARK(BM_evaluation_matrix<kernels::omp::evaluation_matrix>)->Name("evaluation_matrix/omp")->Arg(3)->Arg(5);
BENCHMARK(BM_compose_dense<kernels::serial::compose_dense>)->Name("compose_dense/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_compose_dense<kernels::omp::compose_dense>)->Name("compose_dense/omp")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
