#include "ahp/random_index.hpp"

#include <array>
#include <atomic>
#include <cmath>
#include <thread>

namespace ahp {
namespace {

constexpr std::array<double, 17> kLevels = {
    1.0 / 9, 1.0 / 8, 1.0 / 7, 1.0 / 6, 1.0 / 5, 1.0 / 4, 1.0 / 3, 1.0 / 2, 1.0,
    2.0,     3.0,     4.0,     5.0,     6.0,     7.0,     8.0,     9.0};

struct ChunkSum {
  double sum = 0.0;
  double sum_sq = 0.0;
};

ChunkSum run_chunk(int n, std::int64_t count, std::uint64_t seed, std::int64_t chunk) {
  std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(n),
                    std::uint32_t(chunk), std::uint32_t(std::uint64_t(chunk) >> 32)};
  std::mt19937_64 rng(seq);
  ChunkSum out;
  for (std::int64_t s = 0; s < count; ++s) {
    const PairwiseMatrixd m = random_scale_matrix(n, rng);
    const auto eig = derive_eigenvector(m);
    const double ci = (double(eig.lambda_max) - n) / (n - 1);
    out.sum += ci;
    out.sum_sq += ci * ci;
  }
  return out;
}

}  // namespace

PairwiseMatrixd random_scale_matrix(int n, std::mt19937_64& rng) {
  std::vector<UpperEntry<double>> upper;
  upper.reserve(std::size_t(n * (n - 1) / 2));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      // Modulo bias over a 64-bit draw is below 1e-18; kept for portability
      // since std::uniform_int_distribution differs between standard libraries.
      upper.push_back({i, j, kLevels[rng() % kLevels.size()]});
    }
  return PairwiseMatrixd::from_upper_triangle(n, upper);
}

RIEstimate estimate_random_index(int n, std::int64_t samples, std::uint64_t seed,
                                 const RandomIndexOptions& options) {
  if (n < 1 || n > RandomIndexTable::kMaxOrder) {
    throw Error(ErrorCode::UnsupportedOrder,
                "order " + std::to_string(n) + " outside 1.." +
                    std::to_string(RandomIndexTable::kMaxOrder));
  }
  if (samples < 1 || options.chunk_size < 1) {
    throw Error(ErrorCode::InvalidArgument, "samples and chunk size must be positive");
  }
  RIEstimate est{n, 0.0, samples, 0.0, seed};
  if (n <= 2) return est;

  const std::int64_t chunks = (samples + options.chunk_size - 1) / options.chunk_size;
  std::vector<ChunkSum> partial(static_cast<std::size_t>(chunks));
  std::atomic<std::int64_t> next{0};
  auto worker = [&] {
    for (std::int64_t c = next++; c < chunks; c = next++) {
      const std::int64_t begin = c * options.chunk_size;
      const std::int64_t count = std::min(options.chunk_size, samples - begin);
      partial[std::size_t(c)] = run_chunk(n, count, seed, c);
    }
  };
  unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  threads = unsigned(std::clamp<std::int64_t>(threads, 1, chunks));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }

  double sum = 0.0, sum_sq = 0.0;
  for (const auto& p : partial) {
    sum += p.sum;
    sum_sq += p.sum_sq;
  }
  const double count = double(samples);
  est.mean_ci = sum / count;
  if (samples > 1) {
    const double var = std::max(0.0, (sum_sq - count * est.mean_ci * est.mean_ci) / (count - 1));
    est.std_error = std::sqrt(var / count);
  }
  return est;
}

RandomIndexTable estimate_random_index_table(int max_order, std::int64_t samples,
                                             std::uint64_t seed,
                                             std::vector<RIEstimate>* details,
                                             const RandomIndexOptions& options) {
  if (max_order < 1 || max_order > RandomIndexTable::kMaxOrder) {
    throw Error(ErrorCode::UnsupportedOrder, "max order " + std::to_string(max_order));
  }
  std::map<int, double> values;
  for (int n = 1; n <= max_order; ++n) {
    const RIEstimate e = estimate_random_index(n, samples, seed, options);
    values[n] = e.mean_ci;
    if (details) details->push_back(e);
  }
  return RandomIndexTable(std::move(values), RIProvenance::DerivedMonteCarlo);
}

}  // namespace ahp
