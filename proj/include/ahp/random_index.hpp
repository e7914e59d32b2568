#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ahp/priority.hpp"

namespace ahp {

/// Seed and sample count behind RandomIndexTable::builtin().
inline constexpr std::uint64_t kBuiltinRandomIndexSeed = 2019;
inline constexpr std::int64_t kBuiltinRandomIndexSamples = 1'000'000;

struct RIEstimate {
  int n = 0;
  double mean_ci = 0.0;
  std::int64_t samples = 0;
  double std_error = 0.0;
  std::uint64_t seed = 0;

  friend bool operator==(const RIEstimate&, const RIEstimate&) = default;
};

struct RandomIndexOptions {
  unsigned threads = 0;            // 0 = hardware concurrency
  std::int64_t chunk_size = 4096;  // samples per independently seeded chunk
};

/// Random reciprocal matrix whose upper-triangle entries are drawn uniformly
/// from the 17 scale levels 1/9 .. 1/2, 1, 2 .. 9.
PairwiseMatrixd random_scale_matrix(int n, std::mt19937_64& rng);

/// Mean CI over `samples` random reciprocal matrices of order n. The result
/// depends only on (n, samples, seed, chunk_size), never on the thread count.
RIEstimate estimate_random_index(int n, std::int64_t samples, std::uint64_t seed,
                                 const RandomIndexOptions& options = {});

/// Estimates for orders 1..max_order packed as a table.
RandomIndexTable estimate_random_index_table(int max_order, std::int64_t samples,
                                             std::uint64_t seed,
                                             std::vector<RIEstimate>* details = nullptr,
                                             const RandomIndexOptions& options = {});

}  // namespace ahp
