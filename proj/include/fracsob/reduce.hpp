#ifndef FRACSOB_REDUCE_HPP
#define FRACSOB_REDUCE_HPP

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

#include <Eigen/Core>

namespace fracsob {

/// Pairwise (binary-tree) sum. The association order depends only on the
/// length of the input, never on how the terms were produced.
template <typename T>
T pairwise_sum(std::span<const T> terms) {
  constexpr std::size_t leaf = 8;
  if (terms.size() <= leaf) {
    T acc{};
    for (const T& t : terms) acc += t;
    return acc;
  }
  const std::size_t half = terms.size() / 2;
  return pairwise_sum(terms.first(half)) + pairwise_sum(terms.subspan(half));
}

template <typename Derived>
typename Derived::Scalar pairwise_sum(const Eigen::DenseBase<Derived>& terms) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Array<Scalar, Eigen::Dynamic, 1> flat = terms.derived().reshaped();
  return pairwise_sum(std::span<const Scalar>(flat.data(), static_cast<std::size_t>(flat.size())));
}

/// Runs fn(begin, end) over [0, count) in tiles on `workers` threads. Tiles are
/// claimed dynamically, so fn must write only to locations owned by its range.
template <typename Fn>
void parallel_for(Eigen::Index count, unsigned workers, Eigen::Index tile, Fn&& fn) {
  tile = std::max<Eigen::Index>(tile, 1);
  const Eigen::Index tiles = (count + tile - 1) / tile;
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<Eigen::Index>(tiles, 1))));
  if (workers == 1) {
    for (Eigen::Index b = 0; b < count; b += tile) fn(b, std::min(count, b + tile));
    return;
  }
  std::atomic<Eigen::Index> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    try {
      for (Eigen::Index t = next++; t < tiles; t = next++) {
        const Eigen::Index b = t * tile;
        fn(b, std::min(count, b + tile));
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run);
    run();
  }
  if (failure) std::rethrow_exception(failure);
}

/// Worker count from FRACSOB_WORKERS, falling back to 1.
unsigned default_workers();

}  // namespace fracsob

#endif  // FRACSOB_REDUCE_HPP
