#ifndef MKPCA_PARALLEL_HPP
#define MKPCA_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace mkpca {

/// Worker cap: MKPCA_THREADS if set (>= 1), otherwise hardware concurrency.
/// Read on every call so tests can toggle the variable in-process.
int max_threads();

/// Runs fn(0..n-1) across up to max_threads() workers. Items must be independent;
/// results must be written to per-index slots so the outcome is identical for any
/// degree of parallelism. Exceptions from workers are rethrown on the caller.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace mkpca

#endif
