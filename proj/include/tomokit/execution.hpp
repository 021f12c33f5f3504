#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tomo {

// serial is the reference path; parallel must agree with it to rounding.
enum class Execution { serial, parallel };

inline constexpr std::size_t kReduceChunk = 16;

// Compensated (Kahan) accumulator; T only needs + and -.
template <class T>
struct KahanSum {
  T sum;
  T carry;
  explicit KahanSum(const T& zero) : sum(zero), carry(zero) {}
  void add(const T& x) {
    T y = x - carry;
    T t = sum + y;
    carry = (t - sum) - y;
    sum = std::move(t);
  }
};

// Sum of term(i) for i in [0, count), with compensated accumulation. The
// parallel path sums fixed-size chunks independently and combines the
// partials in chunk order, so its result does not depend on the thread count.
template <class T, class Term>
T reduce_sum(std::size_t count, const T& zero, Term&& term, Execution exec) {
  if (exec == Execution::serial || count <= kReduceChunk) {
    KahanSum<T> acc(zero);
    for (std::size_t i = 0; i < count; ++i) acc.add(term(i));
    return acc.sum;
  }
  const std::size_t nchunks = (count + kReduceChunk - 1) / kReduceChunk;
  std::vector<KahanSum<T>> partial(nchunks, KahanSum<T>(zero));
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(nchunks); ++c) {
    const std::size_t lo = static_cast<std::size_t>(c) * kReduceChunk;
    const std::size_t hi = std::min(count, lo + kReduceChunk);
    auto& acc = partial[static_cast<std::size_t>(c)];
    for (std::size_t i = lo; i < hi; ++i) acc.add(term(i));
  }
  // the carries go in separately; a chunk sum alone can be far larger than the total
  KahanSum<T> acc(zero);
  for (const auto& p : partial) {
    acc.add(p.sum);
    acc.add(-p.carry);
  }
  return acc.sum;
}

// Independent writes body(i) for i in [0, count).
template <class Body>
void for_each_index(std::size_t count, Body&& body, Execution exec) {
  if (exec == Execution::serial) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(count); ++i) body(static_cast<std::size_t>(i));
}

inline void set_thread_count(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

inline int thread_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace tomo
