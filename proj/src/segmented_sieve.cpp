#include "aplab/segmented_sieve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aplab {

std::vector<std::uint32_t> simple_primes(std::uint32_t limit) {
  std::vector<std::uint32_t> primes;
  if (limit < 2) return primes;
  std::vector<char> composite(static_cast<std::size_t>(limit) + 1, 0);
  for (std::uint64_t i = 2; i * i <= limit; ++i)
    if (!composite[i])
      for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = 1;
  for (std::uint32_t i = 2; i <= limit; ++i)
    if (!composite[i]) primes.push_back(i);
  return primes;
}

std::uint64_t count_primes_segmented(std::uint64_t lo, std::uint64_t hi,
                                     std::uint64_t segment_size) {
  if (lo > hi) throw std::invalid_argument("count_primes_segmented: lo > hi");
  lo = std::max<std::uint64_t>(lo, 2);
  if (lo > hi) return 0;

  const auto root = static_cast<std::uint32_t>(std::sqrt(static_cast<double>(hi))) + 1;
  const auto primes = simple_primes(root);

  std::uint64_t count = 0;
  std::vector<char> seg(segment_size);
  for (std::uint64_t base = lo; base <= hi; base += segment_size) {
    const std::uint64_t top = std::min(hi, base + segment_size - 1);
    const std::size_t len = static_cast<std::size_t>(top - base + 1);
    std::fill(seg.begin(), seg.begin() + len, 1);
    for (std::uint32_t p : primes) {
      const std::uint64_t p64 = p;
      if (p64 * p64 > top) break;
      const std::uint64_t start = std::max(p64 * p64, ((base + p64 - 1) / p64) * p64);
      for (std::uint64_t m = start; m <= top; m += p64) seg[m - base] = 0;
    }
    for (std::size_t i = 0; i < len; ++i) count += seg[i];
  }
  return count;
}

SegmentSiever::SegmentSiever(std::uint64_t max_value) : max_value_(max_value) {
  if (max_value < 1) throw std::invalid_argument("SegmentSiever: max_value must be >= 1");
  auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(max_value)));
  while ((root + 1) * (root + 1) <= max_value) ++root;
  base_primes_ = simple_primes(static_cast<std::uint32_t>(root));
}

OmegaSegment SegmentSiever::omega_segment(std::uint64_t lo, std::uint64_t hi) const {
  if (lo > hi || lo < 1) throw std::invalid_argument("omega_segment: bad range");
  if (hi > max_value_) throw std::invalid_argument("omega_segment: range above siever coverage");

  const std::size_t len = static_cast<std::size_t>(hi - lo + 1);
  OmegaSegment seg;
  seg.lo = lo;
  seg.big_omega.assign(len, 0);
  std::vector<std::uint64_t> remaining(len);
  for (std::size_t i = 0; i < len; ++i) remaining[i] = lo + i;

  for (std::uint32_t p : base_primes_) {
    const std::uint64_t p64 = p;
    if (p64 * p64 > hi) break;
    const std::uint64_t start = ((lo + p64 - 1) / p64) * p64;
    for (std::uint64_t m = start; m <= hi; m += p64) {
      const std::size_t i = static_cast<std::size_t>(m - lo);
      while (remaining[i] % p64 == 0) {
        remaining[i] /= p64;
        ++seg.big_omega[i];
      }
    }
  }
  // whatever is left is a single prime factor > sqrt(hi)
  for (std::size_t i = 0; i < len; ++i)
    if (remaining[i] > 1) ++seg.big_omega[i];
  return seg;
}

} // namespace aplab
