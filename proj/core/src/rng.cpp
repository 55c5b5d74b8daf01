#include "usflab/rng.hpp"

#include <bit>

#include "usflab/errors.hpp"

namespace usflab {

std::uint64_t mix_seed(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ull;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBull;
  x ^= x >> 31;
  return x;
}

RngHandle RngHandle::substream(std::uint64_t index) const {
  // Weyl increment keeps distinct indices far apart before mixing.
  return RngHandle(mix_seed(seed_ + (index + 1) * 0x9E3779B97F4A7C15ull));
}

BigInt uniform_below(RngHandle& rng, const BigInt& bound) {
  if (bound < 1) raise(Errc::bad_params, "uniform_below needs a positive bound");
  if (bound == 1) return 0;
  unsigned bits = boost::multiprecision::msb(bound) + 1;
  unsigned words = (bits + 63) / 64;
  for (;;) {
    BigInt value = 0;
    for (unsigned i = 0; i < words; ++i) {
      value <<= 64;
      value |= rng.next();
    }
    value >>= words * 64 - bits;
    if (value < bound) return value;
  }
}

std::size_t uniform_index(RngHandle& rng, std::size_t size) {
  if (size == 0) raise(Errc::bad_params, "uniform_index needs a nonempty range");
  if (size == 1) return 0;
  std::uint64_t mask = ~std::uint64_t(0) >> std::countl_zero(std::uint64_t(size - 1));
  for (;;) {
    std::uint64_t value = rng.next() & mask;
    if (value < size) return std::size_t(value);
  }
}

double uniform_unit(RngHandle& rng) {
  return double(rng.next() >> 11) * 0x1.0p-53;
}

}  // namespace usflab
