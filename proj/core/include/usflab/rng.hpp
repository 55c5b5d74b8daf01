#pragma once

#include <cstdint>
#include <random>

#include "usflab/rational.hpp"

namespace usflab {

// 64-bit bit-mixing finalizer with full avalanche; used to spread structured
// seed material (master seed plus stream index) into unrelated seeds.
std::uint64_t mix_seed(std::uint64_t x);

// Deterministic random source.  The engine is std::mt19937_64, whose output
// sequence the standard pins down exactly, so a seed reproduces the same
// stream on every platform.  All bounded draws below use rejection sampling
// on raw engine words instead of std::uniform_int_distribution, which the
// standard leaves implementation-defined.
class RngHandle {
 public:
  explicit RngHandle(std::uint64_t seed) : seed_(seed), engine_(mix_seed(seed)) {}

  // Child stream `index`: deterministic in (seed, index), and distinct
  // indices give streams that behave as unrelated generators.  Used to hand
  // each parallel worker its own source.
  RngHandle substream(std::uint64_t index) const;

  std::uint64_t next() { return engine_(); }
  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

// Uniform integer in [0, bound), exact for arbitrary-precision bounds;
// Errc::bad_params if bound < 1.
BigInt uniform_below(RngHandle& rng, const BigInt& bound);

// Uniform index in [0, size); Errc::bad_params if size == 0.
std::size_t uniform_index(RngHandle& rng, std::size_t size);

// Uniform double in [0, 1) with 53 random bits.
double uniform_unit(RngHandle& rng);

}  // namespace usflab
