#pragma once

#include <cstdint>
#include <random>

namespace bilinear {

// splitmix64 step; also used to derive independent substream seeds.
std::uint64_t splitmix64(std::uint64_t& state);

// Deterministic seed for logical substream `stream` of a master seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

// One reproducible random stream. The engine (mt19937_64) and every variate
// transform are fully pinned, so a given seed yields the same sequence of
// doubles on every conforming platform:
//   uniform01 : ((x >> 11) + 0.5) * 2^-53, strictly inside (0,1)
//   normal    : Box-Muller, sqrt(-2 ln u1) * cos(2 pi u2), two uniforms per call
//   gamma     : Marsaglia-Tsang squeeze (shape >= 1), rejection on the stream
// Each stream is owned by one logical thread; parallel users derive
// independent streams via RngStream(seed, stream_index).
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}
    RngStream(std::uint64_t seed, std::uint64_t stream) : engine_(derive_seed(seed, stream)) {}

    double uniform01();
    double normal();
    double gamma(double shape);

  private:
    std::mt19937_64 engine_;
};

}  // namespace bilinear
