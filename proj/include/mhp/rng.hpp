#pragma once

#include <cstdint>

namespace mhp {

// Seeded random stream. State is derived by mixing (seed, stream_id), so a
// given pair reproduces identical draws across runs and worker counts; parallel
// estimators partition stream ids (one per replicate), never share a stream.
// Generator: xoshiro256++ with splitmix64 seeding; normals via Box-Muller.
class RngStream {
  public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t next_u64();
    double uniform();   // [0, 1)
    double normal();    // N(0, 1)

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

  private:
    std::uint64_t s_[4];
    std::uint64_t seed_, stream_id_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace mhp
