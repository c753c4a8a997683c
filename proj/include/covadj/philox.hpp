#pragma once

#include <array>
#include <cstdint>

namespace covadj {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
// The output is a pure function of (key, counter), so any replication's
// stream can be regenerated in isolation.
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key);

// Sequential view of the Philox stream for one (seed, stream_id) pair.
// Block i of the stream is philox(counter = {i_lo, i_hi, id_lo, id_hi},
// key = {seed_lo, seed_hi}).
class PhiloxStream {
public:
    PhiloxStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint32_t next_u32();
    std::uint64_t next_u64();

    // Uniform on the open interval (0, 1) with 53 random bits.
    double next_open_unit();

    // Uniform integer in [0, bound) by Lemire's multiply-and-reject.
    std::uint64_t next_below(std::uint64_t bound);

private:
    void refill();

    PhiloxKey key_;
    std::uint64_t stream_id_;
    std::uint64_t block_ = 0;
    PhiloxCounter buffer_{};
    int used_ = 4;
};

}  // namespace covadj
