#pragma once

// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Each draw is a
// pure function of (key, counter), so sample i of a Monte-Carlo run can be
// generated on any thread in any order.

#include <array>
#include <cstdint>
#include <limits>

namespace relay_sinr {

class Philox4x32
{
  public:
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter block(Counter ctr, Key key)
    {
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                key[0] += kWeyl0;
                key[1] += kWeyl1;
            }
            const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
            const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
            ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
                   static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
        }
        return ctr;
    }

  private:
    static constexpr std::uint32_t kMul0 = 0xD2511F53u;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
};

/// UniformRandomBitGenerator over the stream (seed, stream_id). Words are
/// produced from consecutive counter blocks.
class PhiloxStream
{
  public:
    using result_type = std::uint32_t;

    PhiloxStream(std::uint64_t seed, std::uint64_t stream_id)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          stream_lo_(static_cast<std::uint32_t>(stream_id)),
          stream_hi_(static_cast<std::uint32_t>(stream_id >> 32))
    {
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()()
    {
        if (used_ == 4) {
            buf_ = Philox4x32::block({block_lo_, block_hi_, stream_lo_, stream_hi_}, key_);
            if (++block_lo_ == 0)
                ++block_hi_;
            used_ = 0;
        }
        return buf_[used_++];
    }

    /// Uniform double in the open interval (0, 1) with 53 random bits.
    double uniform()
    {
        const std::uint64_t a = (*this)() >> 5;
        const std::uint64_t b = (*this)() >> 6;
        return (static_cast<double>((a << 26) | b) + 0.5) * 0x1.0p-53;
    }

  private:
    Philox4x32::Key key_;
    std::uint32_t stream_lo_;
    std::uint32_t stream_hi_;
    std::uint32_t block_lo_ = 0;
    std::uint32_t block_hi_ = 0;
    Philox4x32::Counter buf_{};
    int used_ = 4;
};

}  // namespace relay_sinr
