#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace hrla {

/// Philox4x32-10 block function (Salmon et al., "Parallel random numbers:
/// as easy as 1, 2, 3"). Maps a 128-bit counter and a 64-bit key to 128
/// pseudorandom bits.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key) noexcept;

/// Counter-based stream of uniforms and standard normals.
///
/// The stream is identified by a 64-bit key and a 64-bit stream id; block j of
/// the stream is philox4x32(counter = (j, stream id), key). Output depends only
/// on (key, stream id, draw index), never on threading or platform.
class RandomStream {
public:
    RandomStream(std::uint64_t key, std::uint64_t stream_id) noexcept;

    std::uint64_t next_u64() noexcept;
    /// Uniform on the open interval (0, 1) with 53 random bits.
    double uniform() noexcept;
    /// Standard normal via Box-Muller; pairs are consumed in order.
    double normal() noexcept;
    void fill_normal(std::span<double> out) noexcept;

    std::uint64_t key() const noexcept { return key_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }

private:
    void refill() noexcept;

    std::uint64_t key_;
    std::uint64_t stream_id_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buffer_{};
    unsigned used_ = 4; // 32-bit words consumed from buffer_
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

/// Domain tag mixed into the key of every harness substream.
inline constexpr std::uint64_t kSubstreamDomain = 0x48524c41'5f534d50ULL; // "HRLA_SMP"

/// Stream for chain `sample` of run `run` under `master_seed`.
///
/// Derivation (stable): key = splitmix64(master_seed XOR kSubstreamDomain),
/// stream id = (run << 32) | sample. Distinct (run, sample) pairs occupy
/// disjoint Philox counter ranges. run and sample must fit in 32 bits.
RandomStream substream(std::uint64_t master_seed, std::uint64_t run, std::uint64_t sample);

/// SplitMix64 finalizer (bijective 64-bit mix).
std::uint64_t splitmix64(std::uint64_t x) noexcept;

} // namespace hrla
