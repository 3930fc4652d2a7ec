#pragma once

#include <array>
#include <cstdint>
#include <random>

namespace subpot::montecarlo {

/// Identifies one reproducible random stream.
struct RngState {
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;

    friend bool operator==(const RngState&, const RngState&) = default;
};

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
/// Key = seed, upper 64 counter bits = stream_id, lower 64 = block index,
/// so every (seed, stream_id) pair owns 2^64 blocks of four words.
class Philox4x32 {
public:
    using result_type = std::uint32_t;
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    explicit Philox4x32(RngState state = {});

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return 0xffffffffu; }
    result_type operator()();

    static Counter block(Counter counter, Key key);

private:
    Counter counter_{};
    Key key_{};
    Counter buffer_{};
    int used_ = 4;
};

/// Draws from one stream. Not thread-safe; give each worker its own.
class RandomStream {
public:
    explicit RandomStream(RngState state);

    /// Uniform on the open interval (0, 1) with 53 random bits.
    double uniform();
    double normal();
    double exponential();

private:
    Philox4x32 engine_;
    std::normal_distribution<double> normal_;
    std::exponential_distribution<double> exponential_;
};

}  // namespace subpot::montecarlo
