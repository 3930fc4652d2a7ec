#include "subpot/random.hpp"

namespace subpot::montecarlo {

namespace {

constexpr std::uint32_t kM0 = 0xD2511F53u;
constexpr std::uint32_t kM1 = 0xCD9E8D57u;
constexpr std::uint32_t kW0 = 0x9E3779B9u;
constexpr std::uint32_t kW1 = 0xBB67AE85u;

void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo)
{
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

}  // namespace

Philox4x32::Philox4x32(RngState state)
    : counter_{0u, 0u, static_cast<std::uint32_t>(state.stream_id),
               static_cast<std::uint32_t>(state.stream_id >> 32)},
      key_{static_cast<std::uint32_t>(state.seed), static_cast<std::uint32_t>(state.seed >> 32)}
{
}

Philox4x32::Counter Philox4x32::block(Counter c, Key k)
{
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kM0, c[0], hi0, lo0);
        mulhilo(kM1, c[2], hi1, lo1);
        c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
        k[0] += kW0;
        k[1] += kW1;
    }
    return c;
}

Philox4x32::result_type Philox4x32::operator()()
{
    if (used_ == 4) {
        buffer_ = block(counter_, key_);
        if (++counter_[0] == 0) {
            ++counter_[1];
        }
        used_ = 0;
    }
    return buffer_[used_++];
}

RandomStream::RandomStream(RngState state) : engine_(state) {}

double RandomStream::uniform()
{
    const std::uint64_t hi = engine_();
    const std::uint64_t lo = engine_();
    const std::uint64_t bits = ((hi << 32) | lo) >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

double RandomStream::normal()
{
    return normal_(engine_);
}

double RandomStream::exponential()
{
    return exponential_(engine_);
}

}  // namespace subpot::montecarlo
