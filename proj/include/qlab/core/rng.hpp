#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace qlab::core {

/// Deterministic random stream. The engine is mt19937_64 (fully specified by
/// the standard) and every distribution below is implemented here, so a given
/// seed produces the same draws on any platform and in any build.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [lo, hi], inclusive, exactly uniform via rejection.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

    /// Standard normal via Box-Muller; pairs are cached, so draw order is
    /// part of the stream contract.
    double normal();

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

std::uint64_t mix64(std::uint64_t x); // splitmix64 finalizer

/// Derives labeled substreams from one root seed. Adding a new label never
/// perturbs the draws of existing ones.
class RngFactory {
public:
    explicit RngFactory(std::uint64_t root_seed) : root_(root_seed) {}

    Rng stream(std::string_view label) const;
    Rng stream(std::string_view label, std::uint64_t index) const;
    RngFactory child(std::string_view label) const;

    std::uint64_t root_seed() const { return root_; }

private:
    std::uint64_t derive(std::string_view label, std::uint64_t index) const;
    std::uint64_t root_;
};

} // namespace qlab::core
