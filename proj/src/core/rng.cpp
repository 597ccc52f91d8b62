#include "qlab/core/rng.hpp"

#include <cmath>
#include <numbers>

#include "qlab/core/numeric.hpp"

namespace qlab::core {

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % span;
    std::uint64_t draw;
    do {
        draw = gen_();
    } while (draw >= limit);
    return lo + static_cast<std::int64_t>(draw % span);
}

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

std::uint64_t RngFactory::derive(std::string_view label, std::uint64_t index) const {
    return mix64(mix64(root_ ^ fnv1a64(label)) + index);
}

Rng RngFactory::stream(std::string_view label) const { return Rng(derive(label, 0)); }

Rng RngFactory::stream(std::string_view label, std::uint64_t index) const {
    return Rng(derive(label, index + 1));
}

RngFactory RngFactory::child(std::string_view label) const {
    return RngFactory(derive(label, 0x5eed));
}

} // namespace qlab::core
