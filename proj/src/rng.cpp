#include "pedyn/rng.hpp"

#include <cmath>
#include <numbers>

namespace pedyn {

double RngStream::normal() {
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 0.0) {
        u1 = uniform();
    }
    double r = std::sqrt(-2.0 * std::log(u1));
    return r * std::cos(2.0 * std::numbers::pi * u2);
}

std::size_t RngStream::index(std::size_t n) {
    if (n == 0) return 0;
    if (n == 1) return 0;
    const std::uint64_t range = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
    std::uint64_t v = gen_();
    while (v >= limit) {
        v = gen_();
    }
    return static_cast<std::size_t>(v % range);
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace

std::uint64_t derive_seed(std::uint64_t master, const std::string& tag) {
    return splitmix64(master ^ splitmix64(fnv1a(tag)));
}

} // namespace pedyn
