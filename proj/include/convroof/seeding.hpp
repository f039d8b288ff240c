#pragma once

#include <cstdint>

namespace convroof {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Independent stream seed for (master, a, b); used to pre-split RNG streams so
// results do not depend on evaluation order or thread count.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) {
    return splitmix64(splitmix64(master ^ splitmix64(a + 0x5851f42d4c957f2dULL)) ^
                      splitmix64(b + 0x14057b7ef767814fULL));
}

}  // namespace convroof
