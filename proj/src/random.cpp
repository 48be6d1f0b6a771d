#include "rsm/random.hpp"

namespace rsm {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

namespace {

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

Rng rng_substream(std::uint64_t master, std::uint64_t day, std::string_view purpose) {
    std::uint64_t h = splitmix64(master);
    h = splitmix64(h ^ day);
    h = splitmix64(h ^ fnv1a(purpose));
    return Rng(h);
}

std::uint64_t replication_seed(std::uint64_t master, std::uint64_t rep) {
    if (rep == 0) return master;
    return splitmix64(splitmix64(master) ^ (rep * 0xd1b54a32d192ed03ULL));
}

}  // namespace rsm
