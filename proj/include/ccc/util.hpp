#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace ccc {

// Thrown when an operation's input violates a documented precondition.
struct bad_input : std::runtime_error {
    explicit bad_input(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when an internal structural invariant fails; indicates a bug or an
// input outside the supported envelope that slipped past validation.
struct structural_error : std::logic_error {
    explicit structural_error(const std::string& what) : std::logic_error(what) {}
};

// Thrown when a request exceeds the supported problem scale.
struct scale_refusal : std::runtime_error {
    explicit scale_refusal(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool cond, const std::string& what) {
    if (!cond) throw bad_input(what);
}

inline void ensure(bool cond, const std::string& what) {
    if (!cond) throw structural_error(what);
}

template <typename T>
bool contains(const std::vector<T>& v, const T& x) {
    return std::find(v.begin(), v.end(), x) != v.end();
}

template <typename T>
void sort_unique(std::vector<T>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Deterministic 64-bit mix, used for hashing composite keys.
inline std::uint64_t hash_mix(std::uint64_t h, std::uint64_t x) {
    x *= 0x9e3779b97f4a7c15ULL;
    x ^= x >> 32;
    h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

// xorshift-based deterministic RNG for reproducible randomized tests.
struct rng64 {
    std::uint64_t s;
    explicit rng64(std::uint64_t seed) : s(seed ? seed : 0x243f6a8885a308d3ULL) {}
    std::uint64_t next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
    // uniform in [0, n)
    std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }
    bool coin() { return next() & 1; }
};

}  // namespace ccc
