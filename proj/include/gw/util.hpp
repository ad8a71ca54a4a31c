#ifndef GW_UTIL_HPP
#define GW_UTIL_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace gw {

// Point subsets of a finite space, as bitmasks over point indices.
// Every space in the library is capped at 64 points.
using Mask = std::uint64_t;

constexpr Mask bit(int i) { return Mask{1} << i; }
constexpr bool has(Mask m, int i) { return (m >> i) & Mask{1}; }
inline int popcount(Mask m) { return __builtin_popcountll(m); }

inline std::vector<int> bits_of(Mask m)
{
    std::vector<int> out;
    while (m) {
        int i = __builtin_ctzll(m);
        out.push_back(i);
        m &= m - 1;
    }
    return out;
}

// Order masks by their ascending index sequences (shorter prefix first).
// Point indices are assigned in lexicographic name order, so this agrees
// with comparing the sorted name lists of the two subsets.
inline bool mask_lex_less(Mask a, Mask b)
{
    while (a && b) {
        int ia = __builtin_ctzll(a);
        int ib = __builtin_ctzll(b);
        if (ia != ib)
            return ia < ib;
        a &= a - 1;
        b &= b - 1;
    }
    return !a && b;
}

enum class Errc {
    invalid_subbasis,
    invalid_partition,
    invalid_subset,
    target_mismatch,
    not_open_groupoid,
    not_replete,
    unknown_point,
    invalid_subgroupoid,
    ambient_mismatch,
    not_a_section,
    not_continuous,
    object_mismatch,
    condition_violated,
    no_composable_witness,
    invalid_input,
    parse_error,
    validation_error,
    unknown_preset,
    too_large,
    internal
};

class Error : public std::runtime_error {
public:
    Error(Errc c, const std::string& msg) : std::runtime_error(msg), code(c) {}
    Errc code;
};

[[noreturn]] inline void fail(Errc c, const std::string& msg) { throw Error(c, msg); }

inline void expect(bool cond, Errc c, const std::string& msg)
{
    if (!cond)
        fail(c, msg);
}

// splitmix64; seeded instance generation must not depend on the standard
// library's engine implementations.
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next()
    {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }
};

} // namespace gw

#endif
