#ifndef GW_PRESETS_HPP
#define GW_PRESETS_HPP

#include <cstdint>
#include <string>

#include "gw/groupoid.hpp"

namespace gw {

FinGroupoid make_z2(); // one object *, arrows 1,s with s∘s=1, discrete
FinGroupoid make_d2(); // objects a,b, identities only, discrete
FinGroupoid make_i2(); // objects a,b, identities only, indiscrete both levels
FinGroupoid make_p2(); // pair groupoid on {a,b}, discrete

/// Build an instance from a spec string:
///   Z2 | D2 | I2 | P2
///   pair:<n>:discrete|indiscrete   pair groupoid on n points (n ≤ 4)
///   group:z<n>                     cyclic group of order n as one object (n ≤ 12)
///   action:z<k>:<n>                Z_k rotating n discrete points (n | k)
///   sum:<spec>+<spec>              disjoint union, atoms prefixed u0_/u1_
///   random                         seeded random open groupoid
/// Deterministic for a given spec and seed.
FinGroupoid generate_preset(const std::string& spec, std::uint64_t seed = 0);

/// Random open groupoid: action groupoids of cyclic homeomorphism groups
/// on random finite spaces, pair groupoids on random spaces, and disjoint
/// unions of those. Always validates as an open groupoid before returning.
FinGroupoid random_groupoid(std::uint64_t seed, int max_obj = 3, int max_arr = 10);

/// Disjoint union with atoms prefixed u0_/u1_.
FinGroupoid disjoint_union(const FinGroupoid& a, const FinGroupoid& b);

} // namespace gw

#endif
