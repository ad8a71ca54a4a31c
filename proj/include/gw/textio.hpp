#ifndef GW_TEXTIO_HPP
#define GW_TEXTIO_HPP

#include <string>

#include "gw/groupoid.hpp"

namespace gw {

/// Parse the line-oriented groupoid description format.
///
/// Sections (entries may share the header line, separated by spaces):
///   objects: a b
///   arrows: f:a->b g:b->a 1a:a->a 1b:b->b
///   identity: a=1a b=1b
///   inverse: f=g g=f 1a=1a 1b=1b
///   compose: g.f=1a f.g=1b 1a.1a=1a ...        (x.y=z means x∘y=z)
///   topology_objects: discrete|indiscrete|basis
///   topology_arrows: discrete|indiscrete|basis
///   basis: a b        (generator set for the last topology_* section)
///
/// Comments start with '#'. Atom names use [A-Za-z0-9_*]. Axioms and
/// continuity are validated after parsing.
FinGroupoid parse_groupoid(const std::string& text);

/// Canonical serialization: sorted atoms, sorted table entries, topologies
/// rendered as discrete/indiscrete keywords or minimal-basis lines.
std::string serialize_groupoid(const FinGroupoid& g);

} // namespace gw

#endif
