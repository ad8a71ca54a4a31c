#ifndef GW_REPORT_HPP
#define GW_REPORT_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "gw/groupoid.hpp"

namespace gw {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string details;
    double ms = 0.0; // human rendering only; machine output omits timings
};

struct RunReport {
    std::vector<CheckResult> checks;

    bool all_pass() const;
    /// Stable machine rendering: JSON array, no timings, byte-identical
    /// across runs on equal input.
    std::string render_machine() const;
    void render_human(std::ostream& out) const;
};

/// The full per-groupoid verification suite:
///   groupoid_valid          axioms, continuity, openness of d/c and m
///   open_subgroupoids       enumeration matches an all-subsets filter
///   tset_bijection          T-sets <-> sheaf morphisms, per object pair
///   subobject_frame         frame isomorphism round trips, meets, joins
///   guns_generate           lifted sections cover every small sheaf
///   m_intersection          m(V×W)∩H1 = m((V∩H1)×(W∩H1)) per inclusion
///   restriction_suite       I∘J identity, lifting with commuting squares
///   compose_gate            product law vs graph composition, all triples
///   vhat_gate               comparison realization vs coarsening graphs
///   domination_suite        closure laws, witnesses, both formulations
RunReport run_full_suite(const FinGroupoid& g, int gun_cap = 6);

} // namespace gw

#endif
