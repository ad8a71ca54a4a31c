#ifndef GW_GALOIS_HPP
#define GW_GALOIS_HPP

#include <optional>
#include <string>
#include <vector>

#include "gw/site.hpp"

namespace gw {

/// A witness that x fails to dominate H0: an open subgroupoid, a pair of
/// N-closed opens V,W ⊆ U whose inclusion all of H0 satisfies, and an arrow
/// into x violating it.
struct DominationWitness {
    OpenSubgroupoid sub;
    Mask v = 0;
    Mask w = 0;
    int arrow = -1;
};

struct DominationQuery {
    int x = -1;
    Mask h0 = 0;
    bool result = false;
    std::optional<DominationWitness> witness;
};

/// Precomputed quantification data for domination checks over one groupoid:
/// for each open subgroupoid and each ordered pair of N-closed opens (V,W),
/// the set of objects y with c^{-1}(y) ∩ d^{-1}(V) ⊆ d^{-1}(W).
struct DominationTable {
    struct Entry {
        OpenSubgroupoid sub;
        Mask v, w;
        Mask satisfied; // objects satisfying the inclusion
    };
    std::vector<Entry> entries;
};

DominationTable domination_table(const FinGroupoid& g);

DominationQuery dominates(const FinGroupoid& g, int x, Mask h0);
DominationQuery dominates(const FinGroupoid& g, const DominationTable& tab, int x, Mask h0);
DominationQuery dominates_named(const FinGroupoid& g, const std::string& x,
                                const std::vector<std::string>& h0);

Mask gd_closure(const FinGroupoid& g, Mask h0);
Mask gd_closure(const FinGroupoid& g, const DominationTable& tab, Mask h0);

/// Alternative formulation through stalks of subobject pairs over all site
/// objects; must agree with the direct quantification.
bool dominates_via_stalks(const FinGroupoid& g, const std::vector<SiteObject>& site,
                          int x, Mask h0);

/// Requires a replete carrier; true iff it is closed under domination.
bool is_definable(const FinGroupoid& g, Mask h0);

struct GaloisReport {
    bool extensive = false;
    bool monotone = false;
    bool idempotent = false;
    bool replete = false;      // closures are closed under isomorphisms
    bool open_replete_closed = false;
    bool closed_replete_closed = false;
    bool witnesses_sound = false;
    bool cross_formulation = false; // direct vs stalk formulation agree
    int subsets_scanned = 0;
    bool sampled = false;
    std::vector<std::string> problems;

    bool all_ok() const
    {
        return extensive && monotone && idempotent && replete && open_replete_closed &&
               closed_replete_closed && witnesses_sound && cross_formulation;
    }
};

/// Closure-operator laws and the open/closed-inclusion consequences over
/// all subsets of G0 (a fixed-seed sample above the threshold).
GaloisReport verify_galois_laws(const FinGroupoid& g);

/// Re-validates a false query's witness independently.
bool witness_sound(const FinGroupoid& g, const DominationQuery& q);

} // namespace gw

#endif
