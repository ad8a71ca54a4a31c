#ifndef GW_GROUPOID_HPP
#define GW_GROUPOID_HPP

#include <optional>
#include <string>
#include <vector>

#include "gw/fintop.hpp"

namespace gw {

/// A groupoid object in finite spaces: object space G0, arrow space G1,
/// domain/codomain/unit/inverse maps and an explicit composition table.
/// Structural well-formedness (totality, index ranges) is enforced here;
/// the axioms are checked by validate_groupoid so that broken candidates
/// can be represented and diagnosed.
struct FinGroupoid {
    FinSpace objects; // G0
    FinSpace arrows;  // G1
    std::vector<int> dom_, cod_; // arrow -> object
    std::vector<int> unit_;      // object -> arrow
    std::vector<int> inv_;       // arrow -> arrow
    std::vector<std::vector<int>> comp_; // comp_[g2][g1] = g2∘g1, -1 if undefined

    int n_obj() const { return objects.size(); }
    int n_arr() const { return arrows.size(); }
    int dom(int a) const { return dom_[a]; }
    int cod(int a) const { return cod_[a]; }
    int unit(int x) const { return unit_[x]; }
    int inv(int a) const { return inv_[a]; }
    int comp(int g2, int g1) const { return comp_[g2][g1]; } // g2 ∘ g1

    CtsMap dom_map() const { return CtsMap(arrows, objects, dom_); }
    CtsMap cod_map() const { return CtsMap(arrows, objects, cod_); }
    CtsMap unit_map() const { return CtsMap(objects, arrows, unit_); }
    CtsMap inv_map() const { return CtsMap(arrows, arrows, inv_); }

    Mask dom_preimage(Mask objs) const;
    Mask cod_preimage(Mask objs) const;
    Mask dom_image(Mask arrs) const;
    Mask cod_image(Mask arrs) const;
    Mask inv_image(Mask arrs) const;

    /// m(A ×_{G0} B) = { a∘b : a ∈ A, b ∈ B, dom(a) = cod(b) }.
    Mask compose_image(Mask a, Mask b) const;

    bool operator==(const FinGroupoid& o) const;

    void check_shape() const; // sizes and index ranges
};

struct GroupoidReport {
    bool axioms_ok = false;
    bool continuity_ok = false;
    bool is_open = false;
    bool composition_open = false;
    std::vector<std::string> problems;

    bool all_ok() const { return axioms_ok && continuity_ok && is_open && composition_open; }
};

/// The pair (U,N): an open arrow set closed under composition and inverse,
/// with U = d(N) = c(N). Stored as masks relative to an ambient groupoid.
struct OpenSubgroupoid {
    Mask u = 0; // object subset
    Mask n = 0; // arrow subset

    bool operator==(const OpenSubgroupoid& o) const { return u == o.u && n == o.n; }
    bool operator<(const OpenSubgroupoid& o) const
    {
        if (u != o.u)
            return mask_lex_less(u, o.u);
        return mask_lex_less(n, o.n);
    }
};

/// Continuous functor between groupoids, as object/arrow point maps.
/// The constructor validates functoriality and continuity.
struct GroupoidMorphism {
    FinGroupoid source;
    FinGroupoid target;
    std::vector<int> f0; // object map
    std::vector<int> f1; // arrow map

    GroupoidMorphism(FinGroupoid src, FinGroupoid tgt, std::vector<int> obj_map,
                     std::vector<int> arr_map);
};

/// A replete subgroupoid inclusion H ↪ G: carrier objects closed under
/// isomorphisms, full induced arrow set, subspace topologies on both.
struct RepleteInclusion {
    FinGroupoid ambient;     // G
    Mask h0 = 0;             // carrier objects in G indices
    Mask h1 = 0;             // induced arrows in G indices
    FinGroupoid sub;         // H with subspace topologies
    std::vector<int> obj_to_g; // H object index -> G object index
    std::vector<int> arr_to_g; // H arrow index -> G arrow index

    int obj_from_g(int gx) const;
    int arr_from_g(int ga) const;
    Mask obj_mask_to_g(Mask hm) const;
    Mask arr_mask_to_g(Mask hm) const;
    Mask obj_mask_from_g(Mask gm) const; // intersects with h0
    Mask arr_mask_from_g(Mask gm) const; // intersects with h1

    GroupoidMorphism inclusion() const;
};

GroupoidReport validate_groupoid(const FinGroupoid& g);

/// All pairs (U,N), lexicographically ordered. Requires an open groupoid.
std::vector<OpenSubgroupoid> enumerate_open_subgroupoids(const FinGroupoid& g);

/// Checks the defining (U,N) conditions; nullopt when valid, else a reason.
std::optional<std::string> check_open_subgroupoid(const FinGroupoid& g,
                                                  const OpenSubgroupoid& sub);

RepleteInclusion replete_subgroupoid(const FinGroupoid& g, Mask h0);
RepleteInclusion replete_subgroupoid_named(const FinGroupoid& g,
                                           const std::vector<std::string>& names);

/// Least superset of s closed under isomorphisms.
Mask replete_closure(const FinGroupoid& g, Mask s);
bool is_replete(const FinGroupoid& g, Mask s, int* witness_arrow = nullptr);

struct FibrationResult {
    bool fibration = false;
    int missing_object = -1; // source object y with an unliftable arrow
    int missing_arrow = -1;  // the ambient arrow h into f0(y)
};

FibrationResult is_fibration(const GroupoidMorphism& f);

/// Pullback of an open subgroupoid along a morphism:
/// (f0^{-1}(U), f1^{-1}(N)) as an open subgroupoid of the source.
OpenSubgroupoid pullback_open_subgroupoid(const GroupoidMorphism& f,
                                          const OpenSubgroupoid& sub);

} // namespace gw

#endif
