#ifndef GW_RESTRICT_HPP
#define GW_RESTRICT_HPP

#include <string>
#include <vector>

#include "gw/site.hpp"

namespace gw {

/// Object restriction along ι : H ↪ G, i.e. the site functor on objects:
/// (U,N) -> (U∩H0, N∩H1) in H's own indices. Verifies the isomorphism with
/// the pullback sheaf H0 ×_{G0} R before returning.
SiteObject restrict_object(const RepleteInclusion& inc, const SiteObject& a);

/// Morphism restriction: T -> T∩H1 between the restricted objects.
TSet restrict_tset(const RepleteInclusion& inc, const TSet& t);

/// Right inverse to restriction on objects: (V,M) of H saturates to
/// N = ∪{K open in G1 : K∩H1 ⊆ M}, U = d(N) ∪ c(N).
SiteObject saturate_object(const RepleteInclusion& inc, const SiteObject& b);

/// The canonical comparison A -> J(I(A)), realized by the arrow set
/// N̄ ∩ c^{-1}(U); its graph is [f]_N -> [f]_N̄ and I sends it to an
/// identity. Both facts are verified on every call.
TSet comparison_vhat(const RepleteInclusion& inc, const SiteObject& a);

/// Batched comparisons sharing one memoized restriction context.
std::vector<TSet> comparison_vhats(const RepleteInclusion& inc,
                                   const std::vector<SiteObject>& objs);

struct LiftResult {
    Mask s = 0;          // the lifted arrow set in G1
    TSet s_hat;          // from a subobject of A to J(I(B))
    TSet incl_leg;       // the subobject inclusion into A (zig-zag leg)
    TSet vhat_leg;       // the comparison B -> J(I(B)) (zig-zag leg)
};

/// Lift a morphism t_H : I(A) -> I(B) of the H-site to a partial-map
/// morphism of the G-site with S∩H1 = T and I(ŝ) = t_H.
LiftResult lift_tset(const RepleteInclusion& inc, const SiteObject& a, const SiteObject& b,
                     const TSet& t_h);

struct LiftWitness {
    OpenSubgroupoid a, b; // the G-site endpoints
    Mask t_h = 0;         // the H-morphism (H indices)
    Mask s = 0;           // the lifted arrow set (G indices)
    bool ok = false;
};

struct SiteFunctorReport {
    RepleteInclusion inclusion;
    bool essentially_surjective = false;
    bool essentially_full = false;
    bool functorial = false; // identity T-sets restrict to identities
    int objects_g = 0;
    int objects_h = 0;
    int morphisms_lifted = 0;
    // object-level samples of the functor: (A, I(A)) with I(A) in H indices
    std::vector<std::pair<OpenSubgroupoid, OpenSubgroupoid>> object_map;
    std::vector<LiftWitness> witnesses;
    std::vector<std::string> problems;

    bool all_ok() const { return essentially_surjective && essentially_full && functorial; }
};

/// Exhaustive verification that the induced site functor is essentially
/// surjective and essentially full, with zig-zags of length one per side.
SiteFunctorReport verify_site_restriction(const RepleteInclusion& inc);

/// All replete subsets of the object space, lex ordered.
std::vector<Mask> replete_subsets(const FinGroupoid& g);

} // namespace gw

#endif
