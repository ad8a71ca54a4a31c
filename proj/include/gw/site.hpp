#ifndef GW_SITE_HPP
#define GW_SITE_HPP

#include <memory>
#include <string>
#include <vector>

#include "gw/eqsheaf.hpp"

namespace gw {

/// An object of the site of principal sheaves: the pair (U,N) with its
/// sheaf cached alongside.
struct SiteObject {
    OpenSubgroupoid sub;
    std::shared_ptr<const GunSheaf> sheaf;

    const GunSheaf& gun() const { return *sheaf; }
    bool operator==(const SiteObject& o) const { return sub == o.sub; }
};

/// A site morphism, stored as its open arrow set T. Graphs on sheaf classes
/// are derived views (tset_graph), never the primary datum.
struct TSet {
    SiteObject source; // (U,N)
    SiteObject target; // (V,M)
    Mask t = 0;
};

SiteObject make_site_object(const FinGroupoid& g, const OpenSubgroupoid& sub);

/// All site objects of g, in subgroupoid enumeration order.
std::vector<SiteObject> site_objects(const FinGroupoid& g);

/// Violated T-set conditions, empty when valid. Labels:
/// "open", "sub_dinv", "i", "ii", "iii", "iv".
std::vector<std::string> tset_violations(const FinGroupoid& g, const OpenSubgroupoid& src,
                                         const OpenSubgroupoid& tgt, Mask t);

bool is_valid_tset(const FinGroupoid& g, const SiteObject& src, const SiteObject& tgt,
                   Mask t);

/// All valid T-sets between two site objects, ordered by their sorted
/// arrow lists.
std::vector<TSet> enumerate_tsets(const FinGroupoid& g, const SiteObject& src,
                                  const SiteObject& tgt);

/// Apply a T-set to a class of the source sheaf: [f] -> [f∘g] for g ∈ T
/// with c(g)=d(f). Checks independence of all choices.
int tset_apply(const FinGroupoid& g, const TSet& t, int cls);

/// The class map induced by a T-set, as an equivariant sheaf morphism.
EqMap tset_graph(const FinGroupoid& g, const TSet& t);

/// Composite in diagrammatic order: first t1 : A -> B, then t2 : B -> C.
/// Uses the arrow-set product law and validates it against the composed
/// graphs before returning.
TSet tset_compose(const FinGroupoid& g, const TSet& t1, const TSet& t2);

TSet identity_tset(const FinGroupoid& g, const SiteObject& a);

/// The canonical monic T-set from a site object into a larger one
/// (src.u ⊆ tgt.u, src.n ⊆ tgt.n): T = tgt.N ∩ c^{-1}(src.U).
TSet canonical_embedding_tset(const FinGroupoid& g, const SiteObject& src,
                              const SiteObject& tgt);

/// The subobject frame of a site object: open V ⊆ U closed under N, in
/// bijection with the action-closed open subsets of the sheaf.
struct SubobjectLattice {
    SiteObject object;
    std::vector<Mask> opens; // the admissible V, lex ordered
};

SubobjectLattice subobject_lattice(const FinGroupoid& g, const SiteObject& a);

/// V -> the corresponding subset of sheaf classes.
Mask sub_from_open(const SiteObject& a, Mask v);
/// Action-closed open class subset -> V, by pulling back along the
/// canonical section.
Mask open_from_sub(const FinGroupoid& g, const SiteObject& a, Mask classes);

/// The site object on a subobject V: (V, N restricted to V).
SiteObject subobject_site_object(const FinGroupoid& g, const SiteObject& a, Mask v);

/// Partial-map T-set: T satisfying (i),(iii),(iv) and c(T) ⊆ U determines a
/// morphism from the subobject (c(T), N↾_{c(T)}) of src to tgt.
TSet partial_tset(const FinGroupoid& g, const SiteObject& src, const SiteObject& tgt, Mask t);

} // namespace gw

#endif
