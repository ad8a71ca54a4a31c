#ifndef GW_EQSHEAF_HPP
#define GW_EQSHEAF_HPP

#include <string>
#include <vector>

#include "gw/groupoid.hpp"

namespace gw {

/// An equivariant sheaf over a groupoid: a finite space R with a projection
/// to the objects and an arrow action. act[g][e] = -1 where undefined; the
/// action must be defined exactly when over(e) = dom(g).
struct EqSheaf {
    FinGroupoid gpd;
    FinSpace total;                     // R
    std::vector<int> over;              // element -> object (the map r)
    std::vector<std::vector<int>> act;  // act[arrow][element] -> element

    int n_elem() const { return total.size(); }
    int apply(int arrow, int elem) const { return act[arrow][elem]; }

    CtsMap r_map() const { return CtsMap(total, gpd.objects, over); }
    Mask fiber(int obj) const;

    void check_shape() const;
};

/// The principal sheaf of an open subgroupoid (U,N): classes of d^{-1}(U)
/// under f ~ g iff c(f)=c(g) and g^{-1}∘f ∈ N, with codomain projection and
/// composition action. Classes are named by their least member arrow.
struct GunSheaf {
    EqSheaf sheaf;
    OpenSubgroupoid base;
    std::vector<int> class_of;  // ambient arrow -> class, -1 outside d^{-1}(U)
    std::vector<int> rep_arrow; // class -> representative ambient arrow
    std::vector<int> canonical; // object -> class of [1_x], -1 outside U

    int n_classes() const { return sheaf.n_elem(); }
};

struct EqSheafReport {
    bool r_continuous = false;
    bool r_local_homeo = false;
    bool action_domain_ok = false; // defined exactly on d(g)=r(e)
    bool action_matches_cod = false;
    bool action_unit_ok = false;
    bool action_comp_ok = false;
    bool action_continuous = false;
    bool action_open = false;
    std::vector<std::string> problems;

    bool all_ok() const
    {
        return r_continuous && r_local_homeo && action_domain_ok && action_matches_cod &&
               action_unit_ok && action_comp_ok && action_continuous && action_open;
    }
};

/// A morphism of equivariant sheaves: continuous, fiber-preserving,
/// commuting with the actions. Stored as an element map.
struct EqMap {
    std::vector<int> graph;

    bool operator==(const EqMap& o) const { return graph == o.graph; }
    bool operator<(const EqMap& o) const { return graph < o.graph; }
};

/// A continuous section t : U -> R of r over an open U, as element choices.
struct Section {
    Mask u = 0;
    std::vector<int> choice; // object -> element, -1 outside U
};

struct SectionLift {
    OpenSubgroupoid nt; // the induced open subgroupoid (U, N_t)
    GunSheaf domain;    // the sheaf of (U, N_t)
    EqMap t_hat;        // injective morphism into R
};

GunSheaf build_gun(const FinGroupoid& g, const OpenSubgroupoid& sub);

EqSheafReport validate_eqsheaf(const EqSheaf& r);

Mask stalk(const EqSheaf& r, int obj);
Mask stalk_named(const EqSheaf& r, const std::string& obj);

/// Is phi a morphism of equivariant sheaves A -> B? (same ambient groupoid)
bool is_eq_map(const EqSheaf& a, const EqSheaf& b, const std::vector<int>& graph,
               std::string* why = nullptr);

/// All morphisms A -> B, in lexicographic graph order. Candidates are
/// generated orbitwise (equivariant maps are determined by orbit
/// representatives) and then verified against the full definition.
std::vector<EqMap> enumerate_eq_maps(const EqSheaf& a, const EqSheaf& b);

/// All continuous sections of r over all opens of G0, deterministic order.
std::vector<Section> enumerate_sections(const EqSheaf& r);

SectionLift section_to_morphism(const EqSheaf& r, const Section& t);

/// Do the images of all lifted local sections jointly cover R?
bool gun_cover_check(const EqSheaf& r);

/// Every valid equivariant sheaf over g with at most max_elems elements,
/// with fibers labeled canonically. Exhaustive at desk scale.
std::vector<EqSheaf> enumerate_eqsheaves(const FinGroupoid& g, int max_elems);

} // namespace gw

#endif
