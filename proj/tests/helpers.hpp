#ifndef GW_TEST_HELPERS_HPP
#define GW_TEST_HELPERS_HPP

#include "gw/groupoid.hpp"

namespace gw::testing {

/// A groupoid with valid axioms and continuous structure maps whose domain
/// map is not open: an isomorphism pair a ≅ b plus an isolated object c,
/// objects carrying {∅,{a},{a,b},all} and arrows generated by
/// {1a},{f},{g},{1a,1b}. Then d({g}) = {b} is not open.
inline FinGroupoid non_open_groupoid()
{
    FinGroupoid g;
    g.objects = make_space({"a", "b", "c"}, {{"a"}, {"a", "b"}});
    g.arrows = make_space({"1a", "1b", "1c", "f", "g"},
                          {{"1a"}, {"f"}, {"g"}, {"1a", "1b"}});
    int i1a = g.arrows.index_of("1a"), i1b = g.arrows.index_of("1b");
    int i1c = g.arrows.index_of("1c"), if_ = g.arrows.index_of("f");
    int ig = g.arrows.index_of("g");
    int oa = g.objects.index_of("a"), ob = g.objects.index_of("b");
    int oc = g.objects.index_of("c");

    g.dom_.assign(5, -1);
    g.cod_.assign(5, -1);
    g.inv_.assign(5, -1);
    g.unit_.assign(3, -1);
    g.comp_.assign(5, std::vector<int>(5, -1));

    auto arrow = [&](int idx, int d, int c, int inv) {
        g.dom_[idx] = d;
        g.cod_[idx] = c;
        g.inv_[idx] = inv;
    };
    arrow(i1a, oa, oa, i1a);
    arrow(i1b, ob, ob, i1b);
    arrow(i1c, oc, oc, i1c);
    arrow(if_, oa, ob, ig);
    arrow(ig, ob, oa, if_);
    g.unit_[oa] = i1a;
    g.unit_[ob] = i1b;
    g.unit_[oc] = i1c;

    auto set = [&](int x, int y, int z) { g.comp_[x][y] = z; };
    set(i1a, i1a, i1a);
    set(i1b, i1b, i1b);
    set(i1c, i1c, i1c);
    set(if_, i1a, if_);
    set(i1b, if_, if_);
    set(ig, i1b, ig);
    set(i1a, ig, ig);
    set(ig, if_, i1a);
    set(if_, ig, i1b);
    return g;
}

} // namespace gw::testing

#endif
