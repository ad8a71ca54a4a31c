#include "gw/site.hpp"

#include <algorithm>

namespace gw {

SiteObject make_site_object(const FinGroupoid& g, const OpenSubgroupoid& sub)
{
    return SiteObject{sub, std::make_shared<GunSheaf>(build_gun(g, sub))};
}

std::vector<SiteObject> site_objects(const FinGroupoid& g)
{
    std::vector<SiteObject> out;
    for (const OpenSubgroupoid& sub : enumerate_open_subgroupoids(g))
        out.push_back(make_site_object(g, sub));
    return out;
}

std::vector<std::string> tset_violations(const FinGroupoid& g, const OpenSubgroupoid& src,
                                         const OpenSubgroupoid& tgt, Mask t)
{
    std::vector<std::string> bad;
    if (!g.arrows.is_open(t))
        bad.push_back("open");
    if ((t & ~g.dom_preimage(tgt.u)) != 0)
        bad.push_back("sub_dinv");
    if ((g.compose_image(t, tgt.n) & ~t) != 0)
        bad.push_back("i");
    if (g.cod_image(t) != src.u)
        bad.push_back("ii");
    if ((g.compose_image(g.inv_image(t), t) & ~tgt.n) != 0)
        bad.push_back("iii");
    if ((g.compose_image(src.n, t) & ~t) != 0)
        bad.push_back("iv");
    return bad;
}

bool is_valid_tset(const FinGroupoid& g, const SiteObject& src, const SiteObject& tgt, Mask t)
{
    return tset_violations(g, src.sub, tgt.sub, t).empty();
}

std::vector<TSet> enumerate_tsets(const FinGroupoid& g, const SiteObject& src,
                                  const SiteObject& tgt)
{
    std::vector<Mask> ts;
    for (Mask t : g.arrows.opens())
        if (is_valid_tset(g, src, tgt, t))
            ts.push_back(t);
    std::sort(ts.begin(), ts.end(), mask_lex_less);
    std::vector<TSet> out;
    for (Mask t : ts)
        out.push_back(TSet{src, tgt, t});
    return out;
}

int tset_apply(const FinGroupoid& g, const TSet& t, int cls)
{
    const GunSheaf& sgun = t.source.gun();
    const GunSheaf& tgun = t.target.gun();
    expect(cls >= 0 && cls < sgun.n_classes(), Errc::invalid_input, "no such class");

    int result = -1;
    for (int f = 0; f < g.n_arr(); ++f) {
        if (sgun.class_of[f] != cls)
            continue;
        bool seen = false;
        for (int w : bits_of(t.t)) {
            if (g.cod(w) != g.dom(f))
                continue;
            seen = true;
            int val = tgun.class_of[g.comp(f, w)];
            expect(val != -1, Errc::internal, "composite leaves d^{-1}(V)");
            expect(result == -1 || result == val, Errc::internal,
                   "T-set application depends on the choice of witness");
            result = val;
        }
        expect(seen, Errc::no_composable_witness,
               "no arrow of T composes with " + g.arrows.name(f));
    }
    expect(result != -1, Errc::no_composable_witness, "class has no representative");
    return result;
}

EqMap tset_graph(const FinGroupoid& g, const TSet& t)
{
    std::vector<int> graph(t.source.gun().n_classes());
    for (int c = 0; c < t.source.gun().n_classes(); ++c)
        graph[c] = tset_apply(g, t, c);
    return EqMap{graph};
}

TSet identity_tset(const FinGroupoid& g, const SiteObject& a)
{
    TSet t{a, a, a.sub.n};
    expect(is_valid_tset(g, a, a, t.t), Errc::internal, "identity T-set invalid");
    return t;
}

TSet tset_compose(const FinGroupoid& g, const TSet& t1, const TSet& t2)
{
    expect(t1.target == t2.source, Errc::object_mismatch,
           "composition requires matching middle object");

    // product law: arrows g1∘g2 with g1 ∈ T1, g2 ∈ T2 composable
    Mask t = g.compose_image(t1.t, t2.t);
    TSet out{t1.source, t2.target, t};
    expect(is_valid_tset(g, out.source, out.target, t), Errc::internal,
           "composite arrow set is not a valid T-set");

    // validated against the function-composition oracle on every call
    EqMap lhs = tset_graph(g, out);
    EqMap f1 = tset_graph(g, t1);
    EqMap f2 = tset_graph(g, t2);
    for (int c = 0; c < t1.source.gun().n_classes(); ++c)
        expect(lhs.graph[c] == f2.graph[f1.graph[c]], Errc::internal,
               "product law disagrees with function composition");
    return out;
}

TSet canonical_embedding_tset(const FinGroupoid& g, const SiteObject& src,
                              const SiteObject& tgt)
{
    expect((src.sub.u & ~tgt.sub.u) == 0 && (src.sub.n & ~tgt.sub.n) == 0,
           Errc::invalid_input, "embedding requires src ⊆ tgt");
    Mask t = tgt.sub.n & g.cod_preimage(src.sub.u);
    TSet out{src, tgt, t};
    expect(is_valid_tset(g, src, tgt, t), Errc::internal, "canonical embedding invalid");
    return out;
}

SubobjectLattice subobject_lattice(const FinGroupoid& g, const SiteObject& a)
{
    SubobjectLattice lat;
    lat.object = a;
    for (Mask v : g.objects.opens()) {
        if ((v & ~a.sub.u) != 0)
            continue;
        // closed under N: x ∈ V and f : x -> y in N imply y ∈ V
        bool closed = true;
        for (int f : bits_of(a.sub.n))
            if (has(v, g.dom(f)) && !has(v, g.cod(f)))
                closed = false;
        if (closed)
            lat.opens.push_back(v);
    }
    std::sort(lat.opens.begin(), lat.opens.end(), mask_lex_less);
    return lat;
}

Mask sub_from_open(const SiteObject& a, Mask v)
{
    const GunSheaf& gun = a.gun();
    const FinGroupoid& g = gun.sheaf.gpd;
    Mask out = 0;
    for (int f = 0; f < g.n_arr(); ++f)
        if (gun.class_of[f] != -1 && has(v, g.dom(f)))
            out |= bit(gun.class_of[f]);
    return out;
}

Mask open_from_sub(const FinGroupoid& g, const SiteObject& a, Mask classes)
{
    Mask v = 0;
    for (int x : bits_of(a.sub.u))
        if (has(classes, a.gun().canonical[x]))
            v |= bit(x);
    (void)g;
    return v;
}

SiteObject subobject_site_object(const FinGroupoid& g, const SiteObject& a, Mask v)
{
    Mask n = a.sub.n & g.dom_preimage(v) & g.cod_preimage(v);
    OpenSubgroupoid sub{v, n};
    if (auto why = check_open_subgroupoid(g, sub))
        fail(Errc::invalid_input, "V does not carry a subobject: " + *why);
    return make_site_object(g, sub);
}

TSet partial_tset(const FinGroupoid& g, const SiteObject& src, const SiteObject& tgt, Mask t)
{
    std::vector<std::string> bad = tset_violations(g, src.sub, tgt.sub, t);
    // condition (ii) is relaxed to c(T) ⊆ U
    std::erase(bad, std::string("ii"));
    Mask ct = g.cod_image(t);
    if ((ct & ~src.sub.u) != 0)
        bad.push_back("ii'");
    if (!bad.empty()) {
        std::string msg = "partial T-set violates:";
        for (const auto& b : bad)
            msg += " " + b;
        fail(Errc::condition_violated, msg);
    }
    SiteObject dom = subobject_site_object(g, src, ct);
    TSet out{dom, tgt, t};
    expect(is_valid_tset(g, dom, tgt, t), Errc::internal,
           "partial T-set not valid from its subobject");
    return out;
}

} // namespace gw
