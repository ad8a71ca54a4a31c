#include "gw/restrict.hpp"

#include <algorithm>
#include <map>

namespace gw {

namespace {

// Pullback sheaf H0 ×_{G0} R of a G-sheaf along the inclusion: the fiber of
// the total space over the carrier, with the transported action.
EqSheaf pullback_sheaf(const RepleteInclusion& inc, const EqSheaf& r)
{
    Mask fib = 0;
    for (int e = 0; e < r.n_elem(); ++e)
        if (has(inc.h0, r.over[e]))
            fib |= bit(e);
    FinSpace total = subspace(r.total, fib);

    std::vector<int> orig(total.size());
    for (int e = 0; e < r.n_elem(); ++e)
        if (has(fib, e))
            orig[total.index_of(r.total.name(e))] = e;

    EqSheaf pb;
    pb.gpd = inc.sub;
    pb.total = total;
    pb.over.resize(total.size());
    for (int e = 0; e < total.size(); ++e)
        pb.over[e] = inc.obj_from_g(r.over[orig[e]]);
    pb.act.assign(inc.sub.n_arr(), std::vector<int>(total.size(), -1));
    for (int ha = 0; ha < inc.sub.n_arr(); ++ha) {
        int ga = inc.arr_to_g[ha];
        for (int e = 0; e < total.size(); ++e) {
            if (inc.sub.dom(ha) != pb.over[e])
                continue;
            int img = r.act[ga][orig[e]];
            pb.act[ha][e] = total.index_of(r.total.name(img));
        }
    }
    return pb;
}

// H-site class -> G-site class along the inclusion of principal sheaves.
std::vector<int> class_embedding(const RepleteInclusion& inc, const GunSheaf& hgun,
                                 const GunSheaf& ggun)
{
    std::vector<int> out(hgun.n_classes(), -1);
    for (int c = 0; c < hgun.n_classes(); ++c) {
        int ga = inc.arr_to_g[hgun.rep_arrow[c]];
        out[c] = ggun.class_of[ga];
        expect(out[c] != -1, Errc::internal, "restricted class lost in the ambient sheaf");
    }
    return out;
}

// Memoizes the object-level work of the site functor across a morphism
// sweep. A cache hit returns an object that already passed the full
// verification in the corresponding compute_* routine.
class Restrictor {
public:
    explicit Restrictor(const RepleteInclusion& inc) : inc_(inc) {}

    SiteObject restricted(const SiteObject& a)
    {
        auto key = std::make_pair(a.sub.u, a.sub.n);
        if (auto it = r_.find(key); it != r_.end())
            return it->second;
        SiteObject out = compute_restricted(a);
        r_.emplace(key, out);
        return out;
    }

    SiteObject saturated(const SiteObject& b)
    {
        auto key = std::make_pair(b.sub.u, b.sub.n);
        if (auto it = j_.find(key); it != j_.end())
            return it->second;
        SiteObject out = compute_saturated(b);
        j_.emplace(key, out);
        return out;
    }

    TSet restricted_tset(const TSet& t)
    {
        SiteObject rsrc = restricted(t.source);
        SiteObject rtgt = restricted(t.target);
        Mask rt = inc_.arr_mask_from_g(t.t);
        TSet out{rsrc, rtgt, rt};
        expect(is_valid_tset(inc_.sub, rsrc, rtgt, rt), Errc::internal,
               "restricted arrow set is not a valid T-set");

        // the restricted graph agrees with the restriction of the graph
        EqMap gg = tset_graph(inc_.ambient, t);
        EqMap hg = tset_graph(inc_.sub, out);
        std::vector<int> src_emb = class_embedding(inc_, rsrc.gun(), t.source.gun());
        std::vector<int> tgt_emb = class_embedding(inc_, rtgt.gun(), t.target.gun());
        for (int c = 0; c < rsrc.gun().n_classes(); ++c)
            expect(gg.graph[src_emb[c]] == tgt_emb[hg.graph[c]], Errc::internal,
                   "restricted T-set graph disagrees with the restricted graph");
        return out;
    }

    TSet vhat(const SiteObject& a)
    {
        auto key = std::make_pair(a.sub.u, a.sub.n);
        if (auto it = v_.find(key); it != v_.end())
            return it->second;

        const FinGroupoid& g = inc_.ambient;
        SiteObject ia = restricted(a);
        SiteObject jia = saturated(ia);

        Mask tv = jia.sub.n & g.cod_preimage(a.sub.u);
        TSet out{a, jia, tv};
        expect(is_valid_tset(g, a, jia, tv), Errc::internal, "comparison arrow set invalid");

        // derived realization check: the graph is [f]_N -> [f]_N̄
        EqMap graph = tset_graph(g, out);
        for (int f = 0; f < g.n_arr(); ++f) {
            int c = a.gun().class_of[f];
            if (c == -1)
                continue;
            expect(jia.gun().class_of[f] == graph.graph[c], Errc::internal,
                   "comparison graph is not the coarsening map");
        }

        // I sends the comparison to an identity
        TSet r = restricted_tset(out);
        expect(r.source.sub == ia.sub && r.target.sub == ia.sub && r.t == ia.sub.n,
               Errc::internal, "restricted comparison is not the identity T-set");
        v_.emplace(key, out);
        return out;
    }

    LiftResult lift(const SiteObject& a, const SiteObject& b, const TSet& t_h)
    {
        const FinGroupoid& g = inc_.ambient;
        SiteObject ia = restricted(a);
        SiteObject ib = restricted(b);
        expect(t_h.source.sub == ia.sub && t_h.target.sub == ib.sub, Errc::invalid_input,
               "morphism is not between the restricted objects");
        expect(is_valid_tset(inc_.sub, t_h.source, t_h.target, t_h.t), Errc::invalid_input,
               "input morphism is not a valid T-set");

        Mask t_g = inc_.arr_mask_to_g(t_h.t);
        Mask p_star = 0;
        for (Mask p : g.arrows.opens())
            if ((p & inc_.h1 & ~t_g) == 0)
                p_star |= p;
        Mask s = g.cod_preimage(a.sub.u) & p_star;

        LiftResult res;
        res.s = s;
        res.vhat_leg = vhat(b);
        res.s_hat = partial_tset(g, a, res.vhat_leg.target, s);
        res.incl_leg = canonical_embedding_tset(g, res.s_hat.source, a);

        // S restricts exactly to T
        expect((s & inc_.h1) == t_g, Errc::internal, "lift does not restrict to the input");

        // I sends the subobject inclusion leg to an identity
        TSet r_incl = restricted_tset(res.incl_leg);
        expect(r_incl.source.sub == ia.sub && r_incl.target.sub == ia.sub &&
                   r_incl.t == ia.sub.n,
               Errc::internal, "restricted inclusion leg is not the identity T-set");

        // I(ŝ) = t_H, which is the commuting square up to the identity legs
        TSet r_shat = restricted_tset(res.s_hat);
        expect(r_shat.source.sub == ia.sub && r_shat.target.sub == ib.sub, Errc::internal,
               "restricted lift is not between the restricted objects");
        expect(r_shat.t == t_h.t, Errc::internal, "restricted lift differs from the input");
        expect(tset_graph(inc_.sub, r_shat) == tset_graph(inc_.sub, t_h), Errc::internal,
               "restricted lift graph differs from the input graph");
        return res;
    }

private:
    SiteObject compute_restricted(const SiteObject& a)
    {
        OpenSubgroupoid rsub{inc_.obj_mask_from_g(a.sub.u), inc_.arr_mask_from_g(a.sub.n)};
        SiteObject out = make_site_object(inc_.sub, rsub);

        // the restricted principal sheaf is isomorphic to the pullback sheaf
        EqSheaf pb = pullback_sheaf(inc_, a.gun().sheaf);
        expect(validate_eqsheaf(pb).all_ok(), Errc::internal, "pullback sheaf invalid");

        const GunSheaf& hgun = out.gun();
        std::vector<int> phi(hgun.n_classes(), -1);
        for (int c = 0; c < hgun.n_classes(); ++c) {
            int ga = inc_.arr_to_g[hgun.rep_arrow[c]];
            int gc = a.gun().class_of[ga];
            expect(gc != -1, Errc::internal, "class not present in ambient sheaf");
            phi[c] = pb.total.index_of(a.gun().sheaf.total.name(gc));
            expect(phi[c] != -1, Errc::internal, "class image outside the pullback");
        }
        std::string why;
        expect(is_eq_map(hgun.sheaf, pb, phi, &why), Errc::internal,
               "comparison to the pullback is not a sheaf morphism: " + why);
        expect(pb.n_elem() == hgun.n_classes(), Errc::internal,
               "pullback and restriction differ in size");
        std::vector<int> inv(pb.n_elem(), -1);
        for (int c = 0; c < hgun.n_classes(); ++c) {
            expect(inv[phi[c]] == -1, Errc::internal, "comparison not injective");
            inv[phi[c]] = c;
        }
        expect(is_eq_map(pb, hgun.sheaf, inv, &why), Errc::internal,
               "inverse comparison is not a sheaf morphism: " + why);
        return out;
    }

    SiteObject compute_saturated(const SiteObject& b)
    {
        const FinGroupoid& g = inc_.ambient;
        Mask m_g = inc_.arr_mask_to_g(b.sub.n);

        Mask n = 0;
        for (Mask k : g.arrows.opens())
            if ((k & inc_.h1 & ~m_g) == 0)
                n |= k;
        Mask u = g.dom_image(n) | g.cod_image(n);
        OpenSubgroupoid sub{u, n};
        if (auto why = check_open_subgroupoid(g, sub))
            fail(Errc::internal, "saturation is not an open subgroupoid: " + *why);

        SiteObject out = make_site_object(g, sub);
        // exact right inverse: restricting the saturation gives back (V,M)
        expect(inc_.obj_mask_from_g(u) == b.sub.u && inc_.arr_mask_from_g(n) == b.sub.n,
               Errc::internal, "saturation does not restrict back to its input");
        return out;
    }

    const RepleteInclusion& inc_;
    std::map<std::pair<Mask, Mask>, SiteObject> r_, j_;
    std::map<std::pair<Mask, Mask>, TSet> v_;
};

} // namespace

SiteObject restrict_object(const RepleteInclusion& inc, const SiteObject& a)
{
    return Restrictor(inc).restricted(a);
}

TSet restrict_tset(const RepleteInclusion& inc, const TSet& t)
{
    return Restrictor(inc).restricted_tset(t);
}

SiteObject saturate_object(const RepleteInclusion& inc, const SiteObject& b)
{
    return Restrictor(inc).saturated(b);
}

TSet comparison_vhat(const RepleteInclusion& inc, const SiteObject& a)
{
    return Restrictor(inc).vhat(a);
}

std::vector<TSet> comparison_vhats(const RepleteInclusion& inc,
                                   const std::vector<SiteObject>& objs)
{
    Restrictor ctx(inc);
    std::vector<TSet> out;
    for (const SiteObject& a : objs)
        out.push_back(ctx.vhat(a));
    return out;
}

LiftResult lift_tset(const RepleteInclusion& inc, const SiteObject& a, const SiteObject& b,
                     const TSet& t_h)
{
    return Restrictor(inc).lift(a, b, t_h);
}

std::vector<Mask> replete_subsets(const FinGroupoid& g)
{
    std::vector<Mask> out;
    Mask full = g.objects.full();
    for (Mask s = 0;; ++s) {
        if ((s & ~full) == 0 && is_replete(g, s))
            out.push_back(s);
        if (s == full)
            break;
    }
    std::sort(out.begin(), out.end(), mask_lex_less);
    return out;
}

SiteFunctorReport verify_site_restriction(const RepleteInclusion& inc)
{
    SiteFunctorReport rep;
    rep.inclusion = inc;
    auto flag = [&](bool ok, const std::string& msg) {
        if (!ok)
            rep.problems.push_back(msg);
        return ok;
    };

    Restrictor ctx(inc);
    std::vector<SiteObject> sg = site_objects(inc.ambient);
    std::vector<SiteObject> sh = site_objects(inc.sub);
    rep.objects_g = static_cast<int>(sg.size());
    rep.objects_h = static_cast<int>(sh.size());

    bool surj = true;
    for (const SiteObject& b : sh) {
        SiteObject jb = ctx.saturated(b);
        SiteObject back = ctx.restricted(jb);
        surj &= flag(back.sub == b.sub, "I∘J is not the identity on an H-site object");
    }
    rep.essentially_surjective = surj;

    bool ident = true;
    for (const SiteObject& a : sg) {
        TSet r = ctx.restricted_tset(identity_tset(inc.ambient, a));
        SiteObject ia = ctx.restricted(a);
        rep.object_map.emplace_back(a.sub, ia.sub);
        ident &= flag(r.t == ia.sub.n && r.source.sub == ia.sub,
                      "identity T-set does not restrict to an identity");
    }
    rep.functorial = ident;

    bool full = true;
    for (const SiteObject& a : sg)
        for (const SiteObject& b : sg) {
            SiteObject ia = ctx.restricted(a);
            SiteObject ib = ctx.restricted(b);
            for (const TSet& th : enumerate_tsets(inc.sub, ia, ib)) {
                LiftWitness w;
                w.a = a.sub;
                w.b = b.sub;
                w.t_h = th.t;
                try {
                    LiftResult lift = ctx.lift(a, b, th);
                    w.s = lift.s;
                    w.ok = true;
                } catch (const Error& e) {
                    w.ok = false;
                    rep.problems.push_back(std::string("lift failed: ") + e.what());
                }
                full &= w.ok;
                rep.witnesses.push_back(w);
                ++rep.morphisms_lifted;
            }
        }
    rep.essentially_full = full;
    return rep;
}

} // namespace gw
