#include "gw/galois.hpp"

#include <algorithm>

#include "gw/groupoid.hpp"
#include "gw/restrict.hpp"

namespace gw {

DominationTable domination_table(const FinGroupoid& g)
{
    GroupoidReport rep = validate_groupoid(g);
    expect(rep.axioms_ok && rep.continuity_ok, Errc::validation_error, "invalid groupoid");
    expect(rep.is_open, Errc::not_open_groupoid, "groupoid is not open");

    DominationTable tab;
    for (const OpenSubgroupoid& sub : enumerate_open_subgroupoids(g)) {
        // N-closed opens V ⊆ U
        std::vector<Mask> closed;
        for (Mask v : g.objects.opens()) {
            if ((v & ~sub.u) != 0)
                continue;
            bool ok = true;
            for (int f : bits_of(sub.n))
                if (has(v, g.dom(f)) && !has(v, g.cod(f)))
                    ok = false;
            if (ok)
                closed.push_back(v);
        }
        for (Mask v : closed)
            for (Mask w : closed) {
                Mask dv = g.dom_preimage(v);
                Mask dw = g.dom_preimage(w);
                Mask sat = 0;
                for (int y = 0; y < g.n_obj(); ++y)
                    if ((g.cod_preimage(bit(y)) & dv & ~dw) == 0)
                        sat |= bit(y);
                tab.entries.push_back({sub, v, w, sat});
            }
    }
    return tab;
}

DominationQuery dominates(const FinGroupoid& g, const DominationTable& tab, int x, Mask h0)
{
    expect(x >= 0 && x < g.n_obj(), Errc::unknown_point, "object index out of range");
    expect((h0 & ~g.objects.full()) == 0, Errc::invalid_subset, "H0 not within objects");

    DominationQuery q;
    q.x = x;
    q.h0 = h0;
    for (const auto& e : tab.entries) {
        if ((h0 & ~e.satisfied) != 0 || has(e.satisfied, x))
            continue;
        // premise holds for H0 but fails at x; extract a violating arrow
        q.result = false;
        DominationWitness w;
        w.sub = e.sub;
        w.v = e.v;
        w.w = e.w;
        Mask viol = g.cod_preimage(bit(x)) & g.dom_preimage(e.v) & ~g.dom_preimage(e.w);
        w.arrow = bits_of(viol).front();
        q.witness = w;
        return q;
    }
    q.result = true;
    return q;
}

DominationQuery dominates(const FinGroupoid& g, int x, Mask h0)
{
    return dominates(g, domination_table(g), x, h0);
}

DominationQuery dominates_named(const FinGroupoid& g, const std::string& x,
                                const std::vector<std::string>& h0)
{
    int xi = g.objects.index_of(x);
    expect(xi >= 0, Errc::unknown_point, "unknown object \"" + x + "\"");
    return dominates(g, xi, g.objects.mask_of(h0));
}

Mask gd_closure(const FinGroupoid& g, const DominationTable& tab, Mask h0)
{
    Mask out = 0;
    for (int x = 0; x < g.n_obj(); ++x)
        if (dominates(g, tab, x, h0).result)
            out |= bit(x);
    return out;
}

Mask gd_closure(const FinGroupoid& g, Mask h0)
{
    return gd_closure(g, domination_table(g), h0);
}

bool dominates_via_stalks(const FinGroupoid& g, const std::vector<SiteObject>& site,
                          int x, Mask h0)
{
    for (const SiteObject& a : site) {
        SubobjectLattice lat = subobject_lattice(g, a);
        for (Mask v : lat.opens)
            for (Mask w : lat.opens) {
                Mask p = sub_from_open(a, v);
                Mask q = sub_from_open(a, w);
                bool premise = true;
                for (int y : bits_of(h0))
                    if ((p & stalk(a.gun().sheaf, y) & ~q) != 0)
                        premise = false;
                if (premise && (p & stalk(a.gun().sheaf, x) & ~q) != 0)
                    return false;
            }
    }
    return true;
}

bool is_definable(const FinGroupoid& g, Mask h0)
{
    int w = -1;
    if (!is_replete(g, h0, &w))
        fail(Errc::not_replete,
             "carrier is not replete; arrow " + g.arrows.name(w) + " leaves it");
    return gd_closure(g, h0) == h0;
}

bool witness_sound(const FinGroupoid& g, const DominationQuery& q)
{
    if (q.result || !q.witness)
        return false;
    const DominationWitness& w = *q.witness;
    if (check_open_subgroupoid(g, w.sub))
        return false;
    auto n_closed_open = [&](Mask v) {
        if (!g.objects.is_open(v) || (v & ~w.sub.u) != 0)
            return false;
        for (int f : bits_of(w.sub.n))
            if (has(v, g.dom(f)) && !has(v, g.cod(f)))
                return false;
        return true;
    };
    if (!n_closed_open(w.v) || !n_closed_open(w.w))
        return false;
    // premise: c^{-1}(H0) ∩ d^{-1}(V) ⊆ d^{-1}(W)
    if ((g.cod_preimage(q.h0) & g.dom_preimage(w.v) & ~g.dom_preimage(w.w)) != 0)
        return false;
    // the violating arrow breaks the conclusion at x
    return w.arrow >= 0 && w.arrow < g.n_arr() && g.cod(w.arrow) == q.x &&
           has(g.dom_preimage(w.v), w.arrow) && !has(g.dom_preimage(w.w), w.arrow);
}

GaloisReport verify_galois_laws(const FinGroupoid& g)
{
    GaloisReport rep;
    auto flag = [&](bool ok, const std::string& msg) {
        if (!ok)
            rep.problems.push_back(msg);
        return ok;
    };

    DominationTable tab = domination_table(g);
    std::vector<SiteObject> site = site_objects(g);

    std::vector<Mask> subsets;
    if (g.n_obj() <= 12) {
        for (Mask s = 0;; ++s) {
            subsets.push_back(s);
            if (s == g.objects.full())
                break;
        }
    } else {
        rep.sampled = true;
        Rng rng(0x67640001);
        for (int i = 0; i < 512; ++i)
            subsets.push_back(rng.next() & g.objects.full());
        std::sort(subsets.begin(), subsets.end());
        subsets.erase(std::unique(subsets.begin(), subsets.end()), subsets.end());
    }
    rep.subsets_scanned = static_cast<int>(subsets.size());

    std::vector<Mask> closures(subsets.size());
    bool ext = true, idem = true, repl = true, sound = true, cross = true;
    for (std::size_t i = 0; i < subsets.size(); ++i) {
        Mask s = subsets[i];
        Mask cl = gd_closure(g, tab, s);
        closures[i] = cl;
        ext &= (s & ~cl) == 0;
        idem &= gd_closure(g, tab, cl) == cl;
        repl &= replete_closure(g, cl) == cl;
        for (int x = 0; x < g.n_obj(); ++x) {
            DominationQuery q = dominates(g, tab, x, s);
            if (!q.result)
                sound &= witness_sound(g, q);
            cross &= q.result == dominates_via_stalks(g, site, x, s);
        }
    }
    rep.extensive = flag(ext, "closure is not extensive");
    rep.idempotent = flag(idem, "closure is not idempotent");
    rep.replete = flag(repl, "a closure is not replete");
    rep.witnesses_sound = flag(sound, "a domination witness fails re-validation");
    rep.cross_formulation = flag(cross, "direct and stalk formulations disagree");

    bool mono = true;
    for (std::size_t i = 0; i < subsets.size(); ++i)
        for (std::size_t j = 0; j < subsets.size(); ++j)
            if ((subsets[i] & ~subsets[j]) == 0)
                mono &= (closures[i] & ~closures[j]) == 0;
    rep.monotone = flag(mono, "closure is not monotone");

    bool open_cl = true, closed_cl = true;
    for (Mask s : replete_subsets(g)) {
        Mask cl = gd_closure(g, tab, s);
        if (g.objects.is_open(s))
            open_cl &= cl == s;
        if (g.objects.is_open(g.objects.full() & ~s))
            closed_cl &= cl == s;
    }
    rep.open_replete_closed = flag(open_cl, "an open replete subset is not domination-closed");
    rep.closed_replete_closed =
        flag(closed_cl, "a closed replete subset is not domination-closed");
    return rep;
}

} // namespace gw
