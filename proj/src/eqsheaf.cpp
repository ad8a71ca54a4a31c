#include "gw/eqsheaf.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace gw {

// ---------------------------------------------------------------- EqSheaf

Mask EqSheaf::fiber(int obj) const
{
    Mask out = 0;
    for (int e = 0; e < n_elem(); ++e)
        if (over[e] == obj)
            out |= bit(e);
    return out;
}

void EqSheaf::check_shape() const
{
    expect(over.size() == static_cast<std::size_t>(n_elem()), Errc::invalid_input,
           "projection must be total");
    for (int v : over)
        expect(v >= 0 && v < gpd.n_obj(), Errc::invalid_input, "projection value out of range");
    expect(act.size() == static_cast<std::size_t>(gpd.n_arr()), Errc::invalid_input,
           "action table has wrong shape");
    for (const auto& row : act) {
        expect(row.size() == static_cast<std::size_t>(n_elem()), Errc::invalid_input,
               "action table has wrong shape");
        for (int v : row)
            expect(v >= -1 && v < n_elem(), Errc::invalid_input, "action value out of range");
    }
}

// --------------------------------------------------------------- build_gun

GunSheaf build_gun(const FinGroupoid& g, const OpenSubgroupoid& sub)
{
    GroupoidReport grep = validate_groupoid(g);
    expect(grep.axioms_ok && grep.continuity_ok, Errc::validation_error, "invalid groupoid");
    expect(grep.is_open, Errc::not_open_groupoid, "groupoid is not open");
    if (auto why = check_open_subgroupoid(g, sub))
        fail(Errc::invalid_subgroupoid, *why);

    Mask dinv = g.dom_preimage(sub.u);
    std::vector<int> arrs = bits_of(dinv);
    int k = static_cast<int>(arrs.size());

    // f ~ g2 iff c(f)=c(g2) and g2^{-1}∘f ∈ N
    auto related = [&](int f, int g2) {
        return g.cod(f) == g.cod(g2) && has(sub.n, g.comp(g.inv(g2), f));
    };
    std::vector<int> cls(k, -1);
    int next = 0;
    for (int i = 0; i < k; ++i) {
        if (cls[i] != -1)
            continue;
        cls[i] = next;
        for (int j = i + 1; j < k; ++j)
            if (cls[j] == -1 && related(arrs[j], arrs[i]))
                cls[j] = next;
        ++next;
    }

    FinSpace dsub = subspace(g.arrows, dinv);
    std::vector<int> cls_by_subidx(k);
    for (int i = 0; i < k; ++i)
        cls_by_subidx[dsub.index_of(g.arrows.name(arrs[i]))] = cls[i];
    auto [qspace, proj] = quotient_by_ids(dsub, cls_by_subidx);

    // the quotient map of a principal sheaf is an open surjection
    MapReport pr = check_map(proj);
    expect(pr.continuous && pr.open_map, Errc::internal, "quotient map is not open");

    GunSheaf gun;
    gun.base = sub;
    gun.class_of.assign(g.n_arr(), -1);
    for (int i = 0; i < k; ++i)
        gun.class_of[arrs[i]] = proj(dsub.index_of(g.arrows.name(arrs[i])));
    gun.rep_arrow.assign(qspace.size(), -1);
    for (int i = 0; i < k; ++i) {
        int c = gun.class_of[arrs[i]];
        if (gun.rep_arrow[c] == -1 || g.arrows.name(arrs[i]) < g.arrows.name(gun.rep_arrow[c]))
            gun.rep_arrow[c] = arrs[i];
    }
    gun.canonical.assign(g.n_obj(), -1);
    for (int x : bits_of(sub.u))
        gun.canonical[x] = gun.class_of[g.unit(x)];

    EqSheaf sh;
    sh.gpd = g;
    sh.total = qspace;
    sh.over.assign(qspace.size(), -1);
    for (int c = 0; c < qspace.size(); ++c)
        sh.over[c] = g.cod(gun.rep_arrow[c]);
    sh.act.assign(g.n_arr(), std::vector<int>(qspace.size(), -1));
    for (int a = 0; a < g.n_arr(); ++a)
        for (int c = 0; c < qspace.size(); ++c) {
            if (g.dom(a) != sh.over[c])
                continue;
            int composite = g.comp(a, gun.rep_arrow[c]);
            sh.act[a][c] = gun.class_of[composite];
            // the action must not depend on the representative
            for (int i = 0; i < k; ++i)
                if (gun.class_of[arrs[i]] == c && g.dom(a) == g.cod(arrs[i]))
                    expect(gun.class_of[g.comp(a, arrs[i])] == sh.act[a][c], Errc::internal,
                           "action not well defined on classes");
        }
    gun.sheaf = std::move(sh);

    EqSheafReport rep = validate_eqsheaf(gun.sheaf);
    expect(rep.all_ok(), Errc::internal,
           "principal sheaf fails validation: " +
               (rep.problems.empty() ? std::string("?") : rep.problems.front()));
    return gun;
}

// --------------------------------------------------------- validate_eqsheaf

EqSheafReport validate_eqsheaf(const EqSheaf& r)
{
    r.check_shape();
    EqSheafReport rep;
    auto flag = [&](bool ok, const std::string& msg) {
        if (!ok)
            rep.problems.push_back(msg);
        return ok;
    };
    const FinGroupoid& g = r.gpd;

    MapReport rm = check_map(r.r_map());
    rep.r_continuous = flag(rm.continuous, "projection not continuous");
    rep.r_local_homeo = flag(rm.local_homeo, "projection not a local homeomorphism");

    bool dom_ok = true, cod_ok = true, unit_ok = true, comp_ok = true;
    for (int a = 0; a < g.n_arr(); ++a)
        for (int e = 0; e < r.n_elem(); ++e) {
            bool should = g.dom(a) == r.over[e];
            if ((r.act[a][e] != -1) != should)
                dom_ok = false;
            if (should && r.act[a][e] != -1 && r.over[r.act[a][e]] != g.cod(a))
                cod_ok = false;
        }
    rep.action_domain_ok = flag(dom_ok, "action defined off d(g)=r(e) or missing there");
    rep.action_matches_cod = flag(cod_ok, "r(g·e) differs from c(g)");

    if (dom_ok && cod_ok) {
        for (int e = 0; e < r.n_elem(); ++e)
            if (r.act[g.unit(r.over[e])][e] != e)
                unit_ok = false;
        for (int a = 0; a < g.n_arr(); ++a)
            for (int b = 0; b < g.n_arr(); ++b) {
                if (g.dom(a) != g.cod(b))
                    continue;
                for (int e = 0; e < r.n_elem(); ++e)
                    if (r.over[e] == g.dom(b) &&
                        r.act[a][r.act[b][e]] != r.act[g.comp(a, b)][e])
                        comp_ok = false;
            }
    } else {
        unit_ok = comp_ok = false;
    }
    rep.action_unit_ok = flag(unit_ok, "action unit axiom fails");
    rep.action_comp_ok = flag(comp_ok, "action composition axiom fails");

    // action continuity / openness over the pullback G1 ×_{G0} R, through
    // the minimal-neighborhood basis of the pair space
    if (dom_ok && cod_ok) {
        bool cont = true, open = true;
        for (int a = 0; a < g.n_arr(); ++a)
            for (int e = 0; e < r.n_elem(); ++e) {
                if (g.dom(a) != r.over[e])
                    continue;
                Mask img = 0;
                for (int a2 : bits_of(g.arrows.min_nbhd(a)))
                    for (int e2 : bits_of(r.total.min_nbhd(e)))
                        if (g.dom(a2) == r.over[e2])
                            img |= bit(r.act[a2][e2]);
                if ((img & ~r.total.min_nbhd(r.act[a][e])) != 0)
                    cont = false;
                if (!r.total.is_open(img))
                    open = false;
            }
        rep.action_continuous = flag(cont, "action not continuous");
        rep.action_open = flag(open, "action not an open map");
    }
    return rep;
}

// -------------------------------------------------------------------- stalks

Mask stalk(const EqSheaf& r, int obj)
{
    expect(obj >= 0 && obj < r.gpd.n_obj(), Errc::unknown_point, "object index out of range");
    return r.fiber(obj);
}

Mask stalk_named(const EqSheaf& r, const std::string& obj)
{
    int i = r.gpd.objects.index_of(obj);
    expect(i >= 0, Errc::unknown_point, "unknown object \"" + obj + "\"");
    return r.fiber(i);
}

// ------------------------------------------------------------------- eq maps

bool is_eq_map(const EqSheaf& a, const EqSheaf& b, const std::vector<int>& graph,
               std::string* why)
{
    auto report = [&](const std::string& msg) {
        if (why)
            *why = msg;
        return false;
    };
    if (graph.size() != static_cast<std::size_t>(a.n_elem()))
        return report("graph not total");
    for (int e = 0; e < a.n_elem(); ++e) {
        if (graph[e] < 0 || graph[e] >= b.n_elem())
            return report("graph value out of range");
        if (b.over[graph[e]] != a.over[e])
            return report("does not commute with the projections");
    }
    for (int g = 0; g < a.gpd.n_arr(); ++g)
        for (int e = 0; e < a.n_elem(); ++e)
            if (a.act[g][e] != -1 && graph[a.act[g][e]] != b.act[g][graph[e]])
                return report("does not commute with the actions");
    if (!check_map(CtsMap(a.total, b.total, graph)).continuous)
        return report("not continuous");
    return true;
}

namespace {

std::vector<std::vector<int>> orbits_of(const EqSheaf& a)
{
    std::vector<int> root(a.n_elem());
    std::iota(root.begin(), root.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (root[x] != x)
            x = root[x] = root[root[x]];
        return x;
    };
    for (int g = 0; g < a.gpd.n_arr(); ++g)
        for (int e = 0; e < a.n_elem(); ++e)
            if (a.act[g][e] != -1)
                root[find(e)] = find(a.act[g][e]);
    std::vector<std::vector<int>> orb;
    std::vector<int> slot(a.n_elem(), -1);
    for (int e = 0; e < a.n_elem(); ++e) {
        int r = find(e);
        if (slot[r] == -1) {
            slot[r] = static_cast<int>(orb.size());
            orb.emplace_back();
        }
        orb[slot[r]].push_back(e);
    }
    return orb;
}

// Extend an orbitwise choice of images by equivariance; false on conflict.
bool propagate(const EqSheaf& a, const EqSheaf& b, int rep, int img, std::vector<int>& graph)
{
    if (b.over[img] != a.over[rep])
        return false;
    std::vector<int> queue{rep};
    graph[rep] = img;
    while (!queue.empty()) {
        int e = queue.back();
        queue.pop_back();
        for (int g = 0; g < a.gpd.n_arr(); ++g) {
            if (a.act[g][e] == -1)
                continue;
            int e2 = a.act[g][e];
            int i2 = b.act[g][graph[e]];
            if (i2 == -1)
                return false;
            if (graph[e2] == -1) {
                graph[e2] = i2;
                queue.push_back(e2);
            } else if (graph[e2] != i2) {
                return false;
            }
        }
    }
    return true;
}

} // namespace

std::vector<EqMap> enumerate_eq_maps(const EqSheaf& a, const EqSheaf& b)
{
    expect(a.gpd == b.gpd, Errc::ambient_mismatch,
           "sheaves live over different groupoids");

    std::vector<std::vector<int>> orb = orbits_of(a);
    std::vector<EqMap> out;
    std::vector<int> graph(a.n_elem(), -1);

    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == orb.size()) {
            std::string why;
            if (is_eq_map(a, b, graph, &why))
                out.push_back(EqMap{graph});
            return;
        }
        int rep = orb[k].front();
        for (int img = 0; img < b.n_elem(); ++img) {
            std::vector<int> saved = graph;
            if (propagate(a, b, rep, img, graph))
                rec(k + 1);
            graph = saved;
        }
    };
    rec(0);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ------------------------------------------------------------------ sections

std::vector<Section> enumerate_sections(const EqSheaf& r)
{
    const FinGroupoid& g = r.gpd;
    std::vector<Section> out;

    auto continuous = [&](const Section& s) {
        for (int x : bits_of(s.u))
            for (int y : bits_of(g.objects.min_nbhd(x) & s.u))
                if (!has(r.total.min_nbhd(s.choice[x]), s.choice[y]))
                    return false;
        return true;
    };

    for (Mask u : g.objects.opens()) {
        std::vector<int> objs = bits_of(u);
        Section s;
        s.u = u;
        s.choice.assign(g.n_obj(), -1);
        std::function<void(std::size_t)> rec = [&](std::size_t k) {
            if (k == objs.size()) {
                if (continuous(s))
                    out.push_back(s);
                return;
            }
            for (int e : bits_of(r.fiber(objs[k]))) {
                s.choice[objs[k]] = e;
                rec(k + 1);
            }
            s.choice[objs[k]] = -1;
        };
        rec(0);
    }
    return out;
}

SectionLift section_to_morphism(const EqSheaf& r, const Section& t)
{
    const FinGroupoid& g = r.gpd;
    expect(g.objects.is_open(t.u), Errc::invalid_input, "section domain must be open");
    for (int x : bits_of(t.u)) {
        expect(t.choice[x] >= 0 && t.choice[x] < r.n_elem() && r.over[t.choice[x]] == x,
               Errc::not_a_section, "r∘t is not the inclusion of U");
    }
    for (int x : bits_of(t.u))
        for (int y : bits_of(g.objects.min_nbhd(x) & t.u))
            expect(has(r.total.min_nbhd(t.choice[x]), t.choice[y]), Errc::not_continuous,
                   "section is not continuous");

    Mask nt = 0;
    Mask both = g.dom_preimage(t.u) & g.cod_preimage(t.u);
    for (int f : bits_of(both))
        if (r.act[f][t.choice[g.dom(f)]] == t.choice[g.cod(f)])
            nt |= bit(f);

    OpenSubgroupoid sub{t.u, nt};
    if (auto why = check_open_subgroupoid(g, sub))
        fail(Errc::internal, "induced N_t is not an open subgroupoid: " + *why);

    GunSheaf dom = build_gun(g, sub);
    std::vector<int> graph(dom.sheaf.n_elem(), -1);
    for (int f = 0; f < g.n_arr(); ++f) {
        if (dom.class_of[f] == -1)
            continue;
        int val = r.act[f][t.choice[g.dom(f)]];
        int c = dom.class_of[f];
        expect(graph[c] == -1 || graph[c] == val, Errc::internal,
               "lifted section not constant on classes");
        graph[c] = val;
    }
    std::string why;
    expect(is_eq_map(dom.sheaf, r, graph, &why), Errc::internal,
           "lifted section is not a sheaf morphism: " + why);
    // t-hat is monic
    for (int c1 = 0; c1 < dom.sheaf.n_elem(); ++c1)
        for (int c2 = c1 + 1; c2 < dom.sheaf.n_elem(); ++c2)
            expect(graph[c1] != graph[c2], Errc::internal, "lifted section is not injective");

    return SectionLift{sub, std::move(dom), EqMap{std::move(graph)}};
}

bool gun_cover_check(const EqSheaf& r)
{
    EqSheafReport rep = validate_eqsheaf(r);
    expect(rep.all_ok(), Errc::validation_error, "sheaf fails validation");
    const FinGroupoid& g = r.gpd;
    Mask covered = 0;
    for (const Section& t : enumerate_sections(r)) {
        // image of the lifted morphism: ρ(f, t(d(f))) over f ∈ d^{-1}(U)
        for (int f = 0; f < g.n_arr(); ++f)
            if (has(t.u, g.dom(f)))
                covered |= bit(r.act[f][t.choice[g.dom(f)]]);
    }
    return covered == r.total.full();
}

// -------------------------------------------------------- sheaf enumeration

namespace {

// All groupoid actions on the given fibers: per-arrow bijections, assigned
// by backtracking with unit/inverse/composite propagation.
void enumerate_actions(const FinGroupoid& g, const std::vector<int>& over,
                       std::vector<std::vector<std::vector<int>>>& out)
{
    int n = static_cast<int>(over.size());
    std::vector<std::vector<int>> fiber(g.n_obj());
    for (int e = 0; e < n; ++e)
        fiber[over[e]].push_back(e);
    for (int x = 0; x < g.n_obj(); ++x)
        for (int y = 0; y < g.n_obj(); ++y) {
            // fibers along any arrow must match in size; prune early
            bool connected = false;
            for (int a = 0; a < g.n_arr(); ++a)
                if (g.dom(a) == x && g.cod(a) == y)
                    connected = true;
            if (connected && fiber[x].size() != fiber[y].size())
                return;
        }

    // perm[a][e] = image of element e (defined on fiber of dom(a)), -1 unassigned
    std::vector<std::vector<int>> perm(g.n_arr());
    std::vector<bool> assigned(g.n_arr(), false);

    auto invert = [&](int a, const std::vector<int>& p) {
        std::vector<int> q(n, -1);
        for (int e : fiber[g.dom(a)])
            q[p[e]] = e;
        return q;
    };

    // assign + propagate through inverses and composites; records touched
    // arrows for rollback, returns false on conflict
    std::function<bool(int, const std::vector<int>&, std::vector<int>&)> assign =
        [&](int a, const std::vector<int>& p, std::vector<int>& touched) {
            if (assigned[a])
                return perm[a] == p;
            perm[a] = p;
            assigned[a] = true;
            touched.push_back(a);
            if (!assign(g.inv(a), invert(a, p), touched))
                return false;
            for (int b = 0; b < g.n_arr(); ++b) {
                if (!assigned[b])
                    continue;
                if (g.dom(a) == g.cod(b)) { // a∘b forced
                    std::vector<int> c(n, -1);
                    for (int e : fiber[g.dom(b)])
                        c[e] = perm[a][perm[b][e]];
                    if (!assign(g.comp(a, b), c, touched))
                        return false;
                }
                if (g.dom(b) == g.cod(a) && b != a) { // b∘a forced
                    std::vector<int> c(n, -1);
                    for (int e : fiber[g.dom(a)])
                        c[e] = perm[b][perm[a][e]];
                    if (!assign(g.comp(b, a), c, touched))
                        return false;
                }
            }
            return true;
        };

    std::function<void()> rec = [&]() {
        int a = -1;
        for (int i = 0; i < g.n_arr(); ++i)
            if (!assigned[i]) {
                a = i;
                break;
            }
        if (a == -1) {
            // full functoriality re-check, then emit as an action table
            for (int x = 0; x < g.n_arr(); ++x)
                for (int y = 0; y < g.n_arr(); ++y)
                    if (g.dom(x) == g.cod(y))
                        for (int e : fiber[g.dom(y)])
                            if (perm[g.comp(x, y)][e] != perm[x][perm[y][e]])
                                return;
            std::vector<std::vector<int>> act(g.n_arr(), std::vector<int>(n, -1));
            for (int arr = 0; arr < g.n_arr(); ++arr)
                for (int e : fiber[g.dom(arr)])
                    act[arr][e] = perm[arr][e];
            out.push_back(std::move(act));
            return;
        }
        // enumerate bijections fiber(dom a) -> fiber(cod a) in lex order
        std::vector<int> tgt = fiber[g.cod(a)];
        std::sort(tgt.begin(), tgt.end());
        do {
            std::vector<int> p(n, -1);
            for (std::size_t i = 0; i < fiber[g.dom(a)].size(); ++i)
                p[fiber[g.dom(a)][i]] = tgt[i];
            std::vector<int> touched;
            if (assign(a, p, touched))
                rec();
            for (int t : touched) {
                assigned[t] = false;
                perm[t].clear();
            }
        } while (std::next_permutation(tgt.begin(), tgt.end()));
    };

    // units act as identities
    std::vector<int> touched_units;
    bool ok = true;
    for (int x = 0; x < g.n_obj() && ok; ++x) {
        std::vector<int> idp(n, -1);
        for (int e : fiber[x])
            idp[e] = e;
        ok = assign(g.unit(x), idp, touched_units);
    }
    if (ok)
        rec();
}

// All coherent systems of local sections (one per element), i.e. all étale
// topologies over the base, for fixed fibers.
void enumerate_etale_topologies(const FinGroupoid& g, const std::vector<int>& over,
                                std::vector<std::vector<Mask>>& out)
{
    int n = static_cast<int>(over.size());
    std::vector<std::vector<int>> fiber(g.n_obj());
    for (int e = 0; e < n; ++e)
        fiber[over[e]].push_back(e);

    // nb[e] will be the minimal neighborhood: one element over each point of
    // min_nbhd(over(e)), containing e itself
    std::vector<std::vector<int>> pick(n); // pick[e][k] = element over k-th base pt
    std::vector<std::vector<int>> base(n);
    for (int e = 0; e < n; ++e) {
        base[e] = bits_of(g.objects.min_nbhd(over[e]));
        pick[e].assign(base[e].size(), -1);
        for (std::size_t k = 0; k < base[e].size(); ++k)
            if (base[e][k] == over[e])
                pick[e][k] = e;
        for (std::size_t k = 0; k < base[e].size(); ++k)
            if (pick[e][k] == -1 && fiber[base[e][k]].empty())
                return; // no section can exist through e
    }

    std::function<void(int, std::size_t)> rec = [&](int e, std::size_t k) {
        if (e == n) {
            std::vector<Mask> nb(n, 0);
            for (int q = 0; q < n; ++q)
                for (int p : pick[q])
                    nb[q] |= bit(p);
            // coherence: p ∈ nb[q] implies nb[p] ⊆ nb[q]
            for (int q = 0; q < n; ++q)
                for (int p : bits_of(nb[q]))
                    if ((nb[p] & ~nb[q]) != 0)
                        return;
            out.push_back(nb);
            return;
        }
        if (k == base[e].size()) {
            rec(e + 1, 0);
            return;
        }
        if (pick[e][k] != -1) {
            rec(e, k + 1);
            return;
        }
        for (int cand : fiber[base[e][k]]) {
            pick[e][k] = cand;
            rec(e, k + 1);
        }
        pick[e][k] = -1;
    };
    rec(0, 0);
}

} // namespace

std::vector<EqSheaf> enumerate_eqsheaves(const FinGroupoid& g, int max_elems)
{
    GroupoidReport grep = validate_groupoid(g);
    expect(grep.axioms_ok && grep.continuity_ok, Errc::validation_error, "invalid groupoid");
    expect(grep.is_open, Errc::not_open_groupoid, "groupoid is not open");

    std::vector<EqSheaf> out;
    std::vector<int> sizes(g.n_obj(), 0);

    std::function<void(int, int)> fibers_rec = [&](int x, int left) {
        if (x == g.n_obj()) {
            // element names: <object>_<i>; index order follows sorted names
            std::vector<std::pair<std::string, int>> elems;
            for (int o = 0; o < g.n_obj(); ++o)
                for (int i = 0; i < sizes[o]; ++i)
                    elems.emplace_back(g.objects.name(o) + "_" + std::to_string(i), o);
            std::sort(elems.begin(), elems.end());
            std::vector<std::string> names;
            std::vector<int> over;
            for (auto& [nm, o] : elems) {
                names.push_back(nm);
                over.push_back(o);
            }

            std::vector<std::vector<std::vector<int>>> actions;
            enumerate_actions(g, over, actions);
            if (actions.empty())
                return;
            std::vector<std::vector<Mask>> topologies;
            enumerate_etale_topologies(g, over, topologies);

            for (const auto& nb : topologies) {
                FinSpace total(names, detail::union_closure(nb, std::size_t{1} << 21));
                for (const auto& act : actions) {
                    EqSheaf sh;
                    sh.gpd = g;
                    sh.total = total;
                    sh.over = over;
                    sh.act = act;
                    if (validate_eqsheaf(sh).all_ok())
                        out.push_back(std::move(sh));
                }
            }
            return;
        }
        for (int k = 0; k <= left; ++k) {
            sizes[x] = k;
            fibers_rec(x + 1, left - k);
        }
        sizes[x] = 0;
    };
    fibers_rec(0, max_elems);
    return out;
}

} // namespace gw
