#include "gw/groupoid.hpp"

#include <algorithm>

namespace gw {

// ------------------------------------------------------------ FinGroupoid

Mask FinGroupoid::dom_preimage(Mask objs) const
{
    Mask out = 0;
    for (int a = 0; a < n_arr(); ++a)
        if (has(objs, dom_[a]))
            out |= bit(a);
    return out;
}

Mask FinGroupoid::cod_preimage(Mask objs) const
{
    Mask out = 0;
    for (int a = 0; a < n_arr(); ++a)
        if (has(objs, cod_[a]))
            out |= bit(a);
    return out;
}

Mask FinGroupoid::dom_image(Mask arrs) const
{
    Mask out = 0;
    for (int a : bits_of(arrs))
        out |= bit(dom_[a]);
    return out;
}

Mask FinGroupoid::cod_image(Mask arrs) const
{
    Mask out = 0;
    for (int a : bits_of(arrs))
        out |= bit(cod_[a]);
    return out;
}

Mask FinGroupoid::inv_image(Mask arrs) const
{
    Mask out = 0;
    for (int a : bits_of(arrs))
        out |= bit(inv_[a]);
    return out;
}

Mask FinGroupoid::compose_image(Mask a, Mask b) const
{
    Mask out = 0;
    for (int x : bits_of(a))
        for (int y : bits_of(b))
            if (dom_[x] == cod_[y])
                out |= bit(comp_[x][y]);
    return out;
}

bool FinGroupoid::operator==(const FinGroupoid& o) const
{
    return objects == o.objects && arrows == o.arrows && dom_ == o.dom_ && cod_ == o.cod_ &&
           unit_ == o.unit_ && inv_ == o.inv_ && comp_ == o.comp_;
}

void FinGroupoid::check_shape() const
{
    auto in_obj = [&](int x) { return x >= 0 && x < n_obj(); };
    auto in_arr = [&](int a) { return a >= 0 && a < n_arr(); };
    expect(dom_.size() == static_cast<std::size_t>(n_arr()) &&
               cod_.size() == static_cast<std::size_t>(n_arr()) &&
               inv_.size() == static_cast<std::size_t>(n_arr()) &&
               unit_.size() == static_cast<std::size_t>(n_obj()) &&
               comp_.size() == static_cast<std::size_t>(n_arr()),
           Errc::invalid_input, "groupoid structure maps have wrong sizes");
    for (int a = 0; a < n_arr(); ++a) {
        expect(in_obj(dom_[a]) && in_obj(cod_[a]) && in_arr(inv_[a]), Errc::invalid_input,
               "structure map value out of range");
        expect(comp_[a].size() == static_cast<std::size_t>(n_arr()), Errc::invalid_input,
               "composition table has wrong shape");
        for (int b = 0; b < n_arr(); ++b)
            expect(comp_[a][b] == -1 || in_arr(comp_[a][b]), Errc::invalid_input,
                   "composition table value out of range");
    }
    for (int x = 0; x < n_obj(); ++x)
        expect(in_arr(unit_[x]), Errc::invalid_input, "unit map value out of range");
}

// ------------------------------------------------------- validate_groupoid

GroupoidReport validate_groupoid(const FinGroupoid& g)
{
    g.check_shape();
    GroupoidReport rep;
    auto flag = [&](bool ok, const std::string& msg) {
        if (!ok)
            rep.problems.push_back(msg);
        return ok;
    };

    bool ax = true;
    for (int x = 0; x < g.n_obj(); ++x) {
        int e = g.unit(x);
        ax &= flag(g.dom(e) == x && g.cod(e) == x,
                   "unit of " + g.objects.name(x) + " is not an endo-arrow at it");
    }
    for (int a = 0; a < g.n_arr(); ++a)
        for (int b = 0; b < g.n_arr(); ++b) {
            bool composable = g.dom(a) == g.cod(b);
            ax &= flag((g.comp(a, b) != -1) == composable,
                       "composition table domain mismatch at (" + g.arrows.name(a) + "," +
                           g.arrows.name(b) + ")");
            if (composable && g.comp(a, b) != -1) {
                int c = g.comp(a, b);
                ax &= flag(g.dom(c) == g.dom(b) && g.cod(c) == g.cod(a),
                           "composite endpoints wrong at (" + g.arrows.name(a) + "," +
                               g.arrows.name(b) + ")");
            }
        }
    if (ax) {
        for (int a = 0; a < g.n_arr(); ++a) {
            ax &= flag(g.comp(a, g.unit(g.dom(a))) == a && g.comp(g.unit(g.cod(a)), a) == a,
                       "unit law fails at " + g.arrows.name(a));
            ax &= flag(g.inv(g.inv(a)) == a, "inverse not involutive at " + g.arrows.name(a));
            ax &= flag(g.dom(g.inv(a)) == g.cod(a) && g.cod(g.inv(a)) == g.dom(a),
                       "inverse endpoints wrong at " + g.arrows.name(a));
            if (g.dom(g.inv(a)) == g.cod(a))
                ax &= flag(g.comp(g.inv(a), a) == g.unit(g.dom(a)) &&
                               g.comp(a, g.inv(a)) == g.unit(g.cod(a)),
                           "inverse law fails at " + g.arrows.name(a));
        }
        for (int a = 0; a < g.n_arr(); ++a)
            for (int b = 0; b < g.n_arr(); ++b) {
                if (g.dom(a) != g.cod(b))
                    continue;
                for (int c = 0; c < g.n_arr(); ++c) {
                    if (g.dom(b) != g.cod(c))
                        continue;
                    ax &= flag(g.comp(g.comp(a, b), c) == g.comp(a, g.comp(b, c)),
                               "associativity fails at (" + g.arrows.name(a) + "," +
                                   g.arrows.name(b) + "," + g.arrows.name(c) + ")");
                }
            }
    }
    rep.axioms_ok = ax;

    bool cont = true;
    cont &= flag(check_map(g.dom_map()).continuous, "domain map not continuous");
    cont &= flag(check_map(g.cod_map()).continuous, "codomain map not continuous");
    cont &= flag(check_map(g.unit_map()).continuous, "unit map not continuous");
    cont &= flag(check_map(g.inv_map()).continuous, "inverse map not continuous");

    // Composition is continuous iff it carries the minimal neighborhood of
    // every composable pair into the minimal neighborhood of the composite.
    if (rep.axioms_ok) {
        bool mc = true;
        for (int a = 0; mc && a < g.n_arr(); ++a)
            for (int b = 0; mc && b < g.n_arr(); ++b) {
                if (g.dom(a) != g.cod(b))
                    continue;
                Mask target = g.arrows.min_nbhd(g.comp(a, b));
                for (int a2 : bits_of(g.arrows.min_nbhd(a)))
                    for (int b2 : bits_of(g.arrows.min_nbhd(b)))
                        if (g.dom(a2) == g.cod(b2) && !has(target, g.comp(a2, b2)))
                            mc = false;
            }
        cont &= flag(mc, "composition not continuous on the composable-pair space");
    }
    rep.continuity_ok = cont;

    MapReport dr = check_map(g.dom_map());
    MapReport cr = check_map(g.cod_map());
    rep.is_open = dr.open_map && cr.open_map;
    if (!rep.is_open)
        rep.problems.push_back("domain/codomain maps are not open");

    // Openness of composition, checked on the minimal basis of the
    // composable-pair space (images of opens are unions of these images).
    if (rep.axioms_ok) {
        bool co = true;
        for (int a = 0; co && a < g.n_arr(); ++a)
            for (int b = 0; co && b < g.n_arr(); ++b) {
                if (g.dom(a) != g.cod(b))
                    continue;
                Mask img = 0;
                for (int a2 : bits_of(g.arrows.min_nbhd(a)))
                    for (int b2 : bits_of(g.arrows.min_nbhd(b)))
                        if (g.dom(a2) == g.cod(b2))
                            img |= bit(g.comp(a2, b2));
                if (!g.arrows.is_open(img))
                    co = false;
            }
        rep.composition_open = co;
        if (!co)
            rep.problems.push_back("composition is not an open map");
    }
    return rep;
}

// --------------------------------------------------------- open subgroupoids

std::optional<std::string> check_open_subgroupoid(const FinGroupoid& g,
                                                  const OpenSubgroupoid& sub)
{
    if (!g.arrows.is_open(sub.n))
        return "N is not open in G1";
    if (g.inv_image(sub.n) != sub.n)
        return "N is not closed under inverse";
    for (int a : bits_of(sub.n))
        for (int b : bits_of(sub.n))
            if (g.dom(a) == g.cod(b) && !has(sub.n, g.comp(a, b)))
                return "N is not closed under composition";
    if (g.dom_image(sub.n) != sub.u || g.cod_image(sub.n) != sub.u)
        return "U is not d(N) = c(N)";
    return std::nullopt;
}

std::vector<OpenSubgroupoid> enumerate_open_subgroupoids(const FinGroupoid& g)
{
    GroupoidReport rep = validate_groupoid(g);
    expect(rep.axioms_ok && rep.continuity_ok, Errc::validation_error,
           "groupoid axioms fail: " + (rep.problems.empty() ? "" : rep.problems.front()));
    expect(rep.is_open, Errc::not_open_groupoid, "groupoid is not open");

    std::vector<OpenSubgroupoid> out;
    for (Mask n : g.arrows.opens()) {
        OpenSubgroupoid cand{g.dom_image(n), n};
        if (!check_open_subgroupoid(g, cand))
            out.push_back(cand);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ----------------------------------------------------------------- repleteness

bool is_replete(const FinGroupoid& g, Mask s, int* witness_arrow)
{
    for (int a = 0; a < g.n_arr(); ++a) {
        bool src = has(s, g.dom(a));
        bool dst = has(s, g.cod(a));
        if (src != dst) {
            if (witness_arrow)
                *witness_arrow = a;
            return false;
        }
    }
    return true;
}

Mask replete_closure(const FinGroupoid& g, Mask s)
{
    Mask cur = s;
    bool grew = true;
    while (grew) {
        grew = false;
        for (int a = 0; a < g.n_arr(); ++a) {
            if (has(cur, g.dom(a)) && !has(cur, g.cod(a))) {
                cur |= bit(g.cod(a));
                grew = true;
            }
            if (has(cur, g.cod(a)) && !has(cur, g.dom(a))) {
                cur |= bit(g.dom(a));
                grew = true;
            }
        }
    }
    return cur;
}

int RepleteInclusion::obj_from_g(int gx) const
{
    for (std::size_t i = 0; i < obj_to_g.size(); ++i)
        if (obj_to_g[i] == gx)
            return static_cast<int>(i);
    return -1;
}

int RepleteInclusion::arr_from_g(int ga) const
{
    for (std::size_t i = 0; i < arr_to_g.size(); ++i)
        if (arr_to_g[i] == ga)
            return static_cast<int>(i);
    return -1;
}

Mask RepleteInclusion::obj_mask_to_g(Mask hm) const
{
    Mask out = 0;
    for (int i : bits_of(hm))
        out |= bit(obj_to_g[i]);
    return out;
}

Mask RepleteInclusion::arr_mask_to_g(Mask hm) const
{
    Mask out = 0;
    for (int i : bits_of(hm))
        out |= bit(arr_to_g[i]);
    return out;
}

Mask RepleteInclusion::obj_mask_from_g(Mask gm) const
{
    Mask out = 0;
    for (std::size_t i = 0; i < obj_to_g.size(); ++i)
        if (has(gm, obj_to_g[i]))
            out |= bit(static_cast<int>(i));
    return out;
}

Mask RepleteInclusion::arr_mask_from_g(Mask gm) const
{
    Mask out = 0;
    for (std::size_t i = 0; i < arr_to_g.size(); ++i)
        if (has(gm, arr_to_g[i]))
            out |= bit(static_cast<int>(i));
    return out;
}

GroupoidMorphism RepleteInclusion::inclusion() const
{
    return GroupoidMorphism(sub, ambient, obj_to_g, arr_to_g);
}

RepleteInclusion replete_subgroupoid(const FinGroupoid& g, Mask h0)
{
    expect((h0 & ~g.objects.full()) == 0, Errc::invalid_subset,
           "carrier not within the object set");
    int w = -1;
    if (!is_replete(g, h0, &w))
        fail(Errc::not_replete,
             "carrier is not replete; arrow " + g.arrows.name(w) + " leaves it");

    RepleteInclusion inc;
    inc.ambient = g;
    inc.h0 = h0;
    inc.h1 = g.dom_preimage(h0) & g.cod_preimage(h0);

    inc.obj_to_g = bits_of(h0);
    inc.arr_to_g = bits_of(inc.h1);

    FinGroupoid h;
    h.objects = subspace(g.objects, h0);
    h.arrows = subspace(g.arrows, inc.h1);
    int no = h.objects.size(), na = h.arrows.size();
    h.dom_.resize(na);
    h.cod_.resize(na);
    h.inv_.resize(na);
    h.unit_.resize(no);
    h.comp_.assign(na, std::vector<int>(na, -1));
    for (int a = 0; a < na; ++a) {
        h.dom_[a] = inc.obj_from_g(g.dom(inc.arr_to_g[a]));
        h.cod_[a] = inc.obj_from_g(g.cod(inc.arr_to_g[a]));
        h.inv_[a] = inc.arr_from_g(g.inv(inc.arr_to_g[a]));
    }
    for (int x = 0; x < no; ++x)
        h.unit_[x] = inc.arr_from_g(g.unit(inc.obj_to_g[x]));
    for (int a = 0; a < na; ++a)
        for (int b = 0; b < na; ++b)
            if (h.dom_[a] == h.cod_[b])
                h.comp_[a][b] = inc.arr_from_g(g.comp(inc.arr_to_g[a], inc.arr_to_g[b]));
    inc.sub = h;

    // A replete subgroupoid of an open groupoid is again open.
    GroupoidReport rep = validate_groupoid(h);
    GroupoidReport amb = validate_groupoid(g);
    expect(rep.axioms_ok && rep.continuity_ok, Errc::internal,
           "induced subgroupoid fails groupoid axioms");
    if (amb.all_ok())
        expect(rep.all_ok(), Errc::internal, "induced subgroupoid is not open");
    return inc;
}

RepleteInclusion replete_subgroupoid_named(const FinGroupoid& g,
                                           const std::vector<std::string>& names)
{
    return replete_subgroupoid(g, g.objects.mask_of(names));
}

// ------------------------------------------------------------- morphisms

GroupoidMorphism::GroupoidMorphism(FinGroupoid src, FinGroupoid tgt, std::vector<int> obj_map,
                                   std::vector<int> arr_map)
    : source(std::move(src)), target(std::move(tgt)), f0(std::move(obj_map)),
      f1(std::move(arr_map))
{
    CtsMap m0(source.objects, target.objects, f0);
    CtsMap m1(source.arrows, target.arrows, f1);
    expect(check_map(m0).continuous && check_map(m1).continuous, Errc::not_continuous,
           "morphism components must be continuous");
    for (int a = 0; a < source.n_arr(); ++a) {
        expect(target.dom(f1[a]) == f0[source.dom(a)] &&
                   target.cod(f1[a]) == f0[source.cod(a)],
               Errc::validation_error, "morphism does not commute with d/c");
        expect(target.inv(f1[a]) == f1[source.inv(a)], Errc::validation_error,
               "morphism does not commute with inverse");
    }
    for (int x = 0; x < source.n_obj(); ++x)
        expect(target.unit(f0[x]) == f1[source.unit(x)], Errc::validation_error,
               "morphism does not commute with units");
    for (int a = 0; a < source.n_arr(); ++a)
        for (int b = 0; b < source.n_arr(); ++b)
            if (source.dom(a) == source.cod(b)) {
                int sc = source.comp(a, b);
                expect(sc != -1 && target.comp(f1[a], f1[b]) == f1[sc],
                       Errc::validation_error, "morphism does not commute with composition");
            }
}

FibrationResult is_fibration(const GroupoidMorphism& f)
{
    FibrationResult res;
    for (int y = 0; y < f.source.n_obj(); ++y)
        for (int h = 0; h < f.target.n_arr(); ++h) {
            if (f.target.cod(h) != f.f0[y])
                continue;
            bool lifted = false;
            for (int a = 0; a < f.source.n_arr(); ++a)
                if (f.source.cod(a) == y && f.f1[a] == h) {
                    lifted = true;
                    break;
                }
            if (!lifted) {
                res.fibration = false;
                res.missing_object = y;
                res.missing_arrow = h;
                return res;
            }
        }
    res.fibration = true;
    return res;
}

OpenSubgroupoid pullback_open_subgroupoid(const GroupoidMorphism& f,
                                          const OpenSubgroupoid& sub)
{
    Mask n = 0;
    for (int a = 0; a < f.source.n_arr(); ++a)
        if (has(sub.n, f.f1[a]))
            n |= bit(a);
    Mask u = 0;
    for (int x = 0; x < f.source.n_obj(); ++x)
        if (has(sub.u, f.f0[x]))
            u |= bit(x);
    OpenSubgroupoid out{u, n};
    auto why = check_open_subgroupoid(f.source, out);
    expect(!why, Errc::internal, "pullback pair is not an open subgroupoid: " + why.value_or(""));
    return out;
}

} // namespace gw
