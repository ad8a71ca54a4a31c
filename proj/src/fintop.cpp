#include "gw/fintop.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace gw {

namespace detail {

void check_atom(const std::string& name)
{
    expect(!name.empty(), Errc::invalid_input, "point name must be nonempty");
    for (char ch : name) {
        bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') ||
                  (ch >= '0' && ch <= '9') || ch == '_' || ch == '*' || ch == '(' ||
                  ch == ')' || ch == ',' || ch == '[' || ch == ']';
        expect(ok, Errc::invalid_input, "bad character in point name \"" + name + "\"");
    }
}

std::vector<Mask> union_closure(const std::vector<Mask>& gens, std::size_t cap)
{
    std::set<Mask> seen;
    seen.insert(Mask{0});
    std::vector<Mask> work{Mask{0}};
    while (!work.empty()) {
        Mask cur = work.back();
        work.pop_back();
        for (Mask g : gens) {
            Mask nxt = cur | g;
            if (seen.insert(nxt).second) {
                expect(seen.size() <= cap, Errc::too_large,
                       "opens family exceeds desk-scale cap");
                work.push_back(nxt);
            }
        }
    }
    return {seen.begin(), seen.end()};
}

} // namespace detail

// ---------------------------------------------------------------- FinSpace

FinSpace::FinSpace() : opens_{Mask{0}} {}

FinSpace::FinSpace(std::vector<std::string> points, std::vector<Mask> opens)
    : points_(std::move(points)), opens_(std::move(opens))
{
    expect(points_.size() <= 64, Errc::too_large, "more than 64 points");
    for (const auto& p : points_)
        detail::check_atom(p);
    expect(std::is_sorted(points_.begin(), points_.end()) &&
               std::adjacent_find(points_.begin(), points_.end()) == points_.end(),
           Errc::invalid_input, "points must be sorted and distinct");

    std::sort(opens_.begin(), opens_.end());
    opens_.erase(std::unique(opens_.begin(), opens_.end()), opens_.end());
    for (Mask o : opens_)
        expect((o & ~full()) == 0, Errc::invalid_input, "open not within point set");

    // Topology laws: ∅ and the full set present, and the family equals the
    // union closure of its minimal neighborhoods (which also forces closure
    // under intersections, by minimality).
    expect(!opens_.empty() && opens_.front() == 0, Errc::validation_error,
           "topology must contain the empty set");
    expect(std::binary_search(opens_.begin(), opens_.end(), full()), Errc::validation_error,
           "topology must contain the full point set");

    min_nbhd_.assign(points_.size(), full());
    for (Mask o : opens_)
        for (int p : bits_of(o))
            min_nbhd_[p] &= o;

    std::vector<Mask> regen = detail::union_closure(min_nbhd_, std::size_t{1} << 21);
    expect(regen == opens_, Errc::validation_error,
           "family is not closed under unions/intersections");
}

int FinSpace::index_of(const std::string& name) const
{
    auto it = std::lower_bound(points_.begin(), points_.end(), name);
    if (it == points_.end() || *it != name)
        return -1;
    return static_cast<int>(it - points_.begin());
}

bool FinSpace::is_open(Mask s) const
{
    return std::binary_search(opens_.begin(), opens_.end(), s);
}

Mask FinSpace::nbhd_hull(Mask s) const
{
    Mask out = 0;
    for (int p : bits_of(s))
        out |= min_nbhd_[p];
    return out;
}

Mask FinSpace::mask_of(const std::vector<std::string>& names) const
{
    Mask m = 0;
    for (const auto& n : names) {
        int i = index_of(n);
        expect(i >= 0, Errc::unknown_point, "unknown point \"" + n + "\"");
        m |= bit(i);
    }
    return m;
}

std::vector<std::string> FinSpace::names_of(Mask s) const
{
    std::vector<std::string> out;
    for (int p : bits_of(s))
        out.push_back(points_[p]);
    return out;
}

// ----------------------------------------------------------------- CtsMap

CtsMap::CtsMap(FinSpace src, FinSpace tgt, std::vector<int> g)
    : source(std::move(src)), target(std::move(tgt)), graph(std::move(g))
{
    expect(graph.size() == static_cast<std::size_t>(source.size()), Errc::invalid_input,
           "map graph must be total on the source");
    for (int v : graph)
        expect(v >= 0 && v < target.size(), Errc::invalid_input,
               "map graph value outside target");
}

Mask CtsMap::image(Mask s) const
{
    Mask out = 0;
    for (int p : bits_of(s))
        out |= bit(graph[p]);
    return out;
}

Mask CtsMap::preimage(Mask t) const
{
    Mask out = 0;
    for (int p = 0; p < source.size(); ++p)
        if (has(t, graph[p]))
            out |= bit(p);
    return out;
}

CtsMap CtsMap::identity(const FinSpace& x)
{
    std::vector<int> g(x.size());
    for (int i = 0; i < x.size(); ++i)
        g[i] = i;
    return CtsMap(x, x, std::move(g));
}

// ------------------------------------------------------------- operations

FinSpace make_space_masks(std::vector<std::string> points, const std::vector<Mask>& subbasis)
{
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    FinSpace shell(points, {0, points.empty() ? Mask{0} : (Mask{1} << points.size()) - 1});
    Mask full = shell.full();
    for (Mask s : subbasis)
        expect((s & ~full) == 0, Errc::invalid_subbasis, "subbasis member not within points");

    // Minimal neighborhoods of the generated topology: meet of the subbasis
    // members through each point. All opens are unions of these.
    std::vector<Mask> nb(points.size(), full);
    for (std::size_t p = 0; p < points.size(); ++p)
        for (Mask s : subbasis)
            if (has(s, static_cast<int>(p)))
                nb[p] &= s;

    std::vector<Mask> opens = detail::union_closure(nb, std::size_t{1} << 21);
    return FinSpace(std::move(points), std::move(opens));
}

FinSpace make_space(std::vector<std::string> points,
                    const std::vector<std::vector<std::string>>& subbasis)
{
    std::vector<std::string> pts = points;
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    FinSpace shell(pts, {0, pts.empty() ? Mask{0} : (Mask{1} << pts.size()) - 1});
    std::vector<Mask> gens;
    for (const auto& member : subbasis) {
        Mask m = 0;
        for (const auto& n : member) {
            int i = shell.index_of(n);
            expect(i >= 0, Errc::invalid_subbasis,
                   "subbasis member mentions unknown point \"" + n + "\"");
            m |= bit(i);
        }
        gens.push_back(m);
    }
    return make_space_masks(pts, gens);
}

MapReport check_map(const CtsMap& f)
{
    MapReport rep;
    const FinSpace& X = f.source;
    const FinSpace& Y = f.target;

    rep.continuous = true;
    for (Mask o : Y.opens())
        if (!X.is_open(f.preimage(o))) {
            rep.continuous = false;
            break;
        }

    rep.open_map = true;
    for (Mask o : X.opens())
        if (!Y.is_open(f.image(o))) {
            rep.open_map = false;
            break;
        }

    // Local homeomorphism: if any witness neighborhood of x works, the
    // minimal one does, so only min_nbhd(x) needs testing.
    rep.local_homeo = rep.continuous;
    for (int x = 0; rep.local_homeo && x < X.size(); ++x) {
        Mask v = X.min_nbhd(x);
        Mask img = f.image(v);
        if (popcount(v) != popcount(img) || !Y.is_open(img)) {
            rep.local_homeo = false;
            break;
        }
        // relative openness of the inverse: images of minimal neighborhoods
        // inside v must be open in the subspace img
        for (int y : bits_of(v)) {
            Mask sub = f.image(X.min_nbhd(y));
            for (int z : bits_of(sub))
                if ((Y.min_nbhd(z) & img & ~sub) != 0) {
                    rep.local_homeo = false;
                    break;
                }
            if (!rep.local_homeo)
                break;
        }
    }
    return rep;
}

std::pair<FinSpace, CtsMap> quotient_by_ids(const FinSpace& x, const std::vector<int>& cls)
{
    expect(cls.size() == static_cast<std::size_t>(x.size()), Errc::invalid_partition,
           "class assignment must cover every point");

    // Name each class by its lexicographically least member.
    std::map<int, std::string> rep;
    for (int p = 0; p < x.size(); ++p) {
        auto it = rep.find(cls[p]);
        if (it == rep.end() || x.name(p) < it->second)
            rep[cls[p]] = x.name(p);
    }
    std::vector<std::string> names;
    for (auto& [id, nm] : rep)
        names.push_back(nm);
    std::sort(names.begin(), names.end());

    FinSpace shell(names, {0, names.empty() ? Mask{0} : (Mask{1} << names.size()) - 1});
    std::vector<int> proj(x.size());
    for (int p = 0; p < x.size(); ++p)
        proj[p] = shell.index_of(rep[cls[p]]);

    // Opens of the quotient = images of saturated opens.
    std::vector<Mask> qopens;
    for (Mask o : x.opens()) {
        Mask img = 0;
        bool saturated = true;
        for (int p : bits_of(o))
            img |= bit(proj[p]);
        for (int p = 0; saturated && p < x.size(); ++p)
            if (has(img, proj[p]) && !has(o, p))
                saturated = false;
        if (saturated)
            qopens.push_back(img);
    }
    FinSpace q(names, qopens);
    return {q, CtsMap(x, q, proj)};
}

std::pair<FinSpace, CtsMap> quotient_space(const FinSpace& x,
                                           const std::vector<std::vector<std::string>>& classes)
{
    std::vector<int> cls(x.size(), -1);
    for (std::size_t c = 0; c < classes.size(); ++c) {
        expect(!classes[c].empty(), Errc::invalid_partition, "empty class in partition");
        for (const auto& n : classes[c]) {
            int i = x.index_of(n);
            expect(i >= 0, Errc::invalid_partition, "partition mentions unknown point");
            expect(cls[i] == -1, Errc::invalid_partition, "point in two classes");
            cls[i] = static_cast<int>(c);
        }
    }
    for (int p = 0; p < x.size(); ++p)
        expect(cls[p] >= 0, Errc::invalid_partition, "point missing from partition");
    return quotient_by_ids(x, cls);
}

FinSpace subspace(const FinSpace& x, Mask s)
{
    expect((s & ~x.full()) == 0, Errc::invalid_subset, "subset not within points");
    std::vector<int> idx(x.size(), -1);
    std::vector<std::string> names;
    for (int p : bits_of(s)) {
        idx[p] = static_cast<int>(names.size());
        names.push_back(x.name(p));
    }
    std::set<Mask> sub;
    for (Mask o : x.opens()) {
        Mask t = 0;
        for (int p : bits_of(o & s))
            t |= bit(idx[p]);
        sub.insert(t);
    }
    return FinSpace(names, {sub.begin(), sub.end()});
}

FinSpace subspace_named(const FinSpace& x, const std::vector<std::string>& names)
{
    return subspace(x, x.mask_of(names));
}

FiberProduct fiber_product(const CtsMap& f, const CtsMap& g)
{
    expect(f.target == g.target, Errc::target_mismatch,
           "fiber product requires a shared target");

    std::vector<std::pair<int, int>> pairs;
    std::vector<std::string> names;
    for (int x = 0; x < f.source.size(); ++x)
        for (int y = 0; y < g.source.size(); ++y)
            if (f(x) == g(y)) {
                pairs.emplace_back(x, y);
                names.push_back("(" + f.source.name(x) + "," + g.source.name(y) + ")");
            }
    expect(pairs.size() <= 64, Errc::too_large, "fiber product has more than 64 points");

    // names are not sorted in pair order; build the space, then wire graphs
    std::vector<std::string> sorted = names;
    std::sort(sorted.begin(), sorted.end());
    FinSpace shell(sorted, {0, sorted.empty() ? Mask{0} : (Mask{1} << sorted.size()) - 1});

    std::vector<int> slot(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i)
        slot[i] = shell.index_of(names[i]);

    // minimal neighborhood of (x,y): the rectangle of minimal neighborhoods
    // intersected with the pair set; these generate the subspace-of-product
    // topology under union
    std::vector<Mask> nb(pairs.size(), 0);
    for (std::size_t i = 0; i < pairs.size(); ++i)
        for (std::size_t j = 0; j < pairs.size(); ++j)
            if (has(f.source.min_nbhd(pairs[i].first), pairs[j].first) &&
                has(g.source.min_nbhd(pairs[i].second), pairs[j].second))
                nb[slot[i]] |= bit(slot[j]);

    FinSpace space(sorted, detail::union_closure(nb, std::size_t{1} << 21));

    std::vector<int> g1(pairs.size()), g2(pairs.size());
    std::vector<std::pair<int, int>> ordered(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        g1[slot[i]] = pairs[i].first;
        g2[slot[i]] = pairs[i].second;
        ordered[slot[i]] = pairs[i];
    }
    return FiberProduct{space, CtsMap(space, f.source, g1), CtsMap(space, g.source, g2),
                        ordered};
}

} // namespace gw
