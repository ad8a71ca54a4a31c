// Acceptance suite: runs the full property battery over the desk corpus
// (the four presets plus 25 seeded random open groupoids) and prints one
// PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include "gw/cli.hpp"
#include "gw/eqsheaf.hpp"
#include "gw/galois.hpp"
#include "gw/presets.hpp"
#include "gw/report.hpp"
#include "gw/restrict.hpp"
#include "gw/site.hpp"
#include "gw/textio.hpp"

using namespace gw;

namespace {

struct Corpus {
    std::vector<std::pair<std::string, FinGroupoid>> entries;
};

Corpus build_corpus()
{
    Corpus c;
    c.entries.emplace_back("Z2", make_z2());
    c.entries.emplace_back("D2", make_d2());
    c.entries.emplace_back("I2", make_i2());
    c.entries.emplace_back("P2", make_p2());
    for (std::uint64_t seed = 1; seed <= 25; ++seed)
        c.entries.emplace_back("random-" + std::to_string(seed), random_groupoid(seed));
    return c;
}

// Criterion 1 oracle: filter every arrow subset from scratch.
int count_subgroupoids_by_filter(const FinGroupoid& g)
{
    int count = 0;
    for (Mask n = 0;; ++n) {
        bool ok = g.arrows.is_open(n);
        if (ok)
            for (int a : bits_of(n))
                if (!has(n, g.inv(a)))
                    ok = false;
        if (ok)
            for (int a : bits_of(n))
                for (int b : bits_of(n))
                    if (g.dom(a) == g.cod(b) && !has(n, g.comp(a, b)))
                        ok = false;
        if (ok && g.dom_image(n) == g.cod_image(n))
            ++count;
        if (n == g.arrows.full())
            break;
    }
    return count;
}

bool criterion_subgroupoid_counts(const Corpus& corpus, std::string& details)
{
    const std::vector<std::pair<std::string, int>> expected = {
        {"Z2", 3}, {"D2", 4}, {"P2", 5}, {"I2", 2}};
    for (const auto& [name, want] : expected) {
        const FinGroupoid* g = nullptr;
        for (const auto& [n, gg] : corpus.entries)
            if (n == name)
                g = &gg;
        int oracle = count_subgroupoids_by_filter(*g);
        int lib = static_cast<int>(enumerate_open_subgroupoids(*g).size());
        if (oracle != want || lib != want) {
            details = name + ": oracle " + std::to_string(oracle) + ", library " +
                      std::to_string(lib) + ", expected " + std::to_string(want);
            return false;
        }
    }
    // the library enumeration agrees with the filter on the whole corpus
    for (const auto& [name, g] : corpus.entries)
        if (count_subgroupoids_by_filter(g) !=
            static_cast<int>(enumerate_open_subgroupoids(g).size())) {
            details = name + ": enumeration disagrees with the subset filter";
            return false;
        }
    details = "counts 3/4/5/2 and corpus-wide filter agreement";
    return true;
}

bool criterion_tset_bijection(const Corpus& corpus, std::string& details)
{
    // the worked Z2 counts
    {
        FinGroupoid z2 = make_z2();
        std::vector<SiteObject> site = site_objects(z2);
        if (site.size() != 3)
            return false;
        const SiteObject& small = site[1]; // ({*},{1})
        const SiteObject& big = site[2];   // ({*},{1,s})
        if (enumerate_tsets(z2, small, big).size() != 1 ||
            enumerate_tsets(z2, big, small).size() != 0 ||
            enumerate_tsets(z2, small, small).size() != 2) {
            details = "Z2 hom counts are not 1/0/2";
            return false;
        }
    }
    long long pairs = 0, morphisms = 0;
    for (const auto& [name, g] : corpus.entries) {
        std::vector<SiteObject> site = site_objects(g);
        for (const SiteObject& a : site)
            for (const SiteObject& b : site) {
                std::vector<TSet> ts = enumerate_tsets(g, a, b);
                std::vector<EqMap> maps = enumerate_eq_maps(a.gun().sheaf, b.gun().sheaf);
                std::vector<EqMap> graphs;
                for (const TSet& t : ts)
                    graphs.push_back(tset_graph(g, t));
                std::sort(graphs.begin(), graphs.end());
                if (std::adjacent_find(graphs.begin(), graphs.end()) != graphs.end()) {
                    details = name + ": two T-sets share a graph";
                    return false;
                }
                if (graphs != maps) {
                    details = name + ": T-sets and sheaf morphisms differ";
                    return false;
                }
                ++pairs;
                morphisms += static_cast<long long>(ts.size());
            }
    }
    details = std::to_string(pairs) + " object pairs, " + std::to_string(morphisms) +
              " morphisms";
    return true;
}

bool criterion_subobject_frames(const Corpus& corpus, std::string& details)
{
    {
        FinGroupoid p2 = make_p2();
        SiteObject ids = make_site_object(
            p2, OpenSubgroupoid{p2.objects.full(), p2.arrows.mask_of({"1a", "1b"})});
        if (subobject_lattice(p2, ids).opens.size() != 4) {
            details = "P2 identity object does not have 4 subobjects";
            return false;
        }
    }
    int total = 0;
    for (const auto& [name, g] : corpus.entries)
        for (const SiteObject& a : site_objects(g)) {
            SubobjectLattice lat = subobject_lattice(g, a);
            for (Mask v : lat.opens) {
                Mask s = sub_from_open(a, v);
                if (open_from_sub(g, a, s) != v || !a.gun().sheaf.total.is_open(s)) {
                    details = name + ": round trip fails";
                    return false;
                }
                for (Mask w : lat.opens)
                    if (sub_from_open(a, v | w) !=
                            (sub_from_open(a, v) | sub_from_open(a, w)) ||
                        sub_from_open(a, v & w) !=
                            (sub_from_open(a, v) & sub_from_open(a, w))) {
                        details = name + ": meet/join not preserved";
                        return false;
                    }
                subobject_site_object(g, a, v); // throws if not a site object
            }
            // every action-closed open class set comes from the lattice
            for (Mask s : a.gun().sheaf.total.opens()) {
                bool closed = true;
                for (int arr = 0; arr < g.n_arr(); ++arr)
                    for (int c : bits_of(s))
                        if (a.gun().sheaf.act[arr][c] != -1 &&
                            !has(s, a.gun().sheaf.act[arr][c]))
                            closed = false;
                if (closed && sub_from_open(a, open_from_sub(g, a, s)) != s) {
                    details = name + ": an action-closed open is not a subobject image";
                    return false;
                }
            }
            total += static_cast<int>(lat.opens.size());
        }
    details = std::to_string(total) + " subobjects checked";
    return true;
}

bool criterion_guns_generate(const Corpus& corpus, std::string& details)
{
    long long count = 0;
    for (const auto& [name, g] : corpus.entries)
        for (const EqSheaf& r : enumerate_eqsheaves(g, 6)) {
            ++count;
            if (!gun_cover_check(r)) {
                details = name + ": a sheaf is not covered by lifted sections";
                return false;
            }
        }
    details = std::to_string(count) + " sheaves with at most 6 elements";
    return true;
}

bool criterion_restriction(const Corpus& corpus, std::string& details)
{
    long long inclusions = 0, lifts = 0;
    for (const auto& [name, g] : corpus.entries) {
        for (Mask h0 : replete_subsets(g)) {
            RepleteInclusion inc = replete_subgroupoid(g, h0);
            ++inclusions;

            // pullback isomorphism for every site object (verified inside)
            for (const SiteObject& a : site_objects(g))
                restrict_object(inc, a);

            // the composition-intersection identity, all open pairs
            for (Mask v : g.arrows.opens())
                for (Mask w : g.arrows.opens())
                    if ((g.compose_image(v, w) & inc.h1) !=
                        g.compose_image(v & inc.h1, w & inc.h1)) {
                        details = name + ": composition-intersection identity fails";
                        return false;
                    }

            SiteFunctorReport rep = verify_site_restriction(inc);
            if (!rep.essentially_surjective) {
                details = name + ": I∘J is not the identity";
                return false;
            }
            if (!rep.essentially_full || !rep.functorial) {
                details = name + ": lifting fails" +
                          (rep.problems.empty() ? "" : ": " + rep.problems.front());
                return false;
            }
            lifts += rep.morphisms_lifted;
        }
    }
    details = std::to_string(inclusions) + " inclusions, " + std::to_string(lifts) +
              " lifted morphisms";
    return true;
}

bool criterion_domination(const Corpus& corpus, std::string& details)
{
    // pinned example values
    FinGroupoid d2 = make_d2(), i2 = make_i2(), p2 = make_p2();
    if (gd_closure(d2, d2.objects.mask_of({"a"})) != d2.objects.mask_of({"a"}) ||
        gd_closure(i2, i2.objects.mask_of({"a"})) != i2.objects.full() ||
        gd_closure(p2, p2.objects.mask_of({"a"})) != p2.objects.full() ||
        !is_definable(d2, d2.objects.mask_of({"a"})) ||
        is_definable(i2, i2.objects.mask_of({"a"}))) {
        details = "worked closure/definability values are off";
        return false;
    }
    long long subsets = 0;
    for (const auto& [name, g] : corpus.entries) {
        GaloisReport rep = verify_galois_laws(g);
        if (!rep.all_ok()) {
            details = name + ": " + (rep.problems.empty() ? "?" : rep.problems.front());
            return false;
        }
        subsets += rep.subsets_scanned;
    }
    details = std::to_string(subsets) + " subsets scanned";
    return true;
}

bool criterion_derived_gates(const Corpus& corpus, std::string& details)
{
    long long composites = 0, comparisons = 0;
    for (const auto& [name, g] : corpus.entries) {
        std::vector<SiteObject> site = site_objects(g);
        int n = static_cast<int>(site.size());
        // product-law gate: tset_compose validates every composite against
        // the function-composition oracle and throws on disagreement
        try {
            std::vector<std::vector<std::vector<TSet>>> hom(
                n, std::vector<std::vector<TSet>>(n));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    hom[i][j] = enumerate_tsets(g, site[i], site[j]);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    for (int k = 0; k < n; ++k)
                        for (const TSet& t1 : hom[i][j])
                            for (const TSet& t2 : hom[j][k]) {
                                tset_compose(g, t1, t2);
                                ++composites;
                            }
            for (Mask h0 : replete_subsets(g)) {
                RepleteInclusion inc = replete_subgroupoid(g, h0);
                comparisons += static_cast<long long>(comparison_vhats(inc, site).size());
            }
        } catch (const Error& e) {
            details = name + ": " + e.what();
            return false;
        }
    }
    details = std::to_string(composites) + " composites, " + std::to_string(comparisons) +
              " comparisons";
    return true;
}

bool criterion_determinism(const Corpus& corpus, std::string& details)
{
    for (const auto& [name, g] : corpus.entries) {
        std::string path = "acceptance_" + name + ".gw";
        {
            std::ofstream out(path);
            out << serialize_groupoid(g);
        }
        std::ostringstream out1, err1, out2, err2;
        int c1 = run_command({"--format", "machine", "check", path, "--all"}, out1, err1);
        int c2 = run_command({"--format", "machine", "check", path, "--all"}, out2, err2);
        std::remove(path.c_str());
        if (c1 != 0 || c2 != 0) {
            details = name + ": check --all did not pass";
            return false;
        }
        if (out1.str() != out2.str() || out1.str().empty()) {
            details = name + ": machine reports differ between runs";
            return false;
        }
    }
    details = "byte-identical machine reports across the corpus";
    return true;
}

} // namespace

int main()
{
    Corpus corpus = build_corpus();
    struct Item {
        std::string name;
        bool (*fn)(const Corpus&, std::string&);
        double limit_s; // pinned runtime bound; 0 = none stated
    };
    const std::vector<Item> items = {
        {"subgroupoid-counts", criterion_subgroupoid_counts, 1.0},
        {"tset-bijection", criterion_tset_bijection, 60.0},
        {"subobject-frames", criterion_subobject_frames, 0.0},
        {"guns-generate", criterion_guns_generate, 0.0},
        {"restriction-suite", criterion_restriction, 300.0},
        {"domination-suite", criterion_domination, 0.0},
        {"derived-law-gates", criterion_derived_gates, 0.0},
        {"determinism", criterion_determinism, 0.0},
    };

    bool all = true;
    int idx = 0;
    for (const Item& item : items) {
        ++idx;
        std::string details;
        auto start = std::chrono::steady_clock::now();
        bool pass = false;
        try {
            pass = item.fn(corpus, details);
        } catch (const std::exception& e) {
            details = e.what();
        }
        double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (item.limit_s > 0 && secs > item.limit_s) {
            pass = false;
            details += " [exceeded " + std::to_string(item.limit_s) + " s limit]";
        }
        all &= pass;
        std::printf("%s  criterion-%d  %-20s  (%.2f s)  %s\n", pass ? "PASS" : "FAIL", idx,
                    item.name.c_str(), secs, details.c_str());
    }
    std::printf("%s\n", all ? "ACCEPTANCE: all criteria pass" : "ACCEPTANCE: FAILURES");
    return all ? 0 : 1;
}
