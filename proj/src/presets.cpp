#include "gw/presets.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "gw/textio.hpp"

namespace gw {

namespace {

struct ArrowDecl {
    std::string name, src, dst;
};

FinGroupoid assemble(const std::vector<std::string>& objs,
                     const std::vector<std::vector<std::string>>& obj_basis,
                     const std::vector<ArrowDecl>& arrs,
                     const std::vector<std::vector<std::string>>& arr_basis,
                     const std::function<std::string(const std::string&)>& unit_of,
                     const std::function<std::string(const std::string&)>& inv_of,
                     const std::function<std::string(const std::string&, const std::string&)>&
                         comp_of)
{
    FinGroupoid g;
    g.objects = make_space(objs, obj_basis);
    std::vector<std::string> arr_names;
    for (const auto& a : arrs)
        arr_names.push_back(a.name);
    g.arrows = make_space(arr_names, arr_basis);

    int na = g.n_arr(), no = g.n_obj();
    g.dom_.assign(na, -1);
    g.cod_.assign(na, -1);
    g.inv_.assign(na, -1);
    g.unit_.assign(no, -1);
    g.comp_.assign(na, std::vector<int>(na, -1));

    for (const auto& a : arrs) {
        int i = g.arrows.index_of(a.name);
        g.dom_[i] = g.objects.index_of(a.src);
        g.cod_[i] = g.objects.index_of(a.dst);
    }
    for (int x = 0; x < no; ++x)
        g.unit_[x] = g.arrows.index_of(unit_of(g.objects.name(x)));
    for (int a = 0; a < na; ++a)
        g.inv_[a] = g.arrows.index_of(inv_of(g.arrows.name(a)));
    for (int a = 0; a < na; ++a)
        for (int b = 0; b < na; ++b)
            if (g.dom(a) == g.cod(b))
                g.comp_[a][b] = g.arrows.index_of(comp_of(g.arrows.name(a), g.arrows.name(b)));

    GroupoidReport rep = validate_groupoid(g);
    expect(rep.axioms_ok && rep.continuity_ok, Errc::internal,
           "assembled groupoid fails validation: " +
               (rep.problems.empty() ? std::string("?") : rep.problems.front()));
    return g;
}

std::vector<std::vector<std::string>> discrete_basis(const std::vector<std::string>& atoms)
{
    std::vector<std::vector<std::string>> out;
    for (const auto& a : atoms)
        out.push_back({a});
    return out;
}

FinGroupoid make_pair_groupoid(const std::vector<std::string>& objs, bool discrete,
                               const std::vector<std::vector<std::string>>& obj_basis_in = {})
{
    std::vector<std::vector<std::string>> obj_basis =
        obj_basis_in.empty() ? (discrete ? discrete_basis(objs)
                                         : std::vector<std::vector<std::string>>{})
                             : obj_basis_in;
    FinSpace base = make_space(objs, obj_basis);

    auto arrow_name = [](const std::string& s, const std::string& d) { return s + "_" + d; };
    std::vector<ArrowDecl> arrs;
    for (const auto& s : objs)
        for (const auto& d : objs)
            arrs.push_back({arrow_name(s, d), s, d});

    // product topology: the minimal neighborhood of (s,d) is the rectangle
    // of the two minimal base neighborhoods
    std::vector<std::vector<std::string>> arr_basis;
    for (const auto& s : objs)
        for (const auto& d : objs) {
            std::vector<std::string> nb;
            for (const auto& s2 : base.names_of(base.min_nbhd(base.index_of(s))))
                for (const auto& d2 : base.names_of(base.min_nbhd(base.index_of(d))))
                    nb.push_back(arrow_name(s2, d2));
            arr_basis.push_back(nb);
        }

    auto split = [](const std::string& n) {
        auto p = n.find('_');
        return std::pair<std::string, std::string>{n.substr(0, p), n.substr(p + 1)};
    };
    return assemble(
        objs, obj_basis, arrs, arr_basis,
        [&](const std::string& x) { return arrow_name(x, x); },
        [&](const std::string& a) {
            auto [s, d] = split(a);
            return arrow_name(d, s);
        },
        [&](const std::string& a2, const std::string& a1) {
            auto [mid, dst] = split(a2);
            auto [src, mid2] = split(a1);
            return arrow_name(src, dst);
        });
}

FinGroupoid make_cyclic_action(const FinSpace& base, const std::vector<int>& psi, int d)
{
    // action groupoid of Z_d acting through the homeomorphism psi
    std::vector<std::string> objs = base.points();
    std::vector<std::vector<std::string>> obj_basis;
    for (int p = 0; p < base.size(); ++p)
        obj_basis.push_back(base.names_of(base.min_nbhd(p)));

    auto arrow_name = [&](int k, const std::string& x) {
        return "g" + std::to_string(k) + "_" + x;
    };
    std::vector<int> power(base.size()); // psi^k incrementally
    std::vector<ArrowDecl> arrs;
    std::map<std::string, std::pair<int, std::string>> parts; // name -> (k, src)
    for (int p = 0; p < base.size(); ++p)
        power[p] = p;
    for (int k = 0; k < d; ++k) {
        for (int p = 0; p < base.size(); ++p) {
            std::string nm = arrow_name(k, base.name(p));
            arrs.push_back({nm, base.name(p), base.name(power[p])});
            parts[nm] = {k, base.name(p)};
        }
        for (int p = 0; p < base.size(); ++p)
            power[p] = psi[power[p]];
    }

    // disjoint copies of the base, one per group element
    std::vector<std::vector<std::string>> arr_basis;
    for (int k = 0; k < d; ++k)
        for (int p = 0; p < base.size(); ++p) {
            std::vector<std::string> nb;
            for (const auto& q : base.names_of(base.min_nbhd(p)))
                nb.push_back(arrow_name(k, q));
            arr_basis.push_back(nb);
        }

    auto apply_pow = [&](int k, const std::string& x) {
        int p = base.index_of(x);
        for (int i = 0; i < k; ++i)
            p = psi[p];
        return base.name(p);
    };
    return assemble(
        objs, obj_basis, arrs, arr_basis,
        [&](const std::string& x) { return arrow_name(0, x); },
        [&](const std::string& a) {
            auto [k, src] = parts.at(a);
            return arrow_name((d - k) % d, apply_pow(k, src));
        },
        [&](const std::string& a2, const std::string& a1) {
            auto [k2, src2] = parts.at(a2);
            auto [k1, src1] = parts.at(a1);
            return arrow_name((k1 + k2) % d, src1);
        });
}

std::vector<std::vector<int>> homeomorphisms(const FinSpace& x)
{
    std::vector<int> perm(x.size());
    for (int i = 0; i < x.size(); ++i)
        perm[i] = i;
    std::vector<std::vector<int>> out;
    do {
        bool ok = true;
        for (Mask o : x.opens()) {
            Mask img = 0;
            for (int p : bits_of(o))
                img |= bit(perm[p]);
            if (!x.is_open(img))
                ok = false;
        }
        if (ok)
            out.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

FinSpace random_space(Rng& rng, int max_pts, const std::string& stem)
{
    int n = 1 + static_cast<int>(rng.below(max_pts));
    std::vector<std::string> pts;
    for (int i = 0; i < n; ++i)
        pts.push_back(stem + std::to_string(i));
    int kind = static_cast<int>(rng.below(3));
    if (kind == 0)
        return make_space(pts, discrete_basis(pts));
    if (kind == 1)
        return make_space(pts, {});
    std::vector<Mask> gens;
    for (int i = 0; i < 2; ++i)
        gens.push_back(rng.next() & ((Mask{1} << n) - 1));
    return make_space_masks(pts, gens);
}

} // namespace

FinGroupoid make_z2()
{
    return assemble(
        {"*"}, {{"*"}}, {{"1", "*", "*"}, {"s", "*", "*"}}, {{"1"}, {"s"}},
        [](const std::string&) { return "1"; },
        [](const std::string& a) { return a; },
        [](const std::string& a2, const std::string& a1) {
            return a2 == a1 ? std::string("1") : std::string("s");
        });
}

FinGroupoid make_d2()
{
    return assemble(
        {"a", "b"}, {{"a"}, {"b"}}, {{"1a", "a", "a"}, {"1b", "b", "b"}}, {{"1a"}, {"1b"}},
        [](const std::string& x) { return "1" + x; },
        [](const std::string& a) { return a; },
        [](const std::string& a2, const std::string&) { return a2; });
}

FinGroupoid make_i2()
{
    return assemble(
        {"a", "b"}, {}, {{"1a", "a", "a"}, {"1b", "b", "b"}}, {},
        [](const std::string& x) { return "1" + x; },
        [](const std::string& a) { return a; },
        [](const std::string& a2, const std::string&) { return a2; });
}

FinGroupoid make_p2()
{
    auto comp = [](const std::string& a2, const std::string& a1) -> std::string {
        auto cod = [](const std::string& a) { return a == "1a" || a == "g" ? "a" : "b"; };
        auto dom = [](const std::string& a) { return a == "1a" || a == "f" ? "a" : "b"; };
        std::string s = dom(a1), d = cod(a2);
        if (s == "a" && d == "a")
            return "1a";
        if (s == "b" && d == "b")
            return "1b";
        if (s == "a")
            return "f";
        return "g";
    };
    return assemble(
        {"a", "b"}, {{"a"}, {"b"}},
        {{"1a", "a", "a"}, {"1b", "b", "b"}, {"f", "a", "b"}, {"g", "b", "a"}},
        {{"1a"}, {"1b"}, {"f"}, {"g"}},
        [](const std::string& x) { return "1" + x; },
        [](const std::string& a) {
            if (a == "f")
                return std::string("g");
            if (a == "g")
                return std::string("f");
            return a;
        },
        comp);
}

FinGroupoid disjoint_union(const FinGroupoid& a, const FinGroupoid& b)
{
    auto prefixed = [](const FinSpace& s, const std::string& pre) {
        std::vector<std::string> out;
        for (const auto& n : s.points())
            out.push_back(pre + n);
        return out;
    };
    std::vector<std::string> objs = prefixed(a.objects, "u0_");
    for (const auto& n : prefixed(b.objects, "u1_"))
        objs.push_back(n);

    auto basis_of = [](const FinSpace& s, const std::string& pre) {
        std::vector<std::vector<std::string>> out;
        for (int p = 0; p < s.size(); ++p) {
            std::vector<std::string> nb;
            for (const auto& n : s.names_of(s.min_nbhd(p)))
                nb.push_back(pre + n);
            out.push_back(nb);
        }
        return out;
    };
    std::vector<std::vector<std::string>> obj_basis = basis_of(a.objects, "u0_");
    for (auto& v : basis_of(b.objects, "u1_"))
        obj_basis.push_back(v);

    std::vector<ArrowDecl> arrs;
    for (int i = 0; i < a.n_arr(); ++i)
        arrs.push_back({"u0_" + a.arrows.name(i), "u0_" + a.objects.name(a.dom(i)),
                        "u0_" + a.objects.name(a.cod(i))});
    for (int i = 0; i < b.n_arr(); ++i)
        arrs.push_back({"u1_" + b.arrows.name(i), "u1_" + b.objects.name(b.dom(i)),
                        "u1_" + b.objects.name(b.cod(i))});
    std::vector<std::vector<std::string>> arr_basis = basis_of(a.arrows, "u0_");
    for (auto& v : basis_of(b.arrows, "u1_"))
        arr_basis.push_back(v);

    auto side = [&](const std::string& n) { return n.substr(0, 3) == "u0_" ? 0 : 1; };
    auto strip = [](const std::string& n) { return n.substr(3); };
    auto pick = [&](int s) -> const FinGroupoid& { return s == 0 ? a : b; };
    return assemble(
        objs, obj_basis, arrs, arr_basis,
        [&](const std::string& x) {
            const FinGroupoid& g = pick(side(x));
            return (side(x) == 0 ? "u0_" : "u1_") +
                   g.arrows.name(g.unit(g.objects.index_of(strip(x))));
        },
        [&](const std::string& ar) {
            const FinGroupoid& g = pick(side(ar));
            return (side(ar) == 0 ? "u0_" : "u1_") +
                   g.arrows.name(g.inv(g.arrows.index_of(strip(ar))));
        },
        [&](const std::string& a2, const std::string& a1) {
            const FinGroupoid& g = pick(side(a2));
            return (side(a2) == 0 ? "u0_" : "u1_") +
                   g.arrows.name(g.comp(g.arrows.index_of(strip(a2)),
                                        g.arrows.index_of(strip(a1))));
        });
}

FinGroupoid random_groupoid(std::uint64_t seed, int max_obj, int max_arr)
{
    Rng rng(seed ^ 0xa5a5a5a55a5a5a5aULL);
    for (int attempt = 0; attempt < 64; ++attempt) {
        try {
            int strategy = static_cast<int>(rng.below(4));
            FinGroupoid cand;
            if (strategy == 3 && max_obj >= 2) {
                FinGroupoid left = random_groupoid(rng.next(), 1, max_arr / 2);
                FinGroupoid right = random_groupoid(rng.next(), max_obj - left.n_obj(),
                                                    max_arr - left.n_arr());
                cand = disjoint_union(left, right);
            } else if (strategy == 2) {
                FinSpace base = random_space(rng, std::min(max_obj, 3), "x");
                if (base.size() * base.size() > max_arr)
                    continue;
                cand = make_pair_groupoid(base.points(), false,
                                          [&] {
                                              std::vector<std::vector<std::string>> bs;
                                              for (int p = 0; p < base.size(); ++p)
                                                  bs.push_back(
                                                      base.names_of(base.min_nbhd(p)));
                                              return bs;
                                          }());
            } else {
                FinSpace base = random_space(rng, max_obj, "x");
                std::vector<std::vector<int>> homs = homeomorphisms(base);
                std::vector<int> phi = homs[rng.below(homs.size())];
                int ord = 1;
                {
                    std::vector<int> p = phi;
                    auto is_id = [&](const std::vector<int>& q) {
                        for (int i = 0; i < base.size(); ++i)
                            if (q[i] != i)
                                return false;
                        return true;
                    };
                    while (!is_id(p)) {
                        std::vector<int> q(base.size());
                        for (int i = 0; i < base.size(); ++i)
                            q[i] = phi[p[i]];
                        p = q;
                        ++ord;
                    }
                }
                // Z_d acts through phi^(ord/o) whenever o | d; gather the
                // admissible (o, d) pairs and pick one at random, so the
                // corpus also contains groups larger than the homeomorphism
                // orbit (acting non-faithfully)
                std::vector<std::pair<int, int>> choices; // (o, d)
                for (int o = 1; o <= ord; ++o) {
                    if (ord % o != 0)
                        continue;
                    for (int d = o; d * base.size() <= max_arr; d += o)
                        choices.emplace_back(o, d);
                }
                if (choices.empty())
                    continue;
                auto [o, d] = choices[rng.below(choices.size())];
                std::vector<int> psi(base.size());
                for (int i = 0; i < base.size(); ++i)
                    psi[i] = i;
                for (int rep = 0; rep < ord / o; ++rep) {
                    std::vector<int> q(base.size());
                    for (int i = 0; i < base.size(); ++i)
                        q[i] = phi[psi[i]];
                    psi = q;
                }
                cand = make_cyclic_action(base, psi, d);
            }
            GroupoidReport rep = validate_groupoid(cand);
            if (rep.all_ok() && cand.n_obj() <= max_obj && cand.n_arr() <= max_arr)
                return cand;
        } catch (const Error&) {
            // retry with fresh randomness
        }
    }
    fail(Errc::internal, "random generator exhausted its retry budget");
}

FinGroupoid generate_preset(const std::string& spec, std::uint64_t seed)
{
    if (spec == "Z2")
        return make_z2();
    if (spec == "D2")
        return make_d2();
    if (spec == "I2")
        return make_i2();
    if (spec == "P2")
        return make_p2();
    if (spec.rfind("pair:", 0) == 0) {
        std::string rest = spec.substr(5);
        auto colon = rest.find(':');
        expect(colon != std::string::npos, Errc::unknown_preset,
               "pair spec must be pair:<n>:discrete|indiscrete");
        int n = 0;
        try {
            n = std::stoi(rest.substr(0, colon));
        } catch (...) {
            fail(Errc::unknown_preset, "bad point count in pair spec");
        }
        std::string topo = rest.substr(colon + 1);
        expect(n >= 1 && n <= 4, Errc::unknown_preset, "pair spec supports 1..4 points");
        expect(topo == "discrete" || topo == "indiscrete", Errc::unknown_preset,
               "pair topology must be discrete or indiscrete");
        if (n == 2 && topo == "discrete")
            return make_p2();
        std::vector<std::string> objs;
        for (int i = 0; i < n; ++i)
            objs.push_back(std::string(1, static_cast<char>('a' + i)));
        return make_pair_groupoid(objs, topo == "discrete");
    }
    if (spec.rfind("group:z", 0) == 0) {
        int n = 0;
        try {
            n = std::stoi(spec.substr(7));
        } catch (...) {
            fail(Errc::unknown_preset, "bad order in group spec");
        }
        expect(n >= 1 && n <= 12, Errc::unknown_preset, "group spec supports z1..z12");
        FinSpace pt = make_space({"*"}, {{"*"}});
        std::vector<int> psi{0};
        return make_cyclic_action(pt, psi, n);
    }
    if (spec.rfind("action:z", 0) == 0) {
        // action:z<k>:<n> — Z_k acting on n discrete points by an n-cycle;
        // needs n | k so that the cycle has order dividing k
        std::string rest = spec.substr(8);
        auto colon = rest.find(':');
        expect(colon != std::string::npos, Errc::unknown_preset,
               "action spec must be action:z<k>:<n>");
        int k = 0, n = 0;
        try {
            k = std::stoi(rest.substr(0, colon));
            n = std::stoi(rest.substr(colon + 1));
        } catch (...) {
            fail(Errc::unknown_preset, "bad numbers in action spec");
        }
        expect(n >= 1 && k >= 1 && k * n <= 24, Errc::unknown_preset,
               "action spec supports k*n up to 24");
        expect(k % n == 0, Errc::unknown_preset, "action spec needs n dividing k");
        std::vector<std::string> pts;
        for (int i = 0; i < n; ++i)
            pts.push_back("x" + std::to_string(i)); // single digit, sorted
        FinSpace base = make_space(pts, discrete_basis(pts));
        std::vector<int> psi(n);
        for (int i = 0; i < n; ++i)
            psi[i] = (i + 1) % n;
        return make_cyclic_action(base, psi, k);
    }
    if (spec.rfind("sum:", 0) == 0) {
        std::string rest = spec.substr(4);
        auto plus = rest.find('+');
        expect(plus != std::string::npos, Errc::unknown_preset,
               "sum spec must be sum:<spec>+<spec>");
        return disjoint_union(generate_preset(rest.substr(0, plus), seed),
                              generate_preset(rest.substr(plus + 1), seed + 1));
    }
    if (spec == "random")
        return random_groupoid(seed);
    fail(Errc::unknown_preset, "unknown preset \"" + spec + "\"");
}

} // namespace gw
