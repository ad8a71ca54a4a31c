#include "gw/cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gw/galois.hpp"
#include "gw/presets.hpp"
#include "gw/report.hpp"
#include "gw/restrict.hpp"
#include "gw/site.hpp"
#include "gw/textio.hpp"

namespace gw {

namespace {

using njson = nlohmann::ordered_json;

FinGroupoid load_file(const std::string& path)
{
    std::ifstream in(path);
    expect(in.good(), Errc::parse_error, "cannot open \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_groupoid(buf.str());
}

std::vector<std::string> split_commas(const std::string& s)
{
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == ',') {
            if (!cur.empty())
                out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty())
        out.push_back(cur);
    return out;
}

std::string join_names(const std::vector<std::string>& names)
{
    std::string out = "{";
    for (std::size_t i = 0; i < names.size(); ++i)
        out += (i ? "," : "") + names[i];
    return out + "}";
}

njson subgroupoid_json(const FinGroupoid& g, const OpenSubgroupoid& sub)
{
    njson j;
    j["U"] = g.objects.names_of(sub.u);
    j["N"] = g.arrows.names_of(sub.n);
    return j;
}

} // namespace

int run_command(std::vector<std::string> args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"finite open topological groupoids, their equivariant sheaves, "
                 "site restriction and domination closures"};
    app.require_subcommand(1);
    std::string format = "human";
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"human", "machine"}));

    std::string file, set_arg, h0_arg, out_path, spec;
    std::uint64_t seed = 0;
    int max_obj = 3, max_arr = 10, obj1 = 0, obj2 = 0;
    bool check_all = false;

    CLI::App* validate = app.add_subcommand("validate", "validate a groupoid file");
    validate->add_option("file", file)->required();

    CLI::App* subgpds = app.add_subcommand("subgroupoids", "list the open subgroupoids");
    subgpds->add_option("file", file)->required();

    CLI::App* site_cmd = app.add_subcommand("site", "list the site objects with indices");
    site_cmd->add_option("file", file)->required();

    CLI::App* hom = app.add_subcommand("hom", "T-sets between two site objects, with the "
                                              "sheaf-morphism cross-check");
    hom->add_option("file", file)->required();
    hom->add_option("obj1", obj1)->required();
    hom->add_option("obj2", obj2)->required();

    CLI::App* subobjs = app.add_subcommand("subobjects", "subobject frame of a site object");
    subobjs->add_option("file", file)->required();
    subobjs->add_option("obj", obj1)->required();

    CLI::App* restrict_cmd =
        app.add_subcommand("restrict", "verify the induced site functor of an inclusion");
    restrict_cmd->add_option("file", file)->required();
    restrict_cmd->add_option("--h0", h0_arg, "carrier objects, comma separated")->required();

    CLI::App* closure_cmd = app.add_subcommand("closure", "domination closure of a subset");
    closure_cmd->add_option("file", file)->required();
    closure_cmd->add_option("--set", set_arg, "objects, comma separated")->required();

    CLI::App* definable_cmd =
        app.add_subcommand("definable", "is a replete carrier domination-closed?");
    definable_cmd->add_option("file", file)->required();
    definable_cmd->add_option("--set", set_arg, "objects, comma separated")->required();

    CLI::App* check = app.add_subcommand("check", "run the verification suite");
    check->add_option("file", file)->required();
    check->add_flag("--all", check_all, "run every check");

    CLI::App* gen = app.add_subcommand("gen", "generate an instance file");
    gen->add_option("spec", spec, "Z2|D2|I2|P2|pair:n:topo|group:zN|sum:a+b|random")
        ->required();
    gen->add_option("-o,--output", out_path, "output file")->required();
    gen->add_option("--seed", seed, "generator seed");
    gen->add_option("--max-obj", max_obj, "random generator object cap");
    gen->add_option("--max-arr", max_arr, "random generator arrow cap");

    try {
        std::vector<const char*> argv;
        argv.push_back("gw");
        for (const auto& a : args)
            argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            out << app.help();
            return 0;
        }
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    bool machine = format == "machine";
    try {
        if (*validate) {
            FinGroupoid g = load_file(file);
            GroupoidReport rep = validate_groupoid(g);
            if (machine) {
                njson j;
                j["axioms_ok"] = rep.axioms_ok;
                j["continuity_ok"] = rep.continuity_ok;
                j["is_open"] = rep.is_open;
                j["composition_open"] = rep.composition_open;
                j["problems"] = rep.problems;
                out << j.dump(2) << "\n";
            } else {
                out << "axioms_ok=" << rep.axioms_ok << " continuity_ok=" << rep.continuity_ok
                    << " is_open=" << rep.is_open
                    << " composition_open=" << rep.composition_open << "\n";
                for (const auto& p : rep.problems)
                    out << "  problem: " << p << "\n";
            }
            return 0;
        }
        if (*subgpds) {
            FinGroupoid g = load_file(file);
            std::vector<OpenSubgroupoid> subs = enumerate_open_subgroupoids(g);
            if (machine) {
                njson arr = njson::array();
                for (const auto& s : subs)
                    arr.push_back(subgroupoid_json(g, s));
                out << arr.dump(2) << "\n";
            } else {
                for (std::size_t i = 0; i < subs.size(); ++i)
                    out << i << ": U=" << join_names(g.objects.names_of(subs[i].u))
                        << " N=" << join_names(g.arrows.names_of(subs[i].n)) << "\n";
                out << subs.size() << " open subgroupoids\n";
            }
            return 0;
        }
        if (*site_cmd) {
            FinGroupoid g = load_file(file);
            std::vector<SiteObject> site = site_objects(g);
            if (machine) {
                njson arr = njson::array();
                for (const auto& a : site) {
                    njson j = subgroupoid_json(g, a.sub);
                    j["classes"] = a.gun().sheaf.total.points();
                    arr.push_back(j);
                }
                out << arr.dump(2) << "\n";
            } else {
                for (std::size_t i = 0; i < site.size(); ++i)
                    out << i << ": U=" << join_names(g.objects.names_of(site[i].sub.u))
                        << " N=" << join_names(g.arrows.names_of(site[i].sub.n)) << " ("
                        << site[i].gun().n_classes() << " classes)\n";
            }
            return 0;
        }
        if (*hom) {
            FinGroupoid g = load_file(file);
            std::vector<SiteObject> site = site_objects(g);
            expect(obj1 >= 0 && obj1 < static_cast<int>(site.size()) && obj2 >= 0 &&
                       obj2 < static_cast<int>(site.size()),
                   Errc::invalid_input, "site object index out of range (see `site`)");
            std::vector<TSet> ts = enumerate_tsets(g, site[obj1], site[obj2]);
            std::vector<EqMap> maps =
                enumerate_eq_maps(site[obj1].gun().sheaf, site[obj2].gun().sheaf);
            std::vector<EqMap> graphs;
            for (const TSet& t : ts)
                graphs.push_back(tset_graph(g, t));
            std::sort(graphs.begin(), graphs.end());
            bool bijective = graphs == maps;
            if (machine) {
                njson j;
                j["tsets"] = njson::array();
                for (const TSet& t : ts)
                    j["tsets"].push_back(g.arrows.names_of(t.t));
                j["tset_count"] = ts.size();
                j["eq_map_count"] = maps.size();
                j["bijection"] = bijective;
                out << j.dump(2) << "\n";
            } else {
                for (std::size_t i = 0; i < ts.size(); ++i)
                    out << i << ": T=" << join_names(g.arrows.names_of(ts[i].t)) << "\n";
                out << ts.size() << " T-sets, " << maps.size()
                    << " sheaf morphisms, oracle " << (bijective ? "agrees" : "DISAGREES")
                    << "\n";
            }
            return bijective ? 0 : 1;
        }
        if (*subobjs) {
            FinGroupoid g = load_file(file);
            std::vector<SiteObject> site = site_objects(g);
            expect(obj1 >= 0 && obj1 < static_cast<int>(site.size()), Errc::invalid_input,
                   "site object index out of range (see `site`)");
            SubobjectLattice lat = subobject_lattice(g, site[obj1]);
            if (machine) {
                njson arr = njson::array();
                for (Mask v : lat.opens) {
                    njson j;
                    j["V"] = g.objects.names_of(v);
                    j["classes"] =
                        site[obj1].gun().sheaf.total.names_of(sub_from_open(site[obj1], v));
                    arr.push_back(j);
                }
                out << arr.dump(2) << "\n";
            } else {
                for (std::size_t i = 0; i < lat.opens.size(); ++i)
                    out << i << ": V=" << join_names(g.objects.names_of(lat.opens[i]))
                        << "\n";
                out << lat.opens.size() << " subobjects\n";
            }
            return 0;
        }
        if (*restrict_cmd) {
            FinGroupoid g = load_file(file);
            RepleteInclusion inc = replete_subgroupoid_named(g, split_commas(h0_arg));
            SiteFunctorReport rep = verify_site_restriction(inc);
            if (machine) {
                njson j;
                j["essentially_surjective"] = rep.essentially_surjective;
                j["essentially_full"] = rep.essentially_full;
                j["preserves_identities"] = rep.functorial;
                j["objects_g"] = rep.objects_g;
                j["objects_h"] = rep.objects_h;
                j["morphisms_lifted"] = rep.morphisms_lifted;
                j["problems"] = rep.problems;
                njson wit = njson::array();
                for (const auto& w : rep.witnesses) {
                    njson e;
                    e["A"] = subgroupoid_json(g, w.a);
                    e["B"] = subgroupoid_json(g, w.b);
                    e["t_h"] = inc.sub.arrows.names_of(w.t_h);
                    e["S"] = g.arrows.names_of(w.s);
                    e["ok"] = w.ok;
                    wit.push_back(e);
                }
                j["witnesses"] = wit;
                out << j.dump(2) << "\n";
            } else {
                out << "essentially_surjective=" << rep.essentially_surjective
                    << " essentially_full=" << rep.essentially_full
                    << " preserves_identities=" << rep.functorial << " ("
                    << rep.objects_g << " G-objects, " << rep.objects_h << " H-objects, "
                    << rep.morphisms_lifted << " lifts)\n";
                for (const auto& p : rep.problems)
                    out << "  problem: " << p << "\n";
            }
            return rep.all_ok() ? 0 : 1;
        }
        if (*closure_cmd) {
            FinGroupoid g = load_file(file);
            Mask h0 = g.objects.mask_of(split_commas(set_arg));
            Mask cl = gd_closure(g, h0);
            if (machine) {
                njson j;
                j["closure"] = g.objects.names_of(cl);
                out << j.dump(2) << "\n";
            } else {
                out << "closure=" << join_names(g.objects.names_of(cl)) << "\n";
            }
            return 0;
        }
        if (*definable_cmd) {
            FinGroupoid g = load_file(file);
            Mask h0 = g.objects.mask_of(split_commas(set_arg));
            bool def = is_definable(g, h0);
            if (machine) {
                njson j;
                j["definable"] = def;
                out << j.dump(2) << "\n";
            } else {
                out << "definable=" << (def ? "true" : "false") << "\n";
            }
            return 0;
        }
        if (*check) {
            FinGroupoid g = load_file(file);
            RunReport rep = run_full_suite(g, check_all ? 6 : 4);
            if (machine)
                out << rep.render_machine();
            else
                rep.render_human(out);
            return rep.all_pass() ? 0 : 1;
        }
        if (*gen) {
            FinGroupoid g = spec == "random" ? random_groupoid(seed, max_obj, max_arr)
                                             : generate_preset(spec, seed);
            std::ofstream of(out_path);
            expect(of.good(), Errc::invalid_input, "cannot write \"" + out_path + "\"");
            of << serialize_groupoid(g);
            out << "wrote " << out_path << "\n";
            return 0;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "no subcommand given\n";
    return 2;
}

} // namespace gw
