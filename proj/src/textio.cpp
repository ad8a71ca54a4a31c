#include "gw/textio.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace gw {

namespace {

[[noreturn]] void parse_fail(int line, const std::string& msg)
{
    fail(Errc::parse_error, "line " + std::to_string(line) + ": " + msg);
}

bool valid_atom(const std::string& s)
{
    if (s.empty())
        return false;
    for (char ch : s)
        if (!((ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') ||
              (ch >= '0' && ch <= '9') || ch == '_' || ch == '*'))
            return false;
    return true;
}

std::vector<std::string> split_ws(const std::string& s)
{
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok)
        out.push_back(tok);
    return out;
}

struct TopoDecl {
    std::string kind; // discrete | indiscrete | basis
    std::vector<std::vector<std::string>> basis;
    bool seen = false;
};

FinSpace build_topology(const TopoDecl& decl, std::vector<std::string> atoms)
{
    std::sort(atoms.begin(), atoms.end());
    if (decl.kind == "discrete") {
        std::vector<std::vector<std::string>> singletons;
        for (const auto& a : atoms)
            singletons.push_back({a});
        return make_space(atoms, singletons);
    }
    if (decl.kind == "indiscrete")
        return make_space(atoms, {});
    return make_space(atoms, decl.basis);
}

} // namespace

FinGroupoid parse_groupoid(const std::string& text)
{
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;

    std::vector<std::string> objects, arrows;
    std::map<std::string, std::pair<std::string, std::string>> endpoints; // arrow -> (src,dst)
    std::map<std::string, std::string> identity;                          // object -> arrow
    std::map<std::string, std::string> inverse;                           // arrow -> arrow
    std::map<std::pair<std::string, std::string>, std::string> compose;   // (x,y) -> x∘y
    TopoDecl topo_obj, topo_arr;
    TopoDecl* current_basis = nullptr;

    while (std::getline(in, raw)) {
        ++lineno;
        if (auto pos = raw.find('#'); pos != std::string::npos)
            raw = raw.substr(0, pos);
        std::vector<std::string> toks = split_ws(raw);
        if (toks.empty())
            continue;
        std::string head = toks.front();
        if (head.back() != ':')
            parse_fail(lineno, "expected a section header, got \"" + head + "\"");
        head.pop_back();
        std::vector<std::string> entries(toks.begin() + 1, toks.end());

        if (head == "objects") {
            for (const auto& e : entries) {
                if (!valid_atom(e))
                    parse_fail(lineno, "bad object name \"" + e + "\"");
                objects.push_back(e);
            }
        } else if (head == "arrows") {
            for (const auto& e : entries) {
                auto colon = e.find(':');
                auto arr = e.find("->");
                if (colon == std::string::npos || arr == std::string::npos || arr < colon)
                    parse_fail(lineno, "arrow entry must look like name:src->dst");
                std::string name = e.substr(0, colon);
                std::string src = e.substr(colon + 1, arr - colon - 1);
                std::string dst = e.substr(arr + 2);
                if (!valid_atom(name) || !valid_atom(src) || !valid_atom(dst))
                    parse_fail(lineno, "bad atom in arrow entry \"" + e + "\"");
                if (endpoints.count(name))
                    parse_fail(lineno, "arrow \"" + name + "\" declared twice");
                arrows.push_back(name);
                endpoints[name] = {src, dst};
            }
        } else if (head == "identity" || head == "inverse") {
            for (const auto& e : entries) {
                auto eq = e.find('=');
                if (eq == std::string::npos)
                    parse_fail(lineno, "entry must look like a=b");
                std::string lhs = e.substr(0, eq), rhs = e.substr(eq + 1);
                if (!valid_atom(lhs) || !valid_atom(rhs))
                    parse_fail(lineno, "bad atom in \"" + e + "\"");
                auto& table = head == "identity" ? identity : inverse;
                if (table.count(lhs))
                    parse_fail(lineno, head + " of \"" + lhs + "\" given twice");
                table[lhs] = rhs;
            }
        } else if (head == "compose") {
            for (const auto& e : entries) {
                auto dot = e.find('.');
                auto eq = e.find('=');
                if (dot == std::string::npos || eq == std::string::npos || eq < dot)
                    parse_fail(lineno, "entry must look like x.y=z");
                std::string x = e.substr(0, dot);
                std::string y = e.substr(dot + 1, eq - dot - 1);
                std::string z = e.substr(eq + 1);
                if (!valid_atom(x) || !valid_atom(y) || !valid_atom(z))
                    parse_fail(lineno, "bad atom in \"" + e + "\"");
                if (compose.count({x, y}))
                    parse_fail(lineno, "composite " + x + "." + y + " given twice");
                compose[{x, y}] = z;
            }
        } else if (head == "topology_objects" || head == "topology_arrows") {
            TopoDecl& decl = head == "topology_objects" ? topo_obj : topo_arr;
            if (decl.seen)
                parse_fail(lineno, head + " given twice");
            if (entries.size() != 1 ||
                (entries[0] != "discrete" && entries[0] != "indiscrete" &&
                 entries[0] != "basis"))
                parse_fail(lineno, head + " must be discrete, indiscrete or basis");
            decl.kind = entries[0];
            decl.seen = true;
            current_basis = decl.kind == "basis" ? &decl : nullptr;
        } else if (head == "basis") {
            if (!current_basis)
                parse_fail(lineno, "basis line outside a basis topology section");
            for (const auto& e : entries)
                if (!valid_atom(e))
                    parse_fail(lineno, "bad atom in basis line");
            current_basis->basis.push_back(entries);
        } else {
            parse_fail(lineno, "unknown section \"" + head + "\"");
        }
    }

    auto dup = [&](std::vector<std::string> v) {
        std::sort(v.begin(), v.end());
        return std::adjacent_find(v.begin(), v.end()) != v.end();
    };
    expect(!objects.empty(), Errc::parse_error, "no objects declared");
    expect(!dup(objects), Errc::parse_error, "duplicate object name");
    expect(!dup(arrows), Errc::parse_error, "duplicate arrow name");
    expect(topo_obj.seen, Errc::parse_error, "missing topology_objects section");
    expect(topo_arr.seen, Errc::parse_error, "missing topology_arrows section");

    FinGroupoid g;
    try {
        g.objects = build_topology(topo_obj, objects);
        g.arrows = build_topology(topo_arr, arrows);
    } catch (const Error& e) {
        fail(Errc::parse_error, std::string("bad topology: ") + e.what());
    }

    auto obj_idx = [&](const std::string& n, const std::string& what) {
        int i = g.objects.index_of(n);
        expect(i >= 0, Errc::parse_error, what + " mentions unknown object \"" + n + "\"");
        return i;
    };
    auto arr_idx = [&](const std::string& n, const std::string& what) {
        int i = g.arrows.index_of(n);
        expect(i >= 0, Errc::parse_error, what + " mentions unknown arrow \"" + n + "\"");
        return i;
    };

    int na = g.n_arr(), no = g.n_obj();
    g.dom_.assign(na, -1);
    g.cod_.assign(na, -1);
    g.inv_.assign(na, -1);
    g.unit_.assign(no, -1);
    g.comp_.assign(na, std::vector<int>(na, -1));

    for (const auto& [name, ends] : endpoints) {
        int a = arr_idx(name, "arrow declaration");
        g.dom_[a] = obj_idx(ends.first, "arrow \"" + name + "\"");
        g.cod_[a] = obj_idx(ends.second, "arrow \"" + name + "\"");
    }
    for (const auto& [obj, arr] : identity)
        g.unit_[obj_idx(obj, "identity")] = arr_idx(arr, "identity");
    for (const auto& [a, b] : inverse)
        g.inv_[arr_idx(a, "inverse")] = arr_idx(b, "inverse");
    for (const auto& [xy, z] : compose) {
        int x = arr_idx(xy.first, "compose");
        int y = arr_idx(xy.second, "compose");
        g.comp_[x][y] = arr_idx(z, "compose");
    }

    for (int x = 0; x < no; ++x)
        expect(g.unit_[x] != -1, Errc::validation_error,
               "object \"" + g.objects.name(x) + "\" has no identity");
    for (int a = 0; a < na; ++a)
        expect(g.inv_[a] != -1, Errc::validation_error,
               "arrow \"" + g.arrows.name(a) + "\" has no inverse");

    GroupoidReport rep = validate_groupoid(g);
    if (!(rep.axioms_ok && rep.continuity_ok))
        fail(Errc::validation_error,
             "groupoid axioms fail: " +
                 (rep.problems.empty() ? std::string("?") : rep.problems.front()));
    return g;
}

std::string serialize_groupoid(const FinGroupoid& g)
{
    std::ostringstream out;
    auto topo_kind = [&](const FinSpace& s) -> std::string {
        std::size_t n = static_cast<std::size_t>(s.size());
        if (s.opens().size() == (n > 63 ? 0 : (std::size_t{1} << n)))
            return "discrete";
        if (s.opens().size() == (n == 0 ? 1 : 2))
            return "indiscrete";
        return "basis";
    };

    out << "objects:";
    for (const auto& p : g.objects.points())
        out << " " << p;
    out << "\n";

    out << "arrows:";
    for (int a = 0; a < g.n_arr(); ++a)
        out << " " << g.arrows.name(a) << ":" << g.objects.name(g.dom(a)) << "->"
            << g.objects.name(g.cod(a));
    out << "\n";

    out << "identity:";
    for (int x = 0; x < g.n_obj(); ++x)
        out << " " << g.objects.name(x) << "=" << g.arrows.name(g.unit(x));
    out << "\n";

    out << "inverse:";
    for (int a = 0; a < g.n_arr(); ++a)
        out << " " << g.arrows.name(a) << "=" << g.arrows.name(g.inv(a));
    out << "\n";

    out << "compose:";
    for (int a = 0; a < g.n_arr(); ++a)
        for (int b = 0; b < g.n_arr(); ++b)
            if (g.comp(a, b) != -1)
                out << " " << g.arrows.name(a) << "." << g.arrows.name(b) << "="
                    << g.arrows.name(g.comp(a, b));
    out << "\n";

    auto emit_topo = [&](const std::string& section, const FinSpace& s) {
        std::string kind = topo_kind(s);
        out << section << ": " << kind << "\n";
        if (kind == "basis") {
            std::vector<Mask> nbs;
            for (int p = 0; p < s.size(); ++p)
                nbs.push_back(s.min_nbhd(p));
            std::sort(nbs.begin(), nbs.end(), mask_lex_less);
            nbs.erase(std::unique(nbs.begin(), nbs.end()), nbs.end());
            for (Mask nb : nbs) {
                out << "basis:";
                for (const auto& n : s.names_of(nb))
                    out << " " << n;
                out << "\n";
            }
        }
    };
    emit_topo("topology_objects", g.objects);
    emit_topo("topology_arrows", g.arrows);
    return out.str();
}

} // namespace gw
