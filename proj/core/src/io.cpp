#include "sseq/io.hpp"

#include <fstream>
#include <sstream>

#include "sseq/errors.hpp"
#include "sseq/fixtures.hpp"

namespace sseq::io {

namespace {

void require_version(const json& j, const char* what)
{
    if (!j.is_object() || !j.contains("schema_version") || j["schema_version"] != 1)
        throw SchemaError(std::string(what) + ": missing or unsupported schema_version");
}

Int int_from_json(const json& j)
{
    if (j.is_number_integer())
        return Int(long(j.get<long long>()));
    if (j.is_string())
        return Int(j.get<std::string>());
    throw SchemaError("expected an integer or a decimal string");
}

}  // namespace

json complex_to_json(const OrderedComplex& K)
{
    json j;
    j["schema_version"] = 1;
    j["vertices"] = K.vertex_names();
    json simplices = json::array();
    for (const auto& s : K.all_simplices())
        simplices.push_back(s);
    j["simplices"] = simplices;
    return j;
}

OrderedComplex complex_from_json(const json& j)
{
    require_version(j, "complex");
    if (!j.contains("vertices") || !j.contains("simplices"))
        throw SchemaError("complex: needs vertices and simplices");
    std::vector<std::string> names = j["vertices"].get<std::vector<std::string>>();
    std::vector<Simplex> simplices;
    for (const auto& s : j["simplices"])
        simplices.push_back(s.get<Simplex>());
    return OrderedComplex(std::move(names), std::move(simplices));
}

OrderedComplex resolve_complex(const json& j)
{
    if (j.is_string()) {
        std::string ref = j.get<std::string>();
        if (ref.rfind("fixture:", 0) == 0)
            return fixtures::by_name(ref.substr(8));
        throw SchemaError("complex reference must be inline or fixture:<name>");
    }
    return complex_from_json(j);
}

SimplicialMap map_from_json(const json& j)
{
    require_version(j, "map");
    if (!j.contains("source") || !j.contains("target") || !j.contains("vertex_map"))
        throw SchemaError("map: needs source, target, vertex_map");
    return SimplicialMap(resolve_complex(j["source"]), resolve_complex(j["target"]),
                         j["vertex_map"].get<std::vector<int>>());
}

json ring_to_json(const GradedRing& A)
{
    json j;
    j["schema_version"] = 1;
    json levels = json::object();
    for (const auto& [q, lv] : A.declared_levels())
        levels[std::to_string(q)] = lv.str();
    j["levels"] = levels;
    if (A.period()) {
        j["period"]["degree"] = *A.period();
        j["period"]["unit"] = true;
    }
    return j;
}

GradedRing ring_from_json(const json& j)
{
    require_version(j, "graded ring");
    std::map<int, RingLevel> levels;
    if (!j.contains("levels"))
        throw SchemaError("graded ring: needs levels");
    for (const auto& [key, val] : j["levels"].items()) {
        int q = std::stoi(key);
        std::string s = val.get<std::string>();
        if (s == "0")
            levels[q] = {LevelKind::Zero, 0};
        else if (s == "Z")
            levels[q] = {LevelKind::Free, 0};
        else if (s.rfind("Z/", 0) == 0)
            levels[q] = {LevelKind::Cyclic, Int(s.substr(2))};
        else
            throw SchemaError("graded ring: level must be 0, Z or Z/m");
    }
    std::map<std::pair<int, int>, Int> pairing;
    if (j.contains("pairing"))
        for (const auto& row : j["pairing"])
            pairing[{row["q"].get<int>(), row["t"].get<int>()}] = int_from_json(row["constant"]);
    std::optional<int> period;
    if (j.contains("period"))
        period = j["period"]["degree"].get<int>();
    return GradedRing::from_levels(std::move(levels), std::move(pairing), period);
}

GroupTable group_from_json(const json& j)
{
    require_version(j, "group");
    if (!j.contains("table"))
        throw SchemaError("group: needs table");
    return GroupTable(j["table"].get<std::vector<std::vector<int>>>());
}

GradedRing coefficients_from_json(const json& j)
{
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        if (s == "Z")
            return GradedRing::integers();
        if (s.rfind("Z/", 0) == 0)
            return GradedRing::cyclic(Int(s.substr(2)));
        if (s.rfind("laurent:", 0) == 0)
            return GradedRing::laurent(std::stoi(s.substr(8)));
        if (s == "two_line")
            return GradedRing::two_line();
        throw SchemaError("coefficients: unknown shorthand " + s);
    }
    return ring_from_json(j);
}

TowerSpec towerspec_from_json(const json& j)
{
    require_version(j, "tower spec");
    TowerSpec spec;
    if (!j.contains("kind"))
        throw SchemaError("tower spec: needs kind");
    spec.kind = j["kind"].get<std::string>();

    if (spec.kind == "ahss" || spec.kind == "bockstein") {
        if (!j.contains("complex"))
            throw SchemaError("tower spec: " + spec.kind + " needs a complex");
        spec.complex = resolve_complex(j["complex"]);
    } else if (spec.kind == "serre") {
        if (!j.contains("map"))
            throw SchemaError("tower spec: serre needs a map");
        spec.map = map_from_json(j["map"]);
    } else if (spec.kind == "descent") {
        if (!j.contains("cover"))
            throw SchemaError("tower spec: descent needs a cover");
        CoverData cover{resolve_complex(j["cover"]["base"]), {}};
        for (const auto& piece : j["cover"]["pieces"]) {
            std::vector<Simplex> simp;
            for (const auto& s : piece)
                simp.push_back(s.get<Simplex>());
            cover.pieces.push_back(std::move(simp));
        }
        spec.cover = std::move(cover);
    } else if (spec.kind == "group") {
        if (!j.contains("group"))
            throw SchemaError("tower spec: group needs a group table");
        spec.group = group_from_json(j["group"]);
    } else
        throw SchemaError("tower spec: unknown kind " + spec.kind);

    if (j.contains("coefficients"))
        spec.coefficients = coefficients_from_json(j["coefficients"]);
    if (j.contains("modulus"))
        spec.modulus = int_from_json(j["modulus"]);
    if (j.contains("options")) {
        const json& o = j["options"];
        if (o.contains("max_page"))
            spec.max_page = o["max_page"].get<int>();
        if (o.contains("diagonal"))
            spec.diagonal = o["diagonal"].get<bool>();
        if (o.contains("window"))
            spec.degree_window = {o["window"][0].get<int>(), o["window"][1].get<int>()};
    }
    return spec;
}

namespace {

json matrix_to_json(const IntMat& m)
{
    json rows = json::array();
    for (int r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < m.cols(); ++c)
            row.push_back(m.at(r, c).get_str());
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

json page_to_json(const Page& page, const Int& modulus)
{
    json j;
    j["r"] = page.r;
    j["d_shift"] = {page.d_shift_f, page.d_shift_c};
    json entries = json::array();
    for (const auto& [b, sq] : page.entries) {
        if (sq.group().is_trivial())
            continue;
        json e;
        e["f"] = b.f;
        e["c"] = b.c;
        e["rank"] = sq.group().rank;
        json tor = json::array();
        for (const Int& t : sq.group().torsion)
            tor.push_back(t.get_str());
        e["torsion"] = tor;
        auto d = page.d.find(b);
        if (d != page.d.end() && !d->second.is_zero()) {
            Bidegree tb = page.d_target(b);
            e["d"]["f"] = tb.f;
            e["d"]["c"] = tb.c;
            e["d"]["matrix"] = matrix_to_json(d->second.matrix);
        }
        entries.push_back(e);
    }
    j["entries"] = entries;
    (void)modulus;
    return j;
}

json pages_to_json(const std::vector<Page>& pages, const Int& modulus)
{
    json j;
    j["schema_version"] = 1;
    j["indexing"] = "engine";
    j["coefficient"] = modulus == 0 ? std::string("Z") : "Z/" + modulus.get_str();
    json arr = json::array();
    for (const Page& p : pages)
        arr.push_back(page_to_json(p, modulus));
    j["pages"] = arr;
    return j;
}

std::string pages_to_csv(const std::vector<Page>& pages)
{
    std::ostringstream os;
    os << "r,f,c,rank,torsion,d_f,d_c,d_matrix\n";
    for (const Page& p : pages)
        for (const auto& [b, sq] : p.entries) {
            if (sq.group().is_trivial())
                continue;
            os << p.r << "," << b.f << "," << b.c << "," << sq.group().rank << ",";
            for (size_t i = 0; i < sq.group().torsion.size(); ++i)
                os << (i ? " " : "") << sq.group().torsion[i].get_str();
            os << ",";
            auto d = p.d.find(b);
            if (d != p.d.end() && !d->second.is_zero()) {
                Bidegree tb = p.d_target(b);
                os << tb.f << "," << tb.c << ",";
                const IntMat& m = d->second.matrix;
                for (int r = 0; r < m.rows(); ++r)
                    for (int c = 0; c < m.cols(); ++c)
                        os << (r + c ? " " : "") << m.at(r, c).get_str();
            } else
                os << ",,";
            os << "\n";
        }
    return os.str();
}

json couple_to_json(const BigradedExactCouple& c)
{
    json j;
    j["schema_version"] = 1;
    j["indexing"] = "engine";
    j["coefficient"] = c.modulus == 0 ? std::string("Z") : "Z/" + c.modulus.get_str();
    json entries = json::array();
    auto emit_nodes = [&](const std::map<CoupleDeg, Subquotient>& nodes, const char* tag) {
        for (const auto& [deg, node] : nodes) {
            if (node.group().is_trivial())
                continue;
            json e;
            e["node"] = tag;
            e["s"] = deg.first;
            e["t"] = deg.second;
            e["rank"] = node.group().rank;
            json tor = json::array();
            for (const Int& t : node.group().torsion)
                tor.push_back(t.get_str());
            e["torsion"] = tor;
            entries.push_back(e);
        }
    };
    emit_nodes(c.D, "D");
    emit_nodes(c.E, "E");
    j["entries"] = entries;
    auto emit_maps = [&](const std::map<CoupleDeg, GroupHom>& maps, const char* name) {
        json arr = json::array();
        for (const auto& [deg, h] : maps) {
            if (h.is_zero())
                continue;
            json m;
            m["s"] = deg.first;
            m["t"] = deg.second;
            m["matrix"] = matrix_to_json(h.matrix);
            arr.push_back(m);
        }
        j["maps"][name] = arr;
    };
    emit_maps(c.i, "i");
    emit_maps(c.j, "j");
    emit_maps(c.k, "k");
    return j;
}

json reindex_page_file(const json& page_file)
{
    if (!page_file.is_object() || !page_file.contains("indexing"))
        throw SchemaError("page file: missing indexing field");
    std::string from = page_file["indexing"].get<std::string>();
    bool to_homotopy = from == "engine";
    if (!to_homotopy && from != "homotopy")
        throw SchemaError("page file: indexing must be engine or homotopy");

    json out = page_file;
    out["indexing"] = to_homotopy ? "homotopy" : "engine";
    const char *k1 = to_homotopy ? "f" : "p", *k2 = to_homotopy ? "c" : "q";
    const char *o1 = to_homotopy ? "p" : "f", *o2 = to_homotopy ? "q" : "c";
    for (auto& pg : out["pages"]) {
        json entries = json::array();
        std::vector<json> rows;
        for (auto& e : pg["entries"]) {
            json n = e;
            int a = e[k1].get<int>(), b = e[k2].get<int>();
            auto [x, y] = to_homotopy ? engine_to_homotopy(a, b) : homotopy_to_engine(a, b);
            n.erase(k1);
            n.erase(k2);
            n[o1] = x;
            n[o2] = y;
            if (e.contains("d")) {
                int da = e["d"][k1].get<int>(), db = e["d"][k2].get<int>();
                auto [dx, dy] = to_homotopy ? engine_to_homotopy(da, db) : homotopy_to_engine(da, db);
                n["d"].erase(k1);
                n["d"].erase(k2);
                n["d"][o1] = dx;
                n["d"][o2] = dy;
            }
            rows.push_back(n);
        }
        std::sort(rows.begin(), rows.end(), [&](const json& a, const json& b) {
            if (a[o1] != b[o1])
                return a[o1].get<int>() < b[o1].get<int>();
            return a[o2].get<int>() < b[o2].get<int>();
        });
        for (auto& r : rows)
            entries.push_back(r);
        pg["entries"] = entries;
        /* d_shift transported through the dictionary: (f,c) shifts map to
         * (p,q) shifts by the same linear substitution */
        if (pg.contains("d_shift")) {
            int sf = pg["d_shift"][0].get<int>(), sc = pg["d_shift"][1].get<int>();
            if (to_homotopy)
                pg["d_shift"] = {sc - sf, sf};
            else
                pg["d_shift"] = {sc, sf + sc};
        }
    }
    if (page_file.contains("sign_family")) {
        const json& fam = page_file["sign_family"];
        SignFamily f{fam[0].get<int>(), fam[1].get<int>(), fam[2].get<int>(), fam[3].get<int>(),
                     fam[4].get<int>()};
        SignFamily g = to_homotopy ? transport_engine_to_homotopy(f) : transport_homotopy_to_engine(f);
        out["sign_family"] = {g.a, g.b, g.c, g.d, g.e};
    }
    return out;
}

std::string dump_canonical(const json& j)
{
    return j.dump(2) + "\n";
}

json load_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw SchemaError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw SchemaError(path + ": " + e.what());
    }
    return j;
}

void write_file(const std::string& path, const std::string& contents)
{
    /* whole-file atomic: write aside, then rename */
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out)
            throw SchemaError("cannot write " + tmp);
        out << contents;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw SchemaError("cannot move " + tmp + " into place");
}

}  // namespace sseq::io
