#include "sseq/fixtures.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace sseq::fixtures {

namespace {

std::vector<std::string> numbered(int n, const std::string& prefix = "v")
{
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i)
        names.push_back(prefix + std::to_string(i));
    return names;
}

}  // namespace

OrderedComplex point()
{
    return OrderedComplex({"pt"}, {{0}});
}

OrderedComplex standard_simplex(int n)
{
    Simplex top(n + 1);
    for (int i = 0; i <= n; ++i)
        top[i] = i;
    return OrderedComplex::from_maximal(numbered(n + 1), {top});
}

OrderedComplex circle()
{
    return OrderedComplex::from_maximal(numbered(3), {{0, 1}, {1, 2}, {0, 2}});
}

OrderedComplex sphere2()
{
    return OrderedComplex::from_maximal(numbered(4),
                                        {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
}

OrderedComplex rp2()
{
    return OrderedComplex::from_maximal(
        numbered(6), {{0, 1, 2},
                      {0, 2, 3},
                      {0, 3, 4},
                      {0, 4, 5},
                      {0, 1, 5},
                      {1, 2, 4},
                      {2, 3, 5},
                      {1, 3, 4},
                      {2, 4, 5},
                      {1, 3, 5}});
}

OrderedComplex rp3()
{
    /* Boundary of the 16-cell: vertices 0..3 are +e_i, 4..7 are -e_i;
     * facets pick one sign per axis. */
    std::vector<Simplex> facets;
    for (int mask = 0; mask < 16; ++mask) {
        Simplex f;
        for (int i = 0; i < 4; ++i)
            f.push_back(i + (mask >> i & 1 ? 4 : 0));
        std::sort(f.begin(), f.end());
        facets.push_back(f);
    }
    OrderedComplex s3 = OrderedComplex::from_maximal(numbered(8), facets);

    auto antipode = [](Simplex s) {
        for (int& v : s)
            v = (v + 4) % 8;
        std::sort(s.begin(), s.end());
        return s;
    };

    /* Barycenters, one orbit representative per antipodal pair. No cell of
     * the subdivision contains both a barycenter and its antipode, and the
     * sign pattern along a chain of faces is constant, so the quotient of
     * the subdivision is again a simplicial complex. */
    std::vector<Simplex> cells = s3.all_simplices();
    std::map<Simplex, int> orbit_id;
    std::vector<Simplex> reps;
    for (const auto& s : cells) {
        Simplex m = std::min(s, antipode(s));
        if (!orbit_id.count(m)) {
            orbit_id[m] = int(reps.size());
            reps.push_back(m);
        }
    }
    for (const auto& s : cells)
        orbit_id[s] = orbit_id[std::min(s, antipode(s))];

    /* chains of proper inclusions, mapped to orbit labels */
    std::vector<std::vector<int>> contains(cells.size());
    std::map<Simplex, int> cell_ix;
    for (int i = 0; i < int(cells.size()); ++i)
        cell_ix[cells[i]] = i;
    for (int i = 0; i < int(cells.size()); ++i)
        for (int j = 0; j < int(cells.size()); ++j)
            if (cells[i].size() < cells[j].size()
                && std::includes(cells[j].begin(), cells[j].end(), cells[i].begin(),
                                 cells[i].end()))
                contains[i].push_back(j);

    std::set<Simplex> quotient;
    std::vector<int> chain;
    std::function<void(int)> grow = [&](int at) {
        Simplex q;
        for (int ix : chain)
            q.push_back(orbit_id[cells[ix]]);
        std::sort(q.begin(), q.end());
        quotient.insert(q);
        for (int nxt : contains[at]) {
            chain.push_back(nxt);
            grow(nxt);
            chain.pop_back();
        }
    };
    for (int i = 0; i < int(cells.size()); ++i) {
        chain = {i};
        grow(i);
    }

    std::vector<std::string> names;
    for (const auto& r : reps) {
        std::ostringstream os;
        os << "b";
        for (int v : r)
            os << v;
        names.push_back(os.str());
    }
    return OrderedComplex(names, std::vector<Simplex>(quotient.begin(), quotient.end()));
}

namespace {

int grid9(int i, int j)
{
    return 3 * ((i % 3 + 3) % 3) + ((j % 3 + 3) % 3);
}

}  // namespace

OrderedComplex torus()
{
    std::vector<Simplex> tris;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            tris.push_back({grid9(i, j), grid9(i + 1, j), grid9(i + 1, j + 1)});
            tris.push_back({grid9(i, j), grid9(i, j + 1), grid9(i + 1, j + 1)});
        }
    return OrderedComplex::from_maximal(numbered(9), tris);
}

OrderedComplex klein_bottle()
{
    /* Columns i = 0,1 as for the torus; the wrap from column 2 to column 0
     * reverses the fiber direction. */
    std::vector<Simplex> tris;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j) {
            tris.push_back({grid9(i, j), grid9(i + 1, j), grid9(i + 1, j + 1)});
            tris.push_back({grid9(i, j), grid9(i, j + 1), grid9(i + 1, j + 1)});
        }
    for (int j = 0; j < 3; ++j) {
        tris.push_back({grid9(2, j), grid9(0, -j), grid9(0, -j - 1)});
        tris.push_back({grid9(2, j), grid9(2, j + 1), grid9(0, -j - 1)});
    }
    for (auto& t : tris)
        std::sort(t.begin(), t.end());
    return OrderedComplex::from_maximal(numbered(9), tris);
}

SimplicialMap torus_to_circle()
{
    std::vector<int> vm(9);
    for (int v = 0; v < 9; ++v)
        vm[v] = v / 3;
    return SimplicialMap(torus(), circle(), vm);
}

SimplicialMap klein_to_circle()
{
    std::vector<int> vm(9);
    for (int v = 0; v < 9; ++v)
        vm[v] = v / 3;
    return SimplicialMap(klein_bottle(), circle(), vm);
}

OrderedComplex cone(const OrderedComplex& base, const std::string& apex_name)
{
    int apex = base.vertex_count();
    std::vector<std::string> names = base.vertex_names();
    names.push_back(apex_name);
    std::vector<Simplex> simplices = base.all_simplices();
    std::vector<Simplex> coned = simplices;
    coned.push_back({apex});
    for (auto s : simplices) {
        s.push_back(apex);
        coned.push_back(s);
    }
    return OrderedComplex(names, coned);
}

OrderedComplex by_name(const std::string& name)
{
    if (name == "point")
        return point();
    if (name == "interval" || name == "delta1")
        return standard_simplex(1);
    if (name == "delta2")
        return standard_simplex(2);
    if (name == "delta3")
        return standard_simplex(3);
    if (name == "circle")
        return circle();
    if (name == "sphere2")
        return sphere2();
    if (name == "rp2")
        return rp2();
    if (name == "rp3")
        return rp3();
    if (name == "torus")
        return torus();
    if (name == "klein")
        return klein_bottle();
    throw std::invalid_argument("unknown fixture: " + name);
}

std::vector<std::string> names()
{
    return {"point", "delta1", "delta2", "delta3", "circle",
            "sphere2", "rp2", "rp3", "torus", "klein"};
}

GroupTable cyclic_group(int n)
{
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            t[a][b] = (a + b) % n;
    return GroupTable(t);
}

GroupTable klein_four_group()
{
    return GroupTable({{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}});
}

}  // namespace sseq::fixtures
