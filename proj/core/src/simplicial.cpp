#include "sseq/simplicial.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "sseq/errors.hpp"

namespace sseq {

namespace {

std::string simplex_label(const std::vector<std::string>& names, const Simplex& s)
{
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < s.size(); ++i)
        os << (i ? " " : "") << names[s[i]];
    os << "]";
    return os.str();
}

}  // namespace

OrderedComplex::OrderedComplex(std::vector<std::string> vertex_names, std::vector<Simplex> simplices)
    : vertex_names_(std::move(vertex_names))
{
    std::set<Simplex> have;
    int d_max = -1;
    for (auto& s : simplices) {
        if (s.empty())
            throw SchemaError("OrderedComplex: empty simplex");
        if (!std::is_sorted(s.begin(), s.end()) || std::adjacent_find(s.begin(), s.end()) != s.end())
            throw SchemaError("OrderedComplex: simplex vertices must be strictly increasing");
        if (s.front() < 0 || s.back() >= int(vertex_names_.size()))
            throw SchemaError("OrderedComplex: vertex index out of range");
        if (!have.insert(s).second)
            throw SchemaError("OrderedComplex: duplicate simplex");
        d_max = std::max(d_max, int(s.size()) - 1);
    }
    /* closure: every facet of every simplex must be present */
    for (const auto& s : have) {
        if (s.size() == 1)
            continue;
        for (size_t i = 0; i < s.size(); ++i) {
            Simplex f = s;
            f.erase(f.begin() + i);
            if (!have.count(f))
                throw SchemaError("OrderedComplex: simplex set not closed under faces");
        }
    }
    by_dim_.assign(d_max + 1, {});
    for (const auto& s : have)
        by_dim_[s.size() - 1].push_back(s);
    index_.resize(by_dim_.size());
    for (size_t d = 0; d < by_dim_.size(); ++d)
        for (int i = 0; i < int(by_dim_[d].size()); ++i)
            index_[d][by_dim_[d][i]] = i;
}

OrderedComplex OrderedComplex::from_maximal(std::vector<std::string> vertex_names,
                                            const std::vector<Simplex>& maximal)
{
    std::set<Simplex> closed;
    std::function<void(const Simplex&)> add = [&](const Simplex& s) {
        if (s.empty() || !closed.insert(s).second)
            return;
        for (size_t i = 0; i < s.size(); ++i) {
            Simplex f = s;
            f.erase(f.begin() + i);
            add(f);
        }
    };
    for (auto s : maximal) {
        std::sort(s.begin(), s.end());
        add(s);
    }
    return OrderedComplex(std::move(vertex_names),
                          std::vector<Simplex>(closed.begin(), closed.end()));
}

const std::vector<Simplex>& OrderedComplex::simplices(int d) const
{
    static const std::vector<Simplex> empty;
    if (d < 0 || d > dim())
        return empty;
    return by_dim_[d];
}

int OrderedComplex::count(int d) const
{
    return int(simplices(d).size());
}

int OrderedComplex::index_of(int d, const Simplex& s) const
{
    if (d < 0 || d > dim())
        return -1;
    auto it = index_[d].find(s);
    return it == index_[d].end() ? -1 : it->second;
}

bool OrderedComplex::has(const Simplex& s) const
{
    return index_of(int(s.size()) - 1, s) >= 0;
}

std::vector<Simplex> OrderedComplex::all_simplices() const
{
    std::vector<Simplex> out;
    for (int d = 0; d <= dim(); ++d)
        for (const auto& s : simplices(d))
            out.push_back(s);
    return out;
}

SimplicialMap::SimplicialMap(OrderedComplex source, OrderedComplex target, std::vector<int> vertex_map)
    : src_(std::move(source)), dst_(std::move(target)), map_(std::move(vertex_map))
{
    if (int(map_.size()) != src_.vertex_count())
        throw SchemaError("SimplicialMap: one target vertex per source vertex");
    for (int v : map_)
        if (v < 0 || v >= dst_.vertex_count())
            throw SchemaError("SimplicialMap: target vertex out of range");
    for (int d = 0; d <= src_.dim(); ++d)
        for (const auto& s : src_.simplices(d)) {
            for (size_t i = 0; i + 1 < s.size(); ++i)
                if (map_[s[i]] > map_[s[i + 1]])
                    throw SchemaError("SimplicialMap: not monotone on a simplex");
            if (!dst_.has(image(s)))
                throw SchemaError("SimplicialMap: image of a simplex is not a simplex");
        }
}

Simplex SimplicialMap::image(const Simplex& s) const
{
    Simplex out;
    for (int v : s) {
        int w = map_[v];
        if (out.empty() || out.back() != w)
            out.push_back(w);
    }
    return out;
}

IntMat SimplicialMap::chain_matrix(int d) const
{
    IntMat m(dst_.count(d), src_.count(d));
    for (int c = 0; c < src_.count(d); ++c) {
        Simplex img = image(src_.simplices(d)[c]);
        if (int(img.size()) == d + 1)
            m.at(dst_.index_of(d, img), c) = 1;
    }
    return m;
}

IntMat SimplicialMap::cochain_matrix(int d) const
{
    return chain_matrix(d).transpose();
}

IntChainComplex::IntChainComplex(std::vector<std::vector<std::string>> labels,
                                 std::vector<IntMat> boundary)
    : labels_(std::move(labels)), boundary_(std::move(boundary))
{
    if (boundary_.size() != labels_.size())
        throw std::invalid_argument("IntChainComplex: need one boundary matrix per degree");
    for (int d = 1; d <= dim(); ++d) {
        if (boundary_[d].rows() != rank(d - 1) || boundary_[d].cols() != rank(d))
            throw std::invalid_argument("IntChainComplex: boundary shape mismatch");
        if (d >= 2 && !(boundary_[d - 1] * boundary_[d]).is_zero())
            throw std::invalid_argument("IntChainComplex: boundary^2 != 0");
    }
}

int IntChainComplex::rank(int d) const
{
    if (d < 0 || d > dim())
        return 0;
    return int(labels_[d].size());
}

const std::vector<std::string>& IntChainComplex::labels(int d) const
{
    static const std::vector<std::string> empty;
    if (d < 0 || d > dim())
        return empty;
    return labels_[d];
}

const IntMat& IntChainComplex::boundary(int d) const
{
    return boundary_[d];
}

IntMat IntChainComplex::delta_matrix(int p) const
{
    if (p < 0 || p >= dim())
        return IntMat(rank(p + 1), rank(p));
    int sign = (p % 2 == 0) ? -1 : 1;  // -(-1)^p
    return boundary_[p + 1].transpose().scaled(sign);
}

Subquotient IntChainComplex::cohomology(int p, const Int& modulus) const
{
    IntMat d_out = delta_matrix(p);
    IntMat kernel = kernel_mod(d_out, modulus);
    IntMat image = p >= 1 ? delta_matrix(p - 1) : IntMat(rank(p), 0);
    IntMat t = image;
    if (modulus != 0)
        t = IntMat::hconcat(t, IntMat::identity(rank(p)).scaled(modulus));
    return Subquotient(rank(p), IntMat::hconcat(kernel, t), t);
}

long IntChainComplex::field_cohomology_dim(int deg, const Int& prime) const
{
    long nullity = rank(deg) - rank_mod_p(delta_matrix(deg), prime);
    long img = deg >= 1 ? rank_mod_p(delta_matrix(deg - 1), prime) : 0;
    return nullity - img;
}

IntChainComplex chain_complex(const OrderedComplex& K)
{
    std::vector<std::vector<std::string>> labels(K.dim() + 1);
    std::vector<IntMat> boundary(K.dim() + 1);
    for (int d = 0; d <= K.dim(); ++d) {
        for (const auto& s : K.simplices(d))
            labels[d].push_back(simplex_label(K.vertex_names(), s));
        boundary[d] = IntMat(K.count(d - 1), K.count(d));
        if (d >= 1)
            for (int c = 0; c < K.count(d); ++c) {
                const Simplex& s = K.simplices(d)[c];
                int sign = 1;
                for (size_t i = 0; i < s.size(); ++i) {
                    Simplex f = s;
                    f.erase(f.begin() + i);
                    boundary[d].at(K.index_of(d - 1, f), c) += sign;
                    sign = -sign;
                }
            }
    }
    return IntChainComplex(std::move(labels), std::move(boundary));
}

Cochain::Cochain(const OrderedComplex& K, int deg, Int mod)
    : complex(&K), degree(deg), modulus(std::move(mod)), values(K.count(deg))
{
}

Cochain::Cochain(const OrderedComplex& K, int deg, Int mod, IntVec vals)
    : complex(&K), degree(deg), modulus(std::move(mod)), values(std::move(vals))
{
    if (int(values.size()) != K.count(deg))
        throw std::invalid_argument("Cochain: one value per cell");
    for (auto& v : values)
        v = reduce(v);
}

bool Cochain::is_zero() const
{
    return std::all_of(values.begin(), values.end(), [](const Int& v) { return v == 0; });
}

bool Cochain::operator==(const Cochain& o) const
{
    return degree == o.degree && modulus == o.modulus && values == o.values;
}

Cochain delta(const Cochain& a)
{
    const OrderedComplex& K = *a.complex;
    int p = a.degree;
    Cochain out(K, p + 1, a.modulus);
    int lead = (p % 2 == 0) ? -1 : 1;  // -(-1)^p
    for (int c = 0; c < K.count(p + 1); ++c) {
        const Simplex& s = K.simplices(p + 1)[c];
        Int acc = 0;
        int sign = 1;
        for (size_t i = 0; i < s.size(); ++i) {
            Simplex f = s;
            f.erase(f.begin() + i);
            acc += sign * a.values[K.index_of(p, f)];
            sign = -sign;
        }
        out.values[c] = out.reduce(lead * acc);
    }
    return out;
}

Cochain delta_classical(const Cochain& a)
{
    Cochain out = delta(a);
    if (a.degree % 2 == 0)
        for (auto& v : out.values)
            v = out.reduce(-v);
    return out;
}

namespace {

Cochain cup_impl(const Cochain& a, const Cochain& b, bool with_sign)
{
    const OrderedComplex& K = *a.complex;
    if (b.complex != a.complex || b.modulus != a.modulus)
        throw std::invalid_argument("cup: cochains live on different complexes or rings");
    int p = a.degree, q = b.degree;
    Cochain out(K, p + q, a.modulus);
    int sign = with_sign && (p % 2) && (q % 2) ? -1 : 1;  // (-1)^{qp}
    for (int c = 0; c < K.count(p + q); ++c) {
        const Simplex& s = K.simplices(p + q)[c];
        Simplex front(s.begin(), s.begin() + p + 1);
        Simplex back(s.begin() + p, s.end());
        Int va = a.values[K.index_of(p, front)];
        Int vb = b.values[K.index_of(q, back)];
        out.values[c] = out.reduce(sign * va * vb);
    }
    return out;
}

}  // namespace

Cochain cup(const Cochain& a, const Cochain& b)
{
    return cup_impl(a, b, true);
}

Cochain cup_classical(const Cochain& a, const Cochain& b)
{
    return cup_impl(a, b, false);
}

ClassicalIso classical_iso(const OrderedComplex& K, int max_degree)
{
    ClassicalIso best;
    for (unsigned bits = 0; bits < (1u << max_degree); ++bits) {
        std::vector<int> phi(max_degree + 1, 1);
        for (int p = 1; p <= max_degree; ++p)
            phi[p] = (bits >> (p - 1)) & 1 ? -1 : 1;
        bool dok = true, cok = true;
        /* delta_new = -(-1)^p delta_classical on degree p */
        for (int p = 0; p < max_degree && dok; ++p) {
            int new_vs_classical = (p % 2 == 0) ? -1 : 1;
            if (phi[p + 1] * new_vs_classical != phi[p])
                dok = false;
        }
        /* cup_new = (-1)^{pq} cup_classical */
        for (int p = 0; p <= max_degree && cok; ++p)
            for (int q = 0; p + q <= max_degree && cok; ++q) {
                int s = (p % 2) && (q % 2) ? -1 : 1;
                if (phi[p + q] * s != phi[p] * phi[q])
                    cok = false;
            }
        if (dok && cok) {
            best.phi = phi;
            best.delta_identity = true;
            best.cup_identity = true;
            break;
        }
    }
    if (!best.found())
        return best;

    /* the family must also work on actual cochains of K */
    std::mt19937 rng(42);
    std::uniform_int_distribution<int> val(-5, 5);
    auto scale = [&](const Cochain& a) {
        Cochain out = a;
        for (auto& v : out.values)
            v = best.phi[a.degree] * v;
        return out;
    };
    for (int p = 0; p < std::min(K.dim(), max_degree); ++p) {
        Cochain a(K, p, 0);
        for (auto& v : a.values)
            v = val(rng);
        if (!(scale(delta(a)) == delta_classical(scale(a))))
            best.delta_identity = false;
        for (int q = 0; p + q <= K.dim() && q <= max_degree - p; ++q) {
            Cochain b(K, q, 0);
            for (auto& v : b.values)
                v = val(rng);
            if (!(scale(cup(a, b)) == cup_classical(scale(a), scale(b))))
                best.cup_identity = false;
        }
    }
    return best;
}

ProductComplex product(const OrderedComplex& K, const OrderedComplex& L)
{
    int nk = K.vertex_count(), nl = L.vertex_count();
    std::vector<std::string> names;
    names.reserve(size_t(nk) * nl);
    for (int i = 0; i < nk; ++i)
        for (int j = 0; j < nl; ++j)
            names.push_back(K.vertex_names()[i] + "x" + L.vertex_names()[j]);

    /* Monotone chains in the product order whose projections are
     * simplices; subchains of a valid chain are valid, so growing from
     * every start pair enumerates the whole staircase triangulation. */
    std::set<Simplex> cells;
    std::vector<std::pair<int, int>> chain;
    auto proj_ok = [&](int which) {
        Simplex s;
        for (auto& [u, v] : chain) {
            int x = which == 0 ? u : v;
            if (s.empty() || s.back() != x)
                s.push_back(x);
        }
        return which == 0 ? K.has(s) : L.has(s);
    };
    std::function<void()> grow = [&]() {
        if (!proj_ok(0) || !proj_ok(1))
            return;
        Simplex cell;
        for (auto& [u, v] : chain)
            cell.push_back(u * nl + v);
        cells.insert(cell);
        auto [u0, v0] = chain.back();
        for (int u = u0; u < nk; ++u)
            for (int v = v0; v < nl; ++v) {
                if (u == u0 && v == v0)
                    continue;
                chain.emplace_back(u, v);
                grow();
                chain.pop_back();
            }
    };
    for (int u = 0; u < nk; ++u)
        for (int v = 0; v < nl; ++v) {
            if (!K.has({u}) || !L.has({v}))
                continue;
            chain = {{u, v}};
            grow();
        }

    OrderedComplex pc(names, std::vector<Simplex>(cells.begin(), cells.end()));
    std::vector<int> m1(size_t(nk) * nl), m2(size_t(nk) * nl);
    for (int i = 0; i < nk; ++i)
        for (int j = 0; j < nl; ++j) {
            m1[i * nl + j] = i;
            m2[i * nl + j] = j;
        }
    return ProductComplex{pc, SimplicialMap(pc, K, m1), SimplicialMap(pc, L, m2), nl};
}

GroupTable::GroupTable(std::vector<std::vector<int>> t) : table(std::move(t))
{
    int n = int(table.size());
    if (n == 0)
        throw InvalidGroupTable("empty table");
    for (const auto& row : table) {
        if (int(row.size()) != n)
            throw InvalidGroupTable("table is not square");
        for (int v : row)
            if (v < 0 || v >= n)
                throw InvalidGroupTable("table entry out of range");
    }
    identity = -1;
    for (int e = 0; e < n; ++e) {
        bool ok = true;
        for (int g = 0; g < n && ok; ++g)
            ok = table[e][g] == g && table[g][e] == g;
        if (ok) {
            identity = e;
            break;
        }
    }
    if (identity < 0)
        throw InvalidGroupTable("no identity element");
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (table[table[a][b]][c] != table[a][table[b][c]])
                    throw InvalidGroupTable("associativity fails");
    for (int g = 0; g < n; ++g) {
        bool inv = false;
        for (int h = 0; h < n && !inv; ++h)
            inv = table[g][h] == identity && table[h][g] == identity;
        if (!inv)
            throw InvalidGroupTable("missing inverse");
    }
}

int BarComplex::index_of(int d, const std::vector<int>& tuple) const
{
    const auto& list = tuples[d];
    auto it = std::lower_bound(list.begin(), list.end(), tuple);
    if (it == list.end() || *it != tuple)
        return -1;
    return int(it - list.begin());
}

BarComplex nerve(const GroupTable& G, int maxdim)
{
    if (maxdim < 1)
        throw std::invalid_argument("nerve: maxdim must be at least 1");
    int n = G.order();
    std::vector<std::vector<std::vector<int>>> tuples(maxdim + 1);
    tuples[0].push_back({});
    for (int d = 1; d <= maxdim; ++d) {
        std::vector<int> cur(d);
        std::function<void(int)> gen = [&](int pos) {
            if (pos == d) {
                tuples[d].push_back(cur);
                return;
            }
            for (int g = 0; g < n; ++g) {
                if (g == G.identity)
                    continue;
                cur[pos] = g;
                gen(pos + 1);
            }
        };
        gen(0);
        std::sort(tuples[d].begin(), tuples[d].end());
    }

    std::vector<std::vector<std::string>> labels(maxdim + 1);
    for (int d = 0; d <= maxdim; ++d)
        for (const auto& t : tuples[d]) {
            std::ostringstream os;
            os << "(";
            for (size_t i = 0; i < t.size(); ++i)
                os << (i ? "," : "") << t[i];
            os << ")";
            labels[d].push_back(os.str());
        }

    BarComplex bc{G, maxdim, tuples, {}};
    std::vector<IntMat> boundary(maxdim + 1);
    boundary[0] = IntMat(0, 1);
    for (int d = 1; d <= maxdim; ++d) {
        boundary[d] = IntMat(int(tuples[d - 1].size()), int(tuples[d].size()));
        for (int c = 0; c < int(tuples[d].size()); ++c) {
            const auto& t = tuples[d][c];
            auto add = [&](const std::vector<int>& face, int sign) {
                /* normalized: faces containing the identity vanish */
                for (int g : face)
                    if (g == G.identity)
                        return;
                boundary[d].at(bc.index_of(d - 1, face), c) += sign;
            };
            std::vector<int> f(t.begin() + 1, t.end());
            add(f, 1);
            int sign = -1;
            for (int i = 0; i + 1 < d; ++i) {
                std::vector<int> g;
                for (int k = 0; k < i; ++k)
                    g.push_back(t[k]);
                g.push_back(G.mul(t[i], t[i + 1]));
                for (int k = i + 2; k < d; ++k)
                    g.push_back(t[k]);
                add(g, sign);
                sign = -sign;
            }
            std::vector<int> h(t.begin(), t.end() - 1);
            add(h, sign);
        }
    }
    bc.chains = IntChainComplex(std::move(labels), std::move(boundary));
    return bc;
}

}  // namespace sseq
