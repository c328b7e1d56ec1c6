#include "sseq/instances.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <set>
#include <sstream>

#include "sseq/errors.hpp"

namespace sseq {

int AhssTower::cell_index(int p, int q, int simplex_ix) const
{
    auto it = blocks.find({p, q});
    if (it == blocks.end() || simplex_ix >= it->second.second)
        return -1;
    return it->second.first + simplex_ix;
}

IntVec AhssTower::block_restrict(Bidegree b, const IntVec& degree_vec) const
{
    auto it = blocks.find({b.f, b.c});
    const auto& amb = complex.degree_cells(b.n());
    int len = it == blocks.end() ? 0 : it->second.second;
    IntVec out(len);
    if (!len)
        return out;
    for (int pos = 0; pos < int(amb.size()); ++pos) {
        int g = amb[pos];
        if (g >= it->second.first && g < it->second.first + len)
            out[g - it->second.first] = degree_vec[pos];
    }
    return out;
}

AmbientBridge AhssTower::bridge() const
{
    return [this](Bidegree b, const IntVec& v) { return block_restrict(b, v); };
}

AhssTower build_ahss(const OrderedComplex& K, const GradedRing& A, int n_min, int n_max,
                     bool with_product)
{
    if (!A.uniform_shape())
        throw std::invalid_argument(
            "build_ahss: nonzero levels must all be Z or all Z/m for a single m");
    if (with_product && A.period())
        throw std::invalid_argument(
            "build_ahss: products require a finite coefficient window; "
            "build periodic rings without a product");

    AhssTower tower;
    tower.ring = A;
    tower.n_min = n_min;
    tower.n_max = n_max;

    std::vector<FilteredCell> cells;
    std::vector<std::tuple<int, int, int>> info;  // (p, q, simplex ix)
    for (int p = 0; p <= K.dim(); ++p)
        for (int n = n_max; n >= n_min; --n) {
            int q = p - n;
            if (!A.level(q).nonzero())
                continue;
            tower.blocks[{p, q}] = {int(cells.size()), K.count(p)};
            for (int i = 0; i < K.count(p); ++i) {
                std::ostringstream os;
                os << "[";
                for (size_t v = 0; v < K.simplices(p)[i].size(); ++v)
                    os << (v ? " " : "") << K.vertex_names()[K.simplices(p)[i][v]];
                os << "]|q=" << q;
                cells.push_back({os.str(), n, p});
                info.emplace_back(p, q, i);
            }
        }

    std::vector<ChainTerms> diff(cells.size());
    for (int g = 0; g < int(cells.size()); ++g) {
        auto [p, q, i] = info[g];
        int n = p - q;
        auto tgt = tower.blocks.find({p + 1, q});
        if (tgt == tower.blocks.end())
            continue;
        int lead = (n % 2 == 0) ? -1 : 1;  // -(-1)^n
        const Simplex& s = K.simplices(p)[i];
        for (int j = 0; j < K.count(p + 1); ++j) {
            const Simplex& t = K.simplices(p + 1)[j];
            int sign = 1;
            for (size_t v = 0; v < t.size(); ++v) {
                Simplex face = t;
                face.erase(face.begin() + v);
                if (face == s)
                    diff[g].emplace_back(tgt->second.first + j, lead * sign);
                sign = -sign;
            }
        }
    }

    Int modulus = A.uniform_modulus();
    if (!with_product) {
        tower.complex = FilteredCochainComplex(std::move(cells), std::move(diff), modulus);
        return tower;
    }

    std::map<std::pair<int, int>, ChainTerms> prod;
    for (int g1 = 0; g1 < int(cells.size()); ++g1)
        for (int g2 = 0; g2 < int(cells.size()); ++g2) {
            auto [p, q, i1] = info[g1];
            auto [s, t, i2] = info[g2];
            auto tgt = tower.blocks.find({p + s, q + t});
            if (tgt == tower.blocks.end() || p + s > K.dim())
                continue;
            Int constant = A.pairing_constant(q, t);
            if (constant == 0)
                continue;
            int sign = ((s - t) * p) % 2 ? -1 : 1;  // (-1)^{(s-t)p}
            const Simplex& fr = K.simplices(p)[i1];
            const Simplex& bk = K.simplices(s)[i2];
            ChainTerms terms;
            for (int w = 0; w < K.count(p + s); ++w) {
                const Simplex& cell = K.simplices(p + s)[w];
                Simplex front(cell.begin(), cell.begin() + p + 1);
                Simplex back(cell.begin() + p, cell.end());
                if (front == fr && back == bk)
                    terms.emplace_back(tgt->second.first + w, sign * constant);
            }
            if (!terms.empty())
                prod[{g1, g2}] = std::move(terms);
        }
    tower.complex =
        FilteredCochainComplex(std::move(cells), std::move(diff), modulus, std::move(prod));
    return tower;
}

AhssTower build_ahss(const OrderedComplex& K, const GradedRing& A, bool with_product)
{
    if (A.period())
        throw std::invalid_argument("build_ahss: periodic rings need an explicit degree window");
    int qmin = 0, qmax = 0;
    for (const auto& [q, lv] : A.declared_levels())
        if (lv.nonzero()) {
            qmin = std::min(qmin, q);
            qmax = std::max(qmax, q);
        }
    return build_ahss(K, A, -qmax, K.dim() - qmin, with_product);
}

PagePairing cohomology_pairing(const OrderedComplex& K, const GradedRing& A, int n_min, int n_max,
                               bool graded)
{
    IntChainComplex C = chain_complex(K);
    Page pg;
    pg.r = 2;
    for (int p = 0; p <= K.dim(); ++p)
        for (int n = n_min; n <= n_max; ++n) {
            int q = p - n;
            if (!A.level(q).nonzero())
                continue;
            pg.entries.emplace(Bidegree{p, q}, bigraded_cohomology(C, A, p, q));
        }

    PagePairing pp;
    pp.r = 2;
    pp.px = pg;
    pp.py = pg;
    pp.pxy = pg;
    for (const auto& [b1, e1] : pg.entries) {
        if (e1.group().is_trivial())
            continue;
        for (const auto& [b2, e2] : pg.entries) {
            if (e2.group().is_trivial())
                continue;
            int p = b1.f, q = b1.c, s = b2.f, t = b2.c;
            const Subquotient* tgt = pg.entry_at(Bidegree{p + s, q + t});
            if (!tgt || tgt->group().is_trivial())
                continue;
            Int constant = A.pairing_constant(q, t);
            long ex = graded ? long(s - t) * p : long(s) * p;
            int sign = (ex % 2 + 2) % 2 ? -1 : 1;
            IntMat r1 = e1.generator_reps(), r2 = e2.generator_reps();
            std::vector<std::vector<IntVec>> table(r1.cols());
            for (int g1 = 0; g1 < r1.cols(); ++g1) {
                table[g1].resize(r2.cols());
                for (int g2 = 0; g2 < r2.cols(); ++g2) {
                    IntVec prod(K.count(p + s));
                    if (constant != 0)
                        for (int w = 0; w < K.count(p + s); ++w) {
                            const Simplex& cell = K.simplices(p + s)[w];
                            Simplex front(cell.begin(), cell.begin() + p + 1);
                            Simplex back(cell.begin() + p, cell.end());
                            prod[w] = sign * constant * r1.at(K.index_of(p, front), g1)
                                      * r2.at(K.index_of(s, back), g2);
                            prod[w] = A.reduce(q + t, prod[w]);
                        }
                    table[g1][g2] = tgt->project(prod);
                }
            }
            pp.tables.emplace(std::make_pair(b1, b2), std::move(table));
        }
    }
    return pp;
}

FilteredCochainComplex build_serre(const SimplicialMap& p, const Int& modulus)
{
    const OrderedComplex& X = p.source();
    std::vector<FilteredCell> cells;
    std::vector<std::pair<int, int>> info;  // (dim, simplex ix)
    std::map<std::pair<int, int>, int> index;
    for (int d = 0; d <= X.dim(); ++d)
        for (int i = 0; i < X.count(d); ++i) {
            index[{d, i}] = int(cells.size());
            int filt = int(p.image(X.simplices(d)[i]).size()) - 1;
            std::ostringstream os;
            os << "[";
            for (size_t v = 0; v < X.simplices(d)[i].size(); ++v)
                os << (v ? " " : "") << X.vertex_names()[X.simplices(d)[i][v]];
            os << "]";
            cells.push_back({os.str(), d, filt});
            info.emplace_back(d, i);
        }

    std::vector<ChainTerms> diff(cells.size());
    for (int g = 0; g < int(cells.size()); ++g) {
        auto [d, i] = info[g];
        if (d >= X.dim())
            continue;
        int lead = (d % 2 == 0) ? -1 : 1;
        const Simplex& s = X.simplices(d)[i];
        for (int j = 0; j < X.count(d + 1); ++j) {
            const Simplex& t = X.simplices(d + 1)[j];
            int sign = 1;
            for (size_t v = 0; v < t.size(); ++v) {
                Simplex face = t;
                face.erase(face.begin() + v);
                if (face == s)
                    diff[g].emplace_back(index[{d + 1, j}], lead * sign);
                sign = -sign;
            }
        }
    }

    std::map<std::pair<int, int>, ChainTerms> prod;
    for (int g1 = 0; g1 < int(cells.size()); ++g1)
        for (int g2 = 0; g2 < int(cells.size()); ++g2) {
            auto [pd, i1] = info[g1];
            auto [qd, i2] = info[g2];
            if (pd + qd > X.dim())
                continue;
            int sign = (pd % 2) && (qd % 2) ? -1 : 1;  // (-1)^{qp}
            const Simplex& fr = X.simplices(pd)[i1];
            const Simplex& bk = X.simplices(qd)[i2];
            ChainTerms terms;
            for (int w = 0; w < X.count(pd + qd); ++w) {
                const Simplex& cell = X.simplices(pd + qd)[w];
                Simplex front(cell.begin(), cell.begin() + pd + 1);
                Simplex back(cell.begin() + pd, cell.end());
                if (front == fr && back == bk)
                    terms.emplace_back(index[{pd + qd, w}], sign);
            }
            if (!terms.empty())
                prod[{g1, g2}] = std::move(terms);
        }
    return FilteredCochainComplex(std::move(cells), std::move(diff), modulus, std::move(prod));
}

ProductFiltrationComparison compare_product_filtrations(const OrderedComplex& Kx,
                                                        const OrderedComplex& Ky,
                                                        const Int& modulus)
{
    ProductComplex prod = product(Kx, Ky);
    const OrderedComplex& P = prod.complex;

    std::vector<FilteredCell> skel_cells, prod_cells;
    std::vector<ChainTerms> diff;
    std::map<std::pair<int, int>, int> index;
    std::vector<std::pair<int, int>> info;
    for (int d = 0; d <= P.dim(); ++d)
        for (int i = 0; i < P.count(d); ++i) {
            index[{d, i}] = int(skel_cells.size());
            const Simplex& s = P.simplices(d)[i];
            std::ostringstream os;
            os << "[";
            for (size_t v = 0; v < s.size(); ++v)
                os << (v ? " " : "") << P.vertex_names()[s[v]];
            os << "]";
            int pf = int(prod.proj1.image(s).size()) - 1 + int(prod.proj2.image(s).size()) - 1;
            skel_cells.push_back({os.str(), d, d});
            prod_cells.push_back({os.str(), d, pf});
            info.emplace_back(d, i);
        }
    diff.resize(skel_cells.size());
    for (int g = 0; g < int(skel_cells.size()); ++g) {
        auto [d, i] = info[g];
        if (d >= P.dim())
            continue;
        int lead = (d % 2 == 0) ? -1 : 1;
        const Simplex& s = P.simplices(d)[i];
        for (int j = 0; j < P.count(d + 1); ++j) {
            const Simplex& t = P.simplices(d + 1)[j];
            int sign = 1;
            for (size_t v = 0; v < t.size(); ++v) {
                Simplex face = t;
                face.erase(face.begin() + v);
                if (face == s)
                    diff[g].emplace_back(index[{d + 1, j}], lead * sign);
                sign = -sign;
            }
        }
    }

    ProductFiltrationComparison cmp{
        FilteredCochainComplex(skel_cells, diff, modulus),
        FilteredCochainComplex(prod_cells, diff, modulus),
        false,
        true,
        {},
        {}};

    Page s1 = page(cmp.skeletal, 1), p1 = page(cmp.product_filtered, 1);
    Page s2 = page(cmp.skeletal, 2), p2 = page(cmp.product_filtered, 2);
    cmp.e1_equal = s1.groups() == p1.groups();
    std::set<Bidegree> keys;
    for (const auto& [b, g] : s1.groups())
        keys.insert(b);
    for (const auto& [b, g] : p1.groups())
        keys.insert(b);
    for (const Bidegree& b : keys)
        cmp.e1_table[b] = {s1.group_at(b), p1.group_at(b)};

    keys.clear();
    for (const auto& [b, g] : s2.groups())
        keys.insert(b);
    for (const auto& [b, g] : p2.groups())
        keys.insert(b);
    for (const Bidegree& b : keys) {
        FGAbelianGroup gs = s2.group_at(b), gp = p2.group_at(b);
        cmp.e2_table[b] = {gs, gp};
        if (!(gs == gp)) {
            cmp.e2_isomorphic = false;
            continue;
        }
        if (gs.is_trivial())
            continue;
        /* the identity chain map is filtration-compatible from the skeletal
         * to the product filtration; it must induce the isomorphism */
        int ambient = int(cmp.skeletal.degree_cells(b.n()).size());
        if (!is_isomorphism(induced_map(IntMat::identity(ambient), *s2.entry_at(b),
                                        *p2.entry_at(b))))
            cmp.e2_isomorphic = false;
    }
    return cmp;
}

GroupPage build_group_page(const GroupTable& G, const GradedRing& A, int maxdim,
                           const std::vector<int>& action)
{
    for (size_t i = 0; i < action.size(); ++i)
        if (action[i] != int(i))
            throw NontrivialActionUnsupported("build_group_page: only the trivial action");
    if (maxdim < 2)
        throw std::invalid_argument("build_group_page: maxdim must be at least 2");
    if (A.period())
        throw std::invalid_argument("build_group_page: periodic coefficient rings unsupported");

    GroupPage gp{nerve(G, maxdim), {}, {}, {}};
    const IntChainComplex& C = gp.bar.chains;

    gp.page.r = 2;
    for (int q = 0; q < maxdim; ++q)
        for (const auto& [t, lv] : A.declared_levels()) {
            if (!lv.nonzero())
                continue;
            gp.page.entries.emplace(Bidegree{q, t}, bigraded_cohomology(C, A, q, t));
        }

    auto make_pairing = [&](bool graded) {
        PagePairing pp;
        pp.r = 2;
        pp.px = gp.page;
        pp.py = gp.page;
        pp.pxy = gp.page;
        for (const auto& [b1, e1] : gp.page.entries) {
            if (e1.group().is_trivial())
                continue;
            for (const auto& [b2, e2] : gp.page.entries) {
                if (e2.group().is_trivial())
                    continue;
                int p = b1.f, q = b1.c, s = b2.f, t = b2.c;
                const Subquotient* tgt = gp.page.entry_at(Bidegree{p + s, q + t});
                if (!tgt || tgt->group().is_trivial())
                    continue;
                Int constant = A.pairing_constant(q, t);
                long ex = graded ? long(s - t) * p : long(s) * p;
                int sign = (ex % 2 + 2) % 2 ? -1 : 1;
                IntMat r1 = e1.generator_reps(), r2 = e2.generator_reps();
                std::vector<std::vector<IntVec>> table(r1.cols());
                for (int g1 = 0; g1 < r1.cols(); ++g1) {
                    table[g1].resize(r2.cols());
                    for (int g2 = 0; g2 < r2.cols(); ++g2) {
                        IntVec prod(C.rank(p + s));
                        if (constant != 0)
                            for (int w = 0; w < C.rank(p + s); ++w) {
                                const auto& tup = gp.bar.tuples[p + s][w];
                                std::vector<int> front(tup.begin(), tup.begin() + p);
                                std::vector<int> back(tup.begin() + p, tup.end());
                                prod[w] = sign * constant
                                          * r1.at(gp.bar.index_of(p, front), g1)
                                          * r2.at(gp.bar.index_of(s, back), g2);
                                prod[w] = A.reduce(q + t, prod[w]);
                            }
                        table[g1][g2] = tgt->project(prod);
                    }
                }
                pp.tables.emplace(std::make_pair(b1, b2), std::move(table));
            }
        }
        return pp;
    };
    gp.pairing = make_pairing(true);
    gp.ungraded_pairing = make_pairing(false);
    return gp;
}

namespace {

std::vector<Simplex> intersect_sorted(const std::vector<Simplex>& a, const std::vector<Simplex>& b)
{
    std::vector<Simplex> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

}  // namespace

DescentTower build_descent(const CoverData& cover, const Int& modulus)
{
    const OrderedComplex& base = cover.base;
    int k = int(cover.pieces.size());
    if (k == 0)
        throw NotACover("empty cover");

    std::vector<std::vector<Simplex>> sorted_pieces;
    std::set<Simplex> covered;
    for (const auto& piece : cover.pieces) {
        std::set<Simplex> have(piece.begin(), piece.end());
        for (const auto& s : have) {
            if (!base.has(s))
                throw NotACover("piece contains a simplex outside the base");
            if (s.size() > 1)
                for (size_t i = 0; i < s.size(); ++i) {
                    Simplex f = s;
                    f.erase(f.begin() + i);
                    if (!have.count(f))
                        throw NotACover("piece is not a subcomplex");
                }
            covered.insert(s);
        }
        sorted_pieces.emplace_back(have.begin(), have.end());
    }
    if (int(covered.size()) != int(base.all_simplices().size()))
        throw NotACover("union of pieces is not the base");

    /* intersections U_I over nonempty subsets I */
    std::map<std::vector<int>, std::vector<Simplex>> inter;
    for (int mask = 1; mask < (1 << k); ++mask) {
        std::vector<int> I;
        for (int i = 0; i < k; ++i)
            if (mask >> i & 1)
                I.push_back(i);
        std::vector<Simplex> u = sorted_pieces[I[0]];
        for (size_t i = 1; i < I.size(); ++i)
            u = intersect_sorted(u, sorted_pieces[I[i]]);
        if (!u.empty())
            inter[I] = std::move(u);
    }

    DescentTower tower;
    tower.all_pieces_acyclic = true;

    std::vector<FilteredCell> cells;
    struct CellInfo {
        std::vector<int> I;
        Simplex s;
    };
    std::vector<CellInfo> info;
    std::map<std::pair<std::vector<int>, Simplex>, int> index;
    for (const auto& [I, simplices] : inter) {
        tower.intersection_sizes.emplace_back(I, int(simplices.size()));
        /* acyclicity of the piece over the same coefficients */
        OrderedComplex u(base.vertex_names(), simplices);
        IntChainComplex uc = chain_complex(u);
        for (int p = 1; p <= u.dim(); ++p)
            if (!uc.cohomology(p, modulus).group().is_trivial())
                tower.all_pieces_acyclic = false;
        for (const auto& s : simplices) {
            std::ostringstream os;
            os << "U";
            for (int i : I)
                os << i;
            os << "|[";
            for (size_t v = 0; v < s.size(); ++v)
                os << (v ? " " : "") << base.vertex_names()[s[v]];
            os << "]";
            index[{I, s}] = int(cells.size());
            cells.push_back({os.str(), int(I.size()) - 1 + int(s.size()) - 1, int(I.size()) - 1});
            info.push_back({I, s});
        }
    }

    std::vector<ChainTerms> diff(cells.size());
    for (int g = 0; g < int(cells.size()); ++g) {
        const auto& [I, s] = info[g];
        int m = int(I.size()) - 1;
        int p = int(s.size()) - 1;
        /* Cech part: add one index */
        for (int add = 0; add < k; ++add) {
            if (std::binary_search(I.begin(), I.end(), add))
                continue;
            std::vector<int> J = I;
            J.insert(std::upper_bound(J.begin(), J.end(), add), add);
            auto it = index.find({J, s});
            if (it == index.end())
                continue;
            int pos = int(std::lower_bound(J.begin(), J.end(), add) - J.begin());
            diff[g].emplace_back(it->second, pos % 2 ? -1 : 1);
        }
        /* cochain part with the Koszul twist (-1)^m */
        int lead = (p % 2 == 0) ? -1 : 1;  // -(-1)^p
        int twist = m % 2 ? -1 : 1;
        const auto& usimps = inter.at(I);
        for (const auto& t : usimps) {
            if (int(t.size()) != p + 2)
                continue;
            int sign = 1;
            for (size_t v = 0; v < t.size(); ++v) {
                Simplex face = t;
                face.erase(face.begin() + v);
                if (face == s)
                    diff[g].emplace_back(index.at({I, t}), twist * lead * sign);
                sign = -sign;
            }
        }
    }

    /* Cech cup: front/back on the index tuple and on the simplex */
    std::map<std::pair<int, int>, ChainTerms> prod;
    for (int g1 = 0; g1 < int(cells.size()); ++g1)
        for (int g2 = 0; g2 < int(cells.size()); ++g2) {
            const auto& [I, s] = info[g1];
            const auto& [J, t] = info[g2];
            if (I.back() != J.front())
                continue;
            std::vector<int> Kset = I;
            for (size_t i = 1; i < J.size(); ++i)
                Kset.push_back(J[i]);
            if (!std::is_sorted(Kset.begin(), Kset.end())
                || std::adjacent_find(Kset.begin(), Kset.end()) != Kset.end())
                continue;
            auto uk = inter.find(Kset);
            if (uk == inter.end())
                continue;
            int m1 = int(I.size()) - 1, m2 = int(J.size()) - 1;
            int p1 = int(s.size()) - 1, p2 = int(t.size()) - 1;
            long ex = long(p1) * m2 + long(m1) * m2 + long(p1) * p2;
            int sign = (ex % 2 + 2) % 2 ? -1 : 1;
            ChainTerms terms;
            for (const auto& w : uk->second) {
                if (int(w.size()) != p1 + p2 + 1)
                    continue;
                Simplex front(w.begin(), w.begin() + p1 + 1);
                Simplex back(w.begin() + p1, w.end());
                if (front == s && back == t)
                    terms.emplace_back(index.at({Kset, w}), sign);
            }
            if (!terms.empty())
                prod[{g1, g2}] = std::move(terms);
        }

    tower.complex = FilteredCochainComplex(std::move(cells), std::move(diff), modulus,
                                           std::move(prod));
    return tower;
}

bool descent_e2_identification(const DescentTower& tower, const OrderedComplex& base,
                               const Int& modulus)
{
    Page e2 = page(tower.complex, 2);
    IntChainComplex C = chain_complex(base);
    for (const auto& [b, g] : e2.groups())
        if (b.c != 0)
            return false;
    int maxm = tower.complex.max_filt();
    for (int m = 0; m <= std::max(maxm, base.dim()); ++m) {
        FGAbelianGroup lhs = e2.group_at(Bidegree{m, 0});
        FGAbelianGroup rhs = m <= base.dim() ? C.cohomology(m, modulus).group() : FGAbelianGroup{};
        if (!(lhs == rhs))
            return false;
    }
    return true;
}

ChainPairing external_cup(const AhssTower& tx, const AhssTower& ty, const AhssTower& txy,
                          const ProductComplex& prod)
{
    /* (split position, front proj1 image, back proj2 image) per product cell */
    auto table = std::make_shared<std::map<std::tuple<int, int, int, int>, std::vector<int>>>();
    const OrderedComplex& P = prod.complex;
    for (int d = 0; d <= P.dim(); ++d)
        for (int w = 0; w < P.count(d); ++w) {
            const Simplex& cell = P.simplices(d)[w];
            for (int split = 0; split <= d; ++split) {
                Simplex front(cell.begin(), cell.begin() + split + 1);
                Simplex back(cell.begin() + split, cell.end());
                Simplex fx = prod.proj1.image(front);
                Simplex by = prod.proj2.image(back);
                if (int(fx.size()) != split + 1 || int(by.size()) != d - split + 1)
                    continue;
                int fi = prod.proj1.target().index_of(split, fx);
                int bi = prod.proj2.target().index_of(d - split, by);
                (*table)[{split, fi, d - split, bi}].push_back(w);
            }
        }

    /* local copies keep the pairing self-contained */
    const GradedRing ring = tx.ring;
    std::map<std::pair<int, int>, std::pair<int, int>> bx = tx.blocks, by2 = ty.blocks,
                                                       bxy = txy.blocks;
    return [table, ring, bx, by2, bxy](int i, int j) -> ChainTerms {
        /* recover (p, q, simplex) from the block maps */
        auto locate = [](const std::map<std::pair<int, int>, std::pair<int, int>>& blocks,
                         int g) -> std::tuple<int, int, int> {
            for (const auto& [pq, se] : blocks)
                if (g >= se.first && g < se.first + se.second)
                    return {pq.first, pq.second, g - se.first};
            return {-1, -1, -1};
        };
        auto [p, q, si] = locate(bx, i);
        auto [s, t, ti] = locate(by2, j);
        ChainTerms terms;
        auto tgt = bxy.find({p + s, q + t});
        if (p < 0 || s < 0 || tgt == bxy.end())
            return terms;
        Int constant = ring.pairing_constant(q, t);
        if (constant == 0)
            return terms;
        long ex = long(s - t) * p;
        int sign = (ex % 2 + 2) % 2 ? -1 : 1;
        auto it = table->find({p, si, s, ti});
        if (it == table->end())
            return terms;
        for (int w : it->second)
            terms.emplace_back(tgt->second.first + w, sign * constant);
        return terms;
    };
}

}  // namespace sseq
