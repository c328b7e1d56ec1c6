#include "sseq/couple.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "sseq/errors.hpp"

namespace sseq {

namespace {

CoupleDeg operator+(CoupleDeg a, CoupleDeg b)
{
    return {a.first + b.first, a.second + b.second};
}

CoupleDeg operator-(CoupleDeg a, CoupleDeg b)
{
    return {a.first - b.first, a.second - b.second};
}

std::string deg_str(CoupleDeg d)
{
    std::ostringstream os;
    os << "(" << d.first << "," << d.second << ")";
    return os.str();
}

/* kernel lattice of a hom in source coordinates, relations included */
IntMat hom_kernel_lattice(const GroupHom& h)
{
    IntMat aug = IntMat::hconcat(h.matrix, relation_matrix(h.dst));
    IntMat k = LatticeSolver(aug).kernel_basis();
    IntMat out(h.src.coords(), k.cols());
    for (int r = 0; r < h.src.coords(); ++r)
        for (int c = 0; c < k.cols(); ++c)
            out.at(r, c) = k.at(r, c);
    return IntMat::hconcat(out, relation_matrix(h.src));
}

IntMat hom_image_lattice(const GroupHom& h)
{
    return IntMat::hconcat(h.matrix, relation_matrix(h.dst));
}

}  // namespace

FGAbelianGroup BigradedExactCouple::d_group(CoupleDeg deg) const
{
    auto it = D.find(deg);
    return it == D.end() ? FGAbelianGroup{} : it->second.group();
}

FGAbelianGroup BigradedExactCouple::e_group(CoupleDeg deg) const
{
    auto it = E.find(deg);
    return it == E.end() ? FGAbelianGroup{} : it->second.group();
}

const Subquotient* BigradedExactCouple::d_node(CoupleDeg deg) const
{
    auto it = D.find(deg);
    return it == D.end() ? nullptr : &it->second;
}

const Subquotient* BigradedExactCouple::e_node(CoupleDeg deg) const
{
    auto it = E.find(deg);
    return it == E.end() ? nullptr : &it->second;
}

const GroupHom* BigradedExactCouple::map_at(const std::map<CoupleDeg, GroupHom>& table,
                                            CoupleDeg deg) const
{
    auto it = table.find(deg);
    return it == table.end() ? nullptr : &it->second;
}

void verify_exactness(const BigradedExactCouple& c)
{
    std::set<CoupleDeg> degs;
    for (const auto& [d, sq] : c.D)
        degs.insert(d);
    for (const auto& [d, sq] : c.E)
        degs.insert(d);

    auto check = [&](const FGAbelianGroup& node, const GroupHom* out,
                     const FGAbelianGroup& out_target, const GroupHom* in,
                     const std::string& where) {
        if (node.is_trivial())
            return;
        GroupHom out_h = out ? *out : GroupHom::zero(node, out_target);
        IntMat ker = hom_kernel_lattice(out_h);
        IntMat im = in ? hom_image_lattice(*in)
                       : IntMat::hconcat(IntMat(node.coords(), 0), relation_matrix(node));
        if (!same_span(ker, im))
            throw ExactnessViolation("exactness fails at " + where);
    };

    for (const CoupleDeg& d : degs) {
        if (c.boundary_s && d.first == *c.boundary_s)
            continue;
        /* at D^d: ker j = im i, ker i = im k */
        check(c.d_group(d), c.map_at(c.j, d), c.e_group(d + c.shift_j),
              c.map_at(c.i, d - c.shift_i), "D" + deg_str(d) + " (j/i)");
        check(c.d_group(d), c.map_at(c.i, d), c.d_group(d + c.shift_i),
              c.map_at(c.k, d - c.shift_k), "D" + deg_str(d) + " (i/k)");
        /* at E^d: ker k = im j */
        check(c.e_group(d), c.map_at(c.k, d), c.d_group(d + c.shift_k),
              c.map_at(c.j, d - c.shift_j), "E" + deg_str(d) + " (k/j)");
    }
}

namespace {

/* hom between subquotient nodes defined by coords-level images */
GroupHom hom_via(const Subquotient& src, const Subquotient& dst,
                 const std::function<IntVec(const IntVec&)>& image_of_rep)
{
    IntMat reps = src.generator_reps();
    IntMat m(dst.group().coords(), src.group().coords());
    for (int c = 0; c < reps.cols(); ++c)
        m.set_column(c, image_of_rep(reps.column(c)));
    return GroupHom(src.group(), dst.group(), std::move(m));
}

}  // namespace

BigradedExactCouple derive(const BigradedExactCouple& c)
{
    verify_exactness(c);

    BigradedExactCouple out;
    out.shift_i = c.shift_i;
    out.shift_j = c.shift_j - c.shift_i;
    out.shift_k = c.shift_k;
    out.modulus = c.modulus;

    /* D' = im(i) over the original ambients */
    for (const auto& [deg, node] : c.D) {
        const GroupHom* inc = c.map_at(c.i, deg - c.shift_i);
        const Subquotient* src = c.d_node(deg - c.shift_i);
        std::vector<IntVec> cols;
        if (inc && src) {
            IntMat reps = src->generator_reps();
            for (int g = 0; g < reps.cols(); ++g)
                cols.push_back(node.lift(inc->apply(src->project(reps.column(g)))));
        }
        IntMat s = IntMat::from_columns(node.ambient(), cols);
        IntMat t = node.gens_T();
        out.D.emplace(deg, Subquotient(node.ambient(), IntMat::hconcat(s, t), t));
    }

    /* E' = ker(d1)/im(d1), d1 = j k, over the original ambients */
    std::map<CoupleDeg, GroupHom> d1;
    for (const auto& [deg, kh] : c.k) {
        const GroupHom* jh = c.map_at(c.j, deg + c.shift_k);
        if (jh)
            d1.emplace(deg, compose(*jh, kh));
    }
    CoupleDeg d1_shift = c.shift_k + c.shift_j;
    for (const auto& [deg, node] : c.E) {
        std::vector<IntVec> s_cols, t_cols;
        auto dout = d1.find(deg);
        if (dout != d1.end()) {
            IntMat kl = hom_kernel_lattice(dout->second);
            for (int g = 0; g < kl.cols(); ++g)
                s_cols.push_back(node.lift(kl.column(g)));
        } else {
            IntMat reps = node.generator_reps();
            for (int g = 0; g < reps.cols(); ++g)
                s_cols.push_back(reps.column(g));
        }
        auto din = d1.find(deg - d1_shift);
        if (din != d1.end()) {
            IntMat m = din->second.matrix;
            for (int g = 0; g < m.cols(); ++g)
                t_cols.push_back(node.lift(m.column(g)));
        }
        IntMat s = IntMat::from_columns(node.ambient(), s_cols);
        IntMat textra = IntMat::from_columns(node.ambient(), t_cols);
        IntMat t = IntMat::hconcat(textra, node.gens_T());
        out.E.emplace(deg, Subquotient(node.ambient(), IntMat::hconcat(s, t), t));
    }

    /* i' = i restricted */
    for (const auto& [deg, dn] : out.D) {
        const GroupHom* ih = c.map_at(c.i, deg);
        const Subquotient* src_old = c.d_node(deg);
        const Subquotient* tgt_old = c.d_node(deg + c.shift_i);
        auto tgt_new = out.D.find(deg + c.shift_i);
        if (!ih || !src_old || !tgt_old || tgt_new == out.D.end())
            continue;
        if (dn.group().is_trivial() || tgt_new->second.group().is_trivial())
            continue;
        out.i.emplace(deg, hom_via(dn, tgt_new->second, [&](const IntVec& rep) {
            return tgt_new->second.project(tgt_old->lift(ih->apply(src_old->project(rep))));
        }));
    }

    /* j' = j i^{-1} */
    for (const auto& [deg, dn] : out.D) {
        CoupleDeg below = deg - c.shift_i;
        const GroupHom* ih = c.map_at(c.i, below);
        const GroupHom* jh = c.map_at(c.j, below);
        const Subquotient* src_old = c.d_node(deg);
        const Subquotient* jt_old = c.e_node(below + c.shift_j);
        auto jt_new = out.E.find(below + c.shift_j);
        if (!ih || !jh || !src_old || !jt_old || jt_new == out.E.end())
            continue;
        if (dn.group().is_trivial() || jt_new->second.group().is_trivial())
            continue;
        LatticeSolver pre(IntMat::hconcat(ih->matrix, relation_matrix(ih->dst)));
        out.j.emplace(deg, hom_via(dn, jt_new->second, [&](const IntVec& rep) {
            IntVec g = src_old->project(rep);
            auto sol = pre.solve(g);
            if (!sol)
                throw ExactnessViolation("derive: class not in the image of i at " + deg_str(deg));
            IntVec x(ih->src.coords());
            for (int t = 0; t < ih->src.coords(); ++t)
                x[t] = (*sol)[t];
            return jt_new->second.project(jt_old->lift(jh->apply(x)));
        }));
    }

    /* k' = k on classes of cycles */
    for (const auto& [deg, en] : out.E) {
        const GroupHom* kh = c.map_at(c.k, deg);
        const Subquotient* src_old = c.e_node(deg);
        const Subquotient* kt_old = c.d_node(deg + c.shift_k);
        auto kt_new = out.D.find(deg + c.shift_k);
        if (!kh || !src_old || !kt_old || kt_new == out.D.end())
            continue;
        if (en.group().is_trivial() || kt_new->second.group().is_trivial())
            continue;
        out.k.emplace(deg, hom_via(en, kt_new->second, [&](const IntVec& rep) {
            try {
                return kt_new->second.project(kt_old->lift(kh->apply(src_old->project(rep))));
            } catch (const SubgroupViolation&) {
                throw ExactnessViolation("derive: k does not land in im(i) at " + deg_str(deg));
            }
        }));
    }

    verify_exactness(out);
    return out;
}

BigradedExactCouple bockstein_couple(const OrderedComplex& K, const Int& n)
{
    if (n < 2)
        throw std::invalid_argument("bockstein_couple: n must be at least 2");
    IntChainComplex C = chain_complex(K);
    BigradedExactCouple c;
    c.shift_i = {0, 0};
    c.shift_j = {0, 0};
    c.shift_k = {0, 1};
    c.modulus = n;

    int qmax = K.dim() + 1;
    for (int q = 0; q <= qmax; ++q) {
        c.D.emplace(CoupleDeg{0, q}, C.cohomology(q, 0));
        c.E.emplace(CoupleDeg{0, q}, C.cohomology(q, n));
    }
    for (int q = 0; q <= qmax; ++q) {
        const Subquotient& dq = c.D.at({0, q});
        const Subquotient& eq = c.E.at({0, q});
        if (!dq.group().is_trivial()) {
            c.i.emplace(CoupleDeg{0, q},
                        induced_map(IntMat::identity(C.rank(q)).scaled(n), dq, dq));
            if (!eq.group().is_trivial())
                c.j.emplace(CoupleDeg{0, q}, induced_map(IntMat::identity(C.rank(q)), dq, eq));
        }
        /* connecting map: delta(rep)/n */
        if (eq.group().is_trivial())
            continue;
        const Subquotient* dq1 = c.d_node({0, q + 1});
        if (!dq1 || dq1->group().is_trivial())
            continue;
        IntMat delta = C.delta_matrix(q);
        IntMat reps = eq.generator_reps();
        std::vector<IntVec> images;
        for (int g = 0; g < reps.cols(); ++g) {
            IntVec u = delta.apply(reps.column(g));
            for (auto& x : u)
                x = int_divexact(x, n);
            images.push_back(dq1->project(u));
        }
        c.k.emplace(CoupleDeg{0, q}, hom_from_columns(eq.group(), dq1->group(), images));
    }
    verify_exactness(c);
    return c;
}

std::vector<long> BocksteinPages::ranks(int r, int max_degree) const
{
    std::vector<long> out;
    const auto& table = tables.at(size_t(r - 1));
    for (int q = 0; q <= max_degree; ++q) {
        auto it = table.find(q);
        out.push_back(it == table.end() ? 0
                                        : long(it->second.torsion.size()) + it->second.rank);
    }
    return out;
}

BocksteinPages bockstein_pages(const BigradedExactCouple& couple, int r_max)
{
    BocksteinPages out;
    out.modulus = couple.modulus;

    auto snapshot = [](const BigradedExactCouple& c, std::map<int, FGAbelianGroup>& table,
                       std::map<int, GroupHom>& diffs) {
        for (const auto& [deg, node] : c.E)
            if (!node.group().is_trivial())
                table.emplace(deg.second, node.group());
        for (const auto& [deg, kh] : c.k) {
            const GroupHom* jh = c.map_at(c.j, deg + c.shift_k);
            if (jh)
                diffs.emplace(deg.second, compose(*jh, kh));
        }
        for (const auto& [q, d] : diffs) {
            auto next = diffs.find(q + 1);
            if (next != diffs.end() && next->second.src == d.dst
                && !compose(next->second, d).is_zero())
                throw std::logic_error("bockstein_pages: d_r . d_r != 0");
        }
    };

    BigradedExactCouple cur = couple;
    for (int r = 1; r <= r_max; ++r) {
        std::map<int, FGAbelianGroup> table;
        std::map<int, GroupHom> diffs;
        snapshot(cur, table, diffs);
        out.tables.push_back(table);
        out.differentials.push_back(diffs);

        if (r == r_max)
            break;
        BigradedExactCouple next = derive(cur);

        /* E_{r+1} must be the homology of (E_r, d_r), recomputed from the
         * normal forms */
        CoupleDeg dshift = cur.shift_k + cur.shift_j;
        for (const auto& [deg, node] : next.E) {
            FGAbelianGroup g = cur.e_group(deg);
            if (g.is_trivial()) {
                if (!node.group().is_trivial())
                    throw std::logic_error("bockstein_pages: homology recomputation mismatch");
                continue;
            }
            IntMat rel = relation_matrix(g);
            auto dout = [&]() -> std::optional<GroupHom> {
                const GroupHom* kh = cur.map_at(cur.k, deg);
                const GroupHom* jh = cur.map_at(cur.j, deg + cur.shift_k);
                if (kh && jh)
                    return compose(*jh, *kh);
                return std::nullopt;
            }();
            IntMat kernel = dout ? hom_kernel_lattice(*dout) : IntMat::identity(g.coords());
            auto din = [&]() -> std::optional<GroupHom> {
                const GroupHom* kh = cur.map_at(cur.k, deg - dshift);
                const GroupHom* jh = cur.map_at(cur.j, deg - dshift + cur.shift_k);
                if (kh && jh)
                    return compose(*jh, *kh);
                return std::nullopt;
            }();
            IntMat image = din ? din->matrix : IntMat(g.coords(), 0);
            IntMat t = IntMat::hconcat(image, rel);
            Subquotient h(g.coords(), IntMat::hconcat(kernel, t), t);
            if (!(h.group() == node.group()))
                throw std::logic_error("bockstein_pages: homology recomputation mismatch");
        }

        /* fixed point: groups and maps no longer move */
        auto groups_equal = [](const std::map<CoupleDeg, Subquotient>& a,
                               const std::map<CoupleDeg, Subquotient>& b) {
            std::set<CoupleDeg> degs;
            for (const auto& [d, s] : a)
                degs.insert(d);
            for (const auto& [d, s] : b)
                degs.insert(d);
            for (const CoupleDeg& d : degs) {
                auto ia = a.find(d), ib = b.find(d);
                FGAbelianGroup ga = ia == a.end() ? FGAbelianGroup{} : ia->second.group();
                FGAbelianGroup gb = ib == b.end() ? FGAbelianGroup{} : ib->second.group();
                if (!(ga == gb))
                    return false;
            }
            return true;
        };
        auto maps_equal = [](const std::map<CoupleDeg, GroupHom>& a,
                             const std::map<CoupleDeg, GroupHom>& b) {
            for (const auto& [d, h] : a) {
                auto it = b.find(d);
                if (it == b.end()) {
                    if (!h.is_zero())
                        return false;
                } else if (!(h == it->second))
                    return false;
            }
            for (const auto& [d, h] : b)
                if (a.find(d) == a.end() && !h.is_zero())
                    return false;
            return true;
        };
        if (groups_equal(cur.D, next.D) && groups_equal(cur.E, next.E)
            && maps_equal(cur.i, next.i) && maps_equal(cur.j, next.j)
            && maps_equal(cur.k, next.k)) {
            out.stable_index = r;
            break;
        }
        cur = std::move(next);
    }
    return out;
}

Page bockstein_page_view(const BigradedExactCouple& couple, int r)
{
    BigradedExactCouple cur = couple;
    for (int s = 1; s < r; ++s)
        cur = derive(cur);
    Page pg;
    pg.r = r;
    pg.d_shift_f = 1;
    pg.d_shift_c = 0;
    for (const auto& [deg, node] : cur.E)
        pg.entries.emplace(Bidegree{deg.second, 0}, node);
    for (const auto& [deg, kh] : cur.k) {
        const GroupHom* jh = cur.map_at(cur.j, deg + cur.shift_k);
        if (jh && !cur.e_group(deg).is_trivial()
            && !cur.e_group(deg + cur.shift_k + cur.shift_j).is_trivial())
            pg.d.emplace(Bidegree{deg.second, 0}, compose(*jh, kh));
    }
    return pg;
}

namespace {

bool same_complex(const OrderedComplex& a, const OrderedComplex& b)
{
    if (a.vertex_count() != b.vertex_count() || a.dim() != b.dim())
        return false;
    for (int d = 0; d <= a.dim(); ++d)
        if (a.simplices(d) != b.simplices(d))
            return false;
    return true;
}

PagePairing pairing_from_pages(const OrderedComplex& Kx, const OrderedComplex& Ky,
                               const Page& px, const Page& py, const Page& pxy, const Int& n,
                               const std::function<Cochain(const Cochain&, int which)>& transport)
{
    PagePairing pp;
    pp.r = px.r;
    pp.px = px;
    pp.py = py;
    pp.pxy = pxy;
    for (const auto& [b1, e1] : px.entries) {
        if (e1.group().is_trivial())
            continue;
        for (const auto& [b2, e2] : py.entries) {
            if (e2.group().is_trivial())
                continue;
            Bidegree bt{b1.f + b2.f, b1.c + b2.c};
            const Subquotient* tgt = pxy.entry_at(bt);
            if (!tgt)
                continue;
            auto mul = [&](const IntVec& vx, const IntVec& vy) {
                Cochain ax = transport(Cochain(Kx, b1.f, n, vx), 0);
                Cochain by = transport(Cochain(Ky, b2.f, n, vy), 1);
                return cup(ax, by).values;
            };
            auto project_or_throw = [&](const IntVec& v) {
                try {
                    return tgt->project(v);
                } catch (const SubgroupViolation&) {
                    throw NotWellDefined("bockstein_pairing: product leaves the page lattice at "
                                         + bt.str());
                }
            };
            auto zero_class = [&](const IntVec& vx, const IntVec& vy) {
                IntVec cls = project_or_throw(mul(vx, vy));
                return std::all_of(cls.begin(), cls.end(),
                                   [](const Int& x) { return x == 0; });
            };
            IntMat r1 = e1.generator_reps(), r2 = e2.generator_reps();
            IntMat t1b = column_echelon_basis(e1.gens_T());
            IntMat t2b = column_echelon_basis(e2.gens_T());
            for (int c = 0; c < t1b.cols(); ++c)
                for (int g = 0; g < r2.cols(); ++g)
                    if (!zero_class(t1b.column(c), r2.column(g)))
                        throw NotWellDefined("bockstein_pairing: representative dependence");
            for (int c = 0; c < r1.cols(); ++c)
                for (int g = 0; g < t2b.cols(); ++g)
                    if (!zero_class(r1.column(c), t2b.column(g)))
                        throw NotWellDefined("bockstein_pairing: representative dependence");
            if (tgt->group().is_trivial())
                continue;
            std::vector<std::vector<IntVec>> table(r1.cols());
            for (int g1 = 0; g1 < r1.cols(); ++g1) {
                table[g1].resize(r2.cols());
                for (int g2 = 0; g2 < r2.cols(); ++g2)
                    table[g1][g2] = project_or_throw(mul(r1.column(g1), r2.column(g2)));
            }
            pp.tables.emplace(std::make_pair(b1, b2), std::move(table));
        }
    }
    return pp;
}

}  // namespace

PagePairing bockstein_pairing(const OrderedComplex& Kx, const OrderedComplex& Ky, const Int& n,
                              int r)
{
    if (same_complex(Kx, Ky)) {
        BigradedExactCouple c = bockstein_couple(Kx, n);
        Page pg = bockstein_page_view(c, r);
        auto identity_transport = [&Kx](const Cochain& a, int) { return a; };
        return pairing_from_pages(Kx, Kx, pg, pg, pg, n, identity_transport);
    }
    /* external pairing through the staircase product */
    ProductComplex prod = product(Kx, Ky);
    BigradedExactCouple cx = bockstein_couple(Kx, n);
    BigradedExactCouple cy = bockstein_couple(Ky, n);
    BigradedExactCouple cxy = bockstein_couple(prod.complex, n);
    Page px = bockstein_page_view(cx, r);
    Page py = bockstein_page_view(cy, r);
    Page pxy = bockstein_page_view(cxy, r);
    ProductComplex prod_copy = prod;
    auto transport = [prod_copy](const Cochain& a, int which) {
        const SimplicialMap& pr = which == 0 ? prod_copy.proj1 : prod_copy.proj2;
        IntVec vals = pr.cochain_matrix(a.degree).apply(a.values);
        return Cochain(prod_copy.complex, a.degree, a.modulus, vals);
    };
    /* transported cochains live on the product complex */
    PagePairing pp;
    pp.r = r;
    pp.px = px;
    pp.py = py;
    pp.pxy = pxy;
    for (const auto& [b1, e1] : px.entries) {
        if (e1.group().is_trivial())
            continue;
        for (const auto& [b2, e2] : py.entries) {
            if (e2.group().is_trivial())
                continue;
            Bidegree bt{b1.f + b2.f, b1.c + b2.c};
            const Subquotient* tgt = pxy.entry_at(bt);
            if (!tgt || tgt->group().is_trivial())
                continue;
            IntMat r1 = e1.generator_reps(), r2 = e2.generator_reps();
            std::vector<std::vector<IntVec>> table(r1.cols());
            for (int g1 = 0; g1 < r1.cols(); ++g1) {
                table[g1].resize(r2.cols());
                for (int g2 = 0; g2 < r2.cols(); ++g2) {
                    Cochain ax = transport(Cochain(Kx, b1.f, n, r1.column(g1)), 0);
                    Cochain by = transport(Cochain(Ky, b2.f, n, r2.column(g2)), 1);
                    table[g1][g2] = tgt->project(cup(ax, by).values);
                }
            }
            pp.tables.emplace(std::make_pair(b1, b2), std::move(table));
        }
    }
    return pp;
}

BigradedExactCouple filtration_couple(const FilteredCochainComplex& C)
{
    BigradedExactCouple c;
    c.shift_i = {-1, 0};
    c.shift_j = {0, 0};
    c.shift_k = {1, 1};
    c.modulus = C.modulus();

    auto cycle = [&](int s, int n) {
        /* x in F^s of degree n with dx = 0 (mod m) */
        const auto& amb = C.degree_cells(n);
        std::vector<int> sup;
        for (int p = 0; p < int(amb.size()); ++p)
            if (C.cell(amb[p]).filt >= std::max(s, 0))
                sup.push_back(p);
        IntMat m(int(C.degree_cells(n + 1).size()), int(sup.size()));
        for (int cc = 0; cc < int(sup.size()); ++cc)
            for (const auto& [jj, coef] : C.differential(amb[sup[cc]]))
                m.at(C.position_in_degree(jj), cc) += coef;
        IntMat k = kernel_mod(m, C.modulus());
        IntMat out(int(amb.size()), k.cols());
        for (int cc = 0; cc < k.cols(); ++cc)
            for (int pp = 0; pp < int(sup.size()); ++pp)
                out.at(sup[pp], cc) = k.at(pp, cc);
        return out;
    };
    auto boundaries = [&](int s, int n) {
        /* d(F^s cap deg n-1) plus modulus columns supported on F^s */
        const auto& low = C.degree_cells(n - 1);
        std::vector<IntVec> cols;
        const auto& amb = C.degree_cells(n);
        for (int p = 0; p < int(low.size()); ++p) {
            if (C.cell(low[p]).filt < s)
                continue;
            IntVec v(amb.size());
            for (const auto& [jj, coef] : C.differential(low[p]))
                v[C.position_in_degree(jj)] += coef;
            cols.push_back(v);
        }
        if (C.modulus() != 0)
            for (int p = 0; p < int(amb.size()); ++p) {
                IntVec e(amb.size());
                e[p] = C.modulus();
                cols.push_back(e);
            }
        return IntMat::from_columns(int(amb.size()), cols);
    };

    for (int s = 0; s <= C.max_filt(); ++s)
        for (int n = C.min_degree(); n <= C.max_degree(); ++n) {
            if (C.degree_cells(n).empty())
                continue;
            IntMat z = cycle(s, n);
            IntMat b = boundaries(s, n);
            c.D.emplace(CoupleDeg{s, n},
                        Subquotient(int(C.degree_cells(n).size()),
                                    IntMat::hconcat(z, b), b));
            /* E node over the graded block: cells of filtration exactly s */
            const auto& amb = C.degree_cells(n);
            std::vector<int> block;
            for (int p = 0; p < int(amb.size()); ++p)
                if (C.cell(amb[p]).filt == s)
                    block.push_back(p);
            const auto& tgt = C.degree_cells(n + 1);
            std::vector<int> tblock;
            for (int q = 0; q < int(tgt.size()); ++q)
                if (C.cell(tgt[q]).filt == s)
                    tblock.push_back(q);
            IntMat gr(int(tblock.size()), int(block.size()));
            for (int cc = 0; cc < int(block.size()); ++cc)
                for (const auto& [jj, coef] : C.differential(amb[block[cc]]))
                    for (int qq = 0; qq < int(tblock.size()); ++qq)
                        if (C.degree_cells(n + 1)[tblock[qq]] == jj)
                            gr.at(qq, cc) += coef;
            IntMat kgr = kernel_mod(gr, C.modulus());
            /* image of the graded differential from degree n-1 */
            const auto& low = C.degree_cells(n - 1);
            std::vector<IntVec> bcols;
            for (int p = 0; p < int(low.size()); ++p) {
                if (C.cell(low[p]).filt != s)
                    continue;
                IntVec v(block.size());
                for (const auto& [jj, coef] : C.differential(low[p]))
                    for (int bb = 0; bb < int(block.size()); ++bb)
                        if (amb[block[bb]] == jj)
                            v[bb] += coef;
                bcols.push_back(v);
            }
            if (C.modulus() != 0)
                for (int bb = 0; bb < int(block.size()); ++bb) {
                    IntVec e(block.size());
                    e[bb] = C.modulus();
                    bcols.push_back(e);
                }
            IntMat bgr = IntMat::from_columns(int(block.size()), bcols);
            c.E.emplace(CoupleDeg{s, n},
                        Subquotient(int(block.size()), IntMat::hconcat(kgr, bgr), bgr));
        }

    /* phantom layer: the tower continues by identities below s = 0 */
    c.boundary_s = -1;
    for (int n = C.min_degree(); n <= C.max_degree(); ++n) {
        auto it = c.D.find({0, n});
        if (it == c.D.end())
            continue;
        c.D.emplace(CoupleDeg{-1, n}, it->second);
        if (!it->second.group().is_trivial())
            c.i.emplace(CoupleDeg{0, n}, GroupHom::identity(it->second.group()));
    }

    /* i: inclusion F^{s+1} -> F^s */
    for (int s = 1; s <= C.max_filt(); ++s)
        for (int n = C.min_degree(); n <= C.max_degree(); ++n) {
            auto src = c.D.find({s, n});
            auto dst = c.D.find({s - 1, n});
            if (src == c.D.end() || dst == c.D.end())
                continue;
            if (src->second.group().is_trivial() || dst->second.group().is_trivial())
                continue;
            int ambient = src->second.ambient();
            c.i.emplace(CoupleDeg{s, n},
                        induced_map(IntMat::identity(ambient), src->second, dst->second));
        }

    /* j: restriction to the graded block, k: connecting d on block reps */
    for (int s = 0; s <= C.max_filt(); ++s)
        for (int n = C.min_degree(); n <= C.max_degree(); ++n) {
            auto dn = c.D.find({s, n});
            auto en = c.E.find({s, n});
            if (dn == c.D.end() || en == c.E.end())
                continue;
            const auto& amb = C.degree_cells(n);
            std::vector<int> block;
            for (int p = 0; p < int(amb.size()); ++p)
                if (C.cell(amb[p]).filt == s)
                    block.push_back(p);
            if (!dn->second.group().is_trivial() && !en->second.group().is_trivial()) {
                IntMat restrict(int(block.size()), int(amb.size()));
                for (int bb = 0; bb < int(block.size()); ++bb)
                    restrict.at(bb, block[bb]) = 1;
                c.j.emplace(CoupleDeg{s, n},
                            induced_map(restrict, dn->second, en->second));
            }
            auto kt = c.D.find({s + 1, n + 1});
            if (kt == c.D.end() || en->second.group().is_trivial()
                || kt->second.group().is_trivial())
                continue;
            IntMat reps = en->second.generator_reps();
            std::vector<IntVec> images;
            for (int g = 0; g < reps.cols(); ++g) {
                /* lift the block vector into the full degree space, apply d */
                IntVec full(amb.size());
                for (int bb = 0; bb < int(block.size()); ++bb)
                    full[block[bb]] = reps.at(bb, g);
                IntVec dv(C.degree_cells(n + 1).size());
                for (int p = 0; p < int(amb.size()); ++p)
                    if (full[p] != 0)
                        for (const auto& [jj, coef] : C.differential(amb[p]))
                            dv[C.position_in_degree(jj)] += full[p] * coef;
                images.push_back(kt->second.project(dv));
            }
            c.k.emplace(CoupleDeg{s, n},
                        hom_from_columns(en->second.group(), kt->second.group(), images));
        }

    verify_exactness(c);
    return c;
}

Localization beta_localize(const BigradedExactCouple& c)
{
    if (!c.periodicity_shift)
        throw NoPeriodicityDeclared("beta_localize: couple declares no periodicity along i");
    CoupleDeg pshift = *c.periodicity_shift;
    CoupleDeg step = pshift + c.shift_i;  // phi = i after P

    Localization out;
    for (const auto& [deg, node] : c.D) {
        if (node.group().is_trivial())
            continue;
        LocalizedGroup lg;
        if (step == CoupleDeg{0, 0}) {
            /* tail endomorphism on a single node */
            const GroupHom* p = c.map_at(c.periodicity, deg);
            const GroupHom* ih = c.map_at(c.i, deg + pshift);
            if (!p || !ih)
                continue;
            GroupHom phi = compose(*ih, *p);
            /* stable kernel of phi */
            GroupHom power = phi;
            IntMat kprev = hom_kernel_lattice(power);
            while (true) {
                power = compose(phi, power);
                IntMat knext = hom_kernel_lattice(power);
                if (same_span(kprev, knext))
                    break;
                kprev = knext;
            }
            Subquotient base(phi.src.coords(),
                             IntMat::hconcat(IntMat::identity(phi.src.coords()), kprev), kprev);
            lg.base = base.group();
            /* induced endomorphism on the reduced group */
            IntMat m(base.group().coords(), base.group().coords());
            IntMat reps = base.generator_reps();
            for (int g = 0; g < reps.cols(); ++g)
                m.set_column(g, base.project(phi.apply(reps.column(g))));
            lg.endo = m;
            GroupHom endo_hom(base.group(), base.group(), m);
            lg.endo_invertible = is_isomorphism(endo_hom);
            std::ostringstream os;
            os << lg.base.str();
            if (!lg.endo_invertible)
                os << " with " << to_string(m) << " inverted";
            lg.presentation = os.str();
            out.table.emplace(deg, std::move(lg));
            continue;
        }
        /* walk the chain until a step is an isomorphism */
        CoupleDeg cur = deg;
        bool stabilized = false;
        while (true) {
            const GroupHom* p = c.map_at(c.periodicity, cur);
            const GroupHom* ih = c.map_at(c.i, cur + pshift);
            if (!p || !ih)
                break;
            GroupHom phi = compose(*ih, *p);
            bool iso = is_isomorphism(phi);
            cur = cur + step;
            if (iso && c.d_group(cur) == c.d_group(cur + step)) {
                stabilized = true;
                break;
            }
        }
        lg.base = c.d_group(cur);
        lg.endo = IntMat::identity(lg.base.coords());
        lg.endo_invertible = stabilized;
        lg.presentation = lg.base.str();
        /* graded pieces: images of the i-composites into the stable node */
        const Subquotient* stable_node = c.d_node(cur);
        if (stable_node) {
            IntMat rel = relation_matrix(stable_node->group());
            std::vector<IntMat> images;
            images.push_back(IntMat::hconcat(IntMat::identity(stable_node->group().coords()), rel));
            CoupleDeg up = cur - c.shift_i;
            GroupHom acc = GroupHom::identity(stable_node->group());
            while (true) {
                const GroupHom* ih = c.map_at(c.i, up);
                if (!ih || !(ih->dst == acc.src))
                    break;
                acc = compose(acc, *ih);
                images.push_back(IntMat::hconcat(acc.matrix, rel));
                up = up - c.shift_i;
            }
            for (size_t t = 0; t + 1 < images.size(); ++t) {
                Subquotient piece(stable_node->group().coords(),
                                  IntMat::hconcat(images[t], images[t + 1]), images[t + 1]);
                if (!piece.group().is_trivial())
                    lg.graded_pieces.push_back(piece.group());
            }
            /* the deepest image is the last graded piece */
            Subquotient bottom(stable_node->group().coords(), images.back(), rel);
            if (!bottom.group().is_trivial())
                lg.graded_pieces.push_back(bottom.group());
        }
        out.table.emplace(deg, std::move(lg));
    }
    return out;
}

}  // namespace sseq
