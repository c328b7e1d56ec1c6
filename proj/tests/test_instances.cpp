#include <doctest.h>

#include <random>
#include <set>

#include "sseq/couple.hpp"
#include "sseq/fixtures.hpp"
#include "sseq/instances.hpp"

using namespace sseq;

TEST_CASE("build_ahss: point with the Laurent ring")
{
    auto tower = build_ahss(fixtures::point(), GradedRing::laurent(2), -4, 4, false);
    int lim = -1;
    Page stable = e_infinity(tower.complex, &lim);
    CHECK(lim == 1);
    for (int n = -4; n <= 4; n += 2)
        CHECK(stable.group_at({0, -n}) == FGAbelianGroup{1, {}});
    CHECK(stable.group_at({0, 1}).is_trivial());
    CHECK(abutment_check(tower.complex).ok);
}

TEST_CASE("build_ahss: 2-sphere with the Laurent ring collapses at E_2")
{
    auto s2 = fixtures::sphere2();
    auto tower = build_ahss(s2, GradedRing::laurent(2), -4, 4, false);
    int lim = -1;
    Page stable = e_infinity(tower.complex, &lim);
    CHECK(lim <= 2);
    /* abutment: Z + Z in every even total degree inside the window */
    auto rep = abutment_check(tower.complex);
    CHECK(rep.ok);
    for (int n = -2; n <= 2; n += 2) {
        CHECK(stable.group_at({0, -n}) == FGAbelianGroup{1, {}});
        CHECK(stable.group_at({2, 2 - n}) == FGAbelianGroup{1, {}});
        Subquotient h = total_cohomology(tower.complex, n);
        CHECK(h.group() == FGAbelianGroup{2, {}});
    }
    for (int n = -3; n <= 3; n += 2)
        CHECK(total_cohomology(tower.complex, n).group().is_trivial());
}

TEST_CASE("build_ahss: E_1 with d_1 is the bigraded cochain complex, naturally")
{
    auto two = GradedRing::two_line();
    auto src_map = fixtures::torus_to_circle();
    auto tk = build_ahss(src_map.source(), two);
    auto tc = build_ahss(src_map.target(), two);

    auto check_identification = [&](const AhssTower& t, const OrderedComplex& K) {
        IntChainComplex C = chain_complex(K);
        Page e1 = page(t.complex, 1);
        for (const auto& [b, sq] : e1.entries) {
            RingLevel lv = two.level(b.c);
            if (!lv.nonzero()) {
                CHECK(sq.group().is_trivial());
                continue;
            }
            /* E_1 entry is the free module on the (f, c) block */
            CHECK(sq.group() == FGAbelianGroup{K.count(b.f), {}});
            /* d_1 in block coordinates equals the graded coboundary */
            auto d = e1.d.find(b);
            if (b.f >= K.dim()) {
                if (d != e1.d.end())
                    CHECK(d->second.is_zero());
                continue;
            }
            REQUIRE(d != e1.d.end());
            IntMat expect = graded_delta_matrix(C, b.f, b.c);
            /* translate through the block identification on both sides */
            const Subquotient* tgt = e1.entry_at(e1.d_target(b));
            REQUIRE(tgt != nullptr);
            IntMat got(expect.rows(), expect.cols());
            for (int g = 0; g < sq.group().coords(); ++g) {
                IntVec rep = sq.lift([&] {
                    IntVec e(sq.group().coords());
                    e[g] = 1;
                    return e;
                }());
                IntVec block = t.block_restrict(b, rep);
                /* block coordinates index K.count(b.f) cells */
                IntVec drep = tgt->lift(d->second.matrix.column(g));
                IntVec dblock = t.block_restrict(e1.d_target(b), drep);
                /* identify column of the expected matrix via the block */
                int src_ix = -1;
                for (int i = 0; i < int(block.size()); ++i)
                    if (block[i] != 0)
                        src_ix = i;
                REQUIRE(src_ix >= 0);
                for (int r = 0; r < expect.rows(); ++r)
                    got.at(r, src_ix) = dblock[r] * block[src_ix];
            }
            CHECK(got == expect);
        }
    };
    check_identification(tk, src_map.source());
    check_identification(tc, src_map.target());

    /* naturality: the pullback intertwines the d_1 blocks */
    std::mt19937 rng(4);
    std::uniform_int_distribution<int> val(-5, 5);
    IntChainComplex Ck = chain_complex(src_map.source());
    for (int p = 0; p <= 1; ++p)
        for (int q = 0; q <= 1; ++q) {
            IntVec v(src_map.target().count(p));
            for (auto& x : v)
                x = val(rng);
            IntMat pull = src_map.cochain_matrix(p);
            IntMat pull_next = src_map.cochain_matrix(p + 1);
            IntChainComplex Cc = chain_complex(src_map.target());
            IntVec lhs = graded_delta_matrix(Ck, p, q).apply(pull.apply(v));
            IntVec rhs = pull_next.apply(graded_delta_matrix(Cc, p, q).apply(v));
            CHECK(lhs == rhs);
        }
}

TEST_CASE("build_ahss: torus with integer coefficients reproduces the cup product")
{
    auto t2 = fixtures::torus();
    auto tower = build_ahss(t2, GradedRing::integers());
    PagePairing e2 = page_pairing(tower.complex, 2);
    PagePairing grd = cohomology_pairing(t2, GradedRing::integers(), 0, 2, true);
    CHECK(compare_global_iso(e2, grd, SignFamily::identity(), tower.bridge()).yes);
    /* with integer coefficients every coefficient degree is 0 and the
     * ungraded comparison is on the nose as well */
    PagePairing ungrd = cohomology_pairing(t2, GradedRing::integers(), 0, 2, false);
    SignFamily eta = transport_homotopy_to_engine(SignFamily::pq());
    auto disc = pairing_discrepancy(e2, ungrd, eta, tower.bridge());
    CHECK(disc.defined);
    CHECK(disc.matches_f2c1);
    CHECK(disc.matches_plus1);
    CHECK(disc.constrained > 0);
}

TEST_CASE("build_ahss: two-line ring separates graded from ungraded")
{
    auto t2 = fixtures::torus();
    auto two = GradedRing::two_line();
    auto tower = build_ahss(t2, two);
    PagePairing e2 = page_pairing(tower.complex, 2);
    PagePairing grd = cohomology_pairing(t2, two, tower.n_min, tower.n_max, true);
    PagePairing ungrd = cohomology_pairing(t2, two, tower.n_min, tower.n_max, false);

    CHECK(compare_global_iso(e2, grd, SignFamily::identity(), tower.bridge()).yes);
    /* identity family against the ungraded cup: no */
    CHECK(!compare_global_iso(e2, ungrd, SignFamily::identity(), tower.bridge()).yes);

    /* raw chain-level ratio follows the pattern (-1)^{f1 c2} */
    auto raw = pairing_discrepancy(e2, ungrd, SignFamily::identity(), tower.bridge());
    CHECK(raw.defined);
    CHECK(raw.matches_f1c2);
    CHECK(!raw.matches_f2c1);
    CHECK(!raw.matches_plus1);
    CHECK(raw.constrained > 0);

    /* scaled by the comparison family, the ratio is the homotopy-indexed
     * sign t(p+q), i.e. (-1)^{f2 c1} in engine indexing */
    SignFamily eta = transport_homotopy_to_engine(SignFamily::pq());
    auto disc = pairing_discrepancy(e2, ungrd, eta, tower.bridge());
    CHECK(disc.defined);
    CHECK(disc.matches_f2c1);
    CHECK(!disc.matches_f1c2);
    CHECK(!disc.matches_plus1);
    CHECK(disc.constrained > 0);
}

TEST_CASE("build_serre: identity map gives the skeletal tower")
{
    auto K = fixtures::rp2();
    std::vector<int> id(K.vertex_count());
    for (int i = 0; i < K.vertex_count(); ++i)
        id[i] = i;
    auto serre = build_serre(SimplicialMap(K, K, id), 0);
    for (int i = 0; i < serre.cell_count(); ++i)
        CHECK(serre.cell(i).filt == serre.cell(i).degree);
    CHECK(abutment_check(serre).ok);
}

TEST_CASE("build_serre: torus and Klein bottle over the circle, mod 2")
{
    for (bool klein : {false, true}) {
        SimplicialMap p = klein ? fixtures::klein_to_circle() : fixtures::torus_to_circle();
        auto serre = build_serre(p, 2);
        Page e2 = page(serre, 2);
        /* Kunneth grid (1,1;1,1): base degree f, fiber degree n - f */
        CHECK(e2.group_at({0, 0}) == FGAbelianGroup{0, {2}});
        CHECK(e2.group_at({0, -1}) == FGAbelianGroup{0, {2}});
        CHECK(e2.group_at({1, 0}) == FGAbelianGroup{0, {2}});
        CHECK(e2.group_at({1, -1}) == FGAbelianGroup{0, {2}});
        CHECK(e2.groups().size() == 4);
        /* collapse and the right abutment */
        auto rep = abutment_check(serre);
        CHECK(rep.ok);
        std::vector<long> dims(3, 0);
        for (int n = 0; n <= 2; ++n) {
            auto g = total_cohomology(serre, n).group();
            dims[n] = long(g.torsion.size()) + g.rank;
        }
        CHECK(dims == std::vector<long>{1, 2, 1});
        CHECK(leibniz_check(page_pairing(serre, 2)).ok);
    }
}

TEST_CASE("compare_product_filtrations: interval squared and circle squared")
{
    auto d1 = fixtures::standard_simplex(1);
    auto cmp = compare_product_filtrations(d1, d1, 0);
    CHECK(!cmp.e1_equal);
    CHECK(cmp.e2_isomorphic);
    /* skeletal E_1 sees the diagonal edge, the product filtration does not */
    CHECK(cmp.e1_table.at(Bidegree{1, 0}).first == FGAbelianGroup{5, {}});
    CHECK(cmp.e1_table.at(Bidegree{1, 0}).second == FGAbelianGroup{4, {}});

    auto s1 = fixtures::circle();
    auto cmp2 = compare_product_filtrations(s1, s1, 0);
    CHECK(!cmp2.e1_equal);
    CHECK(cmp2.e2_isomorphic);

    auto pt = fixtures::point();
    auto cmp3 = compare_product_filtrations(pt, s1, 0);
    CHECK(cmp3.e1_equal);
    CHECK(cmp3.e2_isomorphic);
}

TEST_CASE("build_group_page: trivial group and Z/2 with integer coefficients")
{
    auto triv = build_group_page(fixtures::cyclic_group(1), GradedRing::integers(), 4);
    CHECK(triv.page.group_at({0, 0}) == FGAbelianGroup{1, {}});
    CHECK(triv.page.groups().size() == 1);

    auto z2 = build_group_page(fixtures::cyclic_group(2), GradedRing::integers(), 5);
    CHECK(z2.page.group_at({0, 0}) == FGAbelianGroup{1, {}});
    CHECK(z2.page.group_at({1, 0}).is_trivial());
    CHECK(z2.page.group_at({2, 0}) == FGAbelianGroup{0, {2}});
    CHECK(z2.page.group_at({3, 0}).is_trivial());
    CHECK(z2.page.group_at({4, 0}) == FGAbelianGroup{0, {2}});
}

TEST_CASE("build_group_page: Z/2 with Z/2 coefficients is polynomial")
{
    auto gp = build_group_page(fixtures::cyclic_group(2), GradedRing::cyclic(2), 5);
    for (int q = 0; q < 5; ++q)
        CHECK(gp.page.group_at({q, 0}) == FGAbelianGroup{0, {2}});
    /* products of generators are nonzero */
    for (int q1 = 1; q1 <= 2; ++q1)
        for (int q2 = 1; q1 + q2 < 5; ++q2) {
            const auto* t = gp.pairing.table_at(Bidegree{q1, 0}, Bidegree{q2, 0});
            REQUIRE(t != nullptr);
            CHECK((*t)[0][0] == IntVec{Int(1)});
        }
}

TEST_CASE("build_group_page: rejects a nontrivial action")
{
    CHECK_THROWS_AS(build_group_page(fixtures::cyclic_group(3), GradedRing::integers(), 3,
                                     std::vector<int>{0, 2, 1}),
                    NontrivialActionUnsupported);
}

TEST_CASE("build_descent: cover by the whole complex collapses")
{
    auto K = fixtures::rp2();
    CoverData cover{K, {K.all_simplices()}};
    auto tower = build_descent(cover, 0);
    CHECK(abutment_check(tower.complex).ok);
    Page e2 = page(tower.complex, 2);
    CHECK(e2.group_at({0, 0}) == FGAbelianGroup{1, {}});
    CHECK(e2.group_at({0, -2}) == FGAbelianGroup{0, {2}});
}

TEST_CASE("build_descent: two arcs covering the circle (Mayer-Vietoris)")
{
    auto s1 = fixtures::circle();
    /* arcs {01}, {0-2-1... pieces: edges {0,1} and {0,2},{1,2} */
    std::vector<Simplex> arc1 = {{0}, {1}, {0, 1}};
    std::vector<Simplex> arc2 = {{0}, {1}, {2}, {0, 2}, {1, 2}};
    auto tower = build_descent(CoverData{s1, {arc1, arc2}}, 0);
    CHECK(tower.all_pieces_acyclic);
    CHECK(descent_e2_identification(tower, s1, 0));
    CHECK(abutment_check(tower.complex).ok);
    CHECK(total_cohomology(tower.complex, 0).group() == FGAbelianGroup{1, {}});
    CHECK(total_cohomology(tower.complex, 1).group() == FGAbelianGroup{1, {}});
}

TEST_CASE("build_descent: two disks covering the sphere")
{
    auto s2 = fixtures::sphere2();
    /* northern disk: triangles with vertex 0; southern: triangle {1,2,3};
     * the overlap deformation retracts to a circle */
    std::vector<Simplex> north, south;
    for (const auto& s : s2.all_simplices()) {
        if (std::find(s.begin(), s.end(), 0) != s.end())
            north.push_back(s);
        if (std::find(s.begin(), s.end(), 0) == s.end())
            south.push_back(s);
    }
    /* close both: north needs the boundary faces of its triangles, south is
     * already the full triangle {1,2,3} with faces */
    std::set<Simplex> nset(north.begin(), north.end());
    for (const auto& s : s2.all_simplices())
        for (const auto& t : north)
            if (std::includes(t.begin(), t.end(), s.begin(), s.end()))
                nset.insert(s);
    auto tower =
        build_descent(CoverData{s2, {{nset.begin(), nset.end()}, south}}, 0);
    CHECK(!tower.all_pieces_acyclic);  // the overlap is a circle
    CHECK(abutment_check(tower.complex).ok);
    CHECK(total_cohomology(tower.complex, 0).group() == FGAbelianGroup{1, {}});
    CHECK(total_cohomology(tower.complex, 1).group().is_trivial());
    CHECK(total_cohomology(tower.complex, 2).group() == FGAbelianGroup{1, {}});
    /* the Mayer-Vietoris d_1 on the zeroth row is nonzero */
    Page e1 = page(tower.complex, 1);
    auto d = e1.d.find(Bidegree{0, 0});
    REQUIRE(d != e1.d.end());
    CHECK(!d->second.is_zero());
}

TEST_CASE("build_descent: rejects non-covers")
{
    auto s1 = fixtures::circle();
    std::vector<Simplex> arc1 = {{0}, {1}, {0, 1}};
    CHECK_THROWS_AS(build_descent(CoverData{s1, {arc1}}, 0), NotACover);
    std::vector<Simplex> notclosed = {{0, 1}};
    CHECK_THROWS_AS(build_descent(CoverData{s1, {arc1, notclosed}}, 0), NotACover);
}
