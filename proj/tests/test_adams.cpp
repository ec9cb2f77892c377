#include "motivic/adams.hpp"

#include "motivic/coefficients.hpp"

#include <algorithm>
#include <doctest.h>
#include <map>
#include <set>

using namespace motivic;

namespace {
bool has_class(const SSPage& page, Tridegree td, const std::string& name)
{
    auto it = page.classes.find(td);
    if (it == page.classes.end())
        return false;
    return std::find(it->second.begin(), it->second.end(), name) != it->second.end();
}

// formal GF(2) sum of monomials, for Leibniz bookkeeping
std::multiset<std::string> gf2_terms(const std::vector<std::optional<ExtMonomial>>& monos)
{
    std::multiset<std::string> terms;
    for (const auto& m : monos)
        if (m)
            terms.insert(m->str());
    std::multiset<std::string> out;
    for (auto it = terms.begin(); it != terms.end();) {
        auto range = terms.equal_range(*it);
        auto count = std::distance(range.first, range.second);
        if (count % 2)
            out.insert(*it);
        it = range.second;
    }
    return out;
}
}  // namespace

TEST_CASE("seeded differentials")
{
    ResidueData r3 = residue_data(3);
    auto s3 = seed_differentials(r3, Spectrum::KGL);
    REQUIRE(s3.size() == 1);
    CHECK(s3[0].page == 2);
    CHECK(s3[0].source.str() == "tau^2");
    CHECK(s3[0].target.str() == "u*tau*v0^2");  // rho = u

    ResidueData r5 = residue_data(5);
    auto s5 = seed_differentials(r5, Spectrum::BPGL);
    REQUIRE(s5.size() == 1);
    CHECK(s5[0].page == 2);
    CHECK(s5[0].source.str() == "tau");
    CHECK(s5[0].target.str() == "u*v0^2");

    ResidueData r13 = residue_data(13);  // nu2(12) = 2
    auto s13 = seed_differentials(r13, Spectrum::BPGL);
    REQUIRE(s13.size() == 1);
    CHECK(s13[0].page == 2);
    CHECK(s13[0].target.str() == "u*v0^2");

    // BPGL0 inherits the seeds
    auto s0 = seed_differentials(r3, Spectrum::BPGL0);
    REQUIRE(s0.size() == 1);
    CHECK(s0[0].source.str() == "tau^2");
}

TEST_CASE("tau-power differentials")
{
    ResidueData r5 = residue_data(5);
    auto d6 = tau_power_differential(r5, 6);
    CHECK(d6.page == 3);  // k + nu(6) = 2 + 1
    CHECK(d6.source.str() == "tau^6");
    CHECK(d6.target.str() == "u*tau^5*v0^3");

    ResidueData r3 = residue_data(3);
    auto d2 = tau_power_differential(r3, 2);
    CHECK(d2.page == 2);
    CHECK(d2.target.str() == "u*tau*v0^2");

    // odd powers by Leibniz: d(tau^3) = tau * d(tau^2)
    auto d3 = tau_power_differential(r3, 3);
    CHECK(d3.page == 2);
    CHECK(d3.target.str() == "u*tau^2*v0^2");

    CHECK_THROWS_AS(tau_power_differential(r3, 1), InvalidInputError);
    CHECK_THROWS_AS(tau_power_differential(r5, 0), InvalidInputError);
}

TEST_CASE("higher Leibniz consistency on tau^(2^v)")
{
    for (std::int64_t q : {3, 5, 13}) {
        ResidueData rd = residue_data(q);
        // start from the seed and square repeatedly: d_{r+1} x^2 = x d_r(x) v_0
        SeedDiff cur = seed_differentials(rd, Spectrum::BPGL)[0];
        ExtMonomial v0 = make_ext_monomial(rd, kMilnorOne, 0, {1});
        for (int step = 0; step < 4; ++step) {
            auto xsq = ext_mono_mul(rd, cur.source, cur.source);
            REQUIRE(xsq.has_value());
            auto xdx = ext_mono_mul(rd, cur.source, cur.target);
            REQUIRE(xdx.has_value());
            auto tgt = ext_mono_mul(rd, *xdx, v0);
            REQUIRE(tgt.has_value());
            cur = SeedDiff{cur.page + 1, *xsq, *tgt};

            auto direct = tau_power_differential(rd, cur.source.tau);
            CHECK(direct.page == cur.page);
            CHECK(direct.source.str() == cur.source.str());
            CHECK(direct.target.str() == cur.target.str());
        }
    }
}

TEST_CASE("monomial differentials respect the boundary generators")
{
    for (std::int64_t q : {3, 5}) {
        ResidueData rd = residue_data(q);
        // pi, u, pi*u, v_i never support differentials
        CHECK(!monomial_differential(rd, make_ext_monomial(rd, kMilnorPi, 0, {})).has_value());
        CHECK(!monomial_differential(rd, make_ext_monomial(rd, kMilnorU, 0, {})).has_value());
        CHECK(!monomial_differential(rd, make_ext_monomial(rd, kMilnorPiU, 0, {})).has_value());
        CHECK(!monomial_differential(rd, make_ext_monomial(rd, kMilnorOne, 0, {3, 2})).has_value());
        // u-divisible classes are permanent
        CHECK(!monomial_differential(rd, make_ext_monomial(rd, kMilnorU, 5, {1, 1})).has_value());
    }
}

TEST_CASE("page turning on the examples")
{
    // zero differentials: pages beyond the stable one repeat verbatim
    ResidueData r5 = residue_data(5);
    Window small{-2, 5, -4, 2, 4};
    AdamsEngine engine(r5, Spectrum::KGL, small);
    SSPage p10 = engine.page(10);
    SSPage p11 = turn_page(engine, p10);
    CHECK(p11.r == 11);
    CHECK(p11.classes == p10.classes);
    CHECK(p11.diffs.empty());

    // q=3 kgl: the target u*tau*v0^2 of the seed dies at E_3
    ResidueData r3 = residue_data(3);
    AdamsEngine e3(r3, Spectrum::KGL, small);
    Tridegree td = make_ext_monomial(r3, kMilnorU, 1, {2}).tridegree();
    CHECK(has_class(e3.page(2), td, "u*tau*v0^2"));
    CHECK(!has_class(e3.page(3), td, "u*tau*v0^2"));

    // q=5 BPGL: u*tau survives to E_{k+1} and its v_0-tower truncates at
    // height k + nu2(2) = 3
    AdamsEngine e5(r5, Spectrum::BPGL, small);
    Tridegree td_utau = make_ext_monomial(r5, kMilnorU, 1, {}).tridegree();
    CHECK(has_class(e5.page(3), td_utau, "u*tau"));
    EInfinity einf = e5.e_infinity();
    CHECK(has_class(einf.page, td_utau, "u*tau"));
    bool found = false;
    for (const auto& [bideg, towers] : einf.towers.towers)
        for (const auto& t : towers)
            if (t.base_name == "u*tau") {
                found = true;
                CHECK(t.height == 3);
            }
    CHECK(found);
}

TEST_CASE("recorded differentials have the Adams shape")
{
    for (std::int64_t q : {3, 5}) {
        ResidueData rd = residue_data(q);
        Window w{-3, 6, -6, 2, 5};
        for (Spectrum spec : {Spectrum::KGL, Spectrum::BPGL, Spectrum::BPGL0}) {
            EInfinity einf = e_infinity(rd, spec, w);
            CHECK(!einf.page.diffs.empty());
            for (const auto& d : einf.page.diffs) {
                CHECK(d.tgt.s - d.src.s == d.r);
                CHECK(d.tgt.m - d.src.m == d.r - 1);
                CHECK(d.tgt.n == d.src.n);
                // Adams grading drops by exactly one
                CHECK(d.src.adams().m - d.tgt.adams().m == 1);
                CHECK(d.src.adams().n == d.tgt.adams().n);
            }
        }
    }
}

TEST_CASE("Leibniz rule for the monomial differentials, all in-window products")
{
    for (std::int64_t q : {3, 5}) {
        ResidueData rd = residue_data(q);
        Window w{-2, 5, -5, 2, 4};
        auto table = closed_form_window(rd, 1, w);
        std::vector<ExtMonomial> monos;
        for (const auto& [td, basis] : table)
            for (const auto& m : basis)
                monos.push_back(m);

        for (const auto& x : monos)
            for (const auto& y : monos) {
                auto xy = ext_mono_mul(rd, x, y);
                if (!xy || !w.contains(xy->tridegree()))
                    continue;
                auto dx = monomial_differential(rd, x);
                auto dy = monomial_differential(rd, y);
                auto dxy = monomial_differential(rd, *xy);
                for (int r = 2; r <= 6; ++r) {
                    // Leibniz speaks about classes still on the page
                    if (last_page(rd, x) < r || last_page(rd, y) < r)
                        continue;
                    std::vector<std::optional<ExtMonomial>> lhs, rhs;
                    if (dxy && dxy->page == r)
                        lhs.push_back(dxy->target);
                    if (dx && dx->page == r)
                        rhs.push_back(ext_mono_mul(rd, dx->target, y));
                    if (dy && dy->page == r)
                        rhs.push_back(ext_mono_mul(rd, x, dy->target));
                    CHECK(gf2_terms(lhs) == gf2_terms(rhs));
                }
            }
    }
}

TEST_CASE("E_infinity matches Gamma' and multiplicative spot checks hold")
{
    for (std::int64_t q : {3, 5}) {
        ResidueData rd = residue_data(q);
        Window w{-4, 8, -6, 3, 7};
        for (Spectrum spec : {Spectrum::KGL, Spectrum::BPGL}) {
            EInfinity einf = e_infinity(rd, spec, w);
            CHECK(einf.gamma_mismatches.empty());

            ExtMonomial u = make_ext_monomial(rd, kMilnorU, 0, {});
            ExtMonomial pi = make_ext_monomial(rd, kMilnorPi, 0, {});
            for (int i = 1; i <= 4; ++i) {
                ExtMonomial gamma_i = make_ext_monomial(rd, kMilnorU, i - 1, {});
                // u * gamma_i = 0
                CHECK(!ext_mono_mul(rd, u, gamma_i).has_value());
                // pi * gamma_i generates the epsilon = 2 slot
                auto prod = ext_mono_mul(rd, pi, gamma_i);
                REQUIRE(prod.has_value());
                Tridegree td = prod->tridegree();
                if (w.contains(td))
                    CHECK(has_class(einf.page, td, prod->str()));
            }
        }
    }
}

TEST_CASE("flagged ambiguities are all discharged at E_infinity")
{
    ResidueData r3 = residue_data(3);
    Window w{-4, 8, -6, 3, 7};
    for (Spectrum spec : {Spectrum::KGL, Spectrum::BPGL}) {
        EInfinity einf = e_infinity(r3, spec, w);
        CHECK(!einf.ambiguities.empty());
        for (const auto& amb : einf.ambiguities) {
            CHECK(!(amb.lhs_alive && amb.rhs_alive));
            CHECK(!amb.rhs_alive);  // the tau-power side always dies
        }
    }
}

TEST_CASE("towers partition E_infinity and resolve to the formula groups")
{
    ResidueData r3 = residue_data(3);
    Window w{-4, 8, -6, 3, 7};
    EInfinity einf = e_infinity(r3, Spectrum::KGL, w);

    // partition: every surviving class appears in exactly one tower level
    int covered = 0;
    for (const auto& [bideg, towers] : einf.towers.towers)
        for (const auto& t : towers) {
            int h = t.height;
            if (h < 0) {
                for (int c = 0; w.contains(t.base + Tridegree{c, c, 0}); ++c)
                    ++covered;
            }
            else {
                for (int c = 0; c < h; ++c)
                    if (w.contains(t.base + Tridegree{c, c, 0}))
                        ++covered;
            }
        }
    CHECK(covered == einf.page.total_dim());

    auto groups = resolve_towers(einf.towers);
    // the imported fact: (KGL^)_3 = Z/4 for q = 3 mod 4
    REQUIRE(groups.count(Bidegree{3, 0}) == 1);
    CHECK(groups.at({3, 0}) == coefficient_group(r3, SpectrumTag::KGL, {3, 0}));
    CHECK(groups.at({3, 0}).torsion == std::vector<int>{2});

    for (Bidegree b : {Bidegree{0, 0}, {1, 0}, {2, 0}, {4, 0}, {0, -1}, {0, -2}, {1, -2}, {2, -3}}) {
        CoefficientGroup expect = coefficient_group(r3, SpectrumTag::KGL, b);
        CoefficientGroup got = groups.count(b) ? groups.at(b) : CoefficientGroup{};
        CHECK(got == expect);
    }
}

TEST_CASE("resolve_towers on bare decompositions")
{
    TowerDecomposition td;
    td.towers[{0, 0}].push_back(Tower{"x", {0, 0, 0}, -1});
    td.towers[{0, -1}].push_back(Tower{"y", {0, 0, -1}, 2});
    auto groups = resolve_towers(td);
    CHECK(groups.at({0, 0}).free_rank == 1);
    CHECK(groups.at({0, 0}).torsion.empty());
    CHECK(groups.at({0, -1}).free_rank == 0);
    CHECK(groups.at({0, -1}).torsion == std::vector<int>{2});
    CHECK(resolve_towers(TowerDecomposition{}).empty());
}

TEST_CASE("page bound preconditions are enforced")
{
    ResidueData r5 = residue_data(5);
    Window w{-2, 8, -4, 2, 5};
    CHECK_THROWS_AS(AdamsEngine(r5, Spectrum::KGL, w, 2), WindowRejection);
    CHECK_THROWS_AS(e_infinity(r5, Spectrum::KGL, Window{2, 1, 0, 0, 2}), InvalidInputError);
}
