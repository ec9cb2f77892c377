// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include "motivic/adams.hpp"
#include "motivic/chart.hpp"
#include "motivic/cli.hpp"
#include "motivic/closed_ext.hpp"
#include "motivic/cobar.hpp"
#include "motivic/coefficients.hpp"
#include "motivic/hopf.hpp"

#include <chrono>
#include <fmt/format.h>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

using namespace motivic;

namespace {

struct Failure : std::runtime_error
{
    explicit Failure(const std::string& what)
        : std::runtime_error(what)
    {
    }
};

void require(bool cond, const std::string& what)
{
    if (!cond)
        throw Failure(what);
}

const Window kOracleWindow{-6, 10, -10, 4, 8};

// ---- 1: Milnor K-theory dimensions and products ---------------------------

void criterion_milnor()
{
    for (std::int64_t q : {3, 5, 7, 9, 11, 13, 25, 27, 81}) {
        ResidueData rd = residue_data(q);
        require(milnor_basis(rd, 0).size() == 1, fmt::format("q={}: dim k0", q));
        require(milnor_basis(rd, 1).size() == 2, fmt::format("q={}: dim k1", q));
        require(milnor_basis(rd, 2).size() == 1, fmt::format("q={}: dim k2", q));
        for (int n = 3; n <= 10; ++n)
            require(milnor_basis(rd, n).empty(), fmt::format("q={}: dim k{}", q, n));

        MilnorClass pi = milnor_class_of(kMilnorPi);
        MilnorClass u = milnor_class_of(kMilnorU);
        MilnorClass pipi = milnor_product(rd, pi, pi);
        if (rd.qmod4 == 1)
            require(pipi.is_zero(), fmt::format("q={}: pi^2 = 0", q));
        else
            require(pipi.coeffs == std::vector<int>{1}, fmt::format("q={}: pi^2 = pi*u", q));
        require(milnor_product(rd, u, u).is_zero(), fmt::format("q={}: u^2 = 0", q));
        require(milnor_product(rd, pi, u).coeffs == std::vector<int>{1}, fmt::format("q={}: pi*u generates", q));
        MilnorClass piu = milnor_class_of(kMilnorPiU);
        require(milnor_product(rd, pi, piu).is_zero(), fmt::format("q={}: degree 3 vanishes", q));
        // commutativity across the whole basis
        for (int a = 0; a < kMilnorBasisSize; ++a)
            for (int b = 0; b < kMilnorBasisSize; ++b) {
                auto ab = milnor_product(rd, milnor_class_of(a), milnor_class_of(b));
                auto ba = milnor_product(rd, milnor_class_of(b), milnor_class_of(a));
                require(ab.coeffs == ba.coeffs, fmt::format("q={}: commutativity", q));
            }
    }
}

// ---- 2: cobar oracle vs closed form ----------------------------------------

void check_oracle_equality(const ResidueData& rd, int n, const Window& w)
{
    ExtOptions opt;
    opt.threads = int(std::thread::hardware_concurrency());
    ExtTable cobar = ext_dimensions(rd, n, w, opt);
    auto closed = closed_form_window(rd, n, w);
    for (const auto& [td, basis] : closed)
        require(cobar.dim_at(td) == int(basis.size()),
                fmt::format("q={} n={} {}: cobar {} vs closed {}", rd.q, n, td.str(), cobar.dim_at(td), basis.size()));
    for (const auto& [td, e] : cobar.entries)
        require(closed.count(td) == 1, fmt::format("q={} n={} {}: cobar {} vs closed 0", rd.q, n, td.str(), e.dim));
}

void criterion_oracle_equivalence()
{
    for (std::int64_t q : {3, 5})
        check_oracle_equality(residue_data(q), 1, kOracleWindow);
}

// ---- 3: E(infinity) stabilization ------------------------------------------

void criterion_stabilization()
{
    int n0 = truncation_level(kOracleWindow);
    ExtOptions opt;
    opt.threads = int(std::thread::hardware_concurrency());
    for (std::int64_t q : {3, 5}) {
        ResidueData rd = residue_data(q);
        ExtTable a = ext_dimensions(rd, n0, kOracleWindow, opt);
        ExtTable b = ext_dimensions(rd, n0 + 1, kOracleWindow, opt);
        require(a.entries.size() == b.entries.size(), fmt::format("q={}: table sizes {} vs {}", q, a.entries.size(), b.entries.size()));
        for (const auto& [td, e] : a.entries)
            require(b.dim_at(td) == e.dim, fmt::format("q={} {}: n={} gives {}, n={} gives {}", q, td.str(), n0, e.dim, n0 + 1, b.dim_at(td)));
    }
}

// ---- 4: rho-Bockstein --------------------------------------------- --------

void criterion_bockstein()
{
    ResidueData r3 = residue_data(3);
    SSPage e2 = rho_bockstein_e2(r3, 1, kOracleWindow);
    auto closed = closed_form_window(r3, 1, kOracleWindow);

    for (const auto& [td, basis] : closed)
        require(e2.dim_at(td) == int(basis.size()),
                fmt::format("E2 {} has dim {} vs closed {}", td.str(), e2.dim_at(td), basis.size()));
    for (const auto& [td, names] : e2.classes)
        require(closed.count(td) == 1, fmt::format("unexpected E2 classes at {}", td.str()));

    bool tau_fires = false;
    for (const auto& d : e2.diffs) {
        require(d.r == 1, "rho-Bockstein differential beyond d_1");
        for (const char* gen : {"pi", "u", "v0", "v1"})
            require(d.src_name != gen, fmt::format("generator {} supports a d_1", gen));
        if (d.src_name == "tau") {
            tau_fires = true;
            require(d.tgt_name == "u*v0", "d_1(tau) is not rho*v_0");
        }
    }
    require(tau_fires, "d_1(tau) = rho*v_0 missing");
}

// ---- 5: motivic ASS for kgl, q = 3 ------------------------------------------

void criterion_kgl()
{
    ResidueData r3 = residue_data(3);
    Window w{-4, 8, -8, 3, 7};
    EInfinity einf = e_infinity(r3, Spectrum::KGL, w);
    require(einf.gamma_mismatches.empty(),
            fmt::format("E_inf differs from Gamma'[v_1]: {}", einf.gamma_mismatches.empty() ? "" : einf.gamma_mismatches[0]));

    auto groups = resolve_towers(einf.towers);
    require(groups.count(Bidegree{3, 0}) == 1, "no group at 3+0a");
    CoefficientGroup k3 = groups.at({3, 0});
    require(k3.free_rank == 0 && k3.torsion == std::vector<int>{2}, fmt::format("(kgl)_3 = {} != Z/4", k3.str()));
    require(coefficient_group(r3, SpectrumTag::KGL, {3, 0}) == k3, "formula route disagrees at 3+0a");

    for (Bidegree b : {Bidegree{0, 0}, {1, 0}, {2, 0}, {4, 0}, {5, 0}, {0, -1}, {0, -2}, {1, -2}, {2, -3}, {3, -4}}) {
        CoefficientGroup expect = coefficient_group(r3, SpectrumTag::KGL, b);
        CoefficientGroup got = groups.count(b) ? groups.at(b) : CoefficientGroup{};
        require(got == expect, fmt::format("kgl at {}: pipeline {} vs formula {}", b.str(), got.str(), expect.str()));
    }
}

// ---- 6: motivic ASS for BPGL, q = 5 -----------------------------------------

void criterion_bpgl()
{
    ResidueData r5 = residue_data(5);  // k = 2
    require(coefficient_group(r5, SpectrumTag::BPGL, {0, -1}).str() == "Z2 + Z/4", "BPGL at -a");
    require(coefficient_group(r5, SpectrumTag::BPGL, {0, -2}).str() == "Z/4", "BPGL at -2a");

    Window w{-4, 8, -9, 3, 7};
    EInfinity einf = e_infinity(r5, Spectrum::BPGL, w);
    require(einf.gamma_mismatches.empty(), "E_inf differs from Gamma'[v_1,v_2,...]");
    auto groups = resolve_towers(einf.towers);

    for (int i = 1; i <= 8; ++i) {
        Bidegree slot{i - 1, -i};
        CoefficientGroup g = coefficient_group(r5, SpectrumTag::BPGL, slot);
        require(g.torsion == std::vector<int>{2 + nu2(i)},
                fmt::format("slot i={}: {} != Z/2^{}", i, g.str(), 2 + nu2(i)));
        require(g.free_rank == (i == 1 ? 1 : 0), fmt::format("slot i={}: free part", i));
        CoefficientGroup got = groups.count(slot) ? groups.at(slot) : CoefficientGroup{};
        require(got == g, fmt::format("slot i={}: pipeline {} vs formula {}", i, got.str(), g.str()));
    }
}

// ---- 7: HZ2 consistency ------------------------------------------------------

void criterion_hz2()
{
    for (std::int64_t q : {3, 5}) {
        ResidueData rd = residue_data(q);
        Window w{-4, 8, -8, 3, 7};
        EInfinity einf = e_infinity(rd, Spectrum::BPGL0, w);
        require(einf.gamma_mismatches.empty(), fmt::format("q={}: BPGL0 E_inf differs from Gamma'", q));
        auto groups = resolve_towers(einf.towers);
        for (int m = 0; m <= 6; ++m)
            for (int n = -7; n <= 0; ++n) {
                Bidegree b{m, n};
                CoefficientGroup expect = gamma_group(rd, b);
                CoefficientGroup got = groups.count(b) ? groups.at(b) : CoefficientGroup{};
                require(got == expect,
                        fmt::format("q={} at {}: pipeline {} vs Gamma {}", q, b.str(), got.str(), expect.str()));
            }
    }
}

// ---- 8: property suites -------------------------------------------------------

void criterion_properties()
{
    // cobar d*d = 0, exhaustively over the oracle window
    for (std::int64_t q : {3, 5}) {
        ResidueData rd = residue_data(q);
        for (int s = 0; s <= kOracleWindow.s_max; ++s)
            for (int m = kOracleWindow.m_lo; m <= kOracleWindow.m_hi; ++m)
                for (int nn = kOracleWindow.n_lo; nn <= kOracleWindow.n_hi; ++nn)
                    for (const auto& w : cobar_basis(rd, 1, {s, m, nn})) {
                        std::vector<CobarWord> dd;
                        for (const auto& t : cobar_differential(rd, 1, w)) {
                            auto more = cobar_differential(rd, 1, t);
                            dd.insert(dd.end(), more.begin(), more.end());
                        }
                        std::sort(dd.begin(), dd.end());
                        for (size_t i = 0; i < dd.size();) {
                            size_t j = i;
                            while (j < dd.size() && dd[j] == dd[i])
                                ++j;
                            require((j - i) % 2 == 0, fmt::format("q={}: d(d({})) != 0", q, w.str()));
                            i = j;
                        }
                    }
    }

    // Leibniz for all in-window products on every page
    for (std::int64_t q : {3, 5}) {
        ResidueData rd = residue_data(q);
        Window w{-3, 6, -6, 2, 5};
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
                for (int r = 2; r <= 8; ++r) {
                    if (last_page(rd, x) < r || last_page(rd, y) < r)
                        continue;
                    std::multiset<std::string> lhs, rhs;
                    if (dxy && dxy->page == r)
                        lhs.insert(dxy->target.str());
                    if (dx && dx->page == r)
                        if (auto t = ext_mono_mul(rd, dx->target, y))
                            rhs.insert(t->str());
                    if (dy && dy->page == r)
                        if (auto t = ext_mono_mul(rd, x, dy->target))
                            rhs.insert(t->str());
                    // cancel equal pairs mod 2
                    for (auto it = rhs.begin(); it != rhs.end();) {
                        auto range = rhs.equal_range(*it);
                        auto cnt = std::distance(range.first, range.second);
                        if (cnt % 2 == 0)
                            it = rhs.erase(range.first, range.second);
                        else
                            it = range.second;
                    }
                    require(lhs == rhs, fmt::format("q={} r={}: Leibniz fails on {} * {}", q, r, x.str(), y.str()));
                }
            }
    }

    // recorded differential shape and ambiguity discharge
    for (std::int64_t q : {3, 5}) {
        ResidueData rd = residue_data(q);
        Window w{-4, 8, -8, 3, 7};
        for (Spectrum spec : {Spectrum::KGL, Spectrum::BPGL, Spectrum::BPGL0}) {
            EInfinity einf = e_infinity(rd, spec, w);
            for (const auto& d : einf.page.diffs) {
                require(d.tgt.s - d.src.s == d.r, "differential shape: homological step");
                require(d.tgt.m - d.src.m == d.r - 1 && d.tgt.n == d.src.n, "differential shape: Adams step");
            }
            for (const auto& amb : einf.ambiguities)
                require(!(amb.lhs_alive && amb.rhs_alive),
                        fmt::format("ambiguity {} = {} survives two-sided", amb.lhs, amb.rhs));
        }
    }
}

// ---- 9: CLI determinism --------------------------------------------------------

std::string run_cli(std::vector<std::string> args)
{
    auto cfg = cli::parse_args(args);
    std::ostringstream out;
    int rc = cli::run(cfg, out);
    require(rc == 0, fmt::format("cli returned {}", rc));
    return out.str();
}

std::string slurp(const std::string& path)
{
    std::ifstream f(path, std::ios::binary);
    require(f.good(), "missing golden file " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void criterion_determinism()
{
    std::string dir = MOTIVIC_GOLDEN_DIR;
    struct Golden
    {
        std::vector<std::string> args;
        std::string file;
    };
    std::vector<Golden> goldens = {
        {{"--q", "3", "coeff", "--spectrum", "kgl", "--degree", "3,0", "--format", "json"}, "coeff_q3_kgl_3_0.json"},
        {{"--q", "5", "milnor"}, "milnor_q5.tsv"},
        {{"--q", "5", "chart", "--spectrum", "hstar", "--window", "-1:6,-6:1"}, "chart_q5_hstar.svg"},
        {{"--q", "3", "ext", "--window", "-2:4,-4:2", "--smax", "3", "--verify"}, "ext_q3_verify.tsv"},
        {{"--q", "3", "ass", "--spectrum", "BPGL0", "--window", "-2:4,-4:2", "--smax", "4", "--format", "json"},
         "ass_q3_bpgl0.json"},
    };
    for (const auto& g : goldens) {
        std::string golden = slurp(dir + "/" + g.file);
        for (int round = 0; round < 2; ++round) {
            require(run_cli(g.args) == golden, "drift vs golden " + g.file);
            auto threaded = g.args;
            threaded.insert(threaded.begin(), {"--threads", "4"});
            require(run_cli(threaded) == golden, "thread-count drift vs golden " + g.file);
        }
    }
}

}  // namespace

int main()
{
    struct Criterion
    {
        std::string name;
        std::function<void()> fn;
    };
    std::vector<Criterion> criteria = {
        {"Milnor K-theory dimensions and products (q in {3,5,7,9,11,13,25,27,81})", criterion_milnor},
        {"oracle equivalence: cobar Ext = closed form (q in {3,5}, s<=8, -6<=m<=10, -10<=n<=4)", criterion_oracle_equivalence},
        {"E(infinity) stabilization across truncation levels n, n+1", criterion_stabilization},
        {"rho-Bockstein E_2 = closed form, d_1(tau) only, collapse (q=3)", criterion_bockstein},
        {"motivic ASS for kgl, q=3: E_inf = Gamma'[v_1], (kgl)_3 = Z/4", criterion_kgl},
        {"motivic ASS for BPGL, q=5: -a, -2a and the w_i slots, i=1..8", criterion_bpgl},
        {"HZ2 consistency: BPGL0 pipeline = Gamma (q in {3,5})", criterion_hz2},
        {"property suites: d*d=0, Leibniz, differential shape, ambiguity discharge", criterion_properties},
        {"CLI determinism: goldens byte-identical across runs and thread counts", criterion_determinism},
    };

    int failures = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        auto start = std::chrono::steady_clock::now();
        std::string verdict = "PASS";
        std::string detail;
        try {
            criteria[i].fn();
        }
        catch (const std::exception& e) {
            verdict = "FAIL";
            detail = e.what();
            ++failures;
        }
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
        std::cout << fmt::format("{} criterion {}: {} [{} ms]{}\n", verdict, i + 1, criteria[i].name, ms,
                                 detail.empty() ? "" : "  -- " + detail);
    }
    if (failures) {
        std::cout << fmt::format("{} of {} acceptance criteria failed\n", failures, criteria.size());
        return 1;
    }
    std::cout << fmt::format("all {} acceptance criteria passed\n", criteria.size());
    return 0;
}
