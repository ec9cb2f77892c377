#include "motivic/adams.hpp"

#include "motivic/gf2.hpp"
#include "motivic/hopf.hpp"

#include <algorithm>
#include <fmt/format.h>
#include <limits>
#include <unordered_map>

namespace motivic {

std::string spectrum_name(Spectrum s)
{
    switch (s) {
    case Spectrum::BPGL:
        return "BPGL";
    case Spectrum::KGL:
        return "kgl";
    case Spectrum::BPGL0:
        return "BPGL0";
    }
    return "?";
}

std::optional<Spectrum> spectrum_from_name(const std::string& name)
{
    if (name == "BPGL" || name == "bpgl")
        return Spectrum::BPGL;
    if (name == "kgl" || name == "KGL")
        return Spectrum::KGL;
    if (name == "BPGL0" || name == "bpgl0")
        return Spectrum::BPGL0;
    return std::nullopt;
}

int spectrum_truncation(Spectrum s, const Window& window)
{
    switch (s) {
    case Spectrum::KGL:
        return 1;
    case Spectrum::BPGL0:
        return 0;
    case Spectrum::BPGL:
        return truncation_level(window);
    }
    return 1;
}

void CoefficientGroup::add_torsion(int exponent)
{
    torsion.push_back(exponent);
    std::sort(torsion.begin(), torsion.end(), std::greater<int>());
}

void CoefficientGroup::add(const CoefficientGroup& other)
{
    free_rank += other.free_rank;
    torsion.insert(torsion.end(), other.torsion.begin(), other.torsion.end());
    std::sort(torsion.begin(), torsion.end(), std::greater<int>());
}

std::string CoefficientGroup::str() const
{
    if (is_trivial())
        return "0";
    std::string out;
    if (free_rank == 1)
        out = "Z2";
    else if (free_rank > 1)
        out = fmt::format("Z2^{}", free_rank);
    for (int e : torsion)
        out += fmt::format("{}Z/{}", out.empty() ? "" : " + ", std::int64_t(1) << e);
    return out;
}

std::vector<SeedDiff> seed_differentials(const ResidueData& rd, Spectrum spec)
{
    (void)spec;  // all three spectra share the seeds
    std::vector<SeedDiff> seeds;
    if (rd.rho_is_u()) {
        // d_2 tau^2 = rho*tau*v_0^2, rho = u; tau itself is not on the E_2-page
        seeds.push_back(SeedDiff{2, make_ext_monomial(rd, kMilnorOne, 2, {}),
                                 make_ext_monomial(rd, kMilnorU, 1, {2})});
    }
    else {
        // d_k tau = u*v_0^k with k = nu2(q-1)
        seeds.push_back(SeedDiff{rd.k, make_ext_monomial(rd, kMilnorOne, 1, {}),
                                 make_ext_monomial(rd, kMilnorU, 0, {rd.k})});
    }
    return seeds;
}

SeedDiff tau_power_differential(const ResidueData& rd, int s)
{
    if (s < 1)
        throw InvalidInputError("tau-power must be positive");
    int page;
    if (!rd.rho_is_u()) {
        page = rd.k + nu2(s);
    }
    else if (s % 2 == 0) {
        page = 1 + nu2(s);
    }
    else if (s == 1) {
        throw InvalidInputError("tau is not an E_2 class when q = 3 mod 4; powers start at tau^2");
    }
    else {
        // odd powers via the ordinary Leibniz rule: d(tau^s) = tau * d(tau^{s-1})
        page = 1 + nu2(s - 1);
    }
    return SeedDiff{page, make_ext_monomial(rd, kMilnorOne, s, {}),
                    make_ext_monomial(rd, kMilnorU, s - 1, {page})};
}

std::optional<SeedDiff> monomial_differential(const ResidueData& rd, const ExtMonomial& x)
{
    // u-divisible coefficients absorb the differential (u^2 = 0), and the
    // v_i and Milnor generators sit on the boundary.
    if (x.milnor == kMilnorU || x.milnor == kMilnorPiU)
        return std::nullopt;
    if (x.tau < 1)
        return std::nullopt;
    if (rd.rho_is_u() && x.tau % 2 == 1)
        return std::nullopt;  // not an E_2 monomial in the first place
    int page = rd.k + nu2(x.tau);
    auto kappa = milnor_mono_mul(rd, kMilnorU, x.milnor);
    if (!kappa)
        return std::nullopt;
    std::vector<int> v = x.v;
    if (v.empty())
        v.assign(1, 0);
    v[0] += page;
    return SeedDiff{page, x, make_ext_monomial(rd, *kappa, x.tau - 1, std::move(v))};
}

std::optional<SeedDiff> incoming_differential(const ResidueData& rd, const ExtMonomial& x)
{
    if (x.milnor != kMilnorU && x.milnor != kMilnorPiU)
        return std::nullopt;  // targets always carry a u
    int page = rd.k + nu2(x.tau + 1);
    if (x.v_exp(0) < page)
        return std::nullopt;
    int src_milnor = x.milnor == kMilnorU ? kMilnorOne : kMilnorPi;
    std::vector<int> v = x.v;
    v[0] -= page;
    ExtMonomial src = make_ext_monomial(rd, src_milnor, x.tau + 1, std::move(v));
    if (rd.rho_is_u() && src.tau % 2 == 1)
        return std::nullopt;  // no such source in the q = 3 mod 4 E_2
    return SeedDiff{page, src, x};
}

int last_page(const ResidueData& rd, const ExtMonomial& x)
{
    if (auto out = monomial_differential(rd, x))
        return out->page;
    if (auto in = incoming_differential(rd, x))
        return in->page;
    return std::numeric_limits<int>::max();
}

namespace {
    int floor_log2(int x)
    {
        int r = 0;
        while (x >>= 1)
            ++r;
        return r;
    }
}  // namespace

struct AdamsEngine::Impl
{
    ResidueData rd;
    Spectrum spec;
    Window win;
    Window padded;
    int nlevel = 1;
    int rmax = 2;
    int r_stable = 3;  // pages beyond this are constant
    int r_cur = 2;

    struct Column
    {
        std::vector<ExtMonomial> basis;
        std::unordered_map<std::string, int> index;
        // arrow[i]: (page, target tridegree, target basis index), page 0 = none
        struct Arrow
        {
            int page = 0;
            Tridegree tgt;
            int tgt_idx = -1;
        };
        std::vector<Arrow> arrows;
        std::vector<gf2::BitVec> alive;   // current-page representatives
        std::vector<std::string> names;   // aligned with alive
        std::vector<int> leads;           // leading basis index per class
        gf2::Echelon boundaries{0};
    };
    std::map<Tridegree, Column> cols;
    std::map<int, SSPage> snapshots;
    std::vector<RecordedDiff> all_diffs;

    Impl(const ResidueData& rd_, Spectrum spec_, const Window& win_, int user_rmax)
        : rd(rd_)
        , spec(spec_)
        , win(win_)
    {
        win.require_nonempty();
        nlevel = spectrum_truncation(spec, win);

        // the killer of an in-window class sits one tau-power above it, so
        // pages up to k + floor(log2(m_hi + 1)) can still act on the window
        int max_tau = std::max(1, win.m_hi + 1);
        int required = rd.k + floor_log2(max_tau) + 1;
        int ceil_log = floor_log2(max_tau) + ((max_tau & (max_tau - 1)) ? 1 : 0);
        int def = std::max(required, rd.k + ceil_log + 2);
        rmax = user_rmax > 0 ? user_rmax : def;
        if (rmax < required)
            throw WindowRejection(fmt::format("page bound r_max={} too small for window {} (need >= {})", rmax,
                                              win.str(), required));
        r_stable = rmax + 1;

        padded = win;
        padded.s_max = win.s_max + rmax;
        padded.m_lo = win.m_lo - (rmax - 1);
        padded.m_hi = win.m_hi + (rmax - 1);

        auto table = closed_form_window(rd, nlevel, padded);
        for (auto& [td, basis] : table) {
            Column col;
            col.basis = std::move(basis);
            for (size_t i = 0; i < col.basis.size(); ++i)
                col.index[col.basis[i].str()] = int(i);
            col.boundaries = gf2::Echelon(col.basis.size());
            col.alive.reserve(col.basis.size());
            for (size_t i = 0; i < col.basis.size(); ++i) {
                gf2::BitVec v = gf2::make_bitvec(col.basis.size());
                gf2::set(v, i);
                col.alive.push_back(std::move(v));
                col.names.push_back(col.basis[i].str());
                col.leads.push_back(int(i));
            }
            cols.emplace(td, std::move(col));
        }
        // resolve arrows after all columns exist
        for (auto& [td, col] : cols) {
            col.arrows.assign(col.basis.size(), Column::Arrow{});
            for (size_t i = 0; i < col.basis.size(); ++i) {
                auto d = monomial_differential(rd, col.basis[i]);
                if (!d)
                    continue;
                Tridegree tt = d->target.tridegree();
                auto it = cols.find(tt);
                if (it == cols.end())
                    continue;  // leaves the padded region; only affects pad-local fates
                auto jt = it->second.index.find(d->target.str());
                if (jt == it->second.index.end())
                    throw std::logic_error(fmt::format("differential target {} missing from its column", d->target.str()));
                col.arrows[i] = Column::Arrow{d->page, tt, jt->second};
            }
        }
    }

    SSPage snapshot_classes(int r) const
    {
        SSPage page;
        page.r = r;
        for (const auto& [td, col] : cols) {
            if (!win.contains(td) || col.names.empty())
                continue;
            page.classes.emplace(td, col.names);
        }
        return page;
    }

    // one homology step from page r_cur to r_cur + 1
    void turn()
    {
        int r = r_cur;
        SSPage snap = snapshot_classes(r);

        struct Pending
        {
            Tridegree tgt;
            gf2::BitVec vec;
        };
        std::vector<Pending> new_boundaries;
        std::map<Tridegree, std::vector<gf2::BitVec>> kernels;  // combos over alive index space

        for (auto& [td, col] : cols) {
            if (col.alive.empty())
                continue;
            Tridegree tt{td.s + r, td.m + r - 1, td.n};
            auto it = cols.find(tt);
            Column* ct = it == cols.end() ? nullptr : &it->second;

            size_t cod = ct ? ct->basis.size() : 0;
            gf2::Matrix images(col.alive.size(), cod);
            for (size_t a = 0; a < col.alive.size(); ++a) {
                const auto& rep = col.alive[a];
                for (size_t i = 0; i < col.basis.size(); ++i) {
                    if (!gf2::get(rep, i))
                        continue;
                    const auto& arrow = col.arrows[i];
                    if (arrow.page != r || arrow.tgt_idx < 0)
                        continue;
                    gf2::set(images.data[a], size_t(arrow.tgt_idx), !images.get_entry(a, size_t(arrow.tgt_idx)));
                }
                if (ct && !gf2::is_zero(images.data[a])) {
                    ct->boundaries.reduce(images.data[a]);
                    if (!gf2::is_zero(images.data[a])) {
                        long lead = gf2::first_set(images.data[a]);
                        all_diffs.push_back(RecordedDiff{r, td, col.names[a], tt, ct->basis[size_t(lead)].str()});
                        snap.diffs.push_back(all_diffs.back());
                        new_boundaries.push_back(Pending{tt, images.data[a]});
                    }
                }
            }
            kernels.emplace(td, gf2::kernel(images));
        }

        for (auto& p : new_boundaries)
            cols.at(p.tgt).boundaries.insert(std::move(p.vec));

        for (auto& [td, col] : cols) {
            auto kit = kernels.find(td);
            if (kit == kernels.end())
                continue;
            std::vector<gf2::BitVec> next;
            std::vector<std::string> names;
            std::vector<int> leads;
            gf2::Echelon chosen(col.basis.size());
            for (const auto& combo : kit->second) {
                gf2::BitVec rep = gf2::make_bitvec(col.basis.size());
                for (size_t a = 0; a < col.alive.size(); ++a)
                    if (gf2::get(combo, a))
                        gf2::xor_into(rep, col.alive[a]);
                col.boundaries.reduce(rep);
                if (gf2::is_zero(rep))
                    continue;
                chosen.reduce(rep);
                if (gf2::is_zero(rep))
                    continue;
                long lead = gf2::first_set(rep);
                chosen.insert(rep);
                next.push_back(std::move(rep));
                names.push_back(col.basis[size_t(lead)].str());
                leads.push_back(int(lead));
            }
            col.alive = std::move(next);
            col.names = std::move(names);
            col.leads = std::move(leads);
        }

        snapshots.emplace(r, std::move(snap));
        r_cur = r + 1;
    }

    void ensure_turned_past(int r)
    {
        while (r_cur <= std::min(r, r_stable))
            turn();
    }
};

AdamsEngine::AdamsEngine(const ResidueData& rd, Spectrum spec, const Window& window, int r_max)
    : impl_(std::make_unique<Impl>(rd, spec, window, r_max))
{
}

AdamsEngine::~AdamsEngine() = default;
AdamsEngine::AdamsEngine(AdamsEngine&&) noexcept = default;
AdamsEngine& AdamsEngine::operator=(AdamsEngine&&) noexcept = default;

const ResidueData& AdamsEngine::rd() const
{
    return impl_->rd;
}

Spectrum AdamsEngine::spectrum() const
{
    return impl_->spec;
}

const Window& AdamsEngine::window() const
{
    return impl_->win;
}

int AdamsEngine::r_max() const
{
    return impl_->rmax;
}

int AdamsEngine::truncation() const
{
    return impl_->nlevel;
}

SSPage AdamsEngine::page(int r)
{
    if (r < 2)
        throw InvalidInputError("Adams pages start at r = 2");
    int capped = std::min(r, impl_->r_stable);
    impl_->ensure_turned_past(capped);
    auto it = impl_->snapshots.find(capped);
    SSPage page = it != impl_->snapshots.end() ? it->second : impl_->snapshot_classes(capped);
    if (r > impl_->r_stable)
        page.diffs.clear();  // everything has fired by the stable page
    page.r = r;
    return page;
}

SSPage turn_page(AdamsEngine& engine, const SSPage& page)
{
    return engine.page(page.r + 1);
}

EInfinity AdamsEngine::e_infinity()
{
    Impl& im = *impl_;
    im.ensure_turned_past(im.r_stable);

    EInfinity out;
    out.page = im.snapshot_classes(im.r_stable);
    out.page.r = im.r_stable;
    out.page.diffs = im.all_diffs;

    // v_0-towers: group surviving classes by their v_0-stripped leading
    // monomial inside each Adams bidegree
    // Levels are collected over the whole padded region: a finite tower
    // whose base is in the window always truncates within the padding
    // (heights are at most k + log2 of the tau-power bound < r_max), so
    // heights come out exact and -1 is reserved for genuinely infinite
    // towers.
    struct Level
    {
        Tridegree td;
        std::string name;
    };
    std::map<std::pair<Bidegree, std::string>, std::map<int, Level>> groups;
    for (const auto& [td, col] : im.cols) {
        for (size_t a = 0; a < col.alive.size(); ++a) {
            const ExtMonomial& mono = col.basis[size_t(col.leads[a])];
            std::vector<int> stripped = mono.v;
            int c = stripped.empty() ? 0 : stripped[0];
            if (!stripped.empty())
                stripped[0] = 0;
            std::string base = ext_name(mono.milnor, mono.tau, stripped);
            groups[{td.adams(), base}].emplace(c, Level{td, col.names[a]});
        }
    }
    for (const auto& [key, levels] : groups) {
        const auto& [bideg, base] = key;
        (void)base;
        if (!im.win.contains(levels.begin()->second.td))
            continue;  // towers are reported for in-window bases only
        int c0 = levels.begin()->first;
        int height = -1;
        for (int c = c0;; ++c) {
            if (!levels.count(c)) {
                Tridegree miss = levels.begin()->second.td + Tridegree{c - c0, c - c0, 0};
                height = im.padded.contains(miss) ? c - c0 : -1;
                break;
            }
        }
        Tower tower;
        tower.base_name = levels.begin()->second.name;
        tower.base = levels.begin()->second.td;
        tower.height = height;
        out.towers.towers[bideg].push_back(std::move(tower));
    }

    // Gamma' comparison on the window
    auto prediction = gamma_prime_prediction(im.rd, im.spec, im.win);
    std::map<Tridegree, std::vector<std::string>> actual;
    for (const auto& [td, names] : out.page.classes) {
        auto sorted = names;
        std::sort(sorted.begin(), sorted.end());
        actual.emplace(td, std::move(sorted));
    }
    for (auto& [td, names] : prediction)
        std::sort(names.begin(), names.end());
    for (const auto& [td, names] : prediction)
        if (!actual.count(td) || actual.at(td) != names)
            out.gamma_mismatches.push_back(fmt::format("expected {} classes at {}", names.size(), td.str()));
    for (const auto& [td, names] : actual)
        if (!prediction.count(td))
            out.gamma_mismatches.push_back(fmt::format("unexpected {} classes at {}", names.size(), td.str()));

    // fate of the hidden-relation candidates
    if (im.rd.rho_is_u()) {
        for (const auto& [td, col] : im.cols) {
            if (!im.win.contains(td))
                continue;
            for (const auto& mono : col.basis) {
                if (!mono.ambiguous || mono.milnor != kMilnorPiU)
                    continue;
                auto partner = ambiguity_partner(im.rd, mono);
                if (!partner)
                    continue;
                AmbiguityReport rep;
                rep.lhs = mono.str();
                rep.rhs = partner->str();
                auto alive = [&](const std::string& name) {
                    auto it = out.page.classes.find(td);
                    if (it == out.page.classes.end())
                        return false;
                    return std::find(it->second.begin(), it->second.end(), name) != it->second.end();
                };
                rep.lhs_alive = alive(rep.lhs);
                rep.rhs_alive = alive(rep.rhs);
                out.ambiguities.push_back(std::move(rep));
            }
        }
    }
    return out;
}

EInfinity e_infinity(const ResidueData& rd, Spectrum spec, const Window& window, int r_max)
{
    AdamsEngine engine(rd, spec, window, r_max);
    return engine.e_infinity();
}

std::map<Bidegree, CoefficientGroup> resolve_towers(const TowerDecomposition& td)
{
    std::map<Bidegree, CoefficientGroup> out;
    for (const auto& [bideg, towers] : td.towers) {
        CoefficientGroup g;
        for (const auto& t : towers) {
            if (t.height < 0)
                g.add_free();
            else if (t.height > 0)
                g.add_torsion(t.height);
        }
        if (!g.is_trivial())
            out.emplace(bideg, std::move(g));
    }
    return out;
}

std::map<Tridegree, std::vector<std::string>> gamma_prime_prediction(const ResidueData& rd, Spectrum spec, const Window& window)
{
    window.require_nonempty();
    std::map<Tridegree, std::vector<std::string>> out;

    // v-generators above v_0 available to the spectrum
    std::vector<int> gens;
    int trunc = spectrum_truncation(spec, window);
    for (int i = 1; i <= trunc; ++i)
        gens.push_back(i);

    // enumerate v-monomials over gens by m-degree budget
    struct VMono
    {
        int s = 0;
        int m = 0;
        int n = 0;
        std::vector<int> exps;  // aligned with gens
    };
    std::vector<VMono> vmonos;
    VMono cur;
    cur.exps.assign(gens.size(), 0);
    auto rec = [&](auto&& self, size_t gi) -> void {
        if (gi == gens.size()) {
            vmonos.push_back(cur);
            return;
        }
        int w = 1 << gens[gi];
        VMono save = cur;
        for (int e = 0; save.m + e * w <= window.m_hi && save.s + e <= window.s_max; ++e) {
            cur = save;
            cur.exps[gi] = e;
            cur.s += e;
            cur.m += e * w;
            cur.n += e * (w - 1);
            self(self, gi + 1);
        }
        cur = save;
    };
    rec(rec, 0);

    auto add = [&](int milnor, int tau, int c, const VMono& vm) {
        Tridegree td{c + vm.s, tau + c + vm.m, -milnor_mono_degree(milnor) - tau + vm.n};
        if (!window.contains(td))
            return;
        std::vector<int> v(size_t(std::max(trunc, 0)) + 1, 0);
        v[0] = c;
        for (size_t gi = 0; gi < gens.size(); ++gi)
            v[size_t(gens[gi])] = vm.exps[gi];
        out[td].push_back(ext_name(milnor, tau, v));
    };

    for (const auto& vm : vmonos) {
        // infinite towers on 1 and pi
        for (int c = 0; c + vm.s <= window.s_max; ++c) {
            add(kMilnorOne, 0, c, vm);
            add(kMilnorPi, 0, c, vm);
        }
        // truncated towers on gamma_i = u*tau^{i-1} and pi*gamma_i
        for (int i = 1;; ++i) {
            int tau = i - 1;
            if (tau + vm.m > window.m_hi)
                break;
            int h = rd.k + nu2(i);
            for (int c = 0; c < h && c + vm.s <= window.s_max; ++c) {
                add(kMilnorU, tau, c, vm);
                add(kMilnorPiU, tau, c, vm);
            }
        }
    }
    return out;
}

}  // namespace motivic
