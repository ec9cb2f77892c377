#include "motivic/closed_ext.hpp"

#include "motivic/gf2.hpp"

#include <algorithm>
#include <fmt/format.h>
#include <unordered_map>

namespace motivic {

int ExtMonomial::s() const
{
    int total = 0;
    for (int e : v)
        total += e;
    return total;
}

Tridegree ExtMonomial::tridegree() const
{
    int m = tau;
    int n = -milnor_mono_degree(milnor) - tau;
    for (size_t i = 0; i < v.size(); ++i) {
        m += v[i] * (1 << i);
        n += v[i] * ((1 << i) - 1);
    }
    return {s(), m, n};
}

std::string ext_name(int milnor, int tau, const std::vector<int>& v)
{
    std::string out;
    if (milnor != kMilnorOne)
        out = milnor_mono_name(milnor);
    if (tau > 0) {
        if (!out.empty())
            out += "*";
        out += tau == 1 ? "tau" : fmt::format("tau^{}", tau);
    }
    for (size_t i = 0; i < v.size(); ++i) {
        if (!v[i])
            continue;
        if (!out.empty())
            out += "*";
        out += v[i] == 1 ? fmt::format("v{}", i) : fmt::format("v{}^{}", i, v[i]);
    }
    return out.empty() ? "1" : out;
}

std::string ExtMonomial::str() const
{
    return ext_name(milnor, tau, v);
}

bool ext_monomial_less(const ExtMonomial& a, const ExtMonomial& b)
{
    if (a.milnor != b.milnor)
        return a.milnor < b.milnor;
    if (a.tau != b.tau)
        return a.tau < b.tau;
    size_t len = std::max(a.v.size(), b.v.size());
    for (size_t i = 0; i < len; ++i) {
        int ai = a.v_exp(int(i)), bi = b.v_exp(int(i));
        if (ai != bi)
            return ai < bi;
    }
    return false;
}

bool ext_monomial_eq(const ExtMonomial& a, const ExtMonomial& b)
{
    return !ext_monomial_less(a, b) && !ext_monomial_less(b, a);
}

namespace {
    bool has_rho(int milnor)
    {
        return milnor == kMilnorU || milnor == kMilnorPiU;
    }

    void set_flags(const ResidueData& rd, ExtMonomial& mono)
    {
        mono.rho_tau = rd.rho_is_u() && has_rho(mono.milnor) && mono.tau % 2 == 1;
        mono.ambiguous = false;
        if (rd.rho_is_u() && mono.v.size() >= 2) {
            bool lhs = mono.milnor == kMilnorPiU && mono.tau % 2 == 1 && mono.v_exp(1) >= 1;
            bool rhs = mono.milnor == kMilnorOne && mono.tau >= 2 && mono.tau % 2 == 0 && mono.v_exp(0) >= 1;
            mono.ambiguous = lhs || rhs;
        }
    }

    // Is kappa * tau^t * v legal for this residue class (ignoring degrees)?
    bool legal_shape(const ResidueData& rd, int milnor, int tau, const std::vector<int>& v)
    {
        if (!rd.rho_is_u())
            return true;
        if (has_rho(milnor)) {
            // rho-part: odd tau lands in the rho*tau summand (v_0 free),
            // even tau stays in the quotient where rho*v_0 = 0
            if (tau % 2 == 0 && !v.empty() && v[0] > 0)
                return false;
            return true;
        }
        return tau % 2 == 0;
    }
}  // namespace

ExtMonomial make_ext_monomial(const ResidueData& rd, int milnor, int tau, std::vector<int> v)
{
    ExtMonomial mono;
    mono.milnor = milnor;
    mono.tau = tau;
    mono.v = std::move(v);
    set_flags(rd, mono);
    return mono;
}

std::optional<ExtMonomial> ext_mono_mul(const ResidueData& rd, const ExtMonomial& a, const ExtMonomial& b)
{
    auto kappa = milnor_mono_mul(rd, a.milnor, b.milnor);
    if (!kappa)
        return std::nullopt;
    ExtMonomial out;
    out.milnor = *kappa;
    out.tau = a.tau + b.tau;
    out.v.assign(std::max(a.v.size(), b.v.size()), 0);
    for (size_t i = 0; i < out.v.size(); ++i)
        out.v[i] = a.v_exp(int(i)) + b.v_exp(int(i));
    if (!legal_shape(rd, out.milnor, out.tau, out.v))
        return std::nullopt;  // rho*v_0 = 0 in the even-tau part
    set_flags(rd, out);
    return out;
}

std::optional<ExtMonomial> ambiguity_partner(const ResidueData& rd, const ExtMonomial& mono)
{
    if (!mono.ambiguous)
        return std::nullopt;
    ExtMonomial other = mono;
    if (mono.milnor == kMilnorPiU) {
        // pi*rho*tau^{2r+1}*v_1*Q -> tau^{2r+2}*v_0*Q
        other.milnor = kMilnorOne;
        other.tau = mono.tau + 1;
        other.v[0] += 1;
        other.v[1] -= 1;
    }
    else {
        other.milnor = kMilnorPiU;
        other.tau = mono.tau - 1;
        other.v[0] -= 1;
        other.v[1] += 1;
    }
    set_flags(rd, other);
    return other;
}

std::vector<ExtMonomial> closed_form_basis(const ResidueData& rd, int nlevel, Tridegree td)
{
    if (nlevel < 0)
        throw InvalidInputError("negative truncation level");
    std::vector<ExtMonomial> out;
    if (td.s < 0)
        return out;

    // choose v-exponents with sum s, then tau and the Milnor degree are forced
    std::vector<int> v(size_t(nlevel) + 1, 0);
    auto emit = [&]() {
        int m = 0, nshift = 0;
        for (size_t i = 0; i < v.size(); ++i) {
            m += v[i] * (1 << i);
            nshift += v[i] * ((1 << i) - 1);
        }
        int tau = td.m - m;
        if (tau < 0)
            return;
        int j = nshift - tau - td.n;
        if (j < 0 || j > 2)
            return;
        for (int idx : milnor_basis(rd, j)) {
            if (!legal_shape(rd, idx, tau, v))
                continue;
            ExtMonomial mono;
            mono.milnor = idx;
            mono.tau = tau;
            mono.v = v;
            set_flags(rd, mono);
            out.push_back(std::move(mono));
        }
    };
    // compositions of td.s into nlevel+1 slots
    auto rec = [&](auto&& self, int slot, int remaining) -> void {
        if (slot == int(v.size()) - 1) {
            v[size_t(slot)] = remaining;
            emit();
            v[size_t(slot)] = 0;
            return;
        }
        for (int e = 0; e <= remaining; ++e) {
            v[size_t(slot)] = e;
            self(self, slot + 1, remaining - e);
        }
        v[size_t(slot)] = 0;
    };
    rec(rec, 0, td.s);

    std::sort(out.begin(), out.end(), ext_monomial_less);
    return out;
}

std::map<Tridegree, std::vector<ExtMonomial>> closed_form_window(const ResidueData& rd, int nlevel, const Window& window)
{
    window.require_nonempty();
    std::map<Tridegree, std::vector<ExtMonomial>> out;
    for (int s = 0; s <= window.s_max; ++s)
        for (int m = window.m_lo; m <= window.m_hi; ++m)
            for (int n = window.n_lo; n <= window.n_hi; ++n) {
                auto basis = closed_form_basis(rd, nlevel, {s, m, n});
                if (!basis.empty())
                    out.emplace(Tridegree{s, m, n}, std::move(basis));
            }
    return out;
}

namespace {
    // E_1 monomial rho^e * pi^b * tau^t * v^A of the rho-Bockstein.
    struct BockMono
    {
        int rho = 0;
        int pi = 0;
        int tau = 0;
        std::vector<int> v;

        Tridegree tridegree() const
        {
            int s = 0, m = tau, n = -rho - pi - tau;
            for (size_t i = 0; i < v.size(); ++i) {
                s += v[i];
                m += v[i] * (1 << i);
                n += v[i] * ((1 << i) - 1);
            }
            return {s, m, n};
        }

        int milnor() const
        {
            if (rho && pi)
                return kMilnorPiU;
            if (rho)
                return kMilnorU;
            if (pi)
                return kMilnorPi;
            return kMilnorOne;
        }

        std::string str() const { return ext_name(milnor(), tau, v); }
    };

    std::vector<BockMono> bockstein_e1_basis(int nlevel, Tridegree td)
    {
        std::vector<BockMono> out;
        std::vector<int> v(size_t(nlevel) + 1, 0);
        auto emit = [&]() {
            int m = 0, nshift = 0;
            for (size_t i = 0; i < v.size(); ++i) {
                m += v[i] * (1 << i);
                nshift += v[i] * ((1 << i) - 1);
            }
            int tau = td.m - m;
            if (tau < 0)
                return;
            int j = nshift - tau - td.n;  // rho + pi exponent total
            if (j < 0 || j > 2)
                return;
            for (int rho = 0; rho <= 1; ++rho)
                for (int pi = 0; pi <= 1; ++pi)
                    if (rho + pi == j)
                        out.push_back(BockMono{rho, pi, tau, v});
        };
        auto rec = [&](auto&& self, int slot, int remaining) -> void {
            if (slot == int(v.size()) - 1) {
                v[size_t(slot)] = remaining;
                emit();
                v[size_t(slot)] = 0;
                return;
            }
            for (int e = 0; e <= remaining; ++e) {
                v[size_t(slot)] = e;
                self(self, slot + 1, remaining - e);
            }
            v[size_t(slot)] = 0;
        };
        rec(rec, 0, td.s);
        std::sort(out.begin(), out.end(), [](const BockMono& a, const BockMono& b) {
            return std::tie(a.rho, a.pi, a.tau, a.v) < std::tie(b.rho, b.pi, b.tau, b.v);
        });
        return out;
    }

    // d_1 = rho * v_0 * d/d tau; zero once rho is present.
    std::optional<BockMono> bockstein_d1(const BockMono& x)
    {
        if (x.rho || x.tau % 2 == 0)
            return std::nullopt;
        BockMono y = x;
        y.rho = 1;
        y.tau -= 1;
        y.v[0] += 1;
        return y;
    }
}  // namespace

SSPage rho_bockstein_e2(const ResidueData& rd, int nlevel, const Window& window)
{
    if (!rd.rho_is_u())
        throw InvalidInputError(fmt::format("rho-Bockstein is void for q = {} (q = 1 mod 4 splits)", rd.q));
    window.require_nonempty();
    if (nlevel < 0)
        throw InvalidInputError("negative truncation level");

    SSPage page;
    page.r = 2;

    for (int m = window.m_lo; m <= window.m_hi; ++m) {
        for (int n = window.n_lo; n <= window.n_hi; ++n) {
            // bases for s = 0 .. s_max+1; d_1 raises s by one and fixes (m,n)
            std::vector<std::vector<BockMono>> bases(size_t(window.s_max) + 2);
            for (int s = 0; s <= window.s_max + 1; ++s)
                bases[size_t(s)] = bockstein_e1_basis(nlevel, {s, m, n});

            std::vector<gf2::Matrix> diff(size_t(window.s_max) + 1);
            for (int s = 0; s <= window.s_max; ++s) {
                const auto& dom = bases[size_t(s)];
                const auto& cod = bases[size_t(s) + 1];
                std::unordered_map<std::string, int> index;
                for (size_t jj = 0; jj < cod.size(); ++jj)
                    index[cod[jj].str()] = int(jj);
                gf2::Matrix mat(dom.size(), cod.size());
                for (size_t i = 0; i < dom.size(); ++i) {
                    auto y = bockstein_d1(dom[i]);
                    if (!y)
                        continue;
                    auto it = index.find(y->str());
                    if (it == index.end())
                        throw std::logic_error("bockstein d1 left its column");
                    mat.set_entry(i, size_t(it->second));
                    page.diffs.push_back(RecordedDiff{1, dom[i].tridegree(), dom[i].str(), y->tridegree(), y->str()});
                }
                diff[size_t(s)] = std::move(mat);
            }

            for (int s = 0; s <= window.s_max; ++s) {
                const auto& dom = bases[size_t(s)];
                if (dom.empty())
                    continue;
                auto cycles = gf2::kernel(diff[size_t(s)]);
                gf2::Echelon boundaries(dom.size());
                if (s > 0)
                    for (const auto& row : diff[size_t(s) - 1].data)
                        boundaries.insert(row);
                std::vector<std::string> names;
                gf2::Echelon chosen(dom.size());
                for (auto& z : cycles) {
                    gf2::BitVec vvec = z;
                    boundaries.reduce(vvec);
                    if (gf2::is_zero(vvec))
                        continue;
                    chosen.reduce(vvec);
                    if (gf2::is_zero(vvec))
                        continue;
                    chosen.insert(vvec);
                    names.push_back(dom[size_t(gf2::first_set(vvec))].str());
                }
                if (!names.empty())
                    page.classes.emplace(Tridegree{s, m, n}, std::move(names));
            }
        }
    }

    // rho^2 = 0 puts every class in rho-filtration <= 1, so a d_2 (which
    // would jump filtration by 2) has nowhere to land: E_2 = E_infinity.
    return page;
}

}  // namespace motivic
