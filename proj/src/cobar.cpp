#include "motivic/cobar.hpp"

#include "motivic/gf2.hpp"
#include "motivic/hopf.hpp"

#include <algorithm>
#include <atomic>
#include <fmt/format.h>
#include <mutex>
#include <thread>
#include <unordered_map>

namespace motivic {

namespace {
    Bidegree mask_degree(std::uint32_t mask)
    {
        Bidegree d{0, 0};
        for (int i = 0; i < 32; ++i)
            if (mask & (1u << i))
                d = d + EnPresentation::tau_degree(i);
        return d;
    }

    std::string mask_str(std::uint32_t mask)
    {
        std::string s = "t";
        for (int i = 0; i < 32; ++i)
            if (mask & (1u << i))
                s += fmt::format("{}", i);
        return s;
    }

    // Bar alphabet of E(n): nonempty subsets, in tau_0-lowest lexicographic
    // order of the exponent bit-vectors.
    std::vector<std::uint32_t> bar_alphabet(int n)
    {
        std::vector<std::uint32_t> masks;
        for (std::uint32_t m = 1; m < (1u << (n + 1)); ++m)
            masks.push_back(m);
        std::sort(masks.begin(), masks.end(), [](std::uint32_t a, std::uint32_t b) {
            std::uint32_t ra = 0, rb = 0;
            for (int i = 0; i < 32; ++i) {
                if (a & (1u << i))
                    ra |= 1u << (31 - i);
                if (b & (1u << i))
                    rb |= 1u << (31 - i);
            }
            return ra < rb;
        });
        return masks;
    }

    void enumerate_words(const ResidueData& rd, const std::vector<std::uint32_t>& alphabet, int bars_left,
                         Bidegree remaining, std::vector<std::uint32_t>& prefix, std::vector<CobarWord>& out)
    {
        if (bars_left == 0) {
            // the coefficient slot must absorb exactly the remaining bidegree
            for (const auto& h : h_star_basis(rd, remaining))
                out.push_back(CobarWord{prefix, h});
            return;
        }
        for (std::uint32_t mask : alphabet) {
            Bidegree d = mask_degree(mask);
            // every remaining bar costs at least (1, 0) and the coefficient
            // costs m >= 0, so prune on the m-budget
            if (d.m + (bars_left - 1) > remaining.m)
                continue;
            prefix.push_back(mask);
            enumerate_words(rd, alphabet, bars_left - 1, remaining - d, prefix, out);
            prefix.pop_back();
        }
    }
}  // namespace

Tridegree CobarWord::tridegree() const
{
    Bidegree d = coeff.bidegree();
    for (auto mask : bars)
        d = d + mask_degree(mask);
    return {int(bars.size()), d.m, d.n};
}

std::string CobarWord::str() const
{
    std::string c = coeff.str();
    if (bars.empty())
        return c;
    std::string b = "[";
    for (size_t i = 0; i < bars.size(); ++i)
        b += (i ? "|" : "") + mask_str(bars[i]);
    b += "]";
    return c == "1" ? b : c + "*" + b;
}

std::vector<CobarWord> cobar_basis(const ResidueData& rd, int n, Tridegree td)
{
    if (n < 0)
        throw InvalidInputError("negative truncation level");
    std::vector<CobarWord> out;
    if (td.s < 0)
        return out;
    auto alphabet = bar_alphabet(n);
    std::vector<std::uint32_t> prefix;
    enumerate_words(rd, alphabet, td.s, {td.m, td.n}, prefix, out);
    return out;
}

std::vector<CobarWord> cobar_differential(const ResidueData& rd, int n, const CobarWord& w)
{
    for (auto mask : w.bars)
        if (mask == 0 || (mask >> (n + 1)))
            throw InvalidInputError("bar outside the augmentation ideal of E(n)");

    std::vector<CobarWord> terms;
    // insertions: replace bar i by every ordered proper splitting (T, S\T)
    for (size_t i = 0; i < w.bars.size(); ++i) {
        std::uint32_t s = w.bars[i];
        for (std::uint32_t t = (s - 1) & s; t; t = (t - 1) & s) {
            CobarWord nw;
            nw.bars.reserve(w.bars.size() + 1);
            nw.bars.assign(w.bars.begin(), w.bars.begin() + long(i));
            nw.bars.push_back(t);
            nw.bars.push_back(s ^ t);
            nw.bars.insert(nw.bars.end(), w.bars.begin() + long(i) + 1, w.bars.end());
            nw.coeff = w.coeff;
            terms.push_back(std::move(nw));
        }
    }
    // comodule twist: append [tau_0] with coefficient rho * d(coeff)/d(tau);
    // this is the whole of eta_R - eta_L since rho^2 = 0
    if (rd.rho_is_u() && w.coeff.tau_exp % 2 == 1) {
        if (auto kappa = milnor_mono_mul(rd, kMilnorU, w.coeff.milnor)) {
            CobarWord nw;
            nw.bars = w.bars;
            nw.bars.push_back(1u);
            nw.coeff = HStarMonomial{w.coeff.tau_exp - 1, *kappa};
            terms.push_back(std::move(nw));
        }
    }

    std::sort(terms.begin(), terms.end());
    std::vector<CobarWord> out;
    size_t i = 0;
    while (i < terms.size()) {
        size_t j = i;
        while (j < terms.size() && terms[j] == terms[i])
            ++j;
        if ((j - i) % 2)
            out.push_back(terms[i]);
        i = j;
    }
    return out;
}

namespace {
    struct ColumnResult
    {
        std::vector<std::pair<Tridegree, ExtEntry>> entries;
    };

    ColumnResult compute_column(const ResidueData& rd, int n, Bidegree col, int s_max, const ExtOptions& opt)
    {
        // bases for s = 0 .. s_max+1 (one padding step so homology at s_max
        // sees its full image and kernel)
        std::vector<std::vector<CobarWord>> bases(size_t(s_max) + 2);
        for (int s = 0; s <= s_max + 1; ++s) {
            bases[size_t(s)] = cobar_basis(rd, n, Tridegree{s, col.m, col.n});
            if (opt.reverse_basis)
                std::reverse(bases[size_t(s)].begin(), bases[size_t(s)].end());
        }

        if (opt.mem_budget_bytes) {
            std::size_t worst = 0;
            int worst_s = 0;
            std::size_t total = 0;
            for (int s = 0; s <= s_max; ++s) {
                std::size_t rows = bases[size_t(s)].size();
                std::size_t cols = bases[size_t(s) + 1].size();
                std::size_t block = rows * (gf2::words_for(cols ? cols : 1) + gf2::words_for(rows ? rows : 1)) * 8;
                total += block;
                if (block > worst) {
                    worst = block;
                    worst_s = s;
                }
            }
            if (total > opt.mem_budget_bytes)
                throw WindowRejection(fmt::format("memory budget exceeded at tridegree ({},{}{:+}a): {} bytes needed, {} allowed",
                                                  worst_s, col.m, col.n, total, opt.mem_budget_bytes));
        }

        // differentials as row-wise matrices B_s -> B_{s+1}
        std::vector<gf2::Matrix> diff(size_t(s_max) + 1);
        for (int s = 0; s <= s_max; ++s) {
            const auto& dom = bases[size_t(s)];
            const auto& cod = bases[size_t(s) + 1];
            std::unordered_map<std::string, int> index;
            index.reserve(cod.size());
            for (size_t j = 0; j < cod.size(); ++j)
                index[cod[j].str()] = int(j);
            gf2::Matrix mat(dom.size(), cod.size());
            for (size_t i = 0; i < dom.size(); ++i) {
                for (const auto& term : cobar_differential(rd, n, dom[i])) {
                    auto it = index.find(term.str());
                    if (it == index.end())
                        throw std::logic_error(fmt::format("differential left its column at {}", term.str()));
                    mat.set_entry(i, size_t(it->second));
                }
            }
            diff[size_t(s)] = std::move(mat);
        }

        ColumnResult res;
        for (int s = 0; s <= s_max; ++s) {
            const auto& dom = bases[size_t(s)];
            if (dom.empty())
                continue;
            auto cycles = gf2::kernel(diff[size_t(s)]);
            gf2::Echelon boundaries(dom.size());
            if (s > 0)
                for (const auto& row : diff[size_t(s) - 1].data)
                    boundaries.insert(row);
            gf2::Echelon chosen(dom.size());
            ExtEntry entry;
            for (auto& z : cycles) {
                gf2::BitVec v = z;
                boundaries.reduce(v);
                if (gf2::is_zero(v))
                    continue;
                chosen.reduce(v);
                if (gf2::is_zero(v))
                    continue;
                chosen.insert(v);
                entry.dim += 1;
                entry.names.push_back(dom[size_t(gf2::first_set(v))].str());
            }
            if (entry.dim)
                res.entries.emplace_back(Tridegree{s, col.m, col.n}, std::move(entry));
        }
        return res;
    }
}  // namespace

ExtTable ext_dimensions(const ResidueData& rd, int n, const Window& window, const ExtOptions& options)
{
    window.require_nonempty();

    std::vector<Bidegree> columns;
    for (int m = window.m_lo; m <= window.m_hi; ++m)
        for (int nn = window.n_lo; nn <= window.n_hi; ++nn)
            columns.push_back({m, nn});

    std::vector<ColumnResult> results(columns.size());
    int threads = options.threads > 0 ? options.threads : int(std::thread::hardware_concurrency());
    threads = std::max(1, std::min<int>(threads, int(columns.size())));

    std::atomic<size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&]() {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= columns.size() || failed.load())
                return;
            try {
                results[i] = compute_column(rd, n, columns[i], window.s_max, options);
            }
            catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failed.exchange(true))
                    failure = std::current_exception();
                return;
            }
        }
    };
    if (threads == 1) {
        worker();
    }
    else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back(worker);
        for (auto& th : pool)
            th.join();
    }
    if (failure)
        std::rethrow_exception(failure);

    ExtTable table;
    table.window = window;
    for (auto& col : results)
        for (auto& [td, entry] : col.entries)
            table.entries.emplace(td, std::move(entry));
    return table;
}

}  // namespace motivic
