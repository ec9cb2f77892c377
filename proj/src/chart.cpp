#include "motivic/chart.hpp"

#include <algorithm>
#include <fmt/format.h>
#include <map>

namespace motivic {

namespace {
    constexpr int kCell = 48;    // pixels per lattice cell
    constexpr int kMargin = 56;  // room for axis labels
    constexpr int kDotR = 4;
    constexpr int kSlotDx = 11;  // horizontal fan-out inside one cell
}  // namespace

std::string ChartDocument::svg() const
{
    int cells_x = x_hi - x_lo + 1;
    int cells_y = y_hi - y_lo + 1;
    int width = 2 * kMargin + cells_x * kCell;
    int height = 2 * kMargin + cells_y * kCell + 20;

    // cell centers; slots fan out horizontally inside a cell
    auto cx = [&](int x, int slot, int nslots) {
        return kMargin + (x - x_lo) * kCell + kCell / 2 + slot * kSlotDx - (nslots - 1) * kSlotDx / 2;
    };
    auto cy = [&](int y) { return kMargin + 20 + (y_hi - y) * kCell + kCell / 2; };

    // slot assignment per cell, in dot order
    std::map<std::pair<int, int>, int> counts;
    for (const auto& d : dots)
        counts[{d.pos.m, d.pos.n}] += 1;
    std::map<std::pair<int, int>, int> seen;

    std::string s;
    s += fmt::format("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n",
                     width, height, width, height);
    s += "<defs><marker id=\"arr\" markerWidth=\"8\" markerHeight=\"8\" refX=\"6\" refY=\"3\" orient=\"auto\">"
         "<path d=\"M0,0 L6,3 L0,6 z\" fill=\"#666\"/></marker></defs>\n";
    s += fmt::format("<rect width=\"{}\" height=\"{}\" fill=\"white\"/>\n", width, height);
    s += fmt::format("<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"14\" fill=\"black\">{}</text>\n",
                     kMargin, kMargin - 18, title);

    // grid
    for (int x = x_lo; x <= x_hi + 1; ++x) {
        int px = kMargin + (x - x_lo) * kCell;
        s += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#ddd\"/>\n", px, kMargin + 20, px,
                         kMargin + 20 + cells_y * kCell);
    }
    for (int y = y_lo; y <= y_hi + 1; ++y) {
        int py = kMargin + 20 + (y_hi - y + 1) * kCell;
        s += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#ddd\"/>\n", kMargin, py,
                         kMargin + cells_x * kCell, py);
    }
    // axis labels
    for (int x = x_lo; x <= x_hi; ++x)
        s += fmt::format("<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"11\" fill=\"#333\" text-anchor=\"middle\">{}</text>\n",
                         kMargin + (x - x_lo) * kCell + kCell / 2, kMargin + 20 + cells_y * kCell + 16, x);
    for (int y = y_lo; y <= y_hi; ++y)
        s += fmt::format("<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"11\" fill=\"#333\" text-anchor=\"end\">{}a</text>\n",
                         kMargin - 6, cy(y) + 4, y);

    // arrows under dots
    for (const auto& a : arrows) {
        int n1 = counts.count({a.from.m, a.from.n}) ? counts[{a.from.m, a.from.n}] : 1;
        int n2 = counts.count({a.to.m, a.to.n}) ? counts[{a.to.m, a.to.n}] : 1;
        s += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#666\" marker-end=\"url(#arr)\"/>\n",
                         cx(a.from.m, a.from_slot, n1) + kDotR, cy(a.from.n) - kDotR,
                         cx(a.to.m, a.to_slot, n2) - kDotR, cy(a.to.n) + kDotR);
    }

    for (const auto& d : dots) {
        int nslots = counts[{d.pos.m, d.pos.n}];
        int slot = seen[{d.pos.m, d.pos.n}]++;
        int px = cx(d.pos.m, slot, nslots);
        int py = cy(d.pos.n);
        s += fmt::format("<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"black\"><title>{}</title></circle>\n", px, py,
                         kDotR, d.name);
        if (d.tower_infinite)
            s += fmt::format("<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"9\" fill=\"#06c\">inf</text>\n",
                             px + 4, py - 5);
        else if (d.tower_height > 0)
            s += fmt::format("<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"9\" fill=\"#06c\">{}</text>\n",
                             px + 4, py - 5, d.tower_height);
    }

    s += "</svg>\n";
    return s;
}

ChartDocument chart_hstar(const ResidueData& rd, const Window& window)
{
    window.require_nonempty();
    ChartDocument doc;
    doc.title = fmt::format("H_* over F, q={} ({})", rd.q, window.str());
    doc.x_lo = window.m_lo;
    doc.x_hi = window.m_hi;
    doc.y_lo = window.n_lo;
    doc.y_hi = window.n_hi;

    std::map<std::pair<int, int>, std::vector<HStarMonomial>> cells;
    for (int m = window.m_lo; m <= window.m_hi; ++m)
        for (int n = window.n_lo; n <= window.n_hi; ++n) {
            auto basis = h_star_basis(rd, {m, n});
            if (!basis.empty())
                cells[{m, n}] = std::move(basis);
        }

    for (const auto& [cell, basis] : cells) {
        for (size_t i = 0; i < basis.size(); ++i) {
            doc.dots.push_back(ChartDot{{cell.first, cell.second}, basis[i].str()});
            // tau-multiplication arrow one step down the diagonal
            Bidegree tgt{cell.first + 1, cell.second - 1};
            if (window.contains(tgt)) {
                auto it = cells.find({tgt.m, tgt.n});
                if (it != cells.end()) {
                    for (size_t j = 0; j < it->second.size(); ++j)
                        if (it->second[j].milnor == basis[i].milnor)
                            doc.arrows.push_back(ChartArrow{{cell.first, cell.second}, tgt, int(i), int(j)});
                }
            }
        }
    }
    return doc;
}

ChartDocument chart_spectrum(const ResidueData& rd, Spectrum spec, const Window& window, int page)
{
    window.require_nonempty();
    ChartDocument doc;
    doc.x_lo = window.m_lo - window.s_max;
    doc.x_hi = window.m_hi;
    doc.y_lo = window.n_lo;
    doc.y_hi = window.n_hi;

    if (page > 0) {
        AdamsEngine engine(rd, spec, window);
        SSPage pg = engine.page(page);
        doc.title = fmt::format("motivic ASS E_{} for {} over F, q={} ({})", page, spectrum_name(spec), rd.q, window.str());
        for (const auto& [td, names] : pg.classes)
            for (const auto& name : names)
                doc.dots.push_back(ChartDot{td.adams(), name});
        return doc;
    }

    EInfinity einf = e_infinity(rd, spec, window);
    doc.title = fmt::format("motivic ASS E_inf for {} over F, q={} ({})", spectrum_name(spec), rd.q, window.str());
    for (const auto& [bideg, towers] : einf.towers.towers) {
        if (bideg.m < doc.x_lo || bideg.m > doc.x_hi || bideg.n < doc.y_lo || bideg.n > doc.y_hi)
            continue;
        for (const auto& t : towers) {
            ChartDot dot;
            dot.pos = bideg;
            dot.name = t.base_name;
            dot.tower_infinite = t.height < 0;
            dot.tower_height = t.height > 0 ? t.height : 0;
            doc.dots.push_back(std::move(dot));
        }
    }
    std::sort(doc.dots.begin(), doc.dots.end(), [](const ChartDot& a, const ChartDot& b) {
        return std::tie(a.pos.m, a.pos.n, a.name) < std::tie(b.pos.m, b.pos.n, b.name);
    });
    return doc;
}

}  // namespace motivic
