#pragma once

#include "motivic/adams.hpp"
#include "motivic/arithmetic.hpp"
#include "motivic/grading.hpp"

#include <string>
#include <vector>

namespace motivic {

// One dot of a chart in the (Z, Z*alpha) plane.
struct ChartDot
{
    Bidegree pos;
    std::string name;
    int tower_height = 0;      // > 0: finite v_0-tower marker
    bool tower_infinite = false;
};

struct ChartArrow
{
    Bidegree from;
    Bidegree to;
    int from_slot = 0;  // dot slot inside the source cell
    int to_slot = 0;
};

// SVG scene: horizontal axis = Z part, vertical axis = Z*alpha part; dots
// are basis classes, diagonal arrows are tau-multiplication, out-of-page
// tower markers annotate v_0-towers.  Layout is integer-only so identical
// input yields identical bytes.
struct ChartDocument
{
    std::string title;
    int x_lo = 0, x_hi = 0, y_lo = 0, y_hi = 0;
    std::vector<ChartDot> dots;
    std::vector<ChartArrow> arrows;

    std::string svg() const;
};

// Motivic homology chart: k^M diamonds repeating along the tau-diagonal.
ChartDocument chart_hstar(const ResidueData& rd, const Window& window);

// E_infinity chart of the motivic ASS in the Adams-grading projection
// (homological degree suppressed): one dot per v_0-tower with its height
// coming out of the page.  page > 0 charts that page's classes instead.
ChartDocument chart_spectrum(const ResidueData& rd, Spectrum spec, const Window& window, int page = 0);

}  // namespace motivic
