#include "motivic/cli.hpp"

#include "motivic/adams.hpp"
#include "motivic/arithmetic.hpp"
#include "motivic/chart.hpp"
#include "motivic/closed_ext.hpp"
#include "motivic/cobar.hpp"
#include "motivic/coefficients.hpp"
#include "motivic/hopf.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fmt/format.h>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

namespace motivic::cli {

namespace {
    using nlohmann::json;

    std::pair<int, int> parse_int_pair(const std::string& text, char sep, const std::string& what)
    {
        auto pos = text.find(sep);
        if (pos == std::string::npos)
            throw InvalidInputError(fmt::format("cannot parse {} '{}'", what, text));
        try {
            size_t used = 0;
            int a = std::stoi(text.substr(0, pos), &used);
            if (used != pos)
                throw std::invalid_argument(text);
            std::string rest = text.substr(pos + 1);
            int b = std::stoi(rest, &used);
            if (used != rest.size())
                throw std::invalid_argument(text);
            return {a, b};
        }
        catch (const std::exception&) {
            throw InvalidInputError(fmt::format("cannot parse {} '{}'", what, text));
        }
    }

    Window parse_window(const std::string& text, int smax)
    {
        auto comma = text.find(',');
        if (comma == std::string::npos)
            throw InvalidInputError(fmt::format("cannot parse window '{}'", text));
        auto [m_lo, m_hi] = parse_int_pair(text.substr(0, comma), ':', "window m-range");
        auto [n_lo, n_hi] = parse_int_pair(text.substr(comma + 1), ':', "window n-range");
        Window w{m_lo, m_hi, n_lo, n_hi, smax};
        w.require_nonempty();
        return w;
    }

    std::string join(const std::vector<std::string>& parts, const std::string& sep)
    {
        std::string out;
        for (size_t i = 0; i < parts.size(); ++i)
            out += (i ? sep : "") + parts[i];
        return out;
    }

    json group_json(const CoefficientGroup& g)
    {
        return json{{"free_rank", g.free_rank}, {"torsion", g.torsion}};
    }

    std::string torsion_str(const CoefficientGroup& g)
    {
        std::vector<std::string> parts;
        for (int e : g.torsion)
            parts.push_back(fmt::format("{}", e));
        return join(parts, ",");
    }

    void emit_group(const CommandConfig& cfg, const CoefficientGroup& g, std::ostream& out)
    {
        if (cfg.format == "json")
            out << group_json(g).dump() << "\n";
        else if (cfg.format == "txt")
            out << g.str() << "\n";
        else
            out << "free_rank\ttorsion\n" << g.free_rank << "\t" << torsion_str(g) << "\n";
    }

    int run_milnor(const CommandConfig& cfg, const ResidueData& rd, std::ostream& out)
    {
        std::vector<int> degrees;
        if (cfg.milnor_degree >= 0)
            degrees.push_back(cfg.milnor_degree);
        else
            degrees = {0, 1, 2, 3};

        json rows = json::array();
        if (cfg.format == "tsv")
            out << "n\tdim\tnames\n";
        for (int n : degrees) {
            std::vector<std::string> names;
            for (int idx : milnor_basis(rd, n))
                names.push_back(milnor_mono_name(idx));
            if (cfg.format == "json")
                rows.push_back(json{{"n", n}, {"dim", names.size()}, {"names", names}});
            else if (cfg.format == "txt")
                out << fmt::format("k^M_{}: dim {} [{}]\n", n, names.size(), join(names, " "));
            else
                out << n << "\t" << names.size() << "\t" << join(names, " ") << "\n";
        }
        if (cfg.format == "json")
            out << json{{"q", rd.q}, {"milnor", rows}}.dump() << "\n";
        return 0;
    }

    int run_hstar(const CommandConfig& cfg, const ResidueData& rd, std::ostream& out)
    {
        std::vector<Bidegree> degrees;
        if (cfg.has_degree) {
            degrees.push_back(cfg.degree);
        }
        else if (cfg.has_window) {
            for (int m = cfg.window.m_lo; m <= cfg.window.m_hi; ++m)
                for (int n = cfg.window.n_lo; n <= cfg.window.n_hi; ++n)
                    degrees.push_back({m, n});
        }
        else {
            throw InvalidInputError("hstar needs --degree or --window");
        }

        json rows = json::array();
        if (cfg.format == "tsv")
            out << "m\tn\tdim\tnames\n";
        for (Bidegree d : degrees) {
            auto basis = h_star_basis(rd, d);
            if (basis.empty() && !cfg.has_degree)
                continue;
            std::vector<std::string> names;
            for (const auto& mono : basis)
                names.push_back(mono.str());
            if (cfg.format == "json")
                rows.push_back(json{{"m", d.m}, {"n", d.n}, {"dim", names.size()}, {"names", names}});
            else if (cfg.format == "txt")
                out << fmt::format("H_({}{:+}a): dim {} [{}]\n", d.m, d.n, names.size(), join(names, " "));
            else
                out << d.m << "\t" << d.n << "\t" << names.size() << "\t" << join(names, " ") << "\n";
        }
        if (cfg.format == "json")
            out << json{{"q", rd.q}, {"hstar", rows}}.dump() << "\n";
        return 0;
    }

    int run_ext(const CommandConfig& cfg, const ResidueData& rd, std::ostream& out)
    {
        if (!cfg.has_window)
            throw InvalidInputError("ext needs --window");
        int n = cfg.truncation >= 0 ? cfg.truncation : truncation_level(cfg.window);

        ExtOptions opt;
        opt.threads = cfg.threads;
        opt.mem_budget_bytes = cfg.mem_budget;

        std::map<Tridegree, std::pair<int, std::vector<std::string>>> table;
        if (cfg.oracle == "cobar" || cfg.verify) {
            ExtTable ext = ext_dimensions(rd, n, cfg.window, opt);
            for (const auto& [td, e] : ext.entries)
                table.emplace(td, std::make_pair(e.dim, e.names));
        }
        if (cfg.oracle == "closed" || cfg.verify) {
            auto closed = closed_form_window(rd, n, cfg.window);
            if (cfg.verify) {
                // headline cross-validation: the two oracles must agree on
                // every dimension in the window
                std::vector<std::string> mismatches;
                for (const auto& [td, basis] : closed) {
                    auto it = table.find(td);
                    int cobar_dim = it == table.end() ? 0 : it->second.first;
                    if (cobar_dim != int(basis.size()))
                        mismatches.push_back(fmt::format("{}: cobar {} vs closed {}", td.str(), cobar_dim, basis.size()));
                }
                for (const auto& [td, e] : table)
                    if (!closed.count(td))
                        mismatches.push_back(fmt::format("{}: cobar {} vs closed 0", td.str(), e.first));
                if (!mismatches.empty()) {
                    out << "VERIFY FAIL\n";
                    for (const auto& m : mismatches)
                        out << m << "\n";
                    return 1;
                }
                out << fmt::format("verified: cobar and closed-form dimensions agree on {} tridegrees ({})\n",
                                   closed.size(), cfg.window.str());
                if (cfg.format == "tsv")
                    out << "s\tm\tn\tdim\n";
                for (const auto& [td, basis] : closed)
                    if (cfg.format != "json")
                        out << td.s << "\t" << td.m << "\t" << td.n << "\t" << basis.size() << "\n";
                return 0;
            }
            for (const auto& [td, basis] : closed) {
                std::vector<std::string> names;
                for (const auto& mono : basis)
                    names.push_back(mono.str() + (mono.ambiguous ? "!" : ""));
                table.emplace(td, std::make_pair(int(basis.size()), std::move(names)));
            }
        }

        json rows = json::array();
        if (cfg.format == "tsv")
            out << "s\tm\tn\tdim\tnames\n";
        for (const auto& [td, entry] : table) {
            if (cfg.format == "json")
                rows.push_back(json{{"s", td.s}, {"m", td.m}, {"n", td.n}, {"dim", entry.first}, {"names", entry.second}});
            else if (cfg.format == "txt")
                out << fmt::format("Ext^{} in {}{:+}a: dim {} [{}]\n", td.s, td.m, td.n, entry.first, join(entry.second, " "));
            else
                out << td.s << "\t" << td.m << "\t" << td.n << "\t" << entry.first << "\t" << join(entry.second, " ") << "\n";
        }
        if (cfg.format == "json")
            out << json{{"q", rd.q}, {"oracle", cfg.oracle}, {"n", n}, {"ext", rows}}.dump() << "\n";
        return 0;
    }

    int run_ass(const CommandConfig& cfg, const ResidueData& rd, std::ostream& out)
    {
        if (!cfg.has_window)
            throw InvalidInputError("ass needs --window");
        auto spec = spectrum_from_name(cfg.spectrum);
        if (!spec)
            throw InvalidInputError(fmt::format("unknown spectrum '{}' (expect BPGL, kgl, BPGL0)", cfg.spectrum));

        AdamsEngine engine(rd, *spec, cfg.window);
        SSPage page = cfg.page > 0 ? engine.page(cfg.page) : SSPage{};
        json towers = json::array();
        if (cfg.page == 0) {
            EInfinity einf = engine.e_infinity();
            page = einf.page;
            for (const auto& [bideg, ts] : einf.towers.towers)
                for (const auto& t : ts)
                    towers.push_back(json{{"adams_m", bideg.m},
                                          {"adams_n", bideg.n},
                                          {"base", t.base_name},
                                          {"height", t.height}});
        }

        json rows = json::array();
        if (cfg.format == "tsv")
            out << "s\tm\tn\tdim\tnames\n";
        for (const auto& [td, names] : page.classes) {
            if (cfg.format == "json")
                rows.push_back(json{{"s", td.s}, {"m", td.m}, {"n", td.n}, {"dim", names.size()}, {"names", names}});
            else if (cfg.format == "txt")
                out << fmt::format("E_{}^({},{}{:+}a): dim {} [{}]\n", page.r, td.s, td.m, td.n, names.size(), join(names, " "));
            else
                out << td.s << "\t" << td.m << "\t" << td.n << "\t" << names.size() << "\t" << join(names, " ") << "\n";
        }
        if (cfg.format == "json") {
            json doc{{"q", rd.q}, {"spectrum", spectrum_name(*spec)}, {"page", page.r}, {"entries", rows}};
            if (cfg.page == 0)
                doc["towers"] = towers;
            out << doc.dump() << "\n";
        }
        else if (cfg.format == "txt" && cfg.page == 0) {
            for (const auto& t : towers)
                out << fmt::format("tower at ({}{:+}a): base {} height {}\n", t["adams_m"].get<int>(),
                                   t["adams_n"].get<int>(), t["base"].get<std::string>(),
                                   t["height"].get<int>() < 0 ? std::string("inf") : fmt::format("{}", t["height"].get<int>()));
        }
        return 0;
    }

    int run_coeff(const CommandConfig& cfg, const ResidueData& rd, std::ostream& out)
    {
        auto tag = spectrum_tag_from_name(cfg.spectrum);
        if (!tag)
            throw InvalidInputError(fmt::format("unknown spectrum '{}' (expect BPGL, kgl, BPGL0, MGL, HZ2)", cfg.spectrum));
        if (cfg.has_degree) {
            emit_group(cfg, coefficient_group(rd, *tag, cfg.degree), out);
            return 0;
        }
        if (!cfg.has_window)
            throw InvalidInputError("coeff needs --degree or --window");

        json rows = json::array();
        if (cfg.format == "tsv")
            out << "m\tn\tfree_rank\ttorsion\n";
        for (int m = cfg.window.m_lo; m <= cfg.window.m_hi; ++m)
            for (int n = cfg.window.n_lo; n <= cfg.window.n_hi; ++n) {
                CoefficientGroup g = coefficient_group(rd, *tag, {m, n});
                if (g.is_trivial())
                    continue;
                if (cfg.format == "json")
                    rows.push_back(json{{"m", m}, {"n", n}, {"free_rank", g.free_rank}, {"torsion", g.torsion}});
                else if (cfg.format == "txt")
                    out << fmt::format("({}{:+}a): {}\n", m, n, g.str());
                else
                    out << m << "\t" << n << "\t" << g.free_rank << "\t" << torsion_str(g) << "\n";
            }
        if (cfg.format == "json")
            out << json{{"q", rd.q}, {"spectrum", spectrum_tag_name(*tag)}, {"groups", rows}}.dump() << "\n";
        return 0;
    }

    int run_kdeg(const CommandConfig& cfg, const ResidueData& rd, std::ostream& out)
    {
        emit_group(cfg, algebraic_k_degree(rd, cfg.kdeg_m), out);
        return 0;
    }

    int run_chart(const CommandConfig& cfg, const ResidueData& rd, std::ostream& out)
    {
        if (!cfg.has_window)
            throw InvalidInputError("chart needs --window");
        ChartDocument doc;
        if (cfg.spectrum == "hstar") {
            doc = chart_hstar(rd, cfg.window);
        }
        else {
            auto spec = spectrum_from_name(cfg.spectrum);
            if (!spec)
                throw InvalidInputError(fmt::format("unknown chart object '{}' (expect hstar, BPGL, kgl, BPGL0)", cfg.spectrum));
            doc = chart_spectrum(rd, *spec, cfg.window, cfg.page);
        }
        out << doc.svg();
        return 0;
    }
}  // namespace

CommandConfig parse_args(const std::vector<std::string>& args)
{
    CommandConfig cfg;
    std::string window_text;
    int smax = 6;

    CLI::App app{"motivic invariants of nondyadic p-adic fields"};
    app.require_subcommand(1);
    app.add_option("--q", cfg.q, "residue order of the p-adic field (odd prime power)")->required();
    app.add_option("--format", cfg.format, "output format: tsv | json | txt | svg");
    app.add_option("--out", cfg.out_path, "write the document to this path instead of stdout");
    app.add_option("--threads", cfg.threads, "worker threads for the cobar engine");

    auto add_window = [&](CLI::App* sub) {
        sub->add_option("--window", window_text, "motivic window m_min:m_max,n_min:n_max");
        sub->add_option("--smax", smax, "homological degree bound");
    };
    auto add_degree = [&](CLI::App* sub) {
        return sub->add_option_function<std::string>(
            "--degree",
            [&cfg](const std::string& text) {
                auto [m, n] = parse_int_pair(text, ',', "degree");
                cfg.degree = {m, n};
                cfg.has_degree = true;
            },
            "bidegree m,n");
    };

    auto* milnor = app.add_subcommand("milnor", "mod-2 Milnor K-theory basis");
    milnor->add_option("--degree", cfg.milnor_degree, "Milnor degree (default: all)");

    auto* hstar = app.add_subcommand("hstar", "motivic homology basis");
    add_window(hstar);
    add_degree(hstar);

    auto* ext = app.add_subcommand("ext", "Ext over E(n) (cobar or closed form)");
    add_window(ext);
    ext->add_option("--n", cfg.truncation, "truncation level (default: from the window)");
    ext->add_option("--oracle", cfg.oracle, "cobar | closed")->check(CLI::IsMember({"cobar", "closed"}));
    ext->add_flag("--verify", cfg.verify, "run both oracles and compare dimensions");

    auto* ass = app.add_subcommand("ass", "motivic Adams spectral sequence pages");
    add_window(ass);
    ass->add_option("--spectrum", cfg.spectrum, "BPGL | kgl | BPGL0");
    ass->add_option("--page", cfg.page, "page index r >= 2 (default: E_infinity)");

    auto* coeff = app.add_subcommand("coeff", "2-complete coefficient groups");
    add_window(coeff);
    add_degree(coeff);
    coeff->add_option("--spectrum", cfg.spectrum, "BPGL | kgl | BPGL0 | MGL | HZ2");

    auto* kdeg = app.add_subcommand("kdeg", "2-complete algebraic K-theory degree");
    kdeg->add_option("--m", cfg.kdeg_m, "degree m >= 0")->required();

    auto* chart = app.add_subcommand("chart", "SVG chart");
    add_window(chart);
    chart->add_option("--spectrum", cfg.spectrum, "hstar | BPGL | kgl | BPGL0");
    chart->add_option("--page", cfg.page, "chart a finite page instead of E_infinity");

    for (auto* sub : {milnor, hstar, ext, ass, coeff, kdeg, chart})
        sub->fallthrough();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    }
    catch (const CLI::CallForHelp&) {
        throw HelpRequested{app.help()};
    }
    catch (const CLI::ParseError& e) {
        throw InvalidInputError(e.what());
    }

    for (auto* sub : {milnor, hstar, ext, ass, coeff, kdeg, chart})
        if (sub->parsed())
            cfg.subcommand = sub->get_name();

    if (!window_text.empty()) {
        cfg.window = parse_window(window_text, smax);
        cfg.has_window = true;
    }
    if (cfg.format.empty())
        cfg.format = cfg.subcommand == "chart" ? "svg" : "tsv";
    if (cfg.subcommand == "chart") {
        if (cfg.format != "svg")
            throw InvalidInputError("chart only emits svg");
    }
    else if (cfg.format != "tsv" && cfg.format != "json" && cfg.format != "txt") {
        throw InvalidInputError(fmt::format("unknown format '{}'", cfg.format));
    }
    if (cfg.threads < 0)
        throw InvalidInputError("--threads must be >= 0");

    if (const char* budget = std::getenv("MOTIVIC_EXT_MEM_BUDGET")) {
        try {
            cfg.mem_budget = std::stoull(budget);
        }
        catch (const std::exception&) {
            throw InvalidInputError(fmt::format("cannot parse MOTIVIC_EXT_MEM_BUDGET '{}'", budget));
        }
    }
    return cfg;
}

int run(const CommandConfig& cfg, std::ostream& out)
{
    ResidueData rd = residue_data(cfg.q);
    if (cfg.subcommand == "milnor")
        return run_milnor(cfg, rd, out);
    if (cfg.subcommand == "hstar")
        return run_hstar(cfg, rd, out);
    if (cfg.subcommand == "ext")
        return run_ext(cfg, rd, out);
    if (cfg.subcommand == "ass")
        return run_ass(cfg, rd, out);
    if (cfg.subcommand == "coeff")
        return run_coeff(cfg, rd, out);
    if (cfg.subcommand == "kdeg")
        return run_kdeg(cfg, rd, out);
    if (cfg.subcommand == "chart")
        return run_chart(cfg, rd, out);
    throw InvalidInputError(fmt::format("unknown subcommand '{}'", cfg.subcommand));
}

int run_main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    CommandConfig cfg;
    try {
        cfg = parse_args(args);
    }
    catch (const HelpRequested& h) {
        std::cout << h.text;
        return 0;
    }
    catch (const InvalidInputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        std::ostringstream buffer;
        int rc = run(cfg, buffer);
        if (cfg.out_path.empty()) {
            std::cout << buffer.str();
        }
        else {
            std::ofstream f(cfg.out_path, std::ios::binary);
            if (!f)
                throw InvalidInputError(fmt::format("cannot open '{}'", cfg.out_path));
            f << buffer.str();
        }
        return rc;
    }
    catch (const WindowRejection& e) {
        std::cerr << "rejected: " << e.what() << "\n";
        return 3;
    }
    catch (const InvalidInputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace motivic::cli
