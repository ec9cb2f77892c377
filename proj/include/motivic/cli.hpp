#pragma once

#include "motivic/grading.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace motivic::cli {

struct CommandConfig
{
    std::int64_t q = 0;
    std::string subcommand;

    bool has_window = false;
    Window window;  // s_max folded in from --smax

    bool has_degree = false;
    Bidegree degree;

    int milnor_degree = -1;  // milnor: -1 = all degrees
    int kdeg_m = 0;

    std::string spectrum = "BPGL";  // chart also accepts "hstar"
    int page = 0;                   // 0 = E_infinity
    std::string oracle = "cobar";
    bool verify = false;

    std::string format;  // tsv | json | txt | svg (default per subcommand)
    std::string out_path;
    int threads = 1;
    int truncation = -1;  // ext: -1 = auto via truncation_level

    std::size_t mem_budget = 0;  // MOTIVIC_EXT_MEM_BUDGET
};

// Thrown when the user asked for --help; carries the help text.
struct HelpRequested
{
    std::string text;
};

// Parse argv-style arguments (without the program name).
CommandConfig parse_args(const std::vector<std::string>& args);

// Execute; emits the requested document to `out`.  Throws InvalidInputError
// or WindowRejection; returns 0 on success, 1 when --verify found a mismatch.
int run(const CommandConfig& config, std::ostream& out);

// Full wrapper: parse, dispatch, map errors to exit codes 2 (bad input) and
// 3 (window/budget rejection), honor --out.
int run_main(int argc, char** argv);

}  // namespace motivic::cli
