#pragma once

// Run configuration shared by the CLI and its config-file format: flat
// key = value lines with '#' comments, lists as comma strings, ranges as
// "lo..hi". Every CLI flag has a config equivalent and the CLI overrides
// the file. Round-trips losslessly.

#include <cstdint>
#include <string>
#include <vector>

namespace crossfam {

struct IntRange {
    unsigned lo = 0, hi = 0;
    bool operator==(const IntRange&) const = default;
};

struct RunConfig {
    std::string command;               // alpha | crossmax | pairmax | fragments
    std::vector<unsigned> n, k, t, s;  // per-part parameter lists
    unsigned m = 2;
    bool exhaustive = false;
    bool first_nonempty = true;
    std::string construction;          // "", "i", "ii", "remark2", "star"
    std::string grid;                  // "", "claim3", "hpoly"
    bool h_poly = false;
    unsigned j = 0;                    // 1-based distinguished part (0 = unset)
    IntRange grid_p{2, 3};
    IntRange grid_n{5, 9};
    std::string output = "text";       // text | json | csv
    std::string out_path;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    std::uint64_t max_nodes = std::uint64_t{1} << 26;

    bool operator==(const RunConfig&) const = default;

    std::string serialize() const;
    static RunConfig parse(const std::string& text);
    static RunConfig load(const std::string& path);
};

std::string join_list(const std::vector<unsigned>& v);
std::vector<unsigned> parse_list(const std::string& text);

} // namespace crossfam
