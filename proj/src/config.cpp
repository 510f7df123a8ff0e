#include "crossfam/config.hpp"

#include <fstream>
#include <sstream>

#include "crossfam/errors.hpp"

namespace crossfam {

std::string join_list(const std::vector<unsigned>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    return os.str();
}

std::vector<unsigned> parse_list(const std::string& text) {
    std::vector<unsigned> out;
    std::string item;
    std::istringstream is(text);
    while (std::getline(is, item, ','))
        if (!item.empty()) out.push_back(static_cast<unsigned>(std::stoul(item)));
    return out;
}

namespace {

std::string range_str(const IntRange& r) {
    return std::to_string(r.lo) + ".." + std::to_string(r.hi);
}

IntRange parse_range(const std::string& text) {
    const auto pos = text.find("..");
    if (pos == std::string::npos) {
        const unsigned v = static_cast<unsigned>(std::stoul(text));
        return {v, v};
    }
    return {static_cast<unsigned>(std::stoul(text.substr(0, pos))),
            static_cast<unsigned>(std::stoul(text.substr(pos + 2)))};
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

} // namespace

std::string RunConfig::serialize() const {
    std::ostringstream os;
    os << "command = " << command << "\n";
    os << "n = " << join_list(n) << "\n";
    os << "k = " << join_list(k) << "\n";
    os << "t = " << join_list(t) << "\n";
    os << "s = " << join_list(s) << "\n";
    os << "m = " << m << "\n";
    os << "exhaustive = " << (exhaustive ? "true" : "false") << "\n";
    os << "first_nonempty = " << (first_nonempty ? "true" : "false") << "\n";
    os << "construction = " << construction << "\n";
    os << "grid = " << grid << "\n";
    os << "h_poly = " << (h_poly ? "true" : "false") << "\n";
    os << "j = " << j << "\n";
    os << "grid_p = " << range_str(grid_p) << "\n";
    os << "grid_n = " << range_str(grid_n) << "\n";
    os << "output = " << output << "\n";
    os << "out = " << out_path << "\n";
    os << "seed = " << seed << "\n";
    os << "threads = " << threads << "\n";
    os << "max_nodes = " << max_nodes << "\n";
    return os.str();
}

RunConfig RunConfig::parse(const std::string& text) {
    RunConfig cfg;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "command") cfg.command = value;
        else if (key == "n") cfg.n = parse_list(value);
        else if (key == "k") cfg.k = parse_list(value);
        else if (key == "t") cfg.t = parse_list(value);
        else if (key == "s") cfg.s = parse_list(value);
        else if (key == "m") cfg.m = static_cast<unsigned>(std::stoul(value));
        else if (key == "exhaustive") cfg.exhaustive = value == "true";
        else if (key == "first_nonempty") cfg.first_nonempty = value == "true";
        else if (key == "construction") cfg.construction = value;
        else if (key == "grid") cfg.grid = value;
        else if (key == "h_poly") cfg.h_poly = value == "true";
        else if (key == "j") cfg.j = static_cast<unsigned>(std::stoul(value));
        else if (key == "grid_p") cfg.grid_p = parse_range(value);
        else if (key == "grid_n") cfg.grid_n = parse_range(value);
        else if (key == "output") cfg.output = value;
        else if (key == "out") cfg.out_path = value;
        else if (key == "seed") cfg.seed = std::stoull(value);
        else if (key == "threads") cfg.threads = static_cast<unsigned>(std::stoul(value));
        else if (key == "max_nodes") cfg.max_nodes = std::stoull(value);
        else throw PreconditionFailed("unknown config key: " + key);
    }
    return cfg;
}

RunConfig RunConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw PreconditionFailed("cannot open config file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return parse(os.str());
}

} // namespace crossfam
