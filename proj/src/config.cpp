#include "steiner/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace steiner {

namespace {
std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t");
    std::size_t e = s.find_last_not_of(" \t");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& tok) {
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0')
        throw config_error("config key '" + key + "': not a number: " + tok);
    return v;
}
} // namespace

Config Config::parse(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("config line " + std::to_string(lineno) +
                               ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw config_error("config line " + std::to_string(lineno) +
                               ": empty key");
        if (cfg.values_.count(key) != 0)
            throw config_error("config key '" + key + "': duplicate");
        cfg.values_[key] = value;
        cfg.consumed_[key] = false;
    }
    return cfg;
}

Config Config::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

bool Config::has(const std::string& key) const {
    return values_.count(key) != 0;
}

std::string Config::take(const std::string& key) {
    auto it = values_.find(key);
    if (it == values_.end())
        throw config_error("missing config key '" + key + "'");
    consumed_[key] = true;
    return it->second;
}

std::string Config::get_string(const std::string& key) { return take(key); }

std::string Config::get_string(const std::string& key,
                               const std::string& fallback) {
    return has(key) ? take(key) : fallback;
}

double Config::get_double(const std::string& key) {
    return parse_double(key, take(key));
}

double Config::get_double(const std::string& key, double fallback) {
    return has(key) ? get_double(key) : fallback;
}

long Config::get_int(const std::string& key) {
    const std::string tok = take(key);
    char* end = nullptr;
    const long v = std::strtol(tok.c_str(), &end, 10);
    if (end == tok.c_str() || *end != '\0')
        throw config_error("config key '" + key + "': not an integer: " + tok);
    return v;
}

long Config::get_int(const std::string& key, long fallback) {
    return has(key) ? get_int(key) : fallback;
}

bool Config::get_bool(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    const std::string tok = take(key);
    if (tok == "true" || tok == "1" || tok == "yes") return true;
    if (tok == "false" || tok == "0" || tok == "no") return false;
    throw config_error("config key '" + key + "': not a boolean: " + tok);
}

std::vector<double> Config::get_doubles(const std::string& key) {
    std::istringstream ss(take(key));
    std::vector<double> out;
    std::string tok;
    while (ss >> tok) out.push_back(parse_double(key, tok));
    return out;
}

std::vector<double> Config::get_doubles(const std::string& key,
                                        std::vector<double> fallback) {
    return has(key) ? get_doubles(key) : std::move(fallback);
}

std::vector<int> Config::get_ints(const std::string& key) {
    std::vector<int> out;
    for (double v : get_doubles(key)) {
        const int i = static_cast<int>(v);
        if (static_cast<double>(i) != v)
            throw config_error("config key '" + key + "': not an integer list");
        out.push_back(i);
    }
    return out;
}

std::vector<int> Config::get_ints(const std::string& key,
                                  std::vector<int> fallback) {
    return has(key) ? get_ints(key) : std::move(fallback);
}

void Config::reject_unknown() const {
    std::string bad;
    for (const auto& [key, used] : consumed_)
        if (!used) bad += (bad.empty() ? "" : ", ") + key;
    if (!bad.empty()) throw config_error("unknown config key(s): " + bad);
}

} // namespace steiner
