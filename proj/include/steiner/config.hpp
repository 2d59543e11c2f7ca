#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace steiner {

class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Flat `key = value` text, one pair per line, `#` comments. Values are
// scalars or space-separated lists. Every key must be consumed by the
// experiment that runs the config; leftovers are hard errors so a typo can
// never silently change an experiment.
class Config {
public:
    static Config parse(const std::string& text);
    static Config from_file(const std::string& path);

    bool has(const std::string& key) const;

    std::string get_string(const std::string& key);
    std::string get_string(const std::string& key, const std::string& fallback);
    double get_double(const std::string& key);
    double get_double(const std::string& key, double fallback);
    long get_int(const std::string& key);
    long get_int(const std::string& key, long fallback);
    bool get_bool(const std::string& key, bool fallback);
    std::vector<double> get_doubles(const std::string& key);
    std::vector<double> get_doubles(const std::string& key,
                                    std::vector<double> fallback);
    std::vector<int> get_ints(const std::string& key);
    std::vector<int> get_ints(const std::string& key, std::vector<int> fallback);

    // Throws config_error naming every unconsumed key.
    void reject_unknown() const;

private:
    std::string take(const std::string& key);
    std::map<std::string, std::string> values_;
    std::map<std::string, bool> consumed_;
};

} // namespace steiner
