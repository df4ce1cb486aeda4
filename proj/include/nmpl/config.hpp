#pragma once

#include <map>
#include <string>
#include <vector>

#include "nmpl/common.hpp"

namespace nmpl {

// [table] sections of key = value lines; '#' starts a comment.
struct ConfigTable {
    std::string name;
    std::map<std::string, std::string> kv;

    bool has(const std::string& key) const { return kv.count(key) > 0; }
    const std::string& get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& dflt) const;
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double dflt) const;
    int get_int(const std::string& key, int dflt) const;
    bool get_bool(const std::string& key, bool dflt) const;
    std::vector<double> get_list(const std::string& key) const;  // comma separated
    std::vector<double> get_list(const std::string& key, const std::vector<double>& dflt) const;
};

struct Config {
    std::map<std::string, ConfigTable> tables;

    static Config parse(const std::string& text);
    static Config parse_file(const std::string& path);

    const ConfigTable& require(const std::string& name) const;  // names the table on error
    const ConfigTable* find(const std::string& name) const;
};

}  // namespace nmpl
