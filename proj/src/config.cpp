#include "nmpl/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace nmpl {

namespace {

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

}  // namespace

const std::string& ConfigTable::get_string(const std::string& key) const {
    auto it = kv.find(key);
    if (it == kv.end())
        throw ConfigError("[" + name + "] missing required key '" + key + "'");
    return it->second;
}

std::string ConfigTable::get_string(const std::string& key, const std::string& dflt) const {
    auto it = kv.find(key);
    return it == kv.end() ? dflt : it->second;
}

double ConfigTable::get_double(const std::string& key) const {
    const std::string& v = get_string(key);
    char* end = nullptr;
    double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0')
        throw ConfigError("[" + name + "] key '" + key + "': bad number '" + v + "'");
    return x;
}

double ConfigTable::get_double(const std::string& key, double dflt) const {
    return has(key) ? get_double(key) : dflt;
}

int ConfigTable::get_int(const std::string& key, int dflt) const {
    return has(key) ? static_cast<int>(get_double(key)) : dflt;
}

bool ConfigTable::get_bool(const std::string& key, bool dflt) const {
    if (!has(key)) return dflt;
    std::string v = get_string(key);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("[" + name + "] key '" + key + "': bad boolean '" + v + "'");
}

std::vector<double> ConfigTable::get_list(const std::string& key) const {
    const std::string& v = get_string(key);
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        char* end = nullptr;
        double x = std::strtod(item.c_str(), &end);
        if (end == item.c_str() || *end != '\0')
            throw ConfigError("[" + name + "] key '" + key + "': bad list entry '" + item +
                              "'");
        out.push_back(x);
    }
    if (out.empty())
        throw ConfigError("[" + name + "] key '" + key + "': empty list");
    return out;
}

std::vector<double> ConfigTable::get_list(const std::string& key,
                                          const std::vector<double>& dflt) const {
    return has(key) ? get_list(key) : dflt;
}

Config Config::parse(const std::string& text) {
    Config cfg;
    std::stringstream ss(text);
    std::string line;
    ConfigTable* current = nullptr;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("line " + std::to_string(lineno) + ": unterminated table header");
            std::string name = trim(line.substr(1, line.size() - 2));
            if (name.empty())
                throw ConfigError("line " + std::to_string(lineno) + ": empty table name");
            current = &cfg.tables[name];
            current->name = name;
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        if (!current)
            throw ConfigError("line " + std::to_string(lineno) + ": key outside any [table]");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": empty key");
        current->kv[key] = value;
    }
    return cfg;
}

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

const ConfigTable& Config::require(const std::string& name) const {
    auto it = tables.find(name);
    if (it == tables.end())
        throw ConfigError("missing required [" + name + "] table");
    return it->second;
}

const ConfigTable* Config::find(const std::string& name) const {
    auto it = tables.find(name);
    return it == tables.end() ? nullptr : &it->second;
}

}  // namespace nmpl
