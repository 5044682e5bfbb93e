#include "urbansim/core/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <boost/property_tree/ini_parser.hpp>

#include "urbansim/core/text.hpp"

namespace urbansim {

namespace pt = boost::property_tree;

KeyValueConfig KeyValueConfig::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse(ss.str());
    } catch (const std::exception& e) {
        throw std::runtime_error(path.string() + ": " + e.what());
    }
}

KeyValueConfig KeyValueConfig::parse(const std::string& text) {
    KeyValueConfig cfg;
    std::istringstream in(text);
    try {
        pt::read_ini(in, cfg.tree_);
    } catch (const pt::ini_parser_error& e) {
        throw std::runtime_error("config parse error at line " + std::to_string(e.line()) + ": " + e.message());
    }
    return cfg;
}

KeyValueConfig::Path KeyValueConfig::path_of(const std::string& section, const std::string& key) {
    // '/' separator so keys may contain dots.
    return Path(section + "/" + key, '/');
}

bool KeyValueConfig::has(const std::string& section, const std::string& key) const {
    return tree_.get_child_optional(path_of(section, key)).has_value();
}

std::optional<std::string> KeyValueConfig::find(const std::string& section, const std::string& key) const {
    if (auto v = tree_.get_optional<std::string>(path_of(section, key))) return std::string(trim(*v));
    return std::nullopt;
}

std::string KeyValueConfig::get_string(const std::string& section, const std::string& key,
                                       const std::string& fallback) const {
    return find(section, key).value_or(fallback);
}

double KeyValueConfig::get_double(const std::string& section, const std::string& key, double fallback) const {
    const auto v = find(section, key);
    if (!v) return fallback;
    try {
        return parse_double(*v);
    } catch (const std::exception&) {
        throw std::invalid_argument("[" + section + "] " + key + ": expected a number, got '" + *v + "'");
    }
}

long long KeyValueConfig::get_int(const std::string& section, const std::string& key, long long fallback) const {
    const auto v = find(section, key);
    if (!v) return fallback;
    try {
        return parse_int(*v);
    } catch (const std::exception&) {
        throw std::invalid_argument("[" + section + "] " + key + ": expected an integer, got '" + *v + "'");
    }
}

bool KeyValueConfig::get_bool(const std::string& section, const std::string& key, bool fallback) const {
    const auto v = find(section, key);
    if (!v) return fallback;
    if (*v == "true" || *v == "1" || *v == "yes" || *v == "on") return true;
    if (*v == "false" || *v == "0" || *v == "no" || *v == "off") return false;
    throw std::invalid_argument("[" + section + "] " + key + ": expected a boolean, got '" + *v + "'");
}

void KeyValueConfig::set(const std::string& section, const std::string& key, const std::string& value) {
    tree_.put(path_of(section, key), value);
}

std::vector<std::string> KeyValueConfig::sections() const {
    std::vector<std::string> out;
    for (const auto& [name, _] : tree_) out.push_back(name);
    return out;
}

std::vector<std::string> KeyValueConfig::keys(const std::string& section) const {
    std::vector<std::string> out;
    if (auto child = tree_.get_child_optional(Path(section, '/')))
        for (const auto& [name, _] : *child) out.push_back(name);
    return out;
}

void KeyValueConfig::write(std::ostream& os) const { pt::write_ini(os, tree_); }

std::string KeyValueConfig::to_string() const {
    std::ostringstream os;
    write(os);
    return os.str();
}

void KeyValueConfig::save(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    write(out);
}

}  // namespace urbansim
