#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <boost/property_tree/ptree.hpp>

namespace urbansim {

/// Section-scoped key-value configuration (INI syntax), e.g.
///
///     [static]
///     intensity = 0.004
///
/// Keys are addressed as ("static", "intensity"). Backed by boost::property_tree.
class KeyValueConfig {
public:
    KeyValueConfig() = default;

    static KeyValueConfig load(const std::filesystem::path& path);
    static KeyValueConfig parse(const std::string& text);

    bool has(const std::string& section, const std::string& key) const;
    std::optional<std::string> find(const std::string& section, const std::string& key) const;

    std::string get_string(const std::string& section, const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& section, const std::string& key, double fallback) const;
    long long get_int(const std::string& section, const std::string& key, long long fallback) const;
    bool get_bool(const std::string& section, const std::string& key, bool fallback) const;

    void set(const std::string& section, const std::string& key, const std::string& value);

    std::vector<std::string> sections() const;
    std::vector<std::string> keys(const std::string& section) const;

    void write(std::ostream& os) const;
    std::string to_string() const;
    void save(const std::filesystem::path& path) const;

private:
    using Path = boost::property_tree::ptree::path_type;
    static Path path_of(const std::string& section, const std::string& key);

    boost::property_tree::ptree tree_;
};

}  // namespace urbansim
