#pragma once

// key=value run manifests and the small formatting helpers shared by the
// commands.

#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace psicli {

// 30 significant digits, the precision every decimal is echoed at.
std::string fmt30(double v);

// Accepts plain decimals and scientific notation ("1e7", "2.5E-3").
double parse_number(const std::string& text);
// "a:b" with a < b.
std::pair<double, double> parse_range(const std::string& text);

class Manifest {
public:
    void set(const std::string& key, const std::string& value);
    void set(const std::string& key, double value) { set(key, fmt30(value)); }
    void set_int(const std::string& key, unsigned long long value);

    bool has(const std::string& key) const;
    const std::string& get(const std::string& key) const;
    double number(const std::string& key) const;

    // Keys in insertion order, one "key=value" line each.
    std::string to_text() const;
    static Manifest parse(const std::string& text);
    static Manifest load(const std::filesystem::path& path);

private:
    std::vector<std::pair<std::string, std::string>> entries_;
    std::map<std::string, std::size_t> index_;
};

std::string read_file(const std::filesystem::path& path);
// Writes `content` to `path` unless an identical file is already there; a
// different file is never replaced, the next free "<stem>.<n><ext>" is used
// instead. Returns the path written (or matched).
std::filesystem::path write_append_only(const std::filesystem::path& path, const std::string& content);
// Appends `row` to the CSV at `path` (creating it with `header`) unless the
// row is already present.
void append_csv_row(const std::filesystem::path& path, const std::string& header, const std::string& row);

}  // namespace psicli
