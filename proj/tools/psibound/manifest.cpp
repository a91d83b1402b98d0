#include "manifest.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "psibound/errors.hpp"

namespace psicli {

std::string fmt30(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.30g", v);
    return buf;
}

double parse_number(const std::string& text) {
    if (text.empty()) throw psibound::ParseError("empty number", 0);
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size() || errno == ERANGE || !std::isfinite(v))
        throw psibound::ParseError("not a finite decimal: '" + text + "'", 0);
    return v;
}

std::pair<double, double> parse_range(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw psibound::ParseError("range must be a:b, got '" + text + "'", 0);
    const double a = parse_number(text.substr(0, colon));
    const double b = parse_number(text.substr(colon + 1));
    if (!(a < b)) throw psibound::PreconditionError("range " + text + " is empty");
    return {a, b};
}

void Manifest::set(const std::string& key, const std::string& value) {
    if (key.empty() || key.find_first_of("=\n") != std::string::npos || value.find('\n') != std::string::npos)
        throw psibound::PreconditionError("bad manifest entry '" + key + "'");
    auto it = index_.find(key);
    if (it != index_.end()) {
        entries_[it->second].second = value;
        return;
    }
    index_[key] = entries_.size();
    entries_.emplace_back(key, value);
}

void Manifest::set_int(const std::string& key, unsigned long long value) { set(key, std::to_string(value)); }

bool Manifest::has(const std::string& key) const { return index_.count(key) != 0; }

const std::string& Manifest::get(const std::string& key) const {
    auto it = index_.find(key);
    if (it == index_.end()) throw psibound::ParseError("manifest has no key '" + key + "'", 0);
    return entries_[it->second].second;
}

double Manifest::number(const std::string& key) const { return parse_number(get(key)); }

std::string Manifest::to_text() const {
    std::string out;
    for (const auto& [k, v] : entries_) out += k + "=" + v + "\n";
    return out;
}

Manifest Manifest::parse(const std::string& text) {
    Manifest m;
    std::istringstream in(text);
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos || eq == 0) throw psibound::ParseError("expected key=value", n);
        m.set(line.substr(0, eq), line.substr(eq + 1));
    }
    return m;
}

Manifest Manifest::load(const std::filesystem::path& path) { return parse(read_file(path)); }

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw psibound::IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

static void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw psibound::IoError("cannot write " + path.string());
    out << content;
    if (!out) throw psibound::IoError("write failed: " + path.string());
}

std::filesystem::path write_append_only(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path candidate = path;
    for (int n = 1;; ++n) {
        if (!std::filesystem::exists(candidate)) {
            write_file(candidate, content);
            return candidate;
        }
        if (read_file(candidate) == content) return candidate;
        candidate = path.parent_path() /
                    (path.stem().string() + "." + std::to_string(n) + path.extension().string());
    }
}

void append_csv_row(const std::filesystem::path& path, const std::string& header, const std::string& row) {
    std::string existing;
    if (std::filesystem::exists(path)) {
        existing = read_file(path);
        if (existing.rfind(header + "\n", 0) != 0)
            throw psibound::IoError(path.string() + " has a different header");
        std::istringstream in(existing);
        std::string line;
        while (std::getline(in, line))
            if (line == row) return;
    } else {
        existing = header + "\n";
    }
    write_file(path, existing + row + "\n");
}

}  // namespace psicli
