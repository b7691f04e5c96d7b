#pragma once

#include <charconv>
#include <string>
#include <vector>

#include "coconvex/polynomial.hpp"

namespace coconvex {

// Locale-independent float formatting. Default is the shortest string that
// round-trips the double; the seventeen flag switches to a fixed 17
// significant digits for golden files.
inline std::string format_double(double v, bool seventeen = false) {
    char buf[64];
    std::to_chars_result res =
        seventeen ? std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17)
                  : std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

// Flat "dotted.key: value" report document, one scalar per line, keys in
// insertion order. The last line is always the verdict.
class Report {
public:
    explicit Report(bool seventeen = false) : seventeen_(seventeen) {}

    void put(const std::string& key, const std::string& v) { lines_.push_back({key, v}); }
    void put(const std::string& key, const char* v) { lines_.push_back({key, v}); }
    void put(const std::string& key, double v) { put(key, format_double(v, seventeen_)); }
    void put(const std::string& key, int v) { put(key, std::to_string(v)); }
    void put(const std::string& key, bool v) { put(key, v ? std::string("true") : "false"); }
    void put(const std::string& key, const Interval& iv) {
        put(key, "[" + format_double(iv.lo, seventeen_) + ", " +
                     format_double(iv.hi, seventeen_) + "]");
    }
    void put_list(const std::string& key, const std::vector<double>& vs) {
        put(key + ".count", static_cast<int>(vs.size()));
        for (std::size_t i = 0; i < vs.size(); ++i) put(key + "." + std::to_string(i), vs[i]);
    }

    std::string str() const {
        std::string out;
        for (const auto& [k, v] : lines_) {
            out += k;
            out += ": ";
            out += v;
            out += '\n';
        }
        return out;
    }

    // The final line alone, for --quiet output.
    std::string verdict_line() const {
        if (lines_.empty()) return "";
        return lines_.back().first + ": " + lines_.back().second + "\n";
    }

private:
    std::vector<std::pair<std::string, std::string>> lines_;
    bool seventeen_;
};

}  // namespace coconvex
