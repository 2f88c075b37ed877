#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

namespace picone {

// Reports use insertion-ordered JSON and a fixed floating-point formatting so
// that two runs with identical inputs produce byte-identical files.
using Report = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kVersion = "0.1.0";

inline Report make_report(const std::string& kind) {
    Report r;
    r["schema_version"] = kSchemaVersion;
    r["tool"] = "picone";
    r["tool_version"] = kVersion;
    r["kind"] = kind;
    return r;
}

inline std::string render_report(const Report& r) { return r.dump(2) + "\n"; }

inline void write_report(const Report& r, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open report file: " + path);
    out << render_report(r);
    if (!out) throw std::runtime_error("failed writing report file: " + path);
}

}  // namespace picone
