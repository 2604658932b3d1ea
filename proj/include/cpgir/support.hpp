#pragma once

#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace cpgir {

struct Diagnostic {
    enum class Severity { Error, Warning, Note };
    Severity severity = Severity::Warning;
    int line = 0;
    std::string message;
};

using DiagnosticList = std::vector<Diagnostic>;

inline Diagnostic make_diag(Diagnostic::Severity sev, int line, std::string msg) {
    return Diagnostic{sev, line, std::move(msg)};
}

enum class LogLevel { Error = 0, Warn = 1, Info = 2, Debug = 3 };

/// Log threshold, read once from the CPGIR_LOG environment variable.
inline LogLevel log_level() {
    static LogLevel level = [] {
        const char* env = std::getenv("CPGIR_LOG");
        if (!env) return LogLevel::Warn;
        std::string_view v(env);
        if (v == "error") return LogLevel::Error;
        if (v == "warn") return LogLevel::Warn;
        if (v == "info") return LogLevel::Info;
        if (v == "debug") return LogLevel::Debug;
        return LogLevel::Warn;
    }();
    return level;
}

inline void log(LogLevel level, std::string_view msg) {
    if (level > log_level()) return;
    static const char* names[] = {"error", "warn", "info", "debug"};
    std::fprintf(stderr, "cpgir: [%s] %.*s\n", names[static_cast<int>(level)],
                 static_cast<int>(msg.size()), msg.data());
}

inline std::string join(const std::vector<std::string>& parts, std::string_view sep) {
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

inline std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> out;
    size_t start = 0;
    while (start <= text.size()) {
        size_t pos = text.find(sep, start);
        if (pos == std::string_view::npos) {
            out.emplace_back(text.substr(start));
            break;
        }
        out.emplace_back(text.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

inline std::string to_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out)
        if (c >= 'A' && c <= 'Z') c += 'a' - 'A';
    return out;
}

/// Whitespace-insensitive comparison used by round-trip checks.
inline std::string strip_spaces(std::string_view s) {
    std::string out;
    for (char c : s)
        if (c != ' ' && c != '\t' && c != '\n' && c != '\r') out += c;
    return out;
}

} // namespace cpgir
