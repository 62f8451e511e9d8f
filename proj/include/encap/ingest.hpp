#pragma once

#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "encap/types.hpp"

namespace encap {

// Parsed form of the line-oriented manifest format. Keeps names and input
// order so a canonical manifest round-trips byte for byte.
struct Manifest {
    enum class Context { flat, layered, hier };

    struct Entry {
        std::string name;
        Count hidden = 0;
        Count violating = 0;
        std::string parent;  // hier only; "-" marks the root
        Count layer = 0;     // layered only; 1-based

        friend bool operator==(const Entry&, const Entry&) = default;
    };

    Context context = Context::flat;
    std::vector<Entry> entries;
    std::optional<Count> penetration;  // layered only

    friend bool operator==(const Manifest&, const Manifest&) = default;

    FlatSystem to_flat() const {
        FlatSystem sys;
        sys.regions.reserve(entries.size());
        for (const auto& entry : entries) sys.regions.push_back({entry.hidden, entry.violating});
        return sys;
    }

    LayeredSystem to_layered() const {
        LayeredSystem sys;
        for (const auto& entry : entries) {
            while (static_cast<Count>(sys.layers.size()) < entry.layer) sys.layers.emplace_back();
            sys.layers[static_cast<std::size_t>(entry.layer - 1)].push_back(
                {entry.hidden, entry.violating});
        }
        sys.penetration = penetration;
        return sys;
    }

    HierTree to_hier() const {
        std::unordered_map<std::string, int> index;
        for (std::size_t i = 0; i < entries.size(); ++i) {
            index[entries[i].name] = static_cast<int>(i);
        }
        HierTree tree;
        tree.nodes.reserve(entries.size());
        for (const auto& entry : entries) {
            HierTree::Subsystem node;
            node.name = entry.name;
            node.parent = entry.parent == "-" ? -1 : index.at(entry.parent);
            node.counts = {entry.hidden, entry.violating};
            tree.nodes.push_back(std::move(node));
        }
        return tree;
    }

    std::string serialize() const {
        std::ostringstream out;
        switch (context) {
            case Context::flat:
                out << "context flat\n";
                for (const auto& entry : entries) {
                    out << "region " << entry.name << " private=" << entry.hidden
                        << " public=" << entry.violating << "\n";
                }
                break;
            case Context::layered: {
                out << "context layered\n";
                if (penetration) out << "penetration " << *penetration << "\n";
                Count current = 0;
                for (const auto& entry : entries) {
                    while (current < entry.layer) out << "layer " << ++current << "\n";
                    out << "region " << entry.name << " private=" << entry.hidden
                        << " public=" << entry.violating << "\n";
                }
                break;
            }
            case Context::hier:
                out << "context hier\n";
                for (const auto& entry : entries) {
                    out << "subsystem " << entry.name << " parent=" << entry.parent
                        << " private=" << entry.hidden << " public=" << entry.violating << "\n";
                }
                break;
        }
        return out.str();
    }
};

namespace detail {

inline std::vector<std::string> split_tokens(std::string_view line) {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
        if (i > start) tokens.emplace_back(line.substr(start, i - start));
    }
    return tokens;
}

inline Count parse_count(const std::string& text, int line) {
    Count value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || value < 0) {
        throw parse_error(line, "expected a non-negative integer, got '" + text + "'");
    }
    return value;
}

// "key=value" with a required key.
inline std::string keyed_value(const std::string& token, const std::string& key, int line) {
    const std::string prefix = key + "=";
    if (token.rfind(prefix, 0) != 0) {
        throw parse_error(line, "expected '" + key + "=...', got '" + token + "'");
    }
    std::string value = token.substr(prefix.size());
    if (value.empty()) throw parse_error(line, "empty value for '" + key + "'");
    return value;
}

}  // namespace detail

inline Manifest parse_manifest(const std::string& text) {
    Manifest manifest;
    std::unordered_set<std::string> names;
    bool context_seen = false;
    bool layer_seen = false;
    Count current_layer = 0;
    int line_no = 0;
    std::istringstream stream(text);
    std::string raw;
    while (std::getline(stream, raw)) {
        ++line_no;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        const auto tokens = detail::split_tokens(raw);
        if (tokens.empty() || tokens[0][0] == '#') continue;
        const std::string& head = tokens[0];
        if (!context_seen) {
            if (head != "context" || tokens.size() != 2) {
                throw parse_error(line_no, "manifest must start with 'context flat|layered|hier'");
            }
            if (tokens[1] == "flat") {
                manifest.context = Manifest::Context::flat;
            } else if (tokens[1] == "layered") {
                manifest.context = Manifest::Context::layered;
            } else if (tokens[1] == "hier") {
                manifest.context = Manifest::Context::hier;
            } else {
                throw parse_error(line_no, "unknown context '" + tokens[1] + "'");
            }
            context_seen = true;
            continue;
        }
        if (head == "region") {
            if (manifest.context == Manifest::Context::hier) {
                throw parse_error(line_no, "'region' lines belong to flat or layered manifests");
            }
            if (tokens.size() != 4) {
                throw parse_error(line_no, "expected 'region <name> private=<int> public=<int>'");
            }
            if (manifest.context == Manifest::Context::layered && !layer_seen) {
                throw parse_error(line_no, "region appears before any 'layer' line");
            }
            Manifest::Entry entry;
            entry.name = tokens[1];
            if (!names.insert(entry.name).second) {
                throw parse_error(line_no, "duplicate region name '" + entry.name + "'");
            }
            entry.hidden = detail::parse_count(detail::keyed_value(tokens[2], "private", line_no),
                                               line_no);
            entry.violating = detail::parse_count(detail::keyed_value(tokens[3], "public", line_no),
                                                  line_no);
            entry.layer = current_layer;
            manifest.entries.push_back(std::move(entry));
        } else if (head == "layer") {
            if (manifest.context != Manifest::Context::layered) {
                throw parse_error(line_no, "'layer' lines belong to layered manifests");
            }
            if (tokens.size() != 2) throw parse_error(line_no, "expected 'layer <int>'");
            const Count index = detail::parse_count(tokens[1], line_no);
            if (index != current_layer + 1) {
                throw parse_error(line_no, "layers must be numbered consecutively from 1; expected " +
                                               std::to_string(current_layer + 1));
            }
            current_layer = index;
            layer_seen = true;
        } else if (head == "penetration") {
            if (manifest.context != Manifest::Context::layered) {
                throw parse_error(line_no, "'penetration' belongs to layered manifests");
            }
            if (layer_seen) throw parse_error(line_no, "'penetration' must precede 'layer' lines");
            if (manifest.penetration) throw parse_error(line_no, "duplicate 'penetration'");
            if (tokens.size() != 2) throw parse_error(line_no, "expected 'penetration <int>'");
            manifest.penetration = detail::parse_count(tokens[1], line_no);
        } else if (head == "subsystem") {
            if (manifest.context != Manifest::Context::hier) {
                throw parse_error(line_no, "'subsystem' lines belong to hier manifests");
            }
            if (tokens.size() != 5) {
                throw parse_error(
                    line_no, "expected 'subsystem <name> parent=<name|-> private=<int> public=<int>'");
            }
            Manifest::Entry entry;
            entry.name = tokens[1];
            if (!names.insert(entry.name).second) {
                throw parse_error(line_no, "duplicate subsystem name '" + entry.name + "'");
            }
            entry.parent = detail::keyed_value(tokens[2], "parent", line_no);
            entry.hidden = detail::parse_count(detail::keyed_value(tokens[3], "private", line_no),
                                               line_no);
            entry.violating = detail::parse_count(detail::keyed_value(tokens[4], "public", line_no),
                                                  line_no);
            manifest.entries.push_back(std::move(entry));
        } else {
            throw parse_error(line_no, "unknown directive '" + head + "'");
        }
    }
    if (!context_seen) throw parse_error(line_no == 0 ? 1 : line_no, "empty manifest: missing 'context' line");
    if (manifest.context == Manifest::Context::hier) {
        // Resolve parents: exactly one root, all parents known, no cycles.
        std::unordered_map<std::string, int> index;
        for (std::size_t i = 0; i < manifest.entries.size(); ++i) {
            index[manifest.entries[i].name] = static_cast<int>(i);
        }
        int roots = 0;
        for (const auto& entry : manifest.entries) {
            if (entry.parent == "-") {
                ++roots;
            } else if (!index.count(entry.parent)) {
                throw parse_error(0, "subsystem '" + entry.name + "' names unknown parent '" +
                                         entry.parent + "'");
            }
        }
        if (!manifest.entries.empty() && roots != 1) {
            throw parse_error(0, "hier manifest needs exactly one 'parent=-' root, found " +
                                     std::to_string(roots));
        }
        for (const auto& entry : manifest.entries) {
            std::size_t hops = 0;
            const Manifest::Entry* at = &entry;
            while (at->parent != "-") {
                at = &manifest.entries[static_cast<std::size_t>(index.at(at->parent))];
                if (++hops > manifest.entries.size()) {
                    throw parse_error(0, "subsystem '" + entry.name + "' is part of a parent cycle");
                }
            }
        }
    }
    return manifest;
}

// --- Java source scanning -------------------------------------------------

struct ScanReport {
    LabeledCodebase codebase;
    std::vector<std::string> warnings;
    Count files_scanned = 0;
};

// Blanks out comments and string/char literals, preserving length and line
// structure, so later passes see only real code tokens.
inline std::string strip_java(const std::string& source) {
    std::string out = source;
    enum class State { code, line_comment, block_comment, string_lit, char_lit } state = State::code;
    for (std::size_t i = 0; i < source.size(); ++i) {
        const char c = source[i];
        const char next = i + 1 < source.size() ? source[i + 1] : '\0';
        switch (state) {
            case State::code:
                if (c == '/' && next == '/') {
                    state = State::line_comment;
                    out[i] = ' ';
                } else if (c == '/' && next == '*') {
                    state = State::block_comment;
                    out[i] = ' ';
                } else if (c == '"') {
                    state = State::string_lit;
                    out[i] = ' ';
                } else if (c == '\'') {
                    state = State::char_lit;
                    out[i] = ' ';
                }
                break;
            case State::line_comment:
                if (c == '\n') {
                    state = State::code;
                } else {
                    out[i] = ' ';
                }
                break;
            case State::block_comment:
                if (c == '*' && next == '/') {
                    out[i] = ' ';
                    out[i + 1] = ' ';
                    ++i;
                    state = State::code;
                } else if (c != '\n') {
                    out[i] = ' ';
                }
                break;
            case State::string_lit:
                if (c == '\\' && i + 1 < source.size()) {
                    out[i] = ' ';
                    if (next != '\n') out[i + 1] = ' ';
                    ++i;
                } else {
                    if (c != '\n') out[i] = ' ';
                    if (c == '"') state = State::code;
                }
                break;
            case State::char_lit:
                if (c == '\\' && i + 1 < source.size()) {
                    out[i] = ' ';
                    if (next != '\n') out[i + 1] = ' ';
                    ++i;
                } else {
                    if (c != '\n') out[i] = ' ';
                    if (c == '\'') state = State::code;
                }
                break;
        }
    }
    return out;
}

namespace detail {

struct JavaToken {
    std::string text;  // identifier/keyword, or single punctuation char
    bool ident = false;
    int depth = 0;  // brace depth before this token
};

inline bool ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$';
}

inline bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9'); }

inline std::vector<JavaToken> java_tokens(const std::string& stripped) {
    std::vector<JavaToken> tokens;
    int depth = 0;
    std::size_t i = 0;
    while (i < stripped.size()) {
        const char c = stripped[i];
        if (ident_start(c)) {
            std::size_t start = i;
            while (i < stripped.size() && ident_char(stripped[i])) ++i;
            tokens.push_back({stripped.substr(start, i - start), true, depth});
            continue;
        }
        if (!std::isspace(static_cast<unsigned char>(c))) {
            tokens.push_back({std::string(1, c), false, depth});
            if (c == '{') ++depth;
            if (c == '}') depth = depth > 0 ? depth - 1 : 0;
        }
        ++i;
    }
    return tokens;
}

inline bool is_type_keyword(const std::string& text) {
    return text == "class" || text == "interface" || text == "enum";
}

struct ScannedType {
    std::string name;
    bool is_public = false;
    std::size_t body_token = 0;  // index of the '{' opening the body, or npos
};

struct ScannedFile {
    std::string package;
    std::vector<ScannedType> types;
};

inline ScannedFile scan_java_source(const std::string& source) {
    ScannedFile file;
    const auto tokens = java_tokens(strip_java(source));
    bool window_public = false;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const auto& tok = tokens[i];
        if (tok.depth != 0) continue;
        if (!tok.ident) {
            if (tok.text == ";" || tok.text == "{" || tok.text == "}") window_public = false;
            continue;
        }
        if (tok.text == "package" && file.package.empty()) {
            std::string name;
            for (std::size_t j = i + 1; j < tokens.size() && tokens[j].text != ";"; ++j) {
                name += tokens[j].text;
            }
            file.package = name;
            continue;
        }
        if (tok.text == "public") window_public = true;
        if (is_type_keyword(tok.text)) {
            // annotation declarations ('@interface') are not counted
            if (tok.text == "interface" && i > 0 && tokens[i - 1].text == "@") {
                window_public = false;
                continue;
            }
            for (std::size_t j = i + 1; j < tokens.size(); ++j) {
                if (tokens[j].ident) {
                    ScannedType type;
                    type.name = tokens[j].text;
                    type.is_public = window_public;
                    type.body_token = tokens.size();
                    for (std::size_t k = j + 1; k < tokens.size(); ++k) {
                        if (tokens[k].text == "{" && tokens[k].depth == 0) {
                            type.body_token = k;
                            break;
                        }
                        if (tokens[k].text == ";" && tokens[k].depth == 0) break;
                    }
                    file.types.push_back(std::move(type));
                    break;
                }
            }
            window_public = false;
        }
    }
    return file;
}

struct ScannedMethod {
    std::string name;
    bool is_private = false;
};

// Methods declared directly inside a top-level type's body: an identifier
// followed by '(' at depth 1, not an annotation, not a field initializer,
// not the constructor.
inline std::vector<ScannedMethod> scan_methods(const std::vector<JavaToken>& tokens,
                                               const ScannedType& type) {
    std::vector<ScannedMethod> methods;
    bool window_private = false;
    bool window_assign = false;
    for (std::size_t i = type.body_token + 1; i < tokens.size(); ++i) {
        const auto& tok = tokens[i];
        if (tok.depth == 0) break;  // body closed
        if (tok.depth != 1) continue;
        if (!tok.ident) {
            if (tok.text == ";" || tok.text == "{" || tok.text == "}") {
                window_private = false;
                window_assign = false;
            } else if (tok.text == "=") {
                window_assign = true;
            }
            continue;
        }
        if (tok.text == "private") window_private = true;
        const bool annotated = i > 0 && tokens[i - 1].text == "@";
        const bool called = i + 1 < tokens.size() && tokens[i + 1].text == "(" &&
                            tokens[i + 1].depth == 1;
        if (called && !annotated && !window_assign && tok.text != type.name) {
            methods.push_back({tok.text, window_private});
            window_private = false;
        }
    }
    return methods;
}

inline std::vector<std::filesystem::path> java_files(const std::filesystem::path& dir,
                                                     std::vector<std::string>& warnings) {
    std::vector<std::filesystem::path> files;
    std::error_code ec;
    if (!std::filesystem::exists(dir, ec)) {
        warnings.push_back("directory not found: " + dir.string());
        return files;
    }
    for (auto it = std::filesystem::recursive_directory_iterator(
             dir, std::filesystem::directory_options::skip_permission_denied, ec);
         it != std::filesystem::recursive_directory_iterator(); it.increment(ec)) {
        if (ec) {
            warnings.push_back("walk error: " + ec.message());
            break;
        }
        if (it->is_regular_file(ec) && it->path().extension() == ".java") {
            files.push_back(it->path());
        }
    }
    std::sort(files.begin(), files.end());
    return files;
}

inline std::optional<std::string> read_file(const std::filesystem::path& path,
                                            std::vector<std::string>& warnings) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        warnings.push_back("unreadable file skipped: " + path.string());
        return std::nullopt;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace detail

// Third-graph scan: top-level types grouped by package, violating when
// declared public.
inline ScanReport scan_java_tree(const std::filesystem::path& dir) {
    ScanReport report;
    for (const auto& path : detail::java_files(dir, report.warnings)) {
        const auto source = detail::read_file(path, report.warnings);
        if (!source) continue;
        ++report.files_scanned;
        const auto file = detail::scan_java_source(*source);
        const std::string region = file.package.empty() ? "(default)" : file.package;
        for (const auto& type : file.types) {
            report.codebase.regions[region].push_back({type.name, type.is_public});
        }
    }
    return report;
}

// Second-graph scan: each top-level type is a region, its methods are nodes,
// hidden only when declared private.
inline ScanReport function_graph_scan(const std::filesystem::path& dir) {
    ScanReport report;
    for (const auto& path : detail::java_files(dir, report.warnings)) {
        const auto source = detail::read_file(path, report.warnings);
        if (!source) continue;
        ++report.files_scanned;
        const auto tokens = detail::java_tokens(strip_java(*source));
        const auto file = detail::scan_java_source(*source);
        for (const auto& type : file.types) {
            const std::string region =
                file.package.empty() ? type.name : file.package + "." + type.name;
            auto& entries = report.codebase.regions[region];  // empty types still get a region
            if (type.body_token >= tokens.size()) continue;
            for (const auto& method : detail::scan_methods(tokens, type)) {
                entries.push_back({method.name, !method.is_private});
            }
        }
    }
    return report;
}

}  // namespace encap
