#pragma once

#include <cctype>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hochcomp/quiver.hpp"

namespace hochcomp {

struct QuiverInput {
    Quiver quiver;
    std::vector<Path> relations;
};

namespace detail {

inline std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

inline bool valid_label(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

inline std::optional<int> parse_int(const std::string& s) {
    if (s.empty()) return std::nullopt;
    std::size_t pos = 0;
    int v = 0;
    try {
        v = std::stoi(s, &pos);
    } catch (...) {
        return std::nullopt;
    }
    if (pos != s.size()) return std::nullopt;
    return v;
}

} // namespace detail

/**
 * Quiver file format:
 *
 *   # comment (also allowed at end of line)
 *   vertices: <n>
 *   arrow: <label> : <src> -> <tgt>
 *   relation: <label> <label> ...
 *
 * Vertices are written 1-based.  Errors carry the offending line number.
 */
inline QuiverInput parse_quiver_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;

    int num_vertices = -1;
    std::vector<Arrow> arrows;
    // Relations as label sequences; resolved once the quiver is complete.
    std::vector<std::pair<int, std::vector<std::string>>> raw_relations;

    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::vector<std::string> toks = detail::split_ws(line);
        if (toks.empty()) continue;

        if (toks[0] == "vertices:") {
            if (num_vertices != -1) throw input_error(lineno, "duplicate 'vertices:' line");
            if (toks.size() != 2) throw input_error(lineno, "expected 'vertices: <n>'");
            auto n = detail::parse_int(toks[1]);
            if (!n || *n <= 0) throw input_error(lineno, "vertex count must be a positive integer");
            num_vertices = *n;
        } else if (toks[0] == "arrow:") {
            if (num_vertices == -1)
                throw input_error(lineno, "'vertices:' must come before arrows");
            // arrow: <label> : <src> -> <tgt>
            if (toks.size() != 6 || toks[2] != ":" || toks[4] != "->")
                throw input_error(lineno, "expected 'arrow: <label> : <src> -> <tgt>'");
            if (!detail::valid_label(toks[1]))
                throw input_error(lineno, "bad arrow label '" + toks[1] +
                                              "' (want [A-Za-z_][A-Za-z0-9_]*)");
            auto src = detail::parse_int(toks[3]);
            auto tgt = detail::parse_int(toks[5]);
            if (!src || !tgt || *src < 1 || *src > num_vertices || *tgt < 1 || *tgt > num_vertices)
                throw input_error(lineno, "arrow endpoints must be vertices in 1.." +
                                              std::to_string(num_vertices));
            arrows.push_back(Arrow{*src - 1, *tgt - 1, toks[1]});
        } else if (toks[0] == "relation:") {
            if (num_vertices == -1)
                throw input_error(lineno, "'vertices:' must come before relations");
            if (toks.size() < 3)
                throw input_error(lineno, "a relation needs at least two arrow labels");
            raw_relations.emplace_back(lineno, std::vector<std::string>(toks.begin() + 1, toks.end()));
        } else {
            throw input_error(lineno, "unrecognized directive '" + toks[0] + "'");
        }
    }

    if (num_vertices == -1) throw input_error("missing 'vertices:' line");

    Quiver quiver(num_vertices, arrows);

    std::vector<Path> relations;
    for (const auto& [rline, labels] : raw_relations) {
        Path p;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            auto id = quiver.arrow_id(labels[i]);
            if (!id) throw input_error(rline, "unknown arrow label '" + labels[i] + "'");
            if (i == 0) {
                p.base = quiver.arrow(*id).source;
            } else if (quiver.arrow(p.arrows.back()).target != quiver.arrow(*id).source) {
                throw input_error(rline, "arrows '" + labels[i - 1] + "' and '" + labels[i] +
                                             "' do not compose");
            }
            p.arrows.push_back(*id);
        }
        relations.push_back(std::move(p));
    }

    return QuiverInput{std::move(quiver), std::move(relations)};
}

/** Canonical rendering; parse -> print is a fixed point byte-for-byte. */
inline std::string canonical_text(const QuiverInput& input) {
    std::ostringstream out;
    out << "vertices: " << input.quiver.num_vertices() << "\n";
    for (const Arrow& a : input.quiver.arrows())
        out << "arrow: " << a.label << " : " << (a.source + 1) << " -> " << (a.target + 1) << "\n";
    for (const Path& r : input.relations) {
        out << "relation:";
        for (int id : r.arrows) out << ' ' << input.quiver.arrow(id).label;
        out << "\n";
    }
    return out.str();
}

/** Parse a printed path label: e<k> for a trivial path, else dotted labels. */
inline Path parse_path_label(const Quiver& q, const std::string& label) {
    if (label.empty()) throw input_error("empty path label");
    if (label[0] == 'e' && label.size() > 1 &&
        std::isdigit(static_cast<unsigned char>(label[1]))) {
        auto v = detail::parse_int(label.substr(1));
        if (v && *v >= 1 && *v <= q.num_vertices()) return trivial_path(*v - 1);
    }
    Path p;
    std::string tok;
    std::istringstream in(label);
    while (std::getline(in, tok, '.')) {
        auto id = q.arrow_id(tok);
        if (!id) throw input_error("unknown arrow label '" + tok + "' in path '" + label + "'");
        if (p.arrows.empty())
            p.base = q.arrow(*id).source;
        else if (q.arrow(p.arrows.back()).target != q.arrow(*id).source)
            throw input_error("path '" + label + "' does not compose");
        p.arrows.push_back(*id);
    }
    if (p.arrows.empty()) throw input_error("bad path label '" + label + "'");
    return p;
}

} // namespace hochcomp
