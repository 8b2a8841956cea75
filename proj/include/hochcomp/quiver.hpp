#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hochcomp/common.hpp"

namespace hochcomp {

struct Arrow {
    int source = -1;
    int target = -1;
    std::string label;
};

/**
 * A finite quiver: vertices 0..n-1 (printed 1-based), labeled arrows.
 * Loops and parallel arrows are allowed.
 */
class Quiver {
public:
    Quiver() = default;
    Quiver(int num_vertices, std::vector<Arrow> arrows)
        : num_vertices_(num_vertices), arrows_(std::move(arrows)) {
        if (num_vertices_ <= 0)
            throw input_error("quiver needs at least one vertex");
        for (std::size_t i = 0; i < arrows_.size(); ++i) {
            const Arrow& a = arrows_[i];
            if (a.source < 0 || a.source >= num_vertices_ ||
                a.target < 0 || a.target >= num_vertices_)
                throw input_error("arrow '" + a.label + "' has an endpoint outside 1.." +
                                  std::to_string(num_vertices_));
            if (a.label.empty())
                throw input_error("arrow labels must be nonempty");
            auto [it, fresh] = arrow_by_label_.emplace(a.label, static_cast<int>(i));
            if (!fresh)
                throw input_error("duplicate arrow label '" + a.label + "'");
        }
    }

    int num_vertices() const { return num_vertices_; }
    int num_arrows() const { return static_cast<int>(arrows_.size()); }
    const Arrow& arrow(int id) const { return arrows_[static_cast<std::size_t>(id)]; }
    const std::vector<Arrow>& arrows() const { return arrows_; }

    std::optional<int> arrow_id(const std::string& label) const {
        auto it = arrow_by_label_.find(label);
        if (it == arrow_by_label_.end()) return std::nullopt;
        return it->second;
    }

private:
    int num_vertices_ = 0;
    std::vector<Arrow> arrows_;
    std::map<std::string, int> arrow_by_label_;
};

/**
 * A directed path: a base vertex plus a sequence of composable arrow ids.
 * The base carries the source; it is what distinguishes the trivial paths.
 */
struct Path {
    int base = -1;
    std::vector<int> arrows;

    int length() const { return static_cast<int>(arrows.size()); }
    bool trivial() const { return arrows.empty(); }

    friend bool operator==(const Path&, const Path&) = default;

    // Global path order: by length, then arrow ids lexicographically, then
    // base vertex (which only separates trivial paths).
    friend std::strong_ordering operator<=>(const Path& a, const Path& b) {
        if (auto c = a.arrows.size() <=> b.arrows.size(); c != 0) return c;
        if (auto c = a.arrows <=> b.arrows; c != 0) return c;
        return a.base <=> b.base;
    }
};

struct PathHash {
    std::size_t operator()(const Path& p) const {
        std::size_t h = std::hash<int>()(p.base);
        for (int a : p.arrows)
            h = h * 1000003u + static_cast<std::size_t>(a) + 0x9e3779b9u;
        return h;
    }
};

inline Path trivial_path(int vertex) { return Path{vertex, {}}; }

inline int path_source(const Path& p) { return p.base; }

inline int path_target(const Quiver& q, const Path& p) {
    return p.trivial() ? p.base : q.arrow(p.arrows.back()).target;
}

/** Vertex sitting at position i along p, for 0 <= i <= length. */
inline int vertex_at(const Quiver& q, const Path& p, int i) {
    return i == 0 ? p.base : q.arrow(p.arrows[static_cast<std::size_t>(i) - 1]).target;
}

inline bool path_valid(const Quiver& q, const Path& p) {
    if (p.base < 0 || p.base >= q.num_vertices()) return false;
    int at = p.base;
    for (int a : p.arrows) {
        if (a < 0 || a >= q.num_arrows()) return false;
        if (q.arrow(a).source != at) return false;
        at = q.arrow(a).target;
    }
    return true;
}

/** Concatenation p * q, defined iff target(p) == source(q). */
inline std::optional<Path> compose(const Quiver& quiver, const Path& p, const Path& q) {
    if (path_target(quiver, p) != path_source(q)) return std::nullopt;
    Path r = p;
    r.arrows.insert(r.arrows.end(), q.arrows.begin(), q.arrows.end());
    return r;
}

/** Factor of p starting at integer offset with the given arrow length. */
inline Path subpath(const Quiver& q, const Path& p, int offset, int length) {
    Path r;
    r.base = vertex_at(q, p, offset);
    r.arrows.assign(p.arrows.begin() + offset, p.arrows.begin() + offset + length);
    return r;
}

/**
 * All offsets at which u occurs as a factor of w.  For trivial u these are the
 * positions along w sitting at u's vertex.  Offsets index the |w|+1 positions.
 */
inline std::vector<int> find_occurrences(const Quiver& q, const Path& u, const Path& w) {
    std::vector<int> out;
    if (u.trivial()) {
        for (int i = 0; i <= w.length(); ++i)
            if (vertex_at(q, w, i) == u.base) out.push_back(i);
        return out;
    }
    for (int o = 0; o + u.length() <= w.length(); ++o) {
        bool hit = true;
        for (int k = 0; k < u.length(); ++k)
            if (w.arrows[static_cast<std::size_t>(o + k)] != u.arrows[static_cast<std::size_t>(k)]) {
                hit = false;
                break;
            }
        if (hit) out.push_back(o);
    }
    return out;
}

/** Matches u against w at offset o, comparing only the overlap inside w. */
inline bool matches_within(const Path& u, const Path& w, int o) {
    int overlap = std::min(u.length(), w.length() - o);
    for (int k = 0; k < overlap; ++k)
        if (w.arrows[static_cast<std::size_t>(o + k)] != u.arrows[static_cast<std::size_t>(k)])
            return false;
    return true;
}

/** Render: trivial paths as e<k> (1-based vertex), others as dotted labels. */
inline std::string path_to_string(const Quiver& q, const Path& p) {
    if (p.trivial()) return "e" + std::to_string(p.base + 1);
    std::string s;
    for (std::size_t i = 0; i < p.arrows.size(); ++i) {
        if (i) s += '.';
        s += q.arrow(p.arrows[i]).label;
    }
    return s;
}

} // namespace hochcomp
