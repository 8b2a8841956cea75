#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "hochcomp/algebra.hpp"
#include "hochcomp/common.hpp"
#include "hochcomp/quiver.hpp"

namespace hochcomp {

/** One relation occurrence inside a host path. */
struct ChainOcc {
    int offset = 0;
    int rel = 0;
    friend bool operator==(const ChainOcc&, const ChainOcc&) = default;
};

inline int occ_end(const MonomialAlgebra& A, const ChainOcc& o) {
    return o.offset + A.relations()[static_cast<std::size_t>(o.rel)].length();
}

/**
 * The relation occurring fully inside `host` at `offset`, if any.  Minimality
 * of the relation set forbids two relations starting at one offset of a common
 * host (one would divide the other), so the occurrence is unique.
 */
inline std::optional<ChainOcc> relation_starting_at(const MonomialAlgebra& A, const Path& host,
                                                    int offset) {
    std::optional<ChainOcc> found;
    const auto& rels = A.relations();
    for (int r = 0; r < static_cast<int>(rels.size()); ++r) {
        const Path& rp = rels[static_cast<std::size_t>(r)];
        if (offset + rp.length() > host.length()) continue;
        if (!matches_within(rp, host, offset)) continue;
        check_invariant(!found, "two relations occur at one offset of a common host");
        found = ChainOcc{offset, r};
    }
    return found;
}

/** The relation occurring fully inside `host` with its end at `end`, if any. */
inline std::optional<ChainOcc> relation_ending_at(const MonomialAlgebra& A, const Path& host,
                                                  int end) {
    std::optional<ChainOcc> found;
    const auto& rels = A.relations();
    for (int r = 0; r < static_cast<int>(rels.size()); ++r) {
        const Path& rp = rels[static_cast<std::size_t>(r)];
        int offset = end - rp.length();
        if (offset < 0 || end > host.length()) continue;
        if (!matches_within(rp, host, offset)) continue;
        check_invariant(!found, "two relations end at one position of a common host");
        found = ChainOcc{offset, r};
    }
    return found;
}

/**
 * Maximal left greedy chain of relation occurrences inside `host`, anchored at
 * a relation starting exactly at `offset`.  Empty when no relation starts
 * there.  Each later occurrence starts at the least admissible position: the
 * second strictly inside the span of the first, occurrence j+2 at or beyond
 * the end of occurrence j but before the end of occurrence j+1.  Stops after
 * `max_rels` occurrences when max_rels >= 0.
 */
inline std::vector<ChainOcc> greedy_chain_from(const MonomialAlgebra& A, const Path& host,
                                               int offset, int max_rels = -1) {
    std::vector<ChainOcc> chain;
    if (max_rels == 0) return chain;
    auto first = relation_starting_at(A, host, offset);
    if (!first) return chain;
    chain.push_back(*first);
    while (max_rels < 0 || static_cast<int>(chain.size()) < max_rels) {
        int lo, hi;
        if (chain.size() == 1) {
            lo = chain[0].offset + 1;
            hi = occ_end(A, chain[0]);
        } else {
            lo = occ_end(A, chain[chain.size() - 2]);
            hi = occ_end(A, chain.back());
        }
        std::optional<ChainOcc> next;
        for (int o = lo; o < hi && !next; ++o) next = relation_starting_at(A, host, o);
        if (!next) break;
        chain.push_back(*next);
    }
    return chain;
}

/**
 * Right-to-left greedy chain of `host`: mirror of greedy_chain_from run from
 * the far end, each occurrence chosen with the greatest admissible end.  The
 * result is reported left to right and must consist of exactly `expected`
 * occurrences with the leftmost starting at 0; the two-sided agreement is a
 * structural fact of these supports and is enforced, not assumed.
 */
inline std::vector<ChainOcc> op_chain_of(const MonomialAlgebra& A, const Path& host,
                                         int expected) {
    std::vector<ChainOcc> rev;
    auto first = relation_ending_at(A, host, host.length());
    check_invariant(first.has_value(), "support admits no relation ending at its end");
    rev.push_back(*first);
    while (static_cast<int>(rev.size()) < expected) {
        int hi, lo;  // candidate ends scanned downward from hi to lo inclusive
        if (rev.size() == 1) {
            hi = host.length() - 1;
            lo = rev[0].offset + 1;
        } else {
            hi = rev[rev.size() - 2].offset;
            lo = rev.back().offset + 1;
        }
        std::optional<ChainOcc> next;
        for (int e = hi; e >= lo && !next; --e) next = relation_ending_at(A, host, e);
        check_invariant(next.has_value(), "right-to-left chain of a support stalled early");
        rev.push_back(*next);
    }
    check_invariant(rev.back().offset == 0, "right-to-left chain does not reach the left end");
    std::reverse(rev.begin(), rev.end());
    return rev;
}

/**
 * Basis element of the minimal resolution in one homological degree:
 * degree 0 = vertices, degree 1 = arrows, degree 2 = relations, and degree
 * n >= 3 the paths carrying a complete left greedy chain of n-1 relations.
 */
struct APElement {
    int degree = 0;
    Path support;
    std::vector<ChainOcc> left_chain;  // empty in degrees 0 and 1
    std::vector<ChainOcc> op_chain;    // same occurrences rebuilt right to left
};

/** Degree n-1 element embedded in a degree n element at `offset`. */
struct SubEntry {
    int offset = 0;
    int child = 0;  // index into the degree n-1 table
};

/**
 * One term of the differential: sign * left (x) child (x) right, with the raw
 * path complements cut out of the parent support.  Either complement may lie
 * in the ideal; consumers reduce into the algebra and drop dead terms.
 */
struct DiffTerm {
    int sign = 1;
    Path left;
    int child = 0;
    Path right;
};

/**
 * The minimal projective bimodule resolution of a monomial algebra, built
 * degree by degree.  Tables are grown lazily by ensure_degree and every
 * derived datum (sub-structure, differential) is computed when its degree is
 * built, so reads are const and safe to share across threads once the needed
 * degrees exist.  Degree growth itself is not thread-safe.
 */
class Resolution {
public:
    explicit Resolution(const MonomialAlgebra& A) : A_(&A) {}

    const MonomialAlgebra& algebra() const { return *A_; }

    void ensure_degree(int n) {
        while (static_cast<int>(tables_.size()) <= n) build_next();
    }

    int size(int n) {
        ensure_degree(n);
        return static_cast<int>(tables_[static_cast<std::size_t>(n)].elems.size());
    }

    const std::vector<APElement>& table(int n) {
        ensure_degree(n);
        return tables_[static_cast<std::size_t>(n)].elems;
    }

    const APElement& element(int n, int i) {
        return table(n)[static_cast<std::size_t>(i)];
    }

    std::optional<int> index_of(int n, const Path& support) {
        ensure_degree(n);
        const auto& idx = tables_[static_cast<std::size_t>(n)].index;
        auto it = idx.find(support);
        if (it == idx.end()) return std::nullopt;
        return it->second;
    }

    const std::vector<SubEntry>& sub(int n, int i) {
        ensure_degree(n);
        return tables_[static_cast<std::size_t>(n)].subs[static_cast<std::size_t>(i)];
    }

    const std::vector<DiffTerm>& differential(int n, int i) {
        ensure_degree(n);
        return tables_[static_cast<std::size_t>(n)].diffs[static_cast<std::size_t>(i)];
    }

    std::string label(int n, int i) {
        const APElement& e = element(n, i);
        std::string s = path_to_string(A_->quiver(), e.support);
        if (n >= 2) {
            s += '@';
            for (std::size_t k = 0; k < e.left_chain.size(); ++k) {
                if (k) s += ',';
                s += std::to_string(e.left_chain[k].offset);
            }
        }
        return s;
    }

    /** Find (degree, index) of a path that is a resolution basis support. */
    std::optional<std::pair<int, int>> locate(const Path& support) {
        int degree;
        if (support.trivial()) {
            degree = 0;
        } else if (support.length() == 1) {
            degree = 1;
        } else {
            auto chain = greedy_chain_from(*A_, support, 0);
            if (chain.empty() || occ_end(*A_, chain.back()) != support.length())
                return std::nullopt;
            degree = static_cast<int>(chain.size()) + 1;
        }
        auto idx = index_of(degree, support);
        if (!idx) return std::nullopt;
        return std::make_pair(degree, *idx);
    }

private:
    struct DegreeTable {
        std::vector<APElement> elems;
        std::map<Path, int> index;
        std::vector<std::vector<SubEntry>> subs;
        std::vector<std::vector<DiffTerm>> diffs;
    };

    void build_next() {
        const MonomialAlgebra& A = *A_;
        const Quiver& q = A.quiver();
        int n = static_cast<int>(tables_.size());
        DegreeTable t;

        if (n == 0) {
            for (int v = 0; v < q.num_vertices(); ++v)
                t.elems.push_back(APElement{0, trivial_path(v), {}, {}});
        } else if (n == 1) {
            for (int a = 0; a < q.num_arrows(); ++a)
                t.elems.push_back(APElement{1, Path{q.arrow(a).source, {a}}, {}, {}});
        } else if (n == 2) {
            for (int r = 0; r < static_cast<int>(A.relations().size()); ++r)
                t.elems.push_back(APElement{2, A.relations()[static_cast<std::size_t>(r)],
                                            {ChainOcc{0, r}}, {ChainOcc{0, r}}});
        } else {
            // Extend each degree n-1 support on the right by one overhanging
            // relation occurrence, keeping exactly those extensions whose left
            // greedy chain is the parent chain plus the new occurrence.
            std::map<Path, APElement> found;
            for (const APElement& parent : tables_[static_cast<std::size_t>(n - 1)].elems) {
                const Path& w = parent.support;
                const auto& c = parent.left_chain;
                int lo = c.size() == 1 ? c[0].offset + 1 : occ_end(A, c[c.size() - 2]);
                for (int o = lo; o < w.length(); ++o) {
                    check_invariant(!relation_starting_at(A, w, o),
                                    "support carries a relation beyond its own chain");
                    for (int r = 0; r < static_cast<int>(A.relations().size()); ++r) {
                        const Path& rp = A.relations()[static_cast<std::size_t>(r)];
                        if (o + rp.length() <= w.length()) continue;
                        if (!matches_within(rp, w, o)) continue;
                        Path ext = w;
                        for (int k = w.length() - o; k < rp.length(); ++k)
                            ext.arrows.push_back(rp.arrows[static_cast<std::size_t>(k)]);
                        std::vector<ChainOcc> chain = c;
                        chain.push_back(ChainOcc{o, r});
                        if (greedy_chain_from(A, ext, 0) != chain) continue;
                        APElement el{n, ext, chain, op_chain_of(A, ext, n - 1)};
                        auto [it, fresh] = found.emplace(std::move(ext), std::move(el));
                        (void)it;
                        check_invariant(fresh, "one support reached through two chains");
                    }
                }
            }
            t.elems.reserve(found.size());
            for (auto& [p, el] : found) {
                (void)p;
                t.elems.push_back(std::move(el));
            }
        }

        for (std::size_t i = 0; i < t.elems.size(); ++i)
            t.index.emplace(t.elems[i].support, static_cast<int>(i));
        tables_.push_back(std::move(t));
        fill_subs(n);
        fill_diffs(n);
    }

    void fill_subs(int n) {
        const MonomialAlgebra& A = *A_;
        DegreeTable& t = tables_[static_cast<std::size_t>(n)];
        t.subs.resize(t.elems.size());
        if (n == 0) return;
        const DegreeTable& below = tables_[static_cast<std::size_t>(n - 1)];

        for (std::size_t i = 0; i < t.elems.size(); ++i) {
            const Path& w = t.elems[i].support;
            std::vector<SubEntry>& entries = t.subs[i];

            if (n == 1) {
                int s = path_source(w);
                int tt = path_target(A.quiver(), w);
                entries.push_back(SubEntry{0, lookup(below, trivial_path(s))});
                entries.push_back(SubEntry{1, lookup(below, trivial_path(tt))});
            } else if (n == 2) {
                for (int o = 0; o < w.length(); ++o) {
                    Path arrow = subpath(A.quiver(), w, o, 1);
                    entries.push_back(SubEntry{o, lookup(below, arrow)});
                }
            } else {
                for (int o = 0; o < w.length(); ++o) {
                    auto chain = greedy_chain_from(A, w, o, n - 2);
                    if (static_cast<int>(chain.size()) != n - 2) continue;
                    int end = occ_end(A, chain.back());
                    Path span = subpath(A.quiver(), w, o, end - o);
                    int child = lookup(below, span);
                    const auto& stored = below.elems[static_cast<std::size_t>(child)].left_chain;
                    check_invariant(stored.size() == chain.size(),
                                    "embedded support has a chain of unexpected length");
                    for (std::size_t k = 0; k < chain.size(); ++k)
                        check_invariant(stored[k].rel == chain[k].rel &&
                                            stored[k].offset == chain[k].offset - o,
                                        "embedded support disagrees with its ambient chain");
                    entries.push_back(SubEntry{o, child});
                }
            }

            check_invariant(!entries.empty(), "degree >= 1 support without embedded structure");
            check_invariant(entries.front().offset == 0, "first embedded element not at offset 0");
            {
                const SubEntry& last = entries.back();
                int clen = below.elems[static_cast<std::size_t>(last.child)].support.length();
                check_invariant(last.offset + clen == w.length(),
                                "last embedded element does not reach the right end");
            }
            if (n % 2 == 1)
                check_invariant(entries.size() == 2,
                                "odd-degree support with embedded count != 2");
            if (n % 2 == 0 && n >= 2) {
                // Consecutive embedded elements interlock: the right end of
                // one is the left end of the next, as positioned elements one
                // degree further down.
                for (std::size_t k = 0; k + 1 < entries.size(); ++k) {
                    const auto& sub_k = below.subs[static_cast<std::size_t>(entries[k].child)];
                    const auto& sub_k1 = below.subs[static_cast<std::size_t>(entries[k + 1].child)];
                    check_invariant(sub_k.size() == 2 && sub_k1.size() == 2,
                                    "odd-degree children with embedded count != 2");
                    check_invariant(sub_k[1].child == sub_k1[0].child,
                                    "consecutive embedded elements do not share a boundary element");
                    check_invariant(entries[k].offset + sub_k[1].offset ==
                                        entries[k + 1].offset + sub_k1[0].offset,
                                    "consecutive embedded elements do not interlock positionally");
                }
            }
        }
    }

    void fill_diffs(int n) {
        const MonomialAlgebra& A = *A_;
        const Quiver& q = A.quiver();
        DegreeTable& t = tables_[static_cast<std::size_t>(n)];
        t.diffs.resize(t.elems.size());
        if (n == 0) return;
        const DegreeTable& below = tables_[static_cast<std::size_t>(n - 1)];

        for (std::size_t i = 0; i < t.elems.size(); ++i) {
            const Path& w = t.elems[i].support;
            const std::vector<SubEntry>& entries = t.subs[i];
            std::vector<DiffTerm>& terms = t.diffs[i];
            auto child_len = [&](const SubEntry& e) {
                return below.elems[static_cast<std::size_t>(e.child)].support.length();
            };
            if (n % 2 == 1) {
                const SubEntry& first = entries.front();
                const SubEntry& last = entries.back();
                terms.push_back(DiffTerm{+1, subpath(q, w, 0, last.offset), last.child,
                                         trivial_path(path_target(q, w))});
                int flen = child_len(first);
                terms.push_back(DiffTerm{-1, trivial_path(path_source(w)), first.child,
                                         subpath(q, w, flen, w.length() - flen)});
            } else {
                for (const SubEntry& e : entries) {
                    int end = e.offset + child_len(e);
                    terms.push_back(DiffTerm{+1, subpath(q, w, 0, e.offset), e.child,
                                             subpath(q, w, end, w.length() - end)});
                }
            }
        }
    }

    static int lookup(const DegreeTable& t, const Path& p) {
        auto it = t.index.find(p);
        check_invariant(it != t.index.end(), "embedded support missing from its table");
        return it->second;
    }

    const MonomialAlgebra* A_;
    std::vector<DegreeTable> tables_;
};

struct CheckReport {
    bool ok = true;
    std::string detail;
    long long checked = 0;
};

/**
 * Verify d_{n-1} compose d_n = 0 for 2 <= n <= max_degree, plus vanishing of
 * the multiplication map applied to d_1, with all complements reduced into
 * the algebra (terms whose complement meets the ideal drop out).
 */
inline CheckReport verify_complex(Resolution& R, int max_degree) {
    const MonomialAlgebra& A = R.algebra();
    CheckReport rep;

    for (int i = 0; i < R.size(1) && rep.ok; ++i) {
        std::map<int, long long> acc;
        for (const DiffTerm& t : R.differential(1, i)) {
            auto l = A.basis_id(t.left);
            auto r = A.basis_id(t.right);
            if (!l || !r) continue;
            auto lv = A.mul(*l, A.unit_id(R.element(0, t.child).support.base));
            if (!lv) continue;
            auto full = A.mul(*lv, *r);
            if (!full) continue;
            acc[*full] += t.sign;
        }
        std::erase_if(acc, [](const auto& kv) { return kv.second == 0; });
        ++rep.checked;
        if (!acc.empty()) {
            rep.ok = false;
            rep.detail = "multiplication map does not annihilate the image of " + R.label(1, i);
        }
    }

    for (int n = 2; n <= max_degree && rep.ok; ++n) {
        for (int i = 0; i < R.size(n) && rep.ok; ++i) {
            std::map<std::tuple<int, int, int>, long long> acc;
            for (const DiffTerm& outer : R.differential(n, i)) {
                auto lo = A.basis_id(outer.left);
                auto ro = A.basis_id(outer.right);
                if (!lo || !ro) continue;
                for (const DiffTerm& inner : R.differential(n - 1, outer.child)) {
                    auto li = A.basis_id(inner.left);
                    auto ri = A.basis_id(inner.right);
                    if (!li || !ri) continue;
                    auto l = A.mul(*lo, *li);
                    if (!l) continue;
                    auto r = A.mul(*ri, *ro);
                    if (!r) continue;
                    acc[{*l, inner.child, *r}] += outer.sign * inner.sign;
                }
            }
            std::erase_if(acc, [](const auto& kv) { return kv.second == 0; });
            ++rep.checked;
            if (!acc.empty()) {
                rep.ok = false;
                rep.detail = "composite differential does not vanish on " + R.label(n, i);
            }
        }
    }
    return rep;
}

} // namespace hochcomp
