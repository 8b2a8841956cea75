#pragma once

// Test-local oracle implementations, written independently of the library
// internals they validate.  Everything here recomputes results from first
// principles (brute-force enumeration, literal window rules, textbook
// elimination, the reduced bar cochain complex) using only the small parsing
// and path primitives, so that agreement with the optimized library code is
// meaningful evidence.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hochcomp/algebra.hpp"
#include "hochcomp/bar.hpp"
#include "hochcomp/cohomology.hpp"
#include "hochcomp/comparison.hpp"
#include "hochcomp/field.hpp"
#include "hochcomp/parse.hpp"
#include "hochcomp/quiver.hpp"
#include "hochcomp/resolution.hpp"

namespace oracle {

using hochcomp::Arrow;
using hochcomp::BarTensor;
using hochcomp::MonomialAlgebra;
using hochcomp::Path;
using hochcomp::Quiver;
using hochcomp::QuiverInput;
using hochcomp::Rational;

// --------------------------------------------------------------------------
// Walk and ideal oracles
// --------------------------------------------------------------------------

/** Every path of length <= max_len, trivial paths included, by direct walk
 *  extension over the arrow list. */
inline std::vector<Path> all_walks(const Quiver& q, int max_len) {
    std::vector<Path> out;
    std::vector<Path> frontier;
    for (int v = 0; v < q.num_vertices(); ++v) frontier.push_back(Path{v, {}});
    for (int len = 0; len <= max_len; ++len) {
        out.insert(out.end(), frontier.begin(), frontier.end());
        std::vector<Path> next;
        for (const Path& p : frontier) {
            int end = hochcomp::path_target(q, p);
            for (int a = 0; a < q.num_arrows(); ++a)
                if (q.arrow(a).source == end) {
                    Path e = p;
                    e.arrows.push_back(a);
                    next.push_back(std::move(e));
                }
        }
        frontier = std::move(next);
    }
    return out;
}

/** Does r occur as a consecutive factor of w at offset o?  Hand-rolled scan. */
inline bool factor_at(const Path& w, const Path& r, int o) {
    if (o < 0 || o + r.length() > w.length()) return false;
    for (int i = 0; i < r.length(); ++i)
        if (w.arrows[static_cast<std::size_t>(o + i)] != r.arrows[static_cast<std::size_t>(i)])
            return false;
    return true;
}

inline bool in_ideal(const Path& w, const std::vector<Path>& rels) {
    for (const Path& r : rels)
        for (int o = 0; o + r.length() <= w.length(); ++o)
            if (factor_at(w, r, o)) return true;
    return false;
}

/** Basis oracle: all walks up to max_len that contain no relation factor. */
inline std::vector<Path> relation_free_walks(const Quiver& q, const std::vector<Path>& rels,
                                             int max_len) {
    std::vector<Path> out;
    for (Path& p : all_walks(q, max_len))
        if (!in_ideal(p, rels)) out.push_back(std::move(p));
    std::sort(out.begin(), out.end());
    return out;
}

// --------------------------------------------------------------------------
// Greedy-chain oracle (literal window rule)
// --------------------------------------------------------------------------

struct Occ {
    int offset = 0;
    int rel = 0;
    int end = 0;
};

/** All relation occurrences fully inside w, sorted by offset. */
inline std::vector<Occ> occurrences(const Path& w, const std::vector<Path>& rels) {
    std::vector<Occ> out;
    for (std::size_t r = 0; r < rels.size(); ++r)
        for (int o = 0; o + rels[r].length() <= w.length(); ++o)
            if (factor_at(w, rels[r], o))
                out.push_back(Occ{o, static_cast<int>(r), o + rels[r].length()});
    std::sort(out.begin(), out.end(), [](const Occ& a, const Occ& b) {
        return std::pair(a.offset, a.rel) < std::pair(b.offset, b.rel);
    });
    return out;
}

/** The left-to-right greedy chain, run to exhaustion, by the literal rule:
 *  start with the occurrence at offset 0; the second occurrence is the
 *  earliest one starting strictly inside the first; each later occurrence is
 *  the earliest one starting in [end of the one before last, end of last). */
inline std::vector<Occ> greedy_chain(const Path& w, const std::vector<Path>& rels) {
    std::vector<Occ> occs = occurrences(w, rels);
    std::vector<Occ> chain;
    for (const Occ& o : occs)
        if (o.offset == 0) {
            chain.push_back(o);
            break;
        }
    if (chain.empty()) return chain;
    for (;;) {
        int lo, hi;
        if (chain.size() == 1) {
            lo = chain[0].offset + 1;
            hi = chain[0].end;  // exclusive: strictly inside the first
        } else {
            lo = chain[chain.size() - 2].end;
            hi = chain.back().end;
        }
        const Occ* pick = nullptr;
        for (const Occ& o : occs)
            if (o.offset >= lo && o.offset < hi) {
                pick = &o;
                break;
            }
        if (!pick) break;
        chain.push_back(*pick);
    }
    return chain;
}

/** Membership rule for the degree-n support set. */
inline bool is_ap_support(const Quiver& q, const std::vector<Path>& rels, const Path& w, int n) {
    (void)q;
    if (n == 0) return w.length() == 0;
    if (n == 1) return w.length() == 1;
    std::vector<Occ> chain = greedy_chain(w, rels);
    return static_cast<int>(chain.size()) == n - 1 && !chain.empty() &&
           chain.back().end == w.length();
}

/** The full degree-n support set among walks of length <= len_cap. */
inline std::set<Path> ap_supports(const Quiver& q, const std::vector<Path>& rels, int n,
                                  int len_cap) {
    std::set<Path> out;
    for (const Path& w : all_walks(q, len_cap))
        if (is_ap_support(q, rels, w, n)) out.insert(w);
    return out;
}

// --------------------------------------------------------------------------
// Quiver reversal oracle
// --------------------------------------------------------------------------

/** The opposite presentation, built through the text format so only the
 *  public parser is involved.  Arrow ids are preserved by line order. */
inline QuiverInput reversed_input(const QuiverInput& in) {
    std::ostringstream txt;
    txt << "vertices: " << in.quiver.num_vertices() << "\n";
    for (const Arrow& a : in.quiver.arrows())
        txt << "arrow: " << a.label << " : " << (a.target + 1) << " -> " << (a.source + 1) << "\n";
    for (const Path& r : in.relations) {
        txt << "relation:";
        for (auto it = r.arrows.rbegin(); it != r.arrows.rend(); ++it)
            txt << ' ' << in.quiver.arrow(*it).label;
        txt << "\n";
    }
    return hochcomp::parse_quiver_text(txt.str());
}

/** The same path read backwards, as a path of the reversed quiver. */
inline Path reverse_path(const Quiver& original, const Path& p) {
    Path out;
    out.base = hochcomp::path_target(original, p);
    out.arrows.assign(p.arrows.rbegin(), p.arrows.rend());
    return out;
}

// --------------------------------------------------------------------------
// Dense elimination oracle (textbook forward elimination over the rationals)
// --------------------------------------------------------------------------

inline int rank_bruteforce(std::vector<std::vector<Rational>> m) {
    int rank = 0;
    std::size_t cols = m.empty() ? 0 : m[0].size();
    for (std::size_t c = 0; c < cols; ++c) {
        std::size_t pivot = m.size();
        for (std::size_t r = static_cast<std::size_t>(rank); r < m.size(); ++r)
            if (m[r][c] != 0) {
                pivot = r;
                break;
            }
        if (pivot == m.size()) continue;
        std::swap(m[static_cast<std::size_t>(rank)], m[pivot]);
        const std::vector<Rational>& prow = m[static_cast<std::size_t>(rank)];
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == static_cast<std::size_t>(rank) || m[r][c] == 0) continue;
            Rational f = m[r][c] / prow[c];
            for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * prow[k];
        }
        ++rank;
    }
    return rank;
}

// --------------------------------------------------------------------------
// Reduced bar-complex cohomology oracle (for small algebras)
// --------------------------------------------------------------------------

namespace detail {

/** Chained tuples of nontrivial basis paths, lengths exactly n. */
inline std::vector<std::vector<int>> chained_tuples(const MonomialAlgebra& A, int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> nontrivial;
    for (int i = 0; i < A.dim(); ++i)
        if (!A.basis_path(i).trivial()) nontrivial.push_back(i);
    std::vector<int> cur;
    auto rec = [&](auto&& self, int remaining) -> void {
        if (remaining == 0) {
            out.push_back(cur);
            return;
        }
        for (int i : nontrivial) {
            if (!cur.empty() && A.target_of(cur.back()) != A.source_of(i)) continue;
            cur.push_back(i);
            self(self, remaining - 1);
            cur.pop_back();
        }
    };
    rec(rec, n);
    return out;
}

struct BarCochainBasis {
    // (tuple index, value basis id), tuple parallel to value
    std::vector<std::pair<int, int>> elems;
    std::map<std::pair<int, int>, int> index;
    std::vector<std::vector<int>> tuples;
};

inline BarCochainBasis bar_cochain_basis(const MonomialAlgebra& A, int n) {
    BarCochainBasis b;
    if (n == 0) {
        // E-bimodule maps E -> A: one basis element per (i,i)-parallel basis path
        b.tuples.push_back({});
        for (int v = 0; v < A.dim(); ++v)
            if (A.source_of(v) == A.target_of(v)) {
                b.index[{0, v}] = static_cast<int>(b.elems.size());
                b.elems.emplace_back(0, v);
            }
        return b;
    }
    b.tuples = chained_tuples(A, n);
    for (std::size_t t = 0; t < b.tuples.size(); ++t) {
        int s = A.source_of(b.tuples[t].front());
        int e = A.target_of(b.tuples[t].back());
        for (int v = 0; v < A.dim(); ++v)
            if (A.source_of(v) == s && A.target_of(v) == e) {
                b.index[{static_cast<int>(t), v}] = static_cast<int>(b.elems.size());
                b.elems.emplace_back(static_cast<int>(t), v);
            }
    }
    return b;
}

}  // namespace detail

/** dim HH^0 .. dim HH^max_n computed on the reduced bar cochain complex with
 *  the standard alternating-sum differential, ranks by textbook elimination. */
inline std::vector<int> hh_dims_bar(const MonomialAlgebra& A, int max_n) {
    using detail::bar_cochain_basis;
    std::vector<detail::BarCochainBasis> bases;
    for (int n = 0; n <= max_n + 1; ++n) bases.push_back(bar_cochain_basis(A, n));

    // delta[n]: C^n -> C^{n+1}, rows indexed by target basis, cols by source.
    std::vector<std::vector<std::vector<Rational>>> delta;
    for (int n = 0; n <= max_n; ++n) {
        const auto& src = bases[static_cast<std::size_t>(n)];
        const auto& dst = bases[static_cast<std::size_t>(n + 1)];
        std::vector<std::vector<Rational>> M(
            dst.elems.size(), std::vector<Rational>(src.elems.size(), Rational(0)));
        // for every source basis element f = (T, v), expand (delta f) over all
        // target tuples U = (m0..mn) by the alternating face sum
        for (std::size_t ci = 0; ci < src.elems.size(); ++ci) {
            auto [ti, v] = src.elems[ci];
            const std::vector<int>& T = src.tuples[static_cast<std::size_t>(ti)];
            for (std::size_t tj = 0; tj < dst.tuples.size(); ++tj) {
                const std::vector<int>& U = dst.tuples[tj];
                // first face: m0 * f(m1..mn)
                if (std::equal(U.begin() + 1, U.end(), T.begin(), T.end())) {
                    if (auto p = A.mul(U.front(), v)) {
                        auto row = dst.index.find({static_cast<int>(tj), *p});
                        if (row != dst.index.end())
                            M[static_cast<std::size_t>(row->second)][ci] += Rational(1);
                    }
                }
                // inner faces: (-1)^i f(.., m_{i-1} m_i, ..)
                for (int i = 1; i <= n; ++i) {
                    auto prod = A.mul(U[static_cast<std::size_t>(i - 1)],
                                      U[static_cast<std::size_t>(i)]);
                    if (!prod) continue;
                    std::vector<int> contracted;
                    contracted.reserve(U.size() - 1);
                    for (int k = 0; k < i - 1; ++k)
                        contracted.push_back(U[static_cast<std::size_t>(k)]);
                    contracted.push_back(*prod);
                    for (std::size_t k = static_cast<std::size_t>(i) + 1; k < U.size(); ++k)
                        contracted.push_back(U[k]);
                    if (contracted == T) {
                        auto row = dst.index.find({static_cast<int>(tj), v});
                        if (row != dst.index.end())
                            M[static_cast<std::size_t>(row->second)][ci] +=
                                Rational((i % 2 == 0) ? 1 : -1);
                    }
                }
                // last face: (-1)^{n+1} f(m0..m_{n-1}) * m_n
                if (std::equal(U.begin(), U.end() - 1, T.begin(), T.end())) {
                    if (auto p = A.mul(v, U.back())) {
                        auto row = dst.index.find({static_cast<int>(tj), *p});
                        if (row != dst.index.end())
                            M[static_cast<std::size_t>(row->second)][ci] +=
                                Rational((n % 2 == 0) ? -1 : 1);
                    }
                }
            }
        }
        delta.push_back(std::move(M));
    }

    std::vector<int> dims;
    std::vector<int> ranks;
    for (int n = 0; n <= max_n; ++n)
        ranks.push_back(rank_bruteforce(delta[static_cast<std::size_t>(n)]));
    for (int n = 0; n <= max_n; ++n) {
        int cn = static_cast<int>(bases[static_cast<std::size_t>(n)].elems.size());
        int kernel = cn - ranks[static_cast<std::size_t>(n)];
        int image = (n == 0) ? 0 : ranks[static_cast<std::size_t>(n - 1)];
        dims.push_back(kernel - image);
    }
    return dims;
}

// --------------------------------------------------------------------------
// Center oracle
// --------------------------------------------------------------------------

/** dim of the solution space of x*a = a*x against every basis element x. */
inline int center_dim_bruteforce(const MonomialAlgebra& A) {
    int d = A.dim();
    std::vector<std::vector<Rational>> rows;
    for (int x = 0; x < d; ++x) {
        // one block of equations per result basis id
        std::vector<std::vector<Rational>> block(
            static_cast<std::size_t>(d), std::vector<Rational>(static_cast<std::size_t>(d)));
        for (int j = 0; j < d; ++j) {
            if (auto k = A.mul(x, j)) block[static_cast<std::size_t>(*k)][static_cast<std::size_t>(j)] += 1;
            if (auto k = A.mul(j, x)) block[static_cast<std::size_t>(*k)][static_cast<std::size_t>(j)] -= 1;
        }
        for (auto& r : block)
            if (std::any_of(r.begin(), r.end(), [](const Rational& c) { return c != 0; }))
                rows.push_back(std::move(r));
    }
    if (rows.empty()) return d;
    return d - rank_bruteforce(std::move(rows));
}

// --------------------------------------------------------------------------
// Exhaustive bar-tensor enumeration (nontrivial middles)
// --------------------------------------------------------------------------

/** Every valid tensor of the given degree whose middles are nontrivial basis
 *  paths and whose three-part total length is at most total_cap. */
inline std::vector<BarTensor> all_tensors(const MonomialAlgebra& A, int degree, int total_cap) {
    std::vector<BarTensor> out;
    std::vector<int> mids;
    auto rec = [&](auto&& self, int used) -> void {
        if (static_cast<int>(mids.size()) == degree) {
            int start = A.source_of(mids.front());
            int end = A.target_of(mids.back());
            for (int l = 0; l < A.dim(); ++l) {
                if (A.target_of(l) != start) continue;
                int lu = used + A.basis_path(l).length();
                if (lu > total_cap) continue;
                for (int r = 0; r < A.dim(); ++r) {
                    if (A.source_of(r) != end) continue;
                    if (lu + A.basis_path(r).length() > total_cap) continue;
                    out.push_back(BarTensor{l, mids, r});
                }
            }
            return;
        }
        for (int m = 0; m < A.dim(); ++m) {
            const Path& p = A.basis_path(m);
            if (p.trivial()) continue;
            if (!mids.empty() && A.target_of(mids.back()) != A.source_of(m)) continue;
            if (used + p.length() > total_cap) continue;
            mids.push_back(m);
            self(self, used + p.length());
            mids.pop_back();
        }
    };
    if (degree > 0 && degree <= total_cap) rec(rec, 0);
    return out;
}

// --------------------------------------------------------------------------
// Per-tensor chain-map check for the bar-to-minimal comparison morphism
// --------------------------------------------------------------------------

template <class S>
inline bool g_commutes_on(hochcomp::Comparison<S>& C, const BarTensor& t) {
    const MonomialAlgebra& A = C.resolution().algebra();
    int n = static_cast<int>(t.middles.size());
    hochcomp::BdzChain<S> lhs = C.apply_differential(n, C.G(n, t));
    hochcomp::BdzChain<S> rhs;
    for (const auto& [tt, sgn] : hochcomp::bar_boundary_terms(A, t)) {
        for (const auto& [key, c] : C.G(n - 1, tt))
            hochcomp::add_bdz_term(rhs, key, c * S(sgn));
    }
    return lhs == rhs;
}

// --------------------------------------------------------------------------
// Seeded random cochains
// --------------------------------------------------------------------------

template <class S>
inline hochcomp::Cochain<S> random_cochain(hochcomp::Resolution& R, int degree,
                                           std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto basis = hochcomp::hom_basis(R, degree);
    hochcomp::Cochain<S> f;
    f.degree = degree;
    std::uniform_int_distribution<int> coeff(-3, 3);
    for (const auto& b : basis) {
        int c = coeff(rng);
        if (c != 0) hochcomp::add_term(f.values[b.elem], b.value, S(c));
    }
    for (auto it = f.values.begin(); it != f.values.end();)
        it = it->second.empty() ? f.values.erase(it) : std::next(it);
    return f;
}

}  // namespace oracle
