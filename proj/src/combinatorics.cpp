#include "tensorcomm/combinatorics.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace tensorcomm {

bool ApFreeSet::verify() const {
    std::set<int> doubled;
    for (int z : elements) doubled.insert(group.add(z, z));
    for (std::size_t i = 0; i < elements.size(); ++i)
        for (std::size_t j = i + 1; j < elements.size(); ++j)
            if (doubled.count(group.add(elements[i], elements[j]))) return false;
    return true;
}

bool CornerFreeSet::verify() const {
    std::set<std::pair<int, int>> present(pairs.begin(), pairs.end());
    for (const auto& [x, y] : pairs)
        for (int d = 1; d < n; ++d)
            if (present.count({(x + d) % n, y}) && present.count({x, (y + d) % n})) return false;
    return true;
}

namespace {

// new element e keeps S AP-free?
bool ap_can_add(const AbelianGroup& g, const std::set<int>& s, const std::multiset<int>& doubled,
                int e) {
    int e2 = g.add(e, e);
    for (int x : s) {
        int sum = g.add(x, e);
        if (doubled.count(sum) || sum == e2) return false; // x, ?, e progression
    }
    for (int x : s)
        for (int y : s)
            if (x < y && g.add(x, y) == e2) return false; // x, e, y progression
    return true;
}

void ap_search(const AbelianGroup& g, int from, std::set<int>& s, std::multiset<int>& doubled,
               std::vector<int>& current, std::vector<int>& best, int target) {
    if (current.size() > best.size()) best = current;
    if (target >= 0 && static_cast<int>(best.size()) >= target) return;
    const int order = g.order();
    for (int e = from; e < order; ++e) {
        if (current.size() + static_cast<std::size_t>(order - e) <= best.size()) return;
        if (!ap_can_add(g, s, doubled, e)) continue;
        s.insert(e);
        doubled.insert(g.add(e, e));
        current.push_back(e);
        ap_search(g, e + 1, s, doubled, current, best, target);
        if (target >= 0 && static_cast<int>(best.size()) >= target) return;
        current.pop_back();
        doubled.erase(doubled.find(g.add(e, e)));
        s.erase(e);
    }
}

} // namespace

ApFreeSet ap_free_exact(const AbelianGroup& g, int limit) {
    if (g.order() > limit) throw TooLarge("group too large for exhaustive AP-free search");
    std::set<int> s;
    std::multiset<int> doubled;
    std::vector<int> current, best;
    ap_search(g, 0, s, doubled, current, best, -1);
    int max_size = static_cast<int>(best.size());
    // second pass: first maximum set found in lex include-first order is the
    // lexicographically least witness
    s.clear();
    doubled.clear();
    current.clear();
    std::vector<int> witness;
    ap_search(g, 0, s, doubled, current, witness, max_size);
    ApFreeSet result{g, witness};
    if (!result.verify()) throw VerificationFailed("ap_free_exact witness");
    return result;
}

namespace {

std::vector<int> digit_sphere_candidate(int base, int digits, int digit_bound, int radius,
                                        int max_value) {
    std::vector<int> out;
    std::vector<int> digit(static_cast<std::size_t>(digits), 0);
    while (true) {
        int value = 0, norm = 0;
        for (int i = digits - 1; i >= 0; --i) {
            value = value * base + digit[static_cast<std::size_t>(i)];
            norm += digit[static_cast<std::size_t>(i)] * digit[static_cast<std::size_t>(i)];
        }
        if (norm == radius && value <= max_value) out.push_back(value);
        int i = 0;
        while (i < digits && digit[static_cast<std::size_t>(i)] == digit_bound - 1)
            digit[static_cast<std::size_t>(i++)] = 0;
        if (i == digits) break;
        ++digit[static_cast<std::size_t>(i)];
    }
    return out;
}

} // namespace

ApFreeSet behrend_set(int n) {
    if (n < 2) throw OutOfBounds("modulus must be >= 2");
    AbelianGroup zn{{n}};
    const int max_value = (n - 1) / 2;
    ApFreeSet best{zn, {0}};
    auto consider = [&](std::vector<int> elems) {
        std::sort(elems.begin(), elems.end());
        elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
        ApFreeSet cand{zn, elems};
        if (cand.elements.size() > best.elements.size() && cand.verify()) best = cand;
    };
    // no-carry digit sets: base 3 with digits {0,1} needs no sphere constraint
    {
        std::vector<int> stanley;
        for (int v = 0; v <= max_value; ++v) {
            int x = v;
            bool ok = true;
            while (x > 0) {
                if (x % 3 == 2) { ok = false; break; }
                x /= 3;
            }
            if (ok) stanley.push_back(v);
        }
        consider(std::move(stanley));
    }
    for (int base = 3; base <= 20; ++base) {
        int digit_bound = (base + 1) / 2; // digits in [0, ceil(base/2)), no carries
        int digits = 1;
        long long span = base;
        while (span <= max_value) {
            span *= base;
            ++digits;
        }
        int max_radius = digits * (digit_bound - 1) * (digit_bound - 1);
        for (int r = 0; r <= max_radius; ++r)
            consider(digit_sphere_candidate(base, digits, digit_bound, r, max_value));
    }
    if (!best.verify()) throw VerificationFailed("behrend_set candidate");
    return best;
}

CornerFreeSet corner_free_from_ap_free(const ApFreeSet& s) {
    if (s.group.invariant_factors.size() != 1)
        throw ParseError("corner-free map needs a cyclic group Z_N");
    const int n = s.group.invariant_factors[0];
    if (n % 2 == 0) throw EvenModulus("corner-free map requires odd modulus");
    std::set<int> members(s.elements.begin(), s.elements.end());
    CornerFreeSet c;
    c.n = n;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (members.count((x + 2 * y) % n)) c.pairs.push_back({x, y});
    std::sort(c.pairs.begin(), c.pairs.end());
    if (!c.verify()) throw VerificationFailed("corner-free construction");
    return c;
}

IndependentSet eval_indep_from_corner_free(const CornerFreeSet& c) {
    const int n = c.n;
    AbelianGroup zn{{n}};
    ColoredTensor ct = nof_embed(eval_problem(zn));
    IndependentSet s;
    for (const auto& [x, y] : c.pairs) {
        int z = ((-x - y) % n + n) % n;
        s.triples.push_back({x * n + y, y * n + z, z * n + x});
    }
    s.triples = sorted_unique(s.triples);
    if (!is_independent_set(ct, s.triples))
        throw VerificationFailed("induced Eval set is not independent (input not corner-free?)");
    return s;
}

AutomorphismSampler mm_translation_sampler(int n) {
    return [n](std::mt19937_64& rng) {
        std::uniform_int_distribution<int> dist(0, n - 1);
        int a = dist(rng), b = dist(rng), c = dist(rng);
        Automorphism sigma;
        for (auto& perm : sigma.perms) perm.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v) {
                sigma.perms[0][static_cast<std::size_t>(u * n + v)] = ((u + a) % n) * n + (v + b) % n;
                sigma.perms[1][static_cast<std::size_t>(u * n + v)] = ((u + b) % n) * n + (v + c) % n;
                sigma.perms[2][static_cast<std::size_t>(u * n + v)] = ((u + c) % n) * n + (v + a) % n;
            }
        return sigma;
    };
}

AutomorphismSampler eval_translation_sampler(int n) {
    return [n](std::mt19937_64& rng) {
        std::uniform_int_distribution<int> dist(0, n - 1);
        int a = dist(rng), b = dist(rng);
        int c = ((-a - b) % n + n) % n; // keeps x+y+z = 0 invariant
        Automorphism sigma;
        for (auto& perm : sigma.perms) perm.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v) {
                sigma.perms[0][static_cast<std::size_t>(u * n + v)] = ((u + a) % n) * n + (v + b) % n;
                sigma.perms[1][static_cast<std::size_t>(u * n + v)] = ((u + b) % n) * n + (v + c) % n;
                sigma.perms[2][static_cast<std::size_t>(u * n + v)] = ((u + c) % n) * n + (v + a) % n;
            }
        return sigma;
    };
}

AutomorphismSampler eq_translation_sampler(const AbelianGroup& g) {
    const int order = g.order();
    return [g, order](std::mt19937_64& rng) {
        std::uniform_int_distribution<int> dist(0, order - 1);
        int t = dist(rng);
        int minus2t = g.neg(g.add(t, t));
        Automorphism sigma;
        for (auto& perm : sigma.perms) perm.resize(static_cast<std::size_t>(order));
        for (int w = 0; w < order; ++w) {
            sigma.perms[0][static_cast<std::size_t>(w)] = g.add(w, t);
            sigma.perms[1][static_cast<std::size_t>(w)] = g.add(w, t);
            sigma.perms[2][static_cast<std::size_t>(w)] = g.add(w, minus2t);
        }
        return sigma;
    };
}

namespace {

std::vector<Triple> largest_color_class(const Coloring& c) {
    std::vector<std::vector<Triple>> classes(static_cast<std::size_t>(c.num_colors));
    for (const auto& [t, color] : c.assignment)
        classes[static_cast<std::size_t>(color)].push_back(t);
    std::size_t best = 0;
    for (std::size_t i = 1; i < classes.size(); ++i)
        if (classes[i].size() > classes[best].size()) best = i;
    return classes.empty() ? std::vector<Triple>{} : classes[best];
}

} // namespace

SubrankLowerResult mm_subrank_lower(int n, std::uint64_t seed) {
    if (n < 1) throw OutOfBounds("n must be >= 1");
    SubrankLowerResult result;
    if (n <= 4) {
        ColoredTensor ct = nof_embed(eval_problem(AbelianGroup{{std::max(n, 2)}}));
        if (n == 1) {
            result.indep.triples = {{0, 0, 0}};
            result.coloring_size = 1;
        } else {
            auto [k, coloring] = chi_exact(ct);
            result.coloring_size = k;
            result.indep.triples = sorted_unique(largest_color_class(coloring));
        }
    } else if (n % 2 == 0) {
        SubrankLowerResult inner = mm_subrank_lower(n - 1, seed);
        const int m = n - 1;
        result = inner;
        result.indep.triples.clear();
        for (const Triple& t : inner.indep.triples) {
            int i = t.a / m, j = t.a % m, k = t.b % m;
            result.indep.triples.push_back({i * n + j, j * n + k, k * n + i});
        }
        result.indep.triples = sorted_unique(result.indep.triples);
    } else {
        ApFreeSet ap = behrend_set(n);
        result.ap_free_size = static_cast<int>(ap.elements.size());
        CornerFreeSet cf = corner_free_from_ap_free(ap);
        ColoredTensor ct = nof_embed(eval_problem(AbelianGroup{{n}}));
        IndependentSet s;
        for (const auto& [x, y] : cf.pairs) {
            int z = ((-x - y) % n + n) % n;
            s.triples.push_back({x * n + y, y * n + z, z * n + x});
        }
        s.triples = sorted_unique(s.triples);
        Coloring coloring = coloring_from_symmetry(ct, s, eval_translation_sampler(n), seed);
        result.coloring_size = coloring.num_colors;
        result.indep.triples = sorted_unique(largest_color_class(coloring));
    }
    ColoredTensor mm = all_green(matmul_tensor(n, n, n));
    if (!is_independent_set(mm, result.indep.triples))
        throw VerificationFailed("subrank pipeline certificate");
    return result;
}

namespace {

Triple decode_mm_triple(const Triple& t, int n) {
    int i = t.a / n, j = t.a % n;
    int j2 = t.b / n, k = t.b % n;
    int k2 = t.c / n, i2 = t.c % n;
    if (j != j2 || k != k2 || i != i2) throw OutOfBounds("not a <N,N,N> support triple");
    return {i, j, k};
}

struct TriEdges {
    std::vector<std::vector<bool>> e01, e12, e02;

    explicit TriEdges(int n)
        : e01(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n), false)),
          e12(e01),
          e02(e01) {}
};

std::vector<Triple> scan_triangles(const TriEdges& g, int n) {
    std::vector<Triple> out;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (!g.e01[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]) continue;
            for (int c = 0; c < n; ++c)
                if (g.e12[static_cast<std::size_t>(b)][static_cast<std::size_t>(c)] &&
                    g.e02[static_cast<std::size_t>(a)][static_cast<std::size_t>(c)])
                    out.push_back({a, b, c});
        }
    return out;
}

TriEdges edges_of(const TriangleSystem& t) {
    TriEdges g(t.n);
    for (const Triple& x : t.triangles) {
        if (x.a < 0 || x.a >= t.n || x.b < 0 || x.b >= t.n || x.c < 0 || x.c >= t.n)
            throw OutOfBounds("triangle vertex out of range");
        if (g.e01[static_cast<std::size_t>(x.a)][static_cast<std::size_t>(x.b)] ||
            g.e12[static_cast<std::size_t>(x.b)][static_cast<std::size_t>(x.c)] ||
            g.e02[static_cast<std::size_t>(x.a)][static_cast<std::size_t>(x.c)])
            throw SharedEdge("listed triangles share an edge");
        g.e01[static_cast<std::size_t>(x.a)][static_cast<std::size_t>(x.b)] = true;
        g.e12[static_cast<std::size_t>(x.b)][static_cast<std::size_t>(x.c)] = true;
        g.e02[static_cast<std::size_t>(x.a)][static_cast<std::size_t>(x.c)] = true;
    }
    return g;
}

} // namespace

std::vector<Triple> enumerate_triangles(const TriangleSystem& t) {
    return scan_triangles(edges_of(t), t.n);
}

TriangleSystem rs_graph_from_indep(const IndependentSet& s, int n) {
    TriangleSystem t;
    t.n = n;
    for (const Triple& x : s.triples) t.triangles.push_back(decode_mm_triple(x, n));
    t.triangles = sorted_unique(t.triangles);
    TriEdges g = edges_of(t); // throws SharedEdge for non-independent input
    auto found = scan_triangles(g, n);
    if (found != t.triangles)
        throw ExtraTriangle("graph contains a triangle outside the listed collection");
    return t;
}

IndependentSet indep_from_rs_graph(const TriangleSystem& t) {
    TriEdges g = edges_of(t);
    auto found = scan_triangles(g, t.n);
    if (found != sorted_unique(t.triangles))
        throw NotAllTriangles("listed triangles are not exactly the triangles of the graph");
    IndependentSet s;
    for (const Triple& x : t.triangles)
        s.triples.push_back({x.a * t.n + x.b, x.b * t.n + x.c, x.c * t.n + x.a});
    s.triples = sorted_unique(s.triples);
    ColoredTensor mm = all_green(matmul_tensor(t.n, t.n, t.n));
    if (!is_independent_set(mm, s.triples))
        throw VerificationFailed("triangle system does not induce an independent set");
    return s;
}

} // namespace tensorcomm
