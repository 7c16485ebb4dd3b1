#include "tensorcomm/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <optional>
#include <unordered_set>

namespace tensorcomm {

int Coloring::color_of(const Triple& t) const {
    auto it = std::lower_bound(assignment.begin(), assignment.end(), t,
                               [](const auto& e, const Triple& x) { return e.first < x; });
    if (it == assignment.end() || it->first != t) throw NotGreen("triple not in coloring");
    return it->second;
}

namespace {

// Shared scaffolding for the cube-closure checks: per-axis-index buckets of
// promise support triples.
struct SupportIndex {
    const Tensor3& promise;
    std::array<std::vector<std::vector<int>>, 3> buckets; // axis -> index -> support positions

    explicit SupportIndex(const Tensor3& p) : promise(p) {
        for (int axis = 0; axis < 3; ++axis)
            buckets[static_cast<std::size_t>(axis)].resize(
                static_cast<std::size_t>(p.axis_size(axis)));
        for (std::size_t pos = 0; pos < p.support.size(); ++pos) {
            const Triple& t = p.support[pos];
            buckets[0][static_cast<std::size_t>(t.a)].push_back(static_cast<int>(pos));
            buckets[1][static_cast<std::size_t>(t.b)].push_back(static_cast<int>(pos));
            buckets[2][static_cast<std::size_t>(t.c)].push_back(static_cast<int>(pos));
        }
    }
};

// A partial independent set with incremental cube-closure maintenance.
struct PartialSet {
    const Tensor3& promise;
    const SupportIndex& index;
    std::array<std::vector<bool>, 3> used;
    std::unordered_set<std::uint64_t> members;
    std::vector<Triple> triples;

    PartialSet(const Tensor3& p, const SupportIndex& idx) : promise(p), index(idx) {
        for (int axis = 0; axis < 3; ++axis)
            used[static_cast<std::size_t>(axis)].assign(
                static_cast<std::size_t>(p.axis_size(axis)), false);
    }

    bool in_cube(const Triple& t, const Triple& extra) const {
        auto ok = [&](int axis, int v) {
            return used[static_cast<std::size_t>(axis)][static_cast<std::size_t>(v)] ||
                   v == extra[axis];
        };
        return ok(0, t.a) && ok(1, t.b) && ok(2, t.c);
    }

    // Adding t keeps the set independent iff t's coordinates are fresh and no
    // support triple enters the cube without being t or a member.
    bool can_add(const Triple& t) const {
        if (used[0][static_cast<std::size_t>(t.a)] || used[1][static_cast<std::size_t>(t.b)] ||
            used[2][static_cast<std::size_t>(t.c)])
            return false;
        for (int axis = 0; axis < 3; ++axis) {
            for (int pos : index.buckets[static_cast<std::size_t>(axis)]
                                        [static_cast<std::size_t>(t[axis])]) {
                const Triple& s = promise.support[static_cast<std::size_t>(pos)];
                if (s == t) continue;
                if (in_cube(s, t) && !members.count(encode_triple(promise, s))) return false;
            }
        }
        return true;
    }

    void add(const Triple& t) {
        used[0][static_cast<std::size_t>(t.a)] = true;
        used[1][static_cast<std::size_t>(t.b)] = true;
        used[2][static_cast<std::size_t>(t.c)] = true;
        members.insert(encode_triple(promise, t));
        triples.push_back(t);
    }

    void remove(const Triple& t) {
        used[0][static_cast<std::size_t>(t.a)] = false;
        used[1][static_cast<std::size_t>(t.b)] = false;
        used[2][static_cast<std::size_t>(t.c)] = false;
        members.erase(encode_triple(promise, t));
        triples.pop_back();
    }
};

} // namespace

bool is_independent_set(const ColoredTensor& t, const std::vector<Triple>& s) {
    std::vector<Triple> sorted = sorted_unique(s);
    if (!is_subset(sorted, t.green)) throw NotGreen("set is not a subset of the green terms");
    std::array<std::vector<bool>, 3> used;
    for (int axis = 0; axis < 3; ++axis)
        used[static_cast<std::size_t>(axis)].assign(
            static_cast<std::size_t>(t.promise.axis_size(axis)), false);
    for (const Triple& x : sorted)
        for (int axis = 0; axis < 3; ++axis) {
            auto ref = used[static_cast<std::size_t>(axis)].begin() + x[axis];
            if (*ref) return false; // not a permutation of an identity tensor
            *ref = true;
        }
    std::unordered_set<std::uint64_t> members;
    members.reserve(sorted.size() * 2);
    for (const Triple& x : sorted) members.insert(encode_triple(t.promise, x));
    for (const Triple& x : t.promise.support) {
        if (used[0][static_cast<std::size_t>(x.a)] && used[1][static_cast<std::size_t>(x.b)] &&
            used[2][static_cast<std::size_t>(x.c)] &&
            !members.count(encode_triple(t.promise, x)))
            return false;
    }
    return true;
}

namespace {

// pairwise incompatibility used only for variable ordering
std::vector<int> conflict_degrees(const ColoredTensor& t) {
    const auto& g = t.green;
    std::vector<int> deg(g.size(), 0);
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = i + 1; j < g.size(); ++j) {
            bool conflict = g[i].a == g[j].a || g[i].b == g[j].b || g[i].c == g[j].c;
            if (!conflict) {
                try {
                    conflict = !is_independent_set(t, {g[i], g[j]});
                } catch (const NotGreen&) {
                    conflict = true;
                }
            }
            if (conflict) {
                ++deg[i];
                ++deg[j];
            }
        }
    return deg;
}

std::vector<Triple> degree_ordered_green(const ColoredTensor& t) {
    auto deg = conflict_degrees(t);
    std::vector<std::size_t> order(t.green.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return deg[i] > deg[j]; });
    std::vector<Triple> out;
    out.reserve(order.size());
    for (std::size_t i : order) out.push_back(t.green[i]);
    return out;
}

void alpha_search(const std::vector<Triple>& cand, std::size_t from, PartialSet& current,
                  std::vector<Triple>& best) {
    if (current.triples.size() > best.size()) best = current.triples;
    for (std::size_t i = from; i < cand.size(); ++i) {
        if (current.triples.size() + (cand.size() - i) <= best.size()) return;
        if (!current.can_add(cand[i])) continue;
        current.add(cand[i]);
        alpha_search(cand, i + 1, current, best);
        current.remove(cand[i]);
    }
}

} // namespace

std::pair<int, IndependentSet> alpha_exact(const ColoredTensor& t, int limit) {
    if (static_cast<int>(t.green.size()) > limit)
        throw TooLarge("green set exceeds alpha_exact limit");
    if (t.green.empty()) return {0, IndependentSet{}};
    SupportIndex index(t.promise);
    PartialSet current(t.promise, index);
    std::vector<Triple> best;
    auto cand = degree_ordered_green(t);
    alpha_search(cand, 0, current, best);
    IndependentSet s{sorted_unique(best)};
    return {static_cast<int>(s.triples.size()), s};
}

IndependentSet greedy_alpha(const ColoredTensor& t) {
    SupportIndex index(t.promise);
    PartialSet current(t.promise, index);
    for (const Triple& g : t.green)
        if (current.can_add(g)) current.add(g);
    IndependentSet s{sorted_unique(current.triples)};
    if (!is_independent_set(t, s.triples)) throw VerificationFailed("greedy_alpha certificate");
    return s;
}

namespace {

Coloring coloring_from_classes(const ColoredTensor& t,
                               const std::vector<std::vector<Triple>>& classes) {
    Coloring c;
    for (std::size_t i = 0; i < classes.size(); ++i)
        for (const Triple& x : classes[i]) c.assignment.push_back({x, static_cast<int>(i)});
    std::sort(c.assignment.begin(), c.assignment.end());
    c.num_colors = static_cast<int>(classes.size());
    return c;
}

// DFS k-colorability; terms assigned in the given order, smallest class id
// first, a single fresh class allowed per step. With terms in lex order this
// yields the lexicographically least k-coloring when one exists.
std::optional<Coloring> color_with_k(const ColoredTensor& t, const std::vector<Triple>& order,
                                     int k, const SupportIndex& index) {
    std::vector<std::unique_ptr<PartialSet>> classes;
    std::vector<int> assigned(order.size(), -1);
    std::size_t pos = 0;
    // iterative DFS with explicit choice stack
    std::vector<int> choice(order.size(), 0);
    while (true) {
        if (pos == order.size()) {
            std::vector<std::vector<Triple>> out(classes.size());
            for (std::size_t i = 0; i < order.size(); ++i)
                out[static_cast<std::size_t>(assigned[i])].push_back(order[i]);
            return coloring_from_classes(t, out);
        }
        bool advanced = false;
        int limit = std::min<int>(static_cast<int>(classes.size()) + 1, k);
        for (int c = choice[pos]; c < limit; ++c) {
            if (c == static_cast<int>(classes.size()))
                classes.push_back(nullptr); // fresh class created lazily below
            if (!classes[static_cast<std::size_t>(c)])
                classes[static_cast<std::size_t>(c)] =
                    std::make_unique<PartialSet>(t.promise, index);
            if (classes[static_cast<std::size_t>(c)]->can_add(order[pos])) {
                classes[static_cast<std::size_t>(c)]->add(order[pos]);
                assigned[pos] = c;
                choice[pos] = c + 1;
                ++pos;
                if (pos < order.size()) choice[pos] = 0;
                advanced = true;
                break;
            }
        }
        // drop a fresh class that was speculatively created but not used
        while (!classes.empty() && (!classes.back() || classes.back()->triples.empty()))
            classes.pop_back();
        if (advanced) continue;
        // backtrack
        if (pos == 0) return std::nullopt;
        --pos;
        int c = assigned[pos];
        classes[static_cast<std::size_t>(c)]->remove(order[pos]);
        assigned[pos] = -1;
        while (!classes.empty() && classes.back()->triples.empty()) classes.pop_back();
    }
}

} // namespace

std::pair<int, Coloring> chi_exact(const ColoredTensor& t, int limit) {
    if (static_cast<int>(t.green.size()) > limit)
        throw TooLarge("green set exceeds chi_exact limit");
    if (t.green.empty()) return {0, Coloring{}};
    SupportIndex index(t.promise);
    auto [alpha, witness] = alpha_exact(t, limit);
    (void)witness;
    int lb = static_cast<int>((t.green.size() + static_cast<std::size_t>(alpha) - 1) /
                              static_cast<std::size_t>(alpha));
    Coloring ub_coloring = greedy_chi(t);
    int ub = ub_coloring.num_colors;
    auto deg_order = degree_ordered_green(t);
    int optimal = ub;
    for (int k = lb; k < ub; ++k) {
        if (color_with_k(t, deg_order, k, index)) {
            optimal = k;
            break;
        }
    }
    // lex-least witness at the optimum: lex term order, smallest color first
    auto witness_coloring = color_with_k(t, t.green, optimal, index);
    if (!witness_coloring) throw VerificationFailed("chi_exact internal inconsistency");
    if (!verify_coloring(t, *witness_coloring)) throw VerificationFailed("chi_exact witness");
    return {optimal, *witness_coloring};
}

Coloring greedy_chi(const ColoredTensor& t) {
    SupportIndex index(t.promise);
    std::vector<std::unique_ptr<PartialSet>> classes;
    std::vector<std::vector<Triple>> out;
    for (const Triple& g : t.green) {
        bool placed = false;
        for (std::size_t c = 0; c < classes.size(); ++c)
            if (classes[c]->can_add(g)) {
                classes[c]->add(g);
                out[c].push_back(g);
                placed = true;
                break;
            }
        if (!placed) {
            classes.push_back(std::make_unique<PartialSet>(t.promise, index));
            classes.back()->add(g);
            out.push_back({g});
        }
    }
    Coloring c = coloring_from_classes(t, out);
    if (!verify_coloring(t, c)) throw VerificationFailed("greedy_chi certificate");
    return c;
}

bool verify_coloring(const ColoredTensor& t, const Coloring& c) {
    if (t.green.empty()) return c.assignment.empty() && c.num_colors == 0;
    std::vector<Triple> covered;
    covered.reserve(c.assignment.size());
    std::vector<std::vector<Triple>> classes(static_cast<std::size_t>(c.num_colors));
    for (const auto& [triple, color] : c.assignment) {
        if (color < 0 || color >= c.num_colors) return false;
        covered.push_back(triple);
        classes[static_cast<std::size_t>(color)].push_back(triple);
    }
    if (sorted_unique(covered) != t.green || covered.size() != t.green.size()) return false;
    for (const auto& cls : classes)
        if (!cls.empty() && !is_independent_set(t, cls)) return false;
    return true;
}

Coloring coloring_from_symmetry(const ColoredTensor& t, const IndependentSet& s,
                                const AutomorphismSampler& sampler, std::uint64_t seed,
                                const SymmetryColoringOptions& opts) {
    if (!is_independent_set(t, s.triples))
        throw VerificationFailed("seed set is not independent");
    const std::size_t g = t.green.size();
    if (g == 0) return Coloring{};
    if (s.triples.empty()) throw VerificationFailed("seed independent set is empty");
    const double ratio = static_cast<double>(g) / static_cast<double>(s.triples.size());
    const int K = static_cast<int>(
        std::ceil(opts.constant * ratio * std::log(std::max<double>(static_cast<double>(g), 2.0))));
    std::mt19937_64 rng(seed);
    std::vector<std::unordered_set<std::uint64_t>> translates;
    for (int batch = 0; batch < opts.max_batches; ++batch) {
        translates.clear();
        translates.reserve(static_cast<std::size_t>(K));
        for (int i = 0; i < K; ++i) {
            Automorphism sigma = sampler(rng);
            std::unordered_set<std::uint64_t> image;
            image.reserve(s.triples.size() * 2);
            for (const Triple& x : s.triples)
                image.insert(encode_triple(
                    t.promise, Triple{sigma.perms[0][static_cast<std::size_t>(x.a)],
                                      sigma.perms[1][static_cast<std::size_t>(x.b)],
                                      sigma.perms[2][static_cast<std::size_t>(x.c)]}));
            translates.push_back(std::move(image));
        }
        bool covered = true;
        for (const Triple& x : t.green) {
            std::uint64_t code = encode_triple(t.promise, x);
            bool hit = false;
            for (const auto& tr : translates)
                if (tr.count(code)) {
                    hit = true;
                    break;
                }
            if (!hit) {
                covered = false;
                break;
            }
        }
        if (!covered) continue;
        // color by the least covering translate, then compact color ids
        std::vector<int> raw(g, -1);
        for (std::size_t i = 0; i < g; ++i) {
            std::uint64_t code = encode_triple(t.promise, t.green[i]);
            for (int j = 0; j < K; ++j)
                if (translates[static_cast<std::size_t>(j)].count(code)) {
                    raw[i] = j;
                    break;
                }
        }
        std::vector<int> remap(static_cast<std::size_t>(K), -1);
        int next = 0;
        for (int j = 0; j < K; ++j)
            if (std::find(raw.begin(), raw.end(), j) != raw.end())
                remap[static_cast<std::size_t>(j)] = next++;
        Coloring c;
        for (std::size_t i = 0; i < g; ++i)
            c.assignment.push_back({t.green[i], remap[static_cast<std::size_t>(raw[i])]});
        c.num_colors = next;
        if (!verify_coloring(t, c))
            throw VerificationFailed("symmetry coloring failed properness check");
        return c;
    }
    throw CoverageTimeout("translates did not cover green; sampler likely not transitive");
}

std::vector<Triple> reconstruct_from_kappa(const KappaTriple& k, const Tensor3& promise) {
    auto color = [&](int axis, int idx) -> int {
        const auto& m = k.kappa[static_cast<std::size_t>(axis)];
        auto it = m.find(idx);
        return it == m.end() ? -1 : it->second;
    };
    std::vector<Triple> out;
    for (const Triple& t : promise.support) {
        int ca = color(0, t.a), cb = color(1, t.b), cc = color(2, t.c);
        if (ca >= 0 && ca == cb && cb == cc) out.push_back(t);
    }
    return out;
}

KappaTriple kappa_from_coloring(const ColoredTensor& t, const Coloring& c) {
    KappaTriple k;
    for (const Triple& g : t.green) {
        int color = c.color_of(g);
        for (int axis = 0; axis < 3; ++axis) {
            auto [it, inserted] = k.kappa[static_cast<std::size_t>(axis)].insert({g[axis], color});
            if (!inserted && it->second != color)
                throw NotPermutationProblem("axis index used by two green triples");
        }
    }
    return k;
}

} // namespace tensorcomm
