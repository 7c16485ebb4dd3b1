#include "tensorcomm/constructions.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

namespace tensorcomm {

int AbelianGroup::order() const {
    int o = 1;
    for (int f : invariant_factors) o *= f;
    return o;
}

int AbelianGroup::add(int x, int y) const {
    int r = 0, mult = 1;
    for (int f : invariant_factors) {
        int xd = x % f, yd = y % f;
        x /= f;
        y /= f;
        r += ((xd + yd) % f) * mult;
        mult *= f;
    }
    return r;
}

int AbelianGroup::neg(int x) const {
    int r = 0, mult = 1;
    for (int f : invariant_factors) {
        int xd = x % f;
        x /= f;
        r += ((f - xd) % f) * mult;
        mult *= f;
    }
    return r;
}

AbelianGroup AbelianGroup::parse(const std::string& spec) {
    AbelianGroup g;
    std::size_t pos = 0;
    while (pos < spec.size()) {
        if (spec[pos] != 'Z') throw ParseError("group spec: expected 'Z' in " + spec);
        ++pos;
        std::size_t start = pos;
        while (pos < spec.size() && std::isdigit(static_cast<unsigned char>(spec[pos]))) ++pos;
        if (start == pos) throw ParseError("group spec: expected modulus in " + spec);
        int modulus = std::stoi(spec.substr(start, pos - start));
        if (modulus < 2) throw ParseError("group spec: modulus must be >= 2");
        int power = 1;
        if (pos < spec.size() && spec[pos] == '^') {
            ++pos;
            start = pos;
            while (pos < spec.size() && std::isdigit(static_cast<unsigned char>(spec[pos]))) ++pos;
            if (start == pos) throw ParseError("group spec: expected exponent in " + spec);
            power = std::stoi(spec.substr(start, pos - start));
            if (power < 1) throw ParseError("group spec: exponent must be >= 1");
        }
        for (int i = 0; i < power; ++i) g.invariant_factors.push_back(modulus);
        if (pos < spec.size()) {
            if (spec[pos] != 'x') throw ParseError("group spec: expected 'x' in " + spec);
            ++pos;
        }
    }
    if (g.invariant_factors.empty()) throw ParseError("empty group spec");
    return g;
}

bool NofProblem::is_permutation() const {
    const int n = alphabet_size;
    if (static_cast<int>(accepting.size()) != n * n) return false;
    std::set<std::pair<int, int>> xy, yz, xz;
    for (const Triple& t : accepting) {
        if (t.a < 0 || t.a >= n || t.b < 0 || t.b >= n || t.c < 0 || t.c >= n) return false;
        if (!xy.insert({t.a, t.b}).second) return false;
        if (!yz.insert({t.b, t.c}).second) return false;
        if (!xz.insert({t.a, t.c}).second) return false;
    }
    return true;
}

void LatinSquare::validate() const {
    if (n < 1 || static_cast<int>(entries.size()) != n)
        throw ParseError("latin square has wrong number of rows");
    for (const auto& row : entries) {
        if (static_cast<int>(row.size()) != n) throw ParseError("latin square row length mismatch");
        std::set<int> seen(row.begin(), row.end());
        if (static_cast<int>(seen.size()) != n || *seen.begin() < 0 || *seen.rbegin() >= n)
            throw ParseError("latin square row is not a permutation");
    }
    for (int col = 0; col < n; ++col) {
        std::set<int> seen;
        for (int row = 0; row < n; ++row) seen.insert(entries[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)]);
        if (static_cast<int>(seen.size()) != n)
            throw ParseError("latin square column is not a permutation");
    }
}

Tensor3 matmul_tensor(int n, int m, int p) {
    if (n < 1 || m < 1 || p < 1) throw OutOfBounds("matmul dimensions must be >= 1");
    std::vector<Triple> support;
    support.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(m) *
                    static_cast<std::size_t>(p));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < p; ++k) support.push_back({i * m + j, j * p + k, k * n + i});
    return make_tensor({n * m, m * p, p * n}, support);
}

Tensor3 group_structure_tensor(const AbelianGroup& g) {
    const int o = g.order();
    std::vector<Triple> support;
    support.reserve(static_cast<std::size_t>(o) * static_cast<std::size_t>(o));
    for (int x = 0; x < o; ++x)
        for (int y = 0; y < o; ++y) support.push_back({x, y, g.neg(g.add(x, y))});
    return make_tensor({o, o, o}, support);
}

ColoredTensor nof_embed(const NofProblem& p) {
    const int n = p.alphabet_size;
    ColoredTensor ct;
    ct.promise = matmul_tensor(n, n, n);
    for (const Triple& t : p.accepting) {
        if (t.a < 0 || t.a >= n || t.b < 0 || t.b >= n || t.c < 0 || t.c >= n)
            throw OutOfBounds("accepting triple out of alphabet");
        ct.green.push_back({t.a * n + t.b, t.b * n + t.c, t.c * n + t.a});
    }
    ct.green = sorted_unique(ct.green);
    return ct;
}

NofProblem eval_problem(const AbelianGroup& g) {
    const int o = g.order();
    NofProblem p;
    p.alphabet_size = o;
    for (int x = 0; x < o; ++x)
        for (int y = 0; y < o; ++y) p.accepting.push_back({x, y, g.neg(g.add(x, y))});
    p.accepting = sorted_unique(p.accepting);
    return p;
}

ColoredTensor eq_problem(const AbelianGroup& g) {
    const int o = g.order();
    ColoredTensor ct;
    ct.promise = group_structure_tensor(g);
    for (int x = 0; x < o; ++x) ct.green.push_back({x, x, g.neg(g.add(x, x))});
    ct.green = sorted_unique(ct.green);
    return ct;
}

NofProblem latin_to_problem(const LatinSquare& l) {
    l.validate();
    NofProblem p;
    p.alphabet_size = l.n;
    for (int x = 0; x < l.n; ++x)
        for (int y = 0; y < l.n; ++y)
            p.accepting.push_back({x, y, l.entries[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]});
    p.accepting = sorted_unique(p.accepting);
    return p;
}

LatinSquare problem_to_latin(const NofProblem& p) {
    if (!p.is_permutation()) throw NotPermutationProblem("not a permutation problem");
    LatinSquare l;
    l.n = p.alphabet_size;
    l.entries.assign(static_cast<std::size_t>(l.n), std::vector<int>(static_cast<std::size_t>(l.n), -1));
    for (const Triple& t : p.accepting)
        l.entries[static_cast<std::size_t>(t.a)][static_cast<std::size_t>(t.b)] = t.c;
    l.validate();
    return l;
}

namespace {

void enumerate_latin_rec(int n, int row, int col, LatinSquare& sq,
                         std::vector<std::vector<bool>>& col_used,
                         std::vector<LatinSquare>& out) {
    if (row == n) {
        out.push_back(sq);
        return;
    }
    if (col == n) {
        enumerate_latin_rec(n, row + 1, 0, sq, col_used, out);
        return;
    }
    std::vector<bool> row_used(static_cast<std::size_t>(n), false);
    for (int c = 0; c < col; ++c)
        row_used[static_cast<std::size_t>(sq.entries[static_cast<std::size_t>(row)][static_cast<std::size_t>(c)])] = true;
    for (int v = 0; v < n; ++v) {
        if (row_used[static_cast<std::size_t>(v)] || col_used[static_cast<std::size_t>(col)][static_cast<std::size_t>(v)])
            continue;
        sq.entries[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] = v;
        col_used[static_cast<std::size_t>(col)][static_cast<std::size_t>(v)] = true;
        enumerate_latin_rec(n, row, col + 1, sq, col_used, out);
        col_used[static_cast<std::size_t>(col)][static_cast<std::size_t>(v)] = false;
    }
}

} // namespace

std::vector<LatinSquare> enumerate_latin(int n, int order_cap) {
    if (n < 1) throw OutOfBounds("latin order must be >= 1");
    if (n > order_cap) throw TooLarge("latin order above enumeration cap");
    LatinSquare sq;
    sq.n = n;
    sq.entries.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
    std::vector<std::vector<bool>> col_used(static_cast<std::size_t>(n),
                                            std::vector<bool>(static_cast<std::size_t>(n), false));
    std::vector<LatinSquare> out;
    enumerate_latin_rec(n, 0, 0, sq, col_used, out);
    return out;
}

HypergraphResult communication_hypergraph(const NofProblem& p) {
    if (!p.is_permutation()) throw NotPermutationProblem("not a permutation problem");
    const int n = p.alphabet_size;
    const int v = n * n; // vertices = accepting triples
    // vertex index by lex order of accepting triples
    std::map<Triple, int> vertex;
    for (std::size_t i = 0; i < p.accepting.size(); ++i)
        vertex[p.accepting[i]] = static_cast<int>(i);
    // completion lookups
    std::map<std::pair<int, int>, Triple> by_xy, by_yz, by_xz;
    for (const Triple& t : p.accepting) {
        by_xy[{t.a, t.b}] = t;
        by_yz[{t.b, t.c}] = t;
        by_xz[{t.a, t.c}] = t;
    }
    std::vector<Triple> edges;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
                edges.push_back({vertex.at(by_xy.at({x, y})), vertex.at(by_yz.at({y, z})),
                                 vertex.at(by_xz.at({x, z}))});
    HypergraphResult r;
    r.adjacency = make_tensor({v, v, v}, edges);
    // relabeling onto <N,N,N>: vertex t=(x,y,z) goes to (x,y) on axis 1,
    // (y,z) on axis 2, (z,x) on axis 3
    for (int axis = 0; axis < 3; ++axis)
        r.witness.perms[static_cast<std::size_t>(axis)].resize(static_cast<std::size_t>(v));
    for (const Triple& t : p.accepting) {
        int idx = vertex.at(t);
        r.witness.perms[0][static_cast<std::size_t>(idx)] = t.a * n + t.b;
        r.witness.perms[1][static_cast<std::size_t>(idx)] = t.b * n + t.c;
        r.witness.perms[2][static_cast<std::size_t>(idx)] = t.c * n + t.a;
    }
    return r;
}

IntermediateEmbedding intermediate_embedding(int n) {
    if (n < 1) throw OutOfBounds("n must be >= 1");
    const int v = n * n;
    auto enc = [n](int u, int w) { return u * n + w; };
    auto mod = [n](int x) { return ((x % n) + n) % n; };
    std::vector<Triple> support;
    support.reserve(static_cast<std::size_t>(v) * static_cast<std::size_t>(v));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d)
                    support.push_back({enc(mod(a + b), b), enc(c, mod(d + c)),
                                       enc(mod(b + d), mod(a + c))});
    IntermediateEmbedding r;
    r.renamed_t3 = make_tensor({v, v, v}, support);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                r.injection.push_back({Triple{enc(i, j), enc(j, k), enc(k, i)},
                                       {mod(i - j), j, j, mod(k - j)}});
    return r;
}

} // namespace tensorcomm
