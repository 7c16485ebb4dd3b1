#include "tensorcomm/protocols.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <memory>

#include "tensorcomm/constructions.hpp"

namespace tensorcomm {

int Transcript::total_bits() const {
    int bits = 0;
    for (const auto& [player, msg] : messages) bits += static_cast<int>(msg.size());
    return bits;
}

std::string Transcript::concat() const {
    std::string s;
    for (const auto& [player, msg] : messages) s += msg;
    return s;
}

Transcript Transcript::tail(std::size_t from) const {
    Transcript t;
    if (from < messages.size())
        t.messages.assign(messages.begin() + static_cast<std::ptrdiff_t>(from), messages.end());
    return t;
}

namespace {

int bit_width(int k) {
    int w = 0;
    while ((1 << w) < k) ++w;
    return w;
}

std::string encode_bits(int value, int width) {
    std::string s(static_cast<std::size_t>(width), '0');
    for (int i = 0; i < width; ++i)
        if (value & (1 << (width - 1 - i))) s[static_cast<std::size_t>(i)] = '1';
    return s;
}

Transcript head(const Transcript& t, std::size_t count) {
    Transcript h;
    h.messages.assign(t.messages.begin(),
                      t.messages.begin() + static_cast<std::ptrdiff_t>(std::min(count, t.messages.size())));
    return h;
}

} // namespace

RunResult run_protocol(const Protocol& p, const Triple& input) {
    RunResult r;
    for (int round = 0; round < p.rounds; ++round) {
        int player = round % 3 + 1;
        auto msg = p.message(player, input[player - 1], r.transcript);
        if (!msg) return r; // early reject
        r.transcript.messages.push_back({player, *msg});
    }
    r.accepted = true;
    for (int player = 1; player <= 3 && r.accepted; ++player)
        r.accepted = p.accept(player, input[player - 1], r.transcript);
    return r;
}

VerifyResult exhaustive_run(const Protocol& p, const ColoredTensor& t) {
    VerifyResult v;
    v.correct = true;
    for (const Triple& x : t.promise.support) {
        RunResult r = run_protocol(p, x);
        bool green = std::binary_search(t.green.begin(), t.green.end(), x);
        if (r.accepted != green) v.correct = false;
        v.measured_cost = std::max(v.measured_cost, r.transcript.total_bits());
    }
    return v;
}

bool exhaustive_verify(const Protocol& p, const ColoredTensor& t) {
    VerifyResult v = exhaustive_run(p, t);
    return v.correct && v.measured_cost <= p.declared_cost;
}

Protocol compile_protocol(const ColoredTensor& t, const Coloring& c) {
    // injection problem: each axis index extends to at most one green triple
    auto completions = std::make_shared<std::array<std::map<int, Triple>, 3>>();
    for (const Triple& g : t.green)
        for (int axis = 0; axis < 3; ++axis)
            if (!(*completions)[static_cast<std::size_t>(axis)].emplace(g[axis], g).second)
                throw NotInjection("an axis index has two green completions");
    if (!verify_coloring(t, c)) throw ImproperColoring("coloring rejected by the verifier");
    auto colors = std::make_shared<std::map<Triple, int>>();
    for (const auto& [g, color] : c.assignment) (*colors)[g] = color;
    const int width = bit_width(std::max(c.num_colors, 1));
    Protocol p;
    p.rounds = 3;
    p.declared_cost = width;
    p.message = [completions, colors, width](int player, int index,
                                             const Transcript&) -> std::optional<std::string> {
        if (player != 1) return std::string{};
        const auto& mine = (*completions)[0];
        auto it = mine.find(index);
        if (it == mine.end()) return std::nullopt;
        return encode_bits(colors->at(it->second), width);
    };
    p.accept = [completions, colors, width](int player, int index, const Transcript& tr) {
        if (player == 1) return true; // player 1 wrote its own completion's color
        const auto& mine = (*completions)[static_cast<std::size_t>(player - 1)];
        auto it = mine.find(index);
        if (it == mine.end()) return false;
        return tr.messages.at(0).second == encode_bits(colors->at(it->second), width);
    };
    return p;
}

Coloring extract_coloring(const Protocol& p, const ColoredTensor& t) {
    if (!exhaustive_verify(p, t)) throw VerificationFailed("protocol does not decide the instance");
    std::map<std::string, int> color_of_transcript;
    std::vector<std::pair<Triple, std::string>> runs;
    for (const Triple& g : t.green) {
        RunResult r = run_protocol(p, g);
        runs.push_back({g, r.transcript.concat()});
        color_of_transcript.emplace(runs.back().second, 0);
    }
    int next = 0;
    for (auto& [transcript, color] : color_of_transcript) color = next++;
    Coloring c;
    c.num_colors = next;
    for (const auto& [g, transcript] : runs)
        c.assignment.push_back({g, color_of_transcript.at(transcript)});
    std::sort(c.assignment.begin(), c.assignment.end());
    if (!verify_coloring(t, c)) throw VerificationFailed("extracted transcript classes not independent");
    return c;
}

ColoredTensor nof_in_group_instance(int n) {
    ColoredTensor ct;
    ct.promise = intermediate_embedding(n).renamed_t3;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) ct.green.push_back({i * n + j, j * n + k, k * n + i});
    ct.green = sorted_unique(ct.green);
    if (!is_subset(ct.green, ct.promise.support))
        throw VerificationFailed("matrix multiplication support escapes the renamed tensor");
    return ct;
}

Protocol nof_in_group_protocol(int n) {
    if (n < 1) throw OutOfBounds("n must be >= 1");
    const int width = bit_width(n);
    Protocol p;
    p.rounds = 3;
    p.declared_cost = width;
    p.message = [n, width](int player, int index, const Transcript&) -> std::optional<std::string> {
        if (player != 1) return std::string{};
        return encode_bits(index % n, width); // second coordinate of the held pair
    };
    p.accept = [n, width](int player, int index, const Transcript& tr) {
        if (player != 2) return true;
        return tr.messages.at(0).second == encode_bits(index / n, width);
    };
    return p;
}

Protocol compose_triangle(const Protocol& p_mid, const ColoredTensor& mid_instance,
                          const Protocol& p_low, const ColoredTensor& low_instance) {
    if (p_mid.rounds % 3 != 0 || p_low.rounds % 3 != 0)
        throw PromiseMismatch("phase lengths must be whole cycles");
    if (low_instance.promise.support != mid_instance.green ||
        low_instance.promise.axes != mid_instance.promise.axes)
        throw PromiseMismatch("middle tensor of the two instances differs");
    const int mid_rounds = p_mid.rounds;
    auto mid_msg = p_mid.message;
    auto mid_acc = p_mid.accept;
    auto low_msg = p_low.message;
    auto low_acc = p_low.accept;
    Protocol p;
    p.rounds = p_mid.rounds + p_low.rounds;
    p.declared_cost = p_mid.declared_cost + p_low.declared_cost;
    p.message = [mid_rounds, mid_msg, mid_acc, low_msg](
                    int player, int index, const Transcript& tr) -> std::optional<std::string> {
        int round = static_cast<int>(tr.messages.size());
        if (round < mid_rounds) return mid_msg(player, index, tr);
        // each player vetoes phase two unless its own first-phase predicate holds
        if (round < mid_rounds + 3 &&
            !mid_acc(player, index, head(tr, static_cast<std::size_t>(mid_rounds))))
            return std::nullopt;
        return low_msg(player, index, tr.tail(static_cast<std::size_t>(mid_rounds)));
    };
    p.accept = [mid_rounds, mid_acc, low_acc](int player, int index, const Transcript& tr) {
        return mid_acc(player, index, head(tr, static_cast<std::size_t>(mid_rounds))) &&
               low_acc(player, index, tr.tail(static_cast<std::size_t>(mid_rounds)));
    };
    return p;
}

nlohmann::json protocol_table(const Protocol& p, const ColoredTensor& t) {
    nlohmann::json rows = nlohmann::json::array();
    for (const Triple& x : t.promise.support) {
        RunResult r = run_protocol(p, x);
        rows.push_back({{x.a, x.b, x.c}, r.transcript.concat(), r.accepted});
    }
    return {{"kind", "protocol-table"}, {"promise_hash", tensor_hash(t.promise)}, {"rows", rows}};
}

} // namespace tensorcomm
