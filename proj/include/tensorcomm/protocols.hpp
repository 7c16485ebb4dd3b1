#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tensorcomm/json_io.hpp"
#include "tensorcomm/solvers.hpp"
#include "tensorcomm/tensor.hpp"

namespace tensorcomm {

/// Blackboard contents: ordered (player, bitstring) messages.
struct Transcript {
    std::vector<std::pair<int, std::string>> messages;

    int total_bits() const;
    std::string concat() const;
    /// Messages from position `from` onward (phase slicing for compositions).
    Transcript tail(std::size_t from) const;
};

/// Deterministic blackboard protocol over a promise tensor. Players act in
/// cyclic order 1, 2, 3 for a fixed number of rounds; each player holds its
/// own axis index privately (the forehead-to-hand conversion is done by the
/// promise tensor's pair encoding). A nullopt message is an early reject.
struct Protocol {
    int rounds = 3; // multiple of 3
    std::function<std::optional<std::string>(int player, int index, const Transcript&)> message;
    std::function<bool(int player, int index, const Transcript&)> accept;
    int declared_cost = 0;
};

struct RunResult {
    bool accepted = false;
    Transcript transcript;
};

struct VerifyResult {
    bool correct = false; // accepts exactly the green triples
    int measured_cost = 0; // max total bits over all promise inputs
};

RunResult run_protocol(const Protocol& p, const Triple& input);

/// Runs p on every promise triple; correct iff acceptance matches green
/// membership everywhere and no run writes more than the declared cost.
VerifyResult exhaustive_run(const Protocol& p, const ColoredTensor& t);
bool exhaustive_verify(const Protocol& p, const ColoredTensor& t);

/// One-round-of-writing protocol from a proper coloring of an injection
/// problem: player 1 writes the color of its unique green completion,
/// players 2 and 3 compare against their own completions.
Protocol compile_protocol(const ColoredTensor& t, const Coloring& c);

/// Colors = distinct transcripts on green inputs; requires a verifying
/// protocol.
Coloring extract_coloring(const Protocol& p, const ColoredTensor& t);

/// The instance the protocol below decides: green = image of the matrix
/// multiplication support, promise = the renamed three-term-progression
/// tensor.
ColoredTensor nof_in_group_instance(int n);

/// ceil(log2 n)-bit protocol: player 1 writes the second coordinate of its
/// pair, player 2 checks it against the first coordinate of its own pair.
Protocol nof_in_group_protocol(int n);

/// Sequential composition deciding (T1, T3) from p_mid for (T2, T3) and
/// p_low for (T1, T2); rejects early when the first phase rejects.
Protocol compose_triangle(const Protocol& p_mid, const ColoredTensor& mid_instance,
                          const Protocol& p_low, const ColoredTensor& low_instance);

/// Serializable transcript table over all promise inputs.
nlohmann::json protocol_table(const Protocol& p, const ColoredTensor& t);

} // namespace tensorcomm
