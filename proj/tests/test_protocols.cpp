#include "doctest.h"

#include <cmath>

#include "tensorcomm/constructions.hpp"
#include "tensorcomm/protocols.hpp"

using namespace tensorcomm;

namespace {

int cc_bits(int k) { return std::max(0, static_cast<int>(std::ceil(std::log2(std::max(k, 1))))); }

std::vector<ColoredTensor> injection_battery() {
    std::vector<ColoredTensor> battery = {nof_embed(eval_problem(AbelianGroup{{2}})),
                                          nof_embed(eval_problem(AbelianGroup{{3}})),
                                          eq_problem(AbelianGroup{{5}})};
    for (const LatinSquare& sq : enumerate_latin(3))
        battery.push_back(nof_embed(latin_to_problem(sq)));
    return battery;
}

} // namespace

TEST_CASE("compile/verify/extract round trip at optimal cost") {
    for (const ColoredTensor& t : injection_battery()) {
        auto [chi, coloring] = chi_exact(t);
        Protocol p = compile_protocol(t, coloring);
        CHECK(p.declared_cost == cc_bits(chi));
        VerifyResult v = exhaustive_run(p, t);
        CHECK(v.correct);
        CHECK(v.measured_cost == p.declared_cost);
        Coloring extracted = extract_coloring(p, t);
        CHECK(verify_coloring(t, extracted));
        CHECK(extracted.num_colors <= (1 << p.declared_cost));
        // distinct transcripts on green inputs form a coloring, so any correct
        // protocol needs at least ceil(log2 chi) bits
        CHECK(extracted.num_colors >= chi);
        CHECK(v.measured_cost >= cc_bits(extracted.num_colors));
    }
}

TEST_CASE("compile_protocol rejects bad inputs") {
    ColoredTensor mm = all_green(matmul_tensor(2, 2, 2)); // x-index 0 has two green completions
    CHECK_THROWS_AS(compile_protocol(mm, chi_exact(mm).second), NotInjection);

    ColoredTensor ev = nof_embed(eval_problem(AbelianGroup{{2}}));
    Coloring broken = chi_exact(ev).second;
    for (auto& [g, color] : broken.assignment) color = 0;
    broken.num_colors = 1;
    CHECK_THROWS_AS(compile_protocol(ev, broken), ImproperColoring);
}

TEST_CASE("exhaustive_verify catches over-accepting protocols") {
    ColoredTensor ev = nof_embed(eval_problem(AbelianGroup{{2}}));
    Protocol lazy;
    lazy.rounds = 3;
    lazy.declared_cost = 0;
    lazy.message = [](int, int, const Transcript&) { return std::optional<std::string>{""}; };
    lazy.accept = [](int, int, const Transcript&) { return true; };
    CHECK(!exhaustive_verify(lazy, ev)); // accepts non-green promise inputs

    // on an all-green instance the same protocol is correct with cost 0
    ColoredTensor diag = all_green(make_tensor({2, 2, 2}, {{0, 0, 0}, {1, 1, 1}}));
    CHECK(exhaustive_verify(lazy, diag));
    CHECK(extract_coloring(lazy, diag).num_colors == 1);
}

TEST_CASE("zero-bit protocols for one-color instances") {
    ColoredTensor diag = all_green(make_tensor({3, 3, 3}, {{0, 0, 0}, {1, 1, 1}, {2, 2, 2}}));
    auto [chi, coloring] = chi_exact(diag);
    REQUIRE(chi == 1);
    Protocol p = compile_protocol(diag, coloring);
    CHECK(p.declared_cost == 0);
    CHECK(exhaustive_verify(p, diag));
}

TEST_CASE("nof_in_group_protocol is exhaustively correct") {
    for (int n : {1, 2, 3, 4}) {
        ColoredTensor inst = nof_in_group_instance(n);
        CHECK(inst.promise.support.size() ==
              static_cast<std::size_t>(n) * n * n * n); // one per (a,b,c,d)
        Protocol p = nof_in_group_protocol(n);
        CHECK(p.declared_cost == cc_bits(n));
        VerifyResult v = exhaustive_run(p, inst);
        CHECK(v.correct);
        CHECK(v.measured_cost == p.declared_cost);
    }
}

TEST_CASE("triangle composition: Eval inside the renamed tensor") {
    for (int n : {2, 3}) {
        ColoredTensor mid = nof_in_group_instance(n);
        ColoredTensor low = nof_embed(eval_problem(AbelianGroup{{n}}));
        auto [chi, coloring] = chi_exact(low);
        Protocol p_low = compile_protocol(low, coloring);
        Protocol composed = compose_triangle(nof_in_group_protocol(n), mid, p_low, low);
        ColoredTensor target{mid.promise, low.green};
        VerifyResult v = exhaustive_run(composed, target);
        CHECK(v.correct);
        CHECK(v.measured_cost <= cc_bits(n) + cc_bits(chi));
        CHECK(composed.declared_cost == cc_bits(n) + cc_bits(chi));
    }
}

TEST_CASE("composition with a trivial second phase behaves like the first") {
    ColoredTensor ev = nof_embed(eval_problem(AbelianGroup{{2}}));
    Protocol p = compile_protocol(ev, chi_exact(ev).second);
    Protocol trivial;
    trivial.rounds = 3;
    trivial.declared_cost = 0;
    trivial.message = [](int, int, const Transcript&) { return std::optional<std::string>{""}; };
    trivial.accept = [](int, int, const Transcript&) { return true; };
    ColoredTensor all_of_green = all_green(
        make_tensor({ev.promise.axis_size(0), ev.promise.axis_size(1), ev.promise.axis_size(2)},
                    ev.green));
    Protocol composed = compose_triangle(p, ev, trivial, all_of_green);
    CHECK(composed.declared_cost == p.declared_cost);
    CHECK(exhaustive_verify(composed, ev));
}

TEST_CASE("composition rejects mismatched middles") {
    ColoredTensor mid = nof_in_group_instance(2);
    // drop one non-green promise triple so the low promise no longer equals mid's green
    ColoredTensor wrong = nof_embed(eval_problem(AbelianGroup{{2}}));
    std::vector<Triple> pruned;
    bool dropped = false;
    for (const Triple& t : wrong.promise.support) {
        if (!dropped && !std::binary_search(wrong.green.begin(), wrong.green.end(), t)) {
            dropped = true;
            continue;
        }
        pruned.push_back(t);
    }
    REQUIRE(dropped);
    wrong.promise = make_tensor({4, 4, 4}, pruned);
    Protocol p_low = compile_protocol(wrong, chi_exact(wrong).second);
    CHECK_THROWS_AS(compose_triangle(nof_in_group_protocol(2), mid, p_low, wrong),
                    PromiseMismatch);
}

TEST_CASE("protocol tables serialize deterministically") {
    ColoredTensor ev = nof_embed(eval_problem(AbelianGroup{{2}}));
    Protocol p = compile_protocol(ev, chi_exact(ev).second);
    nlohmann::json table = protocol_table(p, ev);
    CHECK(table.at("kind") == "protocol-table");
    CHECK(table.at("promise_hash") == tensor_hash(ev.promise));
    CHECK(table.at("rows").size() == ev.promise.support.size());
    int accepted = 0;
    for (const auto& row : table.at("rows"))
        if (row.at(2).get<bool>()) ++accepted;
    CHECK(accepted == static_cast<int>(ev.green.size()));
    CHECK(protocol_table(p, ev) == table);
}
