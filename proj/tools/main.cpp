#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "tensorcomm/bounds.hpp"
#include "tensorcomm/combinatorics.hpp"
#include "tensorcomm/constructions.hpp"
#include "tensorcomm/json_io.hpp"
#include "tensorcomm/laser.hpp"
#include "tensorcomm/protocols.hpp"
#include "tensorcomm/solvers.hpp"
#include "tensorcomm/tensor.hpp"

namespace tc = tensorcomm;
using nlohmann::json;

namespace {

int support_cap(int fallback) {
    if (const char* env = std::getenv("TENSORCOMM_MAX_SUPPORT")) return std::stoi(env);
    return fallback;
}

json triples_to_json(const std::vector<tc::Triple>& ts) {
    json a = json::array();
    for (const tc::Triple& t : ts) a.push_back({t.a, t.b, t.c});
    return a;
}

std::vector<tc::Triple> triples_from_json(const json& a) {
    std::vector<tc::Triple> ts;
    for (const auto& row : a) ts.push_back({row.at(0), row.at(1), row.at(2)});
    return ts;
}

tc::LatinSquare latin_from_json(const json& j) {
    if (j.value("kind", "") != "latin") throw tc::ParseError("expected a latin JSON file");
    tc::LatinSquare l;
    l.n = j.at("n");
    for (const auto& row : j.at("rows")) l.entries.push_back(row.get<std::vector<int>>());
    l.validate();
    return l;
}

// problem argument: a latin JSON file path or an inline "eval:ZN" spec
tc::NofProblem load_problem(const std::string& arg) {
    if (arg.rfind("eval:", 0) == 0) return tc::eval_problem(tc::AbelianGroup::parse(arg.substr(5)));
    return tc::latin_to_problem(latin_from_json(json::parse(tc::read_file(arg))));
}

tc::ColoredTensor load_colored(const std::string& path) {
    return tc::colored_from_json(json::parse(tc::read_file(path)));
}

void emit(const std::string& path, const json& j) {
    tc::write_file(path, tc::canonical_bytes(j));
}

struct ConstructResult {
    json file;
    std::size_t support = 0;
    std::size_t green = 0;
};

ConstructResult construct_from_spec(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos) throw tc::ParseError("construct spec needs kind:args");
    std::string kind = spec.substr(0, colon), args = spec.substr(colon + 1);
    ConstructResult r;
    if (kind == "matmul") {
        int n, m, p;
        if (std::sscanf(args.c_str(), "%d,%d,%d", &n, &m, &p) != 3)
            throw tc::ParseError("matmul spec: matmul:n,m,p");
        tc::Tensor3 t = tc::matmul_tensor(n, m, p);
        r = {tc::to_json(t), t.support.size(), 0};
    } else if (kind == "group") {
        tc::Tensor3 t = tc::group_structure_tensor(tc::AbelianGroup::parse(args));
        r = {tc::to_json(t), t.support.size(), 0};
    } else if (kind == "eval") {
        tc::ColoredTensor t = tc::nof_embed(tc::eval_problem(tc::AbelianGroup::parse(args)));
        r = {tc::to_json(t), t.promise.support.size(), t.green.size()};
    } else if (kind == "eq") {
        tc::ColoredTensor t = tc::eq_problem(tc::AbelianGroup::parse(args));
        r = {tc::to_json(t), t.promise.support.size(), t.green.size()};
    } else if (kind == "latin") {
        tc::ColoredTensor t =
            tc::nof_embed(tc::latin_to_problem(latin_from_json(json::parse(tc::read_file(args)))));
        r = {tc::to_json(t), t.promise.support.size(), t.green.size()};
    } else if (kind == "t3") {
        tc::Tensor3 t = tc::intermediate_embedding(std::stoi(args)).renamed_t3;
        r = {tc::to_json(t), t.support.size(), 0};
    } else {
        throw tc::ParseError("unknown construct kind: " + kind);
    }
    return r;
}

int cmd_verify(const std::string& cert_path, const std::string& subject_path) {
    json cert = json::parse(tc::read_file(cert_path));
    json subject = json::parse(tc::read_file(subject_path));
    std::string kind = cert.value("kind", "");
    tc::ColoredTensor t;
    if (subject.value("kind", "") == "colored") t = tc::colored_from_json(subject);
    else t = tc::all_green(tc::tensor_from_json(subject));
    if (kind == "indepset" || kind == "coloring") {
        if (cert.value("tensor_hash", "") != tc::tensor_hash(t.promise)) return 2;
        if (kind == "indepset") return tc::is_independent_set(t, triples_from_json(cert.at("triples"))) ? 0 : 1;
        tc::Coloring c;
        for (const auto& row : cert.at("assignment")) {
            tc::Triple g{row.at(0).at(0), row.at(0).at(1), row.at(0).at(2)};
            int color = row.at(1);
            c.assignment.push_back({g, color});
            c.num_colors = std::max(c.num_colors, color + 1);
        }
        std::sort(c.assignment.begin(), c.assignment.end());
        return tc::verify_coloring(t, c) ? 0 : 1;
    }
    if (kind == "protocol-table") {
        if (cert.value("promise_hash", "") != tc::tensor_hash(t.promise)) return 2;
        std::vector<tc::Triple> accepted;
        for (const auto& row : cert.at("rows"))
            if (row.at(2).get<bool>())
                accepted.push_back({row.at(0).at(0), row.at(0).at(1), row.at(0).at(2)});
        return tc::sorted_unique(accepted) == t.green ? 0 : 1;
    }
    if (kind == "rs") {
        tc::TriangleSystem ts;
        ts.n = cert.at("n");
        ts.triangles = triples_from_json(cert.at("triangles"));
        if (t.promise != tc::matmul_tensor(ts.n, ts.n, ts.n)) return 2;
        try {
            tc::indep_from_rs_graph(ts);
            return 0;
        } catch (const tc::Error&) {
            return 1;
        }
    }
    throw tc::ParseError("unknown certificate kind: " + kind);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact solvers and certified constructions for NOF promise tensors"};
    app.require_subcommand(1);

    std::string spec, input, emit_path, cert, subject, mode = "exact", measure_name = "flattening-min",
                field_spec = "q", problem_path, promise_path, i_path, j_path, k_path, outer = "exact",
                table_path;
    std::uint64_t seed = 0;
    int n = 2;
    bool greedy = false, as_json = false;

    auto* construct = app.add_subcommand("construct", "build a tensor from a spec string");
    construct->add_option("--spec", spec)->required();
    construct->add_option("--emit", emit_path);

    auto* solve = app.add_subcommand("solve", "independence number / chromatic number");
    std::string solve_what;
    solve->add_option("what", solve_what)->check(CLI::IsMember({"alpha", "chi"}))->required();
    solve->add_option("--input", input)->required();
    solve->add_flag("--greedy", greedy);
    solve->add_option("--seed", seed);
    solve->add_option("--emit", emit_path);

    auto* verify = app.add_subcommand("verify", "check a certificate against a subject tensor");
    verify->add_option("--cert", cert)->required();
    verify->add_option("--subject", subject)->required();

    auto* subrank = app.add_subcommand("subrank-lower", "corner-free subrank pipeline");
    subrank->add_option("--n", n)->required();
    subrank->add_option("--seed", seed);
    subrank->add_option("--emit", emit_path);

    auto* rs = app.add_subcommand("rs", "Ruzsa-Szemeredi triangle system translation");
    std::string rs_dir;
    rs->add_option("direction", rs_dir)->check(CLI::IsMember({"from-indep", "to-indep"}))->required();
    rs->add_option("--input", input)->required();
    rs->add_option("--n", n);
    rs->add_option("--emit", emit_path);

    auto* laser = app.add_subcommand("laser", "laser-method product coloring");
    laser->add_option("--i", i_path)->required();
    laser->add_option("--j", j_path)->required();
    laser->add_option("--k", k_path)->required();
    laser->add_option("--outer", outer)->check(CLI::IsMember({"exact", "symmetry"}));
    laser->add_option("--seed", seed);
    laser->add_option("--emit", emit_path);

    auto* bound = app.add_subcommand("bound", "measure-based communication lower bound");
    bound->add_option("--problem", problem_path)->required();
    bound->add_option("--promise", promise_path)->required();
    bound->add_option("--measure", measure_name);
    bound->add_option("--field", field_spec);

    auto* protocol = app.add_subcommand("protocol", "blackboard protocol toolbox");
    std::string proto_what;
    protocol->add_option("what", proto_what)
        ->check(CLI::IsMember({"compile", "verify", "compose", "nof-in-group"}))
        ->required();
    protocol->add_option("--input", input);
    protocol->add_option("--n", n);
    protocol->add_option("--table", table_path);
    protocol->add_option("--emit", emit_path);

    auto* latin = app.add_subcommand("enumerate-latin", "Latin square census");
    latin->add_option("--n", n)->required();
    latin->add_flag("--json", as_json);

    CLI11_PARSE(app, argc, argv);

    try {
        if (construct->parsed()) {
            ConstructResult r = construct_from_spec(spec);
            if (!emit_path.empty()) emit(emit_path, r.file);
            std::cout << "support " << r.support << "\ngreen " << r.green << "\n";
        } else if (solve->parsed()) {
            tc::ColoredTensor t = load_colored(input);
            std::string hash = tc::tensor_hash(t.promise);
            if (solve_what == "alpha") {
                auto [value, witness] =
                    greedy ? std::pair{static_cast<int>(tc::greedy_alpha(t).triples.size()),
                                       tc::greedy_alpha(t)}
                           : tc::alpha_exact(t, support_cap(tc::kDefaultAlphaLimit));
                std::cout << "alpha " << (greedy ? ">= " : "") << value << "\n";
                if (!emit_path.empty())
                    emit(emit_path, {{"kind", "indepset"},
                                     {"tensor_hash", hash},
                                     {"triples", triples_to_json(witness.triples)}});
            } else {
                auto [value, coloring] =
                    greedy ? std::pair{tc::greedy_chi(t).num_colors, tc::greedy_chi(t)}
                           : tc::chi_exact(t, support_cap(tc::kDefaultChiLimit));
                std::cout << "chi " << (greedy ? "<= " : "") << value << "\n";
                if (!emit_path.empty()) {
                    json rows = json::array();
                    for (const auto& [g, color] : coloring.assignment)
                        rows.push_back({{g.a, g.b, g.c}, color});
                    emit(emit_path,
                         {{"kind", "coloring"}, {"tensor_hash", hash}, {"assignment", rows}});
                }
            }
        } else if (verify->parsed()) {
            int code = cmd_verify(cert, subject);
            std::cout << (code == 0 ? "valid" : code == 1 ? "invalid" : "mismatch") << "\n";
            return code;
        } else if (subrank->parsed()) {
            tc::SubrankLowerResult r = tc::mm_subrank_lower(n, seed);
            std::cout << "independent-set size " << r.indep.triples.size() << "\n"
                      << "ap-free size " << r.ap_free_size << "\n"
                      << "coloring colors " << r.coloring_size << "\n";
            if (!emit_path.empty())
                emit(emit_path,
                     {{"kind", "indepset"},
                      {"tensor_hash", tc::tensor_hash(tc::matmul_tensor(n, n, n))},
                      {"triples", triples_to_json(r.indep.triples)}});
        } else if (rs->parsed()) {
            json in = json::parse(tc::read_file(input));
            if (rs_dir == "from-indep") {
                tc::IndependentSet s{triples_from_json(in.at("triples"))};
                tc::TriangleSystem ts = tc::rs_graph_from_indep(s, n);
                std::cout << "triangles " << ts.triangles.size() << "\n";
                if (!emit_path.empty())
                    emit(emit_path, {{"kind", "rs"},
                                     {"n", ts.n},
                                     {"triangles", triples_to_json(ts.triangles)}});
            } else {
                tc::TriangleSystem ts;
                ts.n = in.at("n");
                ts.triangles = triples_from_json(in.at("triangles"));
                tc::IndependentSet s = tc::indep_from_rs_graph(ts);
                std::cout << "independent-set size " << s.triples.size() << "\n";
                if (!emit_path.empty())
                    emit(emit_path,
                         {{"kind", "indepset"},
                          {"tensor_hash", tc::tensor_hash(tc::matmul_tensor(ts.n, ts.n, ts.n))},
                          {"triples", triples_to_json(s.triples)}});
            }
        } else if (laser->parsed()) {
            tc::NofProblem pi = load_problem(i_path), pj = load_problem(j_path),
                           pk = load_problem(k_path);
            tc::Coloring out = tc::outer_coloring(
                pi.alphabet_size, outer == "exact" ? tc::OuterMode::exact : tc::OuterMode::symmetry,
                seed);
            tc::LaserPlan plan = tc::make_laser_plan(pi, pj, pk, out);
            tc::Coloring c = tc::laser_product_coloring(plan);
            std::cout << "outer colors " << out.num_colors << "\nproduct colors " << c.num_colors
                      << "\n";
            if (!emit_path.empty()) {
                json rows = json::array();
                for (const auto& [g, color] : c.assignment) rows.push_back({{g.a, g.b, g.c}, color});
                emit(emit_path, {{"kind", "coloring"},
                                 {"tensor_hash", tc::tensor_hash(tc::laser_product_tensor(plan).promise)},
                                 {"assignment", rows}});
            }
        } else if (bound->parsed()) {
            tc::Tensor3 i_t = tc::colored_from_json(json::parse(tc::read_file(problem_path))).promise;
            json pj = json::parse(tc::read_file(promise_path));
            tc::Tensor3 p_t = pj.value("kind", "") == "colored" ? tc::colored_from_json(pj).promise
                                                                : tc::tensor_from_json(pj);
            tc::Measure m = tc::Measure::parse(measure_name, tc::Field::parse(field_spec));
            std::cout << "lower bound " << tc::lower_bound(i_t, p_t, m) << " bits\n";
        } else if (protocol->parsed()) {
            if (proto_what == "compile") {
                tc::ColoredTensor t = load_colored(input);
                auto [chi, coloring] = tc::chi_exact(t, support_cap(tc::kDefaultChiLimit));
                tc::Protocol p = tc::compile_protocol(t, coloring);
                std::cout << "cost " << p.declared_cost << " bits (chi " << chi << ")\n";
                if (!emit_path.empty()) emit(emit_path, tc::protocol_table(p, t));
            } else if (proto_what == "verify") {
                int code = cmd_verify(table_path, input);
                std::cout << (code == 0 ? "valid" : code == 1 ? "invalid" : "mismatch") << "\n";
                return code;
            } else if (proto_what == "nof-in-group") {
                tc::ColoredTensor inst = tc::nof_in_group_instance(n);
                tc::Protocol p = tc::nof_in_group_protocol(n);
                std::cout << (tc::exhaustive_verify(p, inst) ? "correct" : "incorrect") << ", cost "
                          << p.declared_cost << " bits\n";
                if (!emit_path.empty()) emit(emit_path, tc::protocol_table(p, inst));
            } else { // compose: (embedded Eval_{Z_n} image, renamed T3) via the middle tensor
                tc::ColoredTensor mid = tc::nof_in_group_instance(n);
                tc::ColoredTensor low = tc::nof_embed(tc::eval_problem(tc::AbelianGroup{{n}}));
                tc::Protocol p_mid = tc::nof_in_group_protocol(n);
                tc::Protocol p_low =
                    tc::compile_protocol(low, tc::chi_exact(low, support_cap(tc::kDefaultChiLimit)).second);
                tc::Protocol p = tc::compose_triangle(p_mid, mid, p_low, low);
                tc::ColoredTensor composed{mid.promise, low.green};
                std::cout << (tc::exhaustive_verify(p, composed) ? "correct" : "incorrect")
                          << ", cost " << p.declared_cost << " bits\n";
                if (!emit_path.empty()) emit(emit_path, tc::protocol_table(p, composed));
            }
        } else if (latin->parsed()) {
            if (n > 5) throw tc::TooLarge("census supported up to order 5");
            auto squares = tc::enumerate_latin(n);
            double log_count = std::log(static_cast<double>(squares.size()));
            double upper = n * n * std::log(static_cast<double>(n));
            double lower = upper - n * n;
            bool inside = log_count >= lower - 1e-9 && log_count <= upper + 1e-9;
            std::map<int, int> chi_census;
            if (n <= 4)
                for (const auto& sq : squares)
                    ++chi_census[tc::chi_exact(tc::nof_embed(tc::latin_to_problem(sq))).first];
            if (as_json) {
                json j{{"count", squares.size()}, {"within_bounds", inside}};
                for (const auto& [chi, count] : chi_census)
                    j["chi_distribution"][std::to_string(chi)] = count;
                std::cout << j.dump() << "\n";
            } else {
                std::cout << "latin squares of order " << n << ": " << squares.size()
                          << (inside ? " (within the counting bounds)" : " (OUTSIDE bounds!)")
                          << "\n";
                for (const auto& [chi, count] : chi_census)
                    std::cout << "  chi = " << chi << " (cc = "
                              << std::max(0, static_cast<int>(std::ceil(std::log2(chi))))
                              << " bits): " << count << " squares\n";
            }
        }
    } catch (const tc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
