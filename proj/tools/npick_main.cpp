#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "npick/complementary.hpp"
#include "npick/errors.hpp"
#include "npick/fronts.hpp"
#include "npick/io.hpp"
#include "npick/kernel.hpp"
#include "npick/problem.hpp"
#include "npick/sampling.hpp"
#include "npick/solver.hpp"
#include "npick/verify.hpp"

namespace {

using namespace npick;

std::optional<SchurParameter> load_parameter(const std::string& path) {
    if (path.empty()) return std::nullopt;
    return parameter_from_json(load_json_file(path));
}

Json solve_payload(const ProblemData& prob, const std::optional<SchurParameter>& param) {
    PickData pick = gramians(prob);
    ComplementaryPair pair = complementary_pair(prob, pick);
    CoefficientSystem coeffs = coefficient_system(prob, pick, pair);

    RationalSystem F = param ? lft_solution(coeffs, prob, pick, pair, *param)
                             : central_solution(prob, pick);

    std::vector<Complex> grid = disc_grid(16);
    std::vector<Complex> circle = circle_grid(32);
    grid.insert(grid.end(), circle.begin(), circle.end());

    Json out;
    out["classification"] = to_string(pick.classification);
    out["pick_min_eigenvalue"] = pick.lambda_min_eig;
    out["parameter"] = param ? "file" : "central";
    out["solution"] = system_to_json(F);
    out["interpolation_residual"] = interpolation_residual(prob, F);
    out["schur_margin"] = schur_margin(F, grid);
    out["pair_residuals"] = Json{{"semiunit1", pair.semiunit1_residual},
                                 {"semiunit2", pair.semiunit2_residual}};
    out["entropy_central"] = matrix_to_json(entropy_central(pick, prob));
    if (!coeffs.note.empty()) out["note"] = coeffs.note;
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"State-space solver for left-tangential Nevanlinna-Pick interpolation"};
    app.require_subcommand(1);

    double tol = 1e-8;
    int grid = 0;
    std::string param_path;
    std::string out_path;
    std::uint64_t seed = 1;
    app.add_option("--tol", tol, "pass/fail tolerance for verify")->capture_default_str();
    app.add_option("--grid", grid, "circle points for the evaluation grids");
    app.add_option("--param", param_path, "JSON file with the free Schur parameter");
    app.add_option("--out", out_path, "write JSON output to this file instead of stdout");
    app.add_option("--seed", seed, "seed for sample")->capture_default_str();

    std::string input_path;
    CLI::App* solve = app.add_subcommand("solve", "solve one interpolation problem");
    solve->add_option("problem", input_path, "problem JSON file")->required();
    CLI::App* verify = app.add_subcommand("verify", "run every check on one problem");
    verify->add_option("problem", input_path, "problem JSON file")->required();
    CLI::App* pair_cmd = app.add_subcommand("pair", "emit the complementary pair");
    pair_cmd->add_option("problem", input_path, "problem JSON file")->required();
    CLI::App* entropy = app.add_subcommand("entropy", "entropy matrices");
    entropy->add_option("problem", input_path, "problem JSON file")->required();
    CLI::App* leech = app.add_subcommand("leech", "truncated Leech front-end");
    leech->add_option("data", input_path, "JSON file with G, K, N")->required();
    CLI::App* clift = app.add_subcommand("clift", "commutant lifting front-end");
    clift->add_option("data", input_path, "JSON file with Z, B, Btilde")->required();
    CLI::App* sample = app.add_subcommand("sample", "emit a random solvable problem");

    for (CLI::App* sub : {solve, verify, pair_cmd, entropy, leech, clift, sample}) {
        sub->fallthrough();
    }

    CLI11_PARSE(app, argc, argv);

    try {
        if (*solve) {
            write_json_output(out_path,
                              solve_payload(problem_from_json(load_json_file(input_path)),
                                            load_parameter(param_path)));
        } else if (*verify) {
            ProblemData prob = problem_from_json(load_json_file(input_path));
            std::optional<SchurParameter> param = load_parameter(param_path);
            VerifyOptions opts;
            if (grid > 0) {
                opts.circle_points = grid;
                opts.interior_per_radius = std::max(1, grid / 2);
            }
            VerificationReport report =
                verify_instance(prob, param ? &*param : nullptr, opts);
            Json out = report_to_json(report);
            bool ok = report.passes(tol);
            out["passes"] = ok;
            out["tol"] = tol;
            write_json_output(out_path, out);
            return ok ? 0 : 1;
        } else if (*pair_cmd) {
            ProblemData prob = problem_from_json(load_json_file(input_path));
            PickData pick = gramians(prob);
            ComplementaryPair cd = complementary_pair(prob, pick);
            PairReport rep = verify_pair(cd, prob, pick);
            Json out;
            out["C"] = matrix_to_json(cd.C);
            out["D"] = matrix_to_json(cd.D);
            out["e"] = cd.e;
            out["residuals"] = Json{{"semiunit1", rep.semiunit1},
                                    {"semiunit2", rep.semiunit2},
                                    {"dd_cpc", rep.dd_cpc},
                                    {"bd_zpc", rep.bd_zpc},
                                    {"dd_bpb", rep.dd_bpb},
                                    {"dc_bpz", rep.dc_bpz},
                                    {"cc_zpz", rep.cc_zpz},
                                    {"max", rep.max_residual()}};
            write_json_output(out_path, out);
        } else if (*entropy) {
            ProblemData prob = problem_from_json(load_json_file(input_path));
            PickData pick = gramians(prob);
            Json out;
            ComplexMatrix central = entropy_central(pick, prob);
            out["entropy_central"] = matrix_to_json(central);
            out["determinant_central"] = central.determinant().real();
            RationalSystem F0 = central_solution(prob, pick);
            auto [lhs, rhs] = szego_check(prob, pick, F0, 2048);
            out["szego"] = Json{{"lhs", lhs}, {"rhs", rhs}};
            if (std::optional<SchurParameter> param = load_parameter(param_path)) {
                ComplementaryPair cd = complementary_pair(prob, pick);
                CoefficientSystem coeffs = coefficient_system(prob, pick, cd);
                RationalSystem F = lft_solution(coeffs, prob, pick, cd, *param);
                out["entropy_solution"] =
                    matrix_to_json(entropy_of_solution(F, 8, 1e-10));
            }
            write_json_output(out_path, out);
        } else if (*leech) {
            LeechInstance inst = leech_from_json(load_json_file(input_path));
            ProblemData prob = leech_truncate(inst);
            LeechSolvability solv = leech_solvability(inst);
            Json out;
            out["problem"] = problem_to_json(prob);
            out["classification"] = to_string(solv.classification);
            out["pick_min_eigenvalue"] = solv.lambda_min_eig;
            out["note"] = solv.note;
            if (solv.classification == PickClass::StrictlyPositive) {
                PickData pick = gramians(prob);
                RationalSystem F = central_solution(prob, pick);
                out["central_solution"] = system_to_json(F);
                Json table = Json::array();
                for (int k = 1; k <= inst.N; ++k) {
                    table.push_back(leech_residual(inst, F, k));
                }
                out["residual_prefix_max"] = table;
            }
            write_json_output(out_path, out);
        } else if (*clift) {
            Json j = load_json_file(input_path);
            CommutantLiftingInstance cl;
            cl.Z = matrix_from_json(j.at("Z"));
            cl.B = matrix_from_json(j.at("B"));
            cl.Btilde = matrix_from_json(j.at("Btilde"));
            ProblemData prob = commutant_lifting_instance(cl);
            Json out = solve_payload(prob, load_parameter(param_path));
            out["q0_consistency_residual"] = commutant_lifting_q0_residual(prob);
            write_json_output(out_path, out);
        } else if (*sample) {
            Rng rng(seed);
            write_json_output(out_path, problem_to_json(sample_instance(rng)));
        }
    } catch (const NumericError& err) {
        std::cerr << "error: " << err.what() << std::endl;
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << std::endl;
        return 2;
    }
    return 0;
}
