// nlse: stationary states of the 1D nonlinear Schroedinger equation with
// delta and delta-shell potentials.
//
// Exit codes: 0 success, 1 failed self-check, 2 invalid parameters,
// 3 solver non-convergence, 4 no solution (with --strict).

#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "nlse/commands.hpp"

namespace {

enum ExitCode { kOk = 0, kCheckFailed = 1, kInvalid = 2, kNonConvergence = 3, kNoSolution = 4 };

struct Output {
    std::string format = "csv";
    std::string path;
    bool strict = false;
};

void add_output_flags(CLI::App* cmd, Output& out) {
    cmd->add_option("--format", out.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", out.path, "Write to PATH instead of stdout");
    cmd->add_flag("--strict", out.strict, "Exit with code 4 when no solution exists");
}

int emit(const nlse::Report& rep, const Output& out) {
    std::ofstream file;
    if (!out.path.empty()) {
        file.open(out.path);
        if (!file) {
            std::cerr << "nlse: cannot open " << out.path << " for writing\n";
            return kInvalid;
        }
    }
    std::ostream& os = out.path.empty() ? std::cout : file;
    if (out.format == "json") nlse::write_json(os, rep);
    else nlse::write_csv(os, rep);
    if (rep.failures > 0) {
        std::cerr << "nlse: " << rep.failures << " self-check(s) failed\n";
        return kCheckFailed;
    }
    if (rep.no_solution && out.strict) return kNoSolution;
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stationary nonlinear Schroedinger equation with delta potentials"};
    app.require_subcommand(1);
    Output out;

    nlse::BoundStateParams bs;
    auto* c_bs = app.add_subcommand("bound-state", "Bound state of a single delta potential");
    c_bs->add_option("--lambda", bs.lambda, "Delta strength")->required();
    c_bs->add_option("--g", bs.g, "Nonlinearity")->required();
    c_bs->add_option("--x-min", bs.x_min, "Left end of the sample window");
    c_bs->add_option("--x-max", bs.x_max, "Right end of the sample window");
    c_bs->add_option("--grid", bs.grid, "Number of samples");
    c_bs->add_flag("--check", bs.check, "Verify the state with the residual oracle");
    add_output_flags(c_bs, out);

    nlse::TransitionParams tr;
    auto* c_tr = app.add_subcommand("transition", "Bound-to-scattering transition at g = -1");
    c_tr->add_option("--lambda-min", tr.lambda_min, "Start of the lambda sweep");
    c_tr->add_option("--lambda-max", tr.lambda_max, "End of the lambda sweep");
    c_tr->add_option("--grid", tr.grid, "Number of lambda values");
    add_output_flags(c_tr, out);

    nlse::ShellLinearParams sl;
    auto* c_sl = app.add_subcommand("shell-linear", "Linear delta-shell poles and amplitude ratio");
    c_sl->add_option("--a", sl.a, "Shell radius");
    c_sl->add_option("--lambda", sl.lambda, "Shell strength");
    c_sl->add_option("--n-max", sl.n_max, "Number of resonance bands");
    c_sl->add_option("--e-min", sl.e_min, "Lowest energy of the ratio table");
    c_sl->add_option("--e-max", sl.e_max, "Highest energy of the ratio table");
    c_sl->add_option("--grid", sl.grid, "Number of energies");
    add_output_flags(c_sl, out);

    nlse::ShellScanParams ss;
    ss.g_eff.clear();
    auto* c_ss = app.add_subcommand("shell-scan", "Nonlinear delta-shell resonance scans");
    c_ss->add_option("--a", ss.a, "Shell radius");
    c_ss->add_option("--lambda", ss.lambda, "Shell strength");
    c_ss->add_option("--g", ss.g, "Magnitude of the nonlinearity");
    c_ss->add_option("--g-eff", ss.g_eff, "Effective nonlinearities (repeatable)")
        ->required()
        ->allow_extra_args(false)
        ->delimiter(',');
    c_ss->add_option("--mu-min", ss.mu_min, "Lowest chemical potential");
    c_ss->add_option("--mu-max", ss.mu_max, "Highest chemical potential");
    c_ss->add_option("--grid", ss.grid, "Number of chemical potentials per scan");
    c_ss->add_flag("--check", ss.check, "Verify every 100th solution with the oracles");
    add_output_flags(c_ss, out);

    auto* c_ver = app.add_subcommand("verify", "Run the oracle self-checks");
    add_output_flags(c_ver, out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInvalid;
    }

    try {
        if (*c_bs) return emit(nlse::cmd_bound_state(bs), out);
        if (*c_tr) return emit(nlse::cmd_transition(tr), out);
        if (*c_sl) return emit(nlse::cmd_shell_linear(sl), out);
        if (*c_ss) return emit(nlse::cmd_shell_scan(ss), out);
        if (*c_ver) return emit(nlse::cmd_verify(), out);
    } catch (const nlse::NonConvergence& e) {
        std::cerr << "nlse: " << e.what() << '\n';
        return kNonConvergence;
    } catch (const nlse::NoSolutionError& e) {
        std::cerr << "nlse: " << e.what() << '\n';
        return kNoSolution;
    } catch (const std::domain_error& e) {
        std::cerr << "nlse: invalid parameters: " << e.what() << '\n';
        return kInvalid;
    } catch (const std::invalid_argument& e) {
        std::cerr << "nlse: invalid parameters: " << e.what() << '\n';
        return kInvalid;
    }
    return kInvalid;
}
