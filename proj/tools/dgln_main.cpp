// dgln: exact verification engine for the generalized cluster structure on the
// Drinfeld double of GL_n (log-canonicality, Casimirs, determinantal
// identities, quiver construction, generalized mutation).

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

#include "dgln/harness.hpp"

namespace {

struct CommonOpts {
    int n = 3;
    int points = 5;
    int trials = 10;
    std::uint64_t seed = 1;
    std::string bracket = "double";
    std::string out;
};

dgln::BracketChoice parse_bracket(const std::string& s) {
    if (s == "double") return dgln::BracketChoice::Double;
    if (s == "std") return dgln::BracketChoice::Std;
    if (s == "dual") return dgln::BracketChoice::Dual;
    throw CLI::ValidationError("--bracket must be double, std or dual");
}

int emit(const dgln::Report& rep, const std::string& out, double elapsed_ms) {
    std::string doc = rep.to_json(elapsed_ms);
    if (out.empty() || out == "-") {
        std::cout << doc << "\n";
    } else {
        std::ofstream f(out);
        f << doc << "\n";
    }
    for (const auto& c : rep.checks)
        std::cerr << (c.pass ? "[pass] " : "[FAIL] ") << c.name << (c.detail.empty() ? "" : ": " + c.detail)
                  << "\n";
    return rep.exit_code;
}

template <class F>
int timed(F&& f, const std::string& out) {
    auto t0 = std::chrono::steady_clock::now();
    dgln::Report rep = f();
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return emit(rep, out, ms);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact checks for the generalized cluster structure on the double of GL_n"};
    app.set_config("--config");
    app.require_subcommand(1);

    CommonOpts o;
    bool corrupt = false, dual = false, diagonal = false, check_reg = false;
    std::string at_vertex, sequence, dot_path, json_path;

    auto add_common = [&](CLI::App* cmd, bool with_points, bool with_trials) {
        cmd->add_option("--n", o.n, "matrix size")->required()->check(CLI::Range(2, 12));
        if (with_points) cmd->add_option("--points", o.points, "number of sample points");
        if (with_trials) cmd->add_option("--trials", o.trials, "number of random trials");
        cmd->add_option("--seed", o.seed, "rng seed");
        cmd->add_option("--out", o.out, "write the JSON report here instead of stdout");
    };

    CLI::App* verify = app.add_subcommand("verify", "run a verification campaign");
    verify->require_subcommand(1);

    CLI::App* lc = verify->add_subcommand("log-canonical", "constant exact Omega for the family");
    add_common(lc, true, false);
    lc->add_option("--bracket", o.bracket, "double | std | dual");
    lc->add_flag("--corrupt", corrupt, "debug: corrupt phi_11 and expect a violation");

    CLI::App* ident = verify->add_subcommand("identity", "the long determinantal identity");
    add_common(ident, false, true);

    CLI::App* cor = verify->add_subcommand("corollary", "the pencil factorization at phi_11");
    add_common(cor, false, true);

    CLI::App* cas = verify->add_subcommand("casimirs", "pencil coefficients commute with the family");
    add_common(cas, true, false);
    cas->add_option("--bracket", o.bracket, "double | std | dual");

    CLI::App* quiver = app.add_subcommand("quiver", "emit the quiver as DOT and/or JSON");
    quiver->add_option("--n", o.n, "matrix size")->required()->check(CLI::Range(2, 12));
    quiver->add_option("--dot", dot_path, "write DOT here ('-' for stdout)");
    quiver->add_option("--json", json_path, "write JSON here ('-' for stdout)");
    quiver->add_flag("--dual", dual, "the dual quiver");
    quiver->add_flag("--diagonal", diagonal, "the diagonal reduction");

    CLI::App* mut = app.add_subcommand("mutate", "apply mutations and re-check compatibility");
    add_common(mut, true, false);
    mut->add_option("--at", at_vertex, "single vertex to mutate, e.g. phi11");
    mut->add_option("--sequence", sequence, "comma-separated vertex names");
    mut->add_flag("--check-regularity", check_reg, "divisibility evidence for each exchange");
    mut->add_flag("--dual", dual, "mutate the dual seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);  // prints help or the parse diagnostic
        return code == 0 ? 0 : 1;  // usage errors are exit 1 by contract
    }

    try {
        if (lc->parsed())
            return timed([&] { return dgln::run_log_canonical(o.n, o.points, o.seed, parse_bracket(o.bracket), corrupt); },
                         o.out);
        if (ident->parsed())
            return timed([&] { return dgln::run_identity_campaign(o.n, o.trials, o.seed); }, o.out);
        if (cor->parsed()) {
            if (o.n <= 2) {
                std::cerr << "verify corollary: stated for n > 2\n";
                return 1;
            }
            return timed([&] { return dgln::run_corollary_campaign(o.n, o.trials, o.seed); }, o.out);
        }
        if (cas->parsed())
            return timed([&] { return dgln::run_casimirs(o.n, o.points, o.seed, parse_bracket(o.bracket)); },
                         o.out);
        if (quiver->parsed()) {
            if (dual && diagonal) {
                std::cerr << "quiver: --dual and --diagonal are mutually exclusive\n";
                return 1;
            }
            auto qe = dgln::export_quiver(o.n, dual, diagonal);
            auto write = [](const std::string& path, const std::string& text) {
                if (path == "-") {
                    std::cout << text;
                } else {
                    std::ofstream f(path);
                    f << text;
                }
            };
            if (!dot_path.empty()) write(dot_path, qe.dot);
            if (!json_path.empty()) write(json_path, qe.json);
            std::cerr << "vertices: " << qe.vertex_count << " (+" << qe.isolated_count << " isolated), arrows: "
                      << qe.arrow_count << "\n";
            return 0;
        }
        if (mut->parsed()) {
            std::vector<std::string> seq;
            if (!at_vertex.empty()) seq.push_back(at_vertex);
            std::string cur;
            for (char c : sequence) {
                if (c == ',') {
                    if (!cur.empty()) seq.push_back(cur);
                    cur.clear();
                } else {
                    cur += c;
                }
            }
            if (!cur.empty()) seq.push_back(cur);
            if (seq.empty()) {
                std::cerr << "mutate: need --at or --sequence\n";
                return 1;
            }
            return timed([&] { return dgln::run_mutate(o.n, seq, o.points, o.seed, check_reg, dual); }, o.out);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const dgln::ResampleError& e) {
        std::cerr << "sampling failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
