// convroof: convex-roof entanglement of formation by unitary differential
// evolution with BFGS refinement.
//
//   convroof eof --model rho1 --b 1/3 --x 1/3
//   convroof sweep --model rho2 --c 0.7 --points 96 --workers 4 --out rho2.csv
//   convroof sweep-k --model rho1 --kmax 10
//   convroof bench-hyper --F-list 0.1,0.5 --CR-list 0.3,0.9 --repeats 5
//
// Exit codes: 0 success, 2 input error, 3 optimizer failure, 4 partial sweep failure.

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "convroof/errors.hpp"
#include "convroof/harness.hpp"

namespace {

using namespace convroof;

enum ExitCode { kOk = 0, kInputError = 2, kOptimizerError = 3, kPartialSweep = 4 };

void add_real(CLI::App& app, const std::string& name, double& target, const std::string& help) {
    app.add_option_function<std::string>(name, [&target](const std::string& s) { target = parse_real(s); }, help)
        ->type_name("REAL");
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (!item.empty()) out.push_back(parse_real(item));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

struct Output {
    std::string path;
    std::string format;
    bool timing = true;
    bool gnuplot = false;
};

template <class Writer>
void emit(const Output& out, Writer&& write) {
    if (out.path.empty() || out.path == "-") {
        write(std::cout);
        return;
    }
    std::ofstream file(out.path);
    if (!file) throw InputError("cannot open output file " + out.path);
    write(file);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Convex-roof entanglement of formation by unitary differential evolution"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Flat key = value file; command-line flags take precedence");

    RunConfig cfg;
    Output out;
    std::string model = "rho1";
    std::string projection = "qr";
    std::string log_base = "e";
    int k_max = 0;
    std::string f_list = "0.1,0.5,0.9";
    std::string cr_list = "0.3,0.5,0.7,0.9";
    int repeats = 1;
    int max_exp = 13;

    app.add_option("--model", model, "rho1|rho2|qubit-env|gibbs|sep1|sep2|file")->capture_default_str();
    app.add_option("--input", cfg.params.input, "Density-matrix JSON file (implies --model file)");
    add_real(app, "--b", cfg.params.b, "rho1 population b");
    add_real(app, "--x", cfg.params.x, "rho1 coherence x (real part)");
    add_real(app, "--x-im", cfg.params.xIm, "rho1 coherence x (imaginary part)");
    add_real(app, "--c", cfg.params.c, "rho2 dephasing parameter c");
    add_real(app, "--omega", cfg.params.omega, "rho2 angular frequency");
    add_real(app, "--t", cfg.params.t, "time for rho2 / qubit-env");
    add_real(app, "--d", cfg.params.d, "qubit-env initial coherence d");
    app.add_option("--ne", cfg.params.ne, "qubit-env environment qubits")->capture_default_str();
    add_real(app, "--K", cfg.params.K, "gibbs block bound K");
    add_real(app, "--alpha", cfg.params.alpha, "gibbs coupling alpha");
    add_real(app, "--Omega", cfg.params.Omega, "gibbs splitting Omega");
    add_real(app, "--T", cfg.params.T, "gibbs temperature");

    app.add_option("--iters", cfg.de.maxGenerations, "DE generation budget")->capture_default_str();
    app.add_option("--npop", cfg.de.npop, "DE population size")->capture_default_str();
    add_real(app, "--F", cfg.de.F, "DE mutation weight, default 0.1");
    add_real(app, "--CR", cfg.de.CR, "DE crossover ratio, default 0.9");
    app.add_option("--k", cfg.de.k, "decomposition size (0: rank)")->capture_default_str();
    app.add_option("--projection", projection, "qr|polar")->capture_default_str();
    app.add_option("--seed", cfg.de.seed, "master seed")->capture_default_str();
    app.add_option("--stall", cfg.de.stallGenerations, "stop DE after this many flat generations (0: off)");
    app.add_flag("--refine,!--no-refine", cfg.refineOn, "BFGS refinement of the DE result (default on)");
    app.add_option("--bfgs-iters", cfg.refine.maxIter, "BFGS iteration limit")->capture_default_str();
    add_real(app, "--grad-tol", cfg.refine.gradTol, "BFGS gradient tolerance");
    add_real(app, "--fd-step", cfg.refine.fdStep, "finite-difference step");
    app.add_option("--log-base", log_base, "e|2")->capture_default_str();

    app.add_option_function<std::string>("--from", [&](const std::string& s) { cfg.from = parse_real(s); },
                                         "sweep start");
    app.add_option_function<std::string>("--to", [&](const std::string& s) { cfg.to = parse_real(s); }, "sweep end");
    app.add_option_function<int>("--points", [&](int n) { cfg.points = n; }, "sweep points");
    app.add_option("--workers", cfg.workers, "worker threads")->capture_default_str();

    app.add_option("--out", out.path, "output path (default stdout)");
    app.add_option("--format", out.format, "csv|json");
    app.add_flag("!--no-timing", out.timing, "write wall_ms as 0 so output is reproducible");
    app.add_flag("--gnuplot", out.gnuplot, "also write <out>.gp plotting the curve");

    CLI::App* eof = app.add_subcommand("eof", "EoF of a single state (JSON on stdout)")->fallthrough();
    CLI::App* sweep = app.add_subcommand("sweep", "EoF along t (rho2, qubit-env) or T (gibbs)")->fallthrough();
    CLI::App* sweep_k_cmd = app.add_subcommand("sweep-k", "EoF for each decomposition size k")->fallthrough();
    sweep_k_cmd->add_option("--kmax", k_max, "largest k (default: rank)");
    CLI::App* bench = app.add_subcommand("bench-hyper", "final J over (F, CR) and iteration budgets")->fallthrough();
    bench->add_option("--F-list", f_list, "comma-separated weights")->capture_default_str();
    bench->add_option("--CR-list", cr_list, "comma-separated crossover ratios")->capture_default_str();
    bench->add_option("--repeats", repeats, "seeds per (F, CR)")->capture_default_str();
    bench->add_option("--max-exp", max_exp, "largest budget exponent (checkpoints 2^4 .. 2^max)")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kInputError;
    }

    try {
        if (!cfg.params.input.empty()) model = "file";
        const auto kind = parse_model(model);
        if (!kind) throw InputError("unknown model '" + model + "'");
        cfg.model = *kind;
        if (projection == "qr") {
            cfg.de.projection = Projection::QR;
        } else if (projection == "polar") {
            cfg.de.projection = Projection::Polar;
        } else {
            throw InputError("--projection must be qr or polar");
        }
        if (log_base == "e") {
            cfg.logBase = LogBase::Natural;
        } else if (log_base == "2") {
            cfg.logBase = LogBase::Two;
        } else {
            throw InputError("--log-base must be e or 2");
        }
        if (!out.format.empty() && out.format != "csv" && out.format != "json") {
            throw InputError("--format must be csv or json");
        }
        cfg.kMax = k_max;

        if (eof->parsed()) {
            const CurvePoint p = run_eof(cfg);
            emit(out, [&](std::ostream& os) {
                if (out.format == "csv") {
                    write_curve_csv(os, {p}, out.timing);
                } else {
                    os << curve_point_json(p, cfg.model) << '\n';
                }
            });
            return kOk;
        }
        if (sweep->parsed()) {
            const std::vector<CurvePoint> points = run_sweep(cfg);
            emit(out, [&](std::ostream& os) {
                if (out.format == "json") {
                    write_curve_json(os, points);
                } else {
                    write_curve_csv(os, points, out.timing);
                }
            });
            if (out.gnuplot && !out.path.empty() && out.path != "-") {
                std::ofstream gp(out.path + ".gp");
                gp << gnuplot_script(out.path, cfg.model);
            }
            int failed = 0;
            for (const auto& p : points) {
                if (p.failed) {
                    ++failed;
                    std::cerr << "point " << format_real(p.param) << " failed: " << p.error << '\n';
                }
            }
            if (failed > 0) {
                std::cerr << failed << " of " << points.size() << " sweep points failed\n";
                return kPartialSweep;
            }
            return kOk;
        }
        if (sweep_k_cmd->parsed()) {
            const std::vector<KRow> rows = run_sweep_k(cfg);
            emit(out, [&](std::ostream& os) { write_k_csv(os, rows); });
            return kOk;
        }
        if (bench->parsed()) {
            const auto rows = run_bench_hyper(cfg, parse_list(f_list), parse_list(cr_list), repeats, max_exp);
            emit(out, [&](std::ostream& os) { write_hyper_csv(os, rows); });
            return kOk;
        }
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "optimizer failure: " << e.what() << '\n';
        return kOptimizerError;
    }
    return kOk;
}
