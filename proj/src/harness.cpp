#include "convroof/harness.hpp"

#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include <json.hpp>

#include "convroof/density_io.hpp"
#include "convroof/errors.hpp"
#include "convroof/models.hpp"
#include "convroof/monotones.hpp"
#include "convroof/parallel.hpp"
#include "convroof/seeding.hpp"

namespace convroof {

namespace {

constexpr struct {
    ModelKind kind;
    std::string_view name;
} kModelNames[] = {
    {ModelKind::Rho1, "rho1"},   {ModelKind::Rho2, "rho2"}, {ModelKind::QubitEnv, "qubit-env"},
    {ModelKind::Gibbs, "gibbs"}, {ModelKind::Sep1, "sep1"}, {ModelKind::Sep2, "sep2"},
    {ModelKind::File, "file"},
};

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

double parse_plain(std::string_view s, std::string_view whole) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
        throw InputError("cannot parse number \"" + std::string(whole) + "\"");
    }
    return v;
}

}  // namespace

std::optional<ModelKind> parse_model(std::string_view name) {
    for (const auto& m : kModelNames) {
        if (m.name == name) return m.kind;
    }
    return std::nullopt;
}

std::string_view model_name(ModelKind kind) {
    for (const auto& m : kModelNames) {
        if (m.kind == kind) return m.name;
    }
    return "unknown";
}

double parse_real(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return parse_plain(text, text);
    const double num = parse_plain(text.substr(0, slash), text);
    const double den = parse_plain(text.substr(slash + 1), text);
    if (den == 0.0) throw InputError("division by zero in \"" + std::string(text) + "\"");
    return num / den;
}

std::string format_real(double v) {
    if (std::isnan(v)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void RunConfig::validate() const {
    de.validate();
    refine.validate();
    if (workers < 1) throw InputError("workers must be >= 1");
    if (points && *points < 1) throw InputError("points must be >= 1");
    if (from && to && *from > *to) throw InputError("sweep start must not exceed sweep end");
    if (kMax < 0) throw InputError("kmax must be non-negative");
    if (model == ModelKind::File && params.input.empty()) throw InputError("model 'file' needs --input");
}

PreparedState prepare_state(const RunConfig& config, std::optional<double> param) {
    const ModelParams& p = config.params;
    const LogBase base = config.logBase;
    switch (config.model) {
        case ModelKind::Rho1: {
            Rho1Model m = make_rho1(Rho1Params{p.b, Complex(p.x, p.xIm)}, base);
            const double oracle = wootters_eof(m.density, base);
            return {std::move(m.state), oracle};
        }
        case ModelKind::Rho2: {
            const Rho2Params rp{p.c, p.omega, param.value_or(p.t)};
            return {make_rho2(rp, base), wootters_eof(rho2_matrix(rp), base)};
        }
        case ModelKind::QubitEnv: {
            MixedState st = make_qubit_env(QubitEnvParams{p.d, p.ne, param.value_or(p.t)}, base);
            std::optional<double> oracle;
            if (st.rank() == 1) oracle = pure_entanglement(st.eigenvector(0), st.dim_a(), st.dim_b(), base);
            return {std::move(st), oracle};
        }
        case ModelKind::Gibbs: {
            const GibbsParams gp{p.K, p.alpha, p.Omega, param.value_or(p.T)};
            GibbsModel g = make_gibbs(gp, base);
            return {std::move(g.state), blockwise_gibbs_eof_oracle(gp.K, gp.alpha, gp.Omega, gp.T, base)};
        }
        case ModelKind::Sep1:
            return {MixedState::from_density(sep1_matrix(), 2, 2, kDefaultRankTolerance, base),
                    wootters_eof(sep1_matrix(), base)};
        case ModelKind::Sep2:
            return {MixedState::from_density(sep2_matrix(), 2, 2, kDefaultRankTolerance, base),
                    wootters_eof(sep2_matrix(), base)};
        case ModelKind::File: {
            const DensityFile f = load_density_json(p.input);
            MixedState st = MixedState::from_density(f.rho, f.dimA, f.dimB, kDefaultRankTolerance, base);
            std::optional<double> oracle;
            if (f.dimA == 2 && f.dimB == 2) oracle = wootters_eof(f.rho, base);
            return {std::move(st), oracle};
        }
    }
    throw InputError("unknown model");
}

CurvePoint solve_state(const PreparedState& prepared, const DEConfig& de, const RefineConfig& refine, bool refineOn) {
    const auto start = std::chrono::steady_clock::now();
    const DEResult result = evolve(prepared.state, de);

    CurvePoint point;
    point.eofDE = result.bestJ;
    point.eofRefined = result.bestJ;
    point.oracle = prepared.oracle;
    point.seed = de.seed;
    point.generations = result.generations;
    point.k = static_cast<int>(result.bestU.k());
    point.rank = prepared.state.rank();
    if (refineOn) point.eofRefined = refine_unitary(prepared.state, result.bestU, refine).j;
    point.wallMillis = elapsed_ms(start);
    return point;
}

CurvePoint run_eof(const RunConfig& config) {
    config.validate();
    const PreparedState prepared = prepare_state(config);
    DEConfig de = config.de;
    if (config.workers > 1) {
        de.parallelEval = true;
        de.threads = config.workers;
    }
    CurvePoint point = solve_state(prepared, de, config.refine, config.refineOn);
    switch (config.model) {
        case ModelKind::Rho2:
        case ModelKind::QubitEnv: point.param = config.params.t; break;
        case ModelKind::Gibbs: point.param = config.params.T; break;
        default: point.param = kNaN; break;
    }
    return point;
}

SweepAxis resolve_axis(const RunConfig& config) {
    SweepAxis axis{};
    switch (config.model) {
        case ModelKind::Rho2:
            axis = {0.0, 2.0 * std::numbers::pi / config.params.omega, 96, false};
            break;
        case ModelKind::QubitEnv:
            axis = {0.0, 2.0 * qubit_env_revival_time(config.params.ne), 96, false};
            break;
        case ModelKind::Gibbs:
            axis = {0.0, 5.0, 64, true};
            break;
        default:
            throw InputError("model '" + std::string(model_name(config.model)) + "' has no sweep axis");
    }
    if (config.from) axis.from = *config.from;
    if (config.to) axis.to = *config.to;
    if (config.points) axis.points = *config.points;
    if (axis.points < 1 || axis.from > axis.to) throw InputError("invalid sweep axis");
    return axis;
}

std::vector<double> axis_grid(const SweepAxis& axis) {
    std::vector<double> grid(static_cast<std::size_t>(axis.points));
    const double span = axis.to - axis.from;
    for (int i = 0; i < axis.points; ++i) {
        double f;
        if (axis.openStart) {
            f = static_cast<double>(i + 1) / axis.points;
        } else {
            f = axis.points == 1 ? 0.0 : static_cast<double>(i) / (axis.points - 1);
        }
        grid[static_cast<std::size_t>(i)] = axis.from + span * f;
    }
    return grid;
}

std::vector<CurvePoint> run_sweep(const RunConfig& config) {
    config.validate();
    const std::vector<double> grid = axis_grid(resolve_axis(config));
    // Surface bad model parameters as an input error rather than as failed rows.
    (void)prepare_state(config, grid.front());

    std::vector<CurvePoint> points(grid.size());
    parallel_for(grid.size(), config.workers, [&](std::size_t i) {
        DEConfig de = config.de;
        de.seed = derive_seed(config.de.seed, i);
        de.parallelEval = false;
        CurvePoint point;
        try {
            point = solve_state(prepare_state(config, grid[i]), de, config.refine, config.refineOn);
        } catch (const std::exception& e) {
            point.eofDE = point.eofRefined = kNaN;
            point.wallMillis = kNaN;
            point.failed = true;
            point.error = e.what();
        }
        point.param = grid[i];
        point.seed = de.seed;
        points[i] = std::move(point);
    });
    return points;
}

void write_curve_csv(std::ostream& out, const std::vector<CurvePoint>& points, bool timing) {
    out << kCurveCsvHeader << '\n';
    for (const auto& p : points) {
        out << format_real(p.param) << ',' << format_real(p.eofDE) << ',' << format_real(p.eofRefined) << ','
            << (p.oracle ? format_real(*p.oracle) : "") << ',' << (timing ? format_real(p.wallMillis) : "0") << ','
            << p.seed << ',' << p.generations << '\n';
    }
}

namespace {

nlohmann::json number_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

nlohmann::json point_to_json(const CurvePoint& p) {
    nlohmann::json j;
    j["param"] = number_or_null(p.param);
    j["eof_de"] = number_or_null(p.eofDE);
    j["eof_refined"] = number_or_null(p.eofRefined);
    j["oracle"] = p.oracle ? number_or_null(*p.oracle) : nlohmann::json(nullptr);
    j["wall_ms"] = number_or_null(p.wallMillis);
    j["seed"] = p.seed;
    j["generations"] = p.generations;
    if (p.failed) j["error"] = p.error;
    return j;
}

}  // namespace

void write_curve_json(std::ostream& out, const std::vector<CurvePoint>& points) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& p : points) arr.push_back(point_to_json(p));
    out << arr.dump(2) << '\n';
}

std::string curve_point_json(const CurvePoint& point, ModelKind model) {
    nlohmann::json j;
    j["model"] = std::string(model_name(model));
    j["eof"] = number_or_null(point.eofRefined);
    j["eofDE"] = number_or_null(point.eofDE);
    j["oracle"] = point.oracle ? number_or_null(*point.oracle) : nlohmann::json(nullptr);
    j["k"] = point.k;
    j["rank"] = point.rank;
    j["seed"] = point.seed;
    j["generations"] = point.generations;
    j["wallMillis"] = point.wallMillis;
    return j.dump();
}

std::string gnuplot_script(const std::string& csv_path, ModelKind model) {
    const char* xlabel = model == ModelKind::Gibbs ? "k_B T" : "t";
    std::string s;
    s += "set datafile separator ','\n";
    s += "set xlabel '" + std::string(xlabel) + "'\n";
    s += "set ylabel 'EoF'\n";
    s += "set key top right\n";
    s += "plot '" + csv_path + "' every ::1 using 1:3 with linespoints title 'DE + BFGS', \\\n";
    s += "     '' every ::1 using 1:4 with lines title 'oracle'\n";
    return s;
}

std::vector<KRow> run_sweep_k(const RunConfig& config) {
    config.validate();
    const PreparedState prepared = prepare_state(config);
    const int kMax = config.kMax > 0 ? config.kMax : prepared.state.rank();
    const KSweepResult sweep = sweep_k(prepared.state, config.de, kMax);

    std::vector<KRow> rows(sweep.runs.size());
    parallel_for(rows.size(), config.workers, [&](std::size_t i) {
        const KSweepEntry& e = sweep.runs[i];
        double refined = e.result.bestJ;
        if (config.refineOn) refined = refine_unitary(prepared.state, e.result.bestU, config.refine).j;
        rows[i] = KRow{e.k, e.result.bestJ, refined, e.result.seed, e.result.generations};
    });
    return rows;
}

void write_k_csv(std::ostream& out, const std::vector<KRow>& rows) {
    out << "k,eof_de,eof_refined,seed,generations\n";
    for (const auto& r : rows) {
        out << r.k << ',' << format_real(r.eofDE) << ',' << format_real(r.eofRefined) << ',' << r.seed << ','
            << r.generations << '\n';
    }
}

std::vector<HyperRow> run_bench_hyper(const RunConfig& config, const std::vector<double>& weights,
                                      const std::vector<double>& crossovers, int repeats, int maxExponent) {
    config.validate();
    if (weights.empty() || crossovers.empty()) throw InputError("bench-hyper: F and CR lists must be nonempty");
    if (repeats < 1) throw InputError("bench-hyper: repeats must be >= 1");
    if (maxExponent < 4 || maxExponent > 20) throw InputError("bench-hyper: max exponent must lie in [4, 20]");
    const PreparedState prepared = prepare_state(config);
    if (!prepared.oracle) throw InputError("bench-hyper: model has no reference value");

    struct Task {
        double F;
        double CR;
        int repeat;
    };
    std::vector<Task> tasks;
    for (double f : weights) {
        for (double cr : crossovers) {
            for (int rep = 0; rep < repeats; ++rep) tasks.push_back({f, cr, rep});
        }
    }
    for (const auto& t : tasks) {
        DEConfig probe = config.de;
        probe.F = t.F;
        probe.CR = t.CR;
        probe.validate();
    }

    const int checkpoints = maxExponent - 3;
    std::vector<HyperRow> rows(tasks.size() * static_cast<std::size_t>(checkpoints));
    parallel_for(tasks.size(), config.workers, [&](std::size_t ti) {
        const Task& t = tasks[ti];
        DEConfig de = config.de;
        de.F = t.F;
        de.CR = t.CR;
        de.maxGenerations = 1 << maxExponent;
        de.stallGenerations = 0;
        de.parallelEval = false;
        // Common random numbers across (F, CR) pairs for the same repeat.
        de.seed = derive_seed(config.de.seed, static_cast<std::uint64_t>(t.repeat));
        const DEResult r = evolve(prepared.state, de);
        for (int c = 0; c < checkpoints; ++c) {
            const int iters = 1 << (c + 4);
            const double j = r.history[static_cast<std::size_t>(iters - 1)];
            rows[ti * static_cast<std::size_t>(checkpoints) + static_cast<std::size_t>(c)] =
                HyperRow{t.F, t.CR, t.repeat, de.seed, iters, j, std::abs(j - *prepared.oracle)};
        }
    });
    return rows;
}

void write_hyper_csv(std::ostream& out, const std::vector<HyperRow>& rows) {
    out << "F,CR,repeat,seed,iterations,J,abs_error\n";
    for (const auto& r : rows) {
        out << format_real(r.F) << ',' << format_real(r.CR) << ',' << r.repeat << ',' << r.seed << ','
            << r.iterations << ',' << format_real(r.j) << ',' << format_real(r.error) << '\n';
    }
}

}  // namespace convroof
