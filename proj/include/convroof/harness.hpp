#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "convroof/de.hpp"
#include "convroof/mixed_state.hpp"
#include "convroof/refine.hpp"

namespace convroof {

enum class ModelKind { Rho1, Rho2, QubitEnv, Gibbs, Sep1, Sep2, File };

std::optional<ModelKind> parse_model(std::string_view name);
std::string_view model_name(ModelKind kind);

struct ModelParams {
    double b = 1.0 / 3.0;
    double x = 1.0 / 3.0;
    double xIm = 0.0;
    double c = 0.7;
    double omega = 1.0;
    double t = 0.0;
    double d = 1.0;
    int ne = 2;
    double K = 1.0;
    double alpha = 1.0;
    double Omega = 5.0;
    double T = 1.0;
    std::string input;  // density JSON for ModelKind::File
};

/// Everything a command needs. Sweep bounds left empty take per-model defaults.
struct RunConfig {
    ModelKind model = ModelKind::Rho1;
    ModelParams params;
    DEConfig de;
    RefineConfig refine;
    bool refineOn = true;
    LogBase logBase = LogBase::Natural;
    std::optional<double> from;
    std::optional<double> to;
    std::optional<int> points;
    int kMax = 0;  // 0: rank
    int workers = 1;

    void validate() const;  // throws InputError
};

struct PreparedState {
    MixedState state;
    std::optional<double> oracle;  // closed-form EoF when one exists
};

/// Builds the model's state; `param` overrides the swept quantity (t for rho2
/// and qubit-env, T for gibbs).
PreparedState prepare_state(const RunConfig& config, std::optional<double> param = std::nullopt);

struct CurvePoint {
    double param = 0.0;
    double eofDE = 0.0;
    double eofRefined = 0.0;
    std::optional<double> oracle;
    double wallMillis = 0.0;
    std::uint64_t seed = 0;
    int generations = 0;
    int k = 0;
    int rank = 0;
    bool failed = false;
    std::string error;
};

/// evolve followed (optionally) by refine_unitary on one state.
CurvePoint solve_state(const PreparedState& prepared, const DEConfig& de, const RefineConfig& refine, bool refineOn);

/// Single-state EoF with seed config.de.seed.
CurvePoint run_eof(const RunConfig& config);

struct SweepAxis {
    double from;
    double to;
    int points;
    bool openStart;  // grid excludes `from` (temperature axis)
};

SweepAxis resolve_axis(const RunConfig& config);
std::vector<double> axis_grid(const SweepAxis& axis);

/// Evaluates every grid point independently with seed derive_seed(seed, i).
/// Rows come back in grid order whatever the worker count; failed points are
/// NaN rows with `failed` set.
std::vector<CurvePoint> run_sweep(const RunConfig& config);

inline constexpr std::string_view kCurveCsvHeader = "param,eof_de,eof_refined,oracle,wall_ms,seed,generations";

void write_curve_csv(std::ostream& out, const std::vector<CurvePoint>& points, bool timing = true);
void write_curve_json(std::ostream& out, const std::vector<CurvePoint>& points);
std::string curve_point_json(const CurvePoint& point, ModelKind model);

/// gnuplot script plotting a curve CSV written to `csv_path`.
std::string gnuplot_script(const std::string& csv_path, ModelKind model);

struct KRow {
    int k;
    double eofDE;
    double eofRefined;
    std::uint64_t seed;
    int generations;
};

/// One row per k in [rank, kMax]; rows run on config.workers.
std::vector<KRow> run_sweep_k(const RunConfig& config);
void write_k_csv(std::ostream& out, const std::vector<KRow>& rows);

struct HyperRow {
    double F;
    double CR;
    int repeat;
    std::uint64_t seed;
    int iterations;
    double j;
    double error;  // |J - oracle|
};

/// For each (F, CR, repeat) one DE run on rho1 with budget 2^maxExponent,
/// reporting the best J at every checkpoint 2^4 .. 2^maxExponent.
std::vector<HyperRow> run_bench_hyper(const RunConfig& config, const std::vector<double>& weights,
                                      const std::vector<double>& crossovers, int repeats, int maxExponent);
void write_hyper_csv(std::ostream& out, const std::vector<HyperRow>& rows);

/// "0.25", "1e-3" or a fraction such as "1/3". Throws InputError.
double parse_real(std::string_view text);

std::string format_real(double v);

}  // namespace convroof
