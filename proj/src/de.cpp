#include "convroof/de.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "convroof/errors.hpp"
#include "convroof/parallel.hpp"
#include "convroof/seeding.hpp"

namespace convroof {

void DEConfig::validate() const {
    if (!(F > 0.0 && F < 2.0)) throw InputError("DE: F must lie in (0, 2)");
    if (!(CR > 0.0 && CR < 1.0)) throw InputError("DE: CR must lie in (0, 1)");
    if (npop < 4) throw InputError("DE: population needs at least 4 members");
    if (maxGenerations < 1) throw InputError("DE: generation budget must be >= 1");
    if (k < 0) throw InputError("DE: k must be non-negative");
    if (stallGenerations < 0) throw InputError("DE: stall window must be non-negative");
}

RealVector agent_from_matrix(const ComplexMatrix& u) {
    const Eigen::Index k = u.rows();
    const Eigen::Index r = u.cols();
    RealVector x(2 * k * r);
    for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = 0; j < r; ++j) {
            x(2 * (i * r + j)) = u(i, j).real();
            x(2 * (i * r + j) + 1) = u(i, j).imag();
        }
    }
    return x;
}

ComplexMatrix matrix_from_agent(const RealVector& x, Eigen::Index k, Eigen::Index r) {
    if (x.size() != 2 * k * r) throw BadDimensions("agent length does not match 2kr");
    ComplexMatrix u(k, r);
    for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = 0; j < r; ++j) u(i, j) = Complex(x(2 * (i * r + j)), x(2 * (i * r + j) + 1));
    }
    return u;
}

RealVector differential_mutation(const RealVector& a, const RealVector& b, const RealVector& c,
                                 const RealVector& d, double F, double CR, Rng& rng) {
    const Eigen::Index n = a.size();
    if (b.size() != n || c.size() != n || d.size() != n) throw BadDimensions("mutation: agent lengths differ");
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    RealVector z(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        z(j) = uniform(rng) < CR ? a(j) + F * (b(j) - c(j)) : d(j);
    }
    return z;
}

std::optional<SemiUnitary> project(const ComplexMatrix& a, Projection mode) {
    return mode == Projection::QR ? try_project_qr(a) : try_project_polar(a);
}

namespace {

struct Member {
    SemiUnitary u;
    RealVector x;
    double j;
};

struct Candidate {
    std::optional<Member> member;
    std::size_t resampled = 0;
};

}  // namespace

DEResult evolve(const UnitaryObjective& objective, Eigen::Index k, Eigen::Index r, const DEConfig& config) {
    config.validate();
    if (k < r || r < 1) throw InputError("DE: need k >= r >= 1");

    const auto npop = static_cast<std::size_t>(config.npop);
    const int threads = config.parallelEval ? (config.threads > 0 ? config.threads : default_thread_count()) : 1;

    std::vector<Candidate> next(npop);
    parallel_for(npop, threads, [&](std::size_t i) {
        Rng rng(derive_seed(config.seed, 0, i));
        SemiUnitary u = haar_random(k, r, rng);
        RealVector x = agent_from_matrix(u.matrix());
        const double j = objective(u);
        next[i].member.emplace(Member{std::move(u), std::move(x), j});
    });
    std::vector<Member> pop;
    pop.reserve(npop);
    for (auto& c : next) pop.push_back(std::move(*c.member));

    DEResult result{pop.front().u, std::numeric_limits<double>::infinity(), {}, npop, 0, config.seed, 0};
    auto best_index = [&] {
        std::size_t b = 0;
        for (std::size_t i = 1; i < npop; ++i) {
            if (pop[i].j < pop[b].j) b = i;
        }
        return b;
    };

    double stall_reference = pop[best_index()].j;
    int stall = 0;
    for (int g = 1; g <= config.maxGenerations; ++g) {
        parallel_for(npop, threads, [&](std::size_t i) {
            Rng rng(derive_seed(config.seed, static_cast<std::uint64_t>(g), i));
            std::uniform_int_distribution<std::size_t> pick(0, npop - 1);
            std::size_t a, b, c;
            do a = pick(rng); while (a == i);
            do b = pick(rng); while (b == i || b == a);
            do c = pick(rng); while (c == i || c == a || c == b);

            const RealVector z = differential_mutation(pop[a].x, pop[b].x, pop[c].x, pop[i].x, config.F, config.CR, rng);
            Candidate cand;
            std::optional<SemiUnitary> u = project(matrix_from_agent(z, k, r), config.projection);
            while (!u) {
                ++cand.resampled;
                u = haar_random(k, r, rng);
            }
            const double j = objective(*u);
            RealVector x = agent_from_matrix(u->matrix());
            cand.member.emplace(Member{std::move(*u), std::move(x), j});
            next[i] = std::move(cand);
        });

        // Synchronous replacement: a candidate survives only on strict improvement.
        for (std::size_t i = 0; i < npop; ++i) {
            result.resampled += next[i].resampled;
            if (next[i].member->j < pop[i].j) pop[i] = std::move(*next[i].member);
        }
        result.evaluations += npop;
        result.generations = g;

        const double best = pop[best_index()].j;
        result.history.push_back(best);
        if (config.stallGenerations > 0) {
            if (best < stall_reference - 1e-12) {
                stall_reference = best;
                stall = 0;
            } else if (++stall >= config.stallGenerations) {
                break;
            }
        }
    }

    const std::size_t b = best_index();
    result.bestU = pop[b].u;
    result.bestJ = pop[b].j;
    return result;
}

DEResult evolve(const MixedState& state, const DEConfig& config) {
    const int k = config.k > 0 ? config.k : state.rank();
    if (k < state.rank()) {
        throw RankMismatch("DE: k = " + std::to_string(k) + " is below the state rank " + std::to_string(state.rank()));
    }
    return evolve([&state](const SemiUnitary& u) { return objective_j(state, u); }, k, state.rank(), config);
}

KSweepResult sweep_k(const MixedState& state, const DEConfig& config, int kMax) {
    if (kMax < state.rank()) throw InputError("sweep_k: kMax is below the state rank");
    KSweepResult out;
    for (int k = state.rank(); k <= kMax; ++k) {
        DEConfig c = config;
        c.k = k;
        c.seed = derive_seed(config.seed, static_cast<std::uint64_t>(k));
        out.runs.push_back(KSweepEntry{k, evolve(state, c)});
        if (out.runs.back().result.bestJ < out.runs[out.best].result.bestJ) out.best = out.runs.size() - 1;
    }
    return out;
}

}  // namespace convroof
