#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lram/bench.hpp"

namespace {

using namespace lram;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumerical = 3;

std::vector<std::size_t> parse_ranks(const std::string& text) {
    std::vector<std::size_t> ranks;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const std::size_t dots = item.find("..");
        if (dots != std::string::npos) {
            const std::size_t lo = std::stoul(item.substr(0, dots));
            const std::size_t hi = std::stoul(item.substr(dots + 2));
            for (std::size_t r = lo; r <= hi; ++r) ranks.push_back(r);
        } else if (!item.empty()) {
            ranks.push_back(std::stoul(item));
        }
    }
    if (ranks.empty()) throw CLI::ValidationError("--ranks", "no ranks given");
    return ranks;
}

std::vector<Method> parse_methods(const std::string& text) {
    std::vector<Method> methods;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item == "l1") methods.push_back(Method::L1Solver);
        else if (item == "linf") methods.push_back(Method::LinfSolver);
        else if (item == "svd") methods.push_back(Method::SvdBaseline);
        else if (item == "colsample") methods.push_back(Method::ColumnSampling);
        else if (!item.empty())
            throw CLI::ValidationError("--methods", "unknown method '" + item + "'");
    }
    if (methods.empty()) throw CLI::ValidationError("--methods", "no methods given");
    return methods;
}

struct SolveArgs {
    std::string p = "1";
    std::size_t rank = 1;
    double tau = 1e-3;
    double lambda = 1e-3;
    std::size_t iters = 40000;
    std::string init = "svd";
    std::uint64_t seed = 0;
    std::string in_path;
    std::string out_path;
};

int run_solve(const SolveArgs& args) {
    const DenseMatrix m = load_matrix_market(args.in_path);
    PracticalParams prac{args.tau, args.lambda, args.iters};
    SolveOptions opts;
    opts.init = args.init == "grad" ? InitMode::GradientInit : InitMode::SvdInit;

    const SolveReport rep = args.p == "inf" ? solve_linf(m, args.rank, prac, opts)
                                            : solve_l1(m, args.rank, prac, opts);
    const DenseMatrix residual = sub(m, rep.factors.product());
    const double err =
        args.p == "inf" ? entrywise_linf_norm(residual) : entrywise_l1_norm(residual);

    if (!args.out_path.empty()) {
        std::ofstream out(args.out_path);
        if (!out) throw std::runtime_error("cannot write " + args.out_path);
        out << "# schema: lram-solve-trace v1\n";
        out << "iteration,objective,lp_error\n";
        char buf[40];
        for (std::size_t i = 0; i < rep.objective_trace.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%.16e", rep.objective_trace[i].second);
            out << rep.objective_trace[i].first << "," << buf;
            std::snprintf(buf, sizeof(buf), "%.16e",
                          i < rep.error_trace.size() ? rep.error_trace[i].second : 0.0);
            out << "," << buf << "\n";
        }
    }
    std::printf("l%s error after %zu iterations: %.10e (%.3f s)\n", args.p.c_str(),
                rep.iterations_run, err, rep.wall_time_seconds);
    return kExitOk;
}

struct BenchArgs {
    std::string experiment = "uniform";
    std::size_t m = 20, n = 30;
    std::string file_path;
    std::string ranks = "1..5";
    std::size_t trials = 10;
    std::string methods = "l1,svd";
    std::string p = "1";
    std::uint64_t seed = 0;
    double tau = 1e-3;
    double lambda = 1e-3;
    std::size_t iters = 40000;
    std::string mode = "practical";
    double opt = 1.0, eps = 0.5, xfro2 = 1.0, sigmar = 1.0;
    bool time_matched = false;
    bool no_time = false;
    std::size_t workers = 0;
    std::string out_path = "bench.csv";
    std::string summary_path;
    std::string plot_path;
};

int run_bench(const BenchArgs& args) {
    ExperimentSpec spec;
    if (args.experiment == "uniform") spec.generator = UniformRandom{args.m, args.n};
    else if (args.experiment == "sign") spec.generator = SignRandom{args.m, args.n};
    else if (args.experiment == "quantized") spec.generator = QuantizedLowRank{args.m, args.n};
    else if (args.experiment == "file") spec.generator = FromFile{args.file_path};
    else throw CLI::ValidationError("--experiment", "unknown experiment");

    spec.ranks = parse_ranks(args.ranks);
    spec.trials = args.trials;
    spec.methods = parse_methods(args.methods);
    spec.baseline_norm = args.p == "inf" ? NormP::Linf : NormP::L1;
    spec.seed = args.seed;
    spec.workers = args.workers;
    spec.time_matched = args.time_matched;
    spec.measure_time = !args.no_time;
    if (args.mode == "theory") {
        TheoryParams tp;
        tp.opt_estimate = args.opt;
        tp.epsilon = args.eps;
        tp.xstar_fro_sq = args.xfro2;
        tp.sigma_r_hat = args.sigmar;
        spec.mode = tp;
    } else {
        spec.mode = PracticalParams{args.tau, args.lambda, args.iters};
    }

    const std::vector<ExperimentRow> rows = run_experiment(spec);
    emit_csv(rows, args.out_path);
    if (!args.summary_path.empty()) emit_summary(rows, args.summary_path);
    if (!args.plot_path.empty()) emit_plotdata(rows, args.plot_path);

    bool any_error = false;
    for (const ExperimentRow& row : rows)
        if (!row.ok) {
            std::fprintf(stderr, "error row: %s r=%zu trial=%zu: %s\n", row.method.c_str(),
                         row.rank, row.trial, row.error.c_str());
            any_error = true;
        }
    std::printf("wrote %zu rows to %s\n", rows.size(), args.out_path.c_str());
    return any_error ? kExitNumerical : kExitOk;
}

struct GenArgs {
    std::string kind = "uniform";
    std::size_t m = 20, n = 30;
    std::size_t rank = 3;
    std::uint64_t seed = 0;
    std::string out_path = "instance.mtx";
};

int run_gen(const GenArgs& args) {
    DenseMatrix m(1, 1);
    if (args.kind == "uniform") m = gen_uniform(args.m, args.n, args.seed);
    else if (args.kind == "sign") m = gen_sign(args.m, args.n, args.seed);
    else if (args.kind == "quantized") {
        const QuantizedInstance inst = gen_quantized(args.m, args.n, args.rank, args.seed);
        std::printf("certificate |M - planted|_inf = %.6f\n", inst.certificate);
        m = inst.m;
    } else {
        throw CLI::ValidationError("--experiment", "unknown generator");
    }
    save_matrix_market(m, args.out_path);
    std::printf("wrote %zux%zu matrix to %s\n", m.rows(), m.cols(), args.out_path.c_str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Smoothed non-convex gradient descent for entrywise l1/linf "
                 "low-rank matrix approximation"};
    app.require_subcommand(1);

    SolveArgs solve_args;
    CLI::App* solve = app.add_subcommand("solve", "approximate one matrix from a MatrixMarket file");
    solve->add_option("--p", solve_args.p, "norm: 1 or inf")->check(CLI::IsMember({"1", "inf"}));
    solve->add_option("--rank", solve_args.rank, "target rank")->required();
    solve->add_option("--tau", solve_args.tau, "smoothing parameter");
    solve->add_option("--lambda", solve_args.lambda, "ridge weight");
    solve->add_option("--iters", solve_args.iters, "iteration budget");
    solve->add_option("--init", solve_args.init, "initialization: svd or grad")
        ->check(CLI::IsMember({"svd", "grad"}));
    solve->add_option("--seed", solve_args.seed, "seed (reserved; the solver is deterministic)");
    solve->add_option("--in", solve_args.in_path, "input MatrixMarket file")->required();
    solve->add_option("--out", solve_args.out_path, "trace CSV output path");

    BenchArgs bench_args;
    CLI::App* bench = app.add_subcommand("bench", "Monte Carlo benchmark harness");
    bench->add_option("--experiment", bench_args.experiment, "uniform|sign|quantized|file");
    bench->add_option("--m", bench_args.m, "rows");
    bench->add_option("--n", bench_args.n, "cols");
    bench->add_option("--file", bench_args.file_path, "MatrixMarket input for --experiment file");
    bench->add_option("--ranks", bench_args.ranks, "comma list or lo..hi");
    bench->add_option("--trials", bench_args.trials, "Monte Carlo trials");
    bench->add_option("--methods", bench_args.methods, "comma list of l1,linf,svd,colsample");
    bench->add_option("--p", bench_args.p, "baseline error norm: 1 or inf")
        ->check(CLI::IsMember({"1", "inf"}));
    bench->add_option("--seed", bench_args.seed, "experiment seed");
    bench->add_option("--mode", bench_args.mode, "practical|theory")
        ->check(CLI::IsMember({"practical", "theory"}));
    bench->add_option("--tau", bench_args.tau, "practical-mode tau");
    bench->add_option("--lambda", bench_args.lambda, "practical-mode lambda");
    bench->add_option("--iters", bench_args.iters, "practical-mode iteration budget");
    bench->add_option("--opt", bench_args.opt, "theory-mode OPT estimate");
    bench->add_option("--eps", bench_args.eps, "theory-mode epsilon");
    bench->add_option("--xfro2", bench_args.xfro2, "theory-mode ||X*||_F^2");
    bench->add_option("--sigmar", bench_args.sigmar, "theory-mode sigma_r");
    bench->add_flag("--time-matched", bench_args.time_matched,
                    "give column sampling at least the solver wall time");
    bench->add_flag("--no-time", bench_args.no_time, "report zero wall times (deterministic output)");
    bench->add_option("--workers", bench_args.workers, "worker threads (0 = auto)");
    bench->add_option("--out", bench_args.out_path, "raw CSV output path");
    bench->add_option("--summary", bench_args.summary_path, "summary CSV output path");
    bench->add_option("--plot", bench_args.plot_path, "plot-data output path");

    GenArgs gen_args;
    CLI::App* gen = app.add_subcommand("gen", "write a synthetic instance to MatrixMarket");
    gen->add_option("--experiment", gen_args.kind, "uniform|sign|quantized");
    gen->add_option("--m", gen_args.m, "rows");
    gen->add_option("--n", gen_args.n, "cols");
    gen->add_option("--rank", gen_args.rank, "planted rank for quantized");
    gen->add_option("--seed", gen_args.seed, "generator seed");
    gen->add_option("--out", gen_args.out_path, "output path");

    try {
        app.parse(argc, argv);
        if (solve->parsed()) return run_solve(solve_args);
        if (bench->parsed()) return run_bench(bench_args);
        if (gen->parsed()) return run_gen(gen_args);
        return kExitUsage;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    } catch (const parse_error& e) {
        std::fprintf(stderr, "parse error: %s\n", e.what());
        return kExitData;
    } catch (const numerical_error& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return kExitNumerical;
    } catch (const divergence_error& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "invalid argument: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitData;
    }
}
