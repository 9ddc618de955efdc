#include "lram/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <thread>

#include "lram/rng.hpp"

namespace lram {

// ---- generators -------------------------------------------------------

DenseMatrix gen_uniform(std::size_t m, std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    DenseMatrix out(m, n);
    for (double& v : out.data()) v = rng.uniform();
    return out;
}

DenseMatrix gen_sign(std::size_t m, std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    DenseMatrix out(m, n);
    for (double& v : out.data()) v = (rng.next_u64() & 1) ? 1.0 : -1.0;
    return out;
}

QuantizedInstance gen_quantized(std::size_t m, std::size_t n, std::size_t r_true,
                                std::uint64_t seed) {
    if (r_true < 1 || r_true > std::min(m, n))
        throw std::invalid_argument("gen_quantized: r_true out of range");
    Rng rng(seed);
    DenseMatrix u(m, r_true), v(n, r_true);
    for (double& e : u.data()) e = rng.normal();
    for (double& e : v.data()) e = rng.normal();
    const DenseMatrix planted = matmul_bt(u, v);

    QuantizedInstance out{DenseMatrix(m, n), 0.0};
    for (std::size_t i = 0; i < planted.size(); ++i)
        out.m.data()[i] = std::round(planted.data()[i]);
    out.certificate = entrywise_linf_norm(sub(out.m, planted));
    return out;
}

// ---- MatrixMarket I/O -------------------------------------------------

namespace {

bool next_data_line(std::istream& in, std::string& line, std::size_t& lineno) {
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos) continue;
        if (line[start] == '%') continue;
        return true;
    }
    return false;
}

}  // namespace

DenseMatrix read_matrix_market(std::istream& in, std::size_t cell_cap) {
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line)) throw parse_error("empty file", 1);
    ++lineno;

    std::istringstream header(line);
    std::string banner, object, format, field, symmetry;
    header >> banner >> object >> format >> field >> symmetry;
    if (banner != "%%MatrixMarket" || object != "matrix")
        throw parse_error("malformed MatrixMarket banner", lineno);
    const bool coordinate = format == "coordinate";
    if (!coordinate && format != "array")
        throw parse_error("unsupported format '" + format + "'", lineno);
    if (field != "real")
        throw parse_error("unsupported field '" + field + "'", lineno);
    const bool symmetric = symmetry == "symmetric";
    if (!symmetric && symmetry != "general")
        throw parse_error("unsupported symmetry '" + symmetry + "'", lineno);
    if (!coordinate && symmetric)
        throw parse_error("array symmetric files are not supported", lineno);

    if (!next_data_line(in, line, lineno)) throw parse_error("missing size line", lineno);
    std::istringstream size_line(line);
    long long rows = 0, cols = 0, nnz = 0;
    if (coordinate) {
        if (!(size_line >> rows >> cols >> nnz))
            throw parse_error("malformed coordinate size line", lineno);
    } else {
        if (!(size_line >> rows >> cols))
            throw parse_error("malformed array size line", lineno);
    }
    if (rows < 1 || cols < 1) throw parse_error("non-positive dimensions", lineno);
    if (static_cast<unsigned long long>(rows) * static_cast<unsigned long long>(cols) >
        cell_cap)
        throw parse_error("densified size exceeds cell cap", lineno);

    DenseMatrix out(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));

    if (coordinate) {
        std::vector<bool> seen(out.size(), false);
        for (long long k = 0; k < nnz; ++k) {
            if (!next_data_line(in, line, lineno))
                throw parse_error("unexpected end of file: fewer entries than declared", lineno);
            std::istringstream entry(line);
            long long i = 0, j = 0;
            double value = 0.0;
            if (!(entry >> i >> j >> value))
                throw parse_error("malformed coordinate entry", lineno);
            if (i < 1 || i > rows || j < 1 || j > cols)
                throw parse_error("index out of range", lineno);
            const std::size_t r = static_cast<std::size_t>(i - 1);
            const std::size_t c = static_cast<std::size_t>(j - 1);
            if (seen[r * out.cols() + c]) throw parse_error("duplicate entry", lineno);
            seen[r * out.cols() + c] = true;
            out(r, c) = value;
            if (symmetric && r != c) {
                if (seen[c * out.cols() + r]) throw parse_error("duplicate entry", lineno);
                seen[c * out.cols() + r] = true;
                out(c, r) = value;
            }
        }
    } else {
        // Array format: column-major dense values.
        for (long long j = 0; j < cols; ++j) {
            for (long long i = 0; i < rows; ++i) {
                if (!next_data_line(in, line, lineno))
                    throw parse_error("unexpected end of file in array data", lineno);
                std::istringstream entry(line);
                double value = 0.0;
                if (!(entry >> value)) throw parse_error("malformed array value", lineno);
                out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = value;
            }
        }
    }
    out.require_finite("MatrixMarket data");
    return out;
}

DenseMatrix load_matrix_market(const std::string& path, std::size_t cell_cap) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_matrix_market(in, cell_cap);
}

void write_matrix_market(const DenseMatrix& m, std::ostream& out) {
    out << "%%MatrixMarket matrix array real general\n";
    out << m.rows() << " " << m.cols() << "\n";
    char buf[40];
    for (std::size_t j = 0; j < m.cols(); ++j) {
        for (std::size_t i = 0; i < m.rows(); ++i) {
            std::snprintf(buf, sizeof(buf), "%.17g", m(i, j));
            out << buf << "\n";
        }
    }
}

void save_matrix_market(const DenseMatrix& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    write_matrix_market(m, out);
    if (!out) throw std::runtime_error("write failed: " + path);
}

// ---- experiment harness -----------------------------------------------

std::string method_name(Method m) {
    switch (m) {
        case Method::L1Solver: return "l1_solver";
        case Method::LinfSolver: return "linf_solver";
        case Method::SvdBaseline: return "svd_baseline";
        case Method::ColumnSampling: return "column_sampling";
    }
    return "?";
}

namespace {

struct Instance {
    DenseMatrix m;
    std::uint64_t seed;
};

Instance make_instance(const ExperimentSpec& spec, std::size_t rank, std::size_t trial) {
    const std::uint64_t sub_seed =
        Rng(spec.seed).split(0xA11CEULL, rank, trial).next_u64();
    if (const auto* u = std::get_if<UniformRandom>(&spec.generator))
        return {gen_uniform(u->m, u->n, sub_seed), sub_seed};
    if (const auto* s = std::get_if<SignRandom>(&spec.generator))
        return {gen_sign(s->m, s->n, sub_seed), sub_seed};
    if (const auto* q = std::get_if<QuantizedLowRank>(&spec.generator)) {
        const std::size_t r_true = q->r_true ? q->r_true : rank;
        return {gen_quantized(q->m, q->n, r_true, sub_seed).m, sub_seed};
    }
    const auto& f = std::get<FromFile>(spec.generator);
    return {load_matrix_market(f.path), sub_seed};
}

ExperimentRow run_method(const ExperimentSpec& spec, Method method, std::size_t rank,
                         std::size_t trial, const Instance& inst, double solver_budget) {
    ExperimentRow row;
    row.method = method_name(method);
    row.rank = rank;
    row.trial = trial;
    row.seed = inst.seed;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        switch (method) {
            case Method::L1Solver: {
                const SolveReport rep = solve_l1(inst.m, rank, spec.mode);
                row.lp_error = entrywise_l1_norm(sub(inst.m, rep.factors.product()));
                row.iterations_run = rep.iterations_run;
                break;
            }
            case Method::LinfSolver: {
                const SolveReport rep = solve_linf(inst.m, rank, spec.mode);
                row.lp_error = entrywise_linf_norm(sub(inst.m, rep.factors.product()));
                row.iterations_run = rep.iterations_run;
                break;
            }
            case Method::SvdBaseline: {
                const BaselineResult res = svd_baseline(inst.m, rank, spec.baseline_norm);
                row.lp_error = res.lp_error;
                break;
            }
            case Method::ColumnSampling: {
                const std::uint64_t cs_seed =
                    Rng(spec.seed).split(0xC015ULL, rank, trial).next_u64();
                BaselineResult best = column_sampling_l1(inst.m, rank, spec.trials, cs_seed);
                row.iterations_run = spec.trials;
                if (spec.time_matched) {
                    // Budget check between trial batches, not mid-batch.
                    std::size_t batch = 1;
                    auto elapsed = [&] {
                        return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                             t0)
                            .count();
                    };
                    while (elapsed() < solver_budget) {
                        const std::uint64_t extra_seed =
                            Rng(spec.seed).split(0xC015ULL + batch, rank, trial).next_u64();
                        BaselineResult more =
                            column_sampling_l1(inst.m, rank, spec.trials, extra_seed);
                        if (more.lp_error < best.lp_error) best = std::move(more);
                        row.iterations_run += spec.trials;
                        ++batch;
                    }
                }
                row.lp_error = best.lp_error;
                break;
            }
        }
    } catch (const std::exception& e) {
        row.ok = false;
        row.error = e.what();
        row.lp_error = std::numeric_limits<double>::quiet_NaN();
    }
    if (spec.measure_time)
        row.wall_time_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return row;
}

}  // namespace

std::vector<ExperimentRow> run_experiment(const ExperimentSpec& spec) {
    if (spec.trials < 1) throw std::invalid_argument("run_experiment: trials must be >= 1");
    if (spec.ranks.empty()) throw std::invalid_argument("run_experiment: empty rank list");
    if (spec.methods.empty()) throw std::invalid_argument("run_experiment: empty method list");

    struct Task {
        std::size_t rank, trial;
    };
    std::vector<Task> tasks;
    for (std::size_t rank : spec.ranks)
        for (std::size_t trial = 0; trial < spec.trials; ++trial) tasks.push_back({rank, trial});

    std::vector<std::vector<ExperimentRow>> per_task(tasks.size());

    auto worker_body = [&](std::atomic<std::size_t>& next) {
        for (;;) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= tasks.size()) return;
            const Task& task = tasks[idx];
            std::vector<ExperimentRow>& rows = per_task[idx];
            try {
                const Instance inst = make_instance(spec, task.rank, task.trial);
                // Solvers first so ColumnSampling can be time-matched.
                double solver_budget = 0.0;
                for (Method m : spec.methods) {
                    if (m == Method::ColumnSampling) continue;
                    ExperimentRow row = run_method(spec, m, task.rank, task.trial, inst, 0.0);
                    if (m == Method::L1Solver || m == Method::LinfSolver)
                        solver_budget = std::max(solver_budget, row.wall_time_seconds);
                    rows.push_back(std::move(row));
                }
                for (Method m : spec.methods) {
                    if (m != Method::ColumnSampling) continue;
                    rows.push_back(
                        run_method(spec, m, task.rank, task.trial, inst, solver_budget));
                }
            } catch (const std::exception& e) {
                // Instance generation/load failure: one error row per method.
                for (Method m : spec.methods) {
                    ExperimentRow row;
                    row.method = method_name(m);
                    row.rank = task.rank;
                    row.trial = task.trial;
                    row.ok = false;
                    row.error = e.what();
                    row.lp_error = std::numeric_limits<double>::quiet_NaN();
                    rows.push_back(std::move(row));
                }
            }
        }
    };

    std::size_t workers = spec.workers;
    if (workers == 0) {
        workers = std::thread::hardware_concurrency();
        if (workers == 0) workers = 1;
        workers = std::min<std::size_t>(workers, 8);
    }
    workers = std::min(workers, tasks.size());

    std::atomic<std::size_t> next{0};
    if (workers <= 1) {
        worker_body(next);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back([&] { worker_body(next); });
        for (auto& t : pool) t.join();
    }

    // Deterministic output order: (method, rank, trial), method in spec order.
    std::vector<ExperimentRow> out;
    out.reserve(tasks.size() * spec.methods.size());
    for (Method m : spec.methods) {
        const std::string name = method_name(m);
        for (std::size_t t = 0; t < tasks.size(); ++t)
            for (const ExperimentRow& row : per_task[t])
                if (row.method == name) out.push_back(row);
    }
    return out;
}

// ---- emitters ---------------------------------------------------------

namespace {

constexpr const char* kCsvSchema = "# schema: lram-bench-csv v1";
constexpr const char* kSummarySchema = "# schema: lram-bench-summary v1";
constexpr const char* kPlotSchema = "# schema: lram-bench-plot v1";

std::string fmt_sci(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", v);
    return buf;
}

std::string fmt_time(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

struct GroupStats {
    std::vector<double> errors, times;
};

std::map<std::pair<std::string, std::size_t>, GroupStats> group_rows(
    const std::vector<ExperimentRow>& rows) {
    std::map<std::pair<std::string, std::size_t>, GroupStats> groups;
    for (const ExperimentRow& row : rows) {
        if (!row.ok) continue;
        GroupStats& g = groups[{row.method, row.rank}];
        g.errors.push_back(row.lp_error);
        g.times.push_back(row.wall_time_seconds);
    }
    return groups;
}

void require_rows(const std::vector<ExperimentRow>& rows) {
    if (rows.empty()) throw std::invalid_argument("emit: no rows");
}

template <typename Fn>
void emit_to_file(const std::string& path, Fn fn) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    fn(out);
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace

void emit_csv(const std::vector<ExperimentRow>& rows, std::ostream& out) {
    require_rows(rows);
    out << kCsvSchema << "\n";
    out << "method,rank,trial,lp_error,wall_time_seconds,iterations_run,seed,status\n";
    for (const ExperimentRow& row : rows) {
        out << row.method << "," << row.rank << "," << row.trial << ","
            << fmt_sci(row.lp_error) << "," << fmt_time(row.wall_time_seconds) << ","
            << row.iterations_run << "," << row.seed << "," << (row.ok ? "ok" : "error")
            << "\n";
    }
}

void emit_summary(const std::vector<ExperimentRow>& rows, std::ostream& out) {
    require_rows(rows);
    out << kSummarySchema << "\n";
    out << "method,rank,trials,err_min,err_mean,err_median,time_min,time_mean,time_median\n";
    for (const auto& [key, g] : group_rows(rows)) {
        auto stats = [](const std::vector<double>& v) {
            const double mn = *std::min_element(v.begin(), v.end());
            double mean = 0.0;
            for (double x : v) mean += x;
            mean /= static_cast<double>(v.size());
            return std::tuple<double, double, double>{mn, mean, median_of(v)};
        };
        const auto [emin, emean, emed] = stats(g.errors);
        const auto [tmin, tmean, tmed] = stats(g.times);
        out << key.first << "," << key.second << "," << g.errors.size() << ","
            << fmt_sci(emin) << "," << fmt_sci(emean) << "," << fmt_sci(emed) << ","
            << fmt_time(tmin) << "," << fmt_time(tmean) << "," << fmt_time(tmed) << "\n";
    }
}

void emit_plotdata(const std::vector<ExperimentRow>& rows, std::ostream& out) {
    require_rows(rows);
    out << kPlotSchema << "\n";
    out << "method,rank,median_lp_error\n";
    for (const auto& [key, g] : group_rows(rows))
        out << key.first << "," << key.second << "," << fmt_sci(median_of(g.errors)) << "\n";
}

void emit_csv(const std::vector<ExperimentRow>& rows, const std::string& path) {
    emit_to_file(path, [&](std::ostream& out) { emit_csv(rows, out); });
}
void emit_summary(const std::vector<ExperimentRow>& rows, const std::string& path) {
    emit_to_file(path, [&](std::ostream& out) { emit_summary(rows, out); });
}
void emit_plotdata(const std::vector<ExperimentRow>& rows, const std::string& path) {
    emit_to_file(path, [&](std::ostream& out) { emit_plotdata(rows, out); });
}

}  // namespace lram
