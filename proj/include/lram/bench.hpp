#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "lram/baselines.hpp"
#include "lram/matrix.hpp"
#include "lram/solvers.hpp"

namespace lram {

// ---- instance generators ----------------------------------------------

DenseMatrix gen_uniform(std::size_t m, std::size_t n, std::uint64_t seed);
DenseMatrix gen_sign(std::size_t m, std::size_t n, std::uint64_t seed);

struct QuantizedInstance {
    DenseMatrix m;
    double certificate;  // |M - UV^T|_inf of the planted product; <= 0.5
};

/// M = round(U V^T) with U, V i.i.d. standard normal.
QuantizedInstance gen_quantized(std::size_t m, std::size_t n, std::size_t r_true,
                                std::uint64_t seed);

// ---- MatrixMarket I/O -------------------------------------------------

class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& msg, std::size_t line)
        : std::runtime_error(msg + " (line " + std::to_string(line) + ")"), line_number(line) {}
    std::size_t line_number;
};

/// Reads coordinate (real, general/symmetric) and array (real, general)
/// files; coordinate data is densified, symmetric entries mirrored.
/// `cell_cap` bounds rows*cols of the densified result.
DenseMatrix load_matrix_market(const std::string& path, std::size_t cell_cap = 100000000);
DenseMatrix read_matrix_market(std::istream& in, std::size_t cell_cap = 100000000);

/// Array real general format.
void save_matrix_market(const DenseMatrix& m, const std::string& path);
void write_matrix_market(const DenseMatrix& m, std::ostream& out);

// ---- experiment harness -----------------------------------------------

struct UniformRandom { std::size_t m, n; };
struct SignRandom { std::size_t m, n; };
struct QuantizedLowRank {
    std::size_t m, n;
    std::size_t r_true = 0;  // 0: follow the target rank
};
struct FromFile { std::string path; };

using Generator = std::variant<UniformRandom, SignRandom, QuantizedLowRank, FromFile>;

enum class Method { L1Solver, LinfSolver, SvdBaseline, ColumnSampling };

struct ExperimentSpec {
    Generator generator;
    std::vector<std::size_t> ranks;
    std::size_t trials = 10;
    std::vector<Method> methods;
    SolveMode mode = PracticalParams{};
    NormP baseline_norm = NormP::L1;  // error norm for SvdBaseline rows
    std::uint64_t seed = 0;
    std::size_t workers = 0;  // 0: pick from hardware concurrency

    // Give ColumnSampling at least the wall time the slowest solver in
    // the method list used, by drawing extra trial batches. Off by
    // default since the drawn count then depends on timing.
    bool time_matched = false;

    // When false, wall_time_seconds is reported as 0 so output is a pure
    // function of (spec, seed).
    bool measure_time = true;
};

struct ExperimentRow {
    std::string method;
    std::size_t rank = 0;
    std::size_t trial = 0;
    double lp_error = 0.0;
    double wall_time_seconds = 0.0;
    std::size_t iterations_run = 0;
    std::uint64_t seed = 0;
    bool ok = true;
    std::string error;  // non-empty when !ok
};

std::string method_name(Method m);

std::vector<ExperimentRow> run_experiment(const ExperimentSpec& spec);

void emit_csv(const std::vector<ExperimentRow>& rows, std::ostream& out);
void emit_summary(const std::vector<ExperimentRow>& rows, std::ostream& out);
void emit_plotdata(const std::vector<ExperimentRow>& rows, std::ostream& out);

void emit_csv(const std::vector<ExperimentRow>& rows, const std::string& path);
void emit_summary(const std::vector<ExperimentRow>& rows, const std::string& path);
void emit_plotdata(const std::vector<ExperimentRow>& rows, const std::string& path);

}  // namespace lram
