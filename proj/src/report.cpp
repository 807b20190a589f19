#include "frac/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "frac/operators.hpp"

namespace frac::cli {

namespace {

std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

std::string fmt9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

CsvRows solution_rows(const CauchyProblem& problem, const Solution& sol,
                      const StabilityCertificate* cert) {
    const GridFunction& v = sol.x;
    const ScaledGrid& grid = *v.grid();
    const double gamma = problem.params.gamma;
    CsvRows rows;
    rows.grid = v.grid();
    rows.weighted_x = v.values();
    rows.x.resize(v.size());
    rows.rhs.resize(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
        rows.x[j] = v.plain_value(j);
        if (j > 0) rows.rhs[j] = problem.rhs(grid.t(j), rows.x[j]);
    }
    // Node 0: f at t = a in the limit sense; finite only when the plain
    // solution value is (rhs is contracted on (a, T] just like the solver).
    rows.rhs[0] = std::isfinite(rows.x[0])
                      ? problem.rhs(grid.t(0) * (1.0 + 1e-15), rows.x[0])
                      : std::numeric_limits<double>::quiet_NaN();
    if (cert && cert->passed) {
        std::vector<double> b(v.size());
        for (std::size_t j = 0; j < v.size(); ++j) {
            const double z = grid.z(j);
            b[j] = z > 0.0 ? cert->final_C * std::pow(z, gamma - 1.0)
                           : (gamma < 1.0
                                  ? std::numeric_limits<double>::infinity()
                                  : cert->final_C);
        }
        rows.bound = std::move(b);
    }
    return rows;
}

CsvRows operator_rows(const FracParams& params, const GridFunction& operand,
                      const GridFunction& result) {
    const ScaledGrid& grid = *result.grid();
    CsvRows rows;
    rows.grid = result.grid();
    rows.x.resize(result.size());
    rows.weighted_x.resize(result.size());
    rows.rhs.resize(result.size());
    const double w = 1.0 - params.gamma;
    for (std::size_t j = 0; j < result.size(); ++j) {
        rows.x[j] = result.plain_value(j);
        rows.weighted_x[j] =
            grid.z(j) > 0.0 ? std::pow(grid.z(j), w) * rows.x[j]
                            : (w > 0.0 ? 0.0 : rows.x[j]);
        rows.rhs[j] = operand.plain_value(j);
    }
    return rows;
}

void emit_csv(const CsvRows& rows, std::ostream& out) {
    out << "t,z,x,weighted_x,rhs,bound\n";
    const ScaledGrid& grid = *rows.grid;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        out << fmt12(grid.t(j)) << ',' << fmt12(grid.z(j)) << ','
            << fmt12(rows.x[j]) << ',' << fmt12(rows.weighted_x[j]) << ','
            << fmt12(rows.rhs[j]) << ',';
        if (rows.bound) out << fmt12((*rows.bound)[j]);
        out << '\n';
    }
}

void emit_csv(const CsvRows& rows, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("emit_csv: cannot open '" + path +
                                 "' for writing");
    emit_csv(rows, out);
    if (!out)
        throw std::runtime_error("emit_csv: write failed for '" + path + "'");
}

}  // namespace frac::cli
