#ifndef FRAC_REPORT_HPP
#define FRAC_REPORT_HPP

#include <optional>
#include <ostream>
#include <string>

#include "frac/solver.hpp"
#include "frac/stability.hpp"

// CSV and human-readable report emission. The CSV schema is fixed:
// header `t,z,x,weighted_x,rhs,bound`, one row per grid node in ascending
// t, values with 12 significant digits, bound cells empty when no
// certificate was produced. Output is deterministic byte-for-byte.

namespace frac::cli {

struct CsvRows {
    GridPtr grid;
    std::vector<double> x;           // plain values (may be inf at z = 0)
    std::vector<double> weighted_x;  // z^(1-gamma) x with its limit slot
    std::vector<double> rhs;         // f(t_j, x_j); limit-consistent at j=0
    std::optional<std::vector<double>> bound;  // final_C * z^(gamma-1)
};

/// Rows for a solution of the given problem, with the bound column filled
/// from a passing certificate.
CsvRows solution_rows(const CauchyProblem& problem, const Solution& sol,
                      const StabilityCertificate* cert = nullptr);

/// Rows for a plain operator result: x = result, weighted_x = z^(1-gamma)
/// result, rhs = the operand.
CsvRows operator_rows(const FracParams& params, const GridFunction& operand,
                      const GridFunction& result);

void emit_csv(const CsvRows& rows, std::ostream& out);
void emit_csv(const CsvRows& rows, const std::string& path);

/// 9-significant-digit rendering used by all reports.
std::string fmt9(double v);

}  // namespace frac::cli

#endif
