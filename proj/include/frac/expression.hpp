#ifndef FRAC_EXPRESSION_HPP
#define FRAC_EXPRESSION_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

// Tiny closed-form expression language for right-hand sides and phi:
// variables t, x, z; + - * / ^ with ^ right-associative and binding
// tighter than unary minus; functions exp, log, abs, pow; constants
// pi, e. Deliberately no conditionals and no user functions.

namespace frac::cli {

struct ParseError : std::runtime_error {
    std::size_t column;
    ParseError(const std::string& what, std::size_t col)
        : std::runtime_error(what + " (column " + std::to_string(col + 1) +
                             ")"),
          column(col) {}
};

struct EvalError : std::runtime_error {
    std::size_t column;
    EvalError(const std::string& what, std::size_t col)
        : std::runtime_error(what + " (column " + std::to_string(col + 1) +
                             ")"),
          column(col) {}
};

struct EvalContext {
    std::optional<double> t;
    std::optional<double> x;
    std::optional<double> z;
};

class RhsExpression {
  public:
    static RhsExpression parse(std::string_view src);

    double eval(const EvalContext& ctx) const;

    /// Fully parenthesized rendering; parse(print()) rebuilds this AST.
    std::string print() const;

    bool uses_variable(char name) const;  // 't', 'x' or 'z'

    /// Original source text the expression was parsed from.
    const std::string& source() const { return source_; }

  private:
    enum class Op : unsigned char {
        number, var_t, var_x, var_z,
        neg, add, sub, mul, div, pow_op,
        call_exp, call_log, call_abs, call_pow,
    };
    struct Node {
        Op op;
        double value = 0.0;       // number payload
        int lhs = -1, rhs = -1;   // child indices
        std::size_t column = 0;   // for located errors
    };

    double eval_node(int idx, const EvalContext& ctx) const;
    void print_node(int idx, std::string& out) const;

    std::vector<Node> nodes_;
    int root_ = -1;
    std::string source_;

    friend class Parser;
};

}  // namespace frac::cli

#endif
