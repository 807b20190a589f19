#include "frac/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace frac::cli {

class Parser {
  public:
    explicit Parser(std::string_view src) : src_(src) {}

    RhsExpression run() {
        RhsExpression e;
        e.source_ = std::string(src_);
        nodes_ = &e.nodes_;
        e.root_ = parse_expr();
        skip_ws();
        if (pos_ < src_.size())
            throw ParseError("unexpected trailing input", pos_);
        return e;
    }

  private:
    using Op = RhsExpression::Op;

    std::string_view src_;
    std::size_t pos_ = 0;
    std::vector<RhsExpression::Node>* nodes_ = nullptr;

    int make(Op op, double value, int lhs, int rhs, std::size_t col) {
        nodes_->push_back({op, value, lhs, rhs, col});
        return static_cast<int>(nodes_->size()) - 1;
    }

    void skip_ws() {
        while (pos_ < src_.size() &&
               std::isspace(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    // expr := term { (+|-) term }
    int parse_expr() {
        int lhs = parse_term();
        for (;;) {
            const std::size_t col = pos_;
            if (eat('+'))
                lhs = make(Op::add, 0, lhs, parse_term(), col);
            else if (eat('-'))
                lhs = make(Op::sub, 0, lhs, parse_term(), col);
            else
                return lhs;
        }
    }

    // term := factor { (*|/) factor }
    int parse_term() {
        int lhs = parse_factor();
        for (;;) {
            const std::size_t col = pos_;
            if (eat('*'))
                lhs = make(Op::mul, 0, lhs, parse_factor(), col);
            else if (eat('/'))
                lhs = make(Op::div, 0, lhs, parse_factor(), col);
            else
                return lhs;
        }
    }

    // factor := - factor | power   (so ^ binds tighter than unary minus)
    int parse_factor() {
        const std::size_t col = pos_;
        if (eat('-')) return make(Op::neg, 0, parse_factor(), -1, col);
        return parse_power();
    }

    // power := atom [ ^ factor ]   (right-associative)
    int parse_power() {
        int base = parse_atom();
        const std::size_t col = pos_;
        if (eat('^')) return make(Op::pow_op, 0, base, parse_factor(), col);
        return base;
    }

    int parse_atom() {
        skip_ws();
        if (pos_ >= src_.size())
            throw ParseError("unexpected end of expression", pos_);
        const std::size_t col = pos_;
        const char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            int inner = parse_expr();
            if (!eat(')')) throw ParseError("expected ')'", pos_);
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
            return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)))
            return parse_identifier();
        throw ParseError(std::string("unexpected character '") + c + "'",
                         col);
    }

    int parse_number() {
        const std::size_t col = pos_;
        const char* begin = src_.data() + pos_;
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin) throw ParseError("malformed number", col);
        pos_ += static_cast<std::size_t>(end - begin);
        return make(Op::number, v, -1, -1, col);
    }

    int parse_identifier() {
        const std::size_t col = pos_;
        std::size_t end = pos_;
        while (end < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[end])) ||
                src_[end] == '_'))
            ++end;
        const std::string name(src_.substr(pos_, end - pos_));
        pos_ = end;

        if (name == "t") return make(Op::var_t, 0, -1, -1, col);
        if (name == "x") return make(Op::var_x, 0, -1, -1, col);
        if (name == "z") return make(Op::var_z, 0, -1, -1, col);
        if (name == "pi")
            return make(Op::number, 3.14159265358979323846, -1, -1, col);
        if (name == "e")
            return make(Op::number, 2.71828182845904523536, -1, -1, col);

        Op call;
        int arity;
        if (name == "exp") { call = Op::call_exp; arity = 1; }
        else if (name == "log") { call = Op::call_log; arity = 1; }
        else if (name == "abs") { call = Op::call_abs; arity = 1; }
        else if (name == "pow") { call = Op::call_pow; arity = 2; }
        else throw ParseError("unknown identifier '" + name + "'", col);

        if (!eat('('))
            throw ParseError("expected '(' after '" + name + "'", pos_);
        int first = parse_expr();
        int second = -1;
        if (arity == 2) {
            if (!eat(','))
                throw ParseError("'" + name + "' takes two arguments", pos_);
            second = parse_expr();
        }
        if (!eat(')')) throw ParseError("expected ')'", pos_);
        return make(call, 0, first, second, col);
    }
};

RhsExpression RhsExpression::parse(std::string_view src) {
    return Parser(src).run();
}

double RhsExpression::eval(const EvalContext& ctx) const {
    return eval_node(root_, ctx);
}

double RhsExpression::eval_node(int idx, const EvalContext& ctx) const {
    const Node& n = nodes_[static_cast<std::size_t>(idx)];
    auto finite = [&](double v) {
        if (!std::isfinite(v))
            throw EvalError("evaluation overflowed or left the domain",
                            n.column);
        return v;
    };
    switch (n.op) {
        case Op::number: return n.value;
        case Op::var_t:
            if (!ctx.t) throw EvalError("variable 't' is not available here",
                                        n.column);
            return *ctx.t;
        case Op::var_x:
            if (!ctx.x) throw EvalError("variable 'x' is not available here",
                                        n.column);
            return *ctx.x;
        case Op::var_z:
            if (!ctx.z) throw EvalError("variable 'z' is not available here",
                                        n.column);
            return *ctx.z;
        case Op::neg: return -eval_node(n.lhs, ctx);
        case Op::add:
            return finite(eval_node(n.lhs, ctx) + eval_node(n.rhs, ctx));
        case Op::sub:
            return finite(eval_node(n.lhs, ctx) - eval_node(n.rhs, ctx));
        case Op::mul:
            return finite(eval_node(n.lhs, ctx) * eval_node(n.rhs, ctx));
        case Op::div: {
            const double denom = eval_node(n.rhs, ctx);
            if (denom == 0.0) throw EvalError("division by zero", n.column);
            return finite(eval_node(n.lhs, ctx) / denom);
        }
        case Op::pow_op:
        case Op::call_pow:
            return finite(std::pow(eval_node(n.lhs, ctx),
                                   eval_node(n.rhs, ctx)));
        case Op::call_exp: return finite(std::exp(eval_node(n.lhs, ctx)));
        case Op::call_log: {
            const double arg = eval_node(n.lhs, ctx);
            if (!(arg > 0.0))
                throw EvalError("log of a non-positive value", n.column);
            return std::log(arg);
        }
        case Op::call_abs: return std::abs(eval_node(n.lhs, ctx));
    }
    throw EvalError("corrupt expression tree", 0);
}

std::string RhsExpression::print() const {
    std::string out;
    print_node(root_, out);
    return out;
}

void RhsExpression::print_node(int idx, std::string& out) const {
    const Node& n = nodes_[static_cast<std::size_t>(idx)];
    auto binary = [&](const char* op) {
        out += '(';
        print_node(n.lhs, out);
        out += op;
        print_node(n.rhs, out);
        out += ')';
    };
    switch (n.op) {
        case Op::number: {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", n.value);
            out += buf;
            return;
        }
        case Op::var_t: out += 't'; return;
        case Op::var_x: out += 'x'; return;
        case Op::var_z: out += 'z'; return;
        case Op::neg:
            out += "(-";
            print_node(n.lhs, out);
            out += ')';
            return;
        case Op::add: binary(" + "); return;
        case Op::sub: binary(" - "); return;
        case Op::mul: binary("*"); return;
        case Op::div: binary("/"); return;
        case Op::pow_op: binary("^"); return;
        case Op::call_exp:
        case Op::call_log:
        case Op::call_abs: {
            out += n.op == Op::call_exp ? "exp("
                   : n.op == Op::call_log ? "log(" : "abs(";
            print_node(n.lhs, out);
            out += ')';
            return;
        }
        case Op::call_pow:
            out += "pow(";
            print_node(n.lhs, out);
            out += ", ";
            print_node(n.rhs, out);
            out += ')';
            return;
    }
}

bool RhsExpression::uses_variable(char name) const {
    const Op want = name == 't' ? Op::var_t
                    : name == 'x' ? Op::var_x
                                  : Op::var_z;
    for (const Node& n : nodes_)
        if (n.op == want) return true;
    return false;
}

}  // namespace frac::cli
