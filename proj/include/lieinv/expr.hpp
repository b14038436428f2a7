#pragma once

#include <complex>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "lieinv/rational.hpp"
#include "lieinv/rng.hpp"

namespace lieinv {

struct ParseError : std::runtime_error {
    std::size_t position;
    ParseError(std::size_t pos, const std::string& msg)
        : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

struct EvalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SamplingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ExprKind {
    Const,
    ImaginaryUnit,
    Var,
    Param,
    Neg,
    Add,
    Sub,
    Mul,
    Div,
    Pow,
    Exp,
    Ln,
    Arctan,
    Abs,  // constraint expressions only; rejected by the invariant grammar
};

class Expr;

struct ExprNode {
    ExprKind kind;
    Rational value;      // Const
    std::size_t var = 0; // Var (1-based)
    std::string param;   // Param
    std::shared_ptr<const ExprNode> a, b;
};

/// Immutable expression tree over x_1..x_n, named parameters, exact
/// rational constants and {+,-,*,/,^,exp,ln,arctan} with an imaginary-unit
/// literal.
class Expr {
public:
    Expr() = default;

    static Expr constant(Rational v);
    static Expr integer(long long v) { return constant(Rational(v)); }
    static Expr i();
    static Expr var(std::size_t k);
    static Expr param(std::string name);
    static Expr neg(Expr e);
    static Expr add(Expr a, Expr b);
    static Expr sub(Expr a, Expr b);
    static Expr mul(Expr a, Expr b);
    static Expr div(Expr a, Expr b);
    static Expr pow(Expr base, Expr exponent);
    static Expr exp(Expr e);
    static Expr ln(Expr e);
    static Expr arctan(Expr e);
    static Expr abs(Expr e);

    bool empty() const { return !node_; }
    const ExprNode& node() const { return *node_; }
    ExprKind kind() const { return node_->kind; }
    Expr child_a() const { return Expr(node_->a); }
    Expr child_b() const { return Expr(node_->b); }

    friend bool structurally_equal(const Expr& a, const Expr& b);

    std::string to_string() const;

    /// Variable indices and parameter names appearing in the tree.
    std::set<std::size_t> variables() const;
    std::set<std::string> parameters() const;

private:
    std::shared_ptr<const ExprNode> node_;
    explicit Expr(std::shared_ptr<const ExprNode> n) : node_(std::move(n)) {}
    static Expr make(ExprNode n) { return Expr(std::make_shared<const ExprNode>(std::move(n))); }
    friend class Parser;
};

/// Point plus parameter bindings for numerical evaluation.
struct Assignment {
    std::vector<std::complex<double>> point;       // x_1..x_n
    std::map<std::string, std::complex<double>> params;
};

/// Parses the concrete ASCII grammar. Variables are x1..x<dim>; identifiers
/// must be a variable, a declared parameter, 'i', or one of exp/ln/arctan.
Expr parse_expr(const std::string& text, std::size_t dim, const std::set<std::string>& param_names);

/// Same grammar extended with an abs(...) function, for parameter
/// constraints; variables are not allowed.
Expr parse_constraint_operand(const std::string& text, std::size_t& pos,
                              const std::set<std::string>& param_names);

/// Partial derivative with respect to x_k. Total on the AST; the result is
/// not simplified beyond constant folding.
Expr differentiate(const Expr& e, std::size_t k);

/// Complex evaluation with principal branches for ln/pow; throws EvalError
/// on singularities (|denominator| < 1e-12, ln/pow of 0) and non-finite
/// results.
std::complex<double> evaluate(const Expr& e, const Assignment& a);

/// Component k is evaluate(differentiate(e,k), a).
std::vector<std::complex<double>> gradient(const Expr& e, const Assignment& a);

/// Exact rational evaluation for parameter-only expressions (no variables,
/// no i; exp/ln/arctan rejected; pow needs an integer exponent).
Rational evaluate_exact(const Expr& e, const std::map<std::string, Rational>& params);

/// Subexpressions whose vanishing makes evaluation singular: Div
/// denominators, Ln arguments and Pow bases of the expression and its first
/// derivatives.
std::vector<Expr> singular_subexpressions(const Expr& e, std::size_t dim);

/// Random real point with |x_k| in [0.1, 10], resampled (at most 100
/// attempts) until every avoid-expression has magnitude >= 1e-6.
Assignment sample_point(std::size_t n, const std::vector<Expr>& avoid,
                        const std::map<std::string, std::complex<double>>& params, Rng& rng);

}  // namespace lieinv
