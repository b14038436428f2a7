#include "lieinv/expr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace lieinv {

Expr Expr::constant(Rational v) {
    ExprNode n;
    n.kind = ExprKind::Const;
    n.value = std::move(v);
    return make(std::move(n));
}

Expr Expr::i() {
    ExprNode n;
    n.kind = ExprKind::ImaginaryUnit;
    return make(std::move(n));
}

Expr Expr::var(std::size_t k) {
    ExprNode n;
    n.kind = ExprKind::Var;
    n.var = k;
    return make(std::move(n));
}

Expr Expr::param(std::string name) {
    ExprNode n;
    n.kind = ExprKind::Param;
    n.param = std::move(name);
    return make(std::move(n));
}

namespace {

bool is_const(const Expr& e, long long v) {
    return !e.empty() && e.kind() == ExprKind::Const && e.node().value == Rational(v);
}

}  // namespace

Expr Expr::neg(Expr e) {
    ExprNode n;
    n.kind = ExprKind::Neg;
    n.a = e.node_;
    return make(std::move(n));
}

// The binary constructors fold additive/multiplicative identities so that
// derivative trees stay readable; they do no other rewriting.
Expr Expr::add(Expr a, Expr b) {
    if (is_const(a, 0)) return b;
    if (is_const(b, 0)) return a;
    ExprNode n;
    n.kind = ExprKind::Add;
    n.a = a.node_;
    n.b = b.node_;
    return make(std::move(n));
}

Expr Expr::sub(Expr a, Expr b) {
    if (is_const(b, 0)) return a;
    if (is_const(a, 0)) return neg(std::move(b));
    ExprNode n;
    n.kind = ExprKind::Sub;
    n.a = a.node_;
    n.b = b.node_;
    return make(std::move(n));
}

Expr Expr::mul(Expr a, Expr b) {
    if (is_const(a, 0) || is_const(b, 0)) return integer(0);
    if (is_const(a, 1)) return b;
    if (is_const(b, 1)) return a;
    ExprNode n;
    n.kind = ExprKind::Mul;
    n.a = a.node_;
    n.b = b.node_;
    return make(std::move(n));
}

Expr Expr::div(Expr a, Expr b) {
    if (is_const(a, 0)) return integer(0);
    if (is_const(b, 1)) return a;
    ExprNode n;
    n.kind = ExprKind::Div;
    n.a = a.node_;
    n.b = b.node_;
    return make(std::move(n));
}

Expr Expr::pow(Expr base, Expr exponent) {
    ExprNode n;
    n.kind = ExprKind::Pow;
    n.a = base.node_;
    n.b = exponent.node_;
    return make(std::move(n));
}

Expr Expr::exp(Expr e) {
    ExprNode n;
    n.kind = ExprKind::Exp;
    n.a = e.node_;
    return make(std::move(n));
}

Expr Expr::ln(Expr e) {
    ExprNode n;
    n.kind = ExprKind::Ln;
    n.a = e.node_;
    return make(std::move(n));
}

Expr Expr::arctan(Expr e) {
    ExprNode n;
    n.kind = ExprKind::Arctan;
    n.a = e.node_;
    return make(std::move(n));
}

Expr Expr::abs(Expr e) {
    ExprNode n;
    n.kind = ExprKind::Abs;
    n.a = e.node_;
    return make(std::move(n));
}

bool structurally_equal(const Expr& a, const Expr& b) {
    if (a.node_ == b.node_) return true;
    if (a.empty() || b.empty()) return false;
    const ExprNode &x = *a.node_, &y = *b.node_;
    if (x.kind != y.kind) return false;
    switch (x.kind) {
        case ExprKind::Const: return x.value == y.value;
        case ExprKind::ImaginaryUnit: return true;
        case ExprKind::Var: return x.var == y.var;
        case ExprKind::Param: return x.param == y.param;
        default: break;
    }
    Expr xa(x.a), ya(y.a);
    if (!structurally_equal(xa, ya)) return false;
    if (!x.b && !y.b) return true;
    if (!x.b || !y.b) return false;
    return structurally_equal(Expr(x.b), Expr(y.b));
}

namespace {

// precedence levels: 1 add/sub, 2 mul/div, 3 unary minus, 4 power, 5 atom
int precedence(ExprKind k) {
    switch (k) {
        case ExprKind::Add:
        case ExprKind::Sub: return 1;
        case ExprKind::Mul:
        case ExprKind::Div: return 2;
        case ExprKind::Neg: return 3;
        case ExprKind::Pow: return 4;
        default: return 5;
    }
}

void print_node(const ExprNode& n, std::string& out);

void print_child(const ExprNode& child, int parent_prec, bool tight, std::string& out) {
    bool parens = precedence(child.kind) < parent_prec || (tight && precedence(child.kind) == parent_prec);
    if (parens) out.push_back('(');
    print_node(child, out);
    if (parens) out.push_back(')');
}

void print_node(const ExprNode& n, std::string& out) {
    switch (n.kind) {
        case ExprKind::Const: {
            if (n.value.is_negative()) {
                out.push_back('(');
                out += n.value.to_string();
                out.push_back(')');
            } else {
                out += n.value.to_string();
            }
            return;
        }
        case ExprKind::ImaginaryUnit: out += "i"; return;
        case ExprKind::Var: out += "x" + std::to_string(n.var); return;
        case ExprKind::Param: out += n.param; return;
        case ExprKind::Neg:
            // '-' binds below '^' in the grammar ("-x^2" reads as (-x)^2),
            // so anything but an atom must be parenthesized after it
            out.push_back('-');
            print_child(*n.a, 5, false, out);
            return;
        case ExprKind::Add:
            print_child(*n.a, 1, false, out);
            out.push_back('+');
            print_child(*n.b, 1, true, out);
            return;
        case ExprKind::Sub:
            print_child(*n.a, 1, false, out);
            out.push_back('-');
            print_child(*n.b, 1, true, out);
            return;
        case ExprKind::Mul:
            print_child(*n.a, 2, false, out);
            out.push_back('*');
            print_child(*n.b, 2, true, out);
            return;
        case ExprKind::Div:
            print_child(*n.a, 2, false, out);
            out.push_back('/');
            print_child(*n.b, 2, true, out);
            return;
        case ExprKind::Pow:
            // the grammar reads a^b^c right-associatively and binds '-' below '^'
            print_child(*n.a, 5, false, out);
            out.push_back('^');
            if (n.b->kind == ExprKind::Pow) {
                print_node(*n.b, out);
            } else {
                print_child(*n.b, 3, false, out);
            }
            return;
        case ExprKind::Exp:
            out += "exp(";
            print_node(*n.a, out);
            out.push_back(')');
            return;
        case ExprKind::Ln:
            out += "ln(";
            print_node(*n.a, out);
            out.push_back(')');
            return;
        case ExprKind::Arctan:
            out += "arctan(";
            print_node(*n.a, out);
            out.push_back(')');
            return;
        case ExprKind::Abs:
            out += "abs(";
            print_node(*n.a, out);
            out.push_back(')');
            return;
    }
}

}  // namespace

std::string Expr::to_string() const {
    if (empty()) return "";
    std::string out;
    print_node(*node_, out);
    return out;
}

namespace {

void collect(const ExprNode& n, std::set<std::size_t>& vars, std::set<std::string>& params) {
    switch (n.kind) {
        case ExprKind::Var: vars.insert(n.var); return;
        case ExprKind::Param: params.insert(n.param); return;
        default: break;
    }
    if (n.a) collect(*n.a, vars, params);
    if (n.b) collect(*n.b, vars, params);
}

}  // namespace

std::set<std::size_t> Expr::variables() const {
    std::set<std::size_t> vars;
    std::set<std::string> params;
    if (node_) collect(*node_, vars, params);
    return vars;
}

std::set<std::string> Expr::parameters() const {
    std::set<std::size_t> vars;
    std::set<std::string> params;
    if (node_) collect(*node_, vars, params);
    return params;
}

// ---------------------------------------------------------------------------
// Parser: recursive descent over the grammar
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := unary ('^' factor)?
//   unary  := '-' unary | atom
//   atom   := NUMBER | 'i' | IDENT | IDENT '(' expr ')' | '(' expr ')'
// ---------------------------------------------------------------------------

class Parser {
public:
    Parser(const std::string& text, std::size_t dim, const std::set<std::string>& params, bool constraint_mode)
        : text_(text), dim_(dim), params_(params), constraint_mode_(constraint_mode) {}

    Expr parse_full() {
        Expr e = parse_sum();
        skip_ws();
        if (pos_ != text_.size()) throw ParseError(pos_, "unexpected trailing input");
        return e;
    }

    Expr parse_sum() {
        Expr e = parse_term();
        for (;;) {
            skip_ws();
            if (peek() == '+') {
                ++pos_;
                e = Expr::add(std::move(e), parse_term());
            } else if (peek() == '-') {
                ++pos_;
                e = Expr::sub(std::move(e), parse_term());
            } else {
                return e;
            }
        }
    }

    std::size_t pos() const { return pos_; }
    void set_pos(std::size_t p) { pos_ = p; }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

private:
    const std::string& text_;
    std::size_t dim_;
    const std::set<std::string>& params_;
    bool constraint_mode_;
    std::size_t pos_ = 0;

    Expr parse_term() {
        Expr e = parse_factor();
        for (;;) {
            skip_ws();
            if (peek() == '*') {
                ++pos_;
                e = Expr::mul(std::move(e), parse_factor());
            } else if (peek() == '/') {
                ++pos_;
                e = Expr::div(std::move(e), parse_factor());
            } else {
                return e;
            }
        }
    }

    Expr parse_factor() {
        Expr base = parse_unary();
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            return Expr::pow(std::move(base), parse_factor());
        }
        return base;
    }

    Expr parse_unary() {
        skip_ws();
        if (peek() == '-') {
            ++pos_;
            return Expr::neg(parse_unary());
        }
        return parse_atom();
    }

    Expr parse_atom() {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError(pos_, "unexpected end of input");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Expr e = parse_sum();
            skip_ws();
            if (peek() != ')') throw ParseError(pos_, "expected ')'");
            ++pos_;
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_ident();
        throw ParseError(pos_, std::string("unexpected character '") + c + "'");
    }

    Expr parse_number() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        return Expr::constant(Rational(BigInt(text_.substr(start, pos_ - start)), BigInt(1)));
    }

    Expr parse_ident() {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        std::string name = text_.substr(start, pos_ - start);

        if (name == "exp" || name == "ln" || name == "arctan" || (constraint_mode_ && name == "abs")) {
            skip_ws();
            if (peek() != '(') throw ParseError(pos_, "expected '(' after function name '" + name + "'");
            ++pos_;
            Expr arg = parse_sum();
            skip_ws();
            if (peek() != ')') throw ParseError(pos_, "expected ')'");
            ++pos_;
            if (name == "exp") return Expr::exp(std::move(arg));
            if (name == "ln") return Expr::ln(std::move(arg));
            if (name == "arctan") return Expr::arctan(std::move(arg));
            return Expr::abs(std::move(arg));
        }
        if (name == "i") return Expr::i();
        if (name.size() >= 2 && name[0] == 'x' &&
            std::all_of(name.begin() + 1, name.end(),
                        [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
            std::size_t k = std::stoul(name.substr(1));
            if (constraint_mode_)
                throw ParseError(start, "variables are not allowed in parameter constraints");
            if (k < 1 || k > dim_)
                throw ParseError(start, "variable " + name + " is out of range for dimension " +
                                            std::to_string(dim_));
            return Expr::var(k);
        }
        if (params_.count(name)) return Expr::param(name);
        throw ParseError(start, "unknown identifier '" + name + "'");
    }
};

Expr parse_expr(const std::string& text, std::size_t dim, const std::set<std::string>& param_names) {
    Parser p(text, dim, param_names, false);
    return p.parse_full();
}

Expr parse_constraint_operand(const std::string& text, std::size_t& pos,
                              const std::set<std::string>& param_names) {
    Parser p(text, 0, param_names, true);
    p.set_pos(pos);
    Expr e = p.parse_sum();
    pos = p.pos();
    return e;
}

// ---------------------------------------------------------------------------
// Differentiation
// ---------------------------------------------------------------------------

Expr differentiate(const Expr& e, std::size_t k) {
    const ExprNode& n = e.node();
    switch (n.kind) {
        case ExprKind::Const:
        case ExprKind::ImaginaryUnit:
        case ExprKind::Param:
            return Expr::integer(0);
        case ExprKind::Var:
            return n.var == k ? Expr::integer(1) : Expr::integer(0);
        case ExprKind::Neg:
            return Expr::neg(differentiate(e.child_a(), k));
        case ExprKind::Add:
            return Expr::add(differentiate(e.child_a(), k), differentiate(e.child_b(), k));
        case ExprKind::Sub:
            return Expr::sub(differentiate(e.child_a(), k), differentiate(e.child_b(), k));
        case ExprKind::Mul: {
            Expr u = e.child_a(), v = e.child_b();
            return Expr::add(Expr::mul(differentiate(u, k), v), Expr::mul(u, differentiate(v, k)));
        }
        case ExprKind::Div: {
            Expr u = e.child_a(), v = e.child_b();
            Expr num = Expr::sub(Expr::mul(differentiate(u, k), v), Expr::mul(u, differentiate(v, k)));
            return Expr::div(std::move(num), Expr::pow(v, Expr::integer(2)));
        }
        case ExprKind::Pow: {
            // d(u^v) = u^v * (v' ln u + v u'/u)
            Expr u = e.child_a(), v = e.child_b();
            Expr du = differentiate(u, k), dv = differentiate(v, k);
            Expr inner = Expr::add(Expr::mul(dv, Expr::ln(u)), Expr::div(Expr::mul(v, du), u));
            return Expr::mul(e, std::move(inner));
        }
        case ExprKind::Exp:
            return Expr::mul(e, differentiate(e.child_a(), k));
        case ExprKind::Ln:
            return Expr::div(differentiate(e.child_a(), k), e.child_a());
        case ExprKind::Arctan: {
            // d(arctan u) = u' / (1 + u^2)
            Expr u = e.child_a();
            return Expr::div(differentiate(u, k),
                             Expr::add(Expr::integer(1), Expr::pow(u, Expr::integer(2))));
        }
        case ExprKind::Abs:
            throw EvalError("abs() has no derivative rule; it is restricted to constraints");
    }
    throw EvalError("differentiate: unknown node kind");
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

namespace {

constexpr double kSingularTol = 1e-12;

using Cplx = std::complex<double>;

Cplx eval_node(const ExprNode& n, const Assignment& a) {
    switch (n.kind) {
        case ExprKind::Const:
            return Cplx(n.value.to_double(), 0.0);
        case ExprKind::ImaginaryUnit:
            return Cplx(0.0, 1.0);
        case ExprKind::Var:
            if (n.var < 1 || n.var > a.point.size())
                throw EvalError("variable x" + std::to_string(n.var) + " is outside the assignment");
            return a.point[n.var - 1];
        case ExprKind::Param: {
            auto it = a.params.find(n.param);
            if (it == a.params.end()) throw EvalError("unbound parameter '" + n.param + "'");
            return it->second;
        }
        case ExprKind::Neg:
            return -eval_node(*n.a, a);
        case ExprKind::Add:
            return eval_node(*n.a, a) + eval_node(*n.b, a);
        case ExprKind::Sub:
            return eval_node(*n.a, a) - eval_node(*n.b, a);
        case ExprKind::Mul:
            return eval_node(*n.a, a) * eval_node(*n.b, a);
        case ExprKind::Div: {
            Cplx den = eval_node(*n.b, a);
            if (std::abs(den) < kSingularTol) throw EvalError("singular point: division by ~0");
            return eval_node(*n.a, a) / den;
        }
        case ExprKind::Pow: {
            Cplx base = eval_node(*n.a, a);
            if (std::abs(base) < kSingularTol) throw EvalError("singular point: pow of ~0 base");
            Cplx expn = eval_node(*n.b, a);
            return std::exp(expn * std::log(base));  // principal branch
        }
        case ExprKind::Exp:
            return std::exp(eval_node(*n.a, a));
        case ExprKind::Ln: {
            Cplx z = eval_node(*n.a, a);
            if (std::abs(z) < kSingularTol) throw EvalError("singular point: ln of ~0");
            return std::log(z);  // principal branch
        }
        case ExprKind::Arctan: {
            // (1/2i) ln((1+iz)/(1-iz)), consistent with the derivative rule
            Cplx z = eval_node(*n.a, a);
            const Cplx iu(0.0, 1.0);
            Cplx den = Cplx(1.0, 0.0) - iu * z;
            if (std::abs(den) < kSingularTol) throw EvalError("singular point: arctan pole");
            Cplx ratio = (Cplx(1.0, 0.0) + iu * z) / den;
            if (std::abs(ratio) < kSingularTol) throw EvalError("singular point: arctan pole");
            return std::log(ratio) / (2.0 * iu);
        }
        case ExprKind::Abs:
            throw EvalError("abs() is restricted to parameter constraints");
    }
    throw EvalError("evaluate: unknown node kind");
}

}  // namespace

std::complex<double> evaluate(const Expr& e, const Assignment& a) {
    Cplx v = eval_node(e.node(), a);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw EvalError("evaluation produced a non-finite value");
    return v;
}

std::vector<std::complex<double>> gradient(const Expr& e, const Assignment& a) {
    std::vector<Cplx> g(a.point.size());
    for (std::size_t k = 1; k <= a.point.size(); ++k) g[k - 1] = evaluate(differentiate(e, k), a);
    return g;
}

Rational evaluate_exact(const Expr& e, const std::map<std::string, Rational>& params) {
    const ExprNode& n = e.node();
    switch (n.kind) {
        case ExprKind::Const:
            return n.value;
        case ExprKind::Param: {
            auto it = params.find(n.param);
            if (it == params.end()) throw EvalError("unbound parameter '" + n.param + "'");
            return it->second;
        }
        case ExprKind::Neg:
            return -evaluate_exact(e.child_a(), params);
        case ExprKind::Abs:
            return evaluate_exact(e.child_a(), params).abs();
        case ExprKind::Add:
            return evaluate_exact(e.child_a(), params) + evaluate_exact(e.child_b(), params);
        case ExprKind::Sub:
            return evaluate_exact(e.child_a(), params) - evaluate_exact(e.child_b(), params);
        case ExprKind::Mul:
            return evaluate_exact(e.child_a(), params) * evaluate_exact(e.child_b(), params);
        case ExprKind::Div: {
            Rational den = evaluate_exact(e.child_b(), params);
            if (den.is_zero()) throw EvalError("exact evaluation: division by zero");
            return evaluate_exact(e.child_a(), params) / den;
        }
        case ExprKind::Pow: {
            Rational expn = evaluate_exact(e.child_b(), params);
            if (!expn.is_integer()) throw EvalError("exact evaluation: non-integer exponent");
            return evaluate_exact(e.child_a(), params).pow(expn.num().to_int64());
        }
        default:
            throw EvalError("exact evaluation: expression is not a rational parameter expression");
    }
}

namespace {

// Avoid-list entries must be the atomic factors whose zero sets make up the
// singular locus; a composite like (x1^(h+2)*q^h)^2 is decomposed into x1
// and q, since its own magnitude can be tiny far away from any singularity.
void add_avoid_factors(const Expr& e, std::vector<Expr>& out, std::set<std::string>& seen) {
    switch (e.kind()) {
        case ExprKind::Const:
        case ExprKind::ImaginaryUnit:
        case ExprKind::Param:
            return;
        case ExprKind::Neg:
            add_avoid_factors(e.child_a(), out, seen);
            return;
        case ExprKind::Mul:
        case ExprKind::Div:
            add_avoid_factors(e.child_a(), out, seen);
            add_avoid_factors(e.child_b(), out, seen);
            return;
        case ExprKind::Pow:
            add_avoid_factors(e.child_a(), out, seen);
            return;
        case ExprKind::Exp:
            return;  // exp factors have no zeros
        default:
            break;
    }
    if (e.variables().empty()) return;
    if (seen.insert(e.to_string()).second) out.push_back(e);
}

}  // namespace

std::vector<Expr> singular_subexpressions(const Expr& e, std::size_t dim) {
    std::vector<Expr> out;
    std::set<std::string> seen;
    // walk the expression and each first derivative, collecting Div
    // denominators, Ln arguments and Pow bases
    std::vector<Expr> roots{e};
    for (std::size_t k = 1; k <= dim; ++k) roots.push_back(differentiate(e, k));
    for (const auto& root : roots) {
        std::vector<Expr> stack{root};
        while (!stack.empty()) {
            Expr cur = stack.back();
            stack.pop_back();
            if (cur.empty()) continue;
            const ExprNode& n = cur.node();
            if (n.kind == ExprKind::Div) add_avoid_factors(cur.child_b(), out, seen);
            if (n.kind == ExprKind::Ln || n.kind == ExprKind::Pow)
                add_avoid_factors(cur.child_a(), out, seen);
            if (n.a) stack.push_back(cur.child_a());
            if (n.b) stack.push_back(cur.child_b());
        }
    }
    return out;
}

Assignment sample_point(std::size_t n, const std::vector<Expr>& avoid,
                        const std::map<std::string, std::complex<double>>& params, Rng& rng) {
    for (int attempt = 0; attempt < 100; ++attempt) {
        Assignment a;
        a.params = params;
        a.point.resize(n);
        for (std::size_t k = 0; k < n; ++k) {
            double mag = 0.1 + rng.uniform01() * 9.9;
            a.point[k] = Cplx(rng.coin() ? mag : -mag, 0.0);
        }
        bool ok = true;
        for (const auto& expr : avoid) {
            try {
                if (std::abs(evaluate(expr, a)) < 1e-6) {
                    ok = false;
                    break;
                }
            } catch (const EvalError&) {
                ok = false;
                break;
            }
        }
        if (ok) return a;
    }
    throw SamplingError("sample_point: no nonsingular point found in 100 attempts");
}

}  // namespace lieinv
