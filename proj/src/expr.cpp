// SPDX-License-Identifier: Apache-2.0
#include "fewbody/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

namespace fewbody {

struct ExprNode {
    enum Kind { Num, Var, Neg, Add, Sub, Mul, Div, Pow, Exp, Sqrt } kind;
    double value = 0.0;
    std::shared_ptr<const ExprNode> a, b;
};

namespace {

using NodePtr = std::shared_ptr<const ExprNode>;

NodePtr node(ExprNode::Kind k, NodePtr a = nullptr, NodePtr b = nullptr) {
    auto n = std::make_shared<ExprNode>();
    n->kind = k;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

template <typename T>
T eval_node(const ExprNode& n, const T& r) {
    switch (n.kind) {
    case ExprNode::Num: return T(n.value);
    case ExprNode::Var: return r;
    case ExprNode::Neg: return -eval_node(*n.a, r);
    case ExprNode::Add: return eval_node(*n.a, r) + eval_node(*n.b, r);
    case ExprNode::Sub: return eval_node(*n.a, r) - eval_node(*n.b, r);
    case ExprNode::Mul: return eval_node(*n.a, r) * eval_node(*n.b, r);
    case ExprNode::Div: return eval_node(*n.a, r) / eval_node(*n.b, r);
    case ExprNode::Pow: return std::pow(eval_node(*n.a, r), eval_node(*n.b, r));
    case ExprNode::Exp: return std::exp(eval_node(*n.a, r));
    case ExprNode::Sqrt: return std::sqrt(eval_node(*n.a, r));
    }
    return T(0.0);
}

class Parser {
public:
    explicit Parser(const std::string& text) : s_(text) {}

    NodePtr parse() {
        skip_ws();
        if (pos_ == s_.size())
            fail("empty expression");
        NodePtr e = expr();
        skip_ws();
        if (pos_ != s_.size())
            fail("unexpected trailing input");
        return e;
    }

private:
    const std::string& s_;
    size_t pos_ = 0;
    int depth_ = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("expression error at offset " + std::to_string(pos_) +
                         ": " + what);
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    struct DepthGuard {
        Parser& p;
        explicit DepthGuard(Parser& pp) : p(pp) {
            if (++p.depth_ > 200)
                p.fail("expression nested too deeply");
        }
        ~DepthGuard() { --p.depth_; }
    };

    NodePtr expr() {
        DepthGuard guard(*this);
        NodePtr e = term();
        for (;;) {
            if (eat('+'))
                e = node(ExprNode::Add, e, term());
            else if (eat('-'))
                e = node(ExprNode::Sub, e, term());
            else
                return e;
        }
    }

    NodePtr term() {
        NodePtr e = unary();
        for (;;) {
            if (eat('*'))
                e = node(ExprNode::Mul, e, unary());
            else if (eat('/'))
                e = node(ExprNode::Div, e, unary());
            else
                return e;
        }
    }

    NodePtr unary() {
        DepthGuard guard(*this);
        if (eat('-'))
            return node(ExprNode::Neg, unary());
        if (eat('+'))
            return unary();
        return power();
    }

    NodePtr power() {
        NodePtr base = primary();
        // right-associative; the exponent may carry its own unary sign
        if (eat('^'))
            return node(ExprNode::Pow, base, unary());
        return base;
    }

    NodePtr primary() {
        skip_ws();
        if (pos_ == s_.size())
            fail("expected a value");
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr e = expr();
            if (!eat(')'))
                fail("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const char* begin = s_.c_str() + pos_;
            char* end = nullptr;
            const double v = std::strtod(begin, &end);
            if (end == begin || !std::isfinite(v))
                fail("malformed number");
            pos_ += static_cast<size_t>(end - begin);
            auto n = std::make_shared<ExprNode>();
            n->kind = ExprNode::Num;
            n->value = v;
            return n;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            size_t end = pos_;
            while (end < s_.size() &&
                   std::isalnum(static_cast<unsigned char>(s_[end])))
                ++end;
            const std::string name = s_.substr(pos_, end - pos_);
            if (name == "r") {
                pos_ = end;
                return node(ExprNode::Var);
            }
            if (name == "exp" || name == "sqrt") {
                pos_ = end;
                if (!eat('('))
                    fail("expected '(' after " + name);
                NodePtr arg = expr();
                if (!eat(')'))
                    fail("expected ')'");
                return node(name == "exp" ? ExprNode::Exp : ExprNode::Sqrt, arg);
            }
            fail("unknown identifier '" + name + "'");
        }
        fail(std::string("unexpected character '") + c + "'");
    }
};

} // namespace

PotentialExpr::PotentialExpr(std::shared_ptr<const ExprNode> root)
    : root_(std::move(root)) {}

double PotentialExpr::eval(double r) const {
    if (!root_)
        throw ParseError("empty expression");
    return eval_node(*root_, r);
}

cplx PotentialExpr::eval(cplx r) const {
    if (!root_)
        throw ParseError("empty expression");
    if (r.imag() == 0.0) // keep the real and complex paths bit-identical
        return cplx(eval_node(*root_, r.real()));
    return eval_node(*root_, r);
}

PotentialModel PotentialExpr::to_potential() const {
    PotentialExpr self = *this;
    return PotentialModel([self](double r) { return self.eval(r); },
                          [self](cplx r) { return self.eval(r); });
}

PotentialExpr parse_potential_expr(const std::string& text) {
    return PotentialExpr(Parser(text).parse());
}

} // namespace fewbody
