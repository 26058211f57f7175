#pragma once

#include <cctype>
#include <cstdio>
#include <memory>
#include <string>
#include <string_view>

#include "freenc/function.hpp"
#include "freenc/matrix.hpp"

namespace freenc {

/// AST of the nc rational expression language. Nodes carry the source span
/// so inversion failures can point at the subexpression that caused them.
template <class K>
struct Expr {
    enum class Kind { Const, Var, Neg, Add, Sub, Mul, Scale, Inv };
    using Ptr = std::shared_ptr<const Expr>;

    Kind kind;
    Span span;
    K value{};           // Const payload, Scale factor
    int var = 0;         // Var index (1-based)
    Ptr a, b;

    static Ptr make_const(K v, Span sp = {}) {
        return std::make_shared<Expr>(Expr{Kind::Const, sp, std::move(v), 0, nullptr, nullptr});
    }
    static Ptr make_var(int j, Span sp = {}) {
        return std::make_shared<Expr>(Expr{Kind::Var, sp, K{}, j, nullptr, nullptr});
    }
    static Ptr make_unary(Kind k, Ptr e, Span sp = {}) {
        return std::make_shared<Expr>(Expr{k, sp, K{}, 0, std::move(e), nullptr});
    }
    static Ptr make_binary(Kind k, Ptr lhs, Ptr rhs, Span sp = {}) {
        return std::make_shared<Expr>(Expr{k, sp, K{}, 0, std::move(lhs), std::move(rhs)});
    }
    static Ptr make_scale(K c, Ptr e, Span sp = {}) {
        return std::make_shared<Expr>(Expr{Kind::Scale, sp, std::move(c), 0, std::move(e), nullptr});
    }
};

template <class K>
bool expr_equal(const typename Expr<K>::Ptr& x, const typename Expr<K>::Ptr& y) {
    if (!x || !y) return !x && !y;
    if (x->kind != y->kind || x->var != y->var) return false;
    if ((x->kind == Expr<K>::Kind::Const || x->kind == Expr<K>::Kind::Scale) &&
        !(x->value == y->value))
        return false;
    return expr_equal<K>(x->a, y->a) && expr_equal<K>(x->b, y->b);
}

namespace detail {

// Recursive descent over:
//   expr   := term (("+"|"-") term)*
//   term   := factor ("*" factor)*
//   factor := "-" factor | "inv" "(" expr ")" | "(" expr ")" | number | ident
template <class K>
class ExprParser {
  public:
    ExprParser(std::string_view text, int d) : text_(text), d_(d) {}

    typename Expr<K>::Ptr run() {
        auto e = parse_expr();
        skip_ws();
        if (pos_ != text_.size())
            throw ParseError(pos_, {"operator", "end of input"}, "unexpected trailing input");
        return e;
    }

  private:
    std::string_view text_;
    int d_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }
    bool accept(char c) {
        if (peek(c)) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c, const char* what) {
        if (!accept(c)) throw ParseError(pos_, {std::string(1, c)}, std::string("expected ") + what);
    }

    typename Expr<K>::Ptr parse_expr() {
        std::size_t begin = next_token_pos();
        auto lhs = parse_term();
        while (true) {
            if (accept('+')) {
                auto rhs = parse_term();
                lhs = Expr<K>::make_binary(Expr<K>::Kind::Add, lhs, rhs, Span{begin, pos_});
            } else if (accept('-')) {
                auto rhs = parse_term();
                lhs = Expr<K>::make_binary(Expr<K>::Kind::Sub, lhs, rhs, Span{begin, pos_});
            } else {
                return lhs;
            }
        }
    }

    typename Expr<K>::Ptr parse_term() {
        std::size_t begin = next_token_pos();
        auto lhs = parse_factor();
        while (accept('*')) {
            auto rhs = parse_factor();
            lhs = Expr<K>::make_binary(Expr<K>::Kind::Mul, lhs, rhs, Span{begin, pos_});
        }
        return lhs;
    }

    std::size_t next_token_pos() {
        skip_ws();
        return pos_;
    }

    typename Expr<K>::Ptr parse_factor() {
        skip_ws();
        std::size_t begin = pos_;
        if (pos_ >= text_.size())
            throw ParseError(pos_, {"-", "inv", "(", "number", "x<k>"}, "unexpected end of input");
        char c = text_[pos_];
        if (c == '-') {
            ++pos_;
            auto inner = parse_factor();
            return Expr<K>::make_unary(Expr<K>::Kind::Neg, inner, Span{begin, pos_});
        }
        if (c == '(') {
            ++pos_;
            auto inner = parse_expr();
            expect(')', "closing parenthesis");
            return inner;
        }
        if (text_.substr(pos_).starts_with("inv")) {
            pos_ += 3;
            expect('(', "'(' after inv");
            auto inner = parse_expr();
            expect(')', "closing parenthesis of inv");
            return Expr<K>::make_unary(Expr<K>::Kind::Inv, inner, Span{begin, pos_});
        }
        if (c == 'x') {
            ++pos_;
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            if (pos_ == start) throw ParseError(pos_, {"digit"}, "expected variable index after 'x'");
            int j = std::stoi(std::string(text_.substr(start, pos_ - start)));
            if (j < 1 || j > d_)
                throw ParseError(begin, {"x1..x" + std::to_string(d_)},
                                 "variable index out of range");
            return Expr<K>::make_var(j, Span{begin, pos_});
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.' ||
                    text_[pos_] == '/'))
                ++pos_;
            K v;
            try {
                v = ScalarTraits<K>::parse_number(text_.substr(start, pos_ - start));
            } catch (const std::exception&) {
                throw ParseError(start, {"number"}, "malformed numeric literal");
            }
            return Expr<K>::make_const(std::move(v), Span{begin, pos_});
        }
        throw ParseError(pos_, {"-", "inv", "(", "number", "x<k>"}, "unexpected character");
    }
};

}  // namespace detail

template <class K>
typename Expr<K>::Ptr parse(std::string_view text, int d) {
    if (d < 1) throw ArgumentError("parse: d must be >= 1");
    return detail::ExprParser<K>(text, d).run();
}

namespace detail {

template <class K>
std::string format_literal(const K& v) {
    if constexpr (ScalarTraits<K>::exact) {
        return v.to_string();
    } else {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v.real());
        return buf;
    }
}

}  // namespace detail

template <class K>
std::string print(const typename Expr<K>::Ptr& e) {
    using Kind = typename Expr<K>::Kind;
    // parenthesize by precedence: additive 0, multiplicative 1, tight 2
    auto wrap = [](const std::string& s, bool need) { return need ? "(" + s + ")" : s; };
    std::function<std::string(const typename Expr<K>::Ptr&, int)> go =
        [&](const typename Expr<K>::Ptr& n, int parent) -> std::string {
        switch (n->kind) {
            case Kind::Const: return detail::format_literal<K>(n->value);
            case Kind::Var: return "x" + std::to_string(n->var);
            case Kind::Neg: return wrap("-" + go(n->a, 2), parent > 2);
            case Kind::Inv: return "inv(" + go(n->a, 0) + ")";
            case Kind::Add: return wrap(go(n->a, 0) + " + " + go(n->b, 1), parent > 0);
            case Kind::Sub: return wrap(go(n->a, 0) + " - " + go(n->b, 1), parent > 0);
            case Kind::Mul: return wrap(go(n->a, 1) + "*" + go(n->b, 2), parent > 1);
            case Kind::Scale:
                return wrap(detail::format_literal<K>(n->value) + "*" + go(n->a, 2), parent > 1);
        }
        return {};
    };
    return go(e, 0);
}

/// Recursive evaluation; constants become scalar matrices, inverses are
/// exact over the rationals and pivot-thresholded over complex doubles.
template <class K>
Matrix<K> eval_expr(const typename Expr<K>::Ptr& e, const MatTuple<K>& x) {
    using Kind = typename Expr<K>::Kind;
    switch (e->kind) {
        case Kind::Const: return Matrix<K>::scalar(x.n(), e->value);
        case Kind::Var:
            if (e->var > x.d()) throw ArgumentError("eval_expr: variable exceeds tuple d");
            return x[e->var - 1];
        case Kind::Neg: return -eval_expr<K>(e->a, x);
        case Kind::Add: return eval_expr<K>(e->a, x) + eval_expr<K>(e->b, x);
        case Kind::Sub: return eval_expr<K>(e->a, x) - eval_expr<K>(e->b, x);
        case Kind::Mul: return eval_expr<K>(e->a, x) * eval_expr<K>(e->b, x);
        case Kind::Scale: return e->value * eval_expr<K>(e->a, x);
        case Kind::Inv: {
            Matrix<K> inner = eval_expr<K>(e->a, x);
            auto inv = try_invert(inner);
            if (!inv) throw DomainError("inverse does not exist at this point", e->span);
            return *inv;
        }
    }
    throw ArgumentError("eval_expr: corrupt AST");
}

template <class K>
NcFunction<K> as_ncfunction(typename Expr<K>::Ptr e, int d) {
    return NcFunction<K>(d, [e = std::move(e)](const MatTuple<K>& x) {
        return eval_expr<K>(e, x);
    });
}

}  // namespace freenc
