#pragma once

#include <cctype>
#include <cmath>
#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "curveframe/errors.hpp"

namespace curveframe {

/// Tiny parser for polynomial energy integrands over (kappa, tau):
/// numbers, the identifiers `kappa` and `tau`, + - * ^ (nonnegative integer
/// exponents), unary minus and parentheses.
class EnergyExpression {
public:
    explicit EnergyExpression(const std::string& text) : src_(text) { root_ = parse(); }

    double operator()(double kappa, double tau) const { return eval(*root_, kappa, tau); }

private:
    enum class Kind { Constant, Kappa, Tau, Add, Sub, Mul, Neg, Pow };
    struct Node {
        Kind kind;
        double value = 0.0;
        int exponent = 0;
        std::unique_ptr<Node> lhs, rhs;
    };

    static double eval(const Node& n, double k, double t) {
        switch (n.kind) {
            case Kind::Constant: return n.value;
            case Kind::Kappa: return k;
            case Kind::Tau: return t;
            case Kind::Add: return eval(*n.lhs, k, t) + eval(*n.rhs, k, t);
            case Kind::Sub: return eval(*n.lhs, k, t) - eval(*n.rhs, k, t);
            case Kind::Mul: return eval(*n.lhs, k, t) * eval(*n.rhs, k, t);
            case Kind::Neg: return -eval(*n.lhs, k, t);
            case Kind::Pow: return std::pow(eval(*n.lhs, k, t), n.exponent);
        }
        return 0.0;
    }

    std::unique_ptr<Node> parse() {
        pos_ = 0;
        auto e = parse_sum();
        skip_ws();
        if (pos_ != src_.size()) {
            throw ParseError("unexpected character '" + std::string(1, src_[pos_]) +
                             "' at position " + std::to_string(pos_));
        }
        return e;
    }

    std::unique_ptr<Node> parse_sum() {
        auto lhs = parse_product();
        while (true) {
            skip_ws();
            if (peek() == '+' || peek() == '-') {
                const char op = src_[pos_++];
                auto node = std::make_unique<Node>();
                node->kind = (op == '+') ? Kind::Add : Kind::Sub;
                node->lhs = std::move(lhs);
                node->rhs = parse_product();
                lhs = std::move(node);
            } else {
                return lhs;
            }
        }
    }

    std::unique_ptr<Node> parse_product() {
        auto lhs = parse_power();
        while (true) {
            skip_ws();
            if (peek() == '*') {
                ++pos_;
                auto node = std::make_unique<Node>();
                node->kind = Kind::Mul;
                node->lhs = std::move(lhs);
                node->rhs = parse_power();
                lhs = std::move(node);
            } else {
                return lhs;
            }
        }
    }

    std::unique_ptr<Node> parse_power() {
        auto base = parse_atom();
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            skip_ws();
            std::size_t start = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            if (start == pos_) throw ParseError("exponent must be a nonnegative integer");
            auto node = std::make_unique<Node>();
            node->kind = Kind::Pow;
            node->exponent = std::stoi(src_.substr(start, pos_ - start));
            node->lhs = std::move(base);
            return node;
        }
        return base;
    }

    std::unique_ptr<Node> parse_atom() {
        skip_ws();
        if (pos_ >= src_.size()) throw ParseError("unexpected end of expression");
        const char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            auto e = parse_sum();
            skip_ws();
            if (peek() != ')') throw ParseError("missing closing parenthesis");
            ++pos_;
            return e;
        }
        if (c == '-') {
            ++pos_;
            auto node = std::make_unique<Node>();
            node->kind = Kind::Neg;
            node->lhs = parse_power();
            return node;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t consumed = 0;
            auto node = std::make_unique<Node>();
            node->kind = Kind::Constant;
            node->value = std::stod(src_.substr(pos_), &consumed);
            pos_ += consumed;
            return node;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            const std::string name = src_.substr(start, pos_ - start);
            auto node = std::make_unique<Node>();
            if (name == "kappa") {
                node->kind = Kind::Kappa;
            } else if (name == "tau") {
                node->kind = Kind::Tau;
            } else {
                throw ParseError("unknown identifier '" + name + "' (expected kappa or tau)");
            }
            return node;
        }
        throw ParseError("unexpected character '" + std::string(1, c) + "' at position " +
                         std::to_string(pos_));
    }

    char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }
    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    std::string src_;
    std::size_t pos_ = 0;
    std::unique_ptr<Node> root_;
};

}  // namespace curveframe
