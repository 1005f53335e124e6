#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "dgln/linalg.hpp"

namespace dgln {

// A sample point of the double: a pair of invertible square matrices.
template <class S>
struct DoublePointT {
    MatT<S> X, Y;
};

using DoublePoint = DoublePointT<Rat>;
using JetDoublePoint = DoublePointT<Jet>;
using Jet2DoublePoint = DoublePointT<Jet2>;

// A function on the double, evaluable exactly at rational points and at jet
// points (one or two nilpotent levels). All implementations are pure.
class Evaluator {
public:
    virtual ~Evaluator() = default;
    virtual Rat eval(const DoublePointT<Rat>& p) const = 0;
    virtual Jet eval(const DoublePointT<Jet>& p) const = 0;
    virtual Jet2 eval(const DoublePointT<Jet2>& p) const = 0;
    virtual std::string name() const = 0;
};

using EvalPtr = std::shared_ptr<const Evaluator>;

template <class F>
class GenericEval final : public Evaluator {
public:
    GenericEval(std::string name, F f) : name_(std::move(name)), f_(std::move(f)) {}
    Rat eval(const DoublePointT<Rat>& p) const override { return f_(p); }
    Jet eval(const DoublePointT<Jet>& p) const override { return f_(p); }
    Jet2 eval(const DoublePointT<Jet2>& p) const override { return f_(p); }
    std::string name() const override { return name_; }

private:
    std::string name_;
    F f_;
};

template <class F>
EvalPtr make_eval(std::string name, F f) {
    return std::make_shared<GenericEval<F>>(std::move(name), std::move(f));
}

inline EvalPtr ev_const(Rat c) {
    return make_eval(rat_str(c), [c](const auto& p) {
        using S = std::decay_t<decltype(p.X(0, 0))>;
        return from_rat<S>(c);
    });
}

// Coordinate function: a single entry of X or Y (0-based indices).
inline EvalPtr ev_entry(bool of_y, std::size_t i, std::size_t j) {
    std::string nm = std::string(of_y ? "y" : "x") + "_" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
    return make_eval(nm, [of_y, i, j](const auto& p) { return of_y ? p.Y(i, j) : p.X(i, j); });
}

inline EvalPtr ev_sum(std::vector<EvalPtr> terms) {
    std::string nm = "(";
    for (std::size_t k = 0; k < terms.size(); ++k) nm += (k ? "+" : "") + terms[k]->name();
    nm += ")";
    return make_eval(nm, [terms = std::move(terms)](const auto& p) {
        using S = std::decay_t<decltype(p.X(0, 0))>;
        S acc = from_rat<S>(Rat(0));
        for (const auto& t : terms) acc += t->eval(p);
        return acc;
    });
}

// c * prod_i f_i^{e_i}; negative exponents require nonzero values at the point.
inline EvalPtr ev_monomial(Rat coeff, std::vector<std::pair<EvalPtr, long>> factors, std::string name = "") {
    if (name.empty()) {
        name = rat_str(coeff);
        for (const auto& [f, e] : factors) name += "*" + f->name() + "^" + std::to_string(e);
    }
    return make_eval(std::move(name), [coeff, factors = std::move(factors)](const auto& p) {
        using S = std::decay_t<decltype(p.X(0, 0))>;
        S acc = from_rat<S>(coeff);
        for (const auto& [f, e] : factors) {
            S v = f->eval(p);
            if (e < 0 && !is_unit(v)) throw ResampleError("monomial factor vanished at sample point");
            acc = acc * pow_any(v, e);
        }
        return acc;
    });
}

inline EvalPtr ev_quotient(EvalPtr num, EvalPtr den) {
    std::string nm = num->name() + "/" + den->name();
    return make_eval(std::move(nm), [num = std::move(num), den = std::move(den)](const auto& p) {
        using S = std::decay_t<decltype(p.X(0, 0))>;
        S d = den->eval(p);
        if (!is_unit(d)) throw ResampleError("quotient denominator vanished at sample point");
        S out = num->eval(p) * inv(d);
        return out;
    });
}

}  // namespace dgln
