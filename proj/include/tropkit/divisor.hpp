#pragma once

#include "tropkit/metric_graph.hpp"

#include <map>
#include <string>
#include <vector>

namespace tropkit {

// Finitely supported formal sum of graph points with nonzero rational coefficients.
class Divisor {
public:
    Divisor() = default;
    static Divisor point(const GraphPoint& p, const Rational& coefficient = Rational(1));

    const std::map<GraphPoint, Rational>& terms() const { return terms_; }
    Rational at(const GraphPoint& p) const;
    Rational degree() const;
    bool is_zero() const { return terms_.empty(); }
    bool is_effective() const;
    bool is_integral() const;
    std::vector<GraphPoint> support() const;

    void add(const GraphPoint& p, const Rational& coefficient);

    Divisor& operator+=(const Divisor& other);
    Divisor& operator-=(const Divisor& other);
    friend Divisor operator+(Divisor a, const Divisor& b) { return a += b; }
    friend Divisor operator-(Divisor a, const Divisor& b) { return a -= b; }
    Divisor scaled(const Rational& factor) const;

    friend bool operator==(const Divisor& a, const Divisor& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const Divisor& a, const Divisor& b) { return !(a == b); }
    friend bool operator<(const Divisor& a, const Divisor& b) { return a.terms_ < b.terms_; }

private:
    std::map<GraphPoint, Rational> terms_;
};

std::string describe(const MetricGraph& g, const Divisor& d);

} // namespace tropkit
