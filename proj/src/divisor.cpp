#include "tropkit/divisor.hpp"

#include <algorithm>

namespace tropkit {

Divisor Divisor::point(const GraphPoint& p, const Rational& coefficient)
{
    Divisor d;
    d.add(p, coefficient);
    return d;
}

Rational Divisor::at(const GraphPoint& p) const
{
    const auto it = terms_.find(p);
    return it == terms_.end() ? Rational(0) : it->second;
}

Rational Divisor::degree() const
{
    Rational total = 0;
    for (const auto& [p, c] : terms_) {
        total += c;
    }
    return total;
}

bool Divisor::is_effective() const
{
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second > 0; });
}

bool Divisor::is_integral() const
{
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return is_integer(t.second); });
}

std::vector<GraphPoint> Divisor::support() const
{
    std::vector<GraphPoint> out;
    for (const auto& [p, c] : terms_) {
        out.push_back(p);
    }
    return out;
}

void Divisor::add(const GraphPoint& p, const Rational& coefficient)
{
    if (coefficient == 0) {
        return;
    }
    auto [it, inserted] = terms_.emplace(p, coefficient);
    if (!inserted) {
        it->second += coefficient;
        if (it->second == 0) {
            terms_.erase(it);
        }
    }
}

Divisor& Divisor::operator+=(const Divisor& other)
{
    for (const auto& [p, c] : other.terms_) {
        add(p, c);
    }
    return *this;
}

Divisor& Divisor::operator-=(const Divisor& other)
{
    for (const auto& [p, c] : other.terms_) {
        add(p, -c);
    }
    return *this;
}

Divisor Divisor::scaled(const Rational& factor) const
{
    Divisor out;
    for (const auto& [p, c] : terms_) {
        out.add(p, c * factor);
    }
    return out;
}

std::string describe(const MetricGraph& g, const Divisor& d)
{
    if (d.is_zero()) {
        return "0";
    }
    std::string out;
    for (const auto& [p, c] : d.terms()) {
        if (!out.empty()) {
            out += c > 0 ? " + " : " - ";
        } else if (c < 0) {
            out += "-";
        }
        const Rational mag = abs(c);
        if (mag != 1) {
            out += format_rational(mag);
        }
        out += "(" + describe(g, p) + ")";
    }
    return out;
}

} // namespace tropkit
