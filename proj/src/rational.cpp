#include "tropkit/rational.hpp"

#include "tropkit/errors.hpp"

#include <algorithm>
#include <cctype>

namespace tropkit {

namespace {

bool all_digits(std::string_view s)
{
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

} // namespace

Rational parse_rational(std::string_view text)
{
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    const auto slash = body.find('/');
    const std::string_view num = body.substr(0, slash);
    const std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
        throw Error(ErrorCode::invalid_input, "malformed rational '" + std::string(text) + "'");
    }
    Integer n(std::string(num), 10);
    Integer d(std::string(den), 10);
    if (d == 0) {
        throw Error(ErrorCode::invalid_input, "zero denominator in '" + std::string(text) + "'");
    }
    Rational value(n, d);
    value.canonicalize();
    return negative ? Rational(-value) : value;
}

std::string format_rational(const Rational& value)
{
    if (value.get_den() == 1) {
        return value.get_num().get_str();
    }
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

bool is_integer(const Rational& value) { return value.get_den() == 1; }

Rational ratio(long num, long den)
{
    if (den == 0) {
        throw Error(ErrorCode::precondition, "zero denominator");
    }
    Rational out{Integer(num), Integer(den)};
    out.canonicalize();
    return out;
}

Rational min_of(const std::vector<Rational>& values)
{
    if (values.empty()) {
        throw Error(ErrorCode::precondition, "minimum of an empty list");
    }
    return *std::min_element(values.begin(), values.end());
}

Rational max_of(const std::vector<Rational>& values)
{
    if (values.empty()) {
        throw Error(ErrorCode::precondition, "maximum of an empty list");
    }
    return *std::max_element(values.begin(), values.end());
}

Integer lcm_of_denominators(const std::vector<Rational>& values)
{
    Integer result = 1;
    for (const auto& v : values) {
        mpz_lcm(result.get_mpz_t(), result.get_mpz_t(), v.get_den_mpz_t());
    }
    return result;
}

double to_double(const Rational& value) { return value.get_d(); }

} // namespace tropkit
