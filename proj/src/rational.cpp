#include "salmagundy/rational.hpp"

#include <stdexcept>

namespace salmagundy {

OrderValue OrderValue::operator+(const OrderValue& o) const {
    if (inf_ || o.inf_) return infinity();
    return OrderValue(value_ + o.value_);
}

OrderValue OrderValue::operator-(const OrderValue& o) const {
    if (inf_) return infinity();
    if (o.inf_) throw std::domain_error("finite minus infinity");
    return OrderValue(value_ - o.value_);
}

OrderValue OrderValue::operator/(const Rational& r) const {
    if (r <= 0) throw std::domain_error("division by non-positive scale");
    if (inf_) return infinity();
    return OrderValue(value_ / r);
}

bool OrderValue::operator<(const OrderValue& o) const {
    if (inf_) return false;
    if (o.inf_) return true;
    return value_ < o.value_;
}

std::string OrderValue::str() const { return inf_ ? "inf" : to_string(value_); }

std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

static std::int64_t parse_int(const std::string& s, const std::string& whole) {
    if (s.empty()) throw std::invalid_argument("bad rational: '" + whole + "'");
    std::size_t pos = 0;
    std::int64_t v = 0;
    try {
        v = std::stoll(s, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad rational: '" + whole + "'");
    }
    if (pos != s.size()) throw std::invalid_argument("bad rational: '" + whole + "'");
    return v;
}

Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(parse_int(text, text));
    auto num = parse_int(text.substr(0, slash), text);
    auto den = parse_int(text.substr(slash + 1), text);
    if (den == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
    return Rational(num, den);
}

OrderValue parse_order(const std::string& text) {
    if (text == "inf") return OrderValue::infinity();
    return OrderValue(parse_rational(text));
}

Rational ceil_to_grid(const Rational& v, std::int64_t bound) {
    Rational scaled = v * bound;
    std::int64_t k = scaled.numerator() / scaled.denominator();
    if (Rational(k) < scaled) ++k;
    return Rational(k, bound);
}

bool on_grid(const Rational& v, std::int64_t bound) {
    return (v * bound).denominator() == 1;
}

}  // namespace salmagundy
