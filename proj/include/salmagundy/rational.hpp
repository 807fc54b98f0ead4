#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>

namespace salmagundy {

using Rational = boost::rational<std::int64_t>;

// Non-negative rational or infinity. Infinity compares above every finite
// value, and infinity minus anything stays infinity.
class OrderValue {
public:
    OrderValue() = default;
    OrderValue(Rational v) : value_(v) {}
    OrderValue(std::int64_t v) : value_(v) {}

    static OrderValue infinity() {
        OrderValue o;
        o.inf_ = true;
        return o;
    }

    bool is_infinite() const { return inf_; }
    bool is_finite() const { return !inf_; }
    // Only meaningful for finite values.
    const Rational& value() const { return value_; }

    OrderValue operator+(const OrderValue& o) const;
    OrderValue operator-(const OrderValue& o) const;
    OrderValue operator/(const Rational& r) const;

    bool operator==(const OrderValue& o) const {
        return inf_ == o.inf_ && (inf_ || value_ == o.value_);
    }
    bool operator!=(const OrderValue& o) const { return !(*this == o); }
    bool operator<(const OrderValue& o) const;
    bool operator<=(const OrderValue& o) const { return !(o < *this); }
    bool operator>(const OrderValue& o) const { return o < *this; }
    bool operator>=(const OrderValue& o) const { return !(*this < o); }

    std::string str() const;

private:
    bool inf_ = false;
    Rational value_{0};
};

std::string to_string(const Rational& r);
// Accepts "a/b", "a" and (for OrderValue) "inf". Throws std::invalid_argument.
Rational parse_rational(const std::string& text);
OrderValue parse_order(const std::string& text);

// Smallest multiple of 1/bound that is >= v.
Rational ceil_to_grid(const Rational& v, std::int64_t bound);
bool on_grid(const Rational& v, std::int64_t bound);

}  // namespace salmagundy
