#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace forge {

// Exact fraction with 64-bit parts; comparisons cross-multiply in 128 bits so
// density inequalities such as d(H) >= alpha * d(G) are decided exactly.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t num, std::int64_t den = 1);

    // Accepts "p/q", "p" or a finite decimal such as "0.7".
    static Rational parse(std::string_view text);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    std::string str() const;

    // Smallest integer >= value.
    std::int64_t ceil() const;
    // Largest integer <= value.
    std::int64_t floor() const;

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

}  // namespace forge
