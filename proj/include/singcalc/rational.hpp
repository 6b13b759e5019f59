#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace singcalc {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational on the projective line Q ∪ {∞}.
///
/// Normal form: the denominator is non-negative; a zero denominator encodes
/// the single point at infinity (stored as 1/0); otherwise numerator and
/// denominator are coprime. Equality is equality of normal forms.
class ProjectiveRational {
public:
    ProjectiveRational() : num_(0), den_(1) {}
    ProjectiveRational(std::int64_t n) : num_(n), den_(1) {} // NOLINT(google-explicit-constructor)
    ProjectiveRational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
        normalize();
    }

    static ProjectiveRational infinity() { return {BigInt(1), BigInt(0)}; }

    const BigInt& num() const noexcept { return num_; }
    const BigInt& den() const noexcept { return den_; }

    bool is_infinite() const noexcept { return den_ == 0; }
    bool is_zero() const noexcept { return den_ != 0 && num_ == 0; }

    /// 1/x, with 1/0 = ∞ and 1/∞ = 0.
    ProjectiveRational reciprocal() const {
        if (is_infinite()) return {};
        return {den_, num_};
    }

    /// c - 1/x, the step of a Hirzebruch–Jung evaluation; total on Q ∪ {∞}.
    static ProjectiveRational hj_step(std::int64_t c, const ProjectiveRational& x) {
        if (x.is_infinite()) return {c};
        if (x.is_zero()) return infinity();
        return {BigInt(c) * x.num_ - x.den_, x.num_};
    }

    friend ProjectiveRational operator+(const ProjectiveRational& x, const ProjectiveRational& y) {
        require_finite(x, y);
        return {x.num_ * y.den_ + y.num_ * x.den_, x.den_ * y.den_};
    }
    friend ProjectiveRational operator-(const ProjectiveRational& x, const ProjectiveRational& y) {
        require_finite(x, y);
        return {x.num_ * y.den_ - y.num_ * x.den_, x.den_ * y.den_};
    }
    friend ProjectiveRational operator*(const ProjectiveRational& x, const ProjectiveRational& y) {
        require_finite(x, y);
        return {x.num_ * y.num_, x.den_ * y.den_};
    }
    friend ProjectiveRational operator/(const ProjectiveRational& x, const ProjectiveRational& y) {
        require_finite(x, y);
        if (y.is_zero()) throw std::domain_error("rational division by zero");
        return {x.num_ * y.den_, x.den_ * y.num_};
    }
    ProjectiveRational operator-() const {
        if (is_infinite()) return *this;
        return {-num_, den_};
    }
    ProjectiveRational& operator+=(const ProjectiveRational& y) { return *this = *this + y; }
    ProjectiveRational& operator-=(const ProjectiveRational& y) { return *this = *this - y; }

    friend bool operator==(const ProjectiveRational&, const ProjectiveRational&) = default;

    /// Ordering of finite values; ∞ compares above every finite value.
    friend std::strong_ordering operator<=>(const ProjectiveRational& x, const ProjectiveRational& y) {
        if (x.is_infinite() || y.is_infinite()) {
            return static_cast<int>(x.is_infinite()) <=> static_cast<int>(y.is_infinite());
        }
        const BigInt lhs = x.num_ * y.den_;
        const BigInt rhs = y.num_ * x.den_;
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    std::string to_string() const {
        if (is_infinite()) return "inf";
        if (den_ == 1) return num_.str();
        return num_.str() + "/" + den_.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const ProjectiveRational& x) {
        return os << x.to_string();
    }

private:
    static void require_finite(const ProjectiveRational& x, const ProjectiveRational& y) {
        if (x.is_infinite() || y.is_infinite())
            throw std::domain_error("affine arithmetic on the point at infinity");
    }

    void normalize() {
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        if (den_ == 0) {
            if (num_ == 0) throw std::domain_error("0/0 is not a projective rational");
            num_ = 1;
            return;
        }
        BigInt g = boost::multiprecision::gcd(boost::multiprecision::abs(num_), den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    BigInt num_;
    BigInt den_;
};

} // namespace singcalc
