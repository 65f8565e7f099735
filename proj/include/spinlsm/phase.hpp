#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace spinlsm {

/// Rational phase exp(2*pi*i*num/den), stored reduced with num in [0, den).
struct PhaseQ {
    std::int64_t num = 0;
    std::int64_t den = 1;

    PhaseQ() = default;
    PhaseQ(std::int64_t n, std::int64_t d) : num(n), den(d) { reduce(); }

    void reduce() {
        if (den <= 0) throw std::invalid_argument("PhaseQ: denominator must be positive");
        num %= den;
        if (num < 0) num += den;
        std::int64_t g = std::gcd(num, den);
        if (g > 1) { num /= g; den /= g; }
        if (num == 0) den = 1;
    }

    bool is_one() const { return num == 0; }

    PhaseQ operator*(const PhaseQ& o) const {  // product of phases = sum of angles
        std::int64_t d = std::lcm(den, o.den);
        return PhaseQ(num * (d / den) + o.num * (d / o.den), d);
    }
    PhaseQ inverse() const { return PhaseQ(den - num, den); }
    PhaseQ pow_sign(int sign) const { return sign >= 0 ? *this : inverse(); }

    bool operator==(const PhaseQ& o) const { return num == o.num && den == o.den; }
    bool operator!=(const PhaseQ& o) const { return !(*this == o); }

    std::complex<double> value() const {
        const double t = 2.0 * M_PI * double(num) / double(den);
        return {std::cos(t), std::sin(t)};
    }
};

/// Snap a unit complex number to the nearest rational phase with denominator
/// dividing `den`. Returns false when the distance to the grid exceeds tol.
inline bool snap_phase(std::complex<double> z, std::int64_t den, double tol, PhaseQ& out) {
    double a = std::arg(z) / (2.0 * M_PI);  // in (-1/2, 1/2]
    if (a < 0) a += 1.0;
    std::int64_t k = std::llround(a * double(den)) % den;
    PhaseQ cand(k, den);
    if (std::abs(z - cand.value()) > tol) return false;
    out = cand;
    return true;
}

}  // namespace spinlsm
