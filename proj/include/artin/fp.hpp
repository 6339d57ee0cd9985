#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace artin {

using Scalar = std::uint32_t;

/// Prime field F_p with 2 <= p < 2^31. Primality is checked at construction
/// by trial division, so a FieldConfig value is always a valid field.
class FieldConfig {
public:
    explicit FieldConfig(std::uint64_t p) {
        if (p < 2 || p >= (1ull << 31))
            throw std::invalid_argument("field modulus out of range: " + std::to_string(p));
        for (std::uint64_t d = 2; d * d <= p; ++d)
            if (p % d == 0)
                throw std::invalid_argument("field modulus is not prime: " + std::to_string(p));
        p_ = static_cast<Scalar>(p);
    }

    Scalar p() const { return p_; }

    Scalar add(Scalar a, Scalar b) const {
        std::uint64_t s = std::uint64_t(a) + b;
        return s >= p_ ? Scalar(s - p_) : Scalar(s);
    }
    Scalar sub(Scalar a, Scalar b) const {
        return a >= b ? a - b : Scalar(a + std::uint64_t(p_) - b);
    }
    Scalar neg(Scalar a) const { return a == 0 ? 0 : p_ - a; }
    Scalar mul(Scalar a, Scalar b) const {
        return Scalar((std::uint64_t(a) * b) % p_);
    }

    /// Reduce an arbitrary signed value into [0, p).
    Scalar reduce(std::int64_t v) const {
        std::int64_t r = v % std::int64_t(p_);
        if (r < 0) r += p_;
        return Scalar(r);
    }

    Scalar pow(Scalar a, std::uint64_t e) const {
        Scalar r = 1, b = a % p_;
        while (e) {
            if (e & 1) r = mul(r, b);
            b = mul(b, b);
            e >>= 1;
        }
        return r;
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    Scalar inv(Scalar a) const {
        a %= p_;
        if (a == 0) throw std::domain_error("inverse of zero in F_p");
        std::int64_t t = 0, new_t = 1;
        std::int64_t r = p_, new_r = a;
        while (new_r != 0) {
            std::int64_t q = r / new_r;
            t -= q * new_t; std::swap(t, new_t);
            r -= q * new_r; std::swap(r, new_r);
        }
        return reduce(t);
    }

    bool operator==(const FieldConfig& o) const { return p_ == o.p_; }
    bool operator!=(const FieldConfig& o) const { return p_ != o.p_; }

private:
    Scalar p_;
};

} // namespace artin
