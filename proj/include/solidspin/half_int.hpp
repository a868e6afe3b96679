#pragma once

#include <compare>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace solidspin {

/// Exact half-integer quantum number, stored as twice its value so that
/// J = 3/2 is twice_ = 3. All angular-momentum labels (J, M, k, q, I, ...)
/// are carried in this type; narrowing to double happens only at the edge
/// of a formula.
class HalfInt {
public:
    constexpr HalfInt() = default;
    constexpr HalfInt(int whole) : twice_(2 * whole) {}

    static constexpr HalfInt from_twice(int t) {
        HalfInt h;
        h.twice_ = t;
        return h;
    }

    constexpr int twice() const { return twice_; }
    constexpr bool is_integer() const { return twice_ % 2 == 0; }
    constexpr double value() const { return 0.5 * twice_; }

    /// Narrow to int; the value must be integral.
    constexpr int to_int() const {
        if (!is_integer())
            throw std::invalid_argument("HalfInt::to_int on half-odd value " + to_string());
        return twice_ / 2;
    }

    std::string to_string() const {
        if (is_integer()) return std::to_string(twice_ / 2);
        return std::to_string(twice_) + "/2";
    }

    constexpr HalfInt operator-() const { return from_twice(-twice_); }
    constexpr HalfInt& operator+=(HalfInt o) { twice_ += o.twice_; return *this; }
    constexpr HalfInt& operator-=(HalfInt o) { twice_ -= o.twice_; return *this; }

    friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return from_twice(a.twice_ + b.twice_); }
    friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return from_twice(a.twice_ - b.twice_); }
    friend constexpr auto operator<=>(HalfInt a, HalfInt b) = default;

private:
    int twice_ = 0;
};

inline HalfInt abs(HalfInt a) { return HalfInt::from_twice(std::abs(a.twice())); }

/// Triangle predicate: |a-b| <= c <= a+b with integral perimeter.
inline bool triangle(HalfInt a, HalfInt b, HalfInt c) {
    if (!(a + b + c).is_integer()) return false;
    return abs(a - b) <= c && c <= a + b;
}

/// m-range predicate: |m| <= j and j-m integral.
inline bool valid_jm(HalfInt j, HalfInt m) {
    return (j - m).is_integer() && abs(m) <= j;
}

/// (-1)^e for an integral HalfInt exponent.
inline int parity_phase(HalfInt e) {
    return (e.to_int() % 2 == 0) ? 1 : -1;
}

namespace detail {

inline void require_nonnegative_j(HalfInt j, const char* what) {
    if (j < HalfInt(0)) throw std::invalid_argument(std::string(what) + ": negative j");
}

inline void require_jm(HalfInt j, HalfInt m, const char* what) {
    require_nonnegative_j(j, what);
    if (!(j - m).is_integer())
        throw std::invalid_argument(std::string(what) + ": j-m not integral (j=" + j.to_string() +
                                    ", m=" + m.to_string() + ")");
    if (abs(m) > j)
        throw std::invalid_argument(std::string(what) + ": |m| > j (j=" + j.to_string() +
                                    ", m=" + m.to_string() + ")");
}

}  // namespace detail

}  // namespace solidspin
