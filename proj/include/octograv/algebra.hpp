#pragma once
/**
 * @file algebra.hpp
 * @brief Complex quaternions and complex octonions (C (x) H, C (x) O).
 *
 * Both algebras share one element type tagged with its kind. The real
 * multiplication table is generated at compile time by Cayley-Dickson
 * doubling R -> C -> H -> O with the rule
 *
 *     (a, b)(c, d) = (ac - conj(d) b, d a + b conj(c)).
 *
 * Coefficients are complex; algebra conjugation is C-linear (it negates
 * the imaginary units, it does not conjugate the complex coefficients).
 */

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "octograv/errors.hpp"

namespace octograv {

using ComplexScalar = std::complex<double>;

enum class Kind { quaternionic, octonionic };

constexpr std::size_t dimension(Kind kind) noexcept {
  return kind == Kind::quaternionic ? 4 : 8;
}

inline std::string to_string(Kind kind) {
  return kind == Kind::quaternionic ? "quaternionic" : "octonionic";
}

/// Product of two basis units: e_p e_q = sign * e_index.
struct UnitProduct {
  int sign = 0;
  std::size_t index = 0;
};

template <std::size_t N>
using UnitTable = std::array<std::array<UnitProduct, N>, N>;

namespace detail {

template <std::size_t N>
constexpr std::array<int, N> cd_conjugate(std::array<int, N> v) {
  for (std::size_t k = 1; k < N; ++k) v[k] = -v[k];
  return v;
}

template <std::size_t N>
constexpr std::array<int, N> cd_multiply(const std::array<int, N>& x,
                                         const std::array<int, N>& y) {
  if constexpr (N == 1) {
    return {x[0] * y[0]};
  } else {
    constexpr std::size_t H = N / 2;
    std::array<int, H> a{}, b{}, c{}, d{};
    for (std::size_t k = 0; k < H; ++k) {
      a[k] = x[k];
      b[k] = x[k + H];
      c[k] = y[k];
      d[k] = y[k + H];
    }
    const auto ac = cd_multiply(a, c);
    const auto db = cd_multiply(cd_conjugate(d), b);
    const auto da = cd_multiply(d, a);
    const auto bc = cd_multiply(b, cd_conjugate(c));
    std::array<int, N> out{};
    for (std::size_t k = 0; k < H; ++k) {
      out[k] = ac[k] - db[k];
      out[k + H] = da[k] + bc[k];
    }
    return out;
  }
}

template <std::size_t N>
constexpr UnitTable<N> make_unit_table() {
  UnitTable<N> table{};
  for (std::size_t p = 0; p < N; ++p) {
    for (std::size_t q = 0; q < N; ++q) {
      std::array<int, N> x{}, y{};
      x[p] = 1;
      y[q] = 1;
      const auto prod = cd_multiply(x, y);
      for (std::size_t r = 0; r < N; ++r) {
        if (prod[r] != 0) table[p][q] = UnitProduct{prod[r], r};
      }
    }
  }
  return table;
}

}  // namespace detail

inline constexpr UnitTable<4> kQuaternionUnits = detail::make_unit_table<4>();
inline constexpr UnitTable<8> kOctonionUnits = detail::make_unit_table<8>();

// Doubling keeps every basis product a signed basis unit with index p xor q.
static_assert([] {
  for (std::size_t p = 0; p < 8; ++p)
    for (std::size_t q = 0; q < 8; ++q)
      if (kOctonionUnits[p][q].index != (p ^ q) ||
          (kOctonionUnits[p][q].sign != 1 && kOctonionUnits[p][q].sign != -1))
        return false;
  return true;
}());

/// Element of C (x) H or C (x) O. Component 0 multiplies the real unit.
class CayleyElement {
 public:
  explicit CayleyElement(Kind kind = Kind::quaternionic) : kind_(kind) {}

  CayleyElement(Kind kind, std::initializer_list<ComplexScalar> coeffs)
      : kind_(kind) {
    if (coeffs.size() != dimension(kind)) {
      throw std::invalid_argument("CayleyElement: expected " +
                                  std::to_string(dimension(kind)) +
                                  " coefficients");
    }
    std::size_t k = 0;
    for (auto c : coeffs) c_[k++] = c;
  }

  CayleyElement(Kind kind, std::span<const ComplexScalar> coeffs)
      : kind_(kind) {
    if (coeffs.size() != dimension(kind)) {
      throw std::invalid_argument("CayleyElement: expected " +
                                  std::to_string(dimension(kind)) +
                                  " coefficients");
    }
    for (std::size_t k = 0; k < coeffs.size(); ++k) c_[k] = coeffs[k];
  }

  /// coeff times basis unit `index` (0 is the real unit).
  static CayleyElement unit(Kind kind, std::size_t index,
                            ComplexScalar coeff = 1.0) {
    if (index >= dimension(kind)) {
      throw std::out_of_range("CayleyElement::unit: index out of range");
    }
    CayleyElement x(kind);
    x.c_[index] = coeff;
    return x;
  }

  static CayleyElement scalar(Kind kind, ComplexScalar value) {
    return unit(kind, 0, value);
  }

  Kind kind() const noexcept { return kind_; }
  std::size_t size() const noexcept { return dimension(kind_); }

  ComplexScalar operator[](std::size_t k) const { return c_[k]; }
  ComplexScalar& operator[](std::size_t k) { return c_[k]; }

  std::span<const ComplexScalar> coefficients() const noexcept {
    return {c_.data(), size()};
  }

  ComplexScalar scalar_part() const noexcept { return c_[0]; }

  CayleyElement& operator+=(const CayleyElement& rhs) {
    require_same_kind(rhs, "+");
    for (std::size_t k = 0; k < size(); ++k) c_[k] += rhs.c_[k];
    return *this;
  }

  CayleyElement& operator-=(const CayleyElement& rhs) {
    require_same_kind(rhs, "-");
    for (std::size_t k = 0; k < size(); ++k) c_[k] -= rhs.c_[k];
    return *this;
  }

  CayleyElement& operator*=(ComplexScalar s) noexcept {
    for (std::size_t k = 0; k < size(); ++k) c_[k] *= s;
    return *this;
  }

  friend bool operator==(const CayleyElement& a, const CayleyElement& b) {
    return a.kind_ == b.kind_ && a.c_ == b.c_;
  }

  void require_same_kind(const CayleyElement& other, const char* op) const {
    if (other.kind_ != kind_) {
      throw IncompatibleAlgebras(std::string("operation '") + op +
                                 "' mixes " + to_string(kind_) + " and " +
                                 to_string(other.kind_) + " elements");
    }
  }

 private:
  Kind kind_;
  std::array<ComplexScalar, 8> c_{};
};

inline CayleyElement operator+(CayleyElement a, const CayleyElement& b) {
  return a += b;
}
inline CayleyElement operator-(CayleyElement a, const CayleyElement& b) {
  return a -= b;
}
inline CayleyElement operator-(CayleyElement a) { return a *= -1.0; }
inline CayleyElement operator*(ComplexScalar s, CayleyElement a) {
  return a *= s;
}
inline CayleyElement operator*(CayleyElement a, ComplexScalar s) {
  return a *= s;
}
/// Componentwise real division; exact whenever the quotients are representable.
inline CayleyElement operator/(CayleyElement a, double s) {
  for (std::size_t k = 0; k < a.size(); ++k) a[k] /= s;
  return a;
}

namespace detail {

template <std::size_t N>
CayleyElement table_multiply(const UnitTable<N>& table, const CayleyElement& x,
                             const CayleyElement& y) {
  CayleyElement out(x.kind());
  for (std::size_t p = 0; p < N; ++p) {
    if (x[p] == 0.0) continue;
    for (std::size_t q = 0; q < N; ++q) {
      const auto& u = table[p][q];
      out[u.index] += static_cast<double>(u.sign) * x[p] * y[q];
    }
  }
  return out;
}

}  // namespace detail

/// Bilinear product. Associative for quaternionic, alternative for octonionic.
inline CayleyElement multiply(const CayleyElement& x, const CayleyElement& y) {
  x.require_same_kind(y, "multiply");
  return x.kind() == Kind::quaternionic
             ? detail::table_multiply(kQuaternionUnits, x, y)
             : detail::table_multiply(kOctonionUnits, x, y);
}

inline CayleyElement operator*(const CayleyElement& x, const CayleyElement& y) {
  return multiply(x, y);
}

inline CayleyElement conjugate(CayleyElement x) {
  for (std::size_t k = 1; k < x.size(); ++k) x[k] = -x[k];
  return x;
}

/// <x, y> = scalar part of (x conj(y) + y conj(x)) / 2.
inline ComplexScalar inner(const CayleyElement& x, const CayleyElement& y) {
  x.require_same_kind(y, "inner");
  return (multiply(x, conjugate(y)) + multiply(y, conjugate(x))).scalar_part() /
         2.0;
}

/// The same form written with the conjugate on the left: (conj(x) y + conj(y) x) / 2.
inline ComplexScalar inner_conjugate_left(const CayleyElement& x,
                                          const CayleyElement& y) {
  x.require_same_kind(y, "inner");
  return (multiply(conjugate(x), y) + multiply(conjugate(y), x)).scalar_part() /
         2.0;
}

/// Scalar part of x conj(x). Complex-valued; vanishes on zero divisors.
inline ComplexScalar norm(const CayleyElement& x) {
  return multiply(x, conjugate(x)).scalar_part();
}

/// sqrt(sum |x_k|^2); used only to scale residuals.
inline double magnitude(const CayleyElement& x) {
  double s = 0.0;
  for (auto c : x.coefficients()) s += std::norm(c);
  return std::sqrt(s);
}

inline CayleyElement commutator(const CayleyElement& x, const CayleyElement& y) {
  return multiply(x, y) - multiply(y, x);
}

inline CayleyElement associator(const CayleyElement& x, const CayleyElement& y,
                                const CayleyElement& z) {
  y.require_same_kind(z, "associator");
  return multiply(multiply(x, y), z) - multiply(x, multiply(y, z));
}

/// 3! X_L(x,y,z) = x(conj(y) z - conj(z) y) + cyclic.
inline CayleyElement cross_left(const CayleyElement& x, const CayleyElement& y,
                                const CayleyElement& z) {
  x.require_same_kind(y, "cross_left");
  y.require_same_kind(z, "cross_left");
  auto term = [](const CayleyElement& a, const CayleyElement& b,
                 const CayleyElement& c) {
    return multiply(a, multiply(conjugate(b), c) - multiply(conjugate(c), b));
  };
  return (term(x, y, z) + term(y, z, x) + term(z, x, y)) / 6.0;
}

/// 3! X_R(x,y,z) = (x conj(y) - y conj(x)) z + cyclic.
inline CayleyElement cross_right(const CayleyElement& x, const CayleyElement& y,
                                 const CayleyElement& z) {
  x.require_same_kind(y, "cross_right");
  y.require_same_kind(z, "cross_right");
  auto term = [](const CayleyElement& a, const CayleyElement& b,
                 const CayleyElement& c) {
    return multiply(multiply(a, conjugate(b)) - multiply(b, conjugate(a)), c);
  };
  return (term(x, y, z) + term(y, z, x) + term(z, x, y)) / 6.0;
}

enum class Chirality { left, right };

inline std::string to_string(Chirality c) {
  return c == Chirality::left ? "L" : "R";
}

inline CayleyElement cross(Chirality chirality, const CayleyElement& x,
                           const CayleyElement& y, const CayleyElement& z) {
  return chirality == Chirality::left ? cross_left(x, y, z)
                                      : cross_right(x, y, z);
}

/// The frame (i, e_1..e_n): unit 0 is the complex unit times the real unit.
struct BasisFrame {
  Kind kind;
  std::vector<CayleyElement> units;

  const CayleyElement& operator[](std::size_t a) const { return units[a]; }
  std::size_t size() const noexcept { return units.size(); }
};

inline BasisFrame basis_frame(Kind kind) {
  BasisFrame frame{kind, {}};
  frame.units.reserve(dimension(kind));
  frame.units.push_back(CayleyElement::scalar(kind, {0.0, 1.0}));
  for (std::size_t k = 1; k < dimension(kind); ++k) {
    frame.units.push_back(CayleyElement::unit(kind, k));
  }
  return frame;
}

}  // namespace octograv
