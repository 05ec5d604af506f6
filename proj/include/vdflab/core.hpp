#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace vdflab {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;
using i128 = __int128;
using u128 = unsigned __int128;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InputError : Error {
  using Error::Error;
};
struct ZeroMassError : Error {
  using Error::Error;
};
struct ResourceError : Error {
  using Error::Error;
};
struct PreconditionError : Error {
  using Error::Error;
};
struct EmptyPropertyError : Error {
  using Error::Error;
};
struct ContractError : Error {
  using Error::Error;
};
struct CounterexampleError : Error {
  using Error::Error;
};
// a randomized step exhausted its retry budget
struct RetryError : Error {
  using Error::Error;
};

inline void require(bool ok, const std::string& what) {
  if (!ok) throw InputError(what);
}

// ---- rationals ----

inline Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(s));
    BigInt p(s.substr(0, slash)), q(s.substr(slash + 1));
    if (q == 0) throw InputError("zero denominator in '" + s + "'");
    return Rational(p, q);
  } catch (const InputError&) {
    throw;
  } catch (const std::exception&) {
    throw InputError("malformed rational '" + s + "'");
  }
}

inline std::string to_string(const Rational& r) {
  auto num = boost::multiprecision::numerator(r);
  auto den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline BigInt floor_r(const Rational& r) {
  BigInt n = boost::multiprecision::numerator(r), d = boost::multiprecision::denominator(r);
  BigInt q = n / d;
  if (n < 0 && q * d != n) q -= 1;
  return q;
}

inline BigInt ceil_r(const Rational& r) { return -floor_r(-r); }

inline Rational rpow(const Rational& r, unsigned k) {
  Rational out = 1;
  for (unsigned i = 0; i < k; ++i) out *= r;
  return out;
}

inline BigInt to_big(i128 v) {
  bool neg = v < 0;
  u128 m = neg ? u128(-(v + 1)) + 1 : u128(v);
  BigInt out = BigInt(static_cast<std::uint64_t>(m >> 64));
  out <<= 64;
  out += BigInt(static_cast<std::uint64_t>(m));
  return neg ? BigInt(-out) : out;
}

inline Rational rabs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

// ---- vertex sets ----

constexpr int kMaxVertices = 128;

// Fixed 128-bit set of vertex ids.
struct VertexSet {
  std::uint64_t w[2] = {0, 0};

  VertexSet() = default;
  VertexSet(std::uint64_t lo, std::uint64_t hi) : w{lo, hi} {}
  static VertexSet single(int v) {
    VertexSet s;
    s.insert(v);
    return s;
  }
  static VertexSet range(int n) {
    VertexSet s;
    if (n >= 64) {
      s.w[0] = ~0ULL;
      s.w[1] = n >= 128 ? ~0ULL : ((1ULL << (n - 64)) - 1);
    } else {
      s.w[0] = n == 0 ? 0 : ((n == 64) ? ~0ULL : ((1ULL << n) - 1));
    }
    return s;
  }
  static VertexSet of(std::initializer_list<int> vs) {
    VertexSet s;
    for (int v : vs) s.insert(v);
    return s;
  }
  template <class It>
  static VertexSet of(It b, It e) {
    VertexSet s;
    for (; b != e; ++b) s.insert(*b);
    return s;
  }

  bool contains(int v) const { return (w[v >> 6] >> (v & 63)) & 1ULL; }
  void insert(int v) { w[v >> 6] |= 1ULL << (v & 63); }
  void erase(int v) { w[v >> 6] &= ~(1ULL << (v & 63)); }
  int size() const { return std::popcount(w[0]) + std::popcount(w[1]); }
  bool empty() const { return (w[0] | w[1]) == 0; }
  int lowest() const {
    if (w[0]) return std::countr_zero(w[0]);
    if (w[1]) return 64 + std::countr_zero(w[1]);
    return -1;
  }
  int highest() const {
    if (w[1]) return 127 - std::countl_zero(w[1]);
    if (w[0]) return 63 - std::countl_zero(w[0]);
    return -1;
  }

  VertexSet operator&(const VertexSet& o) const { return VertexSet(w[0] & o.w[0], w[1] & o.w[1]); }
  VertexSet operator|(const VertexSet& o) const { return VertexSet(w[0] | o.w[0], w[1] | o.w[1]); }
  VertexSet operator^(const VertexSet& o) const { return VertexSet(w[0] ^ o.w[0], w[1] ^ o.w[1]); }
  VertexSet minus(const VertexSet& o) const { return VertexSet(w[0] & ~o.w[0], w[1] & ~o.w[1]); }
  VertexSet& operator|=(const VertexSet& o) { w[0] |= o.w[0]; w[1] |= o.w[1]; return *this; }
  VertexSet& operator&=(const VertexSet& o) { w[0] &= o.w[0]; w[1] &= o.w[1]; return *this; }
  bool operator==(const VertexSet& o) const { return w[0] == o.w[0] && w[1] == o.w[1]; }
  bool operator!=(const VertexSet& o) const { return !(*this == o); }
  bool operator<(const VertexSet& o) const { return w[1] != o.w[1] ? w[1] < o.w[1] : w[0] < o.w[0]; }
  bool subset_of(const VertexSet& o) const { return minus(o).empty(); }
  bool intersects(const VertexSet& o) const { return !(*this & o).empty(); }

  std::vector<int> members() const {
    std::vector<int> out;
    out.reserve(size());
    for (int k = 0; k < 2; ++k) {
      std::uint64_t x = w[k];
      while (x) {
        out.push_back(k * 64 + std::countr_zero(x));
        x &= x - 1;
      }
    }
    return out;
  }

  template <class F>
  void for_each(F&& f) const {
    for (int k = 0; k < 2; ++k) {
      std::uint64_t x = w[k];
      while (x) {
        f(k * 64 + std::countr_zero(x));
        x &= x - 1;
      }
    }
  }
};

struct VertexSetHash {
  std::size_t operator()(const VertexSet& s) const {
    return std::hash<std::uint64_t>()(s.w[0] * 0x9E3779B97F4A7C15ULL ^ s.w[1]);
  }
};

// Subset of `base` selected by the bits of `mask` (bit k picks the k-th member).
inline VertexSet subset_by_mask(const std::vector<int>& base, std::uint64_t mask) {
  VertexSet s;
  for (std::size_t k = 0; k < base.size(); ++k)
    if ((mask >> k) & 1ULL) s.insert(base[k]);
  return s;
}

}  // namespace vdflab
