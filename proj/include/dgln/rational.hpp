#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace dgln {

// Exact arithmetic ground types. mpq_class keeps values canonical (den > 0,
// gcd(|num|, den) = 1) after every arithmetic operation.
using Rat = mpq_class;
using Int = mpz_class;

struct DimensionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SingularMatrixError : std::runtime_error {
    explicit SingularMatrixError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a sampled point hits a measure-zero degeneracy (zero denominator,
// vanishing cluster variable, ...). Callers resample, with a bounded retry count.
struct ResampleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct StructureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Rat make_rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("make_rat: zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

inline std::string rat_str(const Rat& q) {
    if (is_integer(q)) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rat pow_rat(const Rat& base, long e) {
    if (e == 0) return Rat(1);
    bool flip = e < 0;
    unsigned long a = flip ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    if (flip && base == 0) throw std::domain_error("pow_rat: negative power of zero");
    Rat r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), a);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), a);
    if (flip) {
        r = Rat(1) / r;
    }
    r.canonicalize();
    return r;
}

// Exact d-th root of a rational, if one exists in Q. For even d the
// nonnegative root is returned; a negative argument has none.
inline std::optional<Rat> exact_root(const Rat& x, unsigned d) {
    if (d == 0) throw std::invalid_argument("exact_root: d = 0");
    if (d == 1) return x;
    if (sgn(x) < 0 && d % 2 == 0) return std::nullopt;
    Int num = x.get_num(), den = x.get_den();
    Int rn, rd;
    int exact_n = mpz_root(rn.get_mpz_t(), num.get_mpz_t(), d);
    int exact_d = mpz_root(rd.get_mpz_t(), den.get_mpz_t(), d);
    if (!exact_n || !exact_d) return std::nullopt;
    Rat r(rn, rd);
    r.canonicalize();
    return r;
}

// Deterministic RNG. mt19937_64's output stream is fully specified by the
// standard; entry draws avoid std distributions (whose streams are not).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

    std::uint64_t next() {
        // splitmix64: tiny, portable, and good enough for sampling test points.
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [lo, hi], both ends included.
    long int_in(long lo, long hi) {
        if (hi < lo) throw std::invalid_argument("Rng::int_in: empty range");
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<long>(next() % span);
    }

    // Uniform over {0, ..., m-1}.
    std::size_t index(std::size_t m) {
        if (m == 0) throw std::invalid_argument("Rng::index: empty range");
        return static_cast<std::size_t>(next() % m);
    }

private:
    std::uint64_t state_;
};

}  // namespace dgln
