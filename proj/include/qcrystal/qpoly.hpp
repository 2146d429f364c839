#pragma once

// Exact Laurent polynomials in q over arbitrary-precision integers, together
// with the q-binomial family and truncated power series.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace qcrystal {

using BigInt = mpz_class;

// Sparse Laurent polynomial: exponent -> nonzero coefficient.
class QLaurent {
  public:
    QLaurent() = default;

    static QLaurent constant(const BigInt& c);
    static QLaurent monomial(long exponent, const BigInt& c = 1);

    bool is_zero() const { return terms_.empty(); }
    const std::map<long, BigInt>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    BigInt coeff(long exponent) const;
    long min_exponent() const; // requires !is_zero()
    long max_exponent() const; // requires !is_zero()

    // Value at q = 1.
    BigInt at_one() const;
    bool nonnegative() const;
    bool palindromic() const;

    void add_term(long exponent, const BigInt& c);
    QLaurent shifted(long k) const; // multiply by q^k

    QLaurent& operator+=(const QLaurent& r);
    QLaurent& operator-=(const QLaurent& r);
    QLaurent& operator*=(const QLaurent& r);
    QLaurent& operator*=(const BigInt& c);
    QLaurent operator-() const;

    friend QLaurent operator+(QLaurent a, const QLaurent& b) { return a += b; }
    friend QLaurent operator-(QLaurent a, const QLaurent& b) { return a -= b; }
    friend QLaurent operator*(const QLaurent& a, const QLaurent& b);
    friend bool operator==(const QLaurent& a, const QLaurent& b) { return a.terms_ == b.terms_; }

    // Canonical form: [[exponent,"coefficient"],...] with increasing exponent.
    std::string to_json() const;
    static QLaurent from_json(const std::string& text);

    // Human-readable, e.g. "1 + 2q + q^2".
    std::string to_string() const;

  private:
    std::map<long, BigInt> terms_;
};

enum class ArithKind { add, sub, mul };
QLaurent poly_arith(const QLaurent& p, const QLaurent& r, ArithKind kind);

// Generating function of partitions fitting in a box of `width` columns and
// `height` rows: (q)_{width+height} / ((q)_width (q)_height).  Zero when either
// dimension is negative.
QLaurent qbinomial(long width, long height);

// The usual [top over bottom] notation: qbinomial(top - bottom, bottom).
QLaurent qbinomial_top(long top, long bottom);

// (q)_L / prod (q)_{parts[a]} when the parts are nonnegative and sum to L,
// zero otherwise.
QLaurent qmultinomial(long total, std::span<const long> parts);

// q -> 1/q.
QLaurent invert_q(const QLaurent& p);

// (q)_n as a polynomial.
QLaurent q_pochhammer(long n);

// Power series in q with exact coefficients for exponents 0..cutoff.
class TruncatedSeries {
  public:
    explicit TruncatedSeries(long cutoff);
    static TruncatedSeries one(long cutoff);
    // Drops exponents above the cutoff; throws DomainError on negative exponents.
    static TruncatedSeries from_poly(const QLaurent& p, long cutoff);

    long cutoff() const { return static_cast<long>(coeffs_.size()) - 1; }
    const BigInt& coeff(long k) const { return coeffs_.at(static_cast<std::size_t>(k)); }
    BigInt& coeff(long k) { return coeffs_.at(static_cast<std::size_t>(k)); }
    const std::vector<BigInt>& coeffs() const { return coeffs_; }

    TruncatedSeries& operator+=(const TruncatedSeries& r);
    TruncatedSeries& operator-=(const TruncatedSeries& r);
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
        return a.coeffs_ == b.coeffs_;
    }

    // Multiplicative inverse; requires constant term +-1.
    TruncatedSeries reciprocal() const;
    // In-place multiplication by (1 - q^k) or division by it.
    void mul_one_minus(long k);
    void div_one_minus(long k);

    std::string to_json() const;

  private:
    std::vector<BigInt> coeffs_;
};

// Exponents k >= 1 with k = residue (mod modulus).
struct Progression {
    long residue;
    long modulus;
};

// prod over the progressions of (1 - q^k), k <= cutoff, or its reciprocal.
TruncatedSeries truncated_product(std::span<const Progression> progressions, long cutoff,
                                  bool reciprocal);

} // namespace qcrystal
