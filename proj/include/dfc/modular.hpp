#pragma once

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dfc/errors.hpp"
#include "dfc/matrix.hpp"
#include "dfc/rational.hpp"

namespace dfc {

// ---------------------------------------------------------------------------
// Word-size prime field arithmetic (62-bit moduli, products fit __int128).
// ---------------------------------------------------------------------------

namespace fp {

inline uint64_t add(uint64_t a, uint64_t b, uint64_t p) {
    uint64_t s = a + b;
    return s >= p ? s - p : s;
}
inline uint64_t sub(uint64_t a, uint64_t b, uint64_t p) {
    return a >= b ? a - b : a + p - b;
}
inline uint64_t mul(uint64_t a, uint64_t b, uint64_t p) {
    return uint64_t((unsigned __int128)a * b % p);
}
inline uint64_t pow(uint64_t a, uint64_t e, uint64_t p) {
    uint64_t r = 1;
    while (e) {
        if (e & 1) r = mul(r, a, p);
        a = mul(a, a, p);
        e >>= 1;
    }
    return r;
}
inline uint64_t inv(uint64_t a, uint64_t p) {
    if (a == 0) throw internal_error("inverse of zero mod p");
    return pow(a, p - 2, p);
}

inline bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % q == 0) return n == q;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    // deterministic Miller-Rabin witnesses for 64-bit inputs
    for (uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        uint64_t x = pow(a % n, d, n);
        if (x == 0 || x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mul(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

} // namespace fp

/// Fixed list of 62-bit primes, attempted in order.  The environment
/// variable DFC_PRIMES (comma-separated) overrides it, which the test
/// suite uses to exercise bad-prime handling.
inline const std::vector<uint64_t>& prime_list() {
    static const std::vector<uint64_t> primes = [] {
        if (const char* env = std::getenv("DFC_PRIMES")) {
            std::vector<uint64_t> ps;
            std::stringstream ss(env);
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                if (tok.empty()) continue;
                uint64_t p = std::strtoull(tok.c_str(), nullptr, 10);
                if (p < (1ULL << 20) || p >= (1ULL << 63) || !fp::is_prime(p))
                    throw error("DFC_PRIMES entry is not a usable prime: " + tok);
                ps.push_back(p);
            }
            if (!ps.empty()) return ps;
        }
        return std::vector<uint64_t>{
            4611686018427387847ULL, 4611686018427387817ULL, 4611686018427387787ULL, 4611686018427387761ULL,
            4611686018427387751ULL, 4611686018427387737ULL, 4611686018427387733ULL, 4611686018427387709ULL,
            4611686018427387701ULL, 4611686018427387631ULL, 4611686018427387617ULL, 4611686018427387587ULL,
            4611686018427387461ULL, 4611686018427387421ULL, 4611686018427387409ULL, 4611686018427387329ULL,
            4611686018427387323ULL, 4611686018427387301ULL, 4611686018427387271ULL, 4611686018427387241ULL,
            4611686018427387139ULL, 4611686018427387131ULL, 4611686018427387127ULL, 4611686018427387113ULL,
        };
    }();
    return primes;
}

/// Primes for modular runs: the fixed list first, then (for very large
/// lifts) a deterministic descent below the last listed prime.
class PrimeStream {
public:
    uint64_t next() {
        const auto& list = prime_list();
        if (idx_ < list.size()) return list[idx_++];
        if (cursor_ == 0) {
            cursor_ = list.back();
            for (uint64_t p : list) cursor_ = std::min(cursor_, p);
        }
        do {
            cursor_ -= (cursor_ % 2 == 0) ? 1 : 2;
            if (cursor_ < (1ULL << 20)) throw internal_error("prime stream exhausted");
        } while (!fp::is_prime(cursor_));
        return cursor_;
    }

private:
    size_t idx_ = 0;
    uint64_t cursor_ = 0;
};

/// Bookkeeping for a modular solve: which primes were skipped as bad and
/// how many contributed to the lift.
struct SolveReport {
    std::vector<uint64_t> bad_primes;
    int primes_used = 0;
    bool exact_fallback = false;
};

inline uint64_t mpz_mod_u64(const Integer& z, uint64_t p) {
    Integer r = z % Integer(static_cast<unsigned long>(p));
    if (r < 0) r += Integer(static_cast<unsigned long>(p));
    return r.get_ui();
}

/// Image of a rational mod p; throws bad_prime_error if p divides the
/// denominator.
inline uint64_t rational_mod(const Rational& q, uint64_t p) {
    uint64_t d = mpz_mod_u64(q.den(), p);
    if (d == 0) throw bad_prime_error(p);
    return fp::mul(mpz_mod_u64(q.num(), p), fp::inv(d, p), p);
}

// ---------------------------------------------------------------------------
// Modular nullspace
// ---------------------------------------------------------------------------

struct ModNullspace {
    size_t rank = 0;
    size_t kernel_dim = 0;
    std::vector<size_t> pivots;
    /// Canonical kernel basis mod p: one vector per free column, in
    /// increasing free-column order (mirrors the exact construction).
    std::vector<std::vector<uint64_t>> basis;
};

/// RREF-based kernel over F_p with the same deterministic pivoting as the
/// exact elimination, so for good primes pivots and basis agree with the
/// reductions of the exact ones (up to the primitive scaling).
inline ModNullspace nullspace_mod(std::vector<std::vector<uint64_t>> m, size_t cols, uint64_t p) {
    size_t rows = m.size();
    std::vector<size_t> pivots;
    size_t row = 0;
    for (size_t col = 0; col < cols && row < rows; ++col) {
        size_t piv = row;
        while (piv < rows && m[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[row]);
        uint64_t inv = fp::inv(m[row][col], p);
        for (size_t j = col; j < cols; ++j) m[row][j] = fp::mul(m[row][j], inv, p);
        for (size_t i = 0; i < rows; ++i) {
            if (i == row || m[i][col] == 0) continue;
            uint64_t f = m[i][col];
            for (size_t j = col; j < cols; ++j)
                m[i][j] = fp::sub(m[i][j], fp::mul(f, m[row][j], p), p);
        }
        pivots.push_back(col);
        ++row;
    }
    ModNullspace out;
    out.rank = pivots.size();
    out.kernel_dim = cols - pivots.size();
    out.pivots = pivots;
    std::vector<bool> is_pivot(cols, false);
    for (size_t q : pivots) is_pivot[q] = true;
    for (size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<uint64_t> v(cols, 0);
        v[f] = 1;
        for (size_t i = 0; i < pivots.size(); ++i)
            if (pivots[i] < f) v[pivots[i]] = m[i][f] ? p - m[i][f] : 0;
        out.basis.push_back(std::move(v));
    }
    return out;
}

/// Reduction of an exact matrix mod p followed by kernel computation.
/// The kernel dimension is an upper bound on the rational one, with
/// equality for all but finitely many primes.
inline ModNullspace nullspace_mod_prime(const ExactMatrix& m, uint64_t p) {
    std::vector<std::vector<uint64_t>> red(m.row_count(), std::vector<uint64_t>(m.col_count()));
    for (size_t i = 0; i < m.row_count(); ++i)
        for (size_t j = 0; j < m.col_count(); ++j)
            red[i][j] = rational_mod(m.at(i, j), p);
    return nullspace_mod(std::move(red), m.col_count(), p);
}

// ---------------------------------------------------------------------------
// Rational reconstruction and CRT
// ---------------------------------------------------------------------------

/// Half-extended Euclid: finds n/d with n = residue * d (mod modulus) and
/// |n|, d <= sqrt(modulus/2), or nothing if no such pair exists.
inline std::optional<Rational> rational_reconstruct(const Integer& residue, const Integer& modulus) {
    if (residue < 0 || residue >= modulus) throw error("residue out of range");
    Integer bound;
    mpz_sqrt(bound.get_mpz_t(), Integer(modulus / 2).get_mpz_t());
    Integer r0 = modulus, r1 = residue;
    Integer v0 = 0, v1 = 1;
    while (r1 > bound) {
        Integer q = r0 / r1;
        Integer r = r0 - q * r1;
        Integer v = v0 - q * v1;
        r0 = r1; r1 = r;
        v0 = v1; v1 = v;
    }
    if (v1 == 0) return std::nullopt;
    Integer n = r1, d = v1;
    if (d < 0) { n = -n; d = -d; }
    if (d > bound) return std::nullopt;
    Integer g;
    mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    if (g != 1 && !(n == 0 && d == 1)) return std::nullopt;
    return Rational(n, d);
}

/// Incremental CRT accumulator for a vector of residues.
struct CrtVector {
    Integer modulus = 1;
    std::vector<Integer> values;

    void add_prime(uint64_t p, const std::vector<uint64_t>& residues) {
        Integer pz(static_cast<unsigned long>(p));
        if (values.empty()) {
            values.assign(residues.size(), Integer(0));
            for (size_t i = 0; i < residues.size(); ++i)
                values[i] = Integer(static_cast<unsigned long>(residues[i]));
            modulus = pz;
            return;
        }
        if (residues.size() != values.size()) throw internal_error("CRT arity mismatch");
        // x = v + modulus * ((r - v) / modulus mod p)
        Integer minv;
        Integer mod_red = modulus % pz;
        if (mpz_invert(minv.get_mpz_t(), mod_red.get_mpz_t(), pz.get_mpz_t()) == 0)
            throw internal_error("CRT moduli not coprime");
        for (size_t i = 0; i < values.size(); ++i) {
            Integer r(static_cast<unsigned long>(residues[i]));
            Integer t = ((r - values[i]) * minv) % pz;
            if (t < 0) t += pz;
            values[i] += modulus * t;
        }
        modulus *= pz;
    }

    std::optional<std::vector<Rational>> reconstruct() const {
        std::vector<Rational> out(values.size());
        for (size_t i = 0; i < values.size(); ++i) {
            auto r = rational_reconstruct(values[i], modulus);
            if (!r) return std::nullopt;
            out[i] = *r;
        }
        return out;
    }
};

} // namespace dfc
