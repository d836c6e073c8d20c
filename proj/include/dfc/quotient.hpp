#pragma once

#include <memory>
#include <utility>
#include <variant>

#include "dfc/errors.hpp"
#include "dfc/unipoly.hpp"

namespace dfc {

/// Raised when arithmetic in Q[t]/(m) meets a zero divisor.  The witness is
/// a nontrivial monic factor of the modulus; the caller splits the modulus
/// into witness * cofactor and recomputes in each factor ring.
struct zero_divisor_error : error {
    UniPoly witness;
    UniPoly modulus;
    zero_divisor_error(UniPoly w, UniPoly m)
        : error("zero divisor in quotient ring"), witness(std::move(w)), modulus(std::move(m)) {}
};

/// Element of K = Q[t]/(m(t)) with m monic and squarefree, so K is a
/// product of fields.  Elements sharing a ring share the modulus pointer.
class QuotElem {
public:
    QuotElem() = default;
    QuotElem(std::shared_ptr<const UniPoly> mod, UniPoly rep)
        : mod_(std::move(mod)), rep_(std::move(rep)) {
        reduce();
    }

    static std::shared_ptr<const UniPoly> make_modulus(const UniPoly& m) {
        if (m.is_zero() || m.degree() < 1)
            throw error("quotient modulus must have positive degree");
        UniPoly mm = m.monic();
        if (poly_gcd(mm, mm.derivative()).degree() != 0)
            throw error("quotient modulus must be squarefree");
        return std::make_shared<const UniPoly>(std::move(mm));
    }

    /// The generator t of the quotient ring.
    static QuotElem generator(std::shared_ptr<const UniPoly> mod) {
        return QuotElem(std::move(mod), UniPoly::x());
    }
    static QuotElem from_rational(std::shared_ptr<const UniPoly> mod, const Rational& q) {
        return QuotElem(std::move(mod), UniPoly::constant(q));
    }

    const UniPoly& rep() const { return rep_; }
    const UniPoly& modulus() const {
        if (!mod_) throw internal_error("quotient element without modulus");
        return *mod_;
    }
    const std::shared_ptr<const UniPoly>& modulus_ptr() const { return mod_; }

    bool is_zero() const { return rep_.is_zero(); }

    friend QuotElem operator+(const QuotElem& a, const QuotElem& b) {
        return QuotElem(a.shared_mod(b), a.rep_ + b.rep_);
    }
    friend QuotElem operator-(const QuotElem& a, const QuotElem& b) {
        return QuotElem(a.shared_mod(b), a.rep_ - b.rep_);
    }
    friend QuotElem operator*(const QuotElem& a, const QuotElem& b) {
        return QuotElem(a.shared_mod(b), a.rep_ * b.rep_);
    }
    QuotElem operator-() const { return QuotElem(mod_, -rep_); }

    friend bool operator==(const QuotElem& a, const QuotElem& b) { return a.rep_ == b.rep_; }
    friend bool operator!=(const QuotElem& a, const QuotElem& b) { return !(a == b); }

    /// Maps this element into the factor ring Q[t]/(factor of the modulus).
    QuotElem in_factor_ring(const std::shared_ptr<const UniPoly>& factor_mod) const {
        return QuotElem(factor_mod, rep_.divmod(*factor_mod).second);
    }

private:
    std::shared_ptr<const UniPoly> shared_mod(const QuotElem& other) const {
        if (mod_ && other.mod_ && mod_ != other.mod_ && *mod_ != *other.mod_)
            throw error("quotient ring mismatch");
        return mod_ ? mod_ : other.mod_;
    }
    void reduce() {
        if (mod_ && rep_.degree() >= mod_->degree()) rep_ = rep_.divmod(*mod_).second;
    }
    std::shared_ptr<const UniPoly> mod_;
    UniPoly rep_;
};

inline QuotElem ring_zero(const QuotElem& like) {
    return QuotElem(like.modulus_ptr(), UniPoly());
}
inline QuotElem ring_from_rational(const QuotElem& like, const Rational& q) {
    return QuotElem(like.modulus_ptr(), UniPoly::constant(q));
}

/// Inverse in Q[t]/(m) if gcd(rep, m) = 1; otherwise the nontrivial gcd is
/// returned as a witness so the caller can split the modulus.
inline std::variant<QuotElem, UniPoly> quot_inverse(const QuotElem& e) {
    const UniPoly& m = e.modulus();
    if (e.is_zero()) return m; // the whole modulus witnesses "zero everywhere"
    auto [g, s] = poly_half_xgcd(e.rep(), m);
    if (g.degree() == 0) return QuotElem(e.modulus_ptr(), s);
    return g;
}

/// Inverse that converts a witness into an exception.
inline QuotElem ring_inverse(const QuotElem& e) {
    auto r = quot_inverse(e);
    if (auto* inv = std::get_if<QuotElem>(&r)) return *inv;
    throw zero_divisor_error(std::get<UniPoly>(r), e.modulus());
}
inline Rational ring_inverse(const Rational& r) { return r.inverse(); }

/// Trichotomy used by valuation and Newton polygon code: an element of a
/// product of fields is zero, invertible, or a proper zero divisor.
enum class elem_kind { zero, unit, zero_divisor };

inline elem_kind classify(const QuotElem& e, UniPoly* witness = nullptr) {
    if (e.is_zero()) return elem_kind::zero;
    UniPoly g = poly_gcd(e.rep(), e.modulus());
    if (g.degree() == 0) return elem_kind::unit;
    if (witness) *witness = g;
    return elem_kind::zero_divisor;
}
inline elem_kind classify(const Rational& r, UniPoly* = nullptr) {
    return r.is_zero() ? elem_kind::zero : elem_kind::unit;
}

[[noreturn]] inline void throw_zero_divisor(const QuotElem& e) {
    UniPoly w;
    classify(e, &w);
    throw zero_divisor_error(w, e.modulus());
}
[[noreturn]] inline void throw_zero_divisor(const Rational&) {
    throw internal_error("zero divisor reported for a rational");
}

} // namespace dfc
