#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "bnec/errors.hpp"

namespace bnec {

// Canonical element code: integer in [0, q-1]. For characteristic 2 this is
// the bit pattern of the polynomial representative.
using Symbol = std::uint16_t;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

// Arithmetic in F_q for prime q, or q = 2^m with table-backed mul/inv.
// Immutable after construction; safe for concurrent read-only use.
class Field {
public:
    static constexpr unsigned kMaxSize = 65536;

    // Builds F_q, deducing the structure from q. For q = 2^m the default
    // generator polynomial is the irreducible of degree m with the smallest
    // integer encoding (x^2+x+1, x^3+x+1, x^4+x+1, ...).
    static FieldPtr make(unsigned q);

    // Builds GF(2^m) with an explicit generator polynomial (bit i = coefficient
    // of x^i; the degree-m bit must be set).
    static FieldPtr make_ext(unsigned m, std::uint32_t generator_poly);

    unsigned q() const { return q_; }
    unsigned characteristic() const { return p_; }
    unsigned degree() const { return m_; }
    // 0 for prime fields; otherwise the generator polynomial bit pattern.
    std::uint32_t generator_poly() const { return poly_; }
    bool is_extension() const { return m_ > 1; }

    Symbol add(Symbol a, Symbol b) const {
        return p_ == 2 ? Symbol(a ^ b) : Symbol((unsigned(a) + b) % q_);
    }
    Symbol sub(Symbol a, Symbol b) const {
        return p_ == 2 ? Symbol(a ^ b) : Symbol((unsigned(a) + q_ - b) % q_);
    }
    Symbol neg(Symbol a) const { return p_ == 2 ? a : Symbol(a == 0 ? 0 : q_ - a); }

    Symbol mul(Symbol a, Symbol b) const {
        if (m_ == 1) return Symbol((std::uint32_t(a) * b) % q_);
        if (a == 0 || b == 0) return 0;
        unsigned s = log_[a] + log_[b];
        if (s >= q_ - 1) s -= q_ - 1;
        return exp_[s];
    }
    Symbol inv(Symbol a) const {
        if (a == 0) throw DivideByZero("inverse of zero in F_" + std::to_string(q_));
        if (m_ == 1) return inv_[a];
        unsigned l = log_[a];
        return exp_[l == 0 ? 0 : q_ - 1 - l];
    }
    Symbol div(Symbol a, Symbol b) const {
        if (b == 0) throw DivideByZero("division by zero in F_" + std::to_string(q_));
        return mul(a, inv(b));
    }
    Symbol pow(Symbol a, unsigned long long e) const;

    void check(Symbol a) const {
        if (a >= q_) throw Error("element code " + std::to_string(a) + " out of range for F_" + std::to_string(q_));
    }

    // Smallest supported prime power >= n (prime, or a power of two).
    static unsigned next_supported_size(unsigned long long n);

    // Carry-less polynomial product reduced modulo `poly` (degree m). Exposed
    // for table construction and oracle tests.
    static std::uint32_t polymod_mul(std::uint32_t a, std::uint32_t b, std::uint32_t poly, unsigned m);

    static bool is_prime(unsigned n);
    static bool poly_irreducible(std::uint32_t poly, unsigned m);
    static std::uint32_t default_poly(unsigned m);

private:
    Field(unsigned q, unsigned p, unsigned m, std::uint32_t poly);
    void build_prime_tables();
    void build_ext_tables();

    unsigned q_, p_, m_;
    std::uint32_t poly_;
    std::vector<Symbol> exp_, log_;  // extension fields
    std::vector<Symbol> inv_;        // prime fields
};

}  // namespace bnec
