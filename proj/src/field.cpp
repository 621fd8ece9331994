#include "bnec/field.hpp"

namespace bnec {

bool Field::is_prime(unsigned n) {
    if (n < 2) return false;
    for (unsigned d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::uint32_t Field::polymod_mul(std::uint32_t a, std::uint32_t b, std::uint32_t poly, unsigned m) {
    std::uint64_t acc = 0;
    std::uint64_t aa = a;
    while (b) {
        if (b & 1) acc ^= aa;
        aa <<= 1;
        b >>= 1;
    }
    // reduce modulo poly (degree m)
    for (int bit = 2 * int(m) - 2; bit >= int(m); --bit)
        if (acc >> bit & 1) acc ^= std::uint64_t(poly) << (bit - int(m));
    return std::uint32_t(acc);
}

bool Field::poly_irreducible(std::uint32_t poly, unsigned m) {
    if (m == 0 || (poly >> m) != 1 || (poly & 1) == 0) return false;
    // trial division by every polynomial of degree 1..m/2
    for (unsigned d = 1; 2 * d <= m; ++d) {
        for (std::uint32_t div = (1u << d); div < (2u << d); ++div) {
            // long division of poly by div
            std::uint32_t rem = poly;
            for (int bit = int(m); bit >= int(d); --bit)
                if (rem >> bit & 1) rem ^= div << (bit - int(d));
            if (rem == 0) return false;
        }
    }
    return true;
}

std::uint32_t Field::default_poly(unsigned m) {
    for (std::uint32_t cand = (1u << m) + 1; cand < (2u << m); cand += 2)
        if (poly_irreducible(cand, m)) return cand;
    throw Error("no irreducible polynomial of degree " + std::to_string(m));  // unreachable for m <= 16
}

Field::Field(unsigned q, unsigned p, unsigned m, std::uint32_t poly) : q_(q), p_(p), m_(m), poly_(poly) {
    if (p_ == 2 && m_ > 1)
        build_ext_tables();
    else
        build_prime_tables();
}

void Field::build_prime_tables() {
    inv_.assign(q_, 0);
    if (q_ > 2) {
        inv_[1] = 1;
        // inv[i] = -(q/i) * inv[q mod i] mod q
        for (unsigned i = 2; i < q_; ++i)
            inv_[i] = Symbol((std::uint64_t(q_ - q_ / i) * inv_[q_ % i]) % q_);
    } else if (q_ == 2) {
        inv_[1] = 1;
    }
}

void Field::build_ext_tables() {
    exp_.assign(q_ - 1, 0);
    log_.assign(q_, 0);
    // find a primitive element: smallest g whose powers enumerate all q-1 nonzero codes
    for (std::uint32_t g = 2; g < q_; ++g) {
        std::uint32_t x = 1;
        unsigned n = 0;
        bool primitive = true;
        do {
            exp_[n++] = Symbol(x);
            x = polymod_mul(x, g, poly_, m_);
            if (x == 1 && n < q_ - 1) { primitive = false; break; }
        } while (n < q_ - 1);
        if (primitive && x == 1) {
            for (unsigned i = 0; i < q_ - 1; ++i) log_[exp_[i]] = Symbol(i);
            return;
        }
    }
    throw Error("no primitive element found for GF(2^" + std::to_string(m_) + ")");  // unreachable
}

FieldPtr Field::make(unsigned q) {
    if (q < 2) throw NotPrimePower("field size must be at least 2, got " + std::to_string(q));
    if (q > kMaxSize) throw TooLarge("field size " + std::to_string(q) + " exceeds table limit " + std::to_string(kMaxSize));
    if (is_prime(q)) return FieldPtr(new Field(q, q, 1, 0));
    if ((q & (q - 1)) == 0) {
        unsigned m = 0;
        for (unsigned x = q; x > 1; x >>= 1) ++m;
        return FieldPtr(new Field(q, 2, m, default_poly(m)));
    }
    throw NotPrimePower(std::to_string(q) + " is not a prime or a power of two");
}

FieldPtr Field::make_ext(unsigned m, std::uint32_t generator_poly) {
    if (m < 1 || m > 16) throw TooLarge("extension degree " + std::to_string(m) + " unsupported");
    if (!poly_irreducible(generator_poly, m))
        throw NotPrimePower("generator polynomial is not irreducible of degree " + std::to_string(m));
    if (m == 1) return FieldPtr(new Field(2, 2, 1, 0));
    return FieldPtr(new Field(1u << m, 2, m, generator_poly));
}

Symbol Field::pow(Symbol a, unsigned long long e) const {
    Symbol r = 1;
    Symbol base = a;
    while (e) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

unsigned Field::next_supported_size(unsigned long long n) {
    if (n <= 2) return 2;
    if (n > kMaxSize) throw TooLarge("no supported field size >= " + std::to_string(n));
    for (unsigned q = unsigned(n);; ++q) {
        if (is_prime(q) || (q & (q - 1)) == 0) return q;
    }
}

}  // namespace bnec
