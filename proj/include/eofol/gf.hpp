#pragma once

// Exact arithmetic in F_p and F_{p^2} = F_p[t]/(t^2 - c), the square-zero
// deformation ring R = k + (linear part), and bivariate polynomials over F_p
// used to check p-th powers of derivations.

#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace eofol {

/// Raised when an internal consistency check fails (two independent routes
/// disagree, or a closed form does not match a computation).
class assertion_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

bool is_prime(std::uint64_t n);

/// Element a + b*t of F_{p^2}.
struct FqElt {
    std::uint32_t a = 0;
    std::uint32_t b = 0;

    constexpr auto operator<=>(const FqElt&) const = default;
    constexpr bool is_zero() const { return a == 0 && b == 0; }
    constexpr bool in_prime_field() const { return b == 0; }
};

/// F_{p^2} for an odd prime p, presented with the smallest non-residue c in
/// [2, p-1]. Elements are plain values; all arithmetic goes through the
/// context.
class FieldContext {
public:
    explicit FieldContext(std::uint32_t p);

    std::uint32_t p() const { return p_; }
    std::uint32_t c() const { return c_; }
    std::uint32_t order() const { return p_ * p_; }

    FqElt zero() const { return {0, 0}; }
    FqElt one() const { return {1, 0}; }
    FqElt t() const { return {0, 1}; }
    FqElt from_int(std::int64_t v) const;

    FqElt add(FqElt x, FqElt y) const;
    FqElt sub(FqElt x, FqElt y) const;
    FqElt neg(FqElt x) const;
    FqElt mul(FqElt x, FqElt y) const;
    FqElt inv(FqElt x) const;
    FqElt pow(FqElt x, std::uint64_t e) const;

    /// x -> x^p; on this presentation a + b t -> a - b t.
    FqElt frob(FqElt x) const;
    /// x + x^p, lands in F_p.
    FqElt trace(FqElt x) const;
    /// x * x^p, lands in F_p.
    FqElt norm(FqElt x) const;

    /// Dense index a + b*p in [0, p^2).
    std::uint32_t index(FqElt x) const { return x.a + x.b * p_; }
    FqElt element(std::uint32_t index) const { return {index % p_, index / p_}; }
    std::vector<FqElt> elements() const;

    bool operator==(const FieldContext& o) const { return p_ == o.p_ && c_ == o.c_; }

private:
    std::uint32_t p_;
    std::uint32_t c_;
};

/// "a+b*t" with a, b in [0, p).
std::string format_fq(FqElt x);
FqElt parse_fq(const FieldContext& ctx, std::string_view text);

// ---------------------------------------------------------------------------
// Deformation ring R = k[gens]/(gens)^2.

struct DefRingElt {
    FqElt constant;
    /// Generator name -> coefficient; zero coefficients are never stored.
    std::map<std::string, FqElt> linear;

    bool operator==(const DefRingElt&) const = default;
    bool is_zero() const { return constant.is_zero() && linear.empty(); }
    bool is_unit() const { return !constant.is_zero(); }
};

class DefRing {
public:
    DefRing(FieldContext ctx, std::vector<std::string> generators);

    const FieldContext& field() const { return ctx_; }
    const std::vector<std::string>& generators() const { return generators_; }
    bool has_generator(const std::string& name) const;

    DefRingElt zero() const { return {}; }
    DefRingElt one() const { return constant(ctx_.one()); }
    DefRingElt constant(FqElt c) const { return {c, {}}; }
    /// The nilpotent generator named `name`.
    DefRingElt gen(const std::string& name) const;
    DefRingElt term(FqElt coeff, const std::string& name) const;

    DefRingElt add(const DefRingElt& x, const DefRingElt& y) const;
    DefRingElt sub(const DefRingElt& x, const DefRingElt& y) const;
    DefRingElt neg(const DefRingElt& x) const;
    DefRingElt mul(const DefRingElt& x, const DefRingElt& y) const;
    DefRingElt scale(FqElt s, const DefRingElt& x) const;
    DefRingElt inv(const DefRingElt& x) const;
    /// Absolute Frobenius. It factors through the residue field, so the
    /// nilpotent part dies.
    DefRingElt frob(const DefRingElt& x) const;

    /// "const + coeff*gen + ..." in generator order.
    std::string format(const DefRingElt& x) const;
    DefRingElt parse(std::string_view text) const;

private:
    FieldContext ctx_;
    std::vector<std::string> generators_;
};

// ---------------------------------------------------------------------------
// Polynomials in x, y over F_p, truncated at a total-degree bound.

class Poly2V {
public:
    Poly2V(std::uint32_t p, unsigned degree_bound);

    static Poly2V monomial(std::uint32_t p, unsigned degree_bound, unsigned dx, unsigned dy);

    std::uint32_t p() const { return p_; }
    unsigned degree_bound() const { return bound_; }
    std::uint32_t coeff(unsigned dx, unsigned dy) const;
    void set_coeff(unsigned dx, unsigned dy, std::uint64_t value);
    bool is_zero() const { return terms_.empty(); }

    Poly2V operator+(const Poly2V& o) const;
    bool operator==(const Poly2V& o) const = default;

    /// x d/dx
    Poly2V euler_x() const;
    /// d/dy
    Poly2V partial_y() const;

    std::string to_string() const;

private:
    std::uint32_t p_;
    unsigned bound_;
    std::map<std::pair<unsigned, unsigned>, std::uint32_t> terms_;
};

struct MonomialCheck {
    unsigned dx = 0;
    unsigned dy = 0;
    std::string p_power_image;  // xi^p applied to x^dx y^dy
    std::string expected;       // (x d/dx) applied once
    bool pass = false;
};

struct DerivationReport {
    std::uint32_t p = 0;
    unsigned degree_bound = 0;
    std::vector<MonomialCheck> monomials;
    bool all_pass = false;
};

/// Applies xi = x d/dx + d/dy p times to every monomial of total degree at most
/// `degree_bound` and compares with x d/dx applied once.
DerivationReport p_power_of_derivation(std::uint32_t p, unsigned degree_bound);

}  // namespace eofol
