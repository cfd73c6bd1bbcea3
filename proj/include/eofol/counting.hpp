#pragma once

// Counting solutions of G1 + tG1^(p) + tG2^(p) G2 = 0 over F_{p^2}, where G1 is
// m x m and G2 is (n-m) x m, together with an independent count of isotropic
// graph subspaces and the table of covering degrees.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>

#include "eofol/gf.hpp"
#include "json.hpp"

namespace eofol {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr std::uint64_t default_guard = 100'000'000;

/// Raised when an enumeration would exceed its guard; carries the size needed.
class guard_exceeded : public std::runtime_error {
public:
    guard_exceeded(const std::string& what, BigInt required, std::uint64_t guard)
        : std::runtime_error(what), required_(std::move(required)), guard_(guard) {}
    const BigInt& required() const { return required_; }
    std::uint64_t guard() const { return guard_; }

private:
    BigInt required_;
    std::uint64_t guard_;
};

struct GammaInstance {
    FieldContext ctx;
    int n = 0;
    int m = 0;
    std::uint64_t guard = default_guard;

    GammaInstance(FieldContext c, int n_, int m_, std::uint64_t g = default_guard);
};

/// Number of (G1, G2) pairs enumerated by the brute force: p^{2nm}.
BigInt gamma_enumeration_size(const GammaInstance& inst);

/// Exhaustive count. The G2 range is split into `workers` contiguous blocks;
/// workers == 0 picks the hardware concurrency.
BigInt gamma_count_bruteforce(const GammaInstance& inst, unsigned workers = 0);

/// Same count, enumerating G2 only: diagonal entries of G1 are counted by
/// trace fibres and each off-diagonal pair by a precomputed table.
BigInt gamma_count_fast(const GammaInstance& inst);

struct ClosedCount {
    BigInt value;                     // p^{2nm - m^2}
    int exponent = 0;                 // 2nm - m^2
    int gamma2_exponent = 0;          // 2(n-m)m
    int offdiagonal_exponent = 0;     // m(m-1)
    int diagonal_exponent = 0;        // m
};

ClosedCount gamma_count_closed(std::uint32_t p, int n, int m);

/// m-dimensional subspaces of F_{p^2}^{n+m} that project isomorphically onto
/// the last m coordinates and, if `isotropy_filter`, are isotropic for
/// (u, v) = tu^(p) J v with J = antidiag-block(1_m, 1_{n-m}, 1_m).
/// The guard bounds the total number of m-dimensional subspaces.
BigInt isotropic_subspace_oracle(const GammaInstance& inst, bool isotropy_filter = true);

/// Number of m-dimensional subspaces of F_q^N.
BigInt gaussian_binomial(std::uint64_t q, int N, int m);

struct DegreeTable {
    BigInt deg_rho;
    BigInt deg_rho_prime;
    BigInt deg_pi_et;
    BigInt deg_theta;
    BigInt deg_theta_prime;
    bool operator==(const DegreeTable&) const = default;
};

/// Fills the five degrees and asserts their identities. With
/// `cross_check_tangent`, also requires deg_rho = p^{foliation rank} where the
/// rank comes from the deformation tangent system.
DegreeTable degree_table(std::uint32_t p, int n, int m, bool cross_check_tangent = true);

nlohmann::json degree_table_to_json(const DegreeTable& t);

struct CountOptions {
    bool brute_force = true;
    bool oracle = true;
    unsigned workers = 0;
};

/// {p, n, m, closed_form, brute_force, fast, oracle, degrees, elapsed}
/// (elapsed in seconds). Parts
/// whose guard is exceeded are reported as {"skipped": ..., "required": ...}.
nlohmann::json counting_report(const GammaInstance& inst, const CountOptions& opts = {});

}  // namespace eofol
