#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "eofol/counting.hpp"
#include "eofol/deformation.hpp"

using namespace eofol;

namespace {

BigInt ipow(unsigned p, int e) {
    BigInt r = 1;
    for (int i = 0; i < e; ++i) r *= p;
    return r;
}

// Entry-by-entry count with field operations only, no lookup tables.
std::uint64_t naive_gamma_count(const FieldContext& k, int n, int m) {
    const int cells = n * m;  // m*m entries of G1 followed by (n-m)*m of G2
    const auto el = k.elements();
    std::vector<std::size_t> d(static_cast<std::size_t>(cells), 0);
    std::uint64_t count = 0;
    auto G1 = [&](int i, int j) { return el[d[static_cast<std::size_t>(i * m + j)]]; };
    auto G2 = [&](int i, int j) { return el[d[static_cast<std::size_t>(m * m + i * m + j)]]; };
    while (true) {
        bool ok = true;
        for (int i = 0; i < m && ok; ++i) {
            for (int j = 0; j < m && ok; ++j) {
                FqElt s = k.add(G1(i, j), k.frob(G1(j, i)));
                for (int l = 0; l < n - m; ++l) s = k.add(s, k.mul(k.frob(G2(l, i)), G2(l, j)));
                ok = s.is_zero();
            }
        }
        count += ok;
        std::size_t pos = 0;
        while (pos < d.size() && ++d[pos] == el.size()) d[pos++] = 0;
        if (pos == d.size()) break;
    }
    return count;
}

// Lines of F_{q}^3 for (n,m) = (2,1), as normalized representatives.
std::uint64_t line_count(const FieldContext& k, bool filter) {
    const auto el = k.elements();
    std::set<std::vector<FqElt>> lines;
    for (auto a : el) {
        for (auto b : el) {
            for (auto c : el) {
                std::vector<FqElt> v{a, b, c};
                if (a.is_zero() && b.is_zero() && c.is_zero()) continue;
                FqElt lead = !a.is_zero() ? a : !b.is_zero() ? b : c;
                FqElt s = k.inv(lead);
                for (auto& x : v) x = k.mul(s, x);
                lines.insert(v);
            }
        }
    }
    CHECK(lines.size() == k.order() * k.order() + k.order() + 1);
    std::uint64_t count = 0;
    for (const auto& v : lines) {
        if (v[2].is_zero()) continue;  // must project onto the last coordinate
        // (v, v) = v1^p v3 + v2^p v2 + v3^p v1
        FqElt h = k.add(k.add(k.mul(k.frob(v[0]), v[2]), k.mul(k.frob(v[1]), v[1])), k.mul(k.frob(v[2]), v[0]));
        if (!filter || h.is_zero()) ++count;
    }
    return count;
}

}  // namespace

TEST_CASE("brute force counts") {
    const FieldContext k3(3), k5(5);
    CHECK(gamma_count_bruteforce(GammaInstance(k3, 2, 1)) == 27);
    CHECK(gamma_count_bruteforce(GammaInstance(k3, 3, 1)) == 243);
    CHECK(gamma_count_bruteforce(GammaInstance(k3, 3, 2)) == 6561);
    CHECK(gamma_count_bruteforce(GammaInstance(k5, 2, 1)) == 125);
    CHECK(gamma_count_bruteforce(GammaInstance(k5, 3, 1)) == ipow(5, 5));
    CHECK(gamma_count_bruteforce(GammaInstance(FieldContext(7), 2, 1)) == 343);
}

TEST_CASE("(3,4,2) brute force, within the default guard") {
    const GammaInstance inst(FieldContext(3), 4, 2);
    CHECK(gamma_enumeration_size(inst) == ipow(3, 16));
    CHECK(gamma_count_bruteforce(inst) == ipow(3, 12));
}

TEST_CASE("brute force agrees with a naive field-arithmetic count") {
    CHECK(naive_gamma_count(FieldContext(3), 2, 1) == 27);
    CHECK(naive_gamma_count(FieldContext(3), 3, 1) == 243);
    CHECK(naive_gamma_count(FieldContext(5), 2, 1) == 125);
    CHECK(naive_gamma_count(FieldContext(3), 3, 2) == 6561);
}

TEST_CASE("partitioned summation is independent of the worker count") {
    const GammaInstance inst(FieldContext(3), 3, 2);
    const BigInt one = gamma_count_bruteforce(inst, 1);
    for (unsigned w : {2u, 3u, 7u, 81u, 500u}) CHECK(gamma_count_bruteforce(inst, w) == one);
}

TEST_CASE("fast path agrees with brute force and closed form") {
    for (std::uint32_t p : {3u, 5u, 7u}) {
        const FieldContext k(p);
        for (int n = 2; n <= 6; ++n) {
            for (int m = 1; m < n; ++m) {
                const GammaInstance inst(k, n, m);
                BigInt fast;
                try {
                    fast = gamma_count_fast(inst);
                } catch (const guard_exceeded&) {
                    continue;
                }
                CHECK(fast == gamma_count_closed(p, n, m).value);
                if (gamma_enumeration_size(inst) <= 2'000'000) CHECK(gamma_count_bruteforce(inst) == fast);
            }
        }
    }
}

TEST_CASE("guards") {
    const GammaInstance big(FieldContext(3), 5, 2);
    CHECK_THROWS_AS(gamma_count_bruteforce(big), guard_exceeded);
    try {
        gamma_count_bruteforce(big);
    } catch (const guard_exceeded& e) {
        CHECK(e.required() == ipow(3, 20));
        CHECK(e.guard() == default_guard);
    }
    CHECK_THROWS_AS(isotropic_subspace_oracle(GammaInstance(FieldContext(3), 2, 1, 90)), guard_exceeded);
    CHECK_NOTHROW(isotropic_subspace_oracle(GammaInstance(FieldContext(3), 2, 1, 91)));
    CHECK_THROWS(GammaInstance(FieldContext(3), 2, 2));
}

TEST_CASE("closed form and its factorization") {
    const auto c = gamma_count_closed(3, 2, 1);
    CHECK(c.value == 27);
    CHECK(gamma_count_closed(5, 2, 1).value == 125);
    for (int n = 2; n <= 20; ++n) {
        for (int m = 1; m < n; ++m) {
            const auto cc = gamma_count_closed(3, n, m);
            CHECK(cc.gamma2_exponent == 2 * (n - m) * m);
            CHECK(cc.offdiagonal_exponent == m * (m - 1));
            CHECK(cc.diagonal_exponent == m);
            CHECK(cc.gamma2_exponent + cc.offdiagonal_exponent + cc.diagonal_exponent == 2 * n * m - m * m);
            CHECK(cc.value == ipow(3, 2 * n * m - m * m));
        }
    }
}

TEST_CASE("gaussian binomials") {
    CHECK(gaussian_binomial(9, 3, 1) == 91);
    CHECK(gaussian_binomial(25, 3, 1) == 651);
    CHECK(gaussian_binomial(2, 4, 2) == 35);
    CHECK(gaussian_binomial(9, 4, 0) == 1);
    CHECK(gaussian_binomial(9, 4, 4) == 1);
}

TEST_CASE("isotropic subspace oracle") {
    CHECK(isotropic_subspace_oracle(GammaInstance(FieldContext(3), 2, 1)) == 27);
    CHECK(isotropic_subspace_oracle(GammaInstance(FieldContext(5), 2, 1)) == 125);
    CHECK(line_count(FieldContext(3), true) == 27);
    CHECK(line_count(FieldContext(5), true) == 125);
    CHECK(line_count(FieldContext(3), false) == 81);
    CHECK(isotropic_subspace_oracle(GammaInstance(FieldContext(3), 2, 1), false) == 81);
    CHECK(isotropic_subspace_oracle(GammaInstance(FieldContext(5), 2, 1), false) == ipow(5, 4));
    CHECK(isotropic_subspace_oracle(GammaInstance(FieldContext(3), 3, 1)) == 243);
    CHECK(isotropic_subspace_oracle(GammaInstance(FieldContext(3), 3, 1), false) == ipow(3, 6));
    CHECK(isotropic_subspace_oracle(GammaInstance(FieldContext(3), 3, 2)) == 6561);
    CHECK(isotropic_subspace_oracle(GammaInstance(FieldContext(3), 3, 2), false) == ipow(3, 12));
}

TEST_CASE("degree table") {
    const auto t = degree_table(3, 2, 1);
    CHECK(t.deg_rho == 3);
    CHECK(t.deg_rho_prime == 3);
    CHECK(t.deg_rho * t.deg_rho_prime == 9);  // p^{nm}, not 27
    CHECK(t.deg_rho * t.deg_rho_prime != 27);
    CHECK(t.deg_pi_et == 27);
    CHECK(degree_table(3, 4, 2).deg_pi_et == ipow(3, 12));
    for (std::uint32_t p : {3u, 5u, 7u}) {
        for (int n = 2; n <= 20; ++n) {
            for (int m = 1; m < n; ++m) {
                const auto d = degree_table(p, n, m, false);
                CHECK(d.deg_rho * d.deg_rho_prime == ipow(p, n * m));
                CHECK(d.deg_pi_et == d.deg_theta_prime);
                CHECK(d.deg_theta == d.deg_rho);
                CHECK(d.deg_rho == ipow(p, m * m));
                CHECK(d.deg_rho_prime * ipow(p, n * m) == d.deg_pi_et);
                CHECK(m * m + (n - m) * m == n * m);
                CHECK((n - m) * m + n * m == (2 * n - m) * m);
            }
        }
    }
    for (int n = 2; n <= 6; ++n) {
        for (int m = 1; m < n; ++m) {
            const auto d = degree_table(3, n, m, true);
            CHECK(d.deg_rho == ipow(3, static_cast<int>(tangent_system(n, m, FieldContext(3)).foliation)));
        }
    }
}

TEST_CASE("counting report") {
    const auto j = counting_report(GammaInstance(FieldContext(3), 2, 1));
    CHECK(j["closed_form"]["value"] == "27");
    CHECK(j["brute_force"] == "27");
    CHECK(j["oracle"] == "27");
    CHECK(j["fast"] == "27");
    CHECK(j["degrees"]["deg_rho"] == "3");
    CHECK(j.contains("elapsed"));
    CHECK(nlohmann::json::parse(j.dump()) == j);

    const auto s = counting_report(GammaInstance(FieldContext(3), 5, 2, 1000));
    CHECK(s["brute_force"].contains("skipped"));
    CHECK(s["brute_force"]["required"] == ipow(3, 20).str());
    CHECK(s["closed_form"]["value"] == ipow(3, 16).str());
}
