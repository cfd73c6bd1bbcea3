#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include "eofol/gf.hpp"

using namespace eofol;

TEST_CASE("field context") {
    CHECK_THROWS(FieldContext(2));
    CHECK_THROWS(FieldContext(9));
    CHECK_THROWS(FieldContext(1));
    CHECK(FieldContext(3).c() == 2);
    CHECK(FieldContext(5).c() == 2);
    CHECK(FieldContext(7).c() == 3);
    for (std::uint32_t p : {3u, 5u, 7u, 11u, 13u, 101u}) {
        const FieldContext k(p);
        // c^((p-1)/2) = -1: c is a non-residue
        std::uint64_t acc = 1;
        for (std::uint32_t i = 0; i < (p - 1) / 2; ++i) acc = acc * k.c() % p;
        CHECK(acc == p - 1);
        CHECK(k.elements().size() == p * p);
    }
}

TEST_CASE("frobenius examples, p = 3") {
    const FieldContext k(3);
    CHECK(k.frob(k.t()) == k.neg(k.t()));
    CHECK(k.pow(k.t(), 3) == k.neg(k.t()));
    std::map<std::uint32_t, int> fibres;
    for (auto x : k.elements()) {
        CHECK(k.frob(k.frob(x)) == x);
        ++fibres[k.trace(x).a];
        CHECK(k.trace(x).in_prime_field());
    }
    CHECK(fibres == std::map<std::uint32_t, int>{{0, 3}, {1, 3}, {2, 3}});
}

TEST_CASE("exhaustive field axioms, p in {3,5}") {
    for (std::uint32_t p : {3u, 5u}) {
        const FieldContext k(p);
        const auto el = k.elements();
        for (auto x : el) {
            CHECK(k.frob(x) == k.pow(x, p));
            CHECK(k.trace(x) == k.add(x, k.frob(x)));
            CHECK(k.norm(x) == k.mul(x, k.frob(x)));
            CHECK(k.norm(x).in_prime_field());
            CHECK(k.add(x, k.neg(x)) == k.zero());
            CHECK(k.mul(x, k.one()) == x);
            if (x.in_prime_field()) CHECK(k.frob(x) == x);
            if (!x.is_zero()) {
                CHECK(k.mul(x, k.inv(x)) == k.one());
            }
            for (auto y : el) {
                CHECK(k.frob(k.add(x, y)) == k.add(k.frob(x), k.frob(y)));
                CHECK(k.frob(k.mul(x, y)) == k.mul(k.frob(x), k.frob(y)));
                CHECK(k.mul(x, y) == k.mul(y, x));
                if (!x.is_zero() && !y.is_zero()) CHECK_FALSE(k.mul(x, y).is_zero());
                for (auto z : el) {
                    if (k.mul(x, k.mul(y, z)) != k.mul(k.mul(x, y), z)) FAIL_CHECK("mul not associative");
                    if (k.add(x, k.add(y, z)) != k.add(k.add(x, y), z)) FAIL_CHECK("add not associative");
                    if (k.mul(x, k.add(y, z)) != k.add(k.mul(x, y), k.mul(x, z))) FAIL_CHECK("not distributive");
                }
            }
            // sigma is F_p-linear
            for (std::uint32_t s = 0; s < p; ++s) CHECK(k.frob(k.mul(k.from_int(s), x)) == k.mul(k.from_int(s), k.frob(x)));
        }
        CHECK_THROWS(k.inv(k.zero()));
    }
}

TEST_CASE("FqElt serialization") {
    const FieldContext k(7);
    for (auto x : k.elements()) CHECK(parse_fq(k, format_fq(x)) == x);
    CHECK(format_fq({3, 4}) == "3+4*t");
    CHECK(k.from_int(-1) == FqElt{6, 0});
    CHECK_THROWS(parse_fq(k, "9+0*t"));
    CHECK_THROWS(parse_fq(k, "garbage"));
}

TEST_CASE("deformation ring examples") {
    const FieldContext k(3);
    const DefRing R(k, {"u", "v"});
    const auto one = R.one();
    CHECK(R.mul(R.add(one, R.gen("u")), R.add(one, R.gen("v"))) == R.add(R.add(one, R.gen("u")), R.gen("v")));
    CHECK(R.mul(R.gen("u"), R.gen("u")).is_zero());
    const auto e = R.add(R.constant(k.t()), R.term(k.from_int(2), "u"));
    CHECK(R.frob(e) == R.constant(k.frob(k.t())));
    CHECK(R.frob(e).linear.empty());
    CHECK_THROWS(R.gen("w"));
    CHECK_THROWS(R.inv(R.gen("u")));
    CHECK(R.mul(e, R.inv(e)) == one);
}

TEST_CASE("deformation ring properties on random elements") {
    const FieldContext k(5);
    const DefRing R(k, {"u_1_1", "u_1_2", "v_1_1"});
    std::mt19937 rng(12345);
    auto rand_elt = [&] {
        auto r = [&] { return k.element(static_cast<std::uint32_t>(rng() % k.order())); };
        DefRingElt x = R.constant(r());
        for (const auto& g : R.generators()) x = R.add(x, R.term(r(), g));
        return x;
    };
    for (int i = 0; i < 300; ++i) {
        const auto a = rand_elt(), b = rand_elt(), c = rand_elt();
        CHECK(R.mul(a, b) == R.mul(b, a));
        CHECK(R.mul(a, R.mul(b, c)) == R.mul(R.mul(a, b), c));
        CHECK(R.mul(a, R.add(b, c)) == R.add(R.mul(a, b), R.mul(a, c)));
        CHECK(R.add(a, R.neg(a)).is_zero());
        CHECK(R.parse(R.format(a)) == a);
        CHECK(R.frob(R.mul(a, b)) == R.mul(R.frob(a), R.frob(b)));
        // nilpotent parts square to zero
        DefRingElt nil = a;
        nil.constant = k.zero();
        CHECK(R.mul(nil, nil).is_zero());
        if (a.is_unit()) CHECK(R.mul(a, R.inv(a)) == R.one());
        // product: constants multiply, linear parts cross-scale
        const auto ab = R.mul(a, b);
        CHECK(ab.constant == k.mul(a.constant, b.constant));
        for (const auto& g : R.generators()) {
            auto get = [&](const DefRingElt& x) { auto it = x.linear.find(g); return it == x.linear.end() ? k.zero() : it->second; };
            CHECK(get(ab) == k.add(k.mul(a.constant, get(b)), k.mul(b.constant, get(a))));
        }
    }
    CHECK(R.format(R.add(R.one(), R.term(k.from_int(2), "u_1_2"))) == "1+0*t + (2+0*t)*u_1_2");
}

namespace {

// xi = D1 + D2 with D1 = x d/dx, D2 = d/dy commuting, so
// xi^p (x^a y^b) = sum_k C(p,k) a^k (b)_(p-k) x^a y^(b-p+k) mod p.
Poly2V binomial_oracle(std::uint32_t p, unsigned bound, unsigned a, unsigned b) {
    Poly2V out(p, bound);
    std::vector<std::uint64_t> binom(p + 1, 1);
    for (std::uint32_t k = 1; k <= p; ++k) binom[k] = binom[k - 1] * (p - k + 1) / k;
    for (std::uint32_t k = 0; k <= p; ++k) {
        const unsigned d2 = p - k;
        if (d2 > b) continue;
        std::uint64_t c = binom[k] % p;
        for (std::uint32_t i = 0; i < k; ++i) c = c * a % p;
        for (unsigned i = 0; i < d2; ++i) c = c * ((b - i) % p) % p;
        if (c == 0) continue;
        out = out + [&] {
            Poly2V t(p, bound);
            t.set_coeff(a, b - d2, c);
            return t;
        }();
    }
    return out;
}

}  // namespace

TEST_CASE("p-th power of the derivation") {
    for (std::uint32_t p : {3u, 5u, 7u}) {
        const auto r = p_power_of_derivation(p, 2 * p);
        CHECK(r.all_pass);
        CHECK(r.monomials.size() == (2 * p + 1) * (2 * p + 2) / 2);
        for (const auto& mc : r.monomials) {
            CHECK(mc.pass);
            CHECK(mc.p_power_image == binomial_oracle(p, 2 * p, mc.dx, mc.dy).to_string());
            if (mc.dx == 1 && mc.dy == 0) CHECK(mc.p_power_image == Poly2V::monomial(p, 2 * p, 1, 0).to_string());
            if (mc.dx == 0) CHECK(mc.p_power_image == Poly2V(p, 2 * p).to_string());
        }
    }
    CHECK_THROWS(p_power_of_derivation(3, 2));
    CHECK_THROWS(p_power_of_derivation(4, 8));
}

TEST_CASE("polynomial operators") {
    const auto f = Poly2V::monomial(5, 6, 3, 2);
    CHECK(f.euler_x().coeff(3, 2) == 3);
    CHECK(f.partial_y().coeff(3, 1) == 2);
    CHECK(Poly2V::monomial(5, 6, 0, 0).partial_y().is_zero());
    CHECK(Poly2V::monomial(5, 6, 5, 0).euler_x().is_zero());
}
