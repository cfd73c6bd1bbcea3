#include "eofol/gf.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace eofol {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

namespace {

std::uint64_t powmod(std::uint64_t base, std::uint64_t e, std::uint64_t mod) {
    std::uint64_t r = 1 % mod;
    base %= mod;
    while (e) {
        if (e & 1) r = r * base % mod;
        base = base * base % mod;
        e >>= 1;
    }
    return r;
}

}  // namespace

FieldContext::FieldContext(std::uint32_t p) : p_(p), c_(0) {
    // p^2 must stay well inside 32 bits for the dense index.
    if (p < 3 || p > 46337 || !is_prime(p)) {
        throw std::invalid_argument("FieldContext: p must be an odd prime below 46337, got " +
                                    std::to_string(p));
    }
    for (std::uint32_t c = 2; c < p; ++c) {
        if (powmod(c, (p - 1) / 2, p) == p - 1) {
            c_ = c;
            break;
        }
    }
}

FqElt FieldContext::from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return {static_cast<std::uint32_t>(r), 0};
}

FqElt FieldContext::add(FqElt x, FqElt y) const {
    return {(x.a + y.a) % p_, (x.b + y.b) % p_};
}

FqElt FieldContext::sub(FqElt x, FqElt y) const {
    return {(x.a + p_ - y.a) % p_, (x.b + p_ - y.b) % p_};
}

FqElt FieldContext::neg(FqElt x) const {
    return {(p_ - x.a) % p_, (p_ - x.b) % p_};
}

FqElt FieldContext::mul(FqElt x, FqElt y) const {
    const std::uint64_t p = p_;
    // (a + b t)(a' + b' t) = aa' + c bb' + (ab' + ba') t
    std::uint64_t re = (std::uint64_t{x.a} * y.a + std::uint64_t{c_} * (std::uint64_t{x.b} * y.b % p)) % p;
    std::uint64_t im = (std::uint64_t{x.a} * y.b + std::uint64_t{x.b} * y.a) % p;
    return {static_cast<std::uint32_t>(re), static_cast<std::uint32_t>(im)};
}

FqElt FieldContext::pow(FqElt x, std::uint64_t e) const {
    FqElt r = one();
    while (e) {
        if (e & 1) r = mul(r, x);
        x = mul(x, x);
        e >>= 1;
    }
    return r;
}

FqElt FieldContext::frob(FqElt x) const { return {x.a, (p_ - x.b) % p_}; }

FqElt FieldContext::trace(FqElt x) const { return add(x, frob(x)); }

FqElt FieldContext::norm(FqElt x) const { return mul(x, frob(x)); }

FqElt FieldContext::inv(FqElt x) const {
    if (x.is_zero()) throw std::domain_error("FieldContext::inv: zero has no inverse");
    // x^{-1} = x^p / N(x), N(x) in F_p^*
    FqElt n = norm(x);
    auto n_inv = static_cast<std::uint32_t>(powmod(n.a, p_ - 2, p_));
    return mul(frob(x), {n_inv, 0});
}

std::vector<FqElt> FieldContext::elements() const {
    std::vector<FqElt> out;
    out.reserve(order());
    for (std::uint32_t i = 0; i < order(); ++i) out.push_back(element(i));
    return out;
}

std::string format_fq(FqElt x) {
    return std::to_string(x.a) + "+" + std::to_string(x.b) + "*t";
}

namespace {

std::uint32_t parse_uint(std::string_view s, std::string_view whole) {
    std::uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
        throw std::invalid_argument("parse_fq: malformed element '" + std::string(whole) + "'");
    }
    return v;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    return s;
}

}  // namespace

FqElt parse_fq(const FieldContext& ctx, std::string_view text) {
    text = trim(text);
    auto plus = text.find('+');
    if (plus == std::string_view::npos || text.size() < plus + 3 ||
        text.substr(text.size() - 2) != "*t") {
        throw std::invalid_argument("parse_fq: malformed element '" + std::string(text) + "'");
    }
    std::uint32_t a = parse_uint(text.substr(0, plus), text);
    std::uint32_t b = parse_uint(text.substr(plus + 1, text.size() - plus - 3), text);
    if (a >= ctx.p() || b >= ctx.p()) {
        throw std::invalid_argument("parse_fq: coefficient out of range in '" + std::string(text) + "'");
    }
    return {a, b};
}

// ---------------------------------------------------------------------------

DefRing::DefRing(FieldContext ctx, std::vector<std::string> generators)
    : ctx_(ctx), generators_(std::move(generators)) {
    auto sorted = generators_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::invalid_argument("DefRing: duplicate generator name");
    }
}

bool DefRing::has_generator(const std::string& name) const {
    return std::find(generators_.begin(), generators_.end(), name) != generators_.end();
}

DefRingElt DefRing::gen(const std::string& name) const { return term(ctx_.one(), name); }

DefRingElt DefRing::term(FqElt coeff, const std::string& name) const {
    if (!has_generator(name)) throw std::invalid_argument("DefRing: unknown generator " + name);
    DefRingElt r;
    if (!coeff.is_zero()) r.linear.emplace(name, coeff);
    return r;
}

DefRingElt DefRing::add(const DefRingElt& x, const DefRingElt& y) const {
    DefRingElt r{ctx_.add(x.constant, y.constant), x.linear};
    for (const auto& [g, c] : y.linear) {
        auto it = r.linear.find(g);
        if (it == r.linear.end()) {
            r.linear.emplace(g, c);
        } else {
            it->second = ctx_.add(it->second, c);
            if (it->second.is_zero()) r.linear.erase(it);
        }
    }
    return r;
}

DefRingElt DefRing::neg(const DefRingElt& x) const {
    DefRingElt r{ctx_.neg(x.constant), {}};
    for (const auto& [g, c] : x.linear) r.linear.emplace(g, ctx_.neg(c));
    return r;
}

DefRingElt DefRing::sub(const DefRingElt& x, const DefRingElt& y) const { return add(x, neg(y)); }

DefRingElt DefRing::scale(FqElt s, const DefRingElt& x) const {
    DefRingElt r{ctx_.mul(s, x.constant), {}};
    if (s.is_zero()) return r;
    for (const auto& [g, c] : x.linear) r.linear.emplace(g, ctx_.mul(s, c));
    return r;
}

DefRingElt DefRing::mul(const DefRingElt& x, const DefRingElt& y) const {
    // (a + l)(a' + l') = aa' + a l' + a' l, since l l' = 0.
    DefRingElt r = add(scale(x.constant, {ctx_.zero(), y.linear}), scale(y.constant, {ctx_.zero(), x.linear}));
    r.constant = ctx_.mul(x.constant, y.constant);
    return r;
}

DefRingElt DefRing::inv(const DefRingElt& x) const {
    if (!x.is_unit()) throw std::domain_error("DefRing::inv: element is not a unit");
    FqElt a_inv = ctx_.inv(x.constant);
    // (a + l)^{-1} = a^{-1} - a^{-2} l
    DefRingElt r = scale(ctx_.neg(ctx_.mul(a_inv, a_inv)), {ctx_.zero(), x.linear});
    r.constant = a_inv;
    return r;
}

DefRingElt DefRing::frob(const DefRingElt& x) const { return constant(ctx_.frob(x.constant)); }

std::string DefRing::format(const DefRingElt& x) const {
    std::string out = format_fq(x.constant);
    for (const auto& g : generators_) {
        auto it = x.linear.find(g);
        if (it == x.linear.end()) continue;
        out += " + (" + format_fq(it->second) + ")*" + g;
    }
    return out;
}

DefRingElt DefRing::parse(std::string_view text) const {
    std::vector<std::string_view> pieces;
    std::size_t start = 0;
    while (true) {
        auto pos = text.find(" + ", start);
        pieces.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 3;
    }
    DefRingElt r{parse_fq(ctx_, pieces.front()), {}};
    for (std::size_t i = 1; i < pieces.size(); ++i) {
        std::string_view piece = trim(pieces[i]);
        auto close = piece.find(")*");
        if (piece.empty() || piece.front() != '(' || close == std::string_view::npos) {
            throw std::invalid_argument("DefRing::parse: malformed term '" + std::string(piece) + "'");
        }
        FqElt coeff = parse_fq(ctx_, piece.substr(1, close - 1));
        r = add(r, term(coeff, std::string(piece.substr(close + 2))));
    }
    return r;
}

// ---------------------------------------------------------------------------

Poly2V::Poly2V(std::uint32_t p, unsigned degree_bound) : p_(p), bound_(degree_bound) {
    if (!is_prime(p)) throw std::invalid_argument("Poly2V: p must be prime");
}

Poly2V Poly2V::monomial(std::uint32_t p, unsigned degree_bound, unsigned dx, unsigned dy) {
    Poly2V r(p, degree_bound);
    r.set_coeff(dx, dy, 1);
    return r;
}

std::uint32_t Poly2V::coeff(unsigned dx, unsigned dy) const {
    auto it = terms_.find({dx, dy});
    return it == terms_.end() ? 0 : it->second;
}

void Poly2V::set_coeff(unsigned dx, unsigned dy, std::uint64_t value) {
    if (dx + dy > bound_) throw std::out_of_range("Poly2V: monomial exceeds degree bound");
    auto v = static_cast<std::uint32_t>(value % p_);
    if (v == 0) {
        terms_.erase({dx, dy});
    } else {
        terms_[{dx, dy}] = v;
    }
}

Poly2V Poly2V::operator+(const Poly2V& o) const {
    if (o.p_ != p_ || o.bound_ != bound_) throw std::invalid_argument("Poly2V: mismatched rings");
    Poly2V r = *this;
    for (const auto& [k, c] : o.terms_) r.set_coeff(k.first, k.second, std::uint64_t{r.coeff(k.first, k.second)} + c);
    return r;
}

Poly2V Poly2V::euler_x() const {
    Poly2V r(p_, bound_);
    for (const auto& [k, c] : terms_) r.set_coeff(k.first, k.second, std::uint64_t{c} * k.first);
    return r;
}

Poly2V Poly2V::partial_y() const {
    Poly2V r(p_, bound_);
    for (const auto& [k, c] : terms_) {
        if (k.second > 0) r.set_coeff(k.first, k.second - 1, std::uint64_t{c} * k.second);
    }
    return r;
}

std::string Poly2V::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c;
        if (k.first) os << "*x^" << k.first;
        if (k.second) os << "*y^" << k.second;
    }
    return os.str();
}

DerivationReport p_power_of_derivation(std::uint32_t p, unsigned degree_bound) {
    if (p < 3 || !is_prime(p)) throw std::invalid_argument("p_power_of_derivation: p must be an odd prime");
    if (degree_bound < p) throw std::invalid_argument("p_power_of_derivation: degree bound must be at least p");
    DerivationReport report{p, degree_bound, {}, true};
    for (unsigned total = 0; total <= degree_bound; ++total) {
        for (unsigned dx = 0; dx <= total; ++dx) {
            unsigned dy = total - dx;
            Poly2V f = Poly2V::monomial(p, degree_bound, dx, dy);
            Poly2V g = f;
            for (std::uint32_t k = 0; k < p; ++k) g = g.euler_x() + g.partial_y();
            Poly2V expected = f.euler_x();
            MonomialCheck check{dx, dy, g.to_string(), expected.to_string(), g == expected};
            report.all_pass = report.all_pass && check.pass;
            report.monomials.push_back(std::move(check));
        }
    }
    return report;
}

}  // namespace eofol
