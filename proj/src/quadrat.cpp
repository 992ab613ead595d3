#include "dimforge/quadrat.hpp"

#include <cctype>
#include <sstream>
#include <utility>

namespace dimforge {

namespace {

bool is_perfect_square(std::int64_t n) {
    if (n < 0) return false;
    mpz_class z(static_cast<long>(n));
    return mpz_perfect_square_p(z.get_mpz_t()) != 0;
}

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    mpz_class z(static_cast<long>(n));
    return mpz_probab_prime_p(z.get_mpz_t(), 40) != 0;
}

}  // namespace

RingParams RingParams::make(std::int64_t d, std::int64_t p) {
    if (d < 2) throw Error("ring: d must be >= 2, got " + std::to_string(d));
    if (is_perfect_square(d))
        throw PerfectSquareError("ring: d = " + std::to_string(d) + " is a perfect square");
    if (!is_prime(p)) throw Error("ring: p = " + std::to_string(p) + " is not prime");
    if (d % p == 0)
        throw Error("ring: p = " + std::to_string(p) + " divides d = " + std::to_string(d));
    return RingParams{d, p};
}

mpz_class pow_p(std::int64_t p, unsigned long t) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), t);
    return r;
}

std::int64_t mod_reduce(const mpz_class& v, std::int64_t m) {
    mpz_class r;
    mpz_class mm(static_cast<long>(m));
    mpz_mod(r.get_mpz_t(), v.get_mpz_t(), mm.get_mpz_t());  // result in [0, m)
    return r.get_si();
}

QuadRat::QuadRat(RingParams ring, mpz_class j, mpz_class k, long e)
    : ring_(ring), j_(std::move(j)), k_(std::move(k)) {
    if (e < 0) {
        mpz_class f = pow_p(ring_.p, static_cast<unsigned long>(-e));
        j_ *= f;
        k_ *= f;
        e = 0;
    }
    unsigned long ee = static_cast<unsigned long>(e);
    mpz_class p(static_cast<long>(ring_.p));
    while (ee > 0 && mpz_divisible_p(j_.get_mpz_t(), p.get_mpz_t()) &&
           mpz_divisible_p(k_.get_mpz_t(), p.get_mpz_t())) {
        j_ /= p;
        k_ /= p;
        --ee;
    }
    e_ = ee;
}

QuadRat QuadRat::conjugate() const { return {ring_, j_, -k_, static_cast<long>(e_)}; }

mpz_class QuadRat::norm_numerator() const { return j_ * j_ - ring_.d * k_ * k_; }

QuadRat QuadRat::norm() const { return {ring_, norm_numerator(), 0, static_cast<long>(2 * e_)}; }

bool QuadRat::is_unit() const {
    mpz_class n = norm_numerator();
    if (n == 0) return false;
    mpz_class a = abs(n);
    mpz_class p(static_cast<long>(ring_.p));
    while (mpz_divisible_p(a.get_mpz_t(), p.get_mpz_t())) a /= p;
    return a == 1;
}

QuadRat QuadRat::inverse() const {
    mpz_class n = norm_numerator();
    if (n == 0) throw NotAUnitError("invert: zero has no inverse");
    int s = sgn(n);
    mpz_class a = abs(n);
    mpz_class p(static_cast<long>(ring_.p));
    long t = 0;
    while (mpz_divisible_p(a.get_mpz_t(), p.get_mpz_t())) {
        a /= p;
        ++t;
    }
    if (a != 1)
        throw NotAUnitError("invert: norm " + n.get_str() + " is not +-" +
                            std::to_string(ring_.p) + "^m");
    // x^{-1} = s * (j - k*sqrt(d)) * p^{e-t}
    return {ring_, s * j_, -s * k_, t - static_cast<long>(e_)};
}

Sign QuadRat::sign() const {
    int sj = sgn(j_);
    int sk = sgn(k_);
    if (sk == 0) return static_cast<Sign>(sj);
    if (sj == 0) return static_cast<Sign>(sk);
    if (sj > 0 && sk > 0) return Sign::Positive;
    if (sj < 0 && sk < 0) return Sign::Negative;
    // Mixed signs: compare j^2 with d*k^2. Equality cannot happen for
    // nonsquare d with k != 0.
    mpz_class lhs = j_ * j_;
    mpz_class rhs = ring_.d * k_ * k_;
    int c = cmp(lhs, rhs);
    if (c == 0) return Sign::Zero;
    // |j| term dominates iff j^2 > d k^2.
    return (c > 0) ? static_cast<Sign>(sj) : static_cast<Sign>(sk);
}

QuadRat operator+(const QuadRat& a, const QuadRat& b) {
    unsigned long e = std::max(a.e_, b.e_);
    mpz_class fa = pow_p(a.ring_.p, e - a.e_);
    mpz_class fb = pow_p(b.ring_.p, e - b.e_);
    return {a.ring_, a.j_ * fa + b.j_ * fb, a.k_ * fa + b.k_ * fb, static_cast<long>(e)};
}

QuadRat operator-(const QuadRat& a, const QuadRat& b) { return a + (-b); }

QuadRat operator*(const QuadRat& a, const QuadRat& b) {
    mpz_class j = a.j_ * b.j_ + a.ring_.d * a.k_ * b.k_;
    mpz_class k = a.j_ * b.k_ + a.k_ * b.j_;
    return {a.ring_, std::move(j), std::move(k), static_cast<long>(a.e_ + b.e_)};
}

QuadRat QuadRat::operator-() const { return {ring_, -j_, -k_, static_cast<long>(e_)}; }

QuadRat QuadRat::pow(long n) const {
    QuadRat base = n < 0 ? inverse() : *this;
    unsigned long m = static_cast<unsigned long>(n < 0 ? -n : n);
    QuadRat acc = QuadRat::one(ring_);
    while (m > 0) {
        if (m & 1) acc = acc * base;
        base = base * base;
        m >>= 1;
    }
    return acc;
}

mpz_class QuadRat::height() const { return abs(j_) + abs(k_); }

std::string QuadRat::str() const {
    std::ostringstream os;
    os << "(" << j_;
    os << (sgn(k_) < 0 ? "-" : "+") << abs(k_) << "*sqrt(" << ring_.d << "))/" << ring_.p << "^"
       << e_;
    return os.str();
}

std::string QuadRat::pretty() const {
    std::ostringstream num;
    bool has_j = (j_ != 0);
    bool has_k = (k_ != 0);
    if (!has_j && !has_k) {
        num << "0";
    } else {
        if (has_j) num << j_;
        if (has_k) {
            mpz_class ak = abs(k_);
            if (has_j)
                num << (sgn(k_) < 0 ? "-" : "+");
            else if (sgn(k_) < 0)
                num << "-";
            if (ak != 1) num << ak << "*";
            num << "sqrt(" << ring_.d << ")";
        }
    }
    std::string n = num.str();
    if (e_ == 0) return n;
    std::ostringstream os;
    bool wrap = has_j && has_k;
    os << (wrap ? "(" : "") << n << (wrap ? ")" : "") << "/" << ring_.p;
    if (e_ > 1) os << "^" << e_;
    return os.str();
}

namespace {

struct Cursor {
    std::string_view s;
    size_t i = 0;
    bool eat(char c) {
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    bool eat(std::string_view w) {
        if (s.substr(i, w.size()) == w) {
            i += w.size();
            return true;
        }
        return false;
    }
    bool done() const { return i >= s.size(); }
    char peek() const { return i < s.size() ? s[i] : '\0'; }
};

mpz_class parse_int(Cursor& c) {
    size_t start = c.i;
    if (c.peek() == '+' || c.peek() == '-') ++c.i;
    size_t digits = 0;
    while (!c.done() && std::isdigit(static_cast<unsigned char>(c.peek()))) {
        ++c.i;
        ++digits;
    }
    if (digits == 0) throw ParseError("expected integer at offset " + std::to_string(start));
    return mpz_class(std::string(c.s.substr(start, c.i - start)), 10);
}

}  // namespace

QuadRat QuadRat::parse(RingParams ring, std::string_view text) {
    Cursor c{text};
    if (!c.eat('(')) throw ParseError("expected '(' in " + std::string(text));
    mpz_class j = parse_int(c);
    if (c.peek() != '+' && c.peek() != '-')
        throw ParseError("expected sign before sqrt term in " + std::string(text));
    int ks = c.eat('+') ? 1 : (c.eat('-'), -1);
    mpz_class k = parse_int(c);
    if (!c.eat("*sqrt(")) throw ParseError("expected '*sqrt(' in " + std::string(text));
    mpz_class d = parse_int(c);
    if (d != ring.d)
        throw ParseError("radicand " + d.get_str() + " does not match ring d=" +
                         std::to_string(ring.d));
    if (!c.eat("))/")) throw ParseError("expected '))/' in " + std::string(text));
    mpz_class p = parse_int(c);
    if (p != ring.p)
        throw ParseError("denominator base " + p.get_str() + " does not match ring p=" +
                         std::to_string(ring.p));
    if (!c.eat('^')) throw ParseError("expected '^' in " + std::string(text));
    mpz_class e = parse_int(c);
    if (!c.done()) throw ParseError("trailing characters in " + std::string(text));
    if (e < 0 || !e.fits_slong_p()) throw ParseError("exponent out of range in " + std::string(text));
    return {ring, std::move(j), ks * k, e.get_si()};
}

QuadRat QuadRat::parse_human(RingParams ring, std::string_view raw) {
    std::string buf;
    for (char ch : raw)
        if (!std::isspace(static_cast<unsigned char>(ch))) buf.push_back(ch);
    std::string_view text(buf);
    if (!text.empty() && text.front() == '(' && text.find("*sqrt(") != std::string_view::npos &&
        text.find("))/") != std::string_view::npos) {
        return parse(ring, text);
    }

    // Grammar: [int] [(+|-) [int *] sqrt[(]d[)]] [/ p [^ e]]
    Cursor c{text};
    mpz_class j = 0, k = 0;
    bool saw_term = false;

    auto parse_sqrt_tail = [&](Cursor& cur) -> mpz_class {
        if (!cur.eat("sqrt")) throw ParseError("expected sqrt in " + std::string(text));
        bool paren = cur.eat('(');
        mpz_class d = parse_int(cur);
        if (paren && !cur.eat(')')) throw ParseError("missing ')' in " + std::string(text));
        return d;
    };

    auto read_term = [&](int sign_hint) {
        // term := [+|-] sqrt-term | int [* sqrt-term]
        if ((c.peek() == '+' || c.peek() == '-') && c.s.substr(c.i + 1, 4) == "sqrt") {
            if (c.peek() == '-') sign_hint = -sign_hint;
            ++c.i;
        }
        if (c.s.substr(c.i, 4) == "sqrt") {
            mpz_class d = parse_sqrt_tail(c);
            if (d != ring.d)
                throw ParseError("radicand " + d.get_str() + " does not match ring d=" +
                                 std::to_string(ring.d));
            k += sign_hint;
            return;
        }
        mpz_class v = parse_int(c);
        if (c.eat('*') || c.s.substr(c.i, 4) == "sqrt") {
            mpz_class d = parse_sqrt_tail(c);
            if (d != ring.d)
                throw ParseError("radicand " + d.get_str() + " does not match ring d=" +
                                 std::to_string(ring.d));
            k += sign_hint * v;
        } else {
            j += sign_hint * v;
        }
    };

    if (c.done()) throw ParseError("empty element");
    read_term(1);
    saw_term = true;
    while (!c.done() && (c.peek() == '+' || c.peek() == '-')) {
        int s = c.eat('+') ? 1 : (c.eat('-'), -1);
        read_term(s);
    }
    long e = 0;
    if (c.eat('/')) {
        mpz_class p = parse_int(c);
        if (p != ring.p)
            throw ParseError("denominator base " + p.get_str() + " does not match ring p=" +
                             std::to_string(ring.p));
        if (c.eat('^')) {
            mpz_class ee = parse_int(c);
            if (ee < 0 || !ee.fits_slong_p()) throw ParseError("bad exponent");
            e = ee.get_si();
        } else {
            e = 1;
        }
    }
    if (!c.done() || !saw_term) throw ParseError("trailing characters in " + std::string(text));
    return {ring, std::move(j), std::move(k), e};
}

}  // namespace dimforge
