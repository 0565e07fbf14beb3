#include "bsym/parse.hpp"

#include <cctype>
#include <numeric>

#include "bsym/errors.hpp"

namespace bsym {

namespace {

const char* kPermittedSymbols =
    "x, t, u, u_[xt]+, g, g', g'', nu, p, b, eps, a<digits>, "
    "xi[_[xt]+], phi['...], alpha[_[xt]+], beta[_[xt]+], log(u), exp(c*u)";

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Expr run() {
        Expr e = parse_sum();
        skip_ws();
        if (pos_ != text_.size())
            throw ParseError("unexpected trailing input", pos_);
        if (saw_root_) e = impose_root_relation(e);
        return e;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    bool saw_root_ = false;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool peek_is(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    bool accept(char c) {
        if (!peek_is(c)) return false;
        ++pos_;
        return true;
    }

    void expect(char c) {
        if (!accept(c))
            throw ParseError(std::string("expected '") + c + "'", pos_);
    }

    Expr parse_sum() {
        skip_ws();
        bool negate = false;
        if (accept('-')) negate = true;
        else accept('+');
        Expr acc = parse_term();
        if (negate) acc = -acc;
        for (;;) {
            if (accept('+')) acc = acc + parse_term();
            else if (accept('-')) acc = acc - parse_term();
            else break;
        }
        return acc;
    }

    Expr parse_term() {
        Expr acc = parse_factor();
        for (;;) {
            if (accept('*')) {
                acc = acc * parse_factor();
            } else if (accept('/')) {
                std::size_t at = pos_;
                Expr d = parse_factor();
                if (d.is_zero()) throw ParseError("division by zero", at);
                acc = acc / d;
            } else {
                break;
            }
        }
        return acc;
    }

    Expr parse_factor() {
        skip_ws();
        std::size_t base_at = pos_;
        bool base_is_u = false;
        Expr base = parse_base(base_is_u);
        if (!accept('^')) return base;
        skip_ws();
        if (pos_ < text_.size() &&
            (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '-')) {
            return checked_pow(base, parse_int(), base_at);
        }
        if (accept('(')) {
            long m = parse_int();
            long d = 1;
            if (accept('/')) d = parse_int();
            expect(')');
            if (d == 0) throw ParseError("zero exponent denominator", pos_);
            if (d < 0) { d = -d; m = -m; }
            long g = std::gcd(m < 0 ? -m : m, d);
            if (g > 1) { m /= g; d /= g; }
            if (d == 1) return checked_pow(base, m, base_at);
            if (!base_is_u)
                throw ParseError("fractional exponents are only supported on u", base_at);
            if (d > 8) throw ParseError("root order too large", base_at);
            saw_root_ = true;
            return Expr(Atom::make_root_u(static_cast<int>(d))).pow(static_cast<int>(m));
        }
        // parameter exponent: u^p
        std::size_t at = pos_;
        std::string id = scan_ident();
        if (id.empty()) throw ParseError("expected exponent", pos_);
        if (!base_is_u)
            throw ParseError("symbolic exponents are only supported on u", base_at);
        if (!(id == "p" || id == "b" || id == "eps" || is_ansatz_name(id)))
            throw ParseError("exponent must be an integer or a parameter", at);
        return Expr(Atom::make_pow_u(id));
    }

    Expr checked_pow(const Expr& base, long e, std::size_t at) {
        if (e < 0 && base.is_zero()) throw ParseError("zero to a negative power", at);
        if (e < -64 || e > 64) throw ParseError("exponent out of range", at);
        return base.pow(static_cast<int>(e));
    }

    long parse_int() {
        skip_ws();
        std::size_t start = pos_;
        bool neg = false;
        if (accept('-')) neg = true;
        skip_ws();
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            throw ParseError("expected integer", pos_);
        long v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            v = v * 10 + (text_[pos_] - '0');
            if (v > 1000000000L) throw ParseError("integer literal too large", start);
            ++pos_;
        }
        return neg ? -v : v;
    }

    std::string scan_ident() {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ >= text_.size() || !std::isalpha(static_cast<unsigned char>(text_[pos_])))
            return {};
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'')
                ++pos_;
            else
                break;
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    static bool is_ansatz_name(const std::string& s) {
        if (s.size() < 2 || s[0] != 'a') return false;
        for (std::size_t i = 1; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        return true;
    }

    Expr parse_base(bool& is_plain_u) {
        skip_ws();
        is_plain_u = false;
        if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
        char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            if (text_.find('.', pos_) == pos_ + count_digits())
                throw ParseError("decimal literals are not part of the grammar; use fractions", pos_);
            return Expr(Rational(parse_int()));
        }
        if (accept('(')) {
            Expr inner = parse_sum();
            expect(')');
            return inner;
        }
        std::size_t at = pos_;
        std::string id = scan_ident();
        if (id.empty()) throw ParseError("unexpected character", pos_);
        return resolve_ident(id, at, is_plain_u);
    }

    std::size_t count_digits() {
        std::size_t n = 0;
        while (pos_ + n < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + n]))) ++n;
        return n;
    }

    Expr resolve_ident(const std::string& id, std::size_t at, bool& is_plain_u) {
        if (id == "x") return Expr(atoms::x());
        if (id == "t") return Expr(atoms::t());
        if (id == "u") {
            is_plain_u = true;
            return Expr(atoms::u());
        }
        if (id.rfind("u_", 0) == 0) {
            int jx = 0, jt = 0;
            for (std::size_t i = 2; i < id.size(); ++i) {
                if (id[i] == 'x') ++jx;
                else if (id[i] == 't') ++jt;
                else throw ParseError("bad jet index '" + id + "'", at);
            }
            if (jx + jt == 0) throw ParseError("bad jet index '" + id + "'", at);
            return Expr(Atom::make_jet(jx, jt));
        }
        if (id == "nu" || id == "p" || id == "b" || id == "eps" || is_ansatz_name(id))
            return Expr(Atom::make_param(id));
        if (id == "log") return parse_log_call(at);
        if (id == "exp") return parse_exp_call(at);
        // g-family with primes, optionally applied
        if (id[0] == 'g') {
            std::size_t primes = id.find_first_not_of('\'', 1);
            std::size_t n_primes = (primes == std::string::npos ? id.size() : primes) - 1;
            if (id.size() == 1 + n_primes) {
                if (n_primes > 4) throw ParseError("derivative order of g too large", at);
                return parse_g_application(static_cast<int>(n_primes));
            }
        }
        if (id.rfind("phi", 0) == 0) {
            std::size_t n = 3;
            int dt = 0;
            if (n < id.size() && id[n] == '_') {
                for (std::size_t i = n + 1; i < id.size(); ++i) {
                    if (id[i] != 't') throw ParseError("phi depends on t only", at);
                    ++dt;
                }
                return Expr(atoms::phi(dt));
            }
            while (n < id.size() && id[n] == '\'') { ++dt; ++n; }
            if (n == id.size()) return Expr(atoms::phi(dt));
        }
        for (const char* name : {"xi", "alpha", "beta"}) {
            std::string base(name);
            if (id == base) return Expr(make_xt_fn(base, 0, 0));
            if (id.rfind(base + "_", 0) == 0) {
                int dx = 0, dt = 0;
                for (std::size_t i = base.size() + 1; i < id.size(); ++i) {
                    if (id[i] == 'x') ++dx;
                    else if (id[i] == 't') ++dt;
                    else throw ParseError("bad partial suffix in '" + id + "'", at);
                }
                return Expr(make_xt_fn(base, dx, dt));
            }
        }
        throw ParseError("unknown identifier '" + id + "'; permitted symbols: " + kPermittedSymbols, at);
    }

    static Atom make_xt_fn(const std::string& name, int dx, int dt) {
        return Atom::make_fn(name, {FnArg::of(Coordinate::X), FnArg::of(Coordinate::T)}, {dx, dt});
    }

    Expr parse_g_application(int order) {
        if (!peek_is('(')) return Expr(atoms::g(order));  // bare g means g(u)
        expect('(');
        Expr arg = parse_sum();
        expect(')');
        Atom a = atoms::g(order);
        if (arg == Expr(atoms::u())) return Expr(a);
        if (arg.is_constant())
            a.args[0] = FnArg::of(arg.rational_value());
        else
            a.args[0] = FnArg::of_opaque(arg.str());
        return Expr(a);
    }

    Expr parse_log_call(std::size_t at) {
        expect('(');
        Expr arg = parse_sum();
        expect(')');
        if (!(arg == Expr(atoms::u())))
            throw ParseError("only log(u) is supported", at);
        return Expr(Atom::make_log_u());
    }

    Expr parse_exp_call(std::size_t at) {
        expect('(');
        Expr arg = parse_sum();
        expect(')');
        // argument must be (rational) * u or (rational) * parameter * u
        Expr ratio = arg / Expr(atoms::u());
        if (ratio.is_constant()) {
            Rational q = ratio.rational_value();
            if (sgn(q) == 0) throw ParseError("exp argument must be nonzero", at);
            return Expr(Atom::make_exp_u(q));
        }
        if (ratio.den().is_constant() && ratio.num().term_count() == 1) {
            const auto& [m, c] = ratio.num().leading();
            if (m.factors.size() == 1 && m.factors[0].second == 1 &&
                m.factors[0].first.kind == Atom::Kind::Param)
                return Expr(Atom::make_exp_u(c, m.factors[0].first.name));
        }
        throw ParseError("exp argument must be a constant or parameter multiple of u", at);
    }

};

}  // namespace

Expr parse_expr(std::string_view text) { return Parser(text).run(); }

}  // namespace bsym
