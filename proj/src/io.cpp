#include "tsvs/io.hpp"

#include <cctype>

#include "tsvs/config.hpp"
#include <fstream>
#include <sstream>

namespace tsvs::io {

// --- printing ------------------------------------------------------------

namespace {

// One summand of a textual polynomial: sign separated out so that sums can
// be rendered with " + " / " - ".
struct TermText {
    int sign = 1;
    std::string body;
};

std::string join_terms(std::vector<TermText> terms) {
    if (terms.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i == 0) {
            if (terms[i].sign < 0) out += "-";
        } else {
            out += terms[i].sign < 0 ? " - " : " + ";
        }
        out += terms[i].body;
    }
    return out;
}

std::string var_power(const std::string& var, int exp) {
    if (exp == 0) return "";
    if (exp == 1) return var;
    return var + "^" + std::to_string(exp);
}

TermText rational_term(const Rational& c, const std::string& var, int exp) {
    TermText t;
    t.sign = c.sign();
    Rational a = c.abs();
    std::string vp = var_power(var, exp);
    if (vp.empty()) {
        t.body = a.str();
    } else if (a.is_one()) {
        t.body = vp;
    } else {
        t.body = a.str() + "*" + vp;
    }
    return t;
}

// Number field elements may be composite; composite coefficients are wrapped
// in parentheses when multiplied by a variable power.
TermText nf_term(const NFElement& c, const std::string& var, int exp) {
    int nonzero = 0;
    int mono_deg = 0;
    for (int i = 0; i <= c.coords().degree(); ++i)
        if (!c.coords().coeff_or(i, Rational(0)).is_zero()) {
            ++nonzero;
            mono_deg = i;
        }
    std::string vp = var_power(var, exp);
    if (nonzero <= 1) {
        // single monomial a*g^k: fold the sign out, chain the powers
        Rational a = nonzero == 0 ? Rational(0) : c.coords()[mono_deg];
        TermText t;
        t.sign = a.sign() < 0 ? -1 : 1;
        std::string gp = var_power(c.field().gen_name(), nonzero == 0 ? 0 : mono_deg);
        std::string head;
        Rational abs_a = a.abs();
        if (!abs_a.is_one() || gp.empty()) head = abs_a.str();
        if (!gp.empty()) head += (head.empty() ? "" : "*") + gp;
        if (vp.empty())
            t.body = head;
        else
            t.body = head == "1" || head.empty() ? vp : head + "*" + vp;
        return t;
    }
    TermText t;
    t.sign = 1;
    std::string inner = nf_str(c);
    t.body = vp.empty() ? "(" + inner + ")" : "(" + inner + ")*" + vp;
    return t;
}

}  // namespace

std::string poly_str(const RatPoly& p, const std::string& var) {
    std::vector<TermText> terms;
    for (int i = p.degree(); i >= 0; --i) {
        if (p[i].is_zero()) continue;
        terms.push_back(rational_term(p[i], var, i));
    }
    return join_terms(std::move(terms));
}

std::string nf_str(const NFElement& x) {
    return poly_str(x.coords(), x.field().gen_name());
}

std::string kpoly_str(const KPoly& p, const std::string& var) {
    std::vector<TermText> terms;
    for (int i = p.degree(); i >= 0; --i) {
        const NFElement& c = p[i];
        if (c.is_zero()) continue;
        terms.push_back(nf_term(c, var, i));
    }
    return join_terms(std::move(terms));
}

std::string ratfunc_str(const RatFunc& x) {
    if (x.is_polynomial()) return poly_str(x.num(), "t");
    return "(" + poly_str(x.num(), "t") + ")/(" + poly_str(x.den(), "t") + ")";
}

namespace {

bool ratfunc_is_simple(const RatFunc& c) {
    if (!c.is_polynomial()) return false;
    int nonzero = 0;
    for (int i = 0; i <= c.num().degree(); ++i)
        if (!c.num().coeff_or(i, Rational(0)).is_zero()) ++nonzero;
    return nonzero <= 1;
}

}  // namespace

std::string diffop_str(const DiffOperator& op) {
    if (op.is_zero_op()) return "0";
    std::vector<TermText> terms;
    for (const auto& [order, coeff] : op.terms()) {
        std::string d = "D" + std::to_string(order);
        TermText t;
        if (coeff.is_one()) {
            t.body = d;
        } else if (ratfunc_is_simple(coeff)) {
            int deg = coeff.num().degree();
            Rational a = coeff.num()[deg];
            t.sign = a.sign() < 0 ? -1 : 1;
            RatPoly abs_num = coeff.num().scaled(Rational(a.sign()));
            std::string cs = poly_str(abs_num, "t");
            t.body = cs == "1" ? d : cs + "*" + d;
        } else {
            t.body = "(" + ratfunc_str(coeff) + ")*" + d;
        }
        terms.push_back(std::move(t));
    }
    return join_terms(std::move(terms));
}

namespace {

template <class F>
std::string matrix_str_impl(const Matrix<F>& m, std::string (*entry)(const F&)) {
    std::string out = "[";
    for (int i = 0; i < m.rows(); ++i) {
        if (i) out += ", ";
        out += "[";
        for (int j = 0; j < m.cols(); ++j) {
            if (j) out += ", ";
            out += entry(m.at(i, j));
        }
        out += "]";
    }
    out += "]";
    return out;
}

std::string nf_entry(const NFElement& x) { return nf_str(x); }
std::string rf_entry(const RatFunc& x) { return ratfunc_str(x); }
std::string q_entry(const Rational& x) { return x.str(); }

}  // namespace

std::string matrix_str(const Matrix<NFElement>& m) { return matrix_str_impl(m, nf_entry); }
std::string matrix_str(const Matrix<RatFunc>& m) { return matrix_str_impl(m, rf_entry); }
std::string matrix_str(const Matrix<Rational>& m) { return matrix_str_impl(m, q_entry); }

std::string field_str(const NumberField& k) {
    if (k.is_rationals()) return "rationals";
    return "numberfield " + k.gen_name() + ": " + poly_str(k.defining_poly(), "x");
}

std::string funcfield_str() { return "funcfield t"; }

std::string hs_str(const HigherDerivation& d) {
    std::string out = "hs over funcfield t: [";
    if (d.identity_d0())
        out += "D0";
    else
        out += "subst(t -> " + ratfunc_str(*d.d0_subst()) + ")";
    for (const TailMap& m : d.tail()) {
        out += "; ";
        out += m.closed_form() ? diffop_str(m.op()) : "<" + m.label() + ">";
    }
    out += "]";
    return out;
}

std::string matrix_doc_str(const NumberField& k, const Matrix<NFElement>& m) {
    return field_str(k) + "\n" + matrix_str(m) + "\n";
}

std::string matrix_doc_str(const Matrix<RatFunc>& m) {
    return funcfield_str() + "\n" + matrix_str(m) + "\n";
}

// --- parsing ---------------------------------------------------------------

namespace {

struct Cursor {
    const std::string& src;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= src.size();
    }
    char peek() {
        skip_ws();
        return pos < src.size() ? src[pos] : '\0';
    }
    bool consume(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c, const std::string& what) {
        if (!consume(c)) fail("expected '" + std::string(1, c) + "' " + what);
    }
    [[noreturn]] void fail(const std::string& msg) { throw ParseError(pos, msg); }

    bool at_int() { return std::isdigit(static_cast<unsigned char>(peek())); }
    mpz_class read_int() {
        skip_ws();
        std::size_t start = pos;
        while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
        if (start == pos) fail("expected an integer");
        return mpz_class(src.substr(start, pos - start));
    }
    bool at_name() {
        char c = peek();
        return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
    }
    std::string read_name() {
        skip_ws();
        std::size_t start = pos;
        while (pos < src.size() &&
               (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
            ++pos;
        if (start == pos) fail("expected a name");
        return src.substr(start, pos - start);
    }
    int read_exponent() {
        mpz_class e = read_int();
        if (e > 512) fail("exponent too large");
        return static_cast<int>(e.get_si());
    }
};

// INT or INT/INT (the rational-literal binding).
Rational read_rational_literal(Cursor& c) {
    mpz_class num = c.read_int();
    std::size_t save = c.pos;
    c.skip_ws();
    if (c.pos < c.src.size() && c.src[c.pos] == '/') {
        std::size_t slash = c.pos;
        ++c.pos;
        c.skip_ws();
        if (c.pos < c.src.size() && std::isdigit(static_cast<unsigned char>(c.src[c.pos]))) {
            mpz_class den = c.read_int();
            if (den == 0) throw ParseError(slash, "zero denominator in rational literal");
            return Rational(num, den);
        }
    }
    c.pos = save;
    return Rational(num);
}

// Value-type hooks for the shared expression grammar.
template <class V>
struct ExprOps;

template <>
struct ExprOps<RatPoly> {
    std::string var;
    RatPoly from_rational(const Rational& r) const { return RatPoly(r); }
    RatPoly resolve(Cursor&, std::size_t at, const std::string& name) const {
        if (name == var) return RatPoly(std::vector<Rational>{Rational(0), Rational(1)});
        throw ParseError(at, "unknown name '" + name + "' (expected '" + var + "')");
    }
    RatPoly mul(const RatPoly& a, const RatPoly& b) const { return a * b; }
    RatPoly div(Cursor& c, const RatPoly& a, const RatPoly& b) const {
        if (b.degree() != 0) c.fail("division only by nonzero constants here");
        return a.scaled(b[0].inverse());
    }
    RatPoly add(const RatPoly& a, const RatPoly& b) const { return a + b; }
    RatPoly neg(const RatPoly& a) const { return -a; }
    RatPoly pow(Cursor&, const RatPoly& a, int e) const {
        if (a.is_zero_poly()) return e == 0 ? RatPoly(Rational(1)) : a;
        return poly_pow(a, e);
    }
};

template <>
struct ExprOps<NFElement> {
    NumberField field;
    NFElement from_rational(const Rational& r) const { return field.from_rational(r); }
    NFElement resolve(Cursor&, std::size_t at, const std::string& name) const {
        if (name == field.gen_name()) return field.gen();
        throw ParseError(at, "unknown name '" + name + "' (expected '" + field.gen_name() + "')");
    }
    NFElement mul(const NFElement& a, const NFElement& b) const { return a * b; }
    NFElement div(Cursor& c, const NFElement& a, const NFElement& b) const {
        if (b.is_zero()) c.fail("division by zero");
        return a / b;
    }
    NFElement add(const NFElement& a, const NFElement& b) const { return a + b; }
    NFElement neg(const NFElement& a) const { return -a; }
    NFElement pow(Cursor&, const NFElement& a, int e) const {
        NFElement acc = field.one();
        for (int i = 0; i < e; ++i) acc = acc * a;
        return acc;
    }
};

template <>
struct ExprOps<KPoly> {
    NumberField field;
    std::string var;
    KPoly from_rational(const Rational& r) const { return KPoly(field.from_rational(r)); }
    KPoly resolve(Cursor&, std::size_t at, const std::string& name) const {
        if (name == var) return KPoly::monomial(field.one(), 1);
        if (name == field.gen_name()) return KPoly(field.gen());
        throw ParseError(at, "unknown name '" + name + "'");
    }
    KPoly mul(const KPoly& a, const KPoly& b) const { return a * b; }
    KPoly div(Cursor& c, const KPoly& a, const KPoly& b) const {
        if (b.is_zero_poly() || b.degree() != 0 || b[0].is_zero())
            c.fail("division only by nonzero constants here");
        return a.scaled(b[0].inverse());
    }
    KPoly add(const KPoly& a, const KPoly& b) const { return a + b; }
    KPoly neg(const KPoly& a) const { return -a; }
    KPoly pow(Cursor&, const KPoly& a, int e) const {
        if (a.is_zero_poly()) return e == 0 ? KPoly(field.one()) : a;
        return poly_pow(a, e);
    }
};

template <>
struct ExprOps<RatFunc> {
    RatFunc from_rational(const Rational& r) const { return RatFunc(r); }
    RatFunc resolve(Cursor&, std::size_t at, const std::string& name) const {
        if (name == "t") return RatFunc::t();
        throw ParseError(at, "unknown name '" + name + "' (expected 't')");
    }
    RatFunc mul(const RatFunc& a, const RatFunc& b) const { return a * b; }
    RatFunc div(Cursor& c, const RatFunc& a, const RatFunc& b) const {
        if (b.is_zero()) c.fail("division by zero");
        return a / b;
    }
    RatFunc add(const RatFunc& a, const RatFunc& b) const { return a + b; }
    RatFunc neg(const RatFunc& a) const { return -a; }
    RatFunc pow(Cursor&, const RatFunc& a, int e) const {
        RatFunc acc(Rational(1));
        for (int i = 0; i < e; ++i) acc = acc * a;
        return acc;
    }
};

template <class V>
V parse_sum(Cursor& c, const ExprOps<V>& ops);

template <class V>
V parse_atom(Cursor& c, const ExprOps<V>& ops) {
    if (c.consume('(')) {
        V v = parse_sum(c, ops);
        c.expect(')', "to close the group");
        if (c.consume('^')) return ops.pow(c, v, c.read_exponent());
        return v;
    }
    if (c.at_int()) {
        V v = ops.from_rational(read_rational_literal(c));
        if (c.consume('^')) return ops.pow(c, v, c.read_exponent());
        return v;
    }
    if (c.at_name()) {
        std::size_t at = c.pos;
        V v = ops.resolve(c, at, c.read_name());
        if (c.consume('^')) return ops.pow(c, v, c.read_exponent());
        return v;
    }
    c.fail("expected a number, name, or '('");
}

template <class V>
V parse_product(Cursor& c, const ExprOps<V>& ops) {
    V v = parse_atom(c, ops);
    while (true) {
        if (c.consume('*')) {
            v = ops.mul(v, parse_atom(c, ops));
        } else if (c.peek() == '/') {
            ++c.pos;
            v = ops.div(c, v, parse_atom(c, ops));
        } else {
            break;
        }
    }
    return v;
}

template <class V>
V parse_sum(Cursor& c, const ExprOps<V>& ops) {
    bool neg = false;
    if (c.consume('-'))
        neg = true;
    else
        c.consume('+');
    V v = parse_product(c, ops);
    if (neg) v = ops.neg(v);
    while (true) {
        if (c.consume('+')) {
            v = ops.add(v, parse_product(c, ops));
        } else if (c.consume('-')) {
            v = ops.add(v, ops.neg(parse_product(c, ops)));
        } else {
            break;
        }
    }
    return v;
}

template <class V>
V parse_full(const std::string& text, const ExprOps<V>& ops) {
    Cursor c{text};
    V v = parse_sum(c, ops);
    if (!c.done()) c.fail("unexpected trailing input");
    return v;
}

template <class V>
Matrix<V> parse_matrix_body(Cursor& c, const ExprOps<V>& ops) {
    const std::size_t cap = static_cast<std::size_t>(global_config().max_matrix_dim);
    c.expect('[', "to open the matrix");
    std::vector<std::vector<V>> rows;
    while (true) {
        c.expect('[', "to open a row");
        std::vector<V> row;
        if (c.peek() != ']') {
            row.push_back(parse_sum(c, ops));
            while (c.consume(',')) row.push_back(parse_sum(c, ops));
        }
        c.expect(']', "to close the row");
        if (!rows.empty() && rows.back().size() != row.size()) c.fail("ragged matrix rows");
        if (row.empty()) c.fail("empty matrix row");
        if (row.size() > cap || rows.size() >= cap)
            throw Error("MatrixCapExceeded", "matrix dimension above configured cap");
        rows.push_back(std::move(row));
        if (!c.consume(',')) break;
    }
    c.expect(']', "to close the matrix");
    return Matrix<V>::from_rows(rows);
}

}  // namespace

RatPoly parse_ratpoly(const std::string& text, const std::string& var) {
    return parse_full(text, ExprOps<RatPoly>{var});
}

NFElement parse_nf_element(const std::string& text, const NumberField& k) {
    return parse_full(text, ExprOps<NFElement>{k});
}

KPoly parse_kpoly(const std::string& text, const NumberField& k, const std::string& var) {
    return parse_full(text, ExprOps<KPoly>{k, var});
}

RatFunc parse_ratfunc(const std::string& text) { return parse_full(text, ExprOps<RatFunc>{}); }

namespace {

bool is_hasse_name(const std::string& name, int* order) {
    if (name.size() < 2 || name[0] != 'D') return false;
    for (std::size_t i = 1; i < name.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(name[i]))) return false;
    *order = std::stoi(name.substr(1));
    return true;
}

// term := factors joined by '*' or '/', with exactly one D<k> among them
DiffOperator parse_diffop_term(Cursor& c) {
    ExprOps<RatFunc> ops;
    RatFunc coeff(Rational(1));
    int order = -1;
    bool first = true;
    while (true) {
        if (!first) {
            if (c.consume('*')) {
                // next factor follows
            } else if (c.peek() == '/') {
                ++c.pos;
                RatFunc d = parse_atom(c, ops);
                if (d.is_zero()) c.fail("division by zero");
                coeff = coeff / d;
                continue;
            } else {
                break;
            }
        }
        first = false;
        std::size_t save = c.pos;
        if (c.at_name()) {
            std::string name = c.read_name();
            int ord = 0;
            if (is_hasse_name(name, &ord)) {
                if (order >= 0) c.fail("more than one D factor in a term");
                order = ord;
                continue;
            }
            c.pos = save;
        }
        coeff = coeff * parse_atom(c, ops);
    }
    if (order < 0) c.fail("term without a D factor");
    return DiffOperator::term(coeff, order);
}

DiffOperator parse_diffop_body(Cursor& c) {
    DiffOperator op;
    bool neg = false;
    if (c.consume('-'))
        neg = true;
    else
        c.consume('+');
    DiffOperator t = parse_diffop_term(c);
    op = neg ? op - t : op + t;
    while (true) {
        if (c.consume('+')) {
            op = op + parse_diffop_term(c);
        } else if (c.consume('-')) {
            op = op - parse_diffop_term(c);
        } else {
            break;
        }
    }
    return op;
}

}  // namespace

DiffOperator parse_diffop(const std::string& text) {
    Cursor c{text};
    DiffOperator op = parse_diffop_body(c);
    if (!c.done()) c.fail("unexpected trailing input");
    return op;
}

FieldDescriptor parse_field_header(const std::string& text) {
    Cursor c{text};
    std::string kw = c.read_name();
    if (kw == "rationals") {
        if (!c.done()) c.fail("unexpected trailing input after 'rationals'");
        return NumberField::rationals();
    }
    if (kw == "funcfield") {
        std::string var = c.read_name();
        if (var != "t") c.fail("only the variable t is supported for funcfield");
        if (!c.done()) c.fail("unexpected trailing input after the funcfield header");
        return FuncFieldTag{};
    }
    if (kw == "numberfield") {
        std::string gen = c.read_name();
        c.expect(':', "after the generator name");
        RatPoly f = parse_sum(c, ExprOps<RatPoly>{"x"});
        if (!c.done()) c.fail("unexpected trailing input after the defining polynomial");
        return NumberField::make(f, gen);
    }
    throw ParseError(0, "expected 'numberfield', 'funcfield', or 'rationals'");
}

MatrixDoc parse_matrix_doc(const std::string& text) {
    Cursor c{text};
    if (c.peek() == '[') {
        NumberField q = NumberField::rationals();
        Matrix<NFElement> m = parse_matrix_body(c, ExprOps<NFElement>{q});
        if (!c.done()) c.fail("unexpected trailing input after the matrix");
        return NFMatrixDoc{q, std::move(m)};
    }
    std::size_t header_start = c.pos;
    std::string kw = c.read_name();
    if (kw == "funcfield") {
        std::string var = c.read_name();
        if (var != "t") c.fail("only the variable t is supported for funcfield");
        Matrix<RatFunc> m = parse_matrix_body(c, ExprOps<RatFunc>{});
        if (!c.done()) c.fail("unexpected trailing input after the matrix");
        return m;
    }
    if (kw == "rationals") {
        NumberField q = NumberField::rationals();
        Matrix<NFElement> m = parse_matrix_body(c, ExprOps<NFElement>{q});
        if (!c.done()) c.fail("unexpected trailing input after the matrix");
        return NFMatrixDoc{q, std::move(m)};
    }
    if (kw == "numberfield") {
        std::string gen = c.read_name();
        c.expect(':', "after the generator name");
        RatPoly f = parse_sum(c, ExprOps<RatPoly>{"x"});
        NumberField k = NumberField::make(f, gen);
        Matrix<NFElement> m = parse_matrix_body(c, ExprOps<NFElement>{k});
        if (!c.done()) c.fail("unexpected trailing input after the matrix");
        return NFMatrixDoc{k, std::move(m)};
    }
    throw ParseError(header_start, "expected a field header or a matrix");
}

HigherDerivation parse_hs_doc(const std::string& text) {
    Cursor c{text};
    if (c.read_name() != "hs") c.fail("expected 'hs'");
    if (c.read_name() != "over") c.fail("expected 'over'");
    if (c.read_name() != "funcfield") c.fail("expected 'funcfield'");
    if (c.read_name() != "t") c.fail("only the variable t is supported");
    c.expect(':', "after the hs header");
    c.expect('[', "to open the derivation list");
    std::size_t first_pos = c.pos;
    DiffOperator d0 = parse_diffop_body(c);
    if (!d0.is_identity()) throw ParseError(first_pos, "first entry must be D0");
    std::vector<TailMap> tail;
    while (c.consume(';')) tail.emplace_back(parse_diffop_body(c));
    c.expect(']', "to close the derivation list");
    if (!c.done()) c.fail("unexpected trailing input");
    return HigherDerivation::unchecked(std::nullopt, std::move(tail));
}

std::vector<KPoly> parse_basis_doc(const std::string& text, const NumberField& k) {
    Cursor c{text};
    ExprOps<KPoly> ops{k, "X"};
    c.expect('[', "to open the basis list");
    std::vector<KPoly> out;
    out.push_back(parse_sum(c, ops));
    while (c.consume(',')) out.push_back(parse_sum(c, ops));
    c.expect(']', "to close the basis list");
    if (!c.done()) c.fail("unexpected trailing input");
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error("FileNotFound", "cannot open " + path);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

}  // namespace tsvs::io
