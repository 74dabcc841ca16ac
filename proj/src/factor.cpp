#include "tsvs/factor.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

#include "tsvs/errors.hpp"

namespace tsvs {
namespace {

using Z = mpz_class;
using ZPoly = std::vector<Z>;  // ascending, normalized

void zp_norm(ZPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int zp_deg(const ZPoly& a) { return static_cast<int>(a.size()) - 1; }

ZPoly zp_mul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, Z(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

ZPoly zp_add(const ZPoly& a, const ZPoly& b) {
    ZPoly r(std::max(a.size(), b.size()), Z(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    zp_norm(r);
    return r;
}

ZPoly zp_sub(const ZPoly& a, const ZPoly& b) {
    ZPoly r(std::max(a.size(), b.size()), Z(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    zp_norm(r);
    return r;
}

Z sym_mod(const Z& a, const Z& m) {
    Z r = a % m;
    if (r < 0) r += m;
    if (2 * r > m) r -= m;
    return r;
}

ZPoly zp_sym_mod(const ZPoly& a, const Z& m) {
    ZPoly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = sym_mod(a[i], m);
    zp_norm(r);
    return r;
}

// Division by a monic divisor with coefficients reduced symmetrically mod m
// at every step.
std::pair<ZPoly, ZPoly> zp_divmod_monic_mod(const ZPoly& a, const ZPoly& b, const Z& m) {
    ZPoly rem = zp_sym_mod(a, m);
    int db = zp_deg(b);
    if (zp_deg(rem) < db) return {{}, rem};
    ZPoly quot(rem.size() - db, Z(0));
    for (int i = zp_deg(rem); i >= db; --i) {
        Z c = sym_mod(rem[i], m);
        if (c == 0) {
            rem[i] = 0;
            continue;
        }
        quot[i - db] = c;
        for (int j = 0; j <= db; ++j) rem[i - db + j] = sym_mod(rem[i - db + j] - c * b[j], m);
    }
    zp_norm(quot);
    zp_norm(rem);
    return {quot, rem};
}

// Exact division test over Z by a monic candidate; fills quot on success.
bool zp_divides_monic(const ZPoly& f, const ZPoly& g, ZPoly* quot) {
    int dg = zp_deg(g);
    if (dg < 0 || zp_deg(f) < dg) return false;
    ZPoly rem = f;
    ZPoly q(f.size() - dg, Z(0));
    for (int i = zp_deg(f); i >= dg; --i) {
        Z c = rem[i];
        if (c == 0) continue;
        q[i - dg] = c;
        for (int j = 0; j <= dg; ++j) rem[i - dg + j] -= c * g[j];
    }
    for (const Z& c : rem)
        if (c != 0) return false;
    if (quot) {
        zp_norm(q);
        *quot = q;
    }
    return true;
}

// --- arithmetic mod a small prime -------------------------------------------

struct FpCtx {
    long p;
    long mul(long a, long b) const { return static_cast<long>((static_cast<__int128>(a) * b) % p); }
    long add(long a, long b) const { long r = a + b; return r >= p ? r - p : r; }
    long sub(long a, long b) const { long r = a - b; return r < 0 ? r + p : r; }
    long inv(long a) const {
        long t = 0, nt = 1, r = p, nr = a % p;
        while (nr != 0) {
            long q = r / nr;
            long tmp = t - q * nt;
            t = nt;
            nt = tmp;
            tmp = r - q * nr;
            r = nr;
            nr = tmp;
        }
        return t < 0 ? t + p : t;
    }
};

using FpPoly = std::vector<long>;

void fp_norm(FpPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int fp_deg(const FpPoly& a) { return static_cast<int>(a.size()) - 1; }

FpPoly fp_from_z(const ZPoly& a, const FpCtx& F) {
    FpPoly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        Z c = a[i] % F.p;
        if (c < 0) c += F.p;
        r[i] = c.get_si();
    }
    fp_norm(r);
    return r;
}

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, const FpCtx& F) {
    if (a.empty() || b.empty()) return {};
    FpPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
    fp_norm(r);
    return r;
}

FpPoly fp_sub(const FpPoly& a, const FpPoly& b, const FpCtx& F) {
    FpPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = F.sub(r[i], b[i]);
    fp_norm(r);
    return r;
}

std::pair<FpPoly, FpPoly> fp_divmod(const FpPoly& a, const FpPoly& b, const FpCtx& F) {
    FpPoly rem = a;
    int db = fp_deg(b);
    long lead_inv = F.inv(b.back());
    if (fp_deg(rem) < db) return {{}, rem};
    FpPoly quot(rem.size() - db, 0);
    for (int i = fp_deg(rem); i >= db; --i) {
        long c = F.mul(rem[i], lead_inv);
        if (c == 0) continue;
        quot[i - db] = c;
        for (int j = 0; j <= db; ++j) rem[i - db + j] = F.sub(rem[i - db + j], F.mul(c, b[j]));
    }
    fp_norm(quot);
    fp_norm(rem);
    return {quot, rem};
}

FpPoly fp_make_monic(const FpPoly& a, const FpCtx& F) {
    if (a.empty()) return a;
    long s = F.inv(a.back());
    FpPoly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], s);
    return r;
}

FpPoly fp_gcd(FpPoly a, FpPoly b, const FpCtx& F) {
    while (!b.empty()) {
        FpPoly r = fp_divmod(a, b, F).second;
        a = std::move(b);
        b = std::move(r);
    }
    return fp_make_monic(a, F);
}

// s*a + t*b = 1 for coprime a, b.
std::pair<FpPoly, FpPoly> fp_bezout(const FpPoly& a, const FpPoly& b, const FpCtx& F) {
    FpPoly r0 = a, r1 = b, s0 = {1}, s1 = {}, t0 = {}, t1 = {1};
    while (!r1.empty()) {
        auto [q, r] = fp_divmod(r0, r1, F);
        r0 = std::move(r1);
        r1 = std::move(r);
        FpPoly s2 = fp_sub(s0, fp_mul(q, s1, F), F);
        s0 = std::move(s1);
        s1 = std::move(s2);
        FpPoly t2 = fp_sub(t0, fp_mul(q, t1, F), F);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    long inv = F.inv(r0.back());
    for (auto& c : s0) c = F.mul(c, inv);
    for (auto& c : t0) c = F.mul(c, inv);
    return {s0, t0};
}

FpPoly fp_powmod(const FpPoly& base, const Z& e, const FpPoly& mod, const FpCtx& F) {
    FpPoly result = {1};
    FpPoly acc = fp_divmod(base, mod, F).second;
    Z k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) result = fp_divmod(fp_mul(result, acc, F), mod, F).second;
        k >>= 1;
        if (k > 0) acc = fp_divmod(fp_mul(acc, acc, F), mod, F).second;
    }
    return result;
}

FpPoly fp_derivative(const FpPoly& a, const FpCtx& F) {
    if (fp_deg(a) <= 0) return {};
    FpPoly r(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = F.mul(a[i], static_cast<long>(i % F.p));
    fp_norm(r);
    return r;
}

// Cantor-Zassenhaus equal-degree splitting, p odd.
void fp_edf(const FpPoly& f, int d, std::vector<FpPoly>& out, Rng& rng, const FpCtx& F) {
    if (fp_deg(f) == d) {
        out.push_back(fp_make_monic(f, F));
        return;
    }
    Z e = Z(F.p);
    mpz_pow_ui(e.get_mpz_t(), e.get_mpz_t(), d);
    e = (e - 1) / 2;
    while (true) {
        FpPoly a(fp_deg(f));
        for (auto& c : a) c = static_cast<long>(rng.next_u64() % static_cast<std::uint64_t>(F.p));
        fp_norm(a);
        if (fp_deg(a) < 1) continue;
        FpPoly b = fp_powmod(a, e, f, F);
        b = fp_sub(b, {1}, F);
        if (b.empty()) continue;
        FpPoly g = fp_gcd(b, f, F);
        if (fp_deg(g) > 0 && fp_deg(g) < fp_deg(f)) {
            fp_edf(g, d, out, rng, F);
            fp_edf(fp_divmod(f, g, F).first, d, out, rng, F);
            return;
        }
    }
}

// Full factorization of a monic squarefree polynomial mod p.
std::vector<FpPoly> fp_factor(FpPoly f, Rng& rng, const FpCtx& F) {
    std::vector<FpPoly> out;
    FpPoly h = {0, 1};  // x
    int d = 0;
    while (fp_deg(f) > 0) {
        ++d;
        if (2 * d > fp_deg(f)) {
            out.push_back(fp_make_monic(f, F));
            break;
        }
        h = fp_powmod(h, Z(F.p), f, F);
        FpPoly g = fp_gcd(fp_sub(h, {0, 1}, F), f, F);
        if (fp_deg(g) > 0) {
            fp_edf(g, d, out, rng, F);
            f = fp_divmod(f, g, F).first;
            h = fp_divmod(h, f, F).second;
        }
    }
    return out;
}

// --- Hensel lifting ----------------------------------------------------------

ZPoly zp_from_fp_sym(const FpPoly& a, long p) {
    ZPoly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = sym_mod(Z(a[i]), Z(p));
    zp_norm(r);
    return r;
}

// Quadratic lift of a coprime pair: f = g*h mod p with g, h monic becomes
// f = g*h mod m for m = p^(2^k) >= target. Standard simultaneous lift of the
// factorization and the Bezout identity.
std::pair<ZPoly, ZPoly> hensel_lift_pair(const ZPoly& f, const FpPoly& g0, const FpPoly& h0,
                                         const FpCtx& F, const Z& target, Z* modulus_out) {
    auto [s0, t0] = fp_bezout(g0, h0, F);
    Z m(F.p);
    ZPoly g = zp_from_fp_sym(g0, F.p);
    ZPoly h = zp_from_fp_sym(h0, F.p);
    ZPoly s = zp_from_fp_sym(s0, F.p);
    ZPoly t = zp_from_fp_sym(t0, F.p);
    while (m < target) {
        Z m2 = m * m;
        ZPoly e = zp_sym_mod(zp_sub(f, zp_mul(g, h)), m2);
        auto [q, r] = zp_divmod_monic_mod(zp_mul(s, e), h, m2);
        g = zp_sym_mod(zp_add(g, zp_add(zp_mul(t, e), zp_mul(q, g))), m2);
        h = zp_sym_mod(zp_add(h, r), m2);
        ZPoly b = zp_sym_mod(zp_sub(zp_add(zp_mul(s, g), zp_mul(t, h)), ZPoly{Z(1)}), m2);
        auto [c, d] = zp_divmod_monic_mod(zp_mul(s, b), h, m2);
        s = zp_sym_mod(zp_sub(s, d), m2);
        t = zp_sym_mod(zp_sub(t, zp_add(zp_mul(t, b), zp_mul(c, g))), m2);
        m = m2;
    }
    *modulus_out = m;
    return {g, h};
}

// Lifts every modular factor to precision >= target by peeling one factor at
// a time: f = f1 * (f2 ... fr) mod p, lift the pair, recurse on the cofactor.
std::vector<ZPoly> hensel_lift_all(const ZPoly& f, const std::vector<FpPoly>& factors,
                                   const FpCtx& F, const Z& target, Z* modulus_out) {
    std::vector<ZPoly> out;
    ZPoly cur = f;
    std::vector<FpPoly> rest = factors;
    Z m(F.p);
    while (rest.size() > 1) {
        FpPoly g0 = rest.front();
        FpPoly h0 = {1};
        for (std::size_t i = 1; i < rest.size(); ++i) h0 = fp_mul(h0, rest[i], F);
        auto [g, h] = hensel_lift_pair(cur, g0, h0, F, target, &m);
        out.push_back(g);
        cur = h;
        rest.erase(rest.begin());
    }
    out.push_back(cur);
    *modulus_out = m > target ? m : target;
    return out;
}

// --- Zassenhaus over Z -------------------------------------------------------

// 2^n * ceil(sqrt(sum c_i^2)): safe coefficient bound for monic factors of a
// monic F of degree n.
Z mignotte_bound(const ZPoly& f) {
    Z s(0);
    for (const Z& c : f) s += c * c;
    Z root;
    mpz_sqrt(root.get_mpz_t(), s.get_mpz_t());
    root += 1;
    Z two_n(1);
    two_n <<= zp_deg(f);
    return two_n * root;
}

const long kPrimes[] = {3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53,
                        59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127};

// Factors a monic squarefree integer polynomial of degree >= 1.
std::vector<ZPoly> zassenhaus_monic(const ZPoly& f) {
    if (zp_deg(f) == 1) return {f};

    FpCtx F{0};
    FpPoly fmodp;
    for (long p : kPrimes) {
        F.p = p;
        fmodp = fp_from_z(f, F);
        if (fp_deg(fmodp) != zp_deg(f)) continue;  // cannot happen: f monic
        FpPoly g = fp_gcd(fmodp, fp_derivative(fmodp, F), F);
        if (fp_deg(g) == 0) break;
        F.p = 0;
    }
    if (F.p == 0) throw Error("InvariantViolation", "no squarefree prime found for factorization");

    Rng rng(Rng::derive(global_config().seed, static_cast<std::uint64_t>(zp_deg(f))));
    std::vector<FpPoly> modular = fp_factor(fp_make_monic(fmodp, F), rng, F);
    if (modular.size() == 1) return {f};
    std::sort(modular.begin(), modular.end());

    Z target = 2 * mignotte_bound(f) + 1;
    Z modulus;
    std::vector<ZPoly> lifted = hensel_lift_all(f, modular, F, target, &modulus);

    // Subset recombination, smallest cardinality first; the first subset whose
    // symmetric product divides over Z is a true irreducible factor.
    std::vector<ZPoly> result;
    ZPoly rem_f = f;
    std::vector<ZPoly> pool = lifted;
    std::size_t cs = 1;
    while (2 * cs <= pool.size()) {
        std::vector<std::size_t> idx(cs);
        for (std::size_t i = 0; i < cs; ++i) idx[i] = i;
        bool found = false;
        while (true) {
            ZPoly cand = {Z(1)};
            for (std::size_t i : idx) cand = zp_sym_mod(zp_mul(cand, pool[i]), modulus);
            ZPoly quot;
            if (zp_divides_monic(rem_f, cand, &quot)) {
                result.push_back(cand);
                rem_f = quot;
                std::vector<ZPoly> next_pool;
                for (std::size_t i = 0; i < pool.size(); ++i)
                    if (std::find(idx.begin(), idx.end(), i) == idx.end())
                        next_pool.push_back(pool[i]);
                pool = std::move(next_pool);
                found = true;
                break;
            }
            // next combination
            int pos = static_cast<int>(cs) - 1;
            while (pos >= 0 && idx[pos] == pool.size() - cs + pos) --pos;
            if (pos < 0) break;
            ++idx[pos];
            for (std::size_t i = pos + 1; i < cs; ++i) idx[i] = idx[i - 1] + 1;
        }
        if (!found) ++cs;
    }
    if (zp_deg(rem_f) > 0) result.push_back(rem_f);
    return result;
}

Z zp_content(const ZPoly& a) {
    Z g(0);
    for (const Z& c : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g == 0 ? Z(1) : g;
}

// Primitive integer image of a nonzero rational polynomial, lc > 0.
ZPoly zp_primitive(const RatPoly& p) {
    Z lcm_den(1);
    for (const Rational& c : p.coeffs())
        mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.den().get_mpz_t());
    ZPoly r(p.coeffs().size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        Rational c = p[i] * Rational(lcm_den);
        r[i] = c.num();
    }
    Z cont = zp_content(r);
    if (r.back() < 0) cont = -cont;
    for (Z& c : r) c /= cont;
    return r;
}

RatPoly zp_to_monic_ratpoly(const ZPoly& a) {
    std::vector<Rational> c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = Rational(a[i]);
    return make_monic(RatPoly(std::move(c)));
}

// Transform to a monic integer polynomial: F(x) = lc^(n-1) * Q(x/lc), so
// F_n = 1 and F_i = q_i * lc^(n-1-i).
ZPoly monicize(const ZPoly& q, Z* scale_out) {
    Z l = q.back();
    *scale_out = l;
    if (l == 1) return q;
    int n = zp_deg(q);
    ZPoly f(q.size());
    f[n] = 1;
    Z pw(1);
    for (int i = n - 1; i >= 0; --i) {
        f[i] = q[i] * pw;
        pw *= l;
    }
    return f;
}

// Undo monicize on a monic factor G: q(x) = primitive(G(l*x)).
ZPoly demonicize(const ZPoly& g, const Z& l) {
    if (l == 1) return g;
    ZPoly r(g.size());
    Z pw(1);
    for (std::size_t i = 0; i < g.size(); ++i) {
        r[i] = g[i] * pw;
        pw *= l;
    }
    Z cont = zp_content(r);
    if (r.back() < 0) cont = -cont;
    for (Z& c : r) c /= cont;
    return r;
}

std::vector<ZPoly> factor_squarefree_int(const ZPoly& q) {
    if (zp_deg(q) < 1) return {};
    Z scale;
    ZPoly f = monicize(q, &scale);
    std::vector<ZPoly> monic_factors = zassenhaus_monic(f);
    std::vector<ZPoly> out;
    out.reserve(monic_factors.size());
    for (const ZPoly& g : monic_factors) out.push_back(demonicize(g, scale));
    return out;
}

// --- exhaustive search, degree <= 4 -----------------------------------------

std::vector<Z> signed_divisors(const Z& n) {
    Z a = abs(n);
    if (!a.fits_slong_p() || a > 1000000000000L)
        throw Error("ExhaustiveUnsupported", "constant term too large for exhaustive search");
    long v = a.get_si();
    std::vector<Z> out;
    for (long d = 1; static_cast<__int128>(d) * d <= v; ++d) {
        if (v % d != 0) continue;
        out.push_back(Z(d));
        out.push_back(Z(-d));
        if (d != v / d) {
            out.push_back(Z(v / d));
            out.push_back(Z(-(v / d)));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Rational roots by the rational root theorem; deflates and collects linear
// factors (as primitive integer polynomials q*x - p).
void exhaustive_roots(ZPoly& f, std::vector<ZPoly>& out) {
    bool progress = true;
    while (progress && zp_deg(f) >= 1) {
        progress = false;
        if (f[0] == 0) {
            out.push_back({Z(0), Z(1)});  // x
            f.erase(f.begin());
            progress = true;
            continue;
        }
        for (const Z& p : signed_divisors(f[0])) {
            bool done = false;
            for (const Z& q : signed_divisors(f.back())) {
                if (q <= 0) continue;
                Z g;
                mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
                if (g != 1) continue;
                // f(p/q) = 0 iff sum f_i p^i q^(n-i) = 0
                Z acc(0);
                Z qpow(1);
                std::vector<Z> qpows(f.size());
                for (std::size_t i = 0; i < f.size(); ++i) {
                    qpows[f.size() - 1 - i] = qpow;
                    qpow *= q;
                }
                for (int i = zp_deg(f); i >= 0; --i) acc = acc * p + f[i] * qpows[i];
                if (acc != 0) continue;
                // deflate by (x - p/q) over Q, then renormalize to Z
                std::vector<Rational> rf(f.size());
                for (std::size_t i = 0; i < f.size(); ++i) rf[i] = Rational(f[i]);
                auto [quot, rem] =
                    divmod(RatPoly(std::move(rf)),
                           RatPoly(std::vector<Rational>{Rational(-p, q), Rational(1)}));
                if (!rem.is_zero_poly()) continue;
                f = zp_primitive(quot);
                out.push_back({-p, q});
                progress = true;
                done = true;
                break;
            }
            if (done) break;
        }
    }
}

std::vector<ZPoly> exhaustive_squarefree_int(const ZPoly& q_in) {
    if (zp_deg(q_in) > 4)
        throw Error("ExhaustiveUnsupported", "exhaustive factorization limited to degree <= 4");
    ZPoly f = q_in;
    std::vector<ZPoly> out;
    exhaustive_roots(f, out);
    int d = zp_deg(f);
    if (d >= 1 && d <= 3) {
        // no rational root left: degree 2 and 3 are irreducible
        out.push_back(f);
        return out;
    }
    if (d == 4) {
        Z scale;
        ZPoly g = monicize(f, &scale);
        const Z e0 = g[0], e1 = g[1], e2 = g[2], e3 = g[3];
        for (const Z& v : signed_divisors(e0)) {
            Z z = e0 / v;
            bool ok = false;
            Z u, w;
            if (z != v) {
                Z num = e1 - e3 * v;
                Z den = z - v;
                if (num % den == 0) {
                    u = num / den;
                    w = e3 - u;
                    ok = (u * z + v * w == e1) && (v + z + u * w == e2);
                }
            } else {
                // u + w = e3, u*w = e2 - 2v, and v*(u+w) must give e1
                if (v * e3 == e1) {
                    Z disc = e3 * e3 - 4 * (e2 - 2 * v);
                    if (disc >= 0) {
                        Z s;
                        mpz_sqrt(s.get_mpz_t(), disc.get_mpz_t());
                        if (s * s == disc && (e3 + s) % 2 == 0) {
                            u = (e3 + s) / 2;
                            w = e3 - u;
                            ok = (v + z + u * w == e2);
                        }
                    }
                }
            }
            if (ok) {
                ZPoly g1 = {v, u, Z(1)};
                ZPoly g2 = {z, w, Z(1)};
                out.push_back(demonicize(g1, scale));
                out.push_back(demonicize(g2, scale));
                return out;
            }
        }
        out.push_back(f);  // irreducible quartic
    }
    return out;
}

// --- cache -------------------------------------------------------------------

std::string poly_key(const RatPoly& p) {
    std::ostringstream os;
    for (const Rational& c : p.coeffs()) os << c.str() << ";";
    return os.str();
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::mutex cache_mutex;
std::map<std::string, std::vector<std::pair<RatPoly, int>>> memo;

std::string cache_path(const std::string& key) {
    return global_config().cache_dir + "/q" + std::to_string(fnv1a(key)) + ".fct";
}

void cache_store(const std::string& key, const std::vector<std::pair<RatPoly, int>>& factors) {
    if (global_config().cache_dir.empty()) return;
    std::ofstream os(cache_path(key));
    if (!os) return;
    os << key << "\n" << factors.size() << "\n";
    for (const auto& [f, m] : factors) {
        os << m << " " << f.coeffs().size();
        for (const Rational& c : f.coeffs()) os << " " << c.str();
        os << "\n";
    }
}

bool cache_load(const std::string& key, const RatPoly& p,
                std::vector<std::pair<RatPoly, int>>* out) {
    if (global_config().cache_dir.empty()) return false;
    std::ifstream is(cache_path(key));
    if (!is) return false;
    std::string stored_key;
    std::getline(is, stored_key);
    if (stored_key != key) return false;
    std::size_t n = 0;
    is >> n;
    std::vector<std::pair<RatPoly, int>> factors;
    for (std::size_t i = 0; i < n; ++i) {
        int mult = 0;
        std::size_t len = 0;
        is >> mult >> len;
        std::vector<Rational> coeffs;
        coeffs.reserve(len);
        for (std::size_t j = 0; j < len; ++j) {
            std::string tok;
            is >> tok;
            auto slash = tok.find('/');
            if (slash == std::string::npos)
                coeffs.emplace_back(Z(tok));
            else
                coeffs.emplace_back(Z(tok.substr(0, slash)), Z(tok.substr(slash + 1)));
        }
        if (!is) return false;
        factors.emplace_back(RatPoly(std::move(coeffs)), mult);
    }
    // entries must behave as if recomputed: verify the product reconstructs p
    RatPoly prod(Rational(1));
    for (const auto& [f, m] : factors) prod = prod * poly_pow(f, m);
    if (prod.scaled(p.lc()) != p) return false;
    *out = std::move(factors);
    return true;
}

int factor_sort_compare(const RatPoly& a, const RatPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
    for (int i = a.degree(); i >= 0; --i) {
        int c = order_compare(a[i], b[i]);
        if (c != 0) return c;
    }
    return 0;
}

}  // namespace

Config& global_config() {
    static Config cfg;
    return cfg;
}

std::vector<std::pair<RatPoly, int>> factor_over_Q(const RatPoly& p, FactorAlgorithm algorithm) {
    if (p.is_zero_poly()) throw Error("ZeroPolynomial", "factorization of the zero polynomial");
    if (p.degree() == 0) return {};

    const std::string key =
        poly_key(make_monic(p)) + (algorithm == FactorAlgorithm::Exhaustive ? "#x" : "#z");
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
    }
    std::vector<std::pair<RatPoly, int>> result;
    if (!cache_load(key, make_monic(p), &result)) {
        for (const auto& [part, mult] : squarefree_decomposition(p)) {
            ZPoly q = zp_primitive(part);
            std::vector<ZPoly> irr = algorithm == FactorAlgorithm::Exhaustive
                                         ? exhaustive_squarefree_int(q)
                                         : factor_squarefree_int(q);
            for (const ZPoly& g : irr) result.emplace_back(zp_to_monic_ratpoly(g), mult);
        }
        std::sort(result.begin(), result.end(), [](const auto& a, const auto& b) {
            return factor_sort_compare(a.first, b.first) < 0;
        });
        // product of monic irreducible powers times lc reconstructs the input
        RatPoly prod(Rational(1));
        for (const auto& [f, m] : result) prod = prod * poly_pow(f, m);
        if (prod.scaled(p.lc()) != p)
            throw Error("InvariantViolation", "factorization does not reconstruct input");
        cache_store(key, result);
    }
    std::lock_guard<std::mutex> lock(cache_mutex);
    memo.emplace(key, result);
    return result;
}

std::vector<std::pair<RatPoly, int>> factor_over_Q(const RatPoly& p) {
    FactorAlgorithm alg = global_config().factor_algorithm;
    if (alg == FactorAlgorithm::Auto) alg = FactorAlgorithm::Zassenhaus;
    return factor_over_Q(p, alg);
}

bool is_irreducible_over_Q(const RatPoly& p) {
    if (p.degree() < 1) return false;
    auto factors = factor_over_Q(p);
    return factors.size() == 1 && factors[0].second == 1;
}

void clear_factor_cache() {
    std::lock_guard<std::mutex> lock(cache_mutex);
    memo.clear();
}

}  // namespace tsvs
