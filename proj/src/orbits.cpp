#include "sqf/orbits.hpp"
#include "sqf/sieve.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sqf {

namespace {

i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

constexpr int kIdx[4][4] = {{0, 1, 2, 3}, {1, 4, 5, 6}, {2, 5, 7, 8}, {3, 6, 8, 9}};

} // namespace

Rational::Rational(i128 n, i128 d) {
    if (d == 0) throw std::invalid_argument("Rational: zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    i128 g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    num = n;
    den = d;
}

std::string Rational::str() const {
    if (den == 1) return to_string(num);
    return to_string(num) + "/" + to_string(den);
}

int SymMatrix::index(int i, int j) { return kIdx[i][j]; }

bool SymMatrix::integral() const {
    return std::all_of(e4.begin(), e4.end(), [](i64 v) { return v % 4 == 0; });
}

SymMatrix SymMatrix::A0() {
    SymMatrix a;
    a.set4(0, 3, 4);
    a.set4(1, 2, 4);
    return a;
}

SymMatrix SymMatrix::operator+(const SymMatrix& o) const {
    SymMatrix r;
    for (int i = 0; i < 10; ++i) r.e4[i] = i64(checked_add(e4[i], o.e4[i]));
    return r;
}

SymMatrix SymMatrix::scaled(i64 k) const {
    SymMatrix r;
    for (int i = 0; i < 10; ++i) r.e4[i] = i64(checked_mul(e4[i], k));
    return r;
}

namespace {

using boost::multiprecision::cpp_rational;

cpp_rational to_mp(const Rational& r) {
    return cpp_rational(boost::multiprecision::cpp_int(to_string(r.num)), boost::multiprecision::cpp_int(to_string(r.den)));
}

Rational from_mp(const cpp_rational& r) {
    auto n = numerator(r), d = denominator(r);
    boost::multiprecision::cpp_int lim = boost::multiprecision::cpp_int(1) << 120;
    if (abs(n) > lim || d > lim) throw std::range_error("rational value exceeds 128-bit storage");
    auto to_i128 = [](boost::multiprecision::cpp_int v) {
        bool neg = v < 0;
        if (neg) v = -v;
        i128 out = 0;
        std::string s = v.str();
        for (char ch : s) out = out * 10 + (ch - '0');
        return neg ? -out : out;
    };
    return Rational(to_i128(n), to_i128(d));
}

// sign and column for each permutation of {0,1,2,3}
struct Perm {
    int sigma[4];
    int sign;
};

const std::vector<Perm>& perms4() {
    static const std::vector<Perm> ps = [] {
        std::vector<Perm> out;
        int s[4] = {0, 1, 2, 3};
        do {
            int inv = 0;
            for (int i = 0; i < 4; ++i)
                for (int j = i + 1; j < 4; ++j) inv += s[i] > s[j];
            out.push_back({{s[0], s[1], s[2], s[3]}, inv % 2 ? -1 : 1});
        } while (std::next_permutation(s, s + 4));
        return out;
    }();
    return ps;
}

} // namespace

Rational QuarticPoly::discriminant() const {
    cpp_rational b = to_mp(c[0]), cc = to_mp(c[1]), d = to_mp(c[2]), e = to_mp(c[3]);
    cpp_rational t = 256 * e * e * e - 192 * b * d * e * e - 128 * cc * cc * e * e + 144 * cc * d * d * e -
                     27 * d * d * d * d + 144 * b * b * cc * e * e - 6 * b * b * d * d * e -
                     80 * b * cc * cc * d * e + 18 * b * cc * d * d * d + 16 * cc * cc * cc * cc * e -
                     4 * cc * cc * cc * d * d - 27 * b * b * b * b * e * e + 18 * b * b * b * cc * d * e -
                     4 * b * b * b * d * d * d - 4 * b * b * cc * cc * cc * e + b * b * cc * cc * d * d;
    return from_mp(t);
}

double QuarticPoly::height() const {
    double h = 0;
    for (int i = 0; i < 4; ++i) h = std::max(h, std::pow(std::fabs(c[i].to_double()), 1.0 / (i + 1)));
    return h;
}

std::string QuarticPoly::str() const {
    std::ostringstream os;
    os << "x^4";
    const char* mon[4] = {"x^3", "x^2", "x", ""};
    for (int i = 0; i < 4; ++i) {
        if (c[i].num == 0) continue;
        os << (c[i].num < 0 ? " - " : " + ");
        Rational a(c[i].num < 0 ? -c[i].num : c[i].num, c[i].den);
        bool unit = a.num == 1 && a.den == 1;
        if (!unit || i == 3) os << a.str();
        os << mon[i];
    }
    return os.str();
}

QuarticPoly invariant_poly(const SymMatrix& B) {
    // det(A0 y - 4B) with y = 4x, then c_k = p_k / 4^k
    std::array<i128, 5> poly{}; // poly[k] = coefficient of y^k
    for (const auto& pm : perms4()) {
        std::array<i128, 5> prod{};
        prod[0] = pm.sign;
        for (int i = 0; i < 4; ++i) {
            int j = pm.sigma[i];
            i128 lin = (i + j == 3) ? 1 : 0;
            i128 cst = -i128(B.at4(i, j));
            std::array<i128, 5> nx{};
            for (int k = 0; k < 4; ++k) {
                if (prod[k] == 0) continue;
                nx[k] = checked_add(nx[k], checked_mul(prod[k], cst));
                nx[k + 1] = checked_add(nx[k + 1], checked_mul(prod[k], lin));
            }
            prod = nx;
        }
        for (int k = 0; k < 5; ++k) poly[k] = checked_add(poly[k], prod[k]);
    }
    if (poly[4] != 1) throw std::logic_error("invariant_poly: leading coefficient is not 1");
    QuarticPoly f;
    i128 scale = 1;
    for (int k = 1; k <= 4; ++k) {
        scale *= 4;
        f.c[k - 1] = Rational(poly[4 - k], scale);
    }
    return f;
}

SymMatrix build_B(i64 c1, i64 c2, i64 c3, i64 c4, i64 m) {
    SymMatrix B;
    B.set4(0, 2, i64(checked_mul(4, m)));
    B.set4(1, 1, 4);
    B.set4(1, 2, i64(checked_mul(-2, c1)));
    B.set4(2, 2, i64(checked_add(checked_mul(c1, c1), checked_mul(-4, c2))));
    B.set4(2, 3, i64(checked_mul(-2, c3)));
    B.set4(3, 3, i64(checked_mul(-4, c4)));
    return B;
}

Rational q_invariant(const SymMatrix& B) {
    if (B.at4(0, 0) != 0 || B.at4(0, 1) != 0) throw DomainError("q_invariant: matrix has nonzero (1,1) or (1,2) entry");
    return B.entry(0, 2);
}

Embedding sigma_m(i64 a, i64 b, u64 m) {
    if (m == 0 || !is_squarefree_int(m)) throw std::invalid_argument("sigma_m: m must be squarefree");
    Embedding out;
    out.m = m;
    u64 r = 0, M = 1;
    for (auto& pe : (m == 1 ? std::vector<PrimePower>{} : factorize(m))) {
        u64 p = pe.p;
        if (classify(a, b, p).kind != DivisibilityKind::weak)
            throw std::invalid_argument("sigma_m: p^2 does not weakly divide the discriminant for p = " + std::to_string(p));
        FpPoly f(p, {mod(b, p), mod(a, p), 0, 0, 1});
        FpPoly g = poly_gcd(f, f.derivative());
        if (g.degree() != 1) throw std::logic_error("sigma_m: no unique double root mod " + std::to_string(p));
        u64 root = (p - g.c[0]) % p;
        // CRT: r = r mod M, r = root mod p
        u64 t = mulmod((root + p - r % p) % p, invmod(M % p, p), p);
        r += M * t;
        M *= p;
    }
    i128 R = i128(r), A = a, Bv = b, mm = i128(m);
    out.shift = i64(r);
    out.shifted = {4 * R, 6 * R * R, checked_add(checked_mul(4, checked_pow(R, 3)), A),
                   checked_add(checked_add(checked_pow(R, 4), checked_mul(A, R)), Bv)};
    out.divisibility_ok = true;
    if (m > 1)
        for (auto& pe : factorize(m)) {
            i128 p = i128(pe.p);
            if (out.shifted[2] % p != 0 || out.shifted[3] % (p * p) != 0) out.divisibility_ok = false;
        }
    if (!out.divisibility_ok) throw std::logic_error("sigma_m: shifted coefficients fail the p | c3', p^2 | c4' check");
    i128 c3 = out.shifted[2] / mm, c4 = out.shifted[3] / (mm * mm);
    SymMatrix base = build_B(i64(out.shifted[0]), i64(out.shifted[1]), i64(c3), i64(c4), i64(m));
    out.matrix = base + SymMatrix::A0().scaled(i64(r));
    return out;
}

bool preserves_A0(const IntMatrix4& g) {
    // g A0 g^t with A0 the anti-diagonal ones matrix
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            i64 s = 0;
            for (int k = 0; k < 4; ++k) s += g[i][k] * g[j][3 - k];
            if (s != ((i + j == 3) ? 1 : 0)) return false;
        }
    return true;
}

bool lower_triangular(const IntMatrix4& g) {
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (g[i][j] != 0) return false;
    return true;
}

std::vector<IntMatrix4> gz_generators() {
    std::vector<IntMatrix4> out;
    auto identity = [] {
        IntMatrix4 g{};
        for (int i = 0; i < 4; ++i) g[i][i] = 1;
        return g;
    };
    out.push_back(identity());
    // root elements I + t(E_ij - E_j'i'), i' = 3 - i
    const int roots[4][2] = {{1, 0}, {2, 0}, {0, 1}, {0, 2}};
    for (auto& ij : roots)
        for (i64 t : {1, -1}) {
            IntMatrix4 g = identity();
            int i = ij[0], j = ij[1];
            g[i][j] += t;
            g[3 - j][3 - i] -= t;
            out.push_back(g);
        }
    for (i64 s1 : {1, -1})
        for (i64 s2 : {1, -1}) {
            if (s1 == 1 && s2 == 1) continue;
            IntMatrix4 g{};
            g[0][0] = s1;
            g[1][1] = s2;
            g[2][2] = s2;
            g[3][3] = s1;
            out.push_back(g);
        }
    const int perms[3][4] = {{1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    for (auto& pm : perms) {
        IntMatrix4 g{};
        for (int i = 0; i < 4; ++i) g[i][pm[i]] = 1;
        out.push_back(g);
    }
    for (auto& g : out)
        if (!preserves_A0(g)) throw std::logic_error("gz_generators: element does not preserve A0");
    return out;
}

SymMatrix act(const IntMatrix4& g, const SymMatrix& B) {
    SymMatrix r;
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) {
            i128 s = 0;
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) s = checked_add(s, checked_mul(checked_mul(g[i][k], B.at4(k, l)), g[j][l]));
            if (s > INT64_MAX || s < INT64_MIN) throw std::range_error("act: entry overflow");
            r.set4(i, j, i64(s));
        }
    return r;
}

} // namespace sqf
