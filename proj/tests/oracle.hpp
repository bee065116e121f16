#pragma once

// Naive reference implementations used to check the library. Everything
// here works on dense coefficient vectors and uses none of the library's
// series code.

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "a22/laurent.hpp"

namespace oracle {

using Poly = std::vector<mpz_class>; // coefficients of q^0 .. q^N

inline Poly one(long n) {
    Poly p(n + 1);
    p[0] = 1;
    return p;
}

inline Poly mul(const Poly& a, const Poly& b) {
    const long n = long(a.size()) - 1;
    Poly r(n + 1);
    for (long i = 0; i <= n; ++i) {
        if (a[i] == 0) continue;
        for (long j = 0; i + j <= n; ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

/// Multiply in place by (1 + c q^e).
inline void mul_binomial(Poly& a, long c, long e) {
    if (e == 0) {
        for (auto& x : a) x *= (1 + c);
        return;
    }
    for (long i = long(a.size()) - 1; i >= e; --i) a[i] += c * a[i - e];
}

/// Divide in place by (1 + c q^e), e >= 1.
inline void div_binomial(Poly& a, long c, long e) {
    for (long i = e; i < long(a.size()); ++i) a[i] -= c * a[i - e];
}

/// (sign q^base; q^step)_n to order N, base >= 0. With n < 0 it is the infinite product.
inline Poly poch(long sign, long base, long step, long n, long N) {
    Poly p = one(N);
    for (long t = 0; n < 0 || t < n; ++t) {
        const long e = base + t * step;
        if (e > N) break;
        mul_binomial(p, -sign, e);
    }
    return p;
}

/// 1 / (sign q^base; q^step)_n, base >= 1.
inline Poly inv_poch(long sign, long base, long step, long n, long N) {
    Poly p = one(N);
    for (long t = 0; n < 0 || t < n; ++t) {
        const long e = base + t * step;
        if (e > N) break;
        div_binomial(p, -sign, e);
    }
    return p;
}

/// Partition numbers p(0..N) by the coin-change recurrence.
inline Poly partitions(long N) {
    Poly p = one(N);
    for (long part = 1; part <= N; ++part)
        for (long m = part; m <= N; ++m) p[m] += p[m - part];
    return p;
}

/// Formal Laurent accumulator truncated at N.
struct Acc {
    long N;
    std::map<long, mpz_class> c;

    /// Adds sign * q^e * f where f is known to order N - e.
    void add(long e, const Poly& f, int sign = 1) {
        for (long i = 0; i < long(f.size()) && e + i <= N; ++i)
            if (f[i] != 0) c[e + i] += sign * f[i];
    }
    void add(const Acc& o) {
        for (auto& [e, v] : o.c) c[e] += v;
    }
    a22::LaurentSeries series() const {
        std::vector<a22::Term> t;
        for (auto& [e, v] : c)
            if (v != 0) t.push_back({e, v});
        return a22::LaurentSeries::from_terms(t, N);
    }
};

inline Poly to_poly(const a22::LaurentSeries& s, long N) {
    Poly p(N + 1);
    for (long e = 0; e <= N; ++e) p[e] = s.coefficient(e);
    return p;
}

inline a22::LaurentSeries to_series(const Poly& p) {
    return a22::LaurentSeries::from_dense(0, std::vector<mpz_class>(p.begin(), p.end()), long(p.size()) - 1);
}

inline long binom2(long j) { return j * (j - 1) / 2; }

/// Principal character of L(s0, s1) straight from the product formula.
inline Poly character(long s0, long s1, long N) {
    const long l = s0 + 2 * s1;
    Poly p = partitions(N);
    for (long b : {s1 + 1, s0 + s1 + 2, l + 3})
        for (long e = b; e <= N; e += l + 3) mul_binomial(p, -1, e);
    for (long b : {s0 + 1, s0 + 4 * s1 + 5})
        for (long e = b; e <= N; e += 2 * l + 6) mul_binomial(p, -1, e);
    return p;
}

} // namespace oracle
