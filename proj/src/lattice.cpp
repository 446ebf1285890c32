#include "hmf/lattice.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace hmf {

void for_each_in_box(const FracIdeal& I, long double lo1, long double hi1, long double lo2, long double hi2,
                     const std::function<void(const Element&)>& fn) {
    // Gauss-reduce the basis in the real embedding, then scan j and solve for i.
    Element e1 = I.basis1(), e2 = I.basis2();
    auto emb = [](const Element& x) { return std::array<long double, 2>{theta1(x), theta2(x)}; };
    auto dot = [](const std::array<long double, 2>& x, const std::array<long double, 2>& y) {
        return x[0] * y[0] + x[1] * y[1];
    };
    for (int it = 0; it < 200; ++it) {
        auto v1 = emb(e1), v2 = emb(e2);
        if (dot(v2, v2) < dot(v1, v1)) {
            std::swap(e1, e2);
            std::swap(v1, v2);
        }
        long double mu = std::round(dot(v1, v2) / dot(v1, v1));
        if (mu == 0) break;
        e2 = e2 - Rational(static_cast<long>(mu)) * e1;
    }
    auto p = emb(e1), q = emb(e2);
    long double det = p[0] * q[1] - p[1] * q[0];
    long double jlo = INFINITY, jhi = -INFINITY;
    for (long double x1 : {lo1, hi1})
        for (long double x2 : {lo2, hi2}) {
            long double j = (p[0] * x2 - p[1] * x1) / det;
            jlo = std::min(jlo, j);
            jhi = std::max(jhi, j);
        }
    std::uint64_t used = 0;
    long j0 = static_cast<long>(std::floor(jlo)) - 1, j1 = static_cast<long>(std::ceil(jhi)) + 1;
    charge(used, static_cast<std::uint64_t>(j1 - j0 + 1), "lattice box enumeration");
    for (long j = j0; j <= j1; ++j) {
        long double l = -INFINITY, h = INFINITY;
        auto clip = [&](long double pc, long double off, long double lo, long double hi) {
            if (std::fabs(pc) < 1e-30L) return;
            long double a = (lo - off) / pc, b = (hi - off) / pc;
            l = std::max(l, std::min(a, b));
            h = std::min(h, std::max(a, b));
        };
        clip(p[0], j * q[0], lo1, hi1);
        clip(p[1], j * q[1], lo2, hi2);
        if (h + 1 < l) continue;
        long i0 = static_cast<long>(std::floor(l)) - 1;
        long i1 = static_cast<long>(std::ceil(h)) + 1;
        charge(used, static_cast<std::uint64_t>(i1 - i0 + 1), "lattice box enumeration");
        Element base = Rational(j) * e2;
        for (long i = i0; i <= i1; ++i) fn(Rational(i) * e1 + base);
    }
}

std::optional<Element> principal_generator(const FracIdeal& I) {
    const Field* F = I.field();
    Rational N = I.norm();
    long double r = std::sqrt(N.get_d()) * (1 + 1e-9L) + 1e-9L;
    long double u = theta1(F->fundamental_unit());
    std::optional<Element> found;
    struct Found {};
    try {
        for_each_in_box(I, -u * r, u * r, -r, r, [&](const Element& x) {
            if (x.is_zero()) return;
            Rational n = norm(x);
            if (n == N || n == -N) {
                found = x;
                throw Found{};
            }
        });
    } catch (const Found&) {
    }
    return found;
}

std::optional<Element> totally_positive_generator(const FracIdeal& I) {
    auto g = principal_generator(I);
    if (!g) return std::nullopt;
    const Element& e = I.field()->fundamental_unit();
    for (const Element& u : {I.field()->one(), -I.field()->one(), e, -e}) {
        Element x = u * *g;
        if (is_totally_positive(x)) return x;
    }
    return std::nullopt;
}

Rational relative_norm(const Element& m, const FracIdeal& M) { return norm(m) / M.norm(); }

bool ratio_less(const Element& x, const Element& y) { return !ratio_at_least(x, y); }

OrbitRep orbit_representative(const Element& m, const Element& u) {
    if (m.is_zero() || !is_totally_positive(m)) throw DomainError("orbit representative of a non-totally-positive element");
    const Field* F = m.F;
    long double l1 = theta1(m), l2 = theta2(m);
    long double lu = 2 * std::log(theta1(u));
    long k = 0;
    if (l1 > 0 && l2 > 0 && std::isfinite(l1) && std::isfinite(l2)) {
        long double r = std::log(l1) - std::log(l2);
        k = -static_cast<long>(std::floor(r / lu));
    }
    Element x = k == 0 ? m : pow(u, k) * m;
    Element one = F->one();
    while (!ratio_at_least(x, one)) {
        x = x * u;
        ++k;
    }
    while (ratio_at_least(x, u)) {
        x = x / u;
        --k;
    }
    return {x, k};
}

Element orbit_representative(const Element& m) { return orbit_representative(m, m.F->eps_plus()).rep; }

std::vector<Element> enumerate_orbit_reps(const FracIdeal& M, const Rational& B, long period) {
    std::vector<Element> out;
    if (B < 1) return out;   // Nm(m)/Nm(M) is a positive integer on M
    const Field* F = M.field();
    const Element& u = F->eps_plus();
    Rational X = B * M.norm();
    long double rx = std::sqrt(X.get_d()) * (1 + 1e-9L) + 1e-9L;
    long double u1 = theta1(u);
    Element one = F->one();
    for_each_in_box(M, 0, u1 * rx, 0, rx, [&](const Element& x) {
        if (x.is_zero() || sign1(x) <= 0 || sign2(x) <= 0) return;
        if (norm(x) > X) return;
        if (!ratio_at_least(x, one) || ratio_at_least(x, u)) return;
        out.push_back(x);
    });
    if (period > 1) {
        std::size_t n = out.size();
        for (long i = 1; i < period; ++i) {
            Element ui = pow(u, i);
            for (std::size_t j = 0; j < n; ++j) out.push_back(ui * out[j]);
        }
    }
    std::vector<std::pair<Rational, Element>> dec;
    dec.reserve(out.size());
    for (auto& x : out) dec.emplace_back(norm(x), std::move(x));
    std::sort(dec.begin(), dec.end(), [](const auto& x, const auto& y) {
        if (x.first != y.first) return x.first < y.first;
        return ratio_less(x.second, y.second);
    });
    out.clear();
    for (auto& [n, x] : dec) out.push_back(std::move(x));
    return out;
}

}  // namespace hmf
