#include "hmf/toric.hpp"

#include <cmath>
#include <set>

#include "hmf/lattice.hpp"

namespace hmf {

namespace {

using Vec = std::pair<Integer, Integer>;

Integer det(const Vec& u, const Vec& v) { return u.first * v.second - u.second * v.first; }

bool same_direction(const Element& x, const Element& y) {
    Element q = x / y;
    return q.b == 0 && q.a > 0;
}

// x * unit^k with fan window start <= ratio < unit * start
Element normalize(const Fan& f, Element x) {
    const Element& r0 = f.window.front();
    Element top = f.unit * r0;
    long double lu = std::log(theta1(f.unit) / theta2(f.unit));
    long double lx = std::log(theta1(x) / theta2(x)) - std::log(theta1(r0) / theta2(r0));
    long k = static_cast<long>(std::floor(lx / lu));
    if (k != 0) x = pow(f.unit, -k) * x;
    while (ratio_less(x, r0)) x = f.unit * x;
    while (!ratio_less(x, top)) x = inverse(f.unit) * x;
    return x;
}

bool is_ray(const Fan& f, const Element& x) {
    Element y = normalize(f, x);
    for (const auto& r : f.window)
        if (same_direction(y, r)) return true;
    return false;
}

Element require_positive_unit(const Element& unit) {
    if (!is_totally_positive(unit) || norm(unit) != 1 || !unit.is_integral() || !inverse(unit).is_integral())
        throw DomainError("fan period must be a totally positive unit");
    if (theta1(unit) <= 1) throw DomainError("fan period must satisfy theta_1(unit) > 1");
    return unit;
}

// point of M_+ of least trace, ties broken by the ratio order
Element trace_minimum(const FracIdeal& M) {
    std::optional<Element> best;
    auto visit = [&](const Element& x) {
        if (x.is_zero() || !is_totally_positive(x)) return;
        if (!best || trace(x) < trace(*best) || (trace(x) == trace(*best) && ratio_less(x, *best))) best = x;
    };
    long double T = std::sqrt(static_cast<long double>(to_int64(floor(M.norm() * 4)) + 1)) + 1;
    while (!best) {
        for_each_in_box(M, 0, T, 0, T, visit);
        T *= 2;
    }
    long double t = static_cast<long double>(trace(*best).get_d()) + 1;
    for_each_in_box(M, 0, t, 0, t, visit);
    return *best;
}

}  // namespace

std::pair<Integer, Integer> lattice_coords(const FracIdeal& M, const Element& m) {
    Rational y = m.b / M.c();
    Rational x = (m.a - y * M.b()) / M.a();
    if (x.get_den() != 1 || y.get_den() != 1) throw DomainError("element " + to_string(m) + " is not in " + to_string(M));
    return {x.get_num(), y.get_num()};
}

Element from_coords(const FracIdeal& M, const Integer& x, const Integer& y) {
    return Rational(x) * M.basis1() + Rational(y) * M.basis2();
}

bool is_primitive(const FracIdeal& M, const Element& m) {
    auto [x, y] = lattice_coords(M, m);
    return gcd(x, y) == 1;
}

Element primitive_part(const FracIdeal& M, const Element& m) {
    auto [x, y] = lattice_coords(M, m);
    Integer g = gcd(x, y);
    if (g == 0) throw DomainError("primitive part of zero");
    return from_coords(M, x / g, y / g);
}

std::vector<Element> hj_subdivision(const FracIdeal& M, const Element& u, const Element& v) {
    Vec U = lattice_coords(M, u), V = lattice_coords(M, v);
    Integer d = det(U, V);
    if (d == 0) return {};
    int s = sgn(d);
    auto D = [&](const Vec& a, const Vec& b) { return Integer(s * det(a, b)); };
    if (gcd(U.first, U.second) != 1 || gcd(V.first, V.second) != 1) throw DomainError("cone rays must be primitive");
    Integer A, B;
    gcdext(U.first, U.second, A, B);
    Vec w0{-s * B, s * A};   // D(U, w0) = 1
    std::vector<Element> out;
    Vec cur = U;
    std::uint64_t used = 0;
    for (;;) {
        charge(used, 1, "Hirzebruch-Jung subdivision");
        Integer num = -D(w0, V), den = D(cur, V);
        Integer x = ceil(frac(num, den));
        Vec w{x * cur.first + w0.first, x * cur.second + w0.second};
        if (w == V) break;
        out.push_back(from_coords(M, w.first, w.second));
        w0 = {-cur.first, -cur.second};
        cur = w;
    }
    return out;
}

Element Fan::ray(long i) const {
    long P = static_cast<long>(window.size());
    long q = i >= 0 ? i / P : -((-i + P - 1) / P);
    long r = i - q * P;
    return q == 0 ? window[r] : pow(unit, q) * window[r];
}

Fan build_unit_invariant_fan(const FracIdeal& M, const Element& unit, bool smooth) {
    require_positive_unit(unit);
    Element u = trace_minimum(M);
    Fan f{M, unit, {u}};
    for (auto& x : hj_subdivision(M, u, unit * u)) f.window.push_back(x);
    if (smooth) return f;
    std::vector<Element> vertices;
    long P = static_cast<long>(f.window.size());
    for (long i = 0; i < P; ++i)
        if (f.ray(i - 1) + f.ray(i + 1) != Rational(2) * f.ray(i)) vertices.push_back(f.ray(i));
    f.window = vertices;
    return f;
}

Fan smooth_fan(const Fan& f) {
    Fan g{f.M, f.unit, {}};
    for (long i = 0; i < static_cast<long>(f.period()); ++i) {
        g.window.push_back(f.ray(i));
        for (auto& x : hj_subdivision(f.M, f.ray(i), f.ray(i + 1))) g.window.push_back(x);
    }
    return g;
}

FanReport check_fan(const Fan& f, long bound) {
    FanReport rep;
    if (f.window.empty()) {
        rep.message = "empty fan";
        return rep;
    }
    try {
        require_positive_unit(f.unit);
    } catch (const DomainError& e) {
        rep.message = e.what();
        return rep;
    }
    rep.periodic = FracIdeal::principal(f.unit) * f.M == f.M;
    rep.coverage = true;
    for (std::size_t i = 0; i < f.period(); ++i) {
        const Element& r = f.window[i];
        if (!is_totally_positive(r) || !f.M.contains(r) || !is_primitive(f.M, r)) {
            rep.coverage = false;
            rep.message = "ray " + std::to_string(i) + " is not a primitive totally positive lattice point";
        } else if (!ratio_less(r, f.ray(static_cast<long>(i) + 1))) {
            rep.coverage = false;
            rep.message = "rays " + std::to_string(i) + ", " + std::to_string(i + 1) + " are out of order";
        }
    }
    rep.smooth = true;
    for (std::size_t i = 0; i < f.period(); ++i) {
        Integer d = det(lattice_coords(f.M, f.ray(static_cast<long>(i))), lattice_coords(f.M, f.ray(static_cast<long>(i) + 1)));
        if (abs(d) != 1) rep.smooth = false;
    }
    if (rep.coverage) {
        // each point lands in exactly one half-open cone [ray i, ray i+1) of the window
        for (const auto& m : enumerate_orbit_reps(f.M, Rational(bound))) {
            Element y = normalize(f, m);
            int hits = 0;
            for (std::size_t i = 0; i < f.period(); ++i) {
                const Element lo = f.ray(static_cast<long>(i)), hi = f.ray(static_cast<long>(i) + 1);
                if (!ratio_less(y, lo) && ratio_less(y, hi)) ++hits;
            }
            if (hits != 1) {
                rep.coverage = false;
                rep.message = "point " + to_string(m) + " lies in " + std::to_string(hits) + " cones";
                break;
            }
        }
    }
    if (rep.message.empty()) rep.message = "ok";
    return rep;
}

long unit_exponent(const Element& unit) {
    require_positive_unit(unit);
    const Element& e = unit.F->eps_plus();
    Element x = e;
    for (long k = 1; theta1(x) <= theta1(unit) * 2; ++k, x = x * e)
        if (x == unit) return k;
    throw DomainError("unit is not a power of the totally positive fundamental unit");
}

bool refine_check(const Fan& fine, const Fan& coarse, const Element& alpha) {
    if (!is_totally_positive(alpha)) throw DomainError("inclusion must be given by a totally positive element");
    if (!fine.M.contains(FracIdeal::principal(alpha) * coarse.M))
        throw DomainError("lattice mismatch: alpha * M1 is not contained in M");
    long ef = unit_exponent(fine.unit), ec = unit_exponent(coarse.unit);
    long periods = std::lcm(ef, ec) / ec;
    for (long t = 0; t < periods; ++t)
        for (std::size_t i = 0; i < coarse.period(); ++i)
            if (!is_ray(fine, alpha * coarse.ray(t * static_cast<long>(coarse.period()) + static_cast<long>(i))))
                return false;
    return true;
}

Fan refine_to(const Fan& fine, const Fan& coarse, const Element& alpha, bool smooth) {
    if (!is_totally_positive(alpha)) throw DomainError("inclusion must be given by a totally positive element");
    if (!fine.M.contains(FracIdeal::principal(alpha) * coarse.M))
        throw DomainError("lattice mismatch: alpha * M1 is not contained in M");
    long ef = unit_exponent(fine.unit), ec = unit_exponent(coarse.unit);
    long e = std::lcm(ef, ec);
    Fan g{fine.M, pow(fine.M.field()->eps_plus(), e), {}};
    g.window.push_back(fine.window.front());
    std::vector<Element> pts;
    for (long i = 0; i < static_cast<long>(fine.period()) * (e / ef); ++i) pts.push_back(fine.ray(i));
    for (long j = 0; j < static_cast<long>(coarse.period()) * (e / ec); ++j)
        pts.push_back(primitive_part(fine.M, normalize(g, alpha * coarse.ray(j))));
    std::sort(pts.begin(), pts.end(), [](const Element& x, const Element& y) { return ratio_less(x, y); });
    g.window.clear();
    for (auto& x : pts)
        if (g.window.empty() || !same_direction(g.window.back(), x)) g.window.push_back(x);
    return smooth ? smooth_fan(g) : g;
}

Coeff MonoidSeries::at(const Element& m) const {
    auto it = coeffs.find(m);
    return it == coeffs.end() ? ring.zero() : it->second;
}

void MonoidSeries::set(const Element& m, const Coeff& c) {
    if (ring.is_zero(c))
        coeffs.erase(m);
    else
        coeffs[m] = ring.normalize(c);
}

MonoidSeries make_series(const FracIdeal& M, const FracIdeal& scale, const Rational& bound, const CoeffRing& R) {
    return MonoidSeries{M, scale, bound, R, {}, R.one()};
}

bool support_ok(const MonoidSeries& s) {
    FracIdeal E = s.exponents();
    for (const auto& [m, c] : s.coeffs) {
        if (m.is_zero()) continue;
        if (!is_totally_positive(m) || !E.contains(m) || relative_norm(m, E) > s.bound) return false;
    }
    return true;
}

bool series_equal(const MonoidSeries& a, const MonoidSeries& b) {
    if (a.M != b.M || a.scale != b.scale || a.bound != b.bound || !(a.ring == b.ring)) return false;
    if (!a.ring.eq(a.twist, b.twist) || a.coeffs.size() != b.coeffs.size()) return false;
    for (const auto& [m, c] : a.coeffs)
        if (!a.ring.eq(c, b.at(m))) return false;
    return true;
}

namespace {

void check_inclusion(const FracIdeal& M, const FracIdeal& M1, const Element& alpha) {
    if (!is_totally_positive(alpha)) throw DomainError("inclusion must be given by a totally positive element");
    if (!M.contains(FracIdeal::principal(alpha) * M1)) throw DomainError("lattice mismatch: alpha * M1 is not contained in M");
}

}  // namespace

MonoidSeries saving_trace_local(const MonoidSeries& s, const FracIdeal& M1, const Element& alpha, const Coeff& beta) {
    check_inclusion(s.M, M1, alpha);
    MonoidSeries out = make_series(M1, s.scale, 0, s.ring);
    FracIdeal E = s.exponents(), E1 = out.exponents();
    out.bound = s.bound * E.norm() / (norm(alpha) * E1.norm());
    for (const auto& [k, c] : s.coeffs) {
        Element m = k / alpha;
        if (k.is_zero() || E1.contains(m)) out.set(m, c);
    }
    out.twist = s.ring.mul(s.twist, beta);
    return out;
}

MonoidSeries pullback(const MonoidSeries& s1, const FracIdeal& M, const Element& alpha) {
    check_inclusion(M, s1.M, alpha);
    MonoidSeries out = make_series(M, s1.scale, 0, s1.ring);
    out.bound = s1.bound * norm(alpha) * s1.exponents().norm() / out.exponents().norm();
    for (const auto& [m, c] : s1.coeffs) out.set(alpha * m, c);
    out.twist = s1.twist;
    return out;
}

MonoidSeries support_projection(const MonoidSeries& s, const FracIdeal& M1, const Element& alpha) {
    check_inclusion(s.M, M1, alpha);
    MonoidSeries out = s;
    FracIdeal E1 = inverse(s.scale) * M1;
    for (auto it = out.coeffs.begin(); it != out.coeffs.end();) {
        if (!it->first.is_zero() && !E1.contains(it->first / alpha))
            it = out.coeffs.erase(it);
        else
            ++it;
    }
    return out;
}

Rational saving_trace_twist(const FracIdeal& q2, const FracIdeal& M, const FracIdeal& M1, const Element& alpha) {
    check_inclusion(M, M1, alpha);
    return norm(alpha) * M1.norm() / M.norm() / q2.norm();
}

DegreeCertificate monoid_trace_degree(const Element& r1, const Element& r2, const FracIdeal& M, const FracIdeal& M1,
                                      const Element& alpha, long degree_bound) {
    check_inclusion(M, M1, alpha);
    FracIdeal A = FracIdeal::principal(alpha) * M1;
    DegreeCertificate cert;
    cert.bound = degree_bound;
    Rational idx = A.norm() / M.norm();
    cert.index = idx.get_num();
    if (!is_totally_positive(r1) || !is_totally_positive(r2) || !A.contains(r1) || !A.contains(r2) ||
        abs(det(lattice_coords(A, r1), lattice_coords(A, r2))) != 1)
        throw DomainError("cone rays must be totally positive and form a basis of alpha(M1)");
    // coordinates of x over (r1, r2), exact over Q
    Rational dd = r1.a * r2.b - r2.a * r1.b;
    auto coords = [&](const Element& x) {
        return std::make_pair(Rational((x.a * r2.b - r2.a * x.b) / dd), Rational((r1.a * x.b - x.a * r1.b) / dd));
    };
    Element e1 = M.basis1(), e2 = M.basis2();
    auto [a1, b1] = coords(e1);
    auto [a2, b2] = coords(e2);
    // (i, j) from (a, b): inverse of [[a1, a2], [b1, b2]]
    Rational cd = a1 * b2 - a2 * b1;
    auto ij = [&](const Rational& a, const Rational& b) {
        return std::make_pair(Rational((b2 * a - a2 * b) / cd), Rational((a1 * b - b1 * a) / cd));
    };
    Rational D(degree_bound);
    Rational lo_i = 0, hi_i = 0, lo_j = 0, hi_j = 0;
    for (auto [a, b] : {std::make_pair(Rational(0), Rational(0)), std::make_pair(D, Rational(0)), std::make_pair(Rational(0), D)}) {
        auto [i, j] = ij(a, b);
        lo_i = std::min(lo_i, i), hi_i = std::max(hi_i, i), lo_j = std::min(lo_j, j), hi_j = std::max(hi_j, j);
    }
    Integer i0 = floor(lo_i), i1 = ceil(hi_i), j0 = floor(lo_j), j1 = ceil(hi_j);
    std::uint64_t used = 0;
    charge(used, static_cast<std::uint64_t>(to_int64((i1 - i0 + 1) * (j1 - j0 + 1))), "monoid degree count");
    std::map<std::pair<Rational, Rational>, long> counts;
    for (Integer i = i0; i <= i1; ++i)
        for (Integer j = j0; j <= j1; ++j) {
            Rational a = Rational(i) * a1 + Rational(j) * a2, b = Rational(i) * b1 + Rational(j) * b2;
            if (a < 0 || b < 0 || a + b > D) continue;
            counts[{a - Rational(floor(a)), b - Rational(floor(b))}]++;
        }
    cert.rank = static_cast<long>(counts.size());
    cert.conclusive = cert.rank == to_int64(cert.index);
    for (const auto& [key, n] : counts) {
        const auto& [fa, fb] = key;
        Rational room = D - fa - fb;
        long expect = 0;
        if (room >= 0) {
            long t = to_int64(floor(room));
            expect = (t + 1) * (t + 2) / 2;
        }
        if (n != expect) {
            cert.conclusive = false;
            cert.message = "coset part is not a translate of the submonoid";
        }
        cert.generators.push_back(fa * r1 + fb * r2);
    }
    if (cert.message.empty())
        cert.message = cert.conclusive ? "free of rank " + std::to_string(cert.rank) + " through degree " + std::to_string(degree_bound)
                                       : "inconclusive at degree " + std::to_string(degree_bound);
    return cert;
}

}  // namespace hmf
