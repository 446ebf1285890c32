#include <doctest.h>

#include <algorithm>
#include <random>

#include "hmf/lattice.hpp"
#include "hmf/toric.hpp"

using namespace hmf;

namespace {

FracIdeal ideal(const Field* F, long a) { return FracIdeal::rational(F, Rational(a)); }

// orientation of (b - a, c - a) in the (theta1, theta2) plane, exactly
int orient(const Element& a, const Element& b, const Element& c) {
    Element x = b - a, y = c - a;
    Element e = x * conj(y);
    int s = sgn(e.b);
    const Element& w = x.F->omega();
    return theta1(w) > theta2(w) ? s : -s;
}

// lower-left hull of the totally positive points of M in a box, collinear points kept on request
std::vector<Element> hull_oracle(const FracIdeal& M, long double T1, long double T2, bool keep_collinear) {
    std::vector<Element> pts;
    for_each_in_box(M, 0, T1, 0, T2, [&](const Element& x) {
        if (!x.is_zero() && is_totally_positive(x)) pts.push_back(x);
    });
    std::sort(pts.begin(), pts.end(), [](const Element& x, const Element& y) { return sign1(y - x) > 0; });
    std::vector<Element> h;
    for (const auto& p : pts) {
        while (h.size() >= 2) {
            int o = orient(h[h.size() - 2], h.back(), p);
            if (o < 0 || (o == 0 && !keep_collinear)) h.pop_back();
            else break;
        }
        h.push_back(p);
    }
    // the lower hull turns upward at the right wall of the box
    auto low = std::min_element(h.begin(), h.end(), [](const Element& x, const Element& y) { return sign2(y - x) > 0; });
    h.erase(low + 1, h.end());
    return h;
}

// the box reaches one ray past the window on both sides
std::vector<Element> oracle_window(const Fan& f, bool keep_collinear) {
    Element r0 = f.window.front(), r1 = f.unit * r0;
    long P = static_cast<long>(f.period());
    long double T1 = 2 * theta1(f.ray(P + 1)), T2 = 2 * theta2(f.ray(-1));
    std::vector<Element> out;
    for (auto& x : hull_oracle(f.M, T1, T2, keep_collinear))
        if (!ratio_less(x, r0) && ratio_less(x, r1)) out.push_back(x);
    std::sort(out.begin(), out.end(), [](const Element& x, const Element& y) { return ratio_less(x, y); });
    return out;
}

std::vector<FracIdeal> test_lattices() {
    std::vector<FracIdeal> out;
    for (long D : {5L, 3L, 13L, 10L, 21L}) {
        const Field* F = Field::get(D);
        out.push_back(FracIdeal::unit(F));
        out.push_back(inverse(different(F)));
    }
    const Field* F10 = Field::get(10);
    out.push_back(primes_above(F10, 3)[0].P);
    out.push_back(inverse(primes_above(F10, 2)[0].P));
    const Field* F5 = Field::get(5);
    out.push_back(primes_above(F5, 11)[0].P * inverse(different(F5)));
    return out;
}

}  // namespace

TEST_CASE("Hirzebruch-Jung steps are unimodular") {
    const Field* F = Field::get(5);
    FracIdeal M = ideal(F, 1);
    Element u = F->one(), v = F->eps_plus() * F->eps_plus() * F->eps_plus();
    auto mid = hj_subdivision(M, u, v);
    std::vector<Element> chain{u};
    chain.insert(chain.end(), mid.begin(), mid.end());
    chain.push_back(v);
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        auto a = lattice_coords(M, chain[i]), b = lattice_coords(M, chain[i + 1]);
        CHECK(abs(a.first * b.second - a.second * b.first) == 1);
        CHECK(ratio_less(chain[i], chain[i + 1]));
    }
    CHECK(hj_subdivision(M, u, u).empty());
    CHECK_THROWS_AS(lattice_coords(ideal(F, 2), u), DomainError);
}

TEST_CASE("unit-invariant fans match the convex hull") {
    for (const auto& M : test_lattices()) {
        const Field* F = M.field();
        CAPTURE(to_string(M));
        for (long e : {1L, 2L}) {
            Element unit = pow(F->eps_plus(), e);
            Fan all = build_unit_invariant_fan(M, unit, true);
            Fan vert = build_unit_invariant_fan(M, unit, false);
            if (e == 1) {
                CHECK(all.window == oracle_window(all, true));
                CHECK(vert.window == oracle_window(vert, false));
            } else {
                // the hull does not depend on the period
                Fan a1 = build_unit_invariant_fan(M, F->eps_plus(), true);
                REQUIRE(all.period() == 2 * a1.period());
                for (long i = 0; i < static_cast<long>(all.period()); ++i) CHECK(all.ray(i) == a1.ray(i));
            }
            CHECK(vert.window.front() == all.window.front());
            CHECK(smooth_fan(vert).window == all.window);
            CHECK(unit_exponent(all.unit) == e);
            auto rep = check_fan(all);
            CHECK(rep.coverage);
            CHECK(rep.periodic);
            CHECK(rep.smooth);
            auto rv = check_fan(vert);
            CHECK(rv.coverage);
            CHECK(rv.periodic);
            for (long i = -3; i < 6; ++i) CHECK(all.ray(i + static_cast<long>(all.period())) == unit * all.ray(i));
        }
    }
    const Field* F = Field::get(5);
    CHECK_THROWS_AS(build_unit_invariant_fan(ideal(F, 1), F->fundamental_unit(), true), DomainError);
    CHECK_THROWS_AS(unit_exponent(F->from(2)), DomainError);
    Fan bad{ideal(F, 1), F->eps_plus(), {F->eps_plus(), F->one()}};
    CHECK(!check_fan(bad).coverage);
}

TEST_CASE("refinement checks") {
    const Field* F = Field::get(5);
    FracIdeal M = inverse(different(F));
    Element e = F->eps_plus();
    Fan vert = build_unit_invariant_fan(M, e, false);
    Fan all = build_unit_invariant_fan(M, e, true);
    CHECK(refine_check(vert, vert, F->one()));
    CHECK(refine_check(all, vert, F->one()));
    CHECK(refine_check(all, all, F->from(3)));
    Fan doubled{M, e * e, {}};
    for (long i = 0; i < 2 * static_cast<long>(all.period()); ++i) doubled.window.push_back(all.ray(i));
    CHECK(refine_check(all, doubled, F->one()));
    CHECK(refine_check(doubled, all, F->one()));

    // an extra ray in the coarse fan
    Element extra = primitive_part(M, all.ray(0) + all.ray(1) + all.ray(1));
    Fan more = all;
    more.window.insert(more.window.begin() + 1, extra);
    CHECK(refine_check(more, all, F->one()));
    CHECK(!refine_check(all, more, F->one()));

    // a period-2 fine fan missing one ray in its second period; the coarse period-1 fan
    // agrees on its first period only
    Fan holed = doubled;
    holed.window.erase(holed.window.begin() + static_cast<long>(all.period()) + (all.period() > 1 ? 1 : 0));
    CHECK(!refine_check(holed, all, F->one()));
    CHECK(refine_check(doubled, holed, F->one()));

    CHECK_THROWS_AS(refine_check(all, all, F->from(-1)), DomainError);
    CHECK_THROWS_AS(refine_check(all, build_unit_invariant_fan(inverse(ideal(F, 3)) * M, e, true), F->one()),
                    DomainError);
}

TEST_CASE("refinement along sublattices") {
    const Field* F = Field::get(5);
    FracIdeal M = inverse(different(F));
    Element e = F->eps_plus();
    Fan fine = build_unit_invariant_fan(M, e, false);
    for (const auto& p : primes_above(F, 11)) {
        FracIdeal M1 = p.P * M;
        for (bool sm : {false, true}) {
            Fan coarse = build_unit_invariant_fan(M1, e * e, sm);
            Fan g = refine_to(fine, coarse, F->one(), sm);
            CHECK(refine_check(g, coarse, F->one()));
            CHECK(refine_check(g, fine, F->one()));
            CHECK(unit_exponent(g.unit) == 2);
            auto rep = check_fan(g);
            CHECK(rep.coverage);
            CHECK(rep.periodic);
            if (sm) CHECK(rep.smooth);
            if (!sm) {
                // no ray beyond the two inputs
                for (auto& r : g.window) {
                    bool from_fine = std::find(fine.window.begin(), fine.window.end(), r) != fine.window.end() ||
                                     std::find(fine.window.begin(), fine.window.end(), inverse(e) * r) != fine.window.end();
                    bool from_coarse = false;
                    for (long j = -4; j < 8; ++j) {
                        Element q = coarse.ray(j) / r;
                        if (q.b == 0 && q.a > 0) from_coarse = true;
                    }
                    CHECK((from_fine || from_coarse));
                }
            }
        }
    }
    // inert 3: alpha-image directions already lie in the fan
    Fan c3 = build_unit_invariant_fan(M, e, false);
    Fan g3 = refine_to(fine, c3, F->from(3), false);
    CHECK(g3.window == fine.window);
}

TEST_CASE("saving trace on truncated series") {
    const Field* F = Field::get(5);
    FracIdeal M = inverse(different(F)), scale = FracIdeal::unit(F);
    CoeffRing R = CoeffRing::exact(F);
    std::mt19937_64 rng(11);
    Rational B = 60;
    auto random_series = [&](const FracIdeal& L, const Rational& bound) {
        MonoidSeries s = make_series(L, scale, bound, R);
        s.set(F->zero(), R.random(rng));
        for_each_in_box(L, 0, 40, 0, 40, [&](const Element& m) {
            if (!m.is_zero() && is_totally_positive(m) && relative_norm(m, L) <= bound) s.set(m, R.random(rng));
        });
        return s;
    };
    MonoidSeries s = random_series(M, B);
    REQUIRE(support_ok(s));
    REQUIRE(s.coeffs.size() > 20);

    // identity
    MonoidSeries id = saving_trace_local(s, M, F->one(), R.one());
    CHECK(series_equal(id, s));

    for (const Element& alpha : {F->from(3), F->one(), F->eps_plus()}) {
        for (const FracIdeal& M1 : {ideal(F, 3) * M, primes_above(F, 11)[0].P * M, M}) {
            if (!M.contains(FracIdeal::principal(alpha) * M1)) continue;
            CAPTURE(to_string(alpha));
            CAPTURE(to_string(M1));
            Coeff beta = R.from_rational(saving_trace_twist(FracIdeal::unit(F), M, M1, alpha));
            MonoidSeries t = saving_trace_local(s, M1, alpha, beta);
            CHECK(support_ok(t));
            CHECK(R.eq(t.twist, beta));
            // reindexing, read off independently
            std::size_t seen = 0;
            for_each_in_box(M1, 0, 120, 0, 120, [&](const Element& m) {
                if (m.is_zero() || !is_totally_positive(m) || relative_norm(m, M1) > t.bound) return;
                CHECK(R.eq(t.at(m), s.at(alpha * m)));
                if (!R.is_zero(t.at(m))) ++seen;
            });
            CHECK(seen + 1 == t.coeffs.size());
            CHECK(R.eq(t.at(F->zero()), s.at(F->zero())));

            MonoidSeries t1 = saving_trace_local(s, M1, alpha, R.one());
            MonoidSeries back = pullback(t1, M, alpha);
            CHECK(series_equal(back, support_projection(s, M1, alpha)));
            MonoidSeries s1 = random_series(M1, t1.bound);
            CHECK(series_equal(saving_trace_local(pullback(s1, M, alpha), M1, alpha, R.one()), s1));
        }
    }

    // input supported off 3M leaves only the constant term
    MonoidSeries off = make_series(M, scale, B, R);
    for (const auto& [m, c] : s.coeffs)
        if (!m.is_zero() && !(ideal(F, 3) * M).contains(m)) off.set(m, c);
    CHECK(saving_trace_local(off, ideal(F, 3) * M, F->one(), R.one()).coeffs.empty());

    CHECK(saving_trace_twist(FracIdeal::unit(F), M, ideal(F, 3) * M, F->one()) == 9);
    CHECK(saving_trace_twist(ideal(F, 3), M, ideal(F, 3) * M, F->one()) == 1);
    CHECK_THROWS_AS(saving_trace_local(s, inverse(ideal(F, 3)) * M, F->one(), R.one()), DomainError);
    CHECK_THROWS_AS(saving_trace_local(s, M, F->from(-1), R.one()), DomainError);
}

namespace {

DegreeCertificate certificate_for(const FracIdeal& M, const FracIdeal& M1, const FracIdeal& cone_lattice, long D) {
    Fan f = build_unit_invariant_fan(cone_lattice, cone_lattice.field()->eps_plus(), true);
    return monoid_trace_degree(f.ray(0), f.ray(1), M, M1, M.field()->one(), D);
}

}  // namespace

TEST_CASE("trace degree of monoid algebras") {
    const Field* F = Field::get(5);
    FracIdeal M = inverse(different(F));
    FracIdeal p = primes_above(F, 11)[0].P;
    FracIdeal M3 = ideal(F, 3) * M, Mp = p * M, M33 = ideal(F, 3) * Mp;

    auto c1 = certificate_for(M, M, M, 20);
    CHECK(c1.rank == 1);
    CHECK(c1.conclusive);

    auto c9 = certificate_for(M, M3, M3, 20);
    CHECK(c9.rank == 9);
    CHECK(c9.index == 9);
    CHECK(c9.conclusive);
    CHECK(c9.generators.size() == 9);

    auto c11 = certificate_for(M, Mp, Mp, 20);
    CHECK(c11.rank == 11);
    CHECK(c11.conclusive);

    // M > Mp > 3 Mp over one cone smooth for the smallest lattice
    auto a = certificate_for(M, Mp, Mp, 24);
    auto b = certificate_for(Mp, M33, M33, 24);
    auto ab = certificate_for(M, M33, M33, 24);
    CHECK(a.rank == 11);
    CHECK(b.rank == 9);
    CHECK(ab.rank == 99);
    CHECK(ab.conclusive);
    CHECK(ab.rank == a.rank * b.rank);

    // degree 0 sees only the identity coset
    auto low = certificate_for(M, M3, M3, 0);
    CHECK(low.rank < 9);
    CHECK(!low.conclusive);

    // the cone must be smooth for alpha(M1)
    Fan f = build_unit_invariant_fan(M, F->eps_plus(), true);
    CHECK_THROWS_AS(monoid_trace_degree(f.ray(0), f.ray(1), M, M3, F->one(), 10), DomainError);
    CHECK_THROWS_AS(monoid_trace_degree(f.ray(0), f.ray(1), M, M, F->from(-1), 10), DomainError);
}
