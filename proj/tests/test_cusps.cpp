#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "hmf/cusps.hpp"

using namespace hmf;

namespace {

FracIdeal ideal(const Field* F, long a) { return FracIdeal::rational(F, Rational(a)); }

// h_n^+ = h * 4 * phi(n) / #{(u mod n, signs of u) : u a unit}, by scanning +-eps^i.
std::size_t narrow_ray_class_number(const Field* F, const FracIdeal& n, std::size_t h) {
    ResidueRing R(n);
    std::set<std::pair<ResidueRing::Res, int>> image;
    Element u = F->one();
    for (int i = 0; i < 2000; ++i, u = u * F->fundamental_unit())
        for (int s : {1, -1}) {
            Element v = Rational(s) * u;
            image.insert({R.reduce(v), (sign1(v) < 0 ? 1 : 0) | (sign2(v) < 0 ? 2 : 0)});
        }
    return h * 4 * R.unit_count() / image.size();
}

Element random_coprime(const Field* F, std::mt19937_64& rng, long m) {
    std::uniform_int_distribution<long> d(-40, 40);
    for (;;) {
        Element x(F, d(rng), d(rng));
        if (!x.is_zero() && coprime(FracIdeal::principal(x), m)) return x;
    }
}

}  // namespace

TEST_CASE("cusps at infinity") {
    const Field* F5 = Field::get(5);
    const Field* F3 = Field::get(3);
    CuspAtlas A5(F5, {LevelType::U1, ideal(F5, 1)}, 3);
    CHECK(A5.size() == 1);
    CHECK(A5.cusps_at_infinity().size() == 1);
    CuspAtlas A3(F3, {LevelType::U1, ideal(F3, 1)}, 11);
    auto inf3 = A3.cusps_at_infinity();
    REQUIRE(inf3.size() == 2);
    CHECK(inf3[0] != inf3[1]);
    CHECK(component_cover_check(A3, inf3));
    CHECK(!component_cover_check(A3, {inf3[0]}));
    CHECK(!component_cover_check(A3, {}));
    for (std::size_t i : inf3) {
        CHECK(A3.cusps()[i].at_infinity);
        CHECK(A3.cusps()[i].I == FracIdeal::unit(F3));
    }

    for (long m : {7L, 4L, 11L}) {
        FracIdeal n = ideal(F5, m);
        CuspAtlas A(F5, {LevelType::Full, n}, 3);
        auto inf = A.cusps_at_infinity();
        CHECK(inf.size() == narrow_ray_class_number(F5, n, 1));
        CHECK(A.component_count() == inf.size());
        CHECK(std::set<std::size_t>(inf.begin(), inf.end()).size() == inf.size());
        CHECK(component_cover_check(A, inf));
        std::set<std::size_t> comps;
        for (std::size_t i : inf) comps.insert(A.cusps()[i].component);
        CHECK(comps.size() == inf.size());
    }
}

TEST_CASE("cusp counts at level one") {
    // |C| = h * h^+ when n = O
    struct Row {
        long D, p;
        std::size_t h, hplus;
    };
    for (auto r : {Row{5, 3, 1, 1}, Row{3, 11, 1, 2}, Row{10, 3, 2, 2}, Row{15, 7, 2, 4}}) {
        const Field* F = Field::get(r.D);
        CuspAtlas A(F, {LevelType::U1, ideal(F, 1)}, r.p);
        CHECK(A.size() == r.h * r.hplus);
        CHECK(A.cusps_at_infinity().size() == r.hplus);
    }
}

TEST_CASE("cusp classes are invariant under the rational Borel and the level") {
    std::mt19937_64 rng(3);
    const Field* F = Field::get(5);
    for (auto type : {LevelType::U1, LevelType::Full}) {
        FracIdeal n = ideal(F, 7);
        CuspAtlas A(F, {type, n}, 3);
        ResidueRing R(n);
        for (int it = 0; it < 60; ++it) {
            FracIdeal a = FracIdeal::principal(random_coprime(F, rng, 21));
            FracIdeal c = FracIdeal::principal(random_coprime(F, rng, 21));
            Element ra = random_coprime(F, rng, 7), rc = random_coprime(F, rng, 7);
            LevelMatrix k;
            do {
                k = {random_coprime(F, rng, 1), random_coprime(F, rng, 1), random_coprime(F, rng, 1),
                     random_coprime(F, rng, 1)};
            } while (!R.is_unit(R.reduce(k[0] * k[3] - k[1] * k[2])));
            std::size_t base = A.locate(a, c, ra, rc, k);
            // (alpha, delta) with alpha*delta >> 0
            Element al = random_coprime(F, rng, 7), de = random_coprime(F, rng, 7);
            for (const Element& v : {de, -de, de * F->fundamental_unit(), -de * F->fundamental_unit()})
                if (is_totally_positive(al * v)) de = v;
            REQUIRE(is_totally_positive(al * de));
            CHECK(A.locate(FracIdeal::principal(al) * a, FracIdeal::principal(de) * c, al * ra, de * rc, k) == base);
            // right multiplication by U: k * [[u, b], [0, 1]] for U1, anything = 1 mod n for U(n)
            Element u = type == LevelType::U1 ? random_coprime(F, rng, 7) : F->one();
            Element b = type == LevelType::U1 ? random_coprime(F, rng, 1) : Rational(7) * random_coprime(F, rng, 1);
            LevelMatrix ku{k[0] * u, k[0] * b + k[1], k[2] * u, k[2] * b + k[3]};
            CHECK(A.locate(a, c, ra, rc, ku) == base);
        }
    }
}

TEST_CASE("cusps of level U0(P)") {
    struct Row {
        long D, p;
        bool both;   // P = pO_F, otherwise the first prime above p
        long n;
        LevelType t;
    };
    for (auto r : {Row{5, 3, true, 1, LevelType::U1}, Row{5, 11, false, 1, LevelType::U1},
                   Row{5, 11, true, 1, LevelType::U1}, Row{3, 3, true, 1, LevelType::U1},
                   Row{3, 11, true, 1, LevelType::U1}, Row{10, 3, true, 1, LevelType::U1},
                   Row{5, 11, true, 7, LevelType::U1}, Row{5, 3, true, 4, LevelType::Full}}) {
        const Field* F = Field::get(r.D);
        auto ps = primes_above(F, r.p);
        FracIdeal P = r.both ? ideal(F, r.p) : ps[0].P;
        if (r.both && ps.size() == 1 && ps[0].e == 2) P = ps[0].P;
        CuspAtlas A(F, {r.t, ideal(F, r.n)}, r.p);
        auto u0 = A.u0_cusps(P);
        std::size_t k = factor(P).size();
        CHECK(u0.size() == A.size() * (std::size_t{1} << k));
        std::map<std::size_t, std::size_t> f1, f2;
        std::set<std::pair<std::size_t, FracIdeal>> labels;
        for (const auto& u : u0) {
            CHECK(u.q1 * u.q2 == P);
            f1[u.base]++;
            f2[u.pi2]++;
            labels.insert({u.base, u.q1});
        }
        CHECK(labels.size() == u0.size());
        for (std::size_t c = 0; c < A.size(); ++c) {
            CHECK(f1[c] == (std::size_t{1} << k));
            CHECK(f2[c] == (std::size_t{1} << k));
        }
    }
    const Field* F = Field::get(5);
    CuspAtlas A(F, {LevelType::U1, ideal(F, 1)}, 3);
    CHECK(A.u0_cusps(FracIdeal::unit(F)).size() == A.size());
    CHECK_THROWS_AS(A.u0_cusps(ideal(F, 9)), DomainError);
    CHECK_THROWS_AS(A.u0_cusps(ideal(F, 11)), DomainError);
}

TEST_CASE("clasps") {
    const Field* F = Field::get(5);
    // every unit = 1 mod n is = 1 mod 3 for this prime of norm 41
    FracIdeal n = FracIdeal::from_generators(F, {F->from(41), Element(F, 6, 1)});
    CuspAtlas A(F, {LevelType::Full, n}, 3);
    FracIdeal P = ideal(F, 3);
    REQUIRE(A.is_neat(P));
    auto cl = A.clasps(P);
    auto u0 = A.u0_cusps(P);
    std::map<std::size_t, std::uint64_t> fiber;
    for (const auto& c : cl) {
        fiber[c.u0]++;
        CHECK(u0[c.u0].base == c.base);
        CHECK(u0[c.u0].q1 == c.q);
    }
    for (const auto& u : u0) CHECK(fiber[u.index] == ResidueRing(u.q1).unit_count());
    CHECK(cl.size() == A.size() * 9);

    CuspAtlas B(F, {LevelType::U1, ideal(F, 1)}, 3);
    CHECK(!B.is_neat(P));
    CHECK_THROWS_AS(B.clasps(P), DomainError);
    // U1(n) always has diag(eps_plus, 1) at infinity
    CuspAtlas C(F, {LevelType::U1, n}, 3);
    CHECK(C.is_neat(P));
    CHECK_THROWS_AS(C.clasps(P), DomainError);
}

TEST_CASE("level indices") {
    const Field* F = Field::get(5);
    CHECK(level_indices(FracIdeal::unit(F)) == std::make_pair(Integer(1), Integer(1)));
    CHECK(level_indices(ideal(F, 3)) == std::make_pair(Integer(10), Integer(80)));
    CHECK(level_indices(ideal(F, 11)) == std::make_pair(Integer(144), Integer(14400)));
    auto ps = primes_above(F, 11);
    auto a = level_indices(ps[0].P), b = level_indices(ps[1].P), ab = level_indices(ps[0].P * ps[1].P);
    CHECK(ab.first == a.first * b.first);
    CHECK(ab.second == a.second * b.second);
    CHECK(level_indices(ideal(F, 33)) == std::make_pair(Integer(1440), Integer(1152000)));
}

TEST_CASE("q-module descriptors") {
    const Field* F = Field::get(5);
    CuspAtlas A(F, {LevelType::U1, ideal(F, 1)}, 3);
    const CuspRecord& c = A.cusps()[A.cusps_at_infinity()[0]];
    Weight w0{0, 0, 0, 0};
    auto d0 = A.descriptor(c, w0);
    CHECK(d0.orbit_constancy());
    CHECK(d0.M == inverse(different(F)));
    CHECK(d0.root_order == 0);
    CHECK(A.descriptor(c, Weight{2, 2, 0, 0}).orbit_constancy());
    CHECK(!A.descriptor(c, Weight{4, 2, 0, 1}).orbit_constancy());
    for (const auto& g : d0.gens) {
        CHECK(is_totally_positive(g.alpha * g.delta));
        CHECK(d0.M == FracIdeal::principal(g.delta / g.alpha) * d0.M);
    }
    FracIdeal P = ideal(F, 3);
    for (const auto& u : A.u0_cusps(P)) {
        auto du = A.descriptor(u, w0);
        CHECK(du.M == inverse(u.q1) * d0.M);
        CHECK(du.beta_lattice == u.q1 * d0.beta_lattice);
    }
    FracIdeal n = FracIdeal::from_generators(F, {F->from(41), Element(F, 6, 1)});
    CuspAtlas B(F, {LevelType::Full, n}, 3);
    auto u0 = B.u0_cusps(P);
    for (const auto& cl : B.clasps(P)) {
        if (cl.q != FracIdeal::unit(F)) continue;
        auto dc = B.descriptor(cl, P, w0);
        auto du = B.descriptor(u0[cl.u0], w0);
        CHECK(dc.M == du.M);
        CHECK(*dc.r == P);
        CHECK(dc.xi_characters == 8);
        CHECK(dc.root_order == 41);
        break;
    }
}
