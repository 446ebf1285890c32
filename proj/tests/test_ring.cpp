#include <doctest.h>

#include <random>

#include "hmf/context.hpp"

using namespace hmf;

namespace {

Element random_int(const Field* F, std::mt19937_64& rng, long r = 30) {
    std::uniform_int_distribution<long> d(-r, r);
    return Element(F, d(rng), d(rng));
}

}  // namespace

TEST_CASE("cyclotomic coefficients") {
    const Field* F = Field::get(5);
    for (long N : {1L, 2L, 3L, 4L, 5L, 6L, 12L, 15L}) {
        CoeffRing R = CoeffRing::exact(F, N);
        CHECK(R.eq(R.zeta_pow(N), R.one()));
        CHECK(R.eq(R.zeta_pow(-1), R.zeta_pow(N - 1)));
        for (long q : {2L, 3L, 5L})
            if (N % q == 0) CHECK(!R.eq(R.zeta_pow(N / q), R.one()));
        // sum of primitive roots of unity is the Moebius function
        if (N == 15) {
            Coeff s = R.zero();
            for (long k = 1; k < N; ++k)
                if (std::gcd(k, N) == 1) s = R.add(s, R.zeta_pow(k));
            CHECK(R.eq(s, R.one()));
        }
    }
    CoeffRing T = CoeffRing::torsion(primes_above(F, 11)[0], 2, 5);
    CHECK(T.eq(T.zeta_pow(5), T.one()));
    CHECK(!T.eq(T.zeta_pow(1), T.one()));
    CHECK_THROWS_AS(CoeffRing::torsion(primes_above(F, 5)[0], 1, 5), DomainError);
}

TEST_CASE("theta maps are ring homomorphisms") {
    std::mt19937_64 rng(7);
    const Field* F = Field::get(5);
    std::vector<CoeffRing> rings{CoeffRing::exact(F, 3)};
    for (long ell : {3L, 5L, 11L})
        for (const auto& P : primes_above(F, ell)) rings.push_back(CoeffRing::torsion(P, 2, 1));
    rings.push_back(CoeffRing::torsion(primes_above(Field::get(3), 2)[0], 3, 3));
    for (const auto& R : rings) {
        const Field* K = R.field();
        for (int it = 0; it < 100; ++it) {
            Element x = random_int(K, rng), y = random_int(K, rng);
            CHECK(R.eq(R.theta1(x + y), R.add(R.theta1(x), R.theta1(y))));
            CHECK(R.eq(R.theta1(x * y), R.mul(R.theta1(x), R.theta1(y))));
            CHECK(R.eq(R.theta2(x * y), R.mul(R.theta2(x), R.theta2(y))));
            CHECK(R.eq(R.mul(R.theta1(x), R.theta2(x)), R.from_rational(norm(x))));
        }
    }
}

TEST_CASE("torsion model at a split prime") {
    const Field* F = Field::get(5);
    PrimeIdeal P = primes_above(F, 11)[0];
    CoeffRing R = CoeffRing::torsion(P, 2, 1);
    CHECK(R.dim() == 1);
    Integer w = R.theta1(F->omega())[0].get_num();
    CHECK(mod(w * w - w - 1, 121) == 0);
    CHECK(P.P.contains(F->omega() - F->from(mod(w, 11))));
    CHECK(R.is_zero(R.theta1(F->from(121))));
    CHECK(!R.is_zero(R.theta1(F->from(11))));
    CHECK_THROWS_AS(R.from_rational(frac(1, 11)), DomainError);
    CHECK(R.eq(R.mul(R.from_rational(frac(1, 2)), R.from_int(2)), R.one()));
    // 1/conj(pi) is integral at P
    Element pi = find_uniformizer(P);
    Coeff a = R.theta1(inverse(conj(pi)));
    CHECK(R.eq(R.mul(a, R.theta1(conj(pi))), R.one()));
    CHECK_THROWS_AS(R.theta1(inverse(pi)), DomainError);
}

TEST_CASE("character values") {
    const Field* F = Field::get(5);
    CoeffRing R = CoeffRing::exact(F, 4);
    CharValue v{3, F->from(2) + F->omega()};
    CHECK(R.eq(R.mul(to_ring(R, v), to_ring(R, inverse(v))), R.one()));
    CHECK(R.eq(to_ring(R, pow(v, 4)), R.theta1(pow(v.y, 4))));
}

TEST_CASE("context transporters") {
    std::mt19937_64 rng(3);
    for (long D : {5L, 3L, 10L}) {
        const Field* F = Field::get(D);
        for (auto type : {LevelType::U1, LevelType::Full}) {
            for (long nn : {1L, 7L}) {
                Level lv{type, FracIdeal::rational(F, nn)};
                auto ctx = Context::create(F, lv, Weight{2, 2, 0, 0}, CoeffRing::exact(F), 11);
                if (type == LevelType::U1) CHECK(ctx->rep_count() == ctx->cusp_classes().order());
                for (int it = 0; it < 30; ++it) {
                    Element g = random_int(F, rng, 12);
                    if (g.is_zero() || !coprime(FracIdeal::principal(g), 11 * nn)) continue;
                    FracIdeal a = FracIdeal::principal(g) * ctx->reps()[it % ctx->rep_count()].a;
                    Element r = ctx->lift_residue(F->from(1 + it % 3));
                    if (!ctx->ray_classes().residues().is_unit(ctx->ray_classes().residues().reduce(r))) continue;
                    IdeleRep t{a, r};
                    Transport tr = ctx->transporter(t);
                    const IdeleRep& ti = ctx->reps()[tr.index];
                    CHECK(is_totally_positive(tr.alpha));
                    CHECK(FracIdeal::principal(tr.alpha) * ti.a == a);
                    if (type == LevelType::Full) {
                        const auto& Rn = ctx->ray_classes().residues();
                        CHECK(Rn.reduce(tr.alpha * ti.r) == Rn.reduce(r));
                    }
                }
            }
        }
    }
}

TEST_CASE("context hypotheses and characters") {
    const Field* F = Field::get(5);
    Level lv{LevelType::Full, FracIdeal::rational(F, 7)};
    CHECK_THROWS_AS(Context::create(F, lv, Weight{2, 4, 0, 0}, CoeffRing::exact(F), 11), DomainError);
    CHECK_NOTHROW(Context::create(F, lv, Weight{2, 4, 0, -1}, CoeffRing::exact(F), 11));
    CHECK_THROWS_AS(Context::create(F, Level{LevelType::U1, FracIdeal::rational(F, 11)}, Weight{}, CoeffRing::exact(F), 11),
                    DomainError);

    std::mt19937_64 rng(11);
    for (Weight w : {Weight{2, 2, 0, 0}, Weight{4, 4, 0, 0}, Weight{3, 5, 1, 0}}) {
        auto ctx = Context::create(F, lv, w, CoeffRing::exact(F), 11)->with_default_character();
        const CoeffRing& R = ctx->ring;
        for (int it = 0; it < 40; ++it) {
            Element g = random_int(F, rng, 15);
            if (g.is_zero() || !coprime(FracIdeal::principal(g), 77)) continue;
            g = g * g;
            if (!is_totally_positive(g)) continue;
            // omega((g), g) = chi_{k+2m-2}(g)
            CharValue o = ctx->omega({FracIdeal::principal(g), g});
            CHECK(R.eq(to_ring(R, o), ctx->chi_ring(g, w.k1 + 2 * w.m1 - 2, w.k2 + 2 * w.m2 - 2)));
        }
    }
    auto ctx = Context::create(F, lv, Weight{}, CoeffRing::exact(F), 11);
    CHECK_THROWS_AS(ctx->psi(FracIdeal::unit(F)), DomainError);
    std::vector<CharValue> bad(ctx->ray_classes().generators().size(), CharValue{0, F->from(3)});
    if (!bad.empty()) CHECK_THROWS_AS(ctx->with_character(bad), DomainError);
}

TEST_CASE("normalized uniformizers") {
    for (long D : {5L, 3L, 2L}) {
        const Field* F = Field::get(D);
        for (long ell : {3L, 5L, 11L, 2L}) {
            for (long nn : {1L, 7L, 13L}) {
                if (nn == ell) continue;
                Level lv{LevelType::U1, FracIdeal::rational(F, nn)};
                auto ctx = Context::create(F, lv, Weight{}, CoeffRing::exact(F), ell);
                for (const auto& P : primes_above(F, ell)) {
                    Element pi = ctx->normalized_uniformizer(P);
                    CHECK(is_totally_positive(pi));
                    CHECK(valuation(P, pi) == 1);
                    CHECK(ctx->ray_classes().residues().reduce(pi) == ctx->ray_classes().residues().one());
                    CHECK(coprime(FracIdeal::principal(pi) / P.P, ell));
                }
            }
        }
    }
}
