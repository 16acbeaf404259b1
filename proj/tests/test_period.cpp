#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vhs/period.hpp"

using namespace vhs;

TEST_CASE("pairing compatibility of the interior-product matrices") {
    VHSModel m = build_cy3_model({Matrix{{rat(2, 3)}}});
    QCompatResult r = q_compat_check(m.e_matrix(0), m.polarization);
    CHECK(r.compatible);
    CHECK(r.residual == 0.0);
    CHECK_FALSE(q_compat_check(Matrix::identity(4), m.polarization).compatible);

    VHSModel hk = build_hk_vhs_model(2);
    CHECK(q_compat_check(hk.e_matrix(0), hk.polarization).compatible);
    CHECK(q_compat_check(hk.e_matrix(1), hk.polarization).compatible);
}

TEST_CASE("grading of the interior products and of diagonal maps") {
    VHSModel m = build_cy3_model({Matrix{{Scalar(1)}}});
    GradedLieElement e = grading_decompose(m.e_matrix(0), m.hodge);
    CHECK(e.pure(-1));
    CHECK_FALSE(e.pure(0));
    Matrix d(4, 4);
    for (std::size_t i = 0; i < 4; ++i) d(i, i) = Scalar(static_cast<int>(i) + 1);
    CHECK(grading_decompose(d, m.hodge).pure(0));

    VHSModel hk = build_hk_vhs_model(1);
    Matrix e2 = hk.e_matrix(0) * hk.e_matrix(0);
    CHECK(grading_decompose(e2, hk.hodge).pure(-2));
}

TEST_CASE("grading is additive under the bracket") {
    Matrix c1{{Scalar(1), Scalar(0)}, {Scalar(0), rat(1, 2)}};
    Matrix c2{{Scalar(0), rat(1, 2)}, {rat(1, 2), Scalar(0)}};
    VHSModel m = build_cy3_model({c1, c2});
    Matrix d(6, 6);
    for (std::size_t i = 0; i < 6; ++i) d(i, i) = Scalar(static_cast<int>(i % 3));
    GradedLieElement b = grading_decompose(commutator(m.e_matrix(0), d), m.hodge);
    CHECK(b.pure(-1));  // [g^{-1,1}, g^{0,0}] stays in g^{-1,1}
}

TEST_CASE("nilpotent exponentials") {
    VHSModel hk = build_hk_vhs_model(1);
    Matrix x = Scalar(2) * hk.e_matrix(0);
    Matrix ex = exp_nilpotent(x);
    Matrix want{{Scalar(1), Scalar(2), Scalar(2)},
                {Scalar(0), Scalar(1), Scalar(2)},
                {Scalar(0), Scalar(0), Scalar(1)}};
    CHECK(ex == want);
    CHECK(exp_nilpotent(x) * exp_nilpotent(Scalar(-1) * x) == Matrix::identity(3));

    VHSModel m = build_cy3_model({Matrix{{rat(1, 3)}}});
    Matrix a = m.e_matrix(0), b = Scalar(3) * m.e_matrix(0);
    CHECK(exp_nilpotent(a) * exp_nilpotent(b) == exp_nilpotent(a + b));
}

TEST_CASE("abelian check distinguishes symmetric tensors from handcrafted ones") {
    Matrix c1{{Scalar(1), Scalar(0)}, {Scalar(0), rat(1, 2)}};
    Matrix c2{{Scalar(0), rat(1, 2)}, {rat(1, 2), Scalar(0)}};
    VHSModel m = build_cy3_model({c1, c2});
    AbelianCheck ok = abelian_check({m.e_matrix(0), m.e_matrix(1)});
    CHECK(ok.abelian);
    CHECK(ok.max_commutator == 0.0);

    // break the symmetry of the middle block by hand
    Matrix bad = m.e_matrix(1);
    bad(1, 3) += Scalar(1);
    AbelianCheck no = abelian_check({m.e_matrix(0), bad});
    CHECK_FALSE(no.abelian);
    CHECK(no.max_commutator > 0.5);
}

TEST_CASE("orbit filtration at zero parameters is the reference") {
    VHSModel m = build_cy3_model({Matrix{{rat(1, 2)}}});
    NilpotentOrbitPoint p = orbit_filtration({m.e_matrix(0)}, {Scalar(0)}, m.polarization,
                                             m.hodge);
    CHECK(p.matrix == Matrix::identity(4));
    CHECK(p.filtration.basis_matrix == Matrix::identity(4));
    CHECK(p.verdict == HodgeRiemannVerdict::in_D);
}

TEST_CASE("orbit filtration along the hyperkahler line") {
    VHSModel hk = build_hk_vhs_model(1);
    NilpotentOrbitPoint in = orbit_filtration({hk.e_matrix(0)}, {rat(1, 2)},
                                              hk.polarization, hk.hodge);
    CHECK(in.verdict == HodgeRiemannVerdict::in_D);
    // |t|^2 = 2 is the metric-completion boundary, yet the flag there and the
    // flags beyond it still satisfy both bilinear relations: the squared
    // pairing (1 - |t|^2/2)^2 never changes sign. The point t = 2 therefore
    // verifies as polarized even though it lies outside the coordinate disk.
    NilpotentOrbitPoint beyond = orbit_filtration({hk.e_matrix(0)}, {Scalar(2)},
                                                  hk.polarization, hk.hodge);
    CHECK(beyond.verdict == HodgeRiemannVerdict::in_D);
}

TEST_CASE("orbit filtration refuses non-commuting directions") {
    Matrix c1{{Scalar(1), Scalar(0)}, {Scalar(0), rat(1, 2)}};
    Matrix c2{{Scalar(0), rat(1, 2)}, {rat(1, 2), Scalar(0)}};
    VHSModel m = build_cy3_model({c1, c2});
    Matrix bad = m.e_matrix(1);
    bad(1, 3) += Scalar(1);
    CHECK_THROWS_AS(orbit_filtration({m.e_matrix(0), bad}, {Scalar(1), Scalar(1)},
                                     m.polarization, m.hodge),
                    Error);
}

TEST_CASE("sigma display for the one-parameter family") {
    Scalar a = rat(2, 5), t = rat(1, 3);
    VHSModel m = build_cy3_model({Matrix{{a}}});
    SigmaResult s = cy3_sigma(m, {t});
    Matrix want{{Scalar(1), t, a * t * t / Scalar(2), a * t * t * t / Scalar(6)},
                {Scalar(0), Scalar(1), a * t, a * t * t / Scalar(2)},
                {Scalar(0), Scalar(0), Scalar(1), t},
                {Scalar(0), Scalar(0), Scalar(0), Scalar(1)}};
    CHECK(s.sigma == want);
    CHECK(s.preserves_pairing);
    CHECK(s.equals_exponential);
    CHECK(s.transversal);
    REQUIRE(s.e.size() == 1);
    CHECK(s.e[0] == m.e_matrix(0));
}

TEST_CASE("sigma verdicts hold on random rational points") {
    Matrix c1{{Scalar(1), rat(1, 2)}, {rat(1, 2), Scalar(0)}};
    Matrix c2{{rat(1, 2), Scalar(0)}, {Scalar(0), Scalar(2)}};
    VHSModel m = build_cy3_model({c1, c2});
    std::vector<std::vector<Scalar>> pts{{rat(1, 2), rat(-1, 3)},
                                         {Scalar(2), Scalar(5)},
                                         {rat(7, 4), rat(-8, 3)}};
    for (const auto& t : pts) {
        SigmaResult s = cy3_sigma(m, t);
        CHECK(s.preserves_pairing);
        CHECK(s.equals_exponential);
        CHECK(s.transversal);
    }
}

TEST_CASE("sigma refuses models with strong corrections") {
    VHSModel m = build_cy3_model({Matrix{{rat(1, 2)}}});
    m.extra_coeffs[MultiIndex(std::vector<int>{2})] =
        Matrix{{Scalar(0), Scalar(0), rat(1, 3), Scalar(0)}};
    CHECK_THROWS_AS(cy3_sigma(m, {Scalar(1)}), Error);
}
