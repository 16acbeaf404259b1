#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vhs/hyperkahler.hpp"

#include <cmath>

using namespace vhs;

namespace {
MultiIndex mono(std::vector<int> e) { return MultiIndex(std::move(e)); }
}

TEST_CASE("model construction bounds") {
    CHECK_THROWS_AS(build_hk_model(0, 2), Error);
    CHECK_THROWS_AS(build_hk_model(1, 1), Error);
    HKModel m = build_hk_model(2, 3);
    CHECK(m.num_vars == 2);
    CHECK(m.half_dim == 3);
    CHECK(m.vhs.dim() == 4);
}

TEST_CASE("degree-two family row") {
    HKModel m = build_hk_model(1, 2);
    TruncatedSeries f = hk20_family(m).coeffs;
    MultiIndex z = mono({0});
    CHECK(f.coeff(z, z)(0, 0) == Scalar(1));
    CHECK(f.coeff(mono({1}), z)(0, 1) == Scalar(1));
    CHECK(f.coeff(mono({2}), z)(0, 2) == rat(1, 2));
    CHECK(f.coeff(mono({3}), z).is_zero());
    Matrix v = f.eval({Scalar(0.6)});
    CHECK(std::abs(v(0, 2).to_complex().real() - 0.18) < 1e-15);
}

TEST_CASE("wedge expansion coefficients are inverse factorials") {
    HKModel m = build_hk_model(1, 2);
    WedgeExpansionTable t = hk2n0_coefficients(m);
    CHECK(t.at(mono({0})) == Scalar(1));
    CHECK(t.at(mono({1})) == Scalar(1));
    CHECK(t.at(mono({2})) == rat(1, 2));
    CHECK(t.at(mono({3})) == rat(1, 6));
    CHECK(t.at(mono({4})) == rat(1, 24));
    CHECK(t.count(mono({5})) == 0);  // terminates at 2n

    HKModel m2 = build_hk_model(2, 3);
    WedgeExpansionTable t2 = hk2n0_coefficients(m2);
    CHECK(t2.at(mono({2, 1})) == rat(1, 2));
    CHECK(t2.at(mono({3, 3})) == rat(1, 36));
    CHECK(t2.count(mono({4, 3})) == 0);
    int total = 0;
    for (const auto& [idx, val] : t2) {
        CHECK(idx.order() <= 2 * m2.half_dim);
        Scalar want = Scalar(1) / idx.factorial();
        CHECK(val == want);
        ++total;
    }
    CHECK(total == 28);  // exponent pairs with e1 + e2 <= 6
}

TEST_CASE("membership scalars and verdicts") {
    HKModel m = build_hk_model(1, 2);
    HKMembership at0 = hc_membership(m, {Scalar(0)});
    CHECK(at0.verdict == HodgeRiemannVerdict::in_D);
    CHECK(at0.positivity_squared == Scalar(1));

    HKMembership near = hc_membership(m, {Scalar(0.99)});
    CHECK(near.verdict == HodgeRiemannVerdict::in_D);
    double x = 0.99, want = 1.0 - x * x + 0.25 * x * x * x * x;
    CHECK(std::abs(near.positivity_squared.to_complex().real() - want) < 1e-12);

    // beyond the coordinate disk both relations still verify; the unsquared
    // diagnostic scalar flips sign there
    HKMembership beyond = hc_membership(m, {Scalar(2)});
    CHECK(beyond.verdict == HodgeRiemannVerdict::in_D);
    CHECK(beyond.positivity_unsquared.to_complex().real() < 0);
    CHECK(beyond.positivity_squared == Scalar(1));
}

TEST_CASE("membership verdict tracks the squared scalar inside the disk") {
    HKModel m = build_hk_model(1, 2);
    for (int k = -7; k <= 7; ++k) {
        Scalar tau = rat(k, 5);
        double t2 = std::abs(tau.to_complex().real());
        if (t2 * t2 >= 2.0) continue;
        HKMembership r = hc_membership(m, {tau});
        bool positive = r.positivity_squared.to_complex().real() > 0;
        CHECK(positive == (r.verdict == HodgeRiemannVerdict::in_D));
    }
}

TEST_CASE("direction matrices square to the corner and commute with the pairing") {
    for (int n = 1; n <= 3; ++n) {
        HKModel m = build_hk_model(n, 2);
        HKEMatrices e = hk_E_matrices(m);
        CHECK(e.e.size() == static_cast<std::size_t>(n));
        CHECK(e.products_diagonal);
        CHECK(e.exponential_matches);
        CHECK(e.q_compatible);
    }
}

TEST_CASE("exponential row coincides with the family") {
    HKModel m1 = build_hk_model(1, 2);
    CHECK(coordinate_coincidence(m1, {rat(3, 10)}) == 0.0);
    CHECK(coordinate_coincidence(m1, {rat(1, 2)}) == 0.0);
    HKModel m2 = build_hk_model(2, 2);
    CHECK(coordinate_coincidence(m2, {rat(1, 4), rat(-1, 3)}) == 0.0);
    HKModel m3 = build_hk_model(3, 3);
    CHECK(coordinate_coincidence(m3, {rat(1, 8), rat(1, 7), rat(-2, 9)}) == 0.0);
}

TEST_CASE("coincidence refuses points that fail the membership check") {
    HKModel m = build_hk_model(2, 2);
    // on the boundary circle the positivity degenerates
    std::vector<Scalar> tau{Scalar(1), Scalar(1)};
    CHECK_THROWS_AS(coordinate_coincidence(m, tau), Error);
}
