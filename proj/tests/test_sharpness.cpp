#include <doctest.h>

#include <cmath>
#include <numbers>

#include "halfspace/gegenbauer.hpp"
#include "halfspace/sharpness.hpp"

using namespace hs;
constexpr double kPi = std::numbers::pi;

TEST_CASE("sharpness: constants") {
    for (double lambda : {0.5, 1.0, 1.5, 2.5}) CHECK(compute_constants(lambda, 1).beta1 == 1.0);
    const SharpnessConstants c = compute_constants(0.5, 1);
    CHECK(c.gamma_lm == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(c.r0 == doctest::Approx(std::pow(2.0, 0.25)).epsilon(1e-14));
    for (double lambda : {0.5, 1.0, 1.5, 2.5})
        for (int M = 1; M <= 6; ++M) {
            const SharpnessConstants k = compute_constants(lambda, M);
            CHECK(k.M == 2 * k.mu + k.eps0);
            CHECK(k.A > 1.0);
            CHECK(k.A < k.A_max);
            CHECK(k.A_max <= std::min({2.0, k.r0, 1.0 / std::cos(kPi / (2 * M))}) + 1e-15);
            CHECK(k.A_lambda >= std::pow((k.A + 1) / (k.A - 1), 2 * lambda));
            CHECK(k.beta2 >= std::cos(kPi / (M + 1)) - 1e-12);
            CHECK(k.beta2 <= std::cos(kPi / (2 * M)) + 1e-12);
            CHECK(k.beta1 > 0.0);
            CHECK(std::sin(k.theta0) == doctest::Approx(std::sqrt(k.A / (2 * k.A - 1))).epsilon(1e-14));
        }
    CHECK(sign_factor(1) == -1);
    CHECK(sign_factor(2) == -1);
    CHECK(sign_factor(3) == 1);
    CHECK(sign_factor(4) == 1);
}

TEST_CASE("sharpness: region membership") {
    const SharpnessConstants c = compute_constants(1.0, 2);
    const HalfSpacePoint x = HalfSpacePoint::polar(3, 5.0, 1.4, {1.0, 0.0});
    RegionSpec o1{Region::omega1, 2, c, x, OddBand::mirrored};
    const double tp = std::acos(c.beta1 / 2.5);
    CHECK(region_contains(o1, BoundaryPoint{{3 * std::cos(tp), 3 * std::sin(tp)}}));
    CHECK_FALSE(region_contains(o1, BoundaryPoint{{3.0, 0.0}}));
    RegionSpec o2{Region::omega2, 2, c, x, OddBand::mirrored};
    CHECK(region_contains(o2, BoundaryPoint{{1.5, 0.0}}));
    CHECK_FALSE(region_contains(o2, BoundaryPoint{{0.5, 0.0}}));
    RegionSpec o3{Region::omega3, 2, c, x, OddBand::mirrored};
    CHECK(region_contains(o3, BoundaryPoint{{5.0, 0.0}}));
    CHECK_FALSE(region_contains(o3, BoundaryPoint{{-5.0, 0.0}}));
    CHECK_FALSE(region_contains(o3, BoundaryPoint{{5.0 * c.A * 1.01, 0.0}}));
    CHECK_FALSE(region_contains(o3, BoundaryPoint{{5.0 / (c.A * 1.01), 0.0}}));
}

TEST_CASE("sharpness: sign checks") {
    CHECK(sign_check_phi(1.5, 1, 10000, 1).pass);
    CHECK(sign_check_phi(0.5, 2, 10000, 2).pass);
    const SignReport ctrl = sign_check_phi_control(1.5, 1, 10000, 3);
    CHECK_FALSE(ctrl.pass);
    CHECK(ctrl.min_value < 0.0);
    // The band written literally for odd M admits Theta > 0, where the sign fails.
    CHECK_FALSE(sign_check_phi(1.5, 1, 10000, 4, OddBand::literal).pass);
    const SharpnessConstants c = compute_constants(0.5, 1);
    CHECK(sign_check_KM_omega3(0.5, 1, HalfSpacePoint::polar(3, 10.0, std::max(1.45, c.theta0)), 10000, 5).pass);
    CHECK(sign_check_KM_omega3(0.5, 0, HalfSpacePoint::polar(3, 10.0, 1.45), 100, 5).pass);
}

TEST_CASE("sharpness: corner ratio is one") {
    for (double lambda : {1.0, 1.5, 2.5})
        for (int M = 1; M <= 3; ++M) {
            const double beta = std::tgamma(2 * lambda) * std::tgamma(M) / std::tgamma(2 * lambda + M);
            const double pre = std::tgamma(2 * lambda + M) / (std::tgamma(2 * lambda) * std::tgamma(M));
            CHECK(pre * beta == doctest::Approx(1.0));
            CHECK(omega3_corner_closed_form(lambda, M) == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(omega3_corner_ratio(lambda, M) == doctest::Approx(1.0).epsilon(1e-8));
        }
}

TEST_CASE("sharpness: half-ball data") {
    // int_{half disc} (1 - |y|) |y_1| = int_0^1 (1 - r) r^2 dr * int |cos| = (1/12) * 2.
    CHECK(half_ball_profile_integral(2) == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    const BoundaryData f = data_half_balls(2, {1.0}, {4.0}, 0.5, 1);
    QuadratureSpec s;
    s.abs_tol = s.rel_tol = 1e-11;
    CHECK(std::abs(integrate_data(f, [](const double*, double) { return 1.0; }, s, 0).value) ==
          doctest::Approx(1.0 / 6.0).epsilon(1e-9));
    // Continuous across the flat face.
    const double in[2] = {-1e-9, 4.3}, out[2] = {1e-9, 4.3};
    CHECK(std::abs(f.eval(in)) < 1e-8);
    CHECK(std::abs(f.eval(out)) < 1e-8);
    const auto amps = half_ball_amplitudes({1.0, 2.0}, {4.0, 16.0}, 0.5, 0.5);
    CHECK(amps[1] == doctest::Approx(0.5 * 2.0 * 16.0));
}

TEST_CASE("sharpness: super-extension data") {
    const SharpnessConstants c = compute_constants(1.5, 1);
    const BoundaryData f = data_balls_super_extension(2, {4.0, 16.0}, {0.3, 1.1}, {1.0, 2.0}, c);
    for (const auto& p : std::vector<std::vector<double>>{{4.1, 0.1}, {15.5, -0.4}, {16.2, 0.7}}) {
        const double q[2] = {-p[0], p[1]};
        CHECK(f.eval(q) == doctest::Approx(-c.A_lambda * f.eval(p.data())).epsilon(1e-14));
    }
    // Summability: f_i b_i^{n-1} / a_i^{M + 2 lambda} = 1 / (d9 i^2).
    const double d9 = 0.37;
    std::vector<double> a, b, psi;
    for (int i = 1; i <= 6; ++i) {
        a.push_back(std::pow(4.0, i));
        b.push_back(a.back() / 20.0);
        psi.push_back(std::pow(a.back(), 1 + 3.0) * std::pow(b.back(), -3.0) / (i * i));
    }
    const auto amps = super_ball_amplitudes(psi, b, 3, d9, 1.5);
    for (int i = 1; i <= 6; ++i)
        CHECK(amps[i - 1] * std::pow(b[i - 1], 2) / std::pow(a[i - 1], 4.0) ==
              doctest::Approx(1.0 / (d9 * i * i)).epsilon(1e-12));
}

TEST_CASE("sharpness: d9 from d8") {
    // Composite Simpson on int_0^1 (1 - r)(r^2 + 1)^{-lambda} r^{n-2} dr.
    const int N = 2000;
    for (int n : {3, 4})
        for (double lambda : {0.5, 1.5}) {
            double s = 0.0;
            for (int i = 0; i <= N; ++i) {
                const double r = static_cast<double>(i) / N;
                const double w = (i == 0 || i == N) ? 1 : (i % 2 ? 4 : 2);
                s += w * (1 - r) * std::pow(r * r + 1, -lambda) * std::pow(r, n - 2);
            }
            s /= 3.0 * N;
            const double sphere = n == 3 ? 2 * kPi : 4 * kPi;
            CHECK(d9_from_d8(0.8, n, lambda, 2) == doctest::Approx(0.8 * 0.5 * sphere * s).epsilon(1e-10));
        }
}

TEST_CASE("sharpness: lower bounds on two-instance prefixes") {
    QuadratureSpec s;
    s.abs_tol = 1e-10;
    s.rel_tol = 1e-8;
    const LowerBoundReport h = half_ball_lower_bound(3, 0.5, 1, 0.5, {4.0, 16.0}, {1.0, 1.0}, s, 2000, 3);
    CHECK(h.pass);
    CHECK(h.rows.size() == 2);
    const std::vector<double> a{4.0, 16.0}, b{4.0 / std::tan(1.5), 16.0 / std::tan(1.5)};
    const LowerBoundReport sb = super_ball_lower_bound(3, 0.5, 1, a, b, {1.0, 1.0}, s, 2000, 5);
    CHECK(sb.pass);
    CHECK(sb.measured_constant > 0.0);
}
