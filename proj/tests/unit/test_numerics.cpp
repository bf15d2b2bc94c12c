#include <catch2/catch_amalgamated.hpp>

#include "lyapnet/numerics.hpp"
#include "lyapnet/rng.hpp"

using namespace lyapnet;

namespace {

Mat random_mat(int n, Rng& rng, double lo = -2.0, double hi = 2.0) {
    Mat m(n, n);
    for (double& v : m.data()) v = rng.uniform(lo, hi);
    return m;
}

double max_abs_diff(const Mat& a, const Mat& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i)
        m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

}  // namespace

TEST_CASE("qr_decompose identity") {
    const auto f = qr_decompose(Mat::identity(3));
    CHECK(max_abs_diff(f.q, Mat::identity(3)) < 1e-15);
    CHECK(max_abs_diff(f.r, Mat::identity(3)) < 1e-15);
}

TEST_CASE("qr_decompose column swap matrix") {
    // Hand Gram-Schmidt: columns are already orthonormal, so Q is the input
    // itself once the diagonal of R is made nonnegative, and R is identity.
    const Mat a = Mat::from_rows({{0, 1}, {1, 0}});
    const auto f = qr_decompose(a);
    CHECK(max_abs_diff(f.q, a) < 1e-12);
    CHECK(max_abs_diff(f.r, Mat::identity(2)) < 1e-12);
}

TEST_CASE("qr_decompose reconstructs seeded 4x4") {
    Rng rng(42);
    const Mat a = random_mat(4, rng);
    const auto f = qr_decompose(a);
    CHECK(frobenius_norm(a) > 0.0);
    Mat qr = matmul(f.q, f.r);
    double rel = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) rel += std::pow(qr.data()[i] - a.data()[i], 2);
    CHECK(std::sqrt(rel) / frobenius_norm(a) < 1e-10);
}

TEST_CASE("qr_decompose rejects non-square input") {
    CHECK_THROWS_AS(qr_decompose(Mat(2, 3)), ValidationError);
}

TEST_CASE("qr_decompose allows rank-deficient input") {
    Mat a(3, 3);  // zero matrix
    const auto f = qr_decompose(a);
    CHECK(max_abs_diff(f.r, Mat(3, 3)) < 1e-15);
}

TEST_CASE("qr_decompose properties on random matrices up to 8x8") {
    Rng rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng.uniform_int(0, 7));
        const Mat a = random_mat(n, rng);
        const auto f = qr_decompose(a);

        const Mat qtq = matmul(transpose(f.q), f.q);
        double orth = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) orth += std::pow(qtq(i, j) - (i == j ? 1.0 : 0.0), 2);
        CHECK(std::sqrt(orth) < 1e-10);

        const Mat qr = matmul(f.q, f.r);
        double rel = 0.0;
        for (std::size_t i = 0; i < a.data().size(); ++i)
            rel += std::pow(qr.data()[i] - a.data()[i], 2);
        CHECK(std::sqrt(rel) / std::max(frobenius_norm(a), 1e-300) < 1e-10);

        for (int i = 0; i < n; ++i) {
            CHECK(f.r(i, i) >= 0.0);
            for (int j = 0; j < i; ++j) CHECK(std::abs(f.r(i, j)) < 1e-12);
        }
    }
}

TEST_CASE("spectral_norm identity and diagonal") {
    CHECK(spectral_norm(Mat::identity(5)) == Catch::Approx(1.0).epsilon(1e-10));
    const Mat d = Mat::from_rows({{3, 0}, {0, -5}});
    CHECK(spectral_norm(d) == Catch::Approx(5.0).epsilon(1e-10));
}

TEST_CASE("spectral_norm of unit shear is the golden ratio") {
    const Mat a = Mat::from_rows({{1, 1}, {0, 1}});
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    CHECK(spectral_norm(a) == Catch::Approx(phi).epsilon(1e-9));
    CHECK(spectral_norm(a) == Catch::Approx(1.618034).margin(1e-6));
}

TEST_CASE("spectral_norm dominates probe vectors") {
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + static_cast<int>(rng.uniform_int(0, 6));
        const Mat a = random_mat(n, rng);
        const double sigma = spectral_norm(a);
        for (int p = 0; p < 20; ++p) {
            Vec v(n);
            for (double& x : v) x = rng.uniform(-1.0, 1.0);
            const double vn = norm2(v);
            if (vn == 0.0) continue;
            CHECK(sigma + 1e-9 >= norm2(matvec(a, v)) / vn);
        }
    }
}

TEST_CASE("finite_diff_jacobian of identity") {
    const auto id = [](const Vec& x) { return x; };
    const Mat j = finite_diff_jacobian(id, {0.4, -1.2, 2.0}, 1e-5);
    CHECK(max_abs_diff(j, Mat::identity(3)) < 1e-10);
}

TEST_CASE("finite_diff_jacobian of (x0^2, x1)") {
    const auto f = [](const Vec& x) { return Vec{x[0] * x[0], x[1]}; };
    const Mat j = finite_diff_jacobian(f, {3.0, 1.0}, 1e-5);
    CHECK(max_abs_diff(j, Mat::from_rows({{6, 0}, {0, 1}})) < 1e-6);
}

TEST_CASE("finite_diff_jacobian exact on affine maps") {
    Rng rng(3);
    const Mat a = random_mat(4, rng);
    const Vec b{0.1, -0.2, 0.3, 0.7};
    const auto f = [&](const Vec& x) {
        Vec y = matvec(a, x);
        for (int i = 0; i < 4; ++i) y[i] += b[i];
        return y;
    };
    for (double h : {1e-3, 1e-5, 1e-7}) {
        const Mat j = finite_diff_jacobian(f, {0.5, 1.5, -0.5, 2.0}, h);
        CHECK(max_abs_diff(j, a) < 1e-9);
    }
}

TEST_CASE("invert round-trips and rejects singular input") {
    Rng rng(19);
    Mat a = random_mat(3, rng);
    a(0, 0) += 3.0;  // keep it comfortably non-singular
    a(1, 1) += 3.0;
    a(2, 2) += 3.0;
    const Mat ainv = invert(a);
    CHECK(max_abs_diff(matmul(a, ainv), Mat::identity(3)) < 1e-10);

    Mat s(2, 2);
    s(0, 0) = 1.0;
    s(0, 1) = 2.0;
    s(1, 0) = 2.0;
    s(1, 1) = 4.0;
    CHECK_THROWS_AS(invert(s), NumericError);
}
