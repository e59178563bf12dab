#include <doctest.h>

#include <stdexcept>

#include <random>

#include "flashlat/hilbert.hpp"

using namespace flashlat;

namespace {

CutSpace small_space(int particles = 2) {
    const Strip strip{4, 6};
    return CutSpace{flat_cut(2, strip), particles, 2};
}

Mat random_matrix(long dim, std::mt19937_64& rng) {
    Mat m(dim, dim);
    for (long i = 0; i < dim; ++i) {
        for (long j = 0; j < dim; ++j) {
            m(i, j) = std::complex<double>(static_cast<double>(rng() % 1000) / 500.0 - 1.0,
                                           static_cast<double>(rng() % 1000) / 500.0 - 1.0);
        }
    }
    return m;
}

}  // namespace

TEST_CASE("basis indexing round trip") {
    const CutSpace space = small_space();
    CHECK(space.dim() == 64);
    for (long b = 0; b < space.dim(); ++b) {
        long rebuilt = b;
        for (int slot = 0; slot < space.particles; ++slot) {
            rebuilt = space.with_slot_index(rebuilt, slot, space.slot_index(b, slot));
        }
        CHECK(rebuilt == b);
    }
    // Slot 0 is most significant.
    CHECK(space.slot_index(8 * 3 + 5, 0) == 3);
    CHECK(space.slot_index(8 * 3 + 5, 1) == 5);
}

TEST_CASE("position projectors form a PVM") {
    const CutSpace space = small_space();
    const Mat identity = Mat::Identity(space.dim(), space.dim());

    CHECK(operator_norm(position_projector(space, 0, {0, 1, 2, 3}).matrix - identity) == 0.0);
    CHECK(operator_norm(position_projector(space, 1, {}).matrix) == 0.0);

    const Mat a = position_projector(space, 0, {0, 1}).matrix;
    const Mat b = position_projector(space, 0, {2, 3}).matrix;
    CHECK(operator_norm(a * b) == 0.0);
    CHECK(operator_norm(a + b - identity) == 0.0);

    for (int slot = 0; slot < 2; ++slot) {
        const Mat p = position_projector(space, slot, {1, 3}).matrix;
        CHECK(operator_norm(p * p - p) <= 1e-12);
        CHECK(operator_norm(p - p.adjoint()) <= 1e-12);
    }
}

TEST_CASE("multiplication operators") {
    const CutSpace space = small_space();
    const Mat identity = Mat::Identity(space.dim(), space.dim());
    CHECK(operator_norm(mult_operator(space, 0, [](int) { return 1.0; }).matrix - identity) ==
          0.0);

    const auto indicator = [](int x) { return x == 1 || x == 2 ? 1.0 : 0.0; };
    CHECK(operator_norm(mult_operator(space, 1, indicator).matrix -
                        position_projector(space, 1, {1, 2}).matrix) == 0.0);

    const auto f = [](int x) { return 0.25 * x - 1.0; };
    const auto g = [](int x) { return 1.0 / (1.0 + x); };
    const Mat pf = mult_operator(space, 0, f).matrix;
    const Mat pg = mult_operator(space, 0, g).matrix;
    const Mat pfg = mult_operator(space, 0, [&](int x) { return f(x) * g(x); }).matrix;
    CHECK(operator_norm(pf * pg - pfg) <= 1e-12);

    // Same or different slots, multiplication operators always commute.
    const Mat other = mult_operator(space, 1, g).matrix;
    CHECK(operator_norm(pf * other - other * pf) == 0.0);
}

TEST_CASE("hermitian square root") {
    const CutSpace space = small_space(1);

    SUBCASE("identity and diagonal") {
        const Mat identity = Mat::Identity(space.dim(), space.dim());
        CHECK(operator_norm(hermitian_sqrt(DenseOp{identity, space, space}).matrix - identity) <=
              1e-12);
        Eigen::VectorXd d(space.dim());
        for (long i = 0; i < space.dim(); ++i) d(i) = (i % 2 == 0) ? 4.0 : 9.0;
        const Mat diag = d.cast<std::complex<double>>().asDiagonal();
        const Mat root = hermitian_sqrt(DenseOp{diag, space, space}).matrix;
        for (long i = 0; i < space.dim(); ++i) {
            CHECK(std::abs(root(i, i) - ((i % 2 == 0) ? 2.0 : 3.0)) <= 1e-12);
        }
    }

    SUBCASE("random PSD operators") {
        std::mt19937_64 rng(41);
        for (int trial = 0; trial < 10; ++trial) {
            const Mat b = random_matrix(space.dim(), rng);
            const Mat psd = b.adjoint() * b;
            const Mat root = hermitian_sqrt(DenseOp{psd, space, space}).matrix;
            CHECK(operator_norm(root * root - psd) <= 1e-8);
            CHECK(operator_norm(root - root.adjoint()) <= 1e-10);
        }
    }

    SUBCASE("significantly negative spectrum is rejected") {
        Mat bad = Mat::Identity(space.dim(), space.dim());
        bad(0, 0) = -0.5;
        CHECK_THROWS_AS(hermitian_sqrt(DenseOp{bad, space, space}), std::runtime_error);
    }
}
