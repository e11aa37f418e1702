#include <doctest.h>

#include <cmath>
#include <complex>

#include "ofdmlab/numerics.hpp"
#include "ofdmlab/rng.hpp"

#include "oracles.hpp"

using namespace ofdmlab;

namespace {

cvec random_cvec(Rng& rng, std::size_t n) {
    cvec v(n);
    for (auto& z : v) z = rng.complex_gaussian(1.0);
    return v;
}

} // namespace

TEST_SUITE("numerics") {

TEST_CASE("idft of a DC impulse is a constant") {
    cvec spectrum(8, cplx(0.0, 0.0));
    spectrum[0] = cplx(1.0, 0.0);
    const cvec out = idft(spectrum);
    REQUIRE(out.size() == 8);
    for (const cplx& v : out) {
        CHECK(std::abs(v - cplx(0.125, 0.0)) < 1e-15);
    }
}

TEST_CASE("idft of a single tone is the sampled exponential") {
    cvec spectrum(8, cplx(0.0, 0.0));
    spectrum[3] = cplx(1.0, 0.0);
    const cvec out = idft(spectrum);
    for (std::size_t m = 0; m < 8; ++m) {
        const double ang = 2.0 * oracles::kPi * 3.0 * static_cast<double>(m) / 8.0;
        const cplx want = cplx(std::cos(ang), std::sin(ang)) / 8.0;
        CHECK(std::abs(out[m] - want) < 1e-15);
    }
}

TEST_CASE("dft of a constant is a DC impulse") {
    cvec signal(8, cplx(0.125, 0.0));
    const cvec out = dft(signal);
    CHECK(std::abs(out[0] - cplx(1.0, 0.0)) < 1e-14);
    for (std::size_t k = 1; k < 8; ++k) {
        CHECK(std::abs(out[k]) < 1e-14);
    }
}

TEST_CASE("dft of zero is zero") {
    const cvec out = dft(cvec(16, cplx(0.0, 0.0)));
    for (const cplx& v : out) CHECK(std::abs(v) == 0.0);
}

TEST_CASE("transforms reject empty input") {
    CHECK_THROWS_AS(dft(cvec{}), std::invalid_argument);
    CHECK_THROWS_AS(idft(cvec{}), std::invalid_argument);
}

TEST_CASE("dft matches the naive summation") {
    Rng rng(11);
    // 48 exercises the generic path, 64 the radix-2 one
    for (std::size_t n : {5, 48, 64}) {
        const cvec x = random_cvec(rng, n);
        const cvec got = dft(x);
        const cvec want = oracles::naive_dft(x);
        CHECK(oracles::max_abs_diff(got, want) < 1e-10 * oracles::max_abs(want));
    }
}

TEST_CASE("idft matches the naive summation") {
    Rng rng(12);
    for (std::size_t n : {7, 32}) {
        const cvec x = random_cvec(rng, n);
        const cvec got = idft(x);
        const cvec want = oracles::naive_idft(x);
        CHECK(oracles::max_abs_diff(got, want) < 1e-12);
    }
}

TEST_CASE("dft(idft(x)) round trip") {
    Rng rng(13);
    for (std::size_t n : {8, 16, 64, 2048}) {
        const cvec x = random_cvec(rng, n);
        const cvec back = dft(idft(x));
        CHECK(oracles::max_abs_diff(back, x) < 1e-12 * oracles::max_abs(x));
    }
}

TEST_CASE("Parseval under the 1/M synthesis scaling") {
    Rng rng(14);
    for (std::size_t n : {8, 64, 2048}) {
        const cvec x = random_cvec(rng, n);
        const cvec t = idft(x);
        double time_e = 0.0, freq_e = 0.0;
        for (const cplx& v : t) time_e += std::norm(v);
        for (const cplx& v : x) freq_e += std::norm(v);
        freq_e /= static_cast<double>(n);
        CHECK(std::abs(time_e - freq_e) < 1e-10 * freq_e);
    }
}

TEST_CASE("solve_linear on the identity returns the rhs") {
    const CMatrix h = CMatrix::identity(3);
    const cvec rhs = {cplx(1.0, 2.0), cplx(-3.0, 0.5), cplx(0.0, -1.0)};
    const cvec v = solve_linear(h, rhs);
    CHECK(oracles::max_abs_diff(v, rhs) < 1e-15);
}

TEST_CASE("solve_linear on a diagonal system") {
    CMatrix h(2, 2);
    h.at(0, 0) = cplx(2.0, 0.0);
    h.at(1, 1) = cplx(4.0, 0.0);
    const cvec v = solve_linear(h, {cplx(2.0, 0.0), cplx(4.0, 0.0)});
    CHECK(std::abs(v[0] - cplx(1.0, 0.0)) < 1e-15);
    CHECK(std::abs(v[1] - cplx(1.0, 0.0)) < 1e-15);
}

TEST_CASE("solve_linear residual bound on random Hermitian-positive systems") {
    Rng rng(15);
    for (int trial = 0; trial < 1000; ++trial) {
        // B^H B + I is Hermitian and comfortably conditioned
        CMatrix b(4, 4);
        for (std::size_t i = 0; i < b.data.size(); ++i) b.data[i] = rng.complex_gaussian(1.0);
        CMatrix h = matmul(adjoint(b), b);
        for (std::size_t i = 0; i < 4; ++i) h.at(i, i) += cplx(1.0, 0.0);

        const cvec rhs = random_cvec(rng, 4);
        const cvec v = solve_linear(h, rhs);
        const cvec hv = matvec(h, v);

        double resid = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < 4; ++i) {
            resid += std::norm(hv[i] - rhs[i]);
            scale += std::norm(rhs[i]);
        }
        CHECK(std::sqrt(resid) <= 1e-9 * std::sqrt(scale));
    }
}

TEST_CASE("solve_linear rejects singular systems and names the matrix") {
    CMatrix h(2, 2);
    h.at(0, 0) = cplx(1.0, 0.0);
    h.at(0, 1) = cplx(1.0, 0.0);
    h.at(1, 0) = cplx(1.0, 0.0);
    h.at(1, 1) = cplx(1.0, 0.0);
    try {
        solve_linear(h, {cplx(1.0, 0.0), cplx(2.0, 0.0)}, "test gram");
        FAIL("expected SingularMatrixError");
    } catch (const SingularMatrixError& e) {
        CHECK(std::string(e.what()).find("test gram") != std::string::npos);
    }
}

TEST_CASE("invert round trip") {
    Rng rng(16);
    CMatrix b(3, 3);
    for (auto& z : b.data) z = rng.complex_gaussian(1.0);
    for (std::size_t i = 0; i < 3; ++i) b.at(i, i) += cplx(3.0, 0.0);
    const CMatrix inv = invert(b);
    const CMatrix prod = matmul(b, inv);
    const CMatrix eye = CMatrix::identity(3);
    for (std::size_t i = 0; i < prod.data.size(); ++i) {
        CHECK(std::abs(prod.data[i] - eye.data[i]) < 1e-12);
    }
}

TEST_CASE("matmul against the triple loop") {
    Rng rng(17);
    CMatrix a(3, 4), b(4, 2);
    for (auto& z : a.data) z = rng.complex_gaussian(1.0);
    for (auto& z : b.data) z = rng.complex_gaussian(1.0);
    const CMatrix got = matmul(a, b);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            cplx want(0.0, 0.0);
            for (std::size_t k = 0; k < 4; ++k) want += a.at(i, k) * b.at(k, j);
            CHECK(std::abs(got.at(i, j) - want) < 1e-13);
        }
    }
}

TEST_CASE("matvec identities") {
    Rng rng(18);
    const cvec v = random_cvec(rng, 5);
    const cvec same = matvec(CMatrix::identity(5), v);
    CHECK(oracles::max_abs_diff(same, v) == 0.0);
    const cvec zero = matvec(CMatrix(5, 5), v);
    CHECK(oracles::max_abs(zero) == 0.0);
}

TEST_CASE("matmul rejects mismatched shapes") {
    CHECK_THROWS_AS(matmul(CMatrix(2, 3), CMatrix(2, 3)), std::invalid_argument);
    CHECK_THROWS_AS(matvec(CMatrix(2, 3), cvec(2)), std::invalid_argument);
}

TEST_CASE("integer powers") {
    CHECK(pow_int(0.0, 0) == 1.0);
    CHECK(pow_int(-3.0, 3) == -27.0);
    CHECK(pow_int(2.0, 10) == 1024.0);
    const cplx j(0.0, 1.0);
    CHECK(std::abs(cpow_int(j, 2) - cplx(-1.0, 0.0)) < 1e-15);
    CHECK(std::abs(cpow_int(j, -1) - cplx(0.0, -1.0)) < 1e-15);
    CHECK(std::abs(cpow_int(cplx(2.0, 0.0), -2) - cplx(0.25, 0.0)) < 1e-15);
}

}
