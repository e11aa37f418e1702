#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ofdmlab {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

/// Thrown when a pivot collapses during elimination. The message names the
/// matrix handed in by the caller so the failure is traceable from logs.
class SingularMatrixError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Dense row-major complex matrix. Small sizes only (constraint systems,
/// projectors up to a few hundred rows); no view/slice machinery on purpose.
struct CMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    cvec data;

    CMatrix() = default;
    CMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}

    cplx& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    const cplx& at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

    static CMatrix identity(std::size_t n);
};

/// Synthesis transform: out(m) = (1/M) * sum_k in(k) e^{+j 2 pi k m / M}.
/// Radix-2 fast path for power-of-two lengths, direct sum otherwise.
cvec idft(const cvec& spectrum);

/// Analysis transform: out(k) = sum_m in(m) e^{-j 2 pi k m / M}.
/// Exact inverse of idft under the scaling above: dft(idft(x)) == x.
cvec dft(const cvec& signal);

/// Solve h * x = rhs by partially pivoted LU with one refinement pass.
/// Intended for small Hermitian-structured systems (n <= 16). `label` names
/// the matrix in the SingularMatrixError message on pivot collapse.
cvec solve_linear(const CMatrix& h, const cvec& rhs, std::string_view label = "matrix");

/// Invert a small square matrix via solve_linear against the identity.
CMatrix invert(const CMatrix& m, std::string_view label = "matrix");

CMatrix matmul(const CMatrix& a, const CMatrix& b);
cvec matvec(const CMatrix& a, const cvec& v);

/// Conjugate transpose.
CMatrix adjoint(const CMatrix& a);

/// z^p for integer p (negative allowed), by repeated multiplication.
cplx cpow_int(cplx z, int p);

/// x^p for integer p >= 0 with the 0^0 = 1 convention used throughout.
double pow_int(double x, int p);

} // namespace ofdmlab
