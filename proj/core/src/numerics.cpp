#include "ofdmlab/numerics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

namespace ofdmlab {

namespace {

constexpr double kPi = std::numbers::pi_v<double>;

bool is_pow2(std::size_t n) { return std::has_single_bit(n); }

// Iterative Cooley-Tukey, in place. sign = -1 for analysis, +1 for synthesis.
// No scaling here; callers apply 1/M where the convention wants it.
void fft_radix2(cvec& a, int sign)
{
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * kPi / static_cast<double>(len);
        const cplx wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cplx w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                cplx u = a[i + k];
                cplx v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

cvec transform_direct(const cvec& in, int sign)
{
    const std::size_t n = in.size();
    cvec out(n);
    for (std::size_t k = 0; k < n; ++k) {
        cplx acc(0.0, 0.0);
        for (std::size_t m = 0; m < n; ++m) {
            const double ang = sign * 2.0 * kPi * static_cast<double>(k) *
                               static_cast<double>(m) / static_cast<double>(n);
            acc += in[m] * cplx(std::cos(ang), std::sin(ang));
        }
        out[k] = acc;
    }
    return out;
}

} // namespace

CMatrix CMatrix::identity(std::size_t n)
{
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = cplx(1.0, 0.0);
    return m;
}

cvec idft(const cvec& spectrum)
{
    if (spectrum.empty()) throw std::invalid_argument("idft: empty input");
    cvec out = spectrum;
    if (is_pow2(out.size())) {
        fft_radix2(out, +1);
    } else {
        out = transform_direct(spectrum, +1);
    }
    const double scale = 1.0 / static_cast<double>(out.size());
    for (cplx& v : out) v *= scale;
    return out;
}

cvec dft(const cvec& signal)
{
    if (signal.empty()) throw std::invalid_argument("dft: empty input");
    if (is_pow2(signal.size())) {
        cvec out = signal;
        fft_radix2(out, -1);
        return out;
    }
    return transform_direct(signal, -1);
}

cvec solve_linear(const CMatrix& h, const cvec& rhs, std::string_view label)
{
    if (h.rows != h.cols)
        throw std::invalid_argument("solve_linear: matrix " + std::string(label) + " is not square");
    const std::size_t n = h.rows;
    if (rhs.size() != n)
        throw std::invalid_argument("solve_linear: rhs length does not match " + std::string(label));

    double max_entry = 0.0;
    for (const cplx& v : h.data) max_entry = std::max(max_entry, std::abs(v));

    // LU with partial pivoting on a working copy.
    CMatrix lu = h;
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        double best = std::abs(lu.at(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            const double m = std::abs(lu.at(r, col));
            if (m > best) { best = m; piv = r; }
        }
        if (best < 1e-12 * max_entry || best == 0.0) {
            throw SingularMatrixError("solve_linear: matrix '" + std::string(label) +
                                      "' is numerically singular (pivot " + std::to_string(best) + ")");
        }
        if (piv != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(lu.at(col, c), lu.at(piv, c));
            std::swap(perm[col], perm[piv]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            const cplx f = lu.at(r, col) / lu.at(col, col);
            lu.at(r, col) = f;
            for (std::size_t c = col + 1; c < n; ++c) lu.at(r, c) -= f * lu.at(col, c);
        }
    }

    auto lu_solve = [&](const cvec& b) {
        cvec x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = b[perm[i]];
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < i; ++j) x[i] -= lu.at(i, j) * x[j];
        for (std::size_t i = n; i-- > 0;) {
            for (std::size_t j = i + 1; j < n; ++j) x[i] -= lu.at(i, j) * x[j];
            x[i] /= lu.at(i, i);
        }
        return x;
    };

    cvec x = lu_solve(rhs);

    // One refinement pass buys an order of magnitude on the mildly
    // ill-conditioned constraint systems without changing the interface.
    cvec resid(n);
    for (std::size_t r = 0; r < n; ++r) {
        cplx acc = rhs[r];
        for (std::size_t c = 0; c < n; ++c) acc -= h.at(r, c) * x[c];
        resid[r] = acc;
    }
    cvec corr = lu_solve(resid);
    for (std::size_t i = 0; i < n; ++i) x[i] += corr[i];
    return x;
}

CMatrix invert(const CMatrix& m, std::string_view label)
{
    if (m.rows != m.cols)
        throw std::invalid_argument("invert: matrix " + std::string(label) + " is not square");
    const std::size_t n = m.rows;
    CMatrix out(n, n);
    cvec e(n, cplx(0.0, 0.0));
    for (std::size_t c = 0; c < n; ++c) {
        e[c] = cplx(1.0, 0.0);
        cvec col = solve_linear(m, e, label);
        for (std::size_t r = 0; r < n; ++r) out.at(r, c) = col[r];
        e[c] = cplx(0.0, 0.0);
    }
    return out;
}

CMatrix matmul(const CMatrix& a, const CMatrix& b)
{
    if (a.cols != b.rows)
        throw std::invalid_argument("matmul: shape mismatch (" + std::to_string(a.rows) + "x" +
                                    std::to_string(a.cols) + ") * (" + std::to_string(b.rows) +
                                    "x" + std::to_string(b.cols) + ")");
    CMatrix out(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i) {
        for (std::size_t k = 0; k < a.cols; ++k) {
            const cplx aik = a.at(i, k);
            if (aik == cplx(0.0, 0.0)) continue;
            for (std::size_t j = 0; j < b.cols; ++j) out.at(i, j) += aik * b.at(k, j);
        }
    }
    return out;
}

cvec matvec(const CMatrix& a, const cvec& v)
{
    if (a.cols != v.size())
        throw std::invalid_argument("matvec: shape mismatch (" + std::to_string(a.rows) + "x" +
                                    std::to_string(a.cols) + ") * vec(" + std::to_string(v.size()) + ")");
    cvec out(a.rows, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < a.rows; ++i) {
        cplx acc(0.0, 0.0);
        for (std::size_t j = 0; j < a.cols; ++j) acc += a.at(i, j) * v[j];
        out[i] = acc;
    }
    return out;
}

CMatrix adjoint(const CMatrix& a)
{
    CMatrix out(a.cols, a.rows);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) out.at(j, i) = std::conj(a.at(i, j));
    return out;
}

cplx cpow_int(cplx z, int p)
{
    if (p == 0) return cplx(1.0, 0.0);
    const bool neg = p < 0;
    unsigned long n = neg ? static_cast<unsigned long>(-(long)p) : static_cast<unsigned long>(p);
    cplx acc(1.0, 0.0);
    cplx base = z;
    while (n) {
        if (n & 1UL) acc *= base;
        base *= base;
        n >>= 1UL;
    }
    return neg ? cplx(1.0, 0.0) / acc : acc;
}

double pow_int(double x, int p)
{
    double acc = 1.0;
    for (int i = 0; i < p; ++i) acc *= x;
    return acc;
}

} // namespace ofdmlab
