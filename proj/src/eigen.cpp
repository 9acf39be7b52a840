#include "ptsim/eigen.hpp"

#include <algorithm>
#include <cmath>

namespace ptsim {

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

// Eigenvalues of a complex 2x2 block, stable quadratic.
std::pair<Complex, Complex> eig2(Complex a, Complex b, Complex c, Complex d) {
    const Complex m = 0.5 * (a + d);
    const Complex disc = std::sqrt(m * m - (a * d - b * c));
    return {m + disc, m - disc};
}

} // namespace

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
    if (!m.is_finite()) throw ValidationError("hermitian_eigenvalues: non-finite input");
    if (m.hermiticity_defect() > 1e-9)
        throw ValidationError("hermitian_eigenvalues: input is not Hermitian (defect " +
                              std::to_string(m.hermiticity_defect()) + " > 1e-9)");
    const int n = m.dim();
    ComplexMatrix a = (m + m.adjoint()) * 0.5;

    const double scale = 1.0 + a.max_abs();
    for (int sweep = 0; sweep < 60; ++sweep) {
        if (off_diagonal_norm(a) < 1e-14 * scale) break;
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double r = std::abs(apq);
                if (r < 1e-300) continue;
                const Complex phase = apq / r;
                const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * r);
                const double t = (tau >= 0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // J = D(phase) * real Jacobi rotation on the (p,q) plane
                ComplexMatrix j = ComplexMatrix::identity(n);
                j(p, p) = c;
                j(p, q) = s;
                j(q, p) = -s * std::conj(phase);
                j(q, q) = c * std::conj(phase);
                a = j.adjoint() * a * j;
            }
    }
    if (off_diagonal_norm(a) > 1e-10 * scale)
        throw NumericalError("hermitian_eigenvalues: Jacobi sweeps did not converge");

    std::vector<double> ev(n);
    for (int i = 0; i < n; ++i) ev[i] = a(i, i).real();
    std::sort(ev.begin(), ev.end(), std::greater<double>());
    return ev;
}

std::vector<Complex> general_eigenvalues(const ComplexMatrix& m) {
    if (!m.is_finite()) throw ValidationError("general_eigenvalues: non-finite input");
    const int n = m.dim();
    ComplexMatrix h = m;

    // Householder reduction to upper Hessenberg.
    for (int k = 0; k + 2 < n; ++k) {
        double colnorm = 0.0;
        for (int i = k + 1; i < n; ++i) colnorm += std::norm(h(i, k));
        colnorm = std::sqrt(colnorm);
        if (colnorm < 1e-300) continue;
        const Complex x0 = h(k + 1, k);
        const Complex phase = (std::abs(x0) > 0) ? x0 / std::abs(x0) : Complex(1.0);
        const Complex alpha = -phase * colnorm;
        std::vector<Complex> v(n, Complex{});
        v[k + 1] = x0 - alpha;
        for (int i = k + 2; i < n; ++i) v[i] = h(i, k);
        double vn = 0.0;
        for (const Complex& z : v) vn += std::norm(z);
        if (vn < 1e-300) continue;
        vn = std::sqrt(vn);
        for (Complex& z : v) z /= vn;
        ComplexMatrix p = ComplexMatrix::identity(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) p(i, j) -= 2.0 * v[i] * std::conj(v[j]);
        h = p * h * p;
    }

    const double scale = 1.0 + h.max_abs();
    // Relative criterion plus an absolute floor at the matrix scale: blocks
    // with near-zero diagonals (rank-deficient inputs) otherwise never deflate.
    auto negligible = [&](int i) {
        return std::abs(h(i, i - 1)) <=
               1e-15 * (std::abs(h(i - 1, i - 1)) + std::abs(h(i, i)) + scale);
    };

    std::vector<Complex> ev;
    int hi = n - 1;
    int iter = 0;
    while (hi >= 0) {
        if (hi == 0) {
            ev.push_back(h(0, 0));
            break;
        }
        if (negligible(hi)) {
            ev.push_back(h(hi, hi));
            --hi;
            iter = 0;
            continue;
        }
        int lo = hi;
        while (lo > 0 && !negligible(lo)) --lo;
        if (hi - lo == 1) {
            auto [l1, l2] = eig2(h(lo, lo), h(lo, hi), h(hi, lo), h(hi, hi));
            ev.push_back(l1);
            ev.push_back(l2);
            hi -= 2;
            iter = 0;
            continue;
        }
        if (++iter > 200)
            throw NumericalError("general_eigenvalues: QR iteration did not converge");

        // Wilkinson shift from the trailing 2x2, closer eigenvalue to h(hi,hi);
        // exceptional shift every 12 stalled iterations.
        Complex mu;
        if (iter % 12 == 0) {
            mu = h(hi, hi) + std::abs(h(hi, hi - 1));
        } else {
            auto [l1, l2] =
                eig2(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi));
            mu = (std::abs(l1 - h(hi, hi)) < std::abs(l2 - h(hi, hi))) ? l1 : l2;
        }

        for (int d = lo; d <= hi; ++d) h(d, d) -= mu;
        // One QR step on the unreduced block via Givens similarity.
        std::vector<std::array<Complex, 2>> givens;
        for (int i = lo; i < hi; ++i) {
            const Complex a = h(i, i);
            const Complex b = h(i + 1, i);
            const double r = std::sqrt(std::norm(a) + std::norm(b));
            Complex ca(1.0), sb(0.0);
            if (r > 1e-300) {
                ca = a / r;
                sb = b / r;
            }
            givens.push_back({ca, sb});
            for (int j = 0; j < n; ++j) {
                const Complex t1 = h(i, j);
                const Complex t2 = h(i + 1, j);
                h(i, j) = std::conj(ca) * t1 + std::conj(sb) * t2;
                h(i + 1, j) = -sb * t1 + ca * t2;
            }
        }
        for (int i = lo; i < hi; ++i) {
            const Complex ca = givens[i - lo][0];
            const Complex sb = givens[i - lo][1];
            for (int j = 0; j < n; ++j) {
                const Complex t1 = h(j, i);
                const Complex t2 = h(j, i + 1);
                h(j, i) = t1 * ca + t2 * sb;
                h(j, i + 1) = -t1 * std::conj(sb) + t2 * std::conj(ca);
            }
        }
        for (int d = lo; d <= hi; ++d) h(d, d) += mu;
    }

    std::sort(ev.begin(), ev.end(), [](const Complex& a, const Complex& b) {
        if (a.real() != b.real()) return a.real() > b.real();
        return a.imag() > b.imag();
    });
    return ev;
}

ComplexMatrix mat_exp_2x2_hermitian(const ComplexMatrix& h, double t) {
    if (h.dim() != 2) throw ValidationError("mat_exp_2x2_hermitian expects a 2x2 matrix");
    if (h.hermiticity_defect() > 1e-9)
        throw ValidationError("mat_exp_2x2_hermitian: input is not Hermitian");
    const double a = h(0, 0).real();
    const double d = h(1, 1).real();
    const Complex b = 0.5 * (h(0, 1) + std::conj(h(1, 0)));
    const double mean = 0.5 * (a + d);
    const double w = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(b));

    const double wt = w * t;
    const double sinc = (std::abs(wt) < 1e-8) ? t * (1.0 - wt * wt / 6.0) : std::sin(wt) / w;
    const Complex phase = std::exp(Complex(0.0, -mean * t));
    const Complex ci(0.0, 1.0);

    ComplexMatrix u(2);
    u(0, 0) = phase * (std::cos(wt) - ci * sinc * (a - mean));
    u(0, 1) = phase * (-ci * sinc * b);
    u(1, 0) = phase * (-ci * sinc * std::conj(b));
    u(1, 1) = phase * (std::cos(wt) - ci * sinc * (d - mean));
    return u;
}

ComplexMatrix mat_exp_2x2(const ComplexMatrix& m) {
    if (m.dim() != 2) throw ValidationError("mat_exp_2x2 expects a 2x2 matrix");
    const Complex mean = 0.5 * m.trace();
    const Complex b00 = m(0, 0) - mean;
    const Complex delta2 = b00 * b00 + m(0, 1) * m(1, 0);
    const Complex delta = std::sqrt(delta2);

    Complex coshd, sinhc;
    if (std::abs(delta) < 1e-4) {
        coshd = 1.0 + delta2 / 2.0 + delta2 * delta2 / 24.0;
        sinhc = 1.0 + delta2 / 6.0 + delta2 * delta2 / 120.0;
    } else {
        coshd = std::cosh(delta);
        sinhc = std::sinh(delta) / delta;
    }
    const Complex em = std::exp(mean);

    ComplexMatrix r(2);
    r(0, 0) = em * (coshd + sinhc * b00);
    r(0, 1) = em * sinhc * m(0, 1);
    r(1, 0) = em * sinhc * m(1, 0);
    r(1, 1) = em * (coshd - sinhc * b00);
    return r;
}

} // namespace ptsim
