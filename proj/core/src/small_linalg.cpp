#include "schauder/small_linalg.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "schauder/errors.hpp"

namespace schauder {

namespace {

SmallVec jacobi_eigenvalues(SmallMat a) {
    const Eigen::Index n = a.rows();
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (Eigen::Index p = 0; p < n; ++p)
            for (Eigen::Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
        if (off <= 1e-30 * std::max(1.0, a.squaredNorm())) break;
        for (Eigen::Index p = 0; p < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    SmallVec ev(n);
    for (Eigen::Index i = 0; i < n; ++i) ev(i) = a(i, i);
    std::sort(ev.data(), ev.data() + n);
    return ev;
}

}  // namespace

SmallVec symmetric_eigenvalues(const SmallMat& m) {
    const Eigen::Index n = m.rows();
    SmallVec ev(n);
    if (n == 1) {
        ev(0) = m(0, 0);
    } else if (n == 2) {
        const double mean = 0.5 * (m(0, 0) + m(1, 1));
        const double half_diff = 0.5 * (m(0, 0) - m(1, 1));
        const double r = std::hypot(half_diff, m(0, 1));
        ev(0) = mean - r;
        ev(1) = mean + r;
    } else {
        ev = jacobi_eigenvalues(m);
    }
    return ev;
}

EigenRange symmetric_eigen_range(const SmallMat& m) {
    SmallVec ev = symmetric_eigenvalues(m);
    return {ev(0), ev(ev.size() - 1)};
}

double small_determinant(const SmallMat& m) {
    switch (m.rows()) {
        case 1: return m(0, 0);
        case 2: return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
        default:
            return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                   m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                   m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    }
}

SmallMat small_inverse(const SmallMat& m) {
    const Eigen::Index n = m.rows();
    const double scale = std::max(m.cwiseAbs().maxCoeff(), 1e-300);
    SmallMat inv(n, n);
    if (n <= 2) {
        const double det = small_determinant(m);
        if (std::abs(det) <= 1e-14 * std::pow(scale, static_cast<double>(n)))
            throw NumericalError("matrix is numerically singular");
        if (n == 1) {
            inv(0, 0) = 1.0 / det;
        } else {
            inv(0, 0) = m(1, 1) / det;
            inv(1, 1) = m(0, 0) / det;
            inv(0, 1) = -m(0, 1) / det;
            inv(1, 0) = -m(1, 0) / det;
        }
        return inv;
    }
    SmallMat a = m;
    inv.setIdentity();
    for (Eigen::Index col = 0; col < n; ++col) {
        Eigen::Index piv = col;
        for (Eigen::Index r = col + 1; r < n; ++r)
            if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
        if (std::abs(a(piv, col)) <= 1e-14 * scale) throw NumericalError("matrix is numerically singular");
        if (piv != col) {
            a.row(piv).swap(a.row(col));
            inv.row(piv).swap(inv.row(col));
        }
        const double d = a(col, col);
        a.row(col) /= d;
        inv.row(col) /= d;
        for (Eigen::Index r = 0; r < n; ++r) {
            if (r == col) continue;
            const double factor = a(r, col);
            if (factor == 0.0) continue;
            a.row(r) -= factor * a.row(col);
            inv.row(r) -= factor * inv.row(col);
        }
    }
    return inv;
}

}  // namespace schauder
