#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "../support/oracles.hpp"
#include "acceptance.hpp"
#include "schauder/embedding.hpp"
#include "schauder/expr.hpp"
#include "schauder/fourier_oracle.hpp"
#include "schauder/kernel.hpp"
#include "schauder/potential.hpp"
#include "schauder/small_linalg.hpp"

using namespace schauder;

namespace acceptance {

namespace {

std::string sci(double v) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

// Random path with one jump and a smooth oscillation in every entry.
TimeMatrixPath random_path(int d, std::mt19937& rng) {
    std::uniform_real_distribution<double> U(0.0, 1.0);
    const double tb = -0.8 + 0.6 * U(rng);
    auto entry = [&](double base, double amp) {
        std::ostringstream os;
        os.precision(17);
        os << base << " + " << amp * U(rng) << "*sin(" << 1.0 + 4.0 * U(rng) << "*t) + " << amp * U(rng)
           << "*step(t - (" << tb << "))";
        return parse_expr(os.str());
    };
    std::vector<std::vector<Expr>> a(static_cast<std::size_t>(d), std::vector<Expr>(static_cast<std::size_t>(d)));
    for (int i = 0; i < d; ++i) a[i][i] = entry(1.0 + U(rng), 0.5);
    if (d == 2) {
        std::ostringstream os;
        os.precision(17);
        os << 0.3 * (U(rng) - 0.5) << "*cos(" << 1.0 + 3.0 * U(rng) << "*t)";
        a[0][1] = a[1][0] = parse_expr(os.str());
    }
    return TimeMatrixPath(d, a, {tb});
}

// Lattice sum of the Gaussian with spacing a fifth of the narrowest width.
double lattice_mass(const GaussParams& gp, int d) {
    const auto [lmin, lmax] = symmetric_eigen_range(gp.A);
    const double h = 0.2 * std::sqrt(2.0 * lmin);
    const int m = static_cast<int>(std::ceil(12.0 * std::sqrt(2.0 * lmax) / h));
    double sum = 0.0;
    Point x{};
    if (d == 1) {
        for (int i = -m; i <= m; ++i) {
            x[0] = i * h;
            sum += gauss_kernel(gp, x);
        }
        return sum * h;
    }
    for (int i = -m; i <= m; ++i)
        for (int j = -m; j <= m; ++j) {
            x[0] = i * h;
            x[1] = j * h;
            sum += gauss_kernel(gp, x);
        }
    return sum * h * h;
}

Outcome kernel_normalization() {
    std::mt19937 rng(20240611);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    double worst_mass = 0.0, worst_add = 0.0;
    for (int k = 0; k < 20; ++k) {
        const int d = 1 + k % 2;
        const TimeMatrixPath path = random_path(d, rng);
        const double s = -1.0 + 0.5 * U(rng);
        const double t = s + 0.05 + 0.9 * U(rng);
        const double r = s + (t - s) * U(rng);
        const GaussParams st = accumulate_A(path, s, t);
        worst_mass = std::max(worst_mass, std::abs(lattice_mass(st, d) - 1.0));
        const SmallMat sum = accumulate_A(path, s, r).A + accumulate_A(path, r, t).A;
        worst_add = std::max(worst_add, (st.A - sum).cwiseAbs().maxCoeff());
    }
    return {worst_mass <= 1e-6 && worst_add <= 1e-12,
            "max |mass-1| " + sci(worst_mass) + ", max additivity defect " + sci(worst_add)};
}

// u(t, x) = phi(t) psi(x) with compact support in both variables.
struct Manufactured {
    oracle::PolyBump phi;
    oracle::PolyBump psi;
    double u(double t, double x) const { return phi.v(t) * psi.v(x); }
};

Outcome representation_identity() {
    const SpaceGrid grid(1, 8.0, 257);
    const std::vector<Manufactured> family = {
        {{0.45, -0.5}, {2.0, 0.0}},
        {{0.3, -0.35}, {1.5, 1.0}},
        {{0.5, -0.55}, {3.0, -1.0}},
        {{0.4, -0.45}, {1.0, 0.5}},
        {{0.35, -0.6}, {2.5, 2.0}},
    };
    const TimeMatrixPath path(1, {{parse_expr("1 + 0.5*step(t + 0.4) + 0.2*sin(3*t)")}}, {-0.4});
    PotentialOptions po;
    po.intervals = 128;
    double worst_id = 0.0, worst_fft = 0.0;
    for (const auto& m : family) {
        const double end = m.phi.c + m.phi.R;
        auto f = [&](double t, const Point& x) {
            const double a = path.eval(t)(0, 0);
            return m.phi.d1(t) * m.psi.v(x[0]) + a * m.phi.v(t) * m.psi.d2(x[0]);
        };
        for (double s : {m.phi.c - 0.5 * m.phi.R, m.phi.c, m.phi.c + 0.5 * m.phi.R}) {
            const GridFn G = potential_G(path, f, s, grid, end, {-0.4}, po);
            const GridFn u = sample(grid, [&](const Point& x) { return m.u(s, x[0]); });
            worst_id = std::max(worst_id, (u.values + G.values).cwiseAbs().maxCoeff() / u.sup());
            const GridFn F = fourier_oracle_1d(path, f, s, grid, end, po);
            worst_fft = std::max(worst_fft, (F.values + G.values).cwiseAbs().maxCoeff() / G.sup());
        }
    }
    return {worst_id <= 0.02 && worst_fft <= 1e-3,
            "|u + G(u_t + L0 u)|/|u| " + sci(worst_id) + ", spectral mismatch " + sci(worst_fft)};
}

Outcome heat_solvability() {
    const int d = 2;
    const double delta = 1.0, S = 0.0;
    const SpaceGrid grid(d, 6.0, 97);
    auto psi = [](const Point& x) { return std::exp(-(x[0] * x[0] + x[1] * x[1])); };
    auto exact = [&](double t, const Point& x) { return t >= S ? 0.0 : (1.0 - std::exp(t - S)) * psi(x); };
    auto f = [&](double t, const Point& x) {
        if (t >= S) return 0.0;
        const double r2 = x[0] * x[0] + x[1] * x[1];
        const double phi = 1.0 - std::exp(t - S), dphi = -std::exp(t - S);
        return dphi * psi(x) + phi * (4.0 * r2 - 2.0 * d) * psi(x) - delta * phi * psi(x);
    };
    std::vector<double> times;
    for (int k = 0; k <= 32; ++k) times.push_back(-1.0 + k / 32.0);
    times.push_back(0.25);
    times.push_back(0.5);
    const SpaceTimeFn u = heat_solve(f, delta, S, grid, times);
    double err = 0.0, scale = 0.0;
    bool plateau = true;
    for (std::size_t k = 0; k < times.size(); ++k) {
        const GridFn ex = sample(grid, [&](const Point& x) { return exact(times[k], x); });
        if (times[k] >= S) {
            plateau = plateau && u.slices[k].values.cwiseAbs().maxCoeff() == 0.0;
            continue;
        }
        err = std::max(err, (u.slices[k].values - ex.values).cwiseAbs().maxCoeff());
        scale = std::max(scale, ex.sup());
    }
    return {err <= 0.01 * scale && plateau,
            "relative sup error " + sci(err / scale) + (plateau ? ", u = 0 for t >= S" : ", plateau broken")};
}

Outcome embedding_ratios() {
    const oracle::HeatKernel1d k{0.5};
    const SpaceGrid grid(1, 6.0, 193);
    std::vector<double> times;
    const int n = 2048;
    for (int i = 0; i <= n; ++i) times.push_back(-1.0 + i / static_cast<double>(n));
    SpaceTimeFn u;
    u.grid = grid;
    u.times = times;
    for (double t : times) {
        u.slices.push_back(sample(grid, [&](const Point& x) { return k.v(t, x[0]); }));
        u.dt_slices.push_back(sample(grid, [&](const Point& x) { return k.t(t, x[0]); }));
    }
    const std::vector<double> hs = {0.5, 0.25, 0.125, 0.0625, 0.03125};
    NormOptions opts;
    opts.window = 4.0;
    double worst = 0.0;
    std::string detail;
    for (double x0 : {0.0, 0.75}) {
        const auto rows = embedding_check(u, 0.5, 0.0, Point{x0, 0.0, 0.0}, hs, opts);
        std::vector<double> r1, r2;
        for (const auto& r : rows) {
            r1.push_back(r.r1);
            r2.push_back(r.r2);
        }
        const double s1 = envelope_slope(hs, r1), s2 = envelope_slope(hs, r2);
        worst = std::max({worst, std::abs(s1), std::abs(s2)});
        detail += "x=" + std::to_string(x0).substr(0, 4) + " slopes " + sci(s1) + "/" + sci(s2) + "; ";
    }
    return {worst <= 0.15, detail + "max |slope| " + sci(worst)};
}

}  // namespace

std::vector<Criterion> kernel_criteria() {
    return {
        {1, "kernel normalization and additivity", 5.0, kernel_normalization},
        {2, "representation identity and spectral oracle", 60.0, representation_identity},
        {3, "heat solvability", 30.0, heat_solvability},
        {8, "embedding ratios bounded in h", 0.0, embedding_ratios},
    };
}

}  // namespace acceptance
