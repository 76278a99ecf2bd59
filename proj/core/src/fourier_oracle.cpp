#include "schauder/fourier_oracle.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

#include <fftw3.h>

#include "schauder/errors.hpp"

namespace schauder {

namespace {

class PaddedTransform {
public:
    explicit PaddedTransform(int n) : n_(n), m_(2 * n), real_(static_cast<std::size_t>(m_)),
                                      spec_(static_cast<std::size_t>(m_ / 2 + 1)) {
        fwd_ = fftw_plan_dft_r2c_1d(m_, real_.data(), reinterpret_cast<fftw_complex*>(spec_.data()), FFTW_ESTIMATE);
        bwd_ = fftw_plan_dft_c2r_1d(m_, reinterpret_cast<fftw_complex*>(spec_.data()), real_.data(), FFTW_ESTIMATE);
    }
    ~PaddedTransform() {
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(bwd_);
    }
    PaddedTransform(const PaddedTransform&) = delete;
    PaddedTransform& operator=(const PaddedTransform&) = delete;

    std::vector<std::complex<double>> forward(const GridFn& g) {
        std::fill(real_.begin(), real_.end(), 0.0);
        for (int i = 0; i < n_; ++i) real_[static_cast<std::size_t>(i)] = g[static_cast<std::size_t>(i)];
        fftw_execute(fwd_);
        return spec_;
    }

    GridFn backward(const std::vector<std::complex<double>>& s, const SpaceGrid& grid) {
        spec_ = s;
        fftw_execute(bwd_);
        GridFn out(grid);
        for (int i = 0; i < n_; ++i) out[static_cast<std::size_t>(i)] = real_[static_cast<std::size_t>(i)] / m_;
        return out;
    }

    int padded() const { return m_; }

private:
    int n_;
    int m_;
    std::vector<double> real_;
    std::vector<std::complex<double>> spec_;
    fftw_plan fwd_;
    fftw_plan bwd_;
};

GridFn oracle(const TimeMatrixPath& path, const SpaceGrid& grid, double t, double t_support_end,
              const std::function<GridFn(double)>& slice, const std::vector<double>& breakpoints,
              const PotentialOptions& opts) {
    if (grid.d != 1 || path.d() != 1) throw ConfigError("Fourier oracle supports d = 1 only");
    PaddedTransform tr(grid.n);
    const int m = tr.padded();
    const double h = grid.h();
    std::vector<std::complex<double>> acc(static_cast<std::size_t>(m / 2 + 1));
    std::vector<double> bps = path.breakpoints();
    bps.insert(bps.end(), breakpoints.begin(), breakpoints.end());
    const auto nodes = midpoint_nodes(t, t_support_end, bps, opts.intervals);
    for (std::size_t k = 0; k < nodes.t.size(); ++k) {
        const double A = accumulate_A(path, t, nodes.t[k], opts.quadrature).A(0, 0);
        const auto fh = tr.forward(slice(nodes.t[k]));
        for (std::size_t j = 0; j < acc.size(); ++j) {
            const double xi = 2.0 * std::numbers::pi * static_cast<double>(j) / (m * h);
            acc[j] += nodes.w[k] * std::exp(-A * xi * xi) * fh[j];
        }
    }
    for (auto& v : acc) v = -v;
    // The box starts at -radius rather than 0; the shift is a pure phase that
    // cancels between forward and inverse transforms.
    return tr.backward(acc, grid);
}

}  // namespace

GridFn fourier_oracle_1d(const TimeMatrixPath& path, const SpaceTimeFunction& f, double t, const SpaceGrid& grid,
                         double t_support_end, const PotentialOptions& opts) {
    return oracle(path, grid, t, t_support_end,
                  [&](double r) { return sample(grid, [&](const Point& x) { return f(r, x); }); }, {}, opts);
}

GridFn fourier_oracle_1d(const TimeMatrixPath& path, const SpaceTimeFn& f, double t, double t_support_end,
                         const PotentialOptions& opts) {
    return oracle(path, f.grid, t, t_support_end, [&](double r) { return f.at(r); }, {}, opts);
}

}  // namespace schauder
