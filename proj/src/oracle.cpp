// Copyright 2026 The qeraser Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "qeraser/oracle.hpp"

#include <fftw3.h>

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>

#include "qeraser/error.hpp"
#include "qeraser/propagation.hpp"

namespace qeraser {

namespace {

constexpr double kTailFraction = 1e-10;
constexpr double kSpreadSigmas = 24.0;
constexpr double kCrossValidationTolerance = 1e-6;

std::mutex g_planner_mutex;  // FFTW's planner is not thread-safe

void fft_in_place(std::vector<Complex> &data, int sign) {
    auto *buf = reinterpret_cast<fftw_complex *>(data.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(g_planner_mutex);
        plan = fftw_plan_dft_1d(static_cast<int>(data.size()), buf, buf, sign, FFTW_ESTIMATE);
    }
    if (plan == nullptr) {
        fail(ErrorCode::InvalidArgument, "FFTW could not plan a transform of this size");
    }
    fftw_execute(plan);
    std::lock_guard<std::mutex> lock(g_planner_mutex);
    fftw_destroy_plan(plan);
}

// Angular wavenumber of FFT bin m on n samples of spacing dx.
double wavenumber(std::size_t m, std::size_t n, double dx) {
    double signed_m = m < n / 2 ? double(m) : double(m) - double(n);
    return 2.0 * std::numbers::pi * signed_m / (double(n) * dx);
}

double edge_mass(const std::vector<Complex> &s, std::size_t width) {
    double mass = 0.0;
    for (std::size_t i = 0; i < width; ++i) {
        mass += std::norm(s[i]) + std::norm(s[s.size() - 1 - i]);
    }
    return mass;
}

double total_mass(const std::vector<Complex> &s) {
    double mass = 0.0;
    for (Complex z : s) {
        mass += std::norm(z);
    }
    return mass;
}

// Interval the evolved wave occupies, from position and wavenumber moments of
// the input: center drifts by (a/2) <k>, the spread grows at most by
// (a/2) sigma_k.
std::pair<double, double> predicted_support(const GridWave &wave, double a, double mass) {
    const auto &s = wave.samples;
    const std::size_t n = s.size();
    double mean_x = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mean_x += wave.grid.x(i) * std::norm(s[i]);
    }
    mean_x /= mass;
    double var_x = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double dx = wave.grid.x(i) - mean_x;
        var_x += dx * dx * std::norm(s[i]);
    }
    var_x /= mass;

    std::vector<Complex> spectrum = s;
    fft_in_place(spectrum, FFTW_FORWARD);
    const double h = wave.grid.spacing();
    double power = 0.0;
    double mean_k = 0.0;
    double high = 0.0;
    const double k_cut = 0.9 * std::numbers::pi / h;
    for (std::size_t m = 0; m < n; ++m) {
        double k = wavenumber(m, n, h);
        double p = std::norm(spectrum[m]);
        power += p;
        mean_k += k * p;
        if (std::abs(k) > k_cut) {
            high += p;
        }
    }
    mean_k /= power;
    if (high > kTailFraction * kTailFraction * power) {
        fail(ErrorCode::AliasingRisk, "wave is under-resolved: spectral content reaches the Nyquist band");
    }
    double var_k = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
        double dk = wavenumber(m, n, h) - mean_k;
        var_k += dk * dk * std::norm(spectrum[m]);
    }
    var_k /= power;

    double center = mean_x + 0.5 * a * mean_k;
    double spread = std::sqrt(var_x) + 0.5 * a * std::sqrt(var_k);
    return {center - kSpreadSigmas * spread, center + kSpreadSigmas * spread};
}

}  // namespace

std::vector<GridWave> sample_state(const EntangledState &state, const ScreenGrid &grid) {
    std::vector<GridWave> out;
    for (std::size_t j = 0; j < state.detector_dim(); ++j) {
        out.push_back({grid, std::vector<Complex>(grid.size(), 0.0)});
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double x = grid.x(i);
        for (const auto &b : state.branches()) {
            out[b.tag].samples[i] += b.packet.amplitude(x);
        }
    }
    return out;
}

double discrete_norm(const GridWave &wave) {
    std::vector<double> density(wave.samples.size());
    std::transform(wave.samples.begin(), wave.samples.end(), density.begin(), [](Complex z) { return std::norm(z); });
    return trapezoid(density, wave.grid.spacing());
}

GridWave spectral_propagate(const GridWave &wave, double a, const SpectralOptions &options) {
    const std::size_t n = wave.samples.size();
    require(n == wave.grid.size(), "wave samples do not match the grid");
    require(n >= 1024 && std::has_single_bit(n), "spectral grid size must be a power of two >= 1024");
    require(std::isfinite(a) && a >= 0.0, "evolution parameter a must be non-negative");

    const double mass = total_mass(wave.samples);
    if (mass > 0.0 && edge_mass(wave.samples, std::max<std::size_t>(1, n / 64)) > kTailFraction * mass) {
        fail(ErrorCode::AliasingRisk, "input wave is not contained in its grid");
    }

    const double dx = wave.grid.spacing();
    double need_lo = wave.grid.x_min();
    double need_hi = wave.grid.x_max();
    if (mass > 0.0 && a > 0.0) {
        auto [lo, hi] = predicted_support(wave, a, mass);
        need_lo = std::min(need_lo, lo);
        need_hi = std::max(need_hi, hi);
    }
    if (options.cover) {
        need_lo = std::min(need_lo, options.cover->first);
        need_hi = std::max(need_hi, options.cover->second);
    }
    double left_d = std::ceil((wave.grid.x_min() - need_lo) / dx);
    double right_d = std::ceil((need_hi - wave.grid.x_max()) / dx);
    double wanted = double(n) + left_d + right_d;
    if (wanted > double(options.max_points)) {
        fail(ErrorCode::AliasingRisk, "predicted spread needs a padded domain larger than the point budget");
    }
    const std::size_t padded = std::bit_ceil(static_cast<std::size_t>(wanted));
    if (padded > options.max_points) {
        fail(ErrorCode::AliasingRisk, "predicted spread needs a padded domain larger than the point budget");
    }
    const auto left = static_cast<std::size_t>(left_d);

    std::vector<Complex> data(padded, 0.0);
    std::copy(wave.samples.begin(), wave.samples.end(), data.begin() + static_cast<std::ptrdiff_t>(left));
    const double x0 = wave.grid.x_min() - double(left) * dx;
    ScreenGrid domain(x0, x0 + double(padded - 1) * dx, padded);

    if (a > 0.0 && mass > 0.0) {
        fft_in_place(data, FFTW_FORWARD);
        for (std::size_t m = 0; m < padded; ++m) {
            double k = wavenumber(m, padded, dx);
            data[m] *= std::polar(1.0 / double(padded), -k * k * a / 4.0);
        }
        fft_in_place(data, FFTW_BACKWARD);
        if (edge_mass(data, std::max<std::size_t>(1, padded / 64)) > kTailFraction * mass) {
            fail(ErrorCode::AliasingRisk, "evolved wave reaches the edge of the padded domain");
        }
    }
    return {domain, std::move(data)};
}

GridWave crop(const GridWave &wave, const ScreenGrid &window) {
    const double dx = wave.grid.spacing();
    require(std::abs(window.spacing() - dx) <= 1e-9 * dx, "crop window must share the wave's spacing");
    double offset = (window.x_min() - wave.grid.x_min()) / dx;
    double rounded = std::round(offset);
    require(std::abs(offset - rounded) <= 1e-6 && rounded >= 0.0, "crop window is not aligned with the wave grid");
    auto first = static_cast<std::size_t>(rounded);
    require(first + window.size() <= wave.samples.size(), "crop window extends past the wave grid");
    auto begin = wave.samples.begin() + static_cast<std::ptrdiff_t>(first);
    return {window, std::vector<Complex>(begin, begin + static_cast<std::ptrdiff_t>(window.size()))};
}

namespace {

std::pair<double, double> state_cover(const EntangledState &evolved) {
    ScreenGrid g = coverage_grid(evolved, 2);
    return {g.x_min(), g.x_max()};
}

// Smallest interval holding every component's predicted support, so all
// components land on one padded grid.
std::pair<double, double> joint_cover(const std::vector<GridWave> &waves, double a, std::pair<double, double> cover) {
    for (const auto &w : waves) {
        double mass = total_mass(w.samples);
        if (mass > 0.0 && a > 0.0) {
            auto [lo, hi] = predicted_support(w, a, mass);
            cover.first = std::min(cover.first, lo);
            cover.second = std::max(cover.second, hi);
        }
    }
    return cover;
}

}  // namespace

CrossValidation cross_validate(const EntangledState &state, double a, const ScreenGrid &grid) {
    PropagationParams params(a);
    EntangledState evolved = propagate(state, params);
    auto initial = sample_state(state, grid);

    SpectralOptions options;
    options.cover = joint_cover(initial, a, state_cover(evolved));

    CrossValidation report;
    std::vector<GridWave> spectral;
    for (const auto &w : initial) {
        report.norm_initial += discrete_norm(w);
        spectral.push_back(spectral_propagate(w, a, options));
    }
    report.domain = spectral.front().grid;
    auto analytic = sample_state(evolved, report.domain);

    double amp_max = 0.0;
    for (const auto &w : analytic) {
        for (Complex z : w.samples) {
            amp_max = std::max(amp_max, std::abs(z));
        }
    }
    const std::size_t n = report.domain.size();
    std::vector<double> dens_analytic(n, 0.0);
    std::vector<double> dens_spectral(n, 0.0);
    for (std::size_t j = 0; j < analytic.size(); ++j) {
        ComponentError err;
        double sum_sq = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            Complex lhs = spectral[j].samples[i];
            Complex rhs = analytic[j].samples[i];
            double diff = std::abs(lhs - rhs);
            err.linf_abs = std::max(err.linf_abs, diff);
            sum_sq += diff * diff;
            dens_analytic[i] += std::norm(rhs);
            dens_spectral[i] += std::norm(lhs);
        }
        err.l2 = std::sqrt(sum_sq * report.domain.spacing());
        err.linf_rel = amp_max > 0.0 ? err.linf_abs / amp_max : err.linf_abs;
        report.components.push_back(err);
    }
    double dens_max = *std::max_element(dens_analytic.begin(), dens_analytic.end());
    double dens_err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        dens_err = std::max(dens_err, std::abs(dens_analytic[i] - dens_spectral[i]));
    }
    report.pattern_linf_rel = dens_max > 0.0 ? dens_err / dens_max : dens_err;
    report.norm_analytic = trapezoid(dens_analytic, report.domain.spacing());
    report.norm_spectral = trapezoid(dens_spectral, report.domain.spacing());
    report.pass = std::all_of(report.components.begin(), report.components.end(),
                              [](const ComponentError &e) { return e.linf_rel <= kCrossValidationTolerance; });
    return report;
}

Pattern sorkin_spectral(const SlitArray &slits, double a, const ScreenGrid &grid) {
    require(slits.size() == 3, "the third-order interference test needs exactly 3 slits");
    PropagationParams params(a);
    EntangledState full = make_slit_state(slits);
    SpectralOptions options;
    options.cover = joint_cover(sample_state(full, grid), a, state_cover(propagate(full, params)));

    auto intensity = [&](std::initializer_list<std::size_t> which) {
        std::vector<std::size_t> idx(which);
        auto waves = sample_state(make_subset_state(slits, idx), grid);
        GridWave evolved = crop(spectral_propagate(waves.front(), a, options), grid);
        std::vector<double> out(grid.size());
        std::transform(evolved.samples.begin(), evolved.samples.end(), out.begin(),
                       [](Complex z) { return std::norm(z); });
        return out;
    };
    const std::array<std::vector<double>, 7> terms = {
        intensity({0, 1, 2}), intensity({0, 1}), intensity({0, 2}), intensity({1, 2}),
        intensity({0}),       intensity({1}),    intensity({2}),
    };
    Pattern out{grid, std::vector<double>(grid.size()), "sorkin"};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out.values[i] = terms[0][i] - (terms[1][i] + terms[2][i] + terms[3][i]) + (terms[4][i] + terms[5][i] + terms[6][i]);
    }
    return out;
}

}  // namespace qeraser
