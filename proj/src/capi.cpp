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


#include "qeraser/qeraser.h"

#include <algorithm>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "qeraser/erasure.hpp"
#include "qeraser/error.hpp"
#include "qeraser/oracle.hpp"
#include "qeraser/parallel.hpp"
#include "qeraser/patterns.hpp"
#include "qeraser/propagation.hpp"

struct qe_state {
    qeraser::EntangledState value;
};

struct qe_basis {
    qeraser::DetectorBasis value;
};

namespace {

using qeraser::Complex;
using qeraser::ErrorCode;

thread_local std::string g_last_error;

qe_status to_status(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return QE_ERR_INVALID_ARGUMENT;
        case ErrorCode::NonUnitary: return QE_ERR_NON_UNITARY;
        case ErrorCode::DimensionMismatch: return QE_ERR_DIMENSION_MISMATCH;
        case ErrorCode::AliasingRisk: return QE_ERR_ALIASING_RISK;
        case ErrorCode::WindowOutOfGrid: return QE_ERR_WINDOW_OUT_OF_GRID;
        case ErrorCode::GridMismatch: return QE_ERR_GRID_MISMATCH;
    }
    return QE_ERR_INTERNAL;
}

qe_status set_error(qe_status status, const std::string &message) {
    g_last_error = message;
    return status;
}

template <typename F>
qe_status guarded(F &&body) {
    try {
        body();
        return QE_OK;
    } catch (const qeraser::Error &e) {
        return set_error(to_status(e.code()), e.what());
    } catch (const std::bad_alloc &) {
        return set_error(QE_ERR_INTERNAL, "out of memory");
    } catch (const std::exception &e) {
        return set_error(QE_ERR_INTERNAL, e.what());
    } catch (...) {
        return set_error(QE_ERR_INTERNAL, "unknown error");
    }
}

#define QE_REQUIRE_NONNULL(ptr)                                                   \
    do {                                                                          \
        if ((ptr) == nullptr) {                                                   \
            return set_error(QE_ERR_NULL_ARGUMENT, #ptr " must not be NULL");     \
        }                                                                         \
    } while (0)

qeraser::ScreenGrid to_grid(qe_grid g) {
    return qeraser::ScreenGrid(g.xmin, g.xmax, g.points);
}

std::vector<Complex> to_complex(const qe_complex *data, std::size_t n) {
    std::vector<Complex> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = Complex(data[i].re, data[i].im);
    }
    return out;
}

qeraser::SlitArray make_slits(std::size_t n, double spacing, double epsilon, const qe_complex *amplitudes) {
    if (amplitudes == nullptr) {
        return qeraser::SlitArray::equal(n, spacing, epsilon);
    }
    return qeraser::SlitArray(spacing, epsilon, to_complex(amplitudes, n));
}

qeraser::Pattern as_pattern(qeraser::ScreenGrid grid, const double *values) {
    return qeraser::Pattern{grid, std::vector<double>(values, values + grid.size()), ""};
}

}  // namespace

extern "C" {

QE_API const char *qe_version(void) {
    return "0.1.0";
}

QE_API const char *qe_status_name(qe_status status) {
    switch (status) {
        case QE_OK: return "ok";
        case QE_ERR_INVALID_ARGUMENT: return "invalid argument";
        case QE_ERR_NON_UNITARY: return "non-unitary basis";
        case QE_ERR_DIMENSION_MISMATCH: return "dimension mismatch";
        case QE_ERR_ALIASING_RISK: return "aliasing risk";
        case QE_ERR_WINDOW_OUT_OF_GRID: return "window out of grid";
        case QE_ERR_GRID_MISMATCH: return "grid mismatch";
        case QE_ERR_NULL_ARGUMENT: return "null argument";
        case QE_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

QE_API const char *qe_last_error(void) {
    return g_last_error.c_str();
}

QE_API void qe_set_max_threads(size_t threads) {
    qeraser::set_max_threads(threads);
}

QE_API qe_status qe_evolution_from_time(double t, double mass, double hbar, double *a) {
    QE_REQUIRE_NONNULL(a);
    return guarded([&] { *a = qeraser::PropagationParams::from_time(t, mass, hbar).evolution(); });
}

QE_API qe_status qe_evolution_from_geometry(double wavelength, double distance, double *a) {
    QE_REQUIRE_NONNULL(a);
    return guarded([&] { *a = qeraser::PropagationParams::from_geometry(wavelength, distance).evolution(); });
}

QE_API qe_status qe_omega(double epsilon, double a, double *omega) {
    QE_REQUIRE_NONNULL(omega);
    return guarded([&] { *omega = qeraser::PropagationParams(a).omega(epsilon); });
}

QE_API qe_status qe_density_prefactor(double epsilon, double a, double *prefactor) {
    QE_REQUIRE_NONNULL(prefactor);
    return guarded([&] { *prefactor = qeraser::density_prefactor(epsilon, a); });
}

QE_API qe_status qe_state_create(size_t n, double spacing, double epsilon, const qe_complex *amplitudes, int tagged,
                                 qe_state **out) {
    QE_REQUIRE_NONNULL(out);
    return guarded([&] {
        auto slits = make_slits(n, spacing, epsilon, amplitudes);
        auto state = tagged ? qeraser::make_tagged_state(slits) : qeraser::make_slit_state(slits);
        *out = new qe_state{std::move(state)};
    });
}

QE_API void qe_state_destroy(qe_state *state) {
    delete state;
}

QE_API qe_status qe_state_propagate(const qe_state *state, double a, qe_state **out) {
    QE_REQUIRE_NONNULL(state);
    QE_REQUIRE_NONNULL(out);
    return guarded([&] {
        *out = new qe_state{qeraser::propagate(state->value, qeraser::PropagationParams(a))};
    });
}

QE_API qe_status qe_state_detector_dim(const qe_state *state, size_t *dim) {
    QE_REQUIRE_NONNULL(state);
    QE_REQUIRE_NONNULL(dim);
    *dim = state->value.detector_dim();
    return QE_OK;
}

QE_API qe_status qe_state_norm_squared(const qe_state *state, double *norm) {
    QE_REQUIRE_NONNULL(state);
    QE_REQUIRE_NONNULL(norm);
    return guarded([&] { *norm = qeraser::norm_squared(state->value); });
}

QE_API qe_status qe_state_total_probability(const qe_state *state, double *probability) {
    QE_REQUIRE_NONNULL(state);
    QE_REQUIRE_NONNULL(probability);
    return guarded([&] { *probability = qeraser::total_probability(state->value); });
}

QE_API qe_status qe_state_amplitude(const qe_state *state, double x, qe_complex *out, size_t out_len) {
    QE_REQUIRE_NONNULL(state);
    QE_REQUIRE_NONNULL(out);
    return guarded([&] {
        auto amps = qeraser::evaluate_amplitude(state->value, x);
        if (out_len < amps.size()) {
            qeraser::fail(ErrorCode::DimensionMismatch, "output buffer shorter than the detector dimension");
        }
        for (std::size_t j = 0; j < amps.size(); ++j) {
            out[j] = qe_complex{amps[j].real(), amps[j].imag()};
        }
    });
}

QE_API qe_status qe_state_intensity_at(const qe_state *state, double x, double *intensity) {
    QE_REQUIRE_NONNULL(state);
    QE_REQUIRE_NONNULL(intensity);
    return guarded([&] { *intensity = qeraser::marginal_intensity_at(state->value, x); });
}

QE_API qe_status qe_marginal_intensity(const qe_state *state, qe_grid grid, double *values) {
    QE_REQUIRE_NONNULL(state);
    QE_REQUIRE_NONNULL(values);
    return guarded([&] {
        auto p = qeraser::marginal_intensity(state->value, to_grid(grid));
        std::copy(p.values.begin(), p.values.end(), values);
    });
}

QE_API qe_status qe_basis_computational(size_t n, qe_basis **out) {
    QE_REQUIRE_NONNULL(out);
    return guarded([&] { *out = new qe_basis{qeraser::DetectorBasis::computational(n)}; });
}

QE_API qe_status qe_basis_sx3(qe_basis **out) {
    QE_REQUIRE_NONNULL(out);
    return guarded([&] { *out = new qe_basis{qeraser::DetectorBasis::sx3()}; });
}

QE_API qe_status qe_basis_eraser(size_t n, qe_basis **out) {
    QE_REQUIRE_NONNULL(out);
    return guarded([&] { *out = new qe_basis{qeraser::DetectorBasis::eraser(n)}; });
}

QE_API qe_status qe_basis_custom(size_t n, const qe_complex *rows, qe_basis **out) {
    QE_REQUIRE_NONNULL(rows);
    QE_REQUIRE_NONNULL(out);
    return guarded([&] { *out = new qe_basis{qeraser::DetectorBasis::custom(n, to_complex(rows, n * n))}; });
}

QE_API qe_status qe_basis_random(size_t n, uint64_t seed, qe_basis **out) {
    QE_REQUIRE_NONNULL(out);
    return guarded([&] { *out = new qe_basis{qeraser::DetectorBasis::random(n, seed)}; });
}

QE_API qe_status qe_basis_multiply(const qe_basis *lhs, const qe_basis *rhs, qe_basis **out) {
    QE_REQUIRE_NONNULL(lhs);
    QE_REQUIRE_NONNULL(rhs);
    QE_REQUIRE_NONNULL(out);
    return guarded([&] { *out = new qe_basis{qeraser::multiply(lhs->value, rhs->value)}; });
}

QE_API void qe_basis_destroy(qe_basis *basis) {
    delete basis;
}

QE_API qe_status qe_basis_dim(const qe_basis *basis, size_t *dim) {
    QE_REQUIRE_NONNULL(basis);
    QE_REQUIRE_NONNULL(dim);
    *dim = basis->value.dim();
    return QE_OK;
}

QE_API qe_status qe_basis_entry(const qe_basis *basis, size_t row, size_t col, qe_complex *entry) {
    QE_REQUIRE_NONNULL(basis);
    QE_REQUIRE_NONNULL(entry);
    if (row >= basis->value.dim() || col >= basis->value.dim()) {
        return set_error(QE_ERR_INVALID_ARGUMENT, "basis entry index out of range");
    }
    Complex z = basis->value.at(row, col);
    *entry = qe_complex{z.real(), z.imag()};
    return QE_OK;
}

QE_API qe_status qe_basis_label(const qe_basis *basis, size_t row, const char **label) {
    QE_REQUIRE_NONNULL(basis);
    QE_REQUIRE_NONNULL(label);
    if (row >= basis->value.dim()) {
        return set_error(QE_ERR_INVALID_ARGUMENT, "basis row out of range");
    }
    *label = basis->value.label(row).c_str();
    return QE_OK;
}

QE_API qe_status qe_project(const qe_state *state, const qe_basis *basis, size_t index, qe_state **out) {
    QE_REQUIRE_NONNULL(state);
    QE_REQUIRE_NONNULL(basis);
    QE_REQUIRE_NONNULL(out);
    return guarded([&] { *out = new qe_state{qeraser::project(state->value, basis->value, index)}; });
}

QE_API qe_status qe_outcome_probability(const qe_state *state, const qe_basis *basis, size_t index,
                                        double *probability) {
    QE_REQUIRE_NONNULL(state);
    QE_REQUIRE_NONNULL(basis);
    QE_REQUIRE_NONNULL(probability);
    return guarded([&] { *probability = qeraser::outcome_probability(state->value, basis->value, index); });
}

QE_API qe_status qe_joint_patterns(const qe_state *state, const qe_basis *basis, qe_grid grid, int normalize,
                                   double *values) {
    QE_REQUIRE_NONNULL(state);
    QE_REQUIRE_NONNULL(basis);
    QE_REQUIRE_NONNULL(values);
    return guarded([&] {
        auto patterns = qeraser::joint_patterns(state->value, basis->value, to_grid(grid), normalize != 0);
        for (std::size_t j = 0; j < patterns.size(); ++j) {
            std::copy(patterns[j].values.begin(), patterns[j].values.end(), values + j * grid.points);
        }
    });
}

QE_API qe_status qe_closed_form(qe_scenario scenario, double d, double epsilon, double a, qe_grid grid,
                                double *values, int *out_of_regime) {
    QE_REQUIRE_NONNULL(values);
    if (scenario < QE_PURE_EXACT || scenario > QE_ERASER_GAMMA) {
        return set_error(QE_ERR_INVALID_ARGUMENT, "unknown scenario");
    }
    return guarded([&] {
        auto result = qeraser::closed_form(static_cast<qeraser::Scenario>(scenario), d, epsilon, a, to_grid(grid));
        std::copy(result.pattern.values.begin(), result.pattern.values.end(), values);
        if (out_of_regime != nullptr) {
            *out_of_regime = result.out_of_regime ? 1 : 0;
        }
    });
}

QE_API qe_status qe_visibility(qe_grid grid, const double *pattern, const double *baseline, double fringe_period,
                               double *visibility) {
    QE_REQUIRE_NONNULL(pattern);
    QE_REQUIRE_NONNULL(baseline);
    QE_REQUIRE_NONNULL(visibility);
    return guarded([&] {
        auto g = to_grid(grid);
        *visibility = qeraser::visibility(as_pattern(g, pattern), as_pattern(g, baseline), fringe_period);
    });
}

QE_API qe_status qe_sorkin(double spacing, double epsilon, const qe_complex *amplitudes, double a, qe_grid grid,
                           double *values) {
    QE_REQUIRE_NONNULL(values);
    return guarded([&] {
        auto p = qeraser::sorkin(make_slits(3, spacing, epsilon, amplitudes), a, to_grid(grid));
        std::copy(p.values.begin(), p.values.end(), values);
    });
}

QE_API qe_status qe_compare(qe_grid grid, const double *p, const double *q, qe_comparison *out) {
    QE_REQUIRE_NONNULL(p);
    QE_REQUIRE_NONNULL(q);
    QE_REQUIRE_NONNULL(out);
    return guarded([&] {
        auto g = to_grid(grid);
        auto c = qeraser::compare(as_pattern(g, p), as_pattern(g, q));
        *out = qe_comparison{c.linf_abs, c.linf_rel, c.l2, c.x_at_max};
    });
}

QE_API qe_status qe_cross_validate(const qe_state *state, double a, qe_grid grid, qe_oracle_report *out) {
    QE_REQUIRE_NONNULL(state);
    QE_REQUIRE_NONNULL(out);
    return guarded([&] {
        auto r = qeraser::cross_validate(state->value, a, to_grid(grid));
        qe_oracle_report report{};
        for (const auto &c : r.components) {
            report.amplitude_linf_abs = std::max(report.amplitude_linf_abs, c.linf_abs);
            report.amplitude_linf_rel = std::max(report.amplitude_linf_rel, c.linf_rel);
            report.amplitude_l2 = std::max(report.amplitude_l2, c.l2);
        }
        report.pattern_linf_rel = r.pattern_linf_rel;
        report.norm_initial = r.norm_initial;
        report.norm_analytic = r.norm_analytic;
        report.norm_spectral = r.norm_spectral;
        report.domain = qe_grid{r.domain.x_min(), r.domain.x_max(), r.domain.size()};
        report.pass = r.pass ? 1 : 0;
        *out = report;
    });
}

}  // extern "C"
