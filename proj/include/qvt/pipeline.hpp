// Quantum training and detection stages for the circulant ridge tracker.
//
// Both stages share one circuit shape over registers (sign, data, eigen,
// flag), first register most significant:
//   1. phase estimation of exp(-i X~ t) writes signed eigenvalue estimates
//      of the Hermitian extension X~ into `eigen`,
//   2. a rotation conditioned on the estimate turns the flag by
//      f(lambda) = C lambda / (lambda^2 + alpha)   (training)
//      f(gamma)  = C' gamma                        (detection),
//   3. inverse phase estimation uncomputes `eigen`,
//   4. post-selecting flag = 1 and eigen = 0 leaves the target state on
//      (sign, data); the reported success probability is the joint weight
//      of that branch.
// Training maps |0>|y> to ~ |1>|w>; detection maps |1>|w> to ~ |0>|y_hat>,
// so the output of one feeds the other directly.
//
// Evolution modes: `spectral` applies the per-Fourier-mode 2x2 blocks of
// exp(-i X~ t) after a basis change on the data register (fast, exact);
// `exact_dense` and `lcu` drive the generic controlled-unitary machinery
// with a dense evolver, either exact or the truncated-Taylor segment
// operator. Phase mode `exact_stub` skips the eigen/flag registers entirely
// and applies the rotation at the exact eigenvalues, which isolates
// estimation error from the rest of the algorithm.
#ifndef QVT_PIPELINE_HPP
#define QVT_PIPELINE_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qvt/circulant.hpp"
#include "qvt/hamiltonian.hpp"
#include "qvt/phase_estimation.hpp"
#include "qvt/statevector.hpp"

namespace qvt {

enum class EvolutionMode { spectral, exact_dense, lcu };
enum class PhaseMode { full, exact_stub };

struct PipelineConfig {
    double t = 0.0;                       // evolution time, 0 = auto 0.9*pi/lambda_max
    int precision_qubits = 10;            // eigenvalue register width
    double alpha = 0.1;                   // training shrinkage (ignored by detection)
    double epsilon = 0.03;                // estimation accuracy target
    std::optional<double> rotation_scale; // C or C', auto-picked when unset
    int arcsin_order = 0;                 // rotation-angle series terms, 0 = closed form
    EvolutionMode evolution = EvolutionMode::spectral;
    PhaseMode phase_mode = PhaseMode::full;
};

struct ModeTrace {
    std::size_t freq = 0;     // flattened frequency index
    double lambda = 0.0;      // signed eigenvalue of the extension
    double lambda_grid = 0.0; // what the readout grid rounds it to
};

struct PipelineResult {
    StateVector state;                // registers (sign, data)
    double success_probability = 0.0; // P(flag = 1 and eigen = 0)
    double flag_probability = 0.0;    // P(flag = 1) alone
    double t = 0.0;
    double alpha = 0.0;
    double rotation_scale = 0.0;
    int precision_qubits = 0;
    std::vector<ModeTrace> trace;
};

/// Truncated arcsin series with `order` odd terms; order 0 is exact.
inline double arcsin_taylor(double v, int order) {
    if (order <= 0) {
        if (v < -1.0 || v > 1.0) throw std::invalid_argument("arcsin_taylor: |v| must be <= 1");
        return std::asin(v);
    }
    if (std::abs(v) > 1.0 - 1e-6)
        throw std::invalid_argument("arcsin_taylor: series needs |v| <= 1 - 1e-6");
    double coef = 1.0, power = v, sum = 0.0;
    for (int k = 0; k < order; ++k) {
        if (k > 0) {
            coef *= (2.0 * k - 1.0) / (2.0 * k);
            power *= v * v;
        }
        sum += coef * power / (2.0 * k + 1.0);
    }
    return sum;
}

/// Post-selection floor for a successful training pass: with rotation
/// headroom 0.9 the success probability cannot drop below about
/// (0.9)^2/(2 kappa^2) minus the estimation error; this keeps the
/// conservative 1/(2 kappa^2) - eps form.
inline double train_success_floor(double kappa, double eps) {
    return std::max(0.0, 0.5 / (kappa * kappa) - eps);
}

namespace detail {

struct StagePlan {
    std::vector<cd> coeff; // generator DFT in frequency order
    std::size_t logical_rows = 0, logical_cols = 1;
    int d = 0; // data qubits
    double t = 0.0;
    int s = 0;
    double alpha = 0.0;
    bool training = true;
    double scale = 0.0;
    int arcsin_order = 0;
    EvolutionMode evolution = EvolutionMode::spectral;
    PhaseMode phase_mode = PhaseMode::full;
    double epsilon = 0.0;
    double lambda_max = 0.0;

    std::size_t logical_dim() const { return logical_rows * logical_cols; }
};

inline double rotation_amplitude(const StagePlan& p, double lam) {
    double f = p.training ? p.scale * lam / (lam * lam + p.alpha) : p.scale * lam;
    if (f > 1.0) f = 1.0;
    if (f < -1.0) f = -1.0;
    if (p.arcsin_order > 0) {
        const double lim = 1.0 - 1e-6;
        f = std::clamp(f, -lim, lim);
        f = std::sin(arcsin_taylor(f, p.arcsin_order));
    }
    return f;
}

template <class Op>
StagePlan make_plan(const Op& op, const PipelineConfig& cfg, bool training, std::size_t rows,
                    std::size_t cols) {
    const SpectralData spec = spectral(op);
    if (spec.singular)
        throw std::domain_error("pipeline: operator spectrum is singular (condition number too large)");
    if (!(cfg.epsilon > 0.0 && cfg.epsilon <= 0.5))
        throw std::invalid_argument("pipeline: epsilon must lie in (0, 0.5]");
    if (training && (!(cfg.alpha > 0.0) || !std::isfinite(cfg.alpha)))
        throw std::invalid_argument("pipeline: alpha must be positive and finite");

    StagePlan plan;
    plan.coeff = op.spectrum();
    plan.logical_rows = rows;
    plan.logical_cols = cols;
    plan.d = std::max(1, ceil_log2(plan.logical_dim()));
    plan.alpha = training ? cfg.alpha : 0.0;
    plan.training = training;
    plan.arcsin_order = cfg.arcsin_order;
    plan.evolution = cfg.evolution;
    plan.phase_mode = cfg.phase_mode;
    plan.epsilon = cfg.epsilon;
    plan.lambda_max = spec.lambda_max;

    plan.t = cfg.t == 0.0 ? 0.9 * std::numbers::pi / spec.lambda_max : cfg.t;
    if (!(plan.t > 0.0)) throw std::invalid_argument("pipeline: t must be positive");
    if (plan.t * spec.lambda_max >= std::numbers::pi * (1.0 - 1e-12))
        throw std::invalid_argument(
            "pipeline: t * lambda_max must stay below pi or eigenphases wrap");

    plan.s = cfg.precision_qubits;
    const int s_needed =
        static_cast<int>(std::ceil(std::log2(spec.condition_number / cfg.epsilon))) + 2;
    if (plan.phase_mode == PhaseMode::full && plan.s < s_needed)
        throw std::invalid_argument("pipeline: " + std::to_string(plan.s) +
                                    " precision qubits cannot resolve kappa = " +
                                    std::to_string(spec.condition_number) + " to epsilon = " +
                                    std::to_string(cfg.epsilon) + " (need " +
                                    std::to_string(s_needed) + ")");
    if (plan.s < 1) throw std::invalid_argument("pipeline: need >= 1 precision qubit");
    if (2 + plan.d + plan.s > kQubitBudget)
        throw std::invalid_argument("pipeline: sign+data+eigen+flag = " +
                                    std::to_string(2 + plan.d + plan.s) + " qubits exceed " +
                                    std::to_string(kQubitBudget));

    if (cfg.rotation_scale) {
        plan.scale = *cfg.rotation_scale;
        if (!(plan.scale > 0.0)) throw std::invalid_argument("pipeline: rotation scale must be positive");
    } else if (training) {
        double peak = 0.0;
        for (double lam : spec.lambda) peak = std::max(peak, lam / (lam * lam + plan.alpha));
        plan.scale = 0.9 / peak;
    } else {
        plan.scale = 0.9 / spec.lambda_max;
    }
    // explicit scales must keep every spectrum rotation a valid amplitude
    for (double lam : spec.lambda) {
        const double f = training ? plan.scale * lam / (lam * lam + plan.alpha) : plan.scale * lam;
        if (std::abs(f) > 1.0 + 1e-12)
            throw std::invalid_argument("pipeline: rotation scale drives |f(lambda)| above 1");
    }
    return plan;
}

inline void data_basis_change(StateVector& compact, const StagePlan& p, bool forward) {
    auto& amp = compact.amplitudes();
    const std::size_t dd = std::size_t{1} << p.d;
    const std::size_t logical = p.logical_dim();
    std::vector<cd> buf(logical);
    for (std::size_t sign = 0; sign < 2; ++sign) {
        cd* base = amp.data() + sign * dd;
        std::copy(base, base + logical, buf.begin());
        if (forward)
            fourier_analysis_inplace(buf, p.logical_rows, p.logical_cols);
        else
            fourier_synthesis_inplace(buf, p.logical_rows, p.logical_cols);
        std::copy(buf.begin(), buf.end(), base);
    }
}

inline std::vector<ModeTrace> grid_trace(const StagePlan& p) {
    std::vector<ModeTrace> trace;
    trace.reserve(2 * p.logical_dim());
    for (std::size_t j = 0; j < p.logical_dim(); ++j) {
        const double lam = std::abs(p.coeff[j]);
        for (double sign : {+1.0, -1.0}) {
            ModeTrace mt;
            mt.freq = j;
            mt.lambda = sign * lam;
            mt.lambda_grid = p.phase_mode == PhaseMode::exact_stub
                                 ? mt.lambda
                                 : decode_eigenvalue(encode_eigenvalue(mt.lambda, p.s, p.t), p.s, p.t);
            trace.push_back(mt);
        }
    }
    return trace;
}

/// Rotation and post-selection at the exact eigenvalues, in the Fourier
/// frame, per-mode on the (sign=0, sign=1) pair.
inline PipelineResult run_stub(const StagePlan& p, StateVector compact) {
    data_basis_change(compact, p, true);
    auto& amp = compact.amplitudes();
    const std::size_t dd = std::size_t{1} << p.d;
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    double success = 0.0;
    for (std::size_t j = 0; j < dd; ++j) {
        cd& a0 = amp[j];
        cd& a1 = amp[dd + j];
        if (j >= p.logical_dim()) {
            // outside the embedded operator the Hamiltonian is zero, so the
            // rotation amplitude f(0) = 0 annihilates any stray weight
            a0 = a1 = cd(0, 0);
            continue;
        }
        const double lam = std::abs(p.coeff[j]);
        const cd eip = lam > 0.0 ? p.coeff[j] / lam : cd(1, 0);
        const cd aplus = (a0 + eip * a1) * inv_sqrt2;
        const cd aminus = (a0 - eip * a1) * inv_sqrt2;
        const double fp = rotation_amplitude(p, lam);
        const double fm = rotation_amplitude(p, -lam);
        a0 = (fp * aplus + fm * aminus) * inv_sqrt2;
        a1 = (fp * aplus - fm * aminus) * std::conj(eip) * inv_sqrt2;
        success += std::norm(a0) + std::norm(a1);
    }
    if (success < kZeroProjectionTol)
        throw std::domain_error("pipeline: post-selection weight vanished");
    const double inv = 1.0 / std::sqrt(success);
    for (cd& z : amp) z *= inv;
    data_basis_change(compact, p, false);

    PipelineResult out{std::move(compact)};
    out.success_probability = success;
    out.flag_probability = success;
    return out;
}

/// One controlled power of the per-mode evolution blocks, applied in the
/// Fourier frame of the full (sign, data, eigen, flag) state.
inline void controlled_mode_power(std::vector<cd>& amp, const StagePlan& p, int k, bool dagger) {
    const std::size_t dd = std::size_t{1} << p.d;
    const std::size_t ss = std::size_t{1} << p.s;
    const double tk = p.t * static_cast<double>(std::uint64_t{1} << k);
    const std::size_t sign_stride = dd * ss * 2;

    for (std::size_t j = 0; j < p.logical_dim(); ++j) {
        const double lam = std::abs(p.coeff[j]);
        const cd eip = lam > 0.0 ? p.coeff[j] / lam : cd(1, 0);
        const double c = std::cos(lam * tk);
        const double s = std::sin(lam * tk);
        const cd i_unit = dagger ? cd(0, 1) : cd(0, -1);
        const cd m01 = i_unit * eip * s;
        const cd m10 = i_unit * std::conj(eip) * s;
        if (lam == 0.0) continue;
        for (std::size_t e = 0; e < ss; ++e) {
            if (!((e >> k) & 1)) continue;
            const std::size_t base = (j * ss + e) << 1;
            for (std::size_t f = 0; f < 2; ++f) {
                cd& a0 = amp[base + f];
                cd& a1 = amp[base + f + sign_stride];
                const cd b0 = c * a0 + m01 * a1;
                const cd b1 = m10 * a0 + c * a1;
                a0 = b0;
                a1 = b1;
            }
        }
    }
}

inline void flag_rotation(StateVector& st, const StagePlan& p) {
    std::vector<double> table(std::size_t{1} << p.s);
    for (std::size_t r = 0; r < table.size(); ++r)
        table[r] = rotation_amplitude(p, decode_eigenvalue(r, p.s, p.t));
    auto& amp = st.amplitudes();
    const std::size_t smask = table.size() - 1;
    for (std::size_t idx = 0; idx < amp.size(); idx += 2) {
        const double a = table[(idx >> 1) & smask];
        amp[idx + 1] = amp[idx] * a;         // flag flips to 1
        amp[idx] *= std::sqrt(1.0 - a * a);  // flag stays 0
    }
}

inline PipelineResult run_full(const StagePlan& p, StateVector compact) {
    const bool fast = p.evolution == EvolutionMode::spectral;
    if (fast) data_basis_change(compact, p, true);

    QubitLayout lay({{"sign", 1}, {"data", p.d}, {"eigen", p.s}, {"flag", 1}});
    std::vector<cd> amps(lay.dim(), cd(0, 0));
    for (std::size_t i = 0; i < compact.amplitudes().size(); ++i)
        amps[i << (p.s + 1)] = compact.amplitudes()[i];
    StateVector st = StateVector::from_amplitudes(std::move(lay), std::move(amps));

    std::unique_ptr<Evolver> ev;
    if (!fast) {
        const std::size_t dd = std::size_t{1} << p.d;
        Eigen::MatrixXcd x_emb = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dd),
                                                        static_cast<Eigen::Index>(dd));
        // rebuild the embedded operator from its Fourier data
        const std::size_t logical = p.logical_dim();
        std::vector<cd> col(logical);
        for (std::size_t cix = 0; cix < logical; ++cix) {
            std::fill(col.begin(), col.end(), cd(0, 0));
            col[cix] = cd(1, 0);
            fourier_analysis_inplace(col, p.logical_rows, p.logical_cols);
            for (std::size_t m = 0; m < logical; ++m) col[m] *= p.coeff[m];
            fourier_synthesis_inplace(col, p.logical_rows, p.logical_cols);
            for (std::size_t rix = 0; rix < logical; ++rix)
                x_emb(static_cast<Eigen::Index>(rix), static_cast<Eigen::Index>(cix)) = col[rix];
        }
        const Eigen::MatrixXcd h = extended_hamiltonian(x_emb);
        if (p.evolution == EvolutionMode::exact_dense)
            ev = std::make_unique<ExactEvolver>(h, p.t);
        else
            ev = std::make_unique<TaylorLcuEvolver>(h, p.t, p.epsilon / 2.0, p.s);
    }

    const std::vector<std::string> targets{"sign", "data"};
    const double tol =
        ev ? std::max(kUnitarityTol, 4.0 * std::ldexp(ev->unitarity_tolerance(), p.s)) : kUnitarityTol;

    st.hadamard_register("eigen");
    for (int k = 0; k < p.s; ++k) {
        if (fast)
            controlled_mode_power(st.amplitudes(), p, k, false);
        else
            st.apply_controlled_unitary(ev->power(std::uint64_t{1} << k), "eigen", k, targets, tol);
    }
    st.qft("eigen");

    flag_rotation(st, p);

    st.inverse_qft("eigen");
    for (int k = p.s - 1; k >= 0; --k) {
        if (fast)
            controlled_mode_power(st.amplitudes(), p, k, true);
        else
            st.apply_controlled_unitary(ev->power(std::uint64_t{1} << k).adjoint(), "eigen", k,
                                        targets, tol);
    }
    st.hadamard_register("eigen");

    PipelineResult out;
    out.flag_probability = st.project("flag", std::uint64_t{1});
    const double p_eigen = st.project("eigen", std::uint64_t{0});
    out.success_probability = out.flag_probability * p_eigen;
    st.remove_register("flag");
    st.remove_register("eigen");
    if (fast) data_basis_change(st, p, false);
    out.state = std::move(st);
    return out;
}

inline PipelineResult run_stage(const StagePlan& p, StateVector compact) {
    const QubitLayout expect({{"sign", 1}, {"data", p.d}});
    if (!(compact.layout() == expect))
        throw std::invalid_argument("pipeline: input state must have registers (sign, data)");
    PipelineResult out = p.phase_mode == PhaseMode::exact_stub ? run_stub(p, std::move(compact))
                                                               : run_full(p, std::move(compact));
    out.t = p.t;
    out.alpha = p.alpha;
    out.rotation_scale = p.scale;
    out.precision_qubits = p.s;
    out.trace = grid_trace(p);
    return out;
}

/// Accepts (data) or (sign, data) inputs; a missing sign register is added
/// in the basis state `sign_value`.
inline StateVector with_sign(const StateVector& in, int sign_value, int d) {
    const QubitLayout bare({{"data", d}});
    const QubitLayout full({{"sign", 1}, {"data", d}});
    if (in.layout() == full) return in;
    if (in.layout() == bare) {
        const std::vector<double> basis = sign_value == 0 ? std::vector<double>{1, 0}
                                                          : std::vector<double>{0, 1};
        return tensor(StateVector::encode(QubitLayout({{"sign", 1}}), "sign", basis), in);
    }
    throw std::invalid_argument("pipeline: input needs a 'data' register of " + std::to_string(d) +
                                " qubits, optionally preceded by 'sign'");
}

} // namespace detail

inline PipelineResult train_quantum(const CirculantMatrix& x, const StateVector& labels,
                                    const PipelineConfig& cfg = {}) {
    const auto plan = detail::make_plan(x, cfg, true, x.dim(), 1);
    return detail::run_stage(plan, detail::with_sign(labels, 0, plan.d));
}

inline PipelineResult train_quantum(const BlockCirculant& x, const StateVector& labels,
                                    const PipelineConfig& cfg = {}) {
    const auto plan = detail::make_plan(x, cfg, true, x.rows(), x.cols());
    return detail::run_stage(plan, detail::with_sign(labels, 0, plan.d));
}

inline PipelineResult detect_quantum(const CirculantMatrix& z, const StateVector& filter,
                                     const PipelineConfig& cfg = {}) {
    const auto plan = detail::make_plan(z, cfg, false, z.dim(), 1);
    return detail::run_stage(plan, detail::with_sign(filter, 1, plan.d));
}

inline PipelineResult detect_quantum(const BlockCirculant& z, const StateVector& filter,
                                     const PipelineConfig& cfg = {}) {
    const auto plan = detail::make_plan(z, cfg, false, z.rows(), z.cols());
    return detail::run_stage(plan, detail::with_sign(filter, 1, plan.d));
}

} // namespace qvt

#endif
