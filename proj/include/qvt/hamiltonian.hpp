// The Hermitian extension of a circulant X and ways to simulate exp(-i X~ t).
//
//   X~ = |0><1| (x) X  +  |1><0| (x) X'   (blocks [[0, X], [X', 0]])
//
// X~ decomposes over cyclic shift unitaries: with V_j = sum_l |l-j+1 mod n><l|
// (1-based j, V_1 = I) the generator satisfies sum_j x_j V_j = X, and the
// extended shifts V~_j = (|0><0| (x) V_j + |1><1| (x) V_j')(sigma_x (x) I)
// sum to X~ the same way. That makes sum_j x_j = 1 normalization the
// ingredient that lets a select-over-shifts circuit block-encode X~.
//
// ExactEvolver diagonalizes; TaylorLcuEvolver reproduces what a truncated
// Taylor series block encoding would do: the post-selected operator of one
// segment is exactly T_K(tau) = sum_{k<=K} (-i tau X~)^k / k!, applied
// r = ceil(t) times with tau = t/r.
#ifndef QVT_HAMILTONIAN_HPP
#define QVT_HAMILTONIAN_HPP

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qvt/circulant.hpp"

namespace qvt {

inline constexpr std::size_t kExactEvolveBudget = 128;

/// V_j for 1-based j in [1, n]: maps |l> to |(l - j + 1) mod n>.
inline Eigen::MatrixXcd shift_unitary(std::size_t j, std::size_t n) {
    if (j < 1 || j > n) throw std::invalid_argument("shift_unitary: j must be in [1, n]");
    Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t l = 0; l < n; ++l)
        v(static_cast<Eigen::Index>((l + n - (j - 1)) % n), static_cast<Eigen::Index>(l)) = 1.0;
    return v;
}

/// V~_j, unitary, with sum_j x_j V~_j = X~ for the circulant generated by x.
inline Eigen::MatrixXcd extended_shift_unitary(std::size_t j, std::size_t n) {
    const Eigen::MatrixXcd v = shift_unitary(j, n);
    const Eigen::Index ni = static_cast<Eigen::Index>(n);
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(2 * ni, 2 * ni);
    out.block(0, ni, ni, ni) = v;
    out.block(ni, 0, ni, ni) = v.adjoint();
    return out;
}

inline Eigen::MatrixXcd extended_hamiltonian(const Eigen::MatrixXcd& x) {
    if (x.rows() != x.cols()) throw std::invalid_argument("extended_hamiltonian: matrix not square");
    const Eigen::Index n = x.rows();
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
    h.block(0, n, n, n) = x;
    h.block(n, 0, n, n) = x.adjoint();
    return h;
}

inline Eigen::MatrixXcd extended_hamiltonian(const CirculantMatrix& x) {
    return extended_hamiltonian(Eigen::MatrixXcd(x.dense().cast<cd>()));
}

inline Eigen::MatrixXcd extended_hamiltonian(const BlockCirculant& x) {
    return extended_hamiltonian(Eigen::MatrixXcd(x.dense().cast<cd>()));
}

/// Supplies controlled powers W^p of one step W ~ exp(-i H t) to phase
/// estimation. unitarity_tolerance tells the state-vector layer how far W
/// may drift from exactly unitary (relevant for truncated-series evolvers).
class Evolver {
  public:
    virtual ~Evolver() = default;
    virtual Eigen::Index dim() const = 0;
    virtual Eigen::MatrixXcd power(std::uint64_t p) const = 0;
    virtual double unitarity_tolerance() const { return 1e-10; }
};

class ExactEvolver : public Evolver {
  public:
    ExactEvolver(const Eigen::MatrixXcd& h, double t) : t_(t) {
        if (h.rows() != h.cols()) throw std::invalid_argument("ExactEvolver: matrix not square");
        if (static_cast<std::size_t>(h.rows()) > kExactEvolveBudget)
            throw std::invalid_argument("ExactEvolver: dimension exceeds budget " +
                                        std::to_string(kExactEvolveBudget));
        const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
        if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
            throw std::invalid_argument("ExactEvolver: matrix is not Hermitian");
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
        vectors_ = es.eigenvectors();
        values_ = es.eigenvalues();
    }

    Eigen::Index dim() const override { return vectors_.rows(); }

    Eigen::MatrixXcd power(std::uint64_t p) const override {
        Eigen::VectorXcd phases(values_.size());
        for (Eigen::Index i = 0; i < values_.size(); ++i) {
            const double ang = -values_(i) * t_ * static_cast<double>(p);
            phases(i) = cd(std::cos(ang), std::sin(ang));
        }
        return vectors_ * phases.asDiagonal() * vectors_.adjoint();
    }

  private:
    Eigen::MatrixXcd vectors_;
    Eigen::VectorXd values_;
    double t_;
};

inline Eigen::MatrixXcd exact_evolve(const Eigen::MatrixXcd& h, double t) {
    return ExactEvolver(h, t).power(1);
}

namespace detail {

/// Tail mass rho_K = sum_{k>K} tau^k / k!.
inline double taylor_tail(double tau, int k_max) {
    double term = 1.0;
    for (int k = 1; k <= k_max; ++k) term *= tau / static_cast<double>(k);
    double tail = 0.0;
    for (int k = k_max + 1; k <= k_max + 80; ++k) {
        term *= tau / static_cast<double>(k);
        tail += term;
        if (term < 1e-300) break;
    }
    return tail;
}

/// Smallest K whose r-segment compounded error bound meets eps:
/// r * (1 + rho_K)^(r-1) * rho_K <= eps.
inline int taylor_order_for(double tau, int segments, double eps) {
    for (int k = 1; k <= 80; ++k) {
        const double rho = taylor_tail(tau, k);
        const double bound = static_cast<double>(segments) *
                             std::pow(1.0 + rho, segments - 1) * rho;
        if (bound <= eps) return k;
    }
    throw std::domain_error("taylor_order_for: eps unattainable");
}

inline Eigen::MatrixXcd taylor_segment(const Eigen::MatrixXcd& h, double tau, int order) {
    const Eigen::Index n = h.rows();
    const Eigen::MatrixXcd step = cd(0, -tau) * h;
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Identity(n, n);
    // Horner: I + A(I + A/2 (I + A/3 (...)))
    for (int k = order; k >= 1; --k) sum = Eigen::MatrixXcd::Identity(n, n) + step * sum / static_cast<double>(k);
    return sum;
}

} // namespace detail

struct LcuEvolution {
    Eigen::MatrixXcd op;      // post-selected operator ~ exp(-i X~ t)
    int taylor_order = 0;     // K
    int segments = 0;         // r
    double tau = 0.0;         // t / r
    double segment_norm = 1;  // s = sum_{k<=K} tau^k / k!, the prepare weight per segment
    std::vector<double> prepare_amplitudes; // sqrt(x_j) select-register loadings
    double error_bound = 0.0; // a-priori bound on ||op - exp(-i X~ t)||
};

/// Models the truncated-Taylor-series simulation of exp(-i X~ t) for a
/// normalized circulant (nonnegative generator, unit sum, so ||X~|| <= 1).
/// Returns the exact post-selected operator T_K(t/r)^r together with the
/// chosen truncation order and segment count.
inline LcuEvolution lcu_evolve(const CirculantMatrix& x, double t, double eps) {
    const auto& gen = x.generator();
    double sum = 0.0;
    for (double v : gen) {
        if (v < -1e-15) throw std::invalid_argument("lcu_evolve: generator must be nonnegative");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("lcu_evolve: generator must sum to 1 (normalize_for_oracle)");
    if (!(t >= 0.0)) throw std::invalid_argument("lcu_evolve: t must be >= 0");
    if (!(eps >= 1e-12 && eps < 1.0))
        throw std::invalid_argument("lcu_evolve: eps must lie in [1e-12, 1)");

    LcuEvolution out;
    out.prepare_amplitudes.resize(gen.size());
    for (std::size_t j = 0; j < gen.size(); ++j)
        out.prepare_amplitudes[j] = std::sqrt(std::max(0.0, gen[j]));

    const Eigen::MatrixXcd h = extended_hamiltonian(x);
    if (t == 0.0) {
        out.op = Eigen::MatrixXcd::Identity(h.rows(), h.cols());
        return out;
    }

    out.segments = static_cast<int>(std::ceil(t));
    out.tau = t / static_cast<double>(out.segments);
    out.taylor_order = detail::taylor_order_for(out.tau, out.segments, eps);
    const double rho = detail::taylor_tail(out.tau, out.taylor_order);
    out.error_bound = static_cast<double>(out.segments) *
                      std::pow(1.0 + rho, out.segments - 1) * rho;
    out.segment_norm = 1.0;
    double term = 1.0;
    for (int k = 1; k <= out.taylor_order; ++k) {
        term *= out.tau / static_cast<double>(k);
        out.segment_norm += term;
    }

    const Eigen::MatrixXcd seg = detail::taylor_segment(h, out.tau, out.taylor_order);
    out.op = Eigen::MatrixXcd::Identity(h.rows(), h.cols());
    for (int s = 0; s < out.segments; ++s) out.op = seg * out.op;
    return out;
}

/// Evolver view of truncated-Taylor simulation for an arbitrary Hermitian h
/// with ||h|| <= 1 (the pipeline passes the register-embedded extension,
/// which only pads zero rows onto X~). Each requested power W^p is its own
/// simulation of duration p*t, so errors do not compound as matrix powers;
/// `power_count` splits the total eps budget across the distinct powers a
/// phase estimation will request.
class TaylorLcuEvolver : public Evolver {
  public:
    TaylorLcuEvolver(const Eigen::MatrixXcd& h, double t, double eps, int power_count = 1)
        : h_(h), t_(t) {
        if (h.rows() != h.cols()) throw std::invalid_argument("TaylorLcuEvolver: matrix not square");
        if (!(t > 0.0)) throw std::invalid_argument("TaylorLcuEvolver: t must be > 0");
        if (!(eps >= 1e-12 && eps < 1.0))
            throw std::invalid_argument("TaylorLcuEvolver: eps must lie in [1e-12, 1)");
        if (power_count < 1) throw std::invalid_argument("TaylorLcuEvolver: power_count must be >= 1");
        eps_each_ = eps / static_cast<double>(power_count);
        eps_total_ = eps;
    }

    Eigen::Index dim() const override { return h_.rows(); }

    Eigen::MatrixXcd power(std::uint64_t p) const override {
        if (p == 0) return Eigen::MatrixXcd::Identity(dim(), dim());
        const auto it = cache_.find(p);
        if (it != cache_.end()) return it->second;
        const double duration = t_ * static_cast<double>(p);
        const int segments = static_cast<int>(std::ceil(duration));
        const double tau = duration / static_cast<double>(segments);
        const int order = detail::taylor_order_for(tau, segments, eps_each_);
        const Eigen::MatrixXcd seg = detail::taylor_segment(h_, tau, order);
        Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(dim(), dim());
        for (int s = 0; s < segments; ++s) out = seg * out;
        return cache_[p] = std::move(out);
    }

    double unitarity_tolerance() const override { return 4.0 * eps_each_ + 1e-10; }

    double per_power_eps() const { return eps_each_; }
    double total_eps() const { return eps_total_; }

  private:
    Eigen::MatrixXcd h_;
    double t_;
    double eps_each_ = 0.0;
    double eps_total_ = 0.0;
    mutable std::map<std::uint64_t, Eigen::MatrixXcd> cache_;
};

} // namespace qvt

#endif
