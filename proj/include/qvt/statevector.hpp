// Dense state-vector simulator over named qubit registers. The first
// register in a layout occupies the most significant bits of the basis
// index; within a register, bit k has weight 2^k. Amplitudes are a flat
// complex array of length 2^(total qubits), hard-capped at 22 qubits.
#ifndef QVT_STATEVECTOR_HPP
#define QVT_STATEVECTOR_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qvt/fft.hpp"
#include "qvt/rng.hpp"

namespace qvt {

inline constexpr int kQubitBudget = 22;
inline constexpr double kUnitarityTol = 1e-10;
inline constexpr double kZeroProjectionTol = 1e-14;

struct Register {
    std::string name;
    int qubits = 0;
};

class QubitLayout {
  public:
    QubitLayout() = default;

    explicit QubitLayout(std::vector<Register> regs) : regs_(std::move(regs)) {
        int total = 0;
        for (const auto& r : regs_) {
            if (r.name.empty()) throw std::invalid_argument("QubitLayout: empty register name");
            if (r.qubits < 1) throw std::invalid_argument("QubitLayout: register needs >= 1 qubit");
            total += r.qubits;
        }
        for (std::size_t i = 0; i < regs_.size(); ++i)
            for (std::size_t j = i + 1; j < regs_.size(); ++j)
                if (regs_[i].name == regs_[j].name)
                    throw std::invalid_argument("QubitLayout: duplicate register name " + regs_[i].name);
        if (total > kQubitBudget)
            throw std::invalid_argument("QubitLayout: " + std::to_string(total) +
                                        " qubits exceed the budget of " + std::to_string(kQubitBudget));
        total_ = total;
    }

    int total_qubits() const { return total_; }
    std::size_t dim() const { return std::size_t{1} << total_; }
    const std::vector<Register>& registers() const { return regs_; }

    bool has(std::string_view name) const {
        for (const auto& r : regs_)
            if (r.name == name) return true;
        return false;
    }

    const Register& reg(std::string_view name) const {
        for (const auto& r : regs_)
            if (r.name == name) return r;
        throw std::invalid_argument("QubitLayout: no register named " + std::string(name));
    }

    /// Bit offset (from the least significant end) of a register's bit 0.
    int offset(std::string_view name) const {
        int off = total_;
        for (const auto& r : regs_) {
            off -= r.qubits;
            if (r.name == name) return off;
        }
        throw std::invalid_argument("QubitLayout: no register named " + std::string(name));
    }

    bool operator==(const QubitLayout& o) const {
        if (regs_.size() != o.regs_.size()) return false;
        for (std::size_t i = 0; i < regs_.size(); ++i)
            if (regs_[i].name != o.regs_[i].name || regs_[i].qubits != o.regs_[i].qubits) return false;
        return true;
    }

  private:
    std::vector<Register> regs_;
    int total_ = 0;
};

class StateVector {
  public:
    static StateVector zero(QubitLayout layout) {
        StateVector s;
        s.layout_ = std::move(layout);
        s.amp_.assign(s.layout_.dim(), cd(0, 0));
        s.amp_[0] = cd(1, 0);
        return s;
    }

    /// Amplitudes must be normalized within 1e-10; the residual is divided out.
    static StateVector from_amplitudes(QubitLayout layout, std::vector<cd> amps) {
        if (amps.size() != layout.dim())
            throw std::invalid_argument("StateVector: amplitude count does not match layout");
        double n2 = 0;
        for (const cd& a : amps) n2 += std::norm(a);
        if (std::abs(n2 - 1.0) > 1e-10)
            throw std::invalid_argument("StateVector: amplitudes not normalized (|norm^2-1| = " +
                                        std::to_string(std::abs(n2 - 1.0)) + ")");
        const double inv = 1.0 / std::sqrt(n2);
        for (cd& a : amps) a *= inv;
        StateVector s;
        s.layout_ = std::move(layout);
        s.amp_ = std::move(amps);
        return s;
    }

    /// Encodes `values` (normalized internally) on one register, all other
    /// registers in |0>. values.size() must not exceed the register dimension.
    static StateVector encode(QubitLayout layout, std::string_view reg, const std::vector<cd>& values) {
        const auto& r = layout.reg(reg);
        if (values.size() > (std::size_t{1} << r.qubits))
            throw std::invalid_argument("StateVector::encode: too many values for register");
        double n2 = 0;
        for (const cd& v : values) n2 += std::norm(v);
        if (n2 <= 0.0) throw std::invalid_argument("StateVector::encode: zero vector");
        const double inv = 1.0 / std::sqrt(n2);
        StateVector s = zero(layout);
        s.amp_[0] = cd(0, 0);
        const int off = s.layout_.offset(reg);
        for (std::size_t j = 0; j < values.size(); ++j) s.amp_[j << off] = values[j] * inv;
        return s;
    }

    static StateVector encode(QubitLayout layout, std::string_view reg, const std::vector<double>& values) {
        return encode(std::move(layout), reg, std::vector<cd>(values.begin(), values.end()));
    }

    const QubitLayout& layout() const { return layout_; }
    const std::vector<cd>& amplitudes() const { return amp_; }
    std::vector<cd>& amplitudes() { return amp_; }

    double norm_error() const {
        double n2 = 0;
        for (const cd& a : amp_) n2 += std::norm(a);
        return std::abs(n2 - 1.0);
    }

    /// Applies a dense unitary to the named registers; the first named
    /// register holds the most significant bits of the gate's local index.
    void apply_unitary(const Eigen::MatrixXcd& u, const std::vector<std::string>& targets,
                       double unitarity_tol = kUnitarityTol) {
        apply_gate(u, targets, -1, unitarity_tol);
    }

    /// Same, applied only where bit `control_bit` of `control_reg` is 1.
    void apply_controlled_unitary(const Eigen::MatrixXcd& u, std::string_view control_reg,
                                  int control_bit, const std::vector<std::string>& targets,
                                  double unitarity_tol = kUnitarityTol) {
        const auto& creg = layout_.reg(control_reg);
        if (control_bit < 0 || control_bit >= creg.qubits)
            throw std::invalid_argument("apply_controlled_unitary: control bit out of range");
        for (const auto& t : targets)
            if (t == control_reg)
                throw std::invalid_argument("apply_controlled_unitary: control register is a target");
        apply_gate(u, targets, layout_.offset(control_reg) + control_bit, unitarity_tol);
    }

    void hadamard_register(std::string_view reg) {
        const auto& r = layout_.reg(reg);
        const int off = layout_.offset(reg);
        const double inv = 1.0 / std::numbers::sqrt2;
        for (int b = 0; b < r.qubits; ++b) {
            const std::size_t bit = std::size_t{1} << (off + b);
            for (std::size_t i = 0; i < amp_.size(); ++i) {
                if (i & bit) continue;
                const cd a0 = amp_[i], a1 = amp_[i | bit];
                amp_[i] = (a0 + a1) * inv;
                amp_[i | bit] = (a0 - a1) * inv;
            }
        }
    }

    /// QFT on one register: |k> -> sum_l exp(+2 pi i k l / N) |l> / sqrt(N).
    void qft(std::string_view reg) { qft_impl(reg, +1); }
    void inverse_qft(std::string_view reg) { qft_impl(reg, -1); }

    std::vector<double> marginal(std::string_view reg) const {
        const auto& r = layout_.reg(reg);
        const int off = layout_.offset(reg);
        const std::size_t mask = (std::size_t{1} << r.qubits) - 1;
        std::vector<double> p(std::size_t{1} << r.qubits, 0.0);
        for (std::size_t i = 0; i < amp_.size(); ++i) p[(i >> off) & mask] += std::norm(amp_[i]);
        return p;
    }

    /// Deterministic projective measurement: collapses the register to
    /// `outcome`, renormalizes, and returns the outcome probability. An
    /// outcome with probability below 1e-14 is an error.
    double project(std::string_view reg, std::uint64_t outcome) {
        const auto& r = layout_.reg(reg);
        if (outcome >> r.qubits)
            throw std::invalid_argument("project: outcome wider than register");
        const int off = layout_.offset(reg);
        const std::size_t mask = (std::size_t{1} << r.qubits) - 1;
        double p = 0;
        for (std::size_t i = 0; i < amp_.size(); ++i)
            if (((i >> off) & mask) == outcome) p += std::norm(amp_[i]);
        if (p < kZeroProjectionTol)
            throw std::domain_error("project: outcome " + std::to_string(outcome) + " on register " +
                                    std::string(reg) + " has probability " + std::to_string(p));
        const double inv = 1.0 / std::sqrt(p);
        for (std::size_t i = 0; i < amp_.size(); ++i) {
            if (((i >> off) & mask) == outcome)
                amp_[i] *= inv;
            else
                amp_[i] = cd(0, 0);
        }
        return p;
    }

    /// Bitstring overload; leftmost character is the register's most
    /// significant bit.
    double project(std::string_view reg, std::string_view bits) {
        const auto& r = layout_.reg(reg);
        if (bits.size() != static_cast<std::size_t>(r.qubits))
            throw std::invalid_argument("project: bitstring length != register width");
        std::uint64_t outcome = 0;
        for (char c : bits) {
            if (c != '0' && c != '1') throw std::invalid_argument("project: bitstring must be 0/1");
            outcome = (outcome << 1) | static_cast<std::uint64_t>(c - '0');
        }
        return project(reg, outcome);
    }

    /// Seeded multinomial sampling of a register in the computational basis.
    std::map<std::uint64_t, std::uint64_t> sample(std::string_view reg, std::uint64_t shots,
                                                  std::uint64_t seed) const {
        std::vector<double> p = marginal(reg);
        std::vector<double> cum(p.size());
        double acc = 0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            acc += p[i];
            cum[i] = acc;
        }
        auto eng = rng::engine(seed);
        std::map<std::uint64_t, std::uint64_t> counts;
        for (std::uint64_t s = 0; s < shots; ++s) {
            const double u = rng::uniform01(eng) * acc;
            const auto it = std::upper_bound(cum.begin(), cum.end(), u);
            std::size_t idx = static_cast<std::size_t>(it - cum.begin());
            if (idx >= p.size()) idx = p.size() - 1;
            ++counts[idx];
        }
        return counts;
    }

    /// Drops a register that is in a definite basis state (e.g. after
    /// project); errors if any other outcome holds more than 1e-10 weight.
    void remove_register(std::string_view reg) {
        const auto& r = layout_.reg(reg);
        std::vector<double> p = marginal(reg);
        std::size_t outcome = 0;
        double best = -1;
        for (std::size_t i = 0; i < p.size(); ++i)
            if (p[i] > best) {
                best = p[i];
                outcome = i;
            }
        if (best < 1.0 - 1e-10)
            throw std::invalid_argument("remove_register: register " + std::string(reg) +
                                        " is not in a definite basis state");
        const int off = layout_.offset(reg);
        const std::size_t mask = (std::size_t{1} << r.qubits) - 1;
        const std::size_t lowmask = (std::size_t{1} << off) - 1;
        std::vector<cd> out(amp_.size() >> r.qubits);
        const double inv = 1.0 / std::sqrt(best);
        for (std::size_t i = 0; i < amp_.size(); ++i) {
            if (((i >> off) & mask) != outcome) continue;
            const std::size_t j = ((i >> (off + r.qubits)) << off) | (i & lowmask);
            out[j] = amp_[i] * inv;
        }
        std::vector<Register> regs;
        for (const auto& q : layout_.registers())
            if (q.name != reg) regs.push_back(q);
        layout_ = QubitLayout(std::move(regs));
        amp_ = std::move(out);
    }

    StateVector renamed(std::string_view prefix) const {
        std::vector<Register> regs = layout_.registers();
        for (auto& r : regs) r.name = std::string(prefix) + r.name;
        StateVector s;
        s.layout_ = QubitLayout(std::move(regs));
        s.amp_ = amp_;
        return s;
    }

    friend StateVector tensor(const StateVector& hi, const StateVector& lo) {
        std::vector<Register> regs = hi.layout_.registers();
        for (const auto& r : lo.layout_.registers()) regs.push_back(r);
        StateVector s;
        s.layout_ = QubitLayout(std::move(regs));
        s.amp_.assign(s.layout_.dim(), cd(0, 0));
        const int qlo = lo.layout_.total_qubits();
        for (std::size_t i = 0; i < hi.amp_.size(); ++i) {
            if (hi.amp_[i] == cd(0, 0)) continue;
            for (std::size_t j = 0; j < lo.amp_.size(); ++j)
                s.amp_[(i << qlo) | j] = hi.amp_[i] * lo.amp_[j];
        }
        return s;
    }

  private:
    void qft_impl(std::string_view reg, int sign) {
        const auto& r = layout_.reg(reg);
        const int off = layout_.offset(reg);
        const std::size_t n = std::size_t{1} << r.qubits;
        const std::size_t stride = std::size_t{1} << off;
        const std::size_t hi_count = amp_.size() >> (off + r.qubits);
        std::vector<cd> scratch;
        const double inv = 1.0 / std::sqrt(static_cast<double>(n));
        for (std::size_t hi = 0; hi < hi_count; ++hi) {
            for (std::size_t lo = 0; lo < stride; ++lo) {
                cd* base = amp_.data() + (hi << (off + r.qubits)) + lo;
                fft_strided(base, n, stride, sign, scratch);
                for (std::size_t k = 0; k < n; ++k) base[k * stride] *= inv;
            }
        }
    }

    // control_pos < 0 means uncontrolled
    void apply_gate(const Eigen::MatrixXcd& u, const std::vector<std::string>& targets,
                    int control_pos, double unitarity_tol) {
        if (targets.empty()) throw std::invalid_argument("apply_unitary: no target registers");
        int width = 0;
        for (const auto& t : targets) width += layout_.reg(t).qubits;
        const std::size_t d = std::size_t{1} << width;
        if (u.rows() != static_cast<Eigen::Index>(d) || u.cols() != static_cast<Eigen::Index>(d))
            throw std::invalid_argument("apply_unitary: matrix dimension does not match registers");
        const double dev = (u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols()))
                               .cwiseAbs()
                               .maxCoeff();
        if (dev > unitarity_tol)
            throw std::invalid_argument("apply_unitary: matrix is not unitary (deviation " +
                                        std::to_string(dev) + ")");

        // full-index offset of every local gate index
        std::vector<std::size_t> local_offset(d, 0);
        {
            std::vector<std::pair<int, int>> fields; // (layout offset, width) per target
            for (const auto& t : targets) fields.emplace_back(layout_.offset(t), layout_.reg(t).qubits);
            for (std::size_t a = 0; a < d; ++a) {
                std::size_t idx = 0;
                int pos = width;
                for (const auto& [off, w] : fields) {
                    pos -= w;
                    const std::size_t field = (a >> pos) & ((std::size_t{1} << w) - 1);
                    idx |= field << off;
                }
                local_offset[a] = idx;
            }
        }

        // complement bit positions (everything not in targets, not the control)
        std::vector<int> comp_bits;
        {
            std::vector<bool> taken(static_cast<std::size_t>(layout_.total_qubits()), false);
            for (const auto& t : targets) {
                const int off = layout_.offset(t);
                for (int b = 0; b < layout_.reg(t).qubits; ++b) taken[static_cast<std::size_t>(off + b)] = true;
            }
            if (control_pos >= 0) taken[static_cast<std::size_t>(control_pos)] = true;
            for (int b = 0; b < layout_.total_qubits(); ++b)
                if (!taken[static_cast<std::size_t>(b)]) comp_bits.push_back(b);
        }

        const std::size_t comp_count = std::size_t{1} << comp_bits.size();
        const std::size_t control_mask = control_pos >= 0 ? (std::size_t{1} << control_pos) : 0;
        std::vector<cd> in(d), out(d);
        for (std::size_t c = 0; c < comp_count; ++c) {
            std::size_t base = control_mask;
            for (std::size_t b = 0; b < comp_bits.size(); ++b)
                if ((c >> b) & 1) base |= std::size_t{1} << comp_bits[b];
            for (std::size_t a = 0; a < d; ++a) in[a] = amp_[base | local_offset[a]];
            for (std::size_t rix = 0; rix < d; ++rix) {
                cd acc(0, 0);
                for (std::size_t cix = 0; cix < d; ++cix) acc += u(rix, cix) * in[cix];
                out[rix] = acc;
            }
            for (std::size_t a = 0; a < d; ++a) amp_[base | local_offset[a]] = out[a];
        }
    }

    QubitLayout layout_;
    std::vector<cd> amp_;
};

inline cd inner(const StateVector& a, const StateVector& b) {
    if (!(a.layout() == b.layout()))
        throw std::invalid_argument("inner: register layouts do not match");
    cd acc(0, 0);
    for (std::size_t i = 0; i < a.amplitudes().size(); ++i)
        acc += std::conj(a.amplitudes()[i]) * b.amplitudes()[i];
    return acc;
}

/// Squared fidelity |<a|b>|^2.
inline double overlap(const StateVector& a, const StateVector& b) {
    const cd z = inner(a, b);
    return std::norm(z);
}

} // namespace qvt

#endif
