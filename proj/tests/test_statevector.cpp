#include <catch2/catch_amalgamated.hpp>

#include <numbers>

#include "oracles.hpp"
#include "qvt/statevector.hpp"

using qvt::cd;
using qvt::QubitLayout;
using qvt::Register;
using qvt::StateVector;

namespace {

Eigen::MatrixXcd pauli_x() {
    Eigen::MatrixXcd m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Eigen::MatrixXcd hadamard() {
    Eigen::MatrixXcd m(2, 2);
    m << 1, 1, 1, -1;
    return m / std::numbers::sqrt2;
}

} // namespace

TEST_CASE("layout orders the first register as most significant", "[statevector]") {
    QubitLayout lay({{"a", 2}, {"b", 3}, {"c", 1}});
    CHECK(lay.total_qubits() == 6);
    CHECK(lay.dim() == 64);
    CHECK(lay.offset("c") == 0);
    CHECK(lay.offset("b") == 1);
    CHECK(lay.offset("a") == 4);
    CHECK(lay.has("b"));
    CHECK_FALSE(lay.has("d"));
    CHECK_THROWS(lay.reg("d"));
    CHECK_THROWS(QubitLayout({{"a", 1}, {"a", 2}}));
    CHECK_THROWS(QubitLayout({{"", 1}}));
    CHECK_THROWS(QubitLayout({{"a", 0}}));
    CHECK_THROWS(QubitLayout({{"a", 23}}));
    CHECK_NOTHROW(QubitLayout({{"a", 22}}));
}

TEST_CASE("encode places values on one register", "[statevector]") {
    QubitLayout lay({{"hi", 1}, {"lo", 2}});
    const auto st = StateVector::encode(lay, "lo", std::vector<double>{3, 4, 0, 0});
    // normalized to (0.6, 0.8), hi register stays |0>
    CHECK_THAT(st.amplitudes()[0].real(), Catch::Matchers::WithinAbs(0.6, 1e-15));
    CHECK_THAT(st.amplitudes()[1].real(), Catch::Matchers::WithinAbs(0.8, 1e-15));
    for (std::size_t i = 2; i < 8; ++i) CHECK(st.amplitudes()[i] == cd(0, 0));

    const auto st2 = StateVector::encode(lay, "hi", std::vector<double>{0, 1});
    CHECK(st2.amplitudes()[4] == cd(1, 0));

    CHECK_THROWS(StateVector::encode(lay, "lo", std::vector<double>(5, 1.0)));
    CHECK_THROWS(StateVector::encode(lay, "lo", std::vector<double>{0, 0}));
}

TEST_CASE("from_amplitudes enforces normalization", "[statevector]") {
    QubitLayout lay({{"q", 1}});
    CHECK_NOTHROW(StateVector::from_amplitudes(lay, {cd(std::numbers::sqrt2 / 2, 0), cd(0, std::numbers::sqrt2 / 2)}));
    CHECK_THROWS(StateVector::from_amplitudes(lay, {cd(1, 0), cd(0.1, 0)}));
    CHECK_THROWS(StateVector::from_amplitudes(lay, {cd(1, 0)}));
}

TEST_CASE("single qubit gates act on the right slot", "[statevector]") {
    QubitLayout lay({{"a", 1}, {"b", 1}});
    auto st = StateVector::zero(lay);
    st.apply_unitary(pauli_x(), {"a"});
    CHECK(st.amplitudes()[2] == cd(1, 0)); // |10>
    st.apply_unitary(pauli_x(), {"b"});
    CHECK(st.amplitudes()[3] == cd(1, 0)); // |11>
}

TEST_CASE("multi register unitary uses the given target order", "[statevector]") {
    QubitLayout lay({{"a", 1}, {"b", 1}});
    // SWAP-like permutation on local index (a is the high bit of the gate index)
    Eigen::MatrixXcd perm = Eigen::MatrixXcd::Zero(4, 4);
    perm(0, 0) = perm(1, 2) = perm(2, 1) = perm(3, 3) = 1;
    auto st = StateVector::zero(lay);
    st.apply_unitary(pauli_x(), {"b"}); // |01>
    st.apply_unitary(perm, {"a", "b"});
    CHECK(st.amplitudes()[2] == cd(1, 0)); // swapped to |10>

    // with reversed target order b is the high gate bit, so |a=1,b=0> is
    // local index 1 and gets sent to |a=0,b=1>
    st.apply_unitary(perm, {"b", "a"});
    CHECK(st.amplitudes()[1] == cd(1, 0));
}

TEST_CASE("random unitary on a sub register matches the kronecker product", "[statevector]") {
    QubitLayout lay({{"a", 1}, {"b", 2}});
    auto eng = qvt::rng::engine(17);
    std::vector<cd> amps(8);
    double n2 = 0;
    for (auto& z : amps) {
        z = cd(qvt::rng::uniform(eng, -1, 1), qvt::rng::uniform(eng, -1, 1));
        n2 += std::norm(z);
    }
    for (auto& z : amps) z /= std::sqrt(n2);
    auto st = StateVector::from_amplitudes(lay, amps);

    // Haar-ish 4x4 unitary from a QR factorization
    Eigen::MatrixXcd g(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            g(i, j) = cd(qvt::rng::uniform(eng, -1, 1), qvt::rng::uniform(eng, -1, 1));
    const Eigen::MatrixXcd u = Eigen::HouseholderQR<Eigen::MatrixXcd>(g).householderQ();

    st.apply_unitary(u, {"b"});

    const Eigen::MatrixXcd full = oracle::kron(Eigen::MatrixXcd::Identity(2, 2), u);
    Eigen::VectorXcd v(8);
    for (int i = 0; i < 8; ++i) v(i) = amps[static_cast<std::size_t>(i)];
    const Eigen::VectorXcd expect = full * v;
    for (int i = 0; i < 8; ++i)
        CHECK(std::abs(st.amplitudes()[static_cast<std::size_t>(i)] - expect(i)) < 1e-12);
}

TEST_CASE("non unitary matrices are rejected", "[statevector]") {
    QubitLayout lay({{"a", 1}});
    auto st = StateVector::zero(lay);
    Eigen::MatrixXcd bad(2, 2);
    bad << 1, 0, 0, 1.001;
    CHECK_THROWS(st.apply_unitary(bad, {"a"}));
    CHECK_NOTHROW(st.apply_unitary(bad, {"a"}, 1e-2)); // relaxed tolerance admits it
}

TEST_CASE("controlled unitary fires only on the control bit", "[statevector]") {
    QubitLayout lay({{"ctl", 2}, {"tgt", 1}});
    // superpose the control register, target |0>
    auto st = StateVector::encode(lay, "ctl", std::vector<double>{0.5, 0.5, 0.5, 0.5});
    // control on bit 0 of ctl (its least significant qubit)
    st.apply_controlled_unitary(pauli_x(), "ctl", 0, {"tgt"});
    // ctl values 1 and 3 have bit0 set: target flips there
    const auto& a = st.amplitudes();
    CHECK_THAT(a[0b000].real(), Catch::Matchers::WithinAbs(0.5, 1e-15)); // ctl=0 tgt=0
    CHECK_THAT(a[0b011].real(), Catch::Matchers::WithinAbs(0.5, 1e-15)); // ctl=1 tgt=1
    CHECK_THAT(a[0b100].real(), Catch::Matchers::WithinAbs(0.5, 1e-15)); // ctl=2 tgt=0
    CHECK_THAT(a[0b111].real(), Catch::Matchers::WithinAbs(0.5, 1e-15)); // ctl=3 tgt=1
    CHECK(a[0b001] == cd(0, 0));
    CHECK(a[0b010] == cd(0, 0));

    CHECK_THROWS(st.apply_controlled_unitary(pauli_x(), "ctl", 2, {"tgt"}));
    CHECK_THROWS(st.apply_controlled_unitary(pauli_x(), "ctl", 0, {"ctl"}));
}

TEST_CASE("hadamard register creates the uniform state", "[statevector]") {
    QubitLayout lay({{"q", 3}});
    auto st = StateVector::zero(lay);
    st.hadamard_register("q");
    for (const auto& z : st.amplitudes())
        CHECK(std::abs(z - cd(1.0 / std::sqrt(8.0), 0)) < 1e-14);
    // applying it again restores |0>
    st.hadamard_register("q");
    CHECK(std::abs(st.amplitudes()[0] - cd(1, 0)) < 1e-14);
    CHECK(st.norm_error() < 1e-13);
}

TEST_CASE("qft of a basis state is the expected phase ramp", "[statevector]") {
    QubitLayout lay({{"pad", 1}, {"q", 3}});
    auto st = StateVector::encode(lay, "q", std::vector<double>{0, 0, 0, 1, 0, 0, 0, 0}); // |k=3>
    st.qft("q");
    for (std::size_t l = 0; l < 8; ++l) {
        const double ang = 2.0 * std::numbers::pi * 3.0 * static_cast<double>(l) / 8.0;
        const cd expect = cd(std::cos(ang), std::sin(ang)) / std::sqrt(8.0);
        CHECK(std::abs(st.amplitudes()[l] - expect) < 1e-13);
    }
    st.inverse_qft("q");
    CHECK(std::abs(st.amplitudes()[3] - cd(1, 0)) < 1e-13);
}

TEST_CASE("projection keeps the selected branch and reports its weight", "[statevector]") {
    QubitLayout lay({{"flag", 1}, {"data", 2}});
    std::vector<cd> amps(8, cd(0, 0));
    amps[0b000] = cd(0.6, 0);  // flag=0 data=0
    amps[0b100] = cd(0.8, 0);  // flag=1 data=0
    auto st = StateVector::from_amplitudes(lay, amps);
    const double p = st.project("flag", std::uint64_t{1});
    CHECK_THAT(p, Catch::Matchers::WithinAbs(0.64, 1e-12));
    CHECK(std::abs(st.amplitudes()[0b100] - cd(1, 0)) < 1e-12);
    CHECK(st.amplitudes()[0] == cd(0, 0));
    // now flag=0 carries no weight
    CHECK_THROWS_AS(st.project("flag", std::uint64_t{0}), std::domain_error);
    // bitstring form
    CHECK_THAT(st.project("data", "00"), Catch::Matchers::WithinAbs(1.0, 1e-12));
}

TEST_CASE("marginal sums the register distribution", "[statevector]") {
    QubitLayout lay({{"a", 1}, {"b", 1}});
    auto st = StateVector::from_amplitudes(lay, {cd(0.5, 0), cd(0.5, 0), cd(0.5, 0), cd(-0.5, 0)});
    const auto pa = st.marginal("a");
    CHECK_THAT(pa[0], Catch::Matchers::WithinAbs(0.5, 1e-14));
    CHECK_THAT(pa[1], Catch::Matchers::WithinAbs(0.5, 1e-14));
}

TEST_CASE("sampling is seeded and matches the marginal", "[statevector]") {
    QubitLayout lay({{"q", 2}});
    auto st = StateVector::encode(lay, "q", std::vector<double>{3, 0, 1, 0});
    const auto counts1 = st.sample("q", 10000, 99);
    const auto counts2 = st.sample("q", 10000, 99);
    CHECK(counts1 == counts2); // same seed, same draws
    CHECK(counts1.count(1) == 0);
    CHECK(counts1.count(3) == 0);
    const double f0 = static_cast<double>(counts1.at(0)) / 10000.0;
    CHECK_THAT(f0, Catch::Matchers::WithinAbs(0.9, 0.02));
    const auto counts3 = st.sample("q", 10000, 123);
    CHECK(counts3 != counts1);
}

TEST_CASE("remove_register drops a collapsed register", "[statevector]") {
    QubitLayout lay({{"a", 1}, {"b", 1}, {"c", 1}});
    auto st = StateVector::zero(lay);
    st.hadamard_register("b");
    st.apply_unitary(pauli_x(), {"c"});
    // c is definitely |1>, b is in superposition
    CHECK_THROWS(st.remove_register("b"));
    st.remove_register("c");
    CHECK(st.layout().total_qubits() == 2);
    CHECK(st.layout().has("a"));
    CHECK(st.layout().has("b"));
    const double inv = 1.0 / std::numbers::sqrt2;
    CHECK(std::abs(st.amplitudes()[0] - cd(inv, 0)) < 1e-14);
    CHECK(std::abs(st.amplitudes()[1] - cd(inv, 0)) < 1e-14);
}

TEST_CASE("tensor concatenates layouts with the left factor significant", "[statevector]") {
    auto a = StateVector::encode(QubitLayout({{"x", 1}}), "x", std::vector<double>{0.6, 0.8});
    auto b = StateVector::encode(QubitLayout({{"y", 1}}), "y", std::vector<double>{0, 1});
    const auto joint = tensor(a, b);
    CHECK(joint.layout().total_qubits() == 2);
    CHECK(joint.layout().offset("x") == 1);
    CHECK_THAT(joint.amplitudes()[0b01].real(), Catch::Matchers::WithinAbs(0.6, 1e-15));
    CHECK_THAT(joint.amplitudes()[0b11].real(), Catch::Matchers::WithinAbs(0.8, 1e-15));
    CHECK_THROWS(tensor(a, a)); // duplicate register name
}

TEST_CASE("renamed prefixes every register", "[statevector]") {
    auto a = StateVector::zero(QubitLayout({{"x", 1}, {"y", 2}}));
    const auto r = a.renamed("t_");
    CHECK(r.layout().has("t_x"));
    CHECK(r.layout().has("t_y"));
    CHECK_FALSE(r.layout().has("x"));
}

TEST_CASE("overlap is the squared fidelity", "[statevector]") {
    QubitLayout lay({{"q", 1}});
    auto a = StateVector::encode(lay, "q", std::vector<double>{1, 0});
    auto b = StateVector::encode(lay, "q", std::vector<double>{1, 1});
    CHECK_THAT(qvt::overlap(a, b), Catch::Matchers::WithinAbs(0.5, 1e-14));
    CHECK_THAT(qvt::overlap(a, a), Catch::Matchers::WithinAbs(1.0, 1e-14));
    auto c = StateVector::zero(QubitLayout({{"p", 1}}));
    CHECK_THROWS(qvt::overlap(a, c));
}

TEST_CASE("qubit budget blocks oversized layouts", "[statevector]") {
    CHECK_THROWS(QubitLayout({{"a", 12}, {"b", 11}}));
    std::vector<Register> many;
    for (int i = 0; i < 23; ++i) many.push_back({"q" + std::to_string(i), 1});
    CHECK_THROWS(QubitLayout(many));
}
