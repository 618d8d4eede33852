#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "chanmom/localized.hpp"
#include "chanmom/moments.hpp"
#include "chanmom/twirlsim.hpp"
#include "chanmom/weingarten.hpp"

namespace py = pybind11;
using namespace chanmom;

namespace {

py::object fraction(const Rational& q) {
    static py::object cls = py::module_::import("fractions").attr("Fraction");
    return cls(to_string(q));
}

py::list fraction_matrix(const ExactMatrix& m) {
    py::list rows;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        py::list row;
        for (std::size_t j = 0; j < m.cols(); ++j) row.append(fraction(m(i, j)));
        rows.append(row);
    }
    return rows;
}

EnsembleSpec ensemble(const std::string& name, int t, long d, long dE, int k) {
    if (name == "haar") return EnsembleSpec::haar(t, d, k);
    if (name == "chaar") return EnsembleSpec::chaar(t, d, dE, k);
    if (name == "depolarize") return EnsembleSpec::depolarize(t, d, k);
    throw std::invalid_argument("unknown ensemble: " + name);
}

BasisTag::Kind basis_kind(const std::string& b) {
    if (b == "permutation") return BasisTag::Kind::Permutation;
    if (b == "localized") return BasisTag::Kind::Localized;
    throw std::invalid_argument("unknown basis: " + b);
}

TransferMatrix transfer_for(const std::string& name, int t, long d, long dE, int k, const std::string& basis) {
    return transfer_k(ensemble(name, t, d, dE, k), basis_kind(basis));
}

}  // namespace

PYBIND11_MODULE(chanmom, m) {
    m.doc() = "Moment operators of random quantum channels";
    m.attr("__version__") = CHANMOM_VERSION;

    py::register_exception<SingularGram>(m, "SingularGram", PyExc_ValueError);
    py::register_exception<ResourceCapExceeded>(m, "ResourceCapExceeded", PyExc_RuntimeError);

    m.def("mobius", [](const std::vector<int>& images) { return mobius(Permutation(images)); }, py::arg("images"));
    m.def("subpermutation_count", [](const std::vector<int>& images) { return subpermutation_count(Permutation(images)); }, py::arg("images"));
    m.def("permutations", [](int t) {
        std::vector<std::string> out;
        for (const auto& p : perm_table(t).all()) out.push_back(p.to_string());
        return out;
    }, py::arg("t"), "S_t in canonical order");

    m.def("gram_matrix", [](int t, long d) { return fraction_matrix(gram_matrix(t, d)); }, py::arg("t"), py::arg("d"));
    m.def("weingarten_matrix", [](int t, long d) { return fraction_matrix(weingarten_matrix(t, d)); }, py::arg("t"), py::arg("d"));

    m.def("transfer", [](const std::string& name, int t, long d, long dE, int k, const std::string& basis) {
        return fraction_matrix(transfer_for(name, t, d, dE, k, basis).q);
    }, py::arg("ensemble"), py::arg("t"), py::arg("d"), py::arg("dE") = 1, py::arg("k") = 1, py::arg("basis") = "permutation");

    m.def("norm_squared", [](const std::string& name, int t, long d, long dE, int k) {
        const auto tau = transfer_for(name, t, d, dE, k, "permutation");
        return fraction(norm_squared(tau, gram_for(tau.basis)));
    }, py::arg("ensemble"), py::arg("t"), py::arg("d"), py::arg("dE") = 1, py::arg("k") = 1);

    m.def("trace", [](const std::string& name, int t, long d, long dE, int k) {
        const auto tau = transfer_for(name, t, d, dE, k, "permutation");
        return fraction(trace(tau, gram_for(tau.basis)));
    }, py::arg("ensemble"), py::arg("t"), py::arg("d"), py::arg("dE") = 1, py::arg("k") = 1);

    m.def("exact_t2_chaar", [](int k, long d, long dE) { return fraction_matrix(exact_t2_chaar(k, d, dE).q); }, py::arg("k"), py::arg("d"),
          py::arg("dE"));

    m.def("spectrum", [](const std::string& name, int t, long d, long dE, int k) {
        const auto rep = spectrum(ensemble(name, t, d, dE, k));
        py::dict out;
        out["eigenvalues"] = rep.eigenvalues;
        out["psi_residual"] = rep.psi_residual;
        out["residuals"] = rep.residuals;
        return out;
    }, py::arg("ensemble"), py::arg("t"), py::arg("d"), py::arg("dE") = 1, py::arg("k") = 1);

    m.def("hierarchy_scan", [](const std::vector<int>& ts, const std::vector<int>& ks, const std::vector<long>& ds,
                               const std::vector<std::string>& rules, int threads) {
        std::vector<DERule> parsed;
        for (const auto& r : rules) parsed.push_back(DERule::parse(r));
        HierarchyResult res;
        {
            py::gil_scoped_release release;
            res = hierarchy_scan(ts, ks, ds, parsed, threads);
        }
        py::list rows;
        for (const auto& r : res.rows) {
            py::dict row;
            row["t"] = r.t;
            row["k"] = r.k;
            row["d"] = r.d;
            row["dE"] = r.dE;
            row["norm2"] = fraction(r.norm2);
            row["trace"] = fraction(r.trace);
            row["eps_dep"] = r.eps_dep;
            row["flags"] = r.flags;
            rows.append(row);
        }
        py::dict out;
        out["rows"] = rows;
        out["skipped"] = res.skipped;
        out["bound_violations"] = res.bound_violations;
        out["de_monotonicity_flags"] = res.de_monotonicity_flags;
        out["k_monotonicity_flags"] = res.k_monotonicity_flags;
        return out;
    }, py::arg("t_list"), py::arg("k_list"), py::arg("d_list"), py::arg("de_rules") = std::vector<std::string>{"1", "2", "d", "d2"},
          py::arg("threads") = 1);

    m.def("reference_purities", [](int n, long dE) {
        const auto r = reference_purities(n, dE);
        py::dict out;
        out["depolarize"] = r.depolarize;
        out["haar"] = r.haar;
        out["chaar"] = r.chaar;
        return out;
    }, py::arg("n"), py::arg("dE"));

    m.def("evolve", [](int n, int layers, const std::string& ansatz, const std::string& noise, double gamma, const std::string& initial,
                       bool full_register_noise, int max_qubits) {
        CircuitSpec c = default_circuit(n, parse_ansatz(ansatz), layers, parse_noise(noise), gamma);
        if (initial != "default") c.initial = initial == "plus" ? InitialState::PlusState : InitialState::ZeroState;
        c.full_register_noise = full_register_noise;
        c.max_qubits = max_qubits;
        py::gil_scoped_release release;
        return evolve(c).purities;
    }, py::arg("n"), py::arg("layers"), py::arg("ansatz") = "HEA", py::arg("noise") = "none", py::arg("gamma") = 0.0,
          py::arg("initial") = "default", py::arg("full_register_noise") = false, py::arg("max_qubits") = 5,
          "purity of the averaged two-copy state after each layer");

    m.def("gate_twirl_t2", [](const CMatrix& x, const std::string& generator) { return gate_twirl_t2(x, PauliMonomial::from_labels(generator)); },
          py::arg("x"), py::arg("generator"));
    m.def("pauli_string", [](const std::string& labels) { return pauli_string(static_cast<int>(labels.size()), labels); }, py::arg("labels"));

    m.def("composite_noise_norm", [](int n, double gamma, double eta, int t, int k, const std::string& kind, const std::string& generator) {
        const CompositeKind ck = kind == "haar" ? CompositeKind::HaarUnitaries : CompositeKind::SingleGenerator;
        return composite_noise_norm(ck, NoiseModel::uniform(n, gamma, eta), t, k, generator);
    }, py::arg("n"), py::arg("gamma"), py::arg("eta") = 0.0, py::arg("t") = 2, py::arg("k") = 1, py::arg("kind") = "haar",
          py::arg("generator") = "");

    m.def("frame_potential_mc", [](const std::string& name, int t, long d, long dE, std::size_t samples, std::uint64_t seed, int threads) {
        McEstimate e;
        {
            py::gil_scoped_release release;
            e = frame_potential_mc(ensemble(name, t, d, dE, 1), samples, seed, threads);
        }
        return py::make_tuple(e.mean, e.stderr_);
    }, py::arg("ensemble"), py::arg("t"), py::arg("d"), py::arg("dE") = 1, py::arg("samples") = 10000, py::arg("seed") = 12345,
          py::arg("threads") = 1);
}
