#include "chanmom/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

#include "chanmom/channels.hpp"
#include "chanmom/localized.hpp"
#include "chanmom/moments.hpp"
#include "chanmom/sampling.hpp"
#include "chanmom/symmgroup.hpp"
#include "chanmom/twirlsim.hpp"
#include "chanmom/weingarten.hpp"

#ifndef CHANMOM_VERSION
#define CHANMOM_VERSION "dev"
#endif

namespace chanmom::cli {

namespace {

using json = nlohmann::ordered_json;

struct Global {
    std::uint64_t seed = 12345;
    int threads = 1;
    bool exact = true;
    bool force_float = false;
    std::string out;
    std::string format = "csv";
};

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<json>> rows;
    std::vector<std::string> notes;
};

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

std::string csv_cell(const json& v) {
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
        return q + "\"";
    }
    if (v.is_number_float()) return format_double(v.get<double>());
    if (v.is_null()) return "";
    return v.dump();
}

void emit(std::ostream& os, const Global& g, const std::string& command, const json& config, const Table& t) {
    json meta = {{"tool", "chanmom"}, {"version", CHANMOM_VERSION}, {"command", command}};
    json resolved = config;
    resolved["seed"] = g.seed;
    resolved["threads"] = g.threads;
    resolved["mode"] = g.exact ? "exact" : "float";
    resolved["format"] = g.format;
    if (g.format == "json") {
        json doc = {{"meta", meta}, {"config", resolved}};
        json rows = json::array();
        for (const auto& r : t.rows) {
            json o = json::object();
            for (std::size_t i = 0; i < t.columns.size(); ++i) o[t.columns[i]] = r[i];
            rows.push_back(o);
        }
        doc["rows"] = rows;
        doc["notes"] = t.notes;
        os << doc.dump(2) << "\n";
        return;
    }
    os << "# chanmom " << CHANMOM_VERSION << "\n";
    os << "# command: " << command << "\n";
    os << "# config: " << resolved.dump() << "\n";
    for (const auto& n : t.notes) os << "# " << n << "\n";
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << "\n";
    for (const auto& r : t.rows) {
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_cell(r[i]);
        os << "\n";
    }
}

std::vector<long> parse_int_list(const std::string& text) {
    std::vector<long> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        const auto dots = item.find("..");
        if (dots != std::string::npos) {
            const long a = std::stol(item.substr(0, dots));
            const long b = std::stol(item.substr(dots + 2));
            if (b < a) throw std::invalid_argument("empty range: " + item);
            for (long v = a; v <= b; ++v) out.push_back(v);
        } else {
            std::size_t pos = 0;
            out.push_back(std::stol(item, &pos));
            if (pos != item.size()) throw std::invalid_argument("invalid integer: " + item);
        }
    }
    if (out.empty()) throw std::invalid_argument("empty list");
    return out;
}

std::vector<std::string> parse_word_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    if (out.empty()) throw std::invalid_argument("empty list");
    return out;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    for (const auto& w : parse_word_list(text)) out.push_back(std::stod(w));
    return out;
}

EnsembleSpec make_ensemble(const std::string& kind, int t, long d, long dE, int k) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (d < 1) throw std::invalid_argument("d must be >= 1");
    if (kind == "haar") return EnsembleSpec::haar(t, d, k);
    if (kind == "chaar") return EnsembleSpec::chaar(t, d, dE, k);
    if (kind == "depolarize" || kind == "dep") return EnsembleSpec::depolarize(t, d, k);
    throw std::invalid_argument("unknown ensemble: " + kind);
}

json value_cell(const TransferMatrix& tm, std::size_t i, std::size_t j) {
    if (tm.exact) return to_string(tm.q(i, j));
    return tm.f(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
}

TransferMatrix float_copy(const TransferMatrix& tm) {
    TransferMatrix out = tm;
    out.exact = false;
    out.f = tm.q.to_double();
    out.q = ExactMatrix();
    return out;
}

// ---- verification suites -------------------------------------------------

struct Check {
    std::string suite;
    std::string name;
    bool ok = false;
    std::string detail;
};

using Suite = std::function<void(std::vector<Check>&, std::uint64_t, std::size_t)>;

void suite_mobius(std::vector<Check>& out, std::uint64_t, std::size_t) {
    for (int t = 1; t <= std::min(6, max_order()); ++t) {
        const PermTable& tab = perm_table(t);
        bool delta = true, counts = true;
        for (std::size_t s = 0; s < tab.count(); ++s) {
            long long sum = 0;
            for (std::size_t p : tab.below(s)) sum += mobius(tab.at(tab.product(tab.inverse(p), s)));
            if (sum != (s == tab.identity_index() ? 1 : 0)) delta = false;
            if (static_cast<long long>(tab.below(s).size()) != subpermutation_count(tab.at(s))) counts = false;
        }
        out.push_back({"mobius", "delta_sum_t" + std::to_string(t), delta, ""});
        out.push_back({"mobius", "catalan_count_t" + std::to_string(t), counts, ""});
    }
}

void suite_weingarten(std::vector<Check>& out, std::uint64_t, std::size_t) {
    for (int t = 1; t <= 4; ++t)
        for (long d : {static_cast<long>(t), static_cast<long>(t + 1), 8L}) {
            const bool ok = gram_matrix(t, d) * weingarten_matrix(t, d) == ExactMatrix::identity(perm_table(t).count());
            out.push_back({"weingarten", "gram_times_inverse_t" + std::to_string(t) + "_d" + std::to_string(d), ok, ""});
        }
    for (int t = 1; t <= 4; ++t) {
        Rational direct = 0;
        for (const auto& s : perm_table(t).all()) direct += character(s, 5);
        out.push_back({"weingarten", "jucys_murphy_t" + std::to_string(t), direct == jucys_murphy_sum(t, 5), to_string(direct)});
    }
}

void suite_localized(std::vector<Check>& out, std::uint64_t, std::size_t) {
    for (int t = 1; t <= 5; ++t) {
        const std::size_t n = perm_table(t).count();
        out.push_back({"localized", "phi_zeta_identity_t" + std::to_string(t), phi_matrix(t) * phi_inverse(t) == ExactMatrix::identity(n), ""});
    }
    for (int t = 2; t <= 4; ++t) {
        const PermTable& tab = perm_table(t);
        const ExactMatrix g = localized_gram(t, 8);
        bool ok = true;
        for (std::size_t i = 0; i < tab.count(); ++i)
            for (std::size_t j = 0; j < tab.count(); ++j)
                if (tab.support_of(i) != tab.support_of(j) && g(i, j) != 0) ok = false;
        out.push_back({"localized", "gram_support_orthogonal_t" + std::to_string(t), ok, ""});
    }
}

void suite_spectrum(std::vector<Check>& out, std::uint64_t, std::size_t) {
    for (long d : {2L, 3L, 4L})
        for (long de : {2L, 4L, 8L}) {
            const SpectralReport r = spectrum(EnsembleSpec::chaar(2, d, de));
            const double expect = static_cast<double>(de * (d * d - 1)) / static_cast<double>(d * d * de * de - 1);
            const double dev = std::abs(r.eigenvalues[1] - expect);
            out.push_back({"spectrum", "t2_eigenvalue_d" + std::to_string(d) + "_dE" + std::to_string(de), dev < 1e-10, format_double(dev)});
        }
    for (int t = 2; t <= 4; ++t) {
        const SpectralReport r = spectrum(EnsembleSpec::chaar(t, 4, 4));
        out.push_back({"spectrum", "psi_residual_t" + std::to_string(t), r.psi_residual < 1e-10, format_double(r.psi_residual)});
    }
}

void suite_invariance(std::vector<Check>& out, std::uint64_t, std::size_t) {
    for (int t = 1; t <= 3; ++t) {
        const long d = 3;
        const std::vector<std::pair<EnsembleSpec, EnsembleSpec>> pairs = {
            {EnsembleSpec::depolarize(t, d), EnsembleSpec::chaar(t, d, 2)},
            {EnsembleSpec::depolarize(t, d), EnsembleSpec::haar(t, d)},
            {EnsembleSpec::haar(t, d), EnsembleSpec::chaar(t, d, 2)},
        };
        for (const auto& [a, b] : pairs)
            for (const auto& c : invariance_checks(a, b))
                out.push_back({"invariance", c.name + "_t" + std::to_string(t), c.passed, format_double(c.deviation)});
    }
}

void suite_channels(std::vector<Check>& out, std::uint64_t, std::size_t) {
    for (auto kind : {NoiseKind::BitFlip, NoiseKind::Dephasing, NoiseKind::LocalDepolarizing, NoiseKind::AmplitudeDamping}) {
        const CMatrix s = kraus_to_super(standard_noise(kind, 0.3), 1);
        out.push_back({"channels", "trace_preserving_" + to_string(kind), is_trace_preserving(s, 2), ""});
        const bool unital = is_unital(s, 2);
        out.push_back({"channels", "unitality_" + to_string(kind), unital == (kind != NoiseKind::AmplitudeDamping), unital ? "unital" : "non-unital"});
        const CMatrix s2 = kraus_to_super(standard_noise(kind, 0.3), 2);
        const double dev = (s2 - tensor_power_super(s, 2, 2)).cwiseAbs().maxCoeff();
        out.push_back({"channels", "tensor_square_" + to_string(kind), dev < 1e-12, format_double(dev)});
    }
}

void suite_twirl(std::vector<Check>& out, std::uint64_t seed, std::size_t) {
    Rng rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    for (const std::string label : {"XI", "YI", "ZZ"}) {
        const PauliMonomial gen = PauliMonomial::from_labels(label);
        const CMatrix gm = gen.matrix();
        const Eigen::Index dim = 16;
        double worst = 0.0;
        for (int rep = 0; rep < 20; ++rep) {
            CMatrix x(dim, dim);
            for (Eigen::Index i = 0; i < dim; ++i)
                for (Eigen::Index j = 0; j < dim; ++j) x(i, j) = {g(rng), g(rng)};
            CMatrix q = CMatrix::Zero(dim, dim);
            for (int s = 0; s < 8; ++s) {
                const double th = 2.0 * 3.14159265358979323846 * s / 8.0;
                const CMatrix u = std::cos(th) * CMatrix::Identity(4, 4) - std::complex<double>(0, std::sin(th)) * gm;
                const CMatrix uu = kron(u, u);
                q += uu * x * uu.adjoint() / 8.0;
            }
            worst = std::max(worst, (q - gate_twirl_t2(x, gen)).cwiseAbs().maxCoeff());
        }
        out.push_back({"twirl", "quadrature_" + label, worst < 1e-10, format_double(worst)});
    }
}

void suite_mc(std::vector<Check>& out, std::uint64_t seed, std::size_t samples) {
    const McEstimate h = frame_potential_mc(EnsembleSpec::haar(2, 2), samples, seed);
    out.push_back({"mc", "frame_potential_haar_d2_t2", std::abs(h.mean - 2.0) <= 3.0 * h.stderr_,
                   format_double(h.mean) + "+-" + format_double(h.stderr_)});
    const EnsembleSpec c = EnsembleSpec::chaar(2, 2, 2);
    const TransferMatrix tm = transfer(c);
    const double exact = to_double(norm_squared(tm, gram_for(tm.basis)));
    const McEstimate ce = frame_potential_mc(c, samples, seed + 1);
    out.push_back({"mc", "frame_potential_chaar_d2_dE2_t2", std::abs(ce.mean - exact) <= 3.0 * ce.stderr_,
                   format_double(ce.mean) + "+-" + format_double(ce.stderr_) + " exact " + format_double(exact)});
    const CMatrix rho = initial_state(1, InitialState::ZeroState);
    const CMatrix z = pauli('Z');
    const MomentEstimate m = mc_expectation_moments(EnsembleSpec::haar(2, 2), rho, z, samples, seed + 2);
    const double v = variance_reference(rho, z, {ReferenceKind::Kind::Haar, 1}).variance;
    out.push_back({"mc", "variance_haar_d2_Z", std::abs(m.variance - v) <= 3.0 * m.variance_err,
                   format_double(m.variance) + "+-" + format_double(m.variance_err) + " exact " + format_double(v)});
}

const std::vector<std::pair<std::string, Suite>>& suites() {
    static const std::vector<std::pair<std::string, Suite>> s = {
        {"mobius", suite_mobius},         {"weingarten", suite_weingarten}, {"localized", suite_localized},
        {"spectrum", suite_spectrum},     {"invariance", suite_invariance}, {"channels", suite_channels},
        {"twirl", suite_twirl},           {"mc", suite_mc},
    };
    return s;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Moment operators of quantum-channel ensembles"};
    app.require_subcommand(1);
    app.fallthrough();
    Global g;
    app.add_option("--seed", g.seed, "random seed");
    app.add_option("--threads", g.threads, "worker threads")->check(CLI::PositiveNumber);
    auto* exact_flag = app.add_flag("--exact", "exact rational arithmetic (default)");
    auto* float_flag = app.add_flag("--float", g.force_float, "double-precision arithmetic");
    exact_flag->excludes(float_flag);
    app.add_option("--out", g.out, "output file (default stdout)");
    app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"csv", "json"}));

    std::string command;
    json config;
    Table table;
    std::function<int()> action;

    // weingarten
    int w_t = 2;
    long w_d = 2;
    auto* w = app.add_subcommand("weingarten", "Gram and Weingarten matrices");
    w->add_option("--t", w_t)->required();
    w->add_option("--d", w_d)->required();
    w->callback([&] {
        command = "weingarten";
        action = [&] {
            config = {{"t", w_t}, {"d", w_d}};
            check_order(w_t);
            const PermTable& tab = perm_table(w_t);
            table.columns = {"matrix", "sigma", "pi", "value"};
            auto dump = [&](const std::string& name, const ExactMatrix& exact, const Eigen::MatrixXd& fl) {
                for (std::size_t i = 0; i < tab.count(); ++i)
                    for (std::size_t j = 0; j < tab.count(); ++j)
                        table.rows.push_back({name, tab.at(i).to_string(), tab.at(j).to_string(),
                                              g.exact ? json(to_string(exact(i, j)))
                                                      : json(fl(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)))});
            };
            if (g.exact) {
                const ExactMatrix gram = gram_matrix(w_t, w_d);
                const ExactMatrix wg = weingarten_matrix(w_t, w_d);
                dump("gram", gram, {});
                dump("weingarten", wg, {});
            } else {
                dump("gram", {}, gram_matrix_f(w_t, static_cast<double>(w_d)));
                dump("weingarten", {}, weingarten_matrix_f(w_t, static_cast<double>(w_d)));
            }
            return kOk;
        };
    });

    // transfer
    std::string tr_ens = "haar", tr_basis = "permutation";
    int tr_t = 2, tr_k = 1;
    long tr_d = 2, tr_de = 1;
    auto* tr = app.add_subcommand("transfer", "transfer matrix of an ensemble");
    tr->add_option("--ensemble", tr_ens)->check(CLI::IsMember({"haar", "chaar", "depolarize"}));
    tr->add_option("--t", tr_t);
    tr->add_option("--d", tr_d);
    tr->add_option("--dE", tr_de);
    tr->add_option("--k", tr_k);
    tr->add_option("--basis", tr_basis)->check(CLI::IsMember({"permutation", "localized"}));
    tr->callback([&] {
        command = "transfer";
        action = [&] {
            config = {{"ensemble", tr_ens}, {"t", tr_t}, {"d", tr_d}, {"dE", tr_de}, {"k", tr_k}, {"basis", tr_basis}};
            check_order(tr_t);
            const auto kind = tr_basis == "localized" ? BasisTag::Kind::Localized : BasisTag::Kind::Permutation;
            TransferMatrix tm = transfer_k(make_ensemble(tr_ens, tr_t, tr_d, tr_de, tr_k), kind);
            if (!g.exact) tm = float_copy(tm);
            const PermTable& tab = perm_table(tr_t);
            table.columns = {"sigma", "pi", "value"};
            for (std::size_t i = 0; i < tab.count(); ++i)
                for (std::size_t j = 0; j < tab.count(); ++j) table.rows.push_back({tab.at(i).to_string(), tab.at(j).to_string(), value_cell(tm, i, j)});
            return kOk;
        };
    });

    // hierarchy
    std::string h_t = "2,3,4", h_k = "1,3", h_d = "2..8", h_de = "1,2,d,d2";
    auto* hi = app.add_subcommand("hierarchy", "norm and trace scan of concatenated cHaar ensembles");
    hi->add_option("--t-list", h_t);
    hi->add_option("--k-list", h_k);
    hi->add_option("--d-list", h_d);
    hi->add_option("--de-rules", h_de, "comma list of 1,2,...,d,d2");
    hi->callback([&] {
        command = "hierarchy";
        action = [&] {
            config = {{"t_list", h_t}, {"k_list", h_k}, {"d_list", h_d}, {"de_rules", h_de}};
            std::vector<int> ts, ks;
            for (long v : parse_int_list(h_t)) {
                check_order(static_cast<int>(v));
                ts.push_back(static_cast<int>(v));
            }
            for (long v : parse_int_list(h_k)) {
                if (v < 1) throw std::invalid_argument("k must be >= 1");
                ks.push_back(static_cast<int>(v));
            }
            const std::vector<long> ds = parse_int_list(h_d);
            for (long d : ds)
                if (d < 2) throw std::invalid_argument("d must be >= 2");
            std::vector<DERule> rules;
            for (const auto& r : parse_word_list(h_de)) rules.push_back(DERule::parse(r));
            const HierarchyResult res = hierarchy_scan(ts, ks, ds, rules, g.threads);
            table.columns = {"t", "k", "d", "dE", "norm2", "trace", "eps_dep", "flags"};
            for (const auto& r : res.rows) {
                std::string flags;
                for (const auto& f : r.flags) flags += (flags.empty() ? "" : ";") + f;
                table.rows.push_back({r.t, r.k, r.d, r.dE, g.exact ? json(to_string(r.norm2)) : json(to_double(r.norm2)),
                                      g.exact ? json(to_string(r.trace)) : json(to_double(r.trace)), r.eps_dep, flags});
            }
            table.notes.push_back("bound_violations: " + std::to_string(res.bound_violations));
            table.notes.push_back("dE_monotonicity_flags: " + std::to_string(res.de_monotonicity_flags));
            table.notes.push_back("k_monotonicity_flags: " + std::to_string(res.k_monotonicity_flags));
            for (const auto& s : res.skipped) table.notes.push_back("skipped (d*dE < t): " + s);
            return kOk;
        };
    });

    // simulate
    int s_n = 3, s_layers = 50, s_max = 5;
    std::string s_ans = "HEA,MAT", s_noise = "LD,D,BF,AD", s_gamma = "0,0.1,0.2,0.3", s_init = "default";
    long s_de = 0;
    bool s_full = false;
    auto* si = app.add_subcommand("simulate", "two-copy purity trajectories of noisy layered circuits");
    si->add_option("--n", s_n);
    si->add_option("--layers", s_layers);
    si->add_option("--ansatz", s_ans);
    si->add_option("--noise", s_noise);
    si->add_option("--gamma", s_gamma);
    si->add_option("--initial", s_init)->check(CLI::IsMember({"default", "zero", "plus"}));
    si->add_option("--dE", s_de, "environment dimension of the cHaar reference (default d^2)");
    si->add_option("--max-qubits", s_max);
    si->add_flag("--full-register-noise", s_full);
    si->callback([&] {
        command = "simulate";
        action = [&] {
            const long d = 1L << s_n;
            const long de = s_de > 0 ? s_de : d * d;
            config = {{"n", s_n},          {"layers", s_layers}, {"ansatz", s_ans}, {"noise", s_noise}, {"gamma", s_gamma},
                      {"initial", s_init}, {"dE", de},           {"max_qubits", s_max}, {"full_register_noise", s_full}};
            struct Cell {
                CircuitSpec spec;
                std::vector<double> purities;
            };
            std::vector<Cell> cells;
            for (const auto& a : parse_word_list(s_ans))
                for (const auto& nz : parse_word_list(s_noise))
                    for (double gm : parse_double_list(s_gamma)) {
                        const NoiseKind kind = parse_noise(nz);
                        if (kind == NoiseKind::None && gm != 0.0) continue;
                        CircuitSpec c = default_circuit(s_n, parse_ansatz(a), s_layers, kind, gm);
                        if (s_init != "default") c.initial = s_init == "zero" ? InitialState::ZeroState : InitialState::PlusState;
                        c.max_qubits = s_max;
                        c.full_register_noise = s_full;
                        if (c.n > c.max_qubits)
                            throw ResourceCapExceeded("n = " + std::to_string(c.n) + " exceeds the qubit cap " + std::to_string(c.max_qubits));
                        cells.push_back({c, {}});
                    }
            std::atomic<std::size_t> next{0};
            auto worker = [&] {
                for (std::size_t i = next++; i < cells.size(); i = next++) cells[i].purities = evolve(cells[i].spec).purities;
            };
            std::vector<std::thread> pool;
            for (int i = 1; i < g.threads; ++i) pool.emplace_back(worker);
            worker();
            for (auto& th : pool) th.join();
            table.columns = {"ansatz", "noise", "gamma", "n", "L_index", "purity"};
            const ReferencePurities ref = reference_purities(s_n, de);
            table.rows.push_back({"Haar", "none", 0.0, s_n, -1, ref.haar});
            table.rows.push_back({"cHaar", "none", 0.0, s_n, -1, ref.chaar});
            table.rows.push_back({"Depolarize", "none", 0.0, s_n, -1, ref.depolarize});
            for (const auto& c : cells)
                for (std::size_t l = 0; l < c.purities.size(); ++l)
                    table.rows.push_back({to_string(c.spec.ansatz), to_string(c.spec.noise), c.spec.gamma, s_n, static_cast<long>(l), c.purities[l]});
            return kOk;
        };
    });

    // spectrum
    std::string sp_ens = "chaar";
    int sp_t = 2, sp_k = 1;
    long sp_d = 2, sp_de = 2;
    auto* sp = app.add_subcommand("spectrum", "eigenvalues of the modified transfer matrix");
    sp->add_option("--ensemble", sp_ens)->check(CLI::IsMember({"haar", "chaar", "depolarize"}));
    sp->add_option("--t", sp_t);
    sp->add_option("--d", sp_d);
    sp->add_option("--dE", sp_de);
    sp->add_option("--k", sp_k);
    sp->callback([&] {
        command = "spectrum";
        action = [&] {
            config = {{"ensemble", sp_ens}, {"t", sp_t}, {"d", sp_d}, {"dE", sp_de}, {"k", sp_k}};
            check_order(sp_t);
            const SpectralReport r = spectrum(make_ensemble(sp_ens, sp_t, sp_d, sp_de, sp_k));
            table.columns = {"index", "re", "im", "abs", "residual"};
            for (std::size_t i = 0; i < r.eigenvalues.size(); ++i)
                table.rows.push_back({static_cast<long>(i), r.eigenvalues[i].real(), r.eigenvalues[i].imag(), std::abs(r.eigenvalues[i]), r.residuals[i]});
            table.notes.push_back("psi_residual: " + format_double(r.psi_residual));
            return kOk;
        };
    });

    // verify
    std::string v_suite = "all";
    std::size_t v_samples = 20000;
    auto* ve = app.add_subcommand("verify", "run invariant suites");
    ve->add_option("--suite", v_suite);
    ve->add_option("--samples", v_samples);
    ve->callback([&] {
        command = "verify";
        action = [&] {
            config = {{"suite", v_suite}, {"samples", v_samples}};
            std::vector<Check> checks;
            bool found = false;
            for (const auto& [name, fn] : suites())
                if (v_suite == "all" || v_suite == name) {
                    found = true;
                    fn(checks, g.seed, v_samples);
                }
            if (!found) throw std::invalid_argument("unknown suite: " + v_suite);
            table.columns = {"suite", "check", "status", "detail"};
            bool all_ok = true;
            for (const auto& c : checks) {
                table.rows.push_back({c.suite, c.name, c.ok ? "pass" : "fail", c.detail});
                all_ok = all_ok && c.ok;
            }
            return all_ok ? kOk : kFailure;
        };
    });

    // mc
    std::string mc_ens = "haar", mc_qty = "frame", mc_obs = "Z", mc_state = "zero";
    int mc_t = 2, mc_k = 1;
    long mc_d = 2, mc_de = 2;
    std::size_t mc_samples = 100000;
    auto* mc = app.add_subcommand("mc", "Monte-Carlo estimates");
    mc->add_option("--ensemble", mc_ens)->check(CLI::IsMember({"haar", "chaar", "depolarize"}));
    mc->add_option("--quantity", mc_qty)->check(CLI::IsMember({"frame", "variance"}));
    mc->add_option("--t", mc_t);
    mc->add_option("--d", mc_d);
    mc->add_option("--dE", mc_de);
    mc->add_option("--k", mc_k);
    mc->add_option("--samples", mc_samples);
    mc->add_option("--observable", mc_obs, "Pauli string for --quantity variance");
    mc->add_option("--state", mc_state, "zero or plus product state")->check(CLI::IsMember({"zero", "plus"}));
    mc->callback([&] {
        command = "mc";
        action = [&] {
            config = {{"ensemble", mc_ens}, {"quantity", mc_qty}, {"t", mc_t}, {"d", mc_d}, {"dE", mc_de}, {"k", mc_k}, {"samples", mc_samples}};
            const EnsembleSpec spec = make_ensemble(mc_ens, mc_t, mc_d, mc_de, mc_k);
            if (mc_qty == "frame") {
                const McEstimate e = frame_potential_mc(spec, mc_samples, g.seed, g.threads);
                table.columns = {"quantity", "estimate", "stderr", "samples", "exact"};
                json exact = nullptr;
                if (spec.d * (spec.kind == EnsembleSpec::Kind::CHaar ? spec.dE : 1) >= spec.t) {
                    const TransferMatrix tm = transfer_k(spec);
                    exact = to_double(norm_squared(tm, gram_for(tm.basis)));
                }
                table.rows.push_back({"norm2", e.mean, e.stderr_, e.samples, exact});
            } else {
                config["observable"] = mc_obs;
                config["state"] = mc_state;
                const int n = static_cast<int>(mc_obs.size());
                if ((1L << n) != spec.d) throw std::invalid_argument("observable length must equal log2(d)");
                const CMatrix rho = initial_state(n, mc_state == "zero" ? InitialState::ZeroState : InitialState::PlusState);
                const CMatrix o = pauli_string(n, mc_obs);
                const MomentEstimate e = mc_expectation_moments(spec, rho, o, mc_samples, g.seed, g.threads);
                ReferenceKind ref;
                ref.kind = spec.kind == EnsembleSpec::Kind::Haar ? ReferenceKind::Kind::Haar
                           : spec.kind == EnsembleSpec::Kind::CHaar ? ReferenceKind::Kind::CHaar
                                                                   : ReferenceKind::Kind::Depolarize;
                ref.dE = spec.dE;
                const MomentValues v = variance_reference(rho, o, ref);
                table.columns = {"quantity", "estimate", "stderr", "samples", "exact"};
                table.rows.push_back({"mean", e.mean, e.mean_err, e.samples, v.mean});
                table.rows.push_back({"second_moment", e.second_moment, e.second_err, e.samples, v.second_moment});
                table.rows.push_back({"variance", e.variance, e.variance_err, e.samples, v.variance});
            }
            return kOk;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }
    g.exact = !g.force_float;
    try {
        const int code = action();
        if (!g.out.empty()) {
            std::ofstream f(g.out);
            if (!f) throw std::runtime_error("cannot open output file " + g.out);
            emit(f, g, command, config, table);
        } else {
            emit(out, g, command, config, table);
        }
        return code;
    } catch (const SingularGram& e) {
        err << "error: singular Gram matrix: " << e.what() << "\n";
        return kSingularGram;
    } catch (const ResourceCapExceeded& e) {
        err << "error: resource cap: " << e.what() << "\n";
        return kResourceCap;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kFailure;
    }
}

}  // namespace chanmom::cli
