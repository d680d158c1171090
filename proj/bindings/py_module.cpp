// Python bindings for the main operations. Rationals cross the boundary as
// "p/q" strings to keep the exact arithmetic on the C++ side.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "padiclab/cycle_analysis.hpp"
#include "padiclab/cycle_search.hpp"
#include "padiclab/embedding.hpp"
#include "padiclab/parity_transform.hpp"
#include "padiclab/q_map.hpp"
#include "padiclab/render.hpp"

namespace py = pybind11;
using namespace padiclab;

namespace {

OddRational rat(const std::string& s) { return OddRational::from_string(s); }

BitSeq to_bits(const std::vector<int>& v) {
    BitSeq out;
    out.reserve(v.size());
    for (int b : v) {
        if (b != 0 && b != 1) throw std::invalid_argument("bits must be 0 or 1");
        out.push_back(static_cast<std::uint8_t>(b));
    }
    return out;
}

std::vector<int> from_bits(const BitSeq& v) { return {v.begin(), v.end()}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact 2-adic tools for the 3x+1 parity correspondence";

    m.def(
        "parity_vector",
        [](const std::string& x, int j) { return from_bits(parity_vector(rat(x), j)); },
        py::arg("x"), py::arg("length"),
        "Parities of x, T(x), ..., T^(j-1)(x) for a rational x given as 'p/q'.");

    m.def(
        "invert_v1",
        [](const std::vector<int>& s) {
            CongruenceClass c = invert_v1(to_bits(s));
            return py::make_tuple(c.residue.get_str(), c.modulus_bits);
        },
        py::arg("parity_vector"),
        "Residue (as decimal string) and modulus exponent of the class with "
        "this parity vector, first formulation.");

    m.def(
        "invert_v2",
        [](const std::vector<int>& s) {
            CongruenceClass c = invert_v2(to_bits(s));
            return py::make_tuple(c.residue.get_str(), c.modulus_bits);
        },
        py::arg("parity_vector"), "Second formulation of the inverse transform.");

    m.def(
        "q_exact",
        [](const std::string& x, long budget) -> py::object {
            QResult r = q_exact(rat(x), budget);
            if (!r.exact()) return py::none();
            return py::str(r.exact_value->to_string());
        },
        py::arg("x"), py::arg("budget") = 100000,
        "Q(x) as an exact rational string, or None if the orbit did not "
        "cycle within budget.");

    m.def(
        "q_inverse_exact",
        [](const std::string& y) { return q_inverse_exact(rat(y)).to_string(); }, py::arg("y"),
        "Q^-1(y) as an exact rational string (always computable).");

    m.def(
        "q_mod", [](std::uint64_t x, int n) { return q_mod_u64(x, n); }, py::arg("x"),
        py::arg("bits"), "Q(x) mod 2^bits for bits <= 64.");

    m.def(
        "qinv_mod", [](std::uint64_t y, int n) { return qinv_mod_u64(y, n); }, py::arg("y"),
        py::arg("bits"), "Q^-1(y) mod 2^bits for bits <= 64.");

    m.def(
        "t_orbit_cycle",
        [](const std::string& x, long budget) -> py::object {
            OrbitReport r = detect_orbit_cycle(rat(x), budget);
            if (!r.cycled()) return py::none();
            return py::make_tuple(r.preperiod_length, *r.cycle_length);
        },
        py::arg("x"), py::arg("budget") = 100000,
        "(preperiod, cycle length) of the exact T-orbit, or None on budget.");

    m.def(
        "ergodic_counts",
        [](int max_k, int cap) {
            ErgodicEnumeration e = enumerate_ergodic_sets(max_k, cap);
            return std::vector<long>(e.counts.begin() + 1, e.counts.end());
        },
        py::arg("max_k"), py::arg("level_cap"),
        "N_k for k = 1..max_k: numbers of odd ergodic sets of measure 2^-k.");

    m.def(
        "search_cycles",
        [](long bound, int max_period, int modulus_bits) {
            SearchConfig cfg;
            cfg.bound = bound;
            cfg.max_period = max_period;
            cfg.modulus_bits = modulus_bits;
            std::vector<py::tuple> out;
            for (const auto& c : search(cfg).survivors)
                out.push_back(py::make_tuple(c.seed.to_string(), c.period, c.verified_exact));
            return out;
        },
        py::arg("bound") = 999, py::arg("max_period") = 16, py::arg("modulus_bits") = 40,
        "Rational Q-cycle sweep: list of (seed, period, verified) survivors.");

    m.def(
        "embed_point",
        [](const std::string& r) {
            EmbeddedPoint p = embed_point(rat(r));
            return py::make_tuple(p.x.get_str(), p.y.get_str());
        },
        py::arg("r"), "Exact plane coordinates (M(r), M(Q(r))) as rational strings.");

    m.def(
        "grid_points",
        [](int k) {
            std::vector<py::tuple> out;
            for_each_grid_point(k, [&](const GridPoint& p) {
                out.push_back(py::make_tuple(p.n, p.x.to_mpq().get_d(), p.y.to_mpq().get_d()));
            });
            return out;
        },
        py::arg("bits"), "Depth-k embedding as (n, x, y) float triples.");

    m.attr("__version__") = "0.1.0";
}
