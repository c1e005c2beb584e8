#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "disclab/bessel.hpp"
#include "disclab/grid.hpp"
#include "disclab/kernel.hpp"
#include "disclab/maximal.hpp"
#include "disclab/planar.hpp"
#include "disclab/report.hpp"
#include "disclab/restriction.hpp"
#include "disclab/tubes.hpp"
#include "disclab/weights.hpp"

namespace py = pybind11;
using namespace disclab;

namespace {

GridField2D field_from_array(py::array_t<std::complex<double>> arr, double L) {
    const auto buf = arr.request();
    if (buf.ndim != 2 || buf.shape[0] != buf.shape[1])
        throw std::invalid_argument("field must be a square 2-D complex array");
    GridField2D f(static_cast<std::size_t>(buf.shape[0]), L);
    const auto* src = static_cast<const std::complex<double>*>(buf.ptr);
    std::copy(src, src + f.N * f.N, f.values.begin());
    validate(f);
    return f;
}

py::array_t<std::complex<double>> field_to_array(const GridField2D& f) {
    py::array_t<std::complex<double>> out({f.N, f.N});
    auto buf = out.request();
    std::copy(f.values.begin(), f.values.end(),
              static_cast<std::complex<double>*>(buf.ptr));
    return out;
}

}  // namespace

PYBIND11_MODULE(_disclab, m) {
    m.doc() = "numerical experiments around the disc multiplier in mixed norms";

    // ---- grids and profiles ----
    py::class_<RadialGrid> grid(m, "RadialGrid");
    grid.def_readonly("nodes", &RadialGrid::nodes)
        .def_readonly("weights", &RadialGrid::weights)
        .def_readonly("r_max", &RadialGrid::r_max)
        .def("__len__", &RadialGrid::size);

    py::enum_<RadialGrid::Scheme>(grid, "Scheme")
        .value("linear", RadialGrid::Scheme::linear)
        .value("hybrid", RadialGrid::Scheme::hybrid);

    m.def(
        "make_grid",
        [](const std::string& scheme, double r_max, std::size_t count, double r_lin) {
            return make_grid(scheme == "hybrid" ? RadialGrid::Scheme::hybrid
                                                : RadialGrid::Scheme::linear,
                             r_max, count, r_lin);
        },
        py::arg("scheme"), py::arg("r_max"), py::arg("count"), py::arg("r_lin") = 0.0);

    py::class_<RadialProfile>(m, "RadialProfile")
        .def(py::init([](const RadialGrid& g, std::vector<cplx> v) {
                 return RadialProfile(g, std::move(v));
             }),
             py::arg("grid"), py::arg("values"))
        .def_static("sample", &RadialProfile::sample, py::arg("grid"), py::arg("f"))
        .def_readonly("grid", &RadialProfile::grid)
        .def_readonly("values", &RadialProfile::values)
        .def("__call__", &RadialProfile::operator())
        .def("__len__", &RadialProfile::size);

    m.def("weighted_lp_norm",
          [](const RadialProfile& g, double p, double alpha) {
              const auto w = weighted_lp_norm(g, p, alpha);
              return py::make_tuple(w.value, w.divergence_warning);
          },
          py::arg("profile"), py::arg("p"), py::arg("alpha"));

    m.def("write_profile_csv", &write_profile_csv);
    m.def("read_profile_csv", &read_profile_csv);

    // ---- bessel ----
    py::enum_<BesselMethod>(m, "BesselMethod")
        .value("series", BesselMethod::series)
        .value("integral_representation", BesselMethod::integral_representation)
        .value("closed_form_half_integer", BesselMethod::closed_form_half_integer);

    py::class_<BesselValue>(m, "BesselValue")
        .def_readonly("value", &BesselValue::value)
        .def_readonly("abs_error_bound", &BesselValue::abs_error_bound)
        .def_readonly("method", &BesselValue::method)
        .def("__float__", [](const BesselValue& v) { return v.value; });

    m.def("bessel_j", [](double nu, double x) { return bessel_j({nu, x}); }, py::arg("nu"),
          py::arg("x"));
    m.def("bessel_j_prime", [](double nu, double x) { return bessel_j_prime({nu, x}); },
          py::arg("nu"), py::arg("x"));
    m.def("bessel_j_integer_all", &bessel_j_integer_all, py::arg("nmax"), py::arg("x"));
    m.def("classify_regime", [](double nu, double x) {
        const auto t = classify_regime({nu, x});
        return py::make_tuple(regime_name(t.tag), t.rho);
    });
    m.def("vdc_bound", [](double nu, double x) {
        const auto t = classify_regime({nu, x});
        const auto b = vdc_bound(t, {nu, x});
        return py::make_tuple(b.j_bound, b.jprime_bound);
    });
    m.def("prodj_integral", &prodj_integral, py::arg("nu"), py::arg("p"),
          py::arg("nodes_per_wavelength") = 24);

    // ---- kernels ----
    m.def("kernel_k", &kernel_k, py::arg("nu"), py::arg("t"), py::arg("r"));
    m.def(
        "kernel_split",
        [](double nu, const std::string& split, double t, double r) {
            KernelSpec spec;
            spec.nu = nu;
            if (split == "full") spec.split = KernelSplit::full;
            else if (split == "j1") spec.split = KernelSplit::j1;
            else if (split == "j2") spec.split = KernelSplit::j2;
            else if (split == "j3") spec.split = KernelSplit::j3;
            else if (split == "j4") spec.split = KernelSplit::j4;
            else throw std::invalid_argument("split must be full|j1|j2|j3|j4");
            return kernel_split(spec, t, r);
        },
        py::arg("nu"), py::arg("split"), py::arg("t"), py::arg("r"));
    m.def("apply_tkn", &apply_tkn, py::arg("n"), py::arg("k"), py::arg("g"),
          py::arg("out_grid"));

    // ---- planar laboratory ----
    m.def(
        "apply_multiplier",
        [](const std::string& kind, py::array_t<std::complex<double>> arr, double L,
           double R, double wx, double wy) {
            const auto f = field_from_array(arr, L);
            MultiplierSymbol sym;
            if (kind == "disc") sym = MultiplierSymbol::disc(R);
            else if (kind == "half_plane") sym = MultiplierSymbol::half_plane(wx, wy);
            else if (kind == "directional_hilbert")
                sym = MultiplierSymbol::directional_hilbert(wx, wy);
            else throw std::invalid_argument("kind must be disc|half_plane|directional_hilbert");
            return field_to_array(apply_multiplier(sym, f));
        },
        py::arg("kind"), py::arg("field"), py::arg("L"), py::arg("R") = 1.0,
        py::arg("wx") = 0.0, py::arg("wy") = 1.0);
    m.def(
        "mixed_norm_grid",
        [](py::array_t<std::complex<double>> arr, double L, double p) {
            return mixed_norm_grid(field_from_array(arr, L), p);
        },
        py::arg("field"), py::arg("L"), py::arg("p"));

    // ---- maximal ----
    m.def("hl_max_1d",
          [](const std::vector<double>& v, std::size_t i) {
              return hl_max_1d(std::span<const double>(v.data(), v.size()), i);
          },
          py::arg("samples"), py::arg("index"));
    m.def("hl_max_all", [](const std::vector<double>& v) {
        return hl_max_all(std::span<const double>(v.data(), v.size()));
    });
    m.def(
        "universal_kakeya_radial",
        [](const RadialProfile& profile, double rho, std::size_t n_u, std::size_t n_c) {
            return universal_kakeya_radial({profile, rho, n_u, n_c});
        },
        py::arg("profile"), py::arg("rho"), py::arg("n_u") = 48, py::arg("n_c") = 128);

    // ---- tubes ----
    py::class_<ShellSpec>(m, "ShellSpec")
        .def(py::init([](int n, double R, double Delta, double R0, double eps) {
                 ShellSpec s{n, R, Delta, R0, eps};
                 validate(s);
                 return s;
             }),
             py::arg("n"), py::arg("R"), py::arg("Delta"), py::arg("R0"), py::arg("eps"))
        .def_readonly("n", &ShellSpec::n)
        .def_readonly("eps", &ShellSpec::eps)
        .def("thin", &ShellSpec::thin);

    m.def("generate_brush", [](const ShellSpec& spec) {
        const auto set = generate_brush(spec);
        py::list out;
        for (const auto& t : set.tubes)
            out.append(py::make_tuple(py::make_tuple(t.p[0], t.p[1], t.p[2]),
                                      py::make_tuple(t.q[0], t.q[1], t.q[2])));
        return out;
    });
    m.def(
        "overlap_histogram",
        [](const ShellSpec& spec, double h) {
            const auto hist = overlap_histogram(generate_brush(spec), h);
            return hist.measure;
        },
        py::arg("spec"), py::arg("h"));

    // ---- weights ----
    m.def(
        "ap_characteristic",
        [](double X, const std::vector<double>& values, double p) {
            WeightSamples w;
            w.X = X;
            w.values = values;
            const auto res = ap_characteristic(w, p);
            return py::make_tuple(res.characteristic, res.refinement_trace);
        },
        py::arg("X"), py::arg("values"), py::arg("p"));
    m.def(
        "a1_construct",
        [](double X, const std::vector<double>& values, double s) {
            WeightSamples w;
            w.X = X;
            w.values = values;
            return a1_construct(w, s).values;
        },
        py::arg("X"), py::arg("values"), py::arg("s"));

    // ---- restriction ----
    m.def(
        "extension_profile",
        [](const std::vector<cplx>& a, int n, const RadialGrid& grid) {
            HarmonicCoefficients h;
            h.a = a;
            h.n = n;
            return extension_profile(h, grid);
        },
        py::arg("a"), py::arg("n"), py::arg("grid"));
    m.def(
        "extension_mixed_norm",
        [](const std::vector<cplx>& a, int n, double q, double r_max) {
            HarmonicCoefficients h;
            h.a = a;
            h.n = n;
            const auto res = extension_mixed_norm(h, q, r_max);
            return py::make_tuple(res.value, res.divergence_flag);
        },
        py::arg("a"), py::arg("n"), py::arg("q"), py::arg("r_max"));

    // ---- suites ----
    m.def(
        "run_suite",
        [](const std::string& suite, std::uint64_t seed, const std::string& out_dir,
           const std::string& params_json) {
            ExperimentConfig cfg;
            cfg.suite = suite;
            cfg.seed = seed;
            cfg.out_dir = out_dir;
            if (!params_json.empty()) cfg.params = ordered_json::parse(params_json);
            const auto rep = run_suite(cfg);
            return report_to_json(rep, false).dump(2);
        },
        py::arg("suite"), py::arg("seed") = 7, py::arg("out_dir") = ".",
        py::arg("params_json") = "");
}
