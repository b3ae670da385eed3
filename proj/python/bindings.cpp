#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "relay_sinr/analytic.hpp"
#include "relay_sinr/charcoef.hpp"
#include "relay_sinr/errors.hpp"
#include "relay_sinr/oracle.hpp"
#include "relay_sinr/runner.hpp"
#include "relay_sinr/scenario.hpp"

namespace py = pybind11;
using namespace relay_sinr;

namespace {

SeriesControl control(int k_max, bool adaptive, double rel_tol)
{
    return adaptive ? SeriesControl::adaptive(rel_tol, k_max) : SeriesControl{k_max, rel_tol, SeriesControl::Mode::FixedK};
}

InterfererPopulation population(const std::vector<double>& means, double m)
{
    InterfererPopulation p{means};
    if (m != 1.0)
        p.fading = Nakagami{m};
    return p;
}

}  // namespace

PYBIND11_MODULE(_relay_sinr, mod)
{
    mod.doc() = "SINR distributions of dual-hop amplify-and-forward relays with interference";

    static py::exception<SeriesDivergence> series_exc(mod, "SeriesDivergence", PyExc_RuntimeError);
    static py::exception<cli::SchemaError> schema_exc(mod, "SchemaError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        } catch (const SeriesDivergence& e) {
            py::set_error(series_exc, e.what());
        } catch (const cli::SchemaError& e) {
            py::set_error(schema_exc, e.what());
        } catch (const DomainError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const ConfigError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
    });

    py::enum_<SystemModel>(mod, "SystemModel").value("SM1", SystemModel::SM1).value("SM2", SystemModel::SM2);

    py::class_<NetworkConfig>(mod, "NetworkConfig")
        .def(py::init<>())
        .def_readwrite("total_power", &NetworkConfig::total_power)
        .def_readwrite("power_share", &NetworkConfig::power_share)
        .def_readwrite("noise_relay", &NetworkConfig::noise_relay)
        .def_readwrite("noise_dest", &NetworkConfig::noise_dest)
        .def_readwrite("gain_hop1", &NetworkConfig::gain_hop1)
        .def_readwrite("gain_hop2", &NetworkConfig::gain_hop2)
        .def_readwrite("model", &NetworkConfig::model)
        .def("hop_means", [](const NetworkConfig& c) {
            const HopParams h = derive_hop_params(c);
            return py::make_tuple(h.lambda1, h.lambda2);
        });

    const auto k = py::arg("k_max") = 100;
    const auto ad = py::arg("adaptive") = false;
    const auto tol = py::arg("rel_tol") = 1e-12;

    mod.def(
        "cdf_sm1",
        [](double w, double lx, double ly, const std::vector<double>& means, int k_max, bool adaptive, double rel_tol) {
            return cdf_sm1(w, Sm1Params{lx, ly, HypoexpSum::from_means(means)}, control(k_max, adaptive, rel_tol));
        },
        py::arg("w"), py::arg("lambda_x"), py::arg("lambda_y"), py::arg("means"), k, ad, tol);
    mod.def(
        "pdf_sm1",
        [](double w, double lx, double ly, const std::vector<double>& means, int k_max, bool adaptive, double rel_tol) {
            return pdf_sm1(w, Sm1Params{lx, ly, HypoexpSum::from_means(means)}, control(k_max, adaptive, rel_tol));
        },
        py::arg("w"), py::arg("lambda_x"), py::arg("lambda_y"), py::arg("means"), k, ad, tol);
    mod.def(
        "cdf_sm2",
        [](double z, double lx, double ly, const std::vector<double>& relay, const std::vector<double>& dest, int k_max,
           bool adaptive, double rel_tol) {
            return cdf_sm2(z, Sm2Params{lx, ly, HypoexpSum::from_means(relay), HypoexpSum::from_means(dest)},
                           control(k_max, adaptive, rel_tol));
        },
        py::arg("z"), py::arg("lambda_x"), py::arg("lambda_y"), py::arg("relay"), py::arg("dest"), k, ad, tol);
    mod.def(
        "pdf_sm2",
        [](double z, double lx, double ly, const std::vector<double>& relay, const std::vector<double>& dest, int k_max,
           bool adaptive, double rel_tol) {
            return pdf_sm2(z, Sm2Params{lx, ly, HypoexpSum::from_means(relay), HypoexpSum::from_means(dest)},
                           control(k_max, adaptive, rel_tol));
        },
        py::arg("z"), py::arg("lambda_x"), py::arg("lambda_y"), py::arg("relay"), py::arg("dest"), k, ad, tol);
    mod.def("cdf_no_interference", &cdf_no_interference, py::arg("w"), py::arg("lambda_x"), py::arg("lambda_y"));

    mod.def(
        "sinr_cdf",
        [](double gamma, const NetworkConfig& c, const std::vector<double>& relay, const std::vector<double>& dest,
           double m1, double m2, int k_max, bool adaptive, double rel_tol) {
            return sinr_cdf(gamma, c, population(relay, m1), population(dest, m2), control(k_max, adaptive, rel_tol));
        },
        py::arg("gamma"), py::arg("config"), py::arg("relay"), py::arg("dest") = std::vector<double>{},
        py::arg("m1") = 1.0, py::arg("m2") = 1.0, k, ad, tol);
    mod.def(
        "outage_probability",
        [](const NetworkConfig& c, const std::vector<double>& relay, const std::vector<double>& dest, double rho,
           int hops, double rate, int k_max, bool adaptive, double rel_tol) {
            return outage_probability(c, population(relay, 1.0), population(dest, 1.0), ThresholdSpec{rho, hops, rate},
                                      control(k_max, adaptive, rel_tol));
        },
        py::arg("config"), py::arg("relay"), py::arg("dest") = std::vector<double>{}, py::arg("rho") = 1.0,
        py::arg("hops") = 2, py::arg("rate") = 1.0, k, ad, tol);

    mod.def(
        "characteristic_coefficients",
        [](const std::vector<double>& means) {
            const HypoexpSum h = HypoexpSum::from_means(means);
            return py::make_tuple(h.spectrum.distinct_means, h.spectrum.multiplicities, h.table.coeffs);
        },
        py::arg("means"), "Distinct means, multiplicities and the coefficient table X[i][j-1].");

    mod.def(
        "sample_sinr",
        [](const NetworkConfig& c, const std::vector<double>& relay, const std::vector<double>& dest, std::size_t n,
           std::uint64_t seed, bool csi, double m1, double m2) {
            SinrSampleSet s;
            {
                py::gil_scoped_release release;
                s = sample_sinr(c, population(relay, m1), population(dest, m2),
                                csi ? GainModel::CsiAssisted : GainModel::Hypothetical, n, seed);
            }
            return py::array_t<double>(static_cast<py::ssize_t>(s.samples.size()), s.samples.data());
        },
        py::arg("config"), py::arg("relay"), py::arg("dest") = std::vector<double>{}, py::arg("n") = 100000,
        py::arg("seed") = 1, py::arg("csi") = false, py::arg("m1") = 1.0, py::arg("m2") = 1.0);

    mod.def(
        "quad_cdf_sm1",
        [](double w, double lx, double ly, const std::vector<double>& means) {
            return quad_cdf_sm1(w, Sm1Params{lx, ly, HypoexpSum::from_means(means)});
        },
        py::arg("w"), py::arg("lambda_x"), py::arg("lambda_y"), py::arg("means"));

    mod.def(
        "run_scenario",
        [](const std::string& text, unsigned workers) {
            const cli::Scenario s = cli::load_scenario_text(text);
            cli::RunResult r;
            {
                py::gil_scoped_release release;
                r = cli::run_scenario(s, workers);
            }
            return py::make_tuple(cli::format_curves(s, r), cli::make_manifest(s, r).dump());
        },
        py::arg("scenario_json"), py::arg("workers") = 0, "Returns (curves_csv, manifest_json).");

    mod.def("preset_names", &cli::preset_names);
    mod.attr("__version__") = RELAY_SINR_VERSION;
}
